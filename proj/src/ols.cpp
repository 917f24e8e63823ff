// SPDX-License-Identifier: Apache-2.0
#include "newscause/ols.hpp"

#include <cmath>
#include <string>

#include "newscause/error.hpp"

namespace newscause {

OlsFit ols(const Matrix& X, const std::vector<double>& y) {
  int n = X.rows, k = X.cols;
  if (n != static_cast<int>(y.size()))
    throw Error("ols: X has " + std::to_string(n) + " rows but y has " +
                std::to_string(y.size()) + " entries");
  if (n <= k) throw Error("ols: needs more rows than columns");

  // Householder QR on a working copy of [X | y].
  Matrix A = X;
  std::vector<double> qty = y;
  std::vector<double> diag(static_cast<size_t>(k), 0.0);

  for (int j = 0; j < k; ++j) {
    double norm = 0.0;
    for (int i = j; i < n; ++i) norm = std::hypot(norm, A.at(i, j));
    if (norm == 0.0) {
      diag[static_cast<size_t>(j)] = 0.0;
      continue;
    }
    // sign chosen so the reflector pivot 1 + x0/norm stays away from zero
    if (A.at(j, j) < 0.0) norm = -norm;
    for (int i = j; i < n; ++i) A.at(i, j) /= norm;
    A.at(j, j) += 1.0;
    // apply reflector to remaining columns and to y
    for (int c = j + 1; c < k; ++c) {
      double s = 0.0;
      for (int i = j; i < n; ++i) s += A.at(i, j) * A.at(i, c);
      s = -s / A.at(j, j);
      for (int i = j; i < n; ++i) A.at(i, c) += s * A.at(i, j);
    }
    double s = 0.0;
    for (int i = j; i < n; ++i) s += A.at(i, j) * qty[static_cast<size_t>(i)];
    s = -s / A.at(j, j);
    for (int i = j; i < n; ++i) qty[static_cast<size_t>(i)] += s * A.at(i, j);
    diag[static_cast<size_t>(j)] = -norm;  // R diagonal; A(j,j) now holds the reflector pivot
  }

  double max_pivot = 0.0;
  for (double d : diag) max_pivot = std::max(max_pivot, std::abs(d));
  for (double d : diag)
    if (max_pivot == 0.0 || std::abs(d) < 1e-10 * max_pivot)
      throw Error("singular design");

  // back substitution: R beta = (Q^T y)[0..k)
  std::vector<double> beta(static_cast<size_t>(k), 0.0);
  for (int j = k - 1; j >= 0; --j) {
    double s = qty[static_cast<size_t>(j)];
    for (int c = j + 1; c < k; ++c) s -= A.at(j, c) * beta[static_cast<size_t>(c)];
    beta[static_cast<size_t>(j)] = s / diag[static_cast<size_t>(j)];
  }

  double rss = 0.0;
  for (int i = 0; i < n; ++i) {
    double pred = 0.0;
    for (int c = 0; c < k; ++c) pred += X.at(i, c) * beta[static_cast<size_t>(c)];
    double e = y[static_cast<size_t>(i)] - pred;
    rss += e * e;
  }
  return OlsFit{std::move(beta), rss, n, k};
}

}  // namespace newscause
