// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <vector>

namespace newscause {

/// Dense row-major matrix, just big enough for small regression designs.
struct Matrix {
  int rows = 0;
  int cols = 0;
  std::vector<double> data;

  Matrix() = default;
  Matrix(int r, int c) : rows(r), cols(c), data(static_cast<size_t>(r) * c, 0.0) {}

  double& at(int r, int c) { return data[static_cast<size_t>(r) * cols + c]; }
  double at(int r, int c) const { return data[static_cast<size_t>(r) * cols + c]; }
};

struct OlsFit {
  std::vector<double> coefficients;
  double rss = 0.0;
  int n = 0;  // observations
  int k = 0;  // regressors including intercept
};

/// Least squares via Householder QR. Requires rows > cols and full column
/// rank; a diagonal pivot below 1e-10 relative raises "singular design".
/// rss is recomputed from the returned coefficients.
OlsFit ols(const Matrix& X, const std::vector<double>& y);

}  // namespace newscause
