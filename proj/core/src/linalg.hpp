// Copyright 2026 The syneval Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Small dense kernels over row-major matrices stored in flat spans. Loop
// order is fixed so results are bit-reproducible.

#include <cmath>
#include <cstddef>
#include <limits>
#include <span>

namespace syneval::linalg {

// out += W x, W is rows x cols.
inline void matvec_add(std::span<const double> w, std::size_t rows,
                       std::size_t cols, std::span<const double> x,
                       std::span<double> out) {
  for (std::size_t i = 0; i < rows; ++i) {
    const double* row = w.data() + i * cols;
    double acc = 0.0;
    for (std::size_t j = 0; j < cols; ++j) acc += row[j] * x[j];
    out[i] += acc;
  }
}

// out += W^T v, W is rows x cols.
inline void matTvec_add(std::span<const double> w, std::size_t rows,
                        std::size_t cols, std::span<const double> v,
                        std::span<double> out) {
  for (std::size_t i = 0; i < rows; ++i) {
    const double* row = w.data() + i * cols;
    const double vi = v[i];
    for (std::size_t j = 0; j < cols; ++j) out[j] += row[j] * vi;
  }
}

// dW += a b^T.
inline void outer_add(std::span<double> dw, std::span<const double> a,
                      std::span<const double> b) {
  const std::size_t cols = b.size();
  for (std::size_t i = 0; i < a.size(); ++i) {
    double* row = dw.data() + i * cols;
    const double ai = a[i];
    for (std::size_t j = 0; j < cols; ++j) row[j] += ai * b[j];
  }
}

inline double sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

// In-place softmax; entries equal to -infinity get probability exactly 0.
inline void softmax(std::span<double> logits) {
  double max = -std::numeric_limits<double>::infinity();
  for (double v : logits) max = v > max ? v : max;
  double sum = 0.0;
  for (double& v : logits) {
    v = std::exp(v - max);
    sum += v;
  }
  for (double& v : logits) v /= sum;
}

}  // namespace syneval::linalg
