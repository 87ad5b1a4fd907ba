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

#include <cmath>
#include <span>

namespace syneval::training {

// Scales grad so its L2 norm is at most clip (when clip > 0), then takes an
// SGD step params -= lr * grad.
inline void clipped_sgd_step(std::span<double> params, std::span<double> grad,
                             double learning_rate, double clip) {
  if (clip > 0.0) {
    double norm2 = 0.0;
    for (double g : grad) norm2 += g * g;
    const double norm = std::sqrt(norm2);
    if (norm > clip) {
      const double scale = clip / norm;
      for (double& g : grad) g *= scale;
    }
  }
  for (std::size_t i = 0; i < params.size(); ++i) {
    params[i] -= learning_rate * grad[i];
  }
}

}  // namespace syneval::training
