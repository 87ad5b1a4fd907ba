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

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace syneval {

// kGru: update/reset-gated recurrence
//   z  = sigmoid(Wz x + Uz h + bz)
//   r  = sigmoid(Wr x + Ur h + br)
//   n  = tanh(Wn x + Un (r * h) + bn)
//   h' = (1 - z) * n + z * h
// kSimple: h' = tanh(W x + U h + b)
enum class CellKind { kGru, kSimple };

std::string_view to_string(CellKind kind);
std::optional<CellKind> parse_cell_kind(std::string_view text);

struct CellShape {
  CellKind kind = CellKind::kGru;
  std::size_t input_dim = 1;
  std::size_t hidden_dim = 1;

  std::size_t gate_count() const { return kind == CellKind::kGru ? 3 : 1; }
  // Per gate: W (hidden x input), U (hidden x hidden), b (hidden).
  std::size_t parameter_count() const {
    return gate_count() *
           (hidden_dim * input_dim + hidden_dim * hidden_dim + hidden_dim);
  }
};

// Activations kept from one forward step for the backward pass.
struct CellCache {
  std::vector<double> x;
  std::vector<double> h_prev;
  std::vector<double> z;
  std::vector<double> r;
  std::vector<double> n;
  std::vector<double> rh;
  std::vector<double> h;
};

// Computes h_out from x and h_prev. Fills cache when non-null.
void cell_forward(const CellShape& shape, std::span<const double> params,
                  std::span<const double> x, std::span<const double> h_prev,
                  std::span<double> h_out, CellCache* cache);

// Given dL/dh', accumulates dL/dx into dx, dL/dh_prev into dh_prev and the
// parameter gradient into dparams.
void cell_backward(const CellShape& shape, std::span<const double> params,
                   const CellCache& cache, std::span<const double> dh,
                   std::span<double> dx, std::span<double> dh_prev,
                   std::span<double> dparams);

}  // namespace syneval
