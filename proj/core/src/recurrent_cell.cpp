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

#include "syneval/recurrent_cell.hpp"

#include <cmath>

#include "linalg.hpp"

namespace syneval {

std::string_view to_string(CellKind kind) {
  return kind == CellKind::kGru ? "gru" : "simple";
}

std::optional<CellKind> parse_cell_kind(std::string_view text) {
  if (text == "gru") return CellKind::kGru;
  if (text == "simple") return CellKind::kSimple;
  return std::nullopt;
}

namespace {

struct GateView {
  std::span<const double> w, u, b;
};

struct GateGrad {
  std::span<double> w, u, b;
};

std::size_t gate_size(const CellShape& s) {
  return s.hidden_dim * s.input_dim + s.hidden_dim * s.hidden_dim + s.hidden_dim;
}

GateView gate(const CellShape& s, std::span<const double> params,
              std::size_t g) {
  const std::size_t h = s.hidden_dim, in = s.input_dim;
  auto base = params.subspan(g * gate_size(s), gate_size(s));
  return {base.subspan(0, h * in), base.subspan(h * in, h * h),
          base.subspan(h * in + h * h, h)};
}

GateGrad gate(const CellShape& s, std::span<double> params, std::size_t g) {
  const std::size_t h = s.hidden_dim, in = s.input_dim;
  auto base = params.subspan(g * gate_size(s), gate_size(s));
  return {base.subspan(0, h * in), base.subspan(h * in, h * h),
          base.subspan(h * in + h * h, h)};
}

// pre = W x + U v + b
void preactivation(const CellShape& s, const GateView& g,
                   std::span<const double> x, std::span<const double> v,
                   std::span<double> pre) {
  for (std::size_t i = 0; i < s.hidden_dim; ++i) pre[i] = g.b[i];
  linalg::matvec_add(g.w, s.hidden_dim, s.input_dim, x, pre);
  linalg::matvec_add(g.u, s.hidden_dim, s.hidden_dim, v, pre);
}

// Backward through pre = W x + U v + b given dL/dpre.
void preactivation_backward(const CellShape& s, const GateView& g,
                            const GateGrad& dg, std::span<const double> x,
                            std::span<const double> v,
                            std::span<const double> dpre, std::span<double> dx,
                            std::span<double> dv) {
  linalg::outer_add(dg.w, dpre, x);
  linalg::outer_add(dg.u, dpre, v);
  for (std::size_t i = 0; i < s.hidden_dim; ++i) dg.b[i] += dpre[i];
  linalg::matTvec_add(g.w, s.hidden_dim, s.input_dim, dpre, dx);
  linalg::matTvec_add(g.u, s.hidden_dim, s.hidden_dim, dpre, dv);
}

}  // namespace

void cell_forward(const CellShape& shape, std::span<const double> params,
                  std::span<const double> x, std::span<const double> h_prev,
                  std::span<double> h_out, CellCache* cache) {
  const std::size_t h = shape.hidden_dim;
  if (shape.kind == CellKind::kSimple) {
    std::vector<double> pre(h);
    preactivation(shape, gate(shape, params, 0), x, h_prev, pre);
    for (std::size_t i = 0; i < h; ++i) h_out[i] = std::tanh(pre[i]);
    if (cache != nullptr) {
      cache->x.assign(x.begin(), x.end());
      cache->h_prev.assign(h_prev.begin(), h_prev.end());
      cache->h.assign(h_out.begin(), h_out.end());
    }
    return;
  }

  std::vector<double> z(h), r(h), rh(h), n(h);
  preactivation(shape, gate(shape, params, 0), x, h_prev, z);
  preactivation(shape, gate(shape, params, 1), x, h_prev, r);
  for (std::size_t i = 0; i < h; ++i) {
    z[i] = linalg::sigmoid(z[i]);
    r[i] = linalg::sigmoid(r[i]);
    rh[i] = r[i] * h_prev[i];
  }
  preactivation(shape, gate(shape, params, 2), x, rh, n);
  for (std::size_t i = 0; i < h; ++i) {
    n[i] = std::tanh(n[i]);
    h_out[i] = (1.0 - z[i]) * n[i] + z[i] * h_prev[i];
  }
  if (cache != nullptr) {
    cache->x.assign(x.begin(), x.end());
    cache->h_prev.assign(h_prev.begin(), h_prev.end());
    cache->z = std::move(z);
    cache->r = std::move(r);
    cache->n = std::move(n);
    cache->rh = std::move(rh);
    cache->h.assign(h_out.begin(), h_out.end());
  }
}

void cell_backward(const CellShape& shape, std::span<const double> params,
                   const CellCache& cache, std::span<const double> dh,
                   std::span<double> dx, std::span<double> dh_prev,
                   std::span<double> dparams) {
  const std::size_t h = shape.hidden_dim;
  if (shape.kind == CellKind::kSimple) {
    std::vector<double> dpre(h);
    for (std::size_t i = 0; i < h; ++i) {
      dpre[i] = dh[i] * (1.0 - cache.h[i] * cache.h[i]);
    }
    preactivation_backward(shape, gate(shape, params, 0),
                           gate(shape, dparams, 0), cache.x, cache.h_prev,
                           dpre, dx, dh_prev);
    return;
  }

  std::vector<double> dz_pre(h), dr_pre(h), dn_pre(h), drh(h, 0.0);
  for (std::size_t i = 0; i < h; ++i) {
    const double dn = dh[i] * (1.0 - cache.z[i]);
    const double dz = dh[i] * (cache.h_prev[i] - cache.n[i]);
    dh_prev[i] += dh[i] * cache.z[i];
    dn_pre[i] = dn * (1.0 - cache.n[i] * cache.n[i]);
    dz_pre[i] = dz * cache.z[i] * (1.0 - cache.z[i]);
  }
  preactivation_backward(shape, gate(shape, params, 2),
                         gate(shape, dparams, 2), cache.x, cache.rh, dn_pre,
                         dx, drh);
  for (std::size_t i = 0; i < h; ++i) {
    const double dr = drh[i] * cache.h_prev[i];
    dh_prev[i] += drh[i] * cache.r[i];
    dr_pre[i] = dr * cache.r[i] * (1.0 - cache.r[i]);
  }
  preactivation_backward(shape, gate(shape, params, 0),
                         gate(shape, dparams, 0), cache.x, cache.h_prev,
                         dz_pre, dx, dh_prev);
  preactivation_backward(shape, gate(shape, params, 1),
                         gate(shape, dparams, 1), cache.x, cache.h_prev,
                         dr_pre, dx, dh_prev);
}

}  // namespace syneval
