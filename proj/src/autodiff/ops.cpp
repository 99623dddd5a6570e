// Copyright 2026 The adenet Authors.
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

#include "autodiff/ops.h"

#include <algorithm>
#include <cmath>
#include <memory>
#include <string>

#include "util/error.h"

namespace adenet::ad {
namespace {

Tape& tape_of(Var a) {
  if (!a.valid()) throw UsageError("op applied to an unbound Var");
  return *a.tape();
}

Tape& tape_of(Var a, Var b) {
  Tape& t = tape_of(a);
  if (b.tape() != &t) throw UsageError("op inputs live on different tapes");
  return t;
}

[[noreturn]] void shape_mismatch(const char* op, const Shape& a, const Shape& b) {
  throw DimensionError(std::string(op) + ": incompatible shapes " +
                       shape_string(a) + " and " + shape_string(b));
}

void require_rank(const char* op, const Tensor& t, std::size_t rank) {
  if (t.rank() != rank) {
    throw DimensionError(std::string(op) + ": expected rank " +
                         std::to_string(rank) + ", got shape " +
                         shape_string(t.shape()));
  }
}

}  // namespace

Var matmul(Var a, Var b) {
  Tape& tape = tape_of(a, b);
  const Tensor& av = a.value();
  const Tensor& bv = b.value();
  if (av.rank() != 2 || bv.rank() != 2 || av.dim(1) != bv.dim(0)) {
    shape_mismatch("matmul", av.shape(), bv.shape());
  }
  const std::size_t m = av.dim(0), k = av.dim(1), n = bv.dim(1);
  Tensor out(Shape{m, n});
  for (std::size_t i = 0; i < m; ++i) {
    double* o = &out[i * n];
    for (std::size_t p = 0; p < k; ++p) {
      const double s = av[i * k + p];
      const double* br = &bv[p * n];
      for (std::size_t j = 0; j < n; ++j) o[j] += s * br[j];
    }
  }
  const std::uint32_t ia = a.id(), ib = b.id();
  return tape.record(
      OpKind::kMatmul, {ia, ib}, std::move(out),
      [ia, ib, m, k, n](Tape& t, std::uint32_t self) {
        const auto g = t.grad_buffer(self);
        const Tensor& A = t.value(ia);
        const Tensor& B = t.value(ib);
        if (t.needs_grad(ia)) {
          auto da = t.grad_buffer(ia);
          for (std::size_t i = 0; i < m; ++i) {
            for (std::size_t p = 0; p < k; ++p) {
              double acc = 0.0;
              for (std::size_t j = 0; j < n; ++j) acc += g[i * n + j] * B[p * n + j];
              da[i * k + p] += acc;
            }
          }
        }
        if (t.needs_grad(ib)) {
          auto db = t.grad_buffer(ib);
          for (std::size_t i = 0; i < m; ++i) {
            for (std::size_t p = 0; p < k; ++p) {
              const double s = A[i * k + p];
              for (std::size_t j = 0; j < n; ++j) db[p * n + j] += s * g[i * n + j];
            }
          }
        }
      });
}

Var matvec(Var w, Var x) {
  Tape& tape = tape_of(w, x);
  const Tensor& W = w.value();
  const Tensor& X = x.value();
  if (W.rank() != 2 || X.rank() != 1 || W.dim(1) != X.dim(0)) {
    shape_mismatch("matvec", W.shape(), X.shape());
  }
  const std::size_t m = W.dim(0), k = W.dim(1);
  Tensor out(Shape{m});
  for (std::size_t i = 0; i < m; ++i) {
    const double* wr = &W[i * k];
    double acc = 0.0;
    for (std::size_t p = 0; p < k; ++p) acc += wr[p] * X[p];
    out[i] = acc;
  }
  const std::uint32_t iw = w.id(), ix = x.id();
  return tape.record(OpKind::kMatvec, {iw, ix}, std::move(out),
                     [iw, ix, m, k](Tape& t, std::uint32_t self) {
                       const auto g = t.grad_buffer(self);
                       const Tensor& W = t.value(iw);
                       const Tensor& X = t.value(ix);
                       if (t.needs_grad(iw)) {
                         auto dw = t.grad_buffer(iw);
                         for (std::size_t i = 0; i < m; ++i) {
                           const double gi = g[i];
                           if (gi == 0.0) continue;
                           double* d = &dw[i * k];
                           for (std::size_t p = 0; p < k; ++p) d[p] += gi * X[p];
                         }
                       }
                       if (t.needs_grad(ix)) {
                         auto dx = t.grad_buffer(ix);
                         for (std::size_t i = 0; i < m; ++i) {
                           const double gi = g[i];
                           if (gi == 0.0) continue;
                           const double* wr = &W[i * k];
                           for (std::size_t p = 0; p < k; ++p) dx[p] += gi * wr[p];
                         }
                       }
                     });
}

Var matvec_t(Var w, Var x) {
  Tape& tape = tape_of(w, x);
  const Tensor& W = w.value();
  const Tensor& X = x.value();
  if (W.rank() != 2 || X.rank() != 1 || W.dim(0) != X.dim(0)) {
    shape_mismatch("matvec_t", W.shape(), X.shape());
  }
  const std::size_t m = W.dim(0), k = W.dim(1);
  Tensor out(Shape{k});
  for (std::size_t i = 0; i < m; ++i) {
    const double s = X[i];
    const double* wr = &W[i * k];
    for (std::size_t p = 0; p < k; ++p) out[p] += s * wr[p];
  }
  const std::uint32_t iw = w.id(), ix = x.id();
  return tape.record(OpKind::kMatvecT, {iw, ix}, std::move(out),
                     [iw, ix, m, k](Tape& t, std::uint32_t self) {
                       const auto g = t.grad_buffer(self);
                       const Tensor& W = t.value(iw);
                       const Tensor& X = t.value(ix);
                       if (t.needs_grad(iw)) {
                         auto dw = t.grad_buffer(iw);
                         for (std::size_t i = 0; i < m; ++i) {
                           double* d = &dw[i * k];
                           for (std::size_t p = 0; p < k; ++p) d[p] += X[i] * g[p];
                         }
                       }
                       if (t.needs_grad(ix)) {
                         auto dx = t.grad_buffer(ix);
                         for (std::size_t i = 0; i < m; ++i) {
                           const double* wr = &W[i * k];
                           double acc = 0.0;
                           for (std::size_t p = 0; p < k; ++p) acc += wr[p] * g[p];
                           dx[i] += acc;
                         }
                       }
                     });
}

Var add(Var a, Var b) {
  Tape& tape = tape_of(a, b);
  const Tensor& av = a.value();
  const Tensor& bv = b.value();
  if (av.shape() != bv.shape()) shape_mismatch("add", av.shape(), bv.shape());
  Tensor out = av;
  out.set_requires_grad(false);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] += bv[i];
  const std::uint32_t ia = a.id(), ib = b.id();
  return tape.record(OpKind::kAdd, {ia, ib}, std::move(out),
                     [ia, ib](Tape& t, std::uint32_t self) {
                       const auto g = t.grad_buffer(self);
                       for (std::uint32_t in : {ia, ib}) {
                         if (!t.needs_grad(in)) continue;
                         auto d = t.grad_buffer(in);
                         for (std::size_t i = 0; i < g.size(); ++i) d[i] += g[i];
                       }
                     });
}

Var mul(Var a, Var b) {
  Tape& tape = tape_of(a, b);
  const Tensor& av = a.value();
  const Tensor& bv = b.value();
  if (av.shape() != bv.shape()) shape_mismatch("mul", av.shape(), bv.shape());
  Tensor out(av.shape());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = av[i] * bv[i];
  const std::uint32_t ia = a.id(), ib = b.id();
  return tape.record(OpKind::kMul, {ia, ib}, std::move(out),
                     [ia, ib](Tape& t, std::uint32_t self) {
                       const auto g = t.grad_buffer(self);
                       const Tensor& A = t.value(ia);
                       const Tensor& B = t.value(ib);
                       if (t.needs_grad(ia)) {
                         auto d = t.grad_buffer(ia);
                         for (std::size_t i = 0; i < g.size(); ++i) d[i] += g[i] * B[i];
                       }
                       if (t.needs_grad(ib)) {
                         auto d = t.grad_buffer(ib);
                         for (std::size_t i = 0; i < g.size(); ++i) d[i] += g[i] * A[i];
                       }
                     });
}

Var scale(Var x, double factor) {
  Tape& tape = tape_of(x);
  Tensor out(x.shape());
  const Tensor& xv = x.value();
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = xv[i] * factor;
  const std::uint32_t ix = x.id();
  return tape.record(OpKind::kScale, {ix}, std::move(out),
                     [ix, factor](Tape& t, std::uint32_t self) {
                       const auto g = t.grad_buffer(self);
                       auto d = t.grad_buffer(ix);
                       for (std::size_t i = 0; i < g.size(); ++i) d[i] += g[i] * factor;
                     });
}

Var tanh(Var x) {
  Tape& tape = tape_of(x);
  const Tensor& xv = x.value();
  Tensor out(xv.shape());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = std::tanh(xv[i]);
  const std::uint32_t ix = x.id();
  return tape.record(OpKind::kTanh, {ix}, std::move(out),
                     [ix](Tape& t, std::uint32_t self) {
                       const auto g = t.grad_buffer(self);
                       const Tensor& y = t.value(self);
                       auto d = t.grad_buffer(ix);
                       for (std::size_t i = 0; i < g.size(); ++i) {
                         d[i] += g[i] * (1.0 - y[i] * y[i]);
                       }
                     });
}

Var sigmoid(Var x) {
  Tape& tape = tape_of(x);
  const Tensor& xv = x.value();
  Tensor out(xv.shape());
  for (std::size_t i = 0; i < out.size(); ++i) {
    const double v = xv[i];
    // Branch keeps exp() from overflowing for large |v|.
    if (v >= 0) {
      out[i] = 1.0 / (1.0 + std::exp(-v));
    } else {
      const double e = std::exp(v);
      out[i] = e / (1.0 + e);
    }
  }
  const std::uint32_t ix = x.id();
  return tape.record(OpKind::kSigmoid, {ix}, std::move(out),
                     [ix](Tape& t, std::uint32_t self) {
                       const auto g = t.grad_buffer(self);
                       const Tensor& y = t.value(self);
                       auto d = t.grad_buffer(ix);
                       for (std::size_t i = 0; i < g.size(); ++i) {
                         d[i] += g[i] * y[i] * (1.0 - y[i]);
                       }
                     });
}

Var concat(const std::vector<Var>& parts, std::size_t axis) {
  if (parts.empty()) throw DimensionError("concat: no parts");
  Tape& tape = tape_of(parts.front());
  const Shape& first = parts.front().shape();
  if (axis >= first.size()) {
    throw DimensionError("concat: axis " + std::to_string(axis) +
                         " out of range for shape " + shape_string(first));
  }
  if (parts.size() == 1) return parts.front();

  // View each part as [outer x (dim_axis * inner)] blocks.
  std::size_t outer = 1, inner = 1;
  for (std::size_t i = 0; i < axis; ++i) outer *= first[i];
  for (std::size_t i = axis + 1; i < first.size(); ++i) inner *= first[i];

  Shape out_shape = first;
  out_shape[axis] = 0;
  std::vector<std::uint32_t> ids;
  std::vector<std::size_t> widths;
  for (const Var& p : parts) {
    if (p.tape() != &tape) throw UsageError("concat: parts live on different tapes");
    const Shape& s = p.shape();
    if (s.size() != first.size()) shape_mismatch("concat", first, s);
    for (std::size_t i = 0; i < s.size(); ++i) {
      if (i != axis && s[i] != first[i]) shape_mismatch("concat", first, s);
    }
    out_shape[axis] += s[axis];
    ids.push_back(p.id());
    widths.push_back(s[axis] * inner);
  }
  const std::size_t row = out_shape[axis] * inner;
  Tensor out(out_shape);
  std::size_t offset = 0;
  for (std::size_t k = 0; k < parts.size(); ++k) {
    const Tensor& v = parts[k].value();
    for (std::size_t o = 0; o < outer; ++o) {
      std::copy_n(&v[o * widths[k]], widths[k], &out[o * row + offset]);
    }
    offset += widths[k];
  }
  return tape.record(OpKind::kConcat, ids, std::move(out),
                     [ids, widths, outer, row](Tape& t, std::uint32_t self) {
                       const auto g = t.grad_buffer(self);
                       std::size_t off = 0;
                       for (std::size_t k = 0; k < ids.size(); ++k) {
                         if (t.needs_grad(ids[k])) {
                           auto d = t.grad_buffer(ids[k]);
                           for (std::size_t o = 0; o < outer; ++o) {
                             for (std::size_t j = 0; j < widths[k]; ++j) {
                               d[o * widths[k] + j] += g[o * row + off + j];
                             }
                           }
                         }
                         off += widths[k];
                       }
                     });
}

Var slice(Var x, std::size_t begin, std::size_t length) {
  Tape& tape = tape_of(x);
  const Tensor& xv = x.value();
  require_rank("slice", xv, 1);
  if (begin + length > xv.size()) {
    throw DimensionError("slice [" + std::to_string(begin) + ", " +
                         std::to_string(begin + length) + ") out of range for shape " +
                         shape_string(xv.shape()));
  }
  Tensor out(Shape{length});
  std::copy_n(&xv[begin], length, &out[0]);
  const std::uint32_t ix = x.id();
  return tape.record(OpKind::kSlice, {ix}, std::move(out),
                     [ix, begin](Tape& t, std::uint32_t self) {
                       const auto g = t.grad_buffer(self);
                       auto d = t.grad_buffer(ix);
                       for (std::size_t i = 0; i < g.size(); ++i) d[begin + i] += g[i];
                     });
}

Var stack(const std::vector<Var>& rows) {
  if (rows.empty()) throw DimensionError("stack: no rows");
  Tape& tape = tape_of(rows.front());
  const Shape& first = rows.front().shape();
  if (first.size() != 1) throw DimensionError("stack: rows must be rank 1, got " + shape_string(first));
  const std::size_t width = first[0];
  Tensor out(Shape{rows.size(), width});
  std::vector<std::uint32_t> ids;
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].tape() != &tape) throw UsageError("stack: rows live on different tapes");
    if (rows[r].shape() != first) shape_mismatch("stack", first, rows[r].shape());
    std::copy_n(&rows[r].value()[0], width, &out[r * width]);
    ids.push_back(rows[r].id());
  }
  return tape.record(OpKind::kStack, ids, std::move(out),
                     [ids, width](Tape& t, std::uint32_t self) {
                       const auto g = t.grad_buffer(self);
                       for (std::size_t r = 0; r < ids.size(); ++r) {
                         if (!t.needs_grad(ids[r])) continue;
                         auto d = t.grad_buffer(ids[r]);
                         for (std::size_t j = 0; j < width; ++j) d[j] += g[r * width + j];
                       }
                     });
}

namespace {

Var softmax_impl(Var x, const Mask* mask) {
  Tape& tape = tape_of(x);
  const Tensor& xv = x.value();
  require_rank("softmax", xv, 1);
  const std::size_t n = xv.size();
  if (n == 0) throw DimensionError("softmax of an empty vector");
  if (mask != nullptr && mask->size() != n) {
    throw DimensionError("softmax: mask length " + std::to_string(mask->size()) +
                         " does not match shape " + shape_string(xv.shape()));
  }
  auto active = [&](std::size_t i) { return mask == nullptr || (*mask)[i] != 0; };

  // Masked logits are pushed to -1e30 before the max shift; the result is
  // then renormalized over unmasked entries so masked outputs are exactly 0.
  std::vector<double> logits(xv.data().begin(), xv.data().end());
  bool any = false;
  for (std::size_t i = 0; i < n; ++i) {
    if (active(i)) {
      any = true;
    } else {
      logits[i] += kMaskedLogit;
    }
  }
  if (!any) throw DimensionError("softmax: degenerate mask, every position is masked");
  const double mx = *std::max_element(logits.begin(), logits.end());
  Tensor out(Shape{n});
  double z = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (!active(i)) continue;
    out[i] = std::exp(logits[i] - mx);
    z += out[i];
  }
  for (std::size_t i = 0; i < n; ++i) out[i] = active(i) ? out[i] / z : 0.0;

  const std::uint32_t ix = x.id();
  return tape.record(OpKind::kSoftmax, {ix}, std::move(out),
                     [ix](Tape& t, std::uint32_t self) {
                       const auto g = t.grad_buffer(self);
                       const Tensor& y = t.value(self);
                       double dot = 0.0;
                       for (std::size_t i = 0; i < g.size(); ++i) dot += g[i] * y[i];
                       auto d = t.grad_buffer(ix);
                       for (std::size_t i = 0; i < g.size(); ++i) d[i] += y[i] * (g[i] - dot);
                     });
}

}  // namespace

Var softmax(Var x) { return softmax_impl(x, nullptr); }

Var softmax(Var x, const Mask& mask) { return softmax_impl(x, &mask); }

Var lookup(Var table, std::size_t index) {
  Tape& tape = tape_of(table);
  const Tensor& tv = table.value();
  require_rank("lookup", tv, 2);
  if (index >= tv.dim(0)) {
    throw DimensionError("lookup: index " + std::to_string(index) +
                         " out of range for table " + shape_string(tv.shape()));
  }
  const std::size_t width = tv.dim(1);
  auto r = tv.row(index);
  Tensor out(Shape{width}, std::vector<double>(r.begin(), r.end()));
  const std::uint32_t it = table.id();
  return tape.record(OpKind::kLookup, {it}, std::move(out),
                     [it, index, width](Tape& t, std::uint32_t self) {
                       const auto g = t.grad_buffer(self);
                       std::span<double> dst;
                       const std::size_t pid = t.param_of(it);
                       if (pid != SIZE_MAX) {
                         dst = t.param_grads().row(pid, index, width);
                       } else {
                         dst = t.grad_buffer(it).subspan(index * width, width);
                       }
                       for (std::size_t j = 0; j < width; ++j) dst[j] += g[j];
                     });
}

Var dropout(Var x, double rate, bool training, Rng& rng) {
  if (rate < 0.0 || rate >= 1.0) {
    throw UsageError("dropout rate must lie in [0, 1), got " + std::to_string(rate));
  }
  if (!training || rate == 0.0) return x;
  Tape& tape = tape_of(x);
  const Tensor& xv = x.value();
  const double keep_scale = 1.0 / (1.0 - rate);
  std::vector<double> keep(xv.size());
  Tensor out(xv.shape());
  for (std::size_t i = 0; i < keep.size(); ++i) {
    keep[i] = rng.bernoulli(rate) ? 0.0 : keep_scale;
    out[i] = xv[i] * keep[i];
  }
  const std::uint32_t ix = x.id();
  return tape.record(OpKind::kDropout, {ix}, std::move(out),
                     [ix, keep = std::move(keep)](Tape& t, std::uint32_t self) {
                       const auto g = t.grad_buffer(self);
                       auto d = t.grad_buffer(ix);
                       for (std::size_t i = 0; i < g.size(); ++i) d[i] += g[i] * keep[i];
                     });
}

Var cross_entropy(Var dist, std::size_t gold) {
  Tape& tape = tape_of(dist);
  const Tensor& p = dist.value();
  require_rank("cross_entropy", p, 1);
  if (gold >= p.size()) {
    throw DimensionError("cross_entropy: gold class " + std::to_string(gold) +
                         " out of range for " + shape_string(p.shape()));
  }
  const double pg = p[gold];
  const bool floored = pg < kProbabilityFloor;
  Tensor out = Tensor::scalar(-std::log(floored ? kProbabilityFloor : pg));
  const std::uint32_t id = dist.id();
  return tape.record(OpKind::kCrossEntropy, {id}, std::move(out),
                     [id, gold, floored](Tape& t, std::uint32_t self) {
                       if (floored) return;
                       const double g = t.grad_buffer(self)[0];
                       const double pg = t.value(id)[gold];
                       t.grad_buffer(id)[gold] += -g / pg;
                     });
}

Var sum(Var x) {
  Tape& tape = tape_of(x);
  double s = 0.0;
  for (double v : x.value().data()) s += v;
  const std::uint32_t ix = x.id();
  return tape.record(OpKind::kSum, {ix}, Tensor::scalar(s),
                     [ix](Tape& t, std::uint32_t self) {
                       const double g = t.grad_buffer(self)[0];
                       for (double& d : t.grad_buffer(ix)) d += g;
                     });
}

Var add_n(const std::vector<Var>& terms) {
  if (terms.empty()) throw DimensionError("add_n: no terms");
  Tape& tape = tape_of(terms.front());
  const Shape& s0 = terms.front().shape();
  Tensor out(s0);
  std::vector<std::uint32_t> ids;
  for (const Var& v : terms) {
    if (v.tape() != &tape) throw UsageError("add_n: terms live on different tapes");
    if (v.shape() != s0) shape_mismatch("add_n", s0, v.shape());
    const Tensor& tv = v.value();
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += tv[i];
    ids.push_back(v.id());
  }
  return tape.record(OpKind::kAddN, ids, std::move(out),
                     [ids](Tape& t, std::uint32_t self) {
                       const auto g = t.grad_buffer(self);
                       for (std::uint32_t in : ids) {
                         if (!t.needs_grad(in)) continue;
                         auto d = t.grad_buffer(in);
                         for (std::size_t i = 0; i < g.size(); ++i) d[i] += g[i];
                       }
                     });
}

Var conv_max(Var x, Var filters, Var bias, std::size_t width) {
  Tape& tape = tape_of(x, filters);
  if (bias.tape() != &tape) throw UsageError("conv_max: inputs live on different tapes");
  const Tensor& X = x.value();
  const Tensor& F = filters.value();
  const Tensor& B = bias.value();
  require_rank("conv_max", X, 2);
  require_rank("conv_max", F, 2);
  const std::size_t n = X.dim(0), d = X.dim(1), nf = F.dim(0);
  if (width == 0 || F.dim(1) != width * d) shape_mismatch("conv_max", X.shape(), F.shape());
  if (B.rank() != 1 || B.dim(0) != nf) shape_mismatch("conv_max", F.shape(), B.shape());
  if (n < width) {
    throw DimensionError("conv_max: input " + shape_string(X.shape()) +
                         " shorter than filter width " + std::to_string(width));
  }
  const std::size_t positions = n - width + 1;
  const std::size_t span = width * d;
  Tensor out(Shape{nf});
  std::vector<std::size_t> best(nf, 0);
  for (std::size_t f = 0; f < nf; ++f) {
    const double* fr = &F[f * span];
    double top = 0.0;
    for (std::size_t p = 0; p < positions; ++p) {
      // Rows p..p+width-1 are contiguous in row-major storage.
      const double* win = &X[p * d];
      double v = B[f];
      for (std::size_t j = 0; j < span; ++j) v += fr[j] * win[j];
      if (p == 0 || v > top) {
        top = v;
        best[f] = p;
      }
    }
    out[f] = top;
  }
  const std::uint32_t ix = x.id(), iF = filters.id(), ib = bias.id();
  return tape.record(
      OpKind::kConvMax, {ix, iF, ib}, std::move(out),
      [ix, iF, ib, best = std::move(best), d, span](Tape& t, std::uint32_t self) {
        const auto g = t.grad_buffer(self);
        const Tensor& X = t.value(ix);
        const Tensor& F = t.value(iF);
        const bool gx = t.needs_grad(ix), gf = t.needs_grad(iF), gb = t.needs_grad(ib);
        for (std::size_t f = 0; f < best.size(); ++f) {
          const double gf_ = g[f];
          if (gf_ == 0.0) continue;
          const std::size_t base = best[f] * d;
          if (gf) {
            auto dF = t.grad_buffer(iF);
            for (std::size_t j = 0; j < span; ++j) dF[f * span + j] += gf_ * X[base + j];
          }
          if (gx) {
            auto dX = t.grad_buffer(ix);
            for (std::size_t j = 0; j < span; ++j) dX[base + j] += gf_ * F[f * span + j];
          }
          if (gb) t.grad_buffer(ib)[f] += gf_;
        }
      });
}

}  // namespace adenet::ad
