// afm/autodiff/tape.h

// Copyright 2026  The AFM Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#ifndef AFM_AUTODIFF_TAPE_H_
#define AFM_AUTODIFF_TAPE_H_

#include <cmath>
#include <functional>
#include <span>
#include <utility>
#include <vector>

#include "afm/autodiff/tensor.h"
#include "afm/base/error.h"

namespace afm {

// Arguments of log() are clamped to this floor before taking the logarithm,
// and the adjoint divides by the clamped argument, so saturated sigmoid
// outputs never produce infinities.
inline constexpr double kLogFloor = 1e-12;

/// Reverse-mode automatic differentiation over a dynamically recorded tape.
///
/// Every primitive op appends one node holding its output value and an
/// adjoint closure. Nodes are created in topological order (inputs always
/// precede consumers), so a single reverse sweep from the loss node
/// distributes gradients correctly, including through recurrent graphs
/// unrolled over time. A tape is single-use: record forward, call backward()
/// once, read gradients, discard.
template <typename S>
class Tape {
 public:
  using Id = int32_t;

  Tape() = default;
  Tape(const Tape&) = delete;
  Tape& operator=(const Tape&) = delete;

  /// Records an input tensor. Gradients are tracked for it (and everything
  /// computed from it) iff t.requires_grad is set.
  Id leaf(Tensor<S> t) {
    bool rg = t.requires_grad;
    return push(std::move(t), rg, "leaf", nullptr);
  }

  /// Records an input with requires_grad forced off.
  Id constant(Tensor<S> t) {
    t.requires_grad = false;
    return push(std::move(t), false, "const", nullptr);
  }

  // ---- primitive ops ------------------------------------------------------

  Id matmul(Id a, Id b) {
    const Tensor<S>& ta = val(a);
    const Tensor<S>& tb = val(b);
    if (ta.cols() != tb.rows())
      throw DimensionError(strcat("matmul: inner dims disagree, ",
                                  ta.shape_str(), " x ", tb.shape_str()));
    const int64_t m = ta.rows(), k = ta.cols(), n = tb.cols();
    Tensor<S> out = Tensor<S>::zeros({m, n});
    kernel_matmul(ta.data.data(), tb.data.data(), out.data.data(), m, k, n);
    return push(std::move(out), needs(a) || needs(b), "matmul",
                [a, b, m, k, n](Tape& t, Id self) {
                  const S* g = t.grad_data(self);
                  if (t.needs(a)) {
                    // dA = g . B^T
                    S* ga = t.grad_buf(a);
                    const S* B = t.val(b).data.data();
                    for (int64_t i = 0; i < m; ++i)
                      for (int64_t kk = 0; kk < k; ++kk) {
                        S acc = 0;
                        const S* gi = g + i * n;
                        const S* bk = B + kk * n;
                        for (int64_t j = 0; j < n; ++j) acc += gi[j] * bk[j];
                        ga[i * k + kk] += acc;
                      }
                  }
                  if (t.needs(b)) {
                    // dB = A^T . g
                    S* gb = t.grad_buf(b);
                    const S* A = t.val(a).data.data();
                    for (int64_t i = 0; i < m; ++i) {
                      const S* gi = g + i * n;
                      for (int64_t kk = 0; kk < k; ++kk) {
                        const S aik = A[i * k + kk];
                        S* gbk = gb + kk * n;
                        for (int64_t j = 0; j < n; ++j) gbk[j] += aik * gi[j];
                      }
                    }
                  }
                });
  }

  /// Elementwise sum. Also accepts b of shape [1, D] (or [D]) broadcast over
  /// the rows of a, the layout used for per-frame bias addition.
  Id add(Id a, Id b) {
    const Tensor<S>& ta = val(a);
    const Tensor<S>& tb = val(b);
    const bool broadcast = !ta.same_shape(tb);
    if (broadcast && !(tb.rows() == 1 && tb.cols() == ta.cols()))
      throw DimensionError(strcat("add: shapes ", ta.shape_str(), " vs ",
                                  tb.shape_str()));
    Tensor<S> out = ta;
    out.requires_grad = false;
    const int64_t rows = ta.rows(), colsn = ta.cols();
    for (int64_t i = 0; i < rows; ++i)
      for (int64_t j = 0; j < colsn; ++j)
        out.data[i * colsn + j] += tb.data[broadcast ? j : i * colsn + j];
    return push(std::move(out), needs(a) || needs(b), "add",
                [a, b, broadcast, rows, colsn](Tape& t, Id self) {
                  const S* g = t.grad_data(self);
                  if (t.needs(a)) {
                    S* ga = t.grad_buf(a);
                    for (int64_t i = 0; i < rows * colsn; ++i) ga[i] += g[i];
                  }
                  if (t.needs(b)) {
                    S* gb = t.grad_buf(b);
                    if (broadcast) {
                      for (int64_t i = 0; i < rows; ++i)
                        for (int64_t j = 0; j < colsn; ++j)
                          gb[j] += g[i * colsn + j];
                    } else {
                      for (int64_t i = 0; i < rows * colsn; ++i) gb[i] += g[i];
                    }
                  }
                });
  }

  Id sub(Id a, Id b) {
    check_same_shape("sub", a, b);
    Tensor<S> out = val(a);
    out.requires_grad = false;
    for (int64_t i = 0; i < out.numel(); ++i) out.data[i] -= val(b).data[i];
    return push(std::move(out), needs(a) || needs(b), "sub",
                [a, b](Tape& t, Id self) {
                  const S* g = t.grad_data(self);
                  const int64_t n = t.val(self).numel();
                  if (t.needs(a)) {
                    S* ga = t.grad_buf(a);
                    for (int64_t i = 0; i < n; ++i) ga[i] += g[i];
                  }
                  if (t.needs(b)) {
                    S* gb = t.grad_buf(b);
                    for (int64_t i = 0; i < n; ++i) gb[i] -= g[i];
                  }
                });
  }

  /// Elementwise (Hadamard) product of same-shape tensors.
  Id mul(Id a, Id b) {
    check_same_shape("mul", a, b);
    Tensor<S> out = val(a);
    out.requires_grad = false;
    for (int64_t i = 0; i < out.numel(); ++i) out.data[i] *= val(b).data[i];
    return push(std::move(out), needs(a) || needs(b), "mul",
                [a, b](Tape& t, Id self) {
                  const S* g = t.grad_data(self);
                  const int64_t n = t.val(self).numel();
                  if (t.needs(a)) {
                    S* ga = t.grad_buf(a);
                    const S* vb = t.val(b).data.data();
                    for (int64_t i = 0; i < n; ++i) ga[i] += g[i] * vb[i];
                  }
                  if (t.needs(b)) {
                    S* gb = t.grad_buf(b);
                    const S* va = t.val(a).data.data();
                    for (int64_t i = 0; i < n; ++i) gb[i] += g[i] * va[i];
                  }
                });
  }

  Id scale(Id a, S c) {
    Tensor<S> out = val(a);
    out.requires_grad = false;
    for (S& v : out.data) v *= c;
    return push(std::move(out), needs(a), "scale", [a, c](Tape& t, Id self) {
      if (!t.needs(a)) return;
      const S* g = t.grad_data(self);
      S* ga = t.grad_buf(a);
      for (int64_t i = 0; i < t.val(self).numel(); ++i) ga[i] += c * g[i];
    });
  }

  Id add_const(Id a, S c) {
    Tensor<S> out = val(a);
    out.requires_grad = false;
    for (S& v : out.data) v += c;
    return push(std::move(out), needs(a), "add_const",
                [a](Tape& t, Id self) {
                  if (!t.needs(a)) return;
                  const S* g = t.grad_data(self);
                  S* ga = t.grad_buf(a);
                  for (int64_t i = 0; i < t.val(self).numel(); ++i)
                    ga[i] += g[i];
                });
  }

  Id sigmoid(Id a) {
    Tensor<S> out = val(a);
    out.requires_grad = false;
    for (S& v : out.data) v = stable_sigmoid(v);
    return push(std::move(out), needs(a), "sigmoid",
                [a](Tape& t, Id self) {
                  if (!t.needs(a)) return;
                  const S* g = t.grad_data(self);
                  const S* y = t.val(self).data.data();
                  S* ga = t.grad_buf(a);
                  for (int64_t i = 0; i < t.val(self).numel(); ++i)
                    ga[i] += g[i] * y[i] * (S(1) - y[i]);
                });
  }

  Id tanh(Id a) {
    Tensor<S> out = val(a);
    out.requires_grad = false;
    for (S& v : out.data) v = std::tanh(v);
    return push(std::move(out), needs(a), "tanh", [a](Tape& t, Id self) {
      if (!t.needs(a)) return;
      const S* g = t.grad_data(self);
      const S* y = t.val(self).data.data();
      S* ga = t.grad_buf(a);
      for (int64_t i = 0; i < t.val(self).numel(); ++i)
        ga[i] += g[i] * (S(1) - y[i] * y[i]);
    });
  }

  Id relu(Id a) {
    Tensor<S> out = val(a);
    out.requires_grad = false;
    for (S& v : out.data) v = v > S(0) ? v : S(0);
    return push(std::move(out), needs(a), "relu", [a](Tape& t, Id self) {
      if (!t.needs(a)) return;
      const S* g = t.grad_data(self);
      const S* x = t.val(a).data.data();
      S* ga = t.grad_buf(a);
      for (int64_t i = 0; i < t.val(self).numel(); ++i)
        if (x[i] > S(0)) ga[i] += g[i];
    });
  }

  /// Natural log with the argument clamped to kLogFloor; the adjoint divides
  /// by the clamped argument so the gradient stays finite at saturation.
  Id log(Id a) {
    Tensor<S> out = val(a);
    out.requires_grad = false;
    const S floor = static_cast<S>(kLogFloor);
    for (S& v : out.data) v = std::log(v < floor ? floor : v);
    return push(std::move(out), needs(a), "log", [a, floor](Tape& t, Id self) {
      if (!t.needs(a)) return;
      const S* g = t.grad_data(self);
      const S* x = t.val(a).data.data();
      S* ga = t.grad_buf(a);
      for (int64_t i = 0; i < t.val(self).numel(); ++i)
        ga[i] += g[i] / (x[i] < floor ? floor : x[i]);
    });
  }

  /// Row-wise softmax (max-shifted for stability).
  Id softmax_rows(Id a) {
    const Tensor<S>& ta = val(a);
    Tensor<S> out = ta;
    out.requires_grad = false;
    const int64_t rows = ta.rows(), colsn = ta.cols();
    for (int64_t i = 0; i < rows; ++i) {
      S* row = out.data.data() + i * colsn;
      S mx = row[0];
      for (int64_t j = 1; j < colsn; ++j) mx = std::max(mx, row[j]);
      S sum = 0;
      for (int64_t j = 0; j < colsn; ++j) {
        row[j] = std::exp(row[j] - mx);
        sum += row[j];
      }
      for (int64_t j = 0; j < colsn; ++j) row[j] /= sum;
    }
    return push(std::move(out), needs(a), "softmax",
                [a, rows, colsn](Tape& t, Id self) {
                  if (!t.needs(a)) return;
                  const S* g = t.grad_data(self);
                  const S* p = t.val(self).data.data();
                  S* ga = t.grad_buf(a);
                  for (int64_t i = 0; i < rows; ++i) {
                    const S* gi = g + i * colsn;
                    const S* pi = p + i * colsn;
                    S dot = 0;
                    for (int64_t j = 0; j < colsn; ++j) dot += gi[j] * pi[j];
                    S* gai = ga + i * colsn;
                    for (int64_t j = 0; j < colsn; ++j)
                      gai[j] += pi[j] * (gi[j] - dot);
                  }
                });
  }

  /// Sum of all elements, returned as a [1,1] scalar.
  Id sum_all(Id a) {
    S acc = 0;
    for (S v : val(a).data) acc += v;
    return push(Tensor<S>::scalar(acc), needs(a), "sum",
                [a](Tape& t, Id self) {
                  if (!t.needs(a)) return;
                  const S g = t.grad_data(self)[0];
                  S* ga = t.grad_buf(a);
                  for (int64_t i = 0; i < t.val(a).numel(); ++i) ga[i] += g;
                });
  }

  /// Stacks inputs vertically; all inputs must share a column count.
  Id concat_rows(std::span<const Id> parts) {
    if (parts.empty()) throw DimensionError("concat_rows: no inputs");
    const int64_t colsn = val(parts[0]).cols();
    int64_t rows = 0;
    bool ng = false;
    for (Id p : parts) {
      if (val(p).cols() != colsn)
        throw DimensionError(strcat("concat_rows: column mismatch, ",
                                    val(p).shape_str(), " vs [*,", colsn,
                                    "]"));
      rows += val(p).rows();
      ng = ng || needs(p);
    }
    Tensor<S> out = Tensor<S>::zeros({rows, colsn});
    int64_t r = 0;
    for (Id p : parts) {
      const Tensor<S>& tp = val(p);
      std::copy(tp.data.begin(), tp.data.end(),
                out.data.begin() + r * colsn);
      r += tp.rows();
    }
    std::vector<Id> ids(parts.begin(), parts.end());
    return push(std::move(out), ng, "concat_rows",
                [ids, colsn](Tape& t, Id self) {
                  const S* g = t.grad_data(self);
                  int64_t r = 0;
                  for (Id p : ids) {
                    const int64_t pr = t.val(p).rows();
                    if (t.needs(p)) {
                      S* gp = t.grad_buf(p);
                      const S* gs = g + r * colsn;
                      for (int64_t i = 0; i < pr * colsn; ++i) gp[i] += gs[i];
                    }
                    r += pr;
                  }
                });
  }

  /// Rows [r0, r1) of a.
  Id slice_rows(Id a, int64_t r0, int64_t r1) {
    const Tensor<S>& ta = val(a);
    if (r0 < 0 || r1 > ta.rows() || r0 >= r1)
      throw DimensionError(strcat("slice_rows: [", r0, ",", r1, ") of ",
                                  ta.shape_str()));
    const int64_t colsn = ta.cols();
    Tensor<S> out = Tensor<S>::zeros({r1 - r0, colsn});
    std::copy(ta.data.begin() + r0 * colsn, ta.data.begin() + r1 * colsn,
              out.data.begin());
    return push(std::move(out), needs(a), "slice_rows",
                [a, r0, colsn](Tape& t, Id self) {
                  if (!t.needs(a)) return;
                  const S* g = t.grad_data(self);
                  S* ga = t.grad_buf(a) + r0 * colsn;
                  for (int64_t i = 0; i < t.val(self).numel(); ++i)
                    ga[i] += g[i];
                });
  }

  /// Columns [c0, c1) of a.
  Id slice_cols(Id a, int64_t c0, int64_t c1) {
    const Tensor<S>& ta = val(a);
    if (c0 < 0 || c1 > ta.cols() || c0 >= c1)
      throw DimensionError(strcat("slice_cols: [", c0, ",", c1, ") of ",
                                  ta.shape_str()));
    const int64_t rows = ta.rows(), colsn = ta.cols(), w = c1 - c0;
    Tensor<S> out = Tensor<S>::zeros({rows, w});
    for (int64_t i = 0; i < rows; ++i)
      std::copy(ta.data.begin() + i * colsn + c0,
                ta.data.begin() + i * colsn + c1, out.data.begin() + i * w);
    return push(std::move(out), needs(a), "slice_cols",
                [a, c0, rows, colsn, w](Tape& t, Id self) {
                  if (!t.needs(a)) return;
                  const S* g = t.grad_data(self);
                  S* ga = t.grad_buf(a);
                  for (int64_t i = 0; i < rows; ++i)
                    for (int64_t j = 0; j < w; ++j)
                      ga[i * colsn + c0 + j] += g[i * w + j];
                });
  }

  /// Gradient reversal: identity in the forward pass, multiplies the
  /// incoming gradient by -lambda in the backward pass.
  Id grl(Id a, S lambda) {
    if (lambda < S(0))
      throw ConfigError(strcat("grl: lambda must be >= 0, got ", lambda));
    return grad_scale(a, -lambda, "grl");
  }

  /// Identity forward; backward multiplies the incoming gradient by c.
  /// grl(x, lambda) == grad_scale(x, -lambda).
  Id grad_scale(Id a, S c, const char* opname = "grad_scale") {
    Tensor<S> out = val(a);
    out.requires_grad = false;
    return push(std::move(out), needs(a), opname, [a, c](Tape& t, Id self) {
      if (!t.needs(a)) return;
      const S* g = t.grad_data(self);
      S* ga = t.grad_buf(a);
      for (int64_t i = 0; i < t.val(self).numel(); ++i) ga[i] += c * g[i];
    });
  }

  // ---- access & backward --------------------------------------------------

  const Tensor<S>& value(Id id) const { return node(id).value; }

  /// Runs the reverse sweep from a scalar loss node. Each recorded op is
  /// visited exactly once, in reverse recording order. A second call without
  /// re-recording the forward pass is a contract violation, not a silent
  /// accumulation.
  void backward(Id loss) {
    if (backward_done_)
      throw ContractError(
          "backward: tape already consumed; record a new forward pass");
    if (value(loss).numel() != 1)
      throw ContractError(strcat("backward: loss must be scalar, got shape ",
                                 value(loss).shape_str()));
    backward_done_ = true;
    grad_buf(loss)[0] = S(1);
    for (Id i = loss; i >= 0; --i) {
      Node& n = nodes_[i];
      if (n.backward && n.needs_grad && !n.grad.empty()) n.backward(*this, i);
    }
  }

  bool has_grad(Id id) const {
    return backward_done_ && !node(id).grad.empty();
  }

  /// Gradient of the loss w.r.t. node id; requires a prior backward() and a
  /// gradient path to the node.
  Tensor<S> grad(Id id) const {
    const Node& n = node(id);
    if (!backward_done_) throw ContractError("grad: backward has not run");
    if (n.grad.empty())
      throw ContractError(
          strcat("grad: no gradient reached node ", id, " (op ", n.op, ")"));
    Tensor<S> g;
    g.shape = n.value.shape;
    g.data = n.grad;
    return g;
  }

  size_t size() const { return nodes_.size(); }

 private:
  struct Node {
    Tensor<S> value;
    std::vector<S> grad;  // allocated on first touch during backward
    bool needs_grad = false;
    std::function<void(Tape&, Id)> backward;
    const char* op = "";
  };

  const Node& node(Id id) const {
    if (id < 0 || static_cast<size_t>(id) >= nodes_.size())
      throw ContractError(strcat("bad tape id ", id));
    return nodes_[id];
  }

  const Tensor<S>& val(Id id) const { return node(id).value; }
  bool needs(Id id) const { return node(id).needs_grad; }

  const S* grad_data(Id id) { return nodes_[id].grad.data(); }

  /// Zero-initialized gradient buffer for a node, allocating on demand.
  S* grad_buf(Id id) {
    Node& n = nodes_[id];
    if (n.grad.empty()) n.grad.assign(n.value.data.size(), S(0));
    return n.grad.data();
  }

  Id push(Tensor<S> value, bool needs_grad, const char* op,
          std::function<void(Tape&, Id)> backward) {
    if (backward_done_)
      throw ContractError("tape already consumed by backward; create a new "
                          "tape for further recording");
    Node n;
    n.value = std::move(value);
    n.needs_grad = needs_grad || n.value.requires_grad;
    n.backward = std::move(backward);
    n.op = op;
    nodes_.push_back(std::move(n));
    return static_cast<Id>(nodes_.size() - 1);
  }

  void check_same_shape(const char* op, Id a, Id b) const {
    if (!val(a).same_shape(val(b)))
      throw DimensionError(strcat(op, ": shapes ", val(a).shape_str(), " vs ",
                                  val(b).shape_str()));
  }

  static S stable_sigmoid(S x) {
    if (x >= S(0)) return S(1) / (S(1) + std::exp(-x));
    const S e = std::exp(x);
    return e / (S(1) + e);
  }

  // C[m,n] += A[m,k] . B[k,n], row-major, streaming over B rows.
  static void kernel_matmul(const S* A, const S* B, S* C, int64_t m,
                            int64_t k, int64_t n) {
    for (int64_t i = 0; i < m; ++i) {
      S* ci = C + i * n;
      for (int64_t kk = 0; kk < k; ++kk) {
        const S aik = A[i * k + kk];
        const S* bk = B + kk * n;
        for (int64_t j = 0; j < n; ++j) ci[j] += aik * bk[j];
      }
    }
  }

  std::vector<Node> nodes_;
  bool backward_done_ = false;
};

}  // namespace afm

#endif  // AFM_AUTODIFF_TAPE_H_
