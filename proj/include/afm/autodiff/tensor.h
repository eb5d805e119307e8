// afm/autodiff/tensor.h

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

#ifndef AFM_AUTODIFF_TENSOR_H_
#define AFM_AUTODIFF_TENSOR_H_

#include <cstdint>
#include <initializer_list>
#include <numeric>
#include <string>
#include <vector>

#include "afm/base/error.h"

namespace afm {

/// Dense row-major tensor. Rank 1 tensors behave as a single row in the
/// 2-D ops (shape [n] == shape [1, n]). The scalar type is float for
/// training runs and double where tests need finite-difference precision.
template <typename S>
struct Tensor {
  std::vector<int64_t> shape;
  std::vector<S> data;
  bool requires_grad = false;

  Tensor() = default;
  Tensor(std::vector<int64_t> shape_in, std::vector<S> data_in)
      : shape(std::move(shape_in)), data(std::move(data_in)) {
    check_consistent();
  }

  static Tensor zeros(std::vector<int64_t> shape) {
    Tensor t;
    t.shape = std::move(shape);
    t.data.assign(t.shape_numel(), S(0));
    return t;
  }

  static Tensor scalar(S v) { return Tensor({1, 1}, {v}); }

  /// Builds a [rows, cols] tensor from nested braces, row by row.
  static Tensor from_rows(std::initializer_list<std::initializer_list<S>> rows) {
    Tensor t;
    int64_t r = static_cast<int64_t>(rows.size());
    int64_t c = r > 0 ? static_cast<int64_t>(rows.begin()->size()) : 0;
    t.shape = {r, c};
    t.data.reserve(r * c);
    for (const auto& row : rows) {
      if (static_cast<int64_t>(row.size()) != c)
        throw DimensionError("from_rows: ragged rows");
      t.data.insert(t.data.end(), row.begin(), row.end());
    }
    return t;
  }

  int64_t numel() const { return static_cast<int64_t>(data.size()); }

  int64_t rank() const { return static_cast<int64_t>(shape.size()); }

  // 2-D view accessors; rank-1 tensors count as one row.
  int64_t rows() const {
    if (shape.empty()) return 1;
    return rank() == 1 ? 1 : shape[0];
  }
  int64_t cols() const {
    if (shape.empty()) return 1;
    return rank() == 1 ? shape[0] : shape[rank() - 1];
  }

  S& at(int64_t r, int64_t c) { return data[r * cols() + c]; }
  const S& at(int64_t r, int64_t c) const { return data[r * cols() + c]; }

  bool same_shape(const Tensor& o) const { return shape == o.shape; }

  std::string shape_str() const {
    std::string s = "[";
    for (size_t i = 0; i < shape.size(); ++i) {
      if (i) s += ",";
      s += std::to_string(shape[i]);
    }
    return s + "]";
  }

  template <typename T>
  Tensor<T> cast() const {
    Tensor<T> out;
    out.shape = shape;
    out.requires_grad = requires_grad;
    out.data.resize(data.size());
    for (size_t i = 0; i < data.size(); ++i)
      out.data[i] = static_cast<T>(data[i]);
    return out;
  }

 private:
  int64_t shape_numel() const {
    int64_t n = 1;
    for (int64_t d : shape) {
      if (d <= 0) throw DimensionError("tensor extent must be positive");
      n *= d;
    }
    return shape.empty() ? 0 : n;
  }

  void check_consistent() const {
    if (shape_numel() != numel())
      throw DimensionError(
          strcat("tensor data length ", numel(), " does not match shape ",
                 shape_str()));
  }
};

}  // namespace afm

#endif  // AFM_AUTODIFF_TENSOR_H_
