// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "iodir/operator.hpp"
#include "iodir/tensor.hpp"

namespace iodir {

// Set of components over g groups. Component index bit k set means the
// traceless part on group k, clear means the trace-and-replaced part.
class ComponentMask {
 public:
  ComponentMask() = default;
  ComponentMask(int groups, bool value);

  static ComponentMask all(int groups) { return ComponentMask(groups, true); }
  static ComponentMask none(int groups) { return ComponentMask(groups, false); }
  static ComponentMask single(int groups, int component);

  int groups() const { return groups_; }
  int size() const { return static_cast<int>(bits_.size()); }
  bool contains(int c) const { return bits_[c] != 0; }
  void set(int c, bool v) { bits_[c] = v ? 1 : 0; }
  int count() const;

  ComponentMask operator&(const ComponentMask& o) const;
  ComponentMask operator|(const ComponentMask& o) const;
  ComponentMask operator~() const;
  bool operator==(const ComponentMask& o) const = default;

 private:
  int groups_ = 0;
  std::vector<std::uint8_t> bits_;
};

// A linear condition of the form prod_{k in traceless}(1 - _k) prod_{k in traced} _k S = 0.
struct ComponentPattern {
  std::vector<int> traceless;
  std::vector<int> traced;

  bool matches(int component) const;
};

// Orthogonal splitting of operator space by commuting trace-and-replace
// projections, one per group of factors.
class ComponentBasis {
 public:
  ComponentBasis() = default;
  ComponentBasis(const SystemLayout& layout, const std::vector<std::vector<std::string>>& groups);

  const SystemLayout& layout() const { return layout_; }
  int groups() const { return static_cast<int>(splits_.size()); }
  int components() const { return 1 << groups(); }
  int dim() const { return layout_.total_dim(); }

  std::vector<Matrix> decompose(const Matrix& m) const;
  Matrix project(const Matrix& m, const ComponentMask& mask) const;
  Matrix trace_and_replace(const Matrix& m, int group) const;

  // Everything except components matching any of the patterns.
  ComponentMask excluding(const std::vector<ComponentPattern>& patterns) const;

 private:
  SystemLayout layout_;
  std::vector<IndexSplit> splits_;
};

}  // namespace iodir
