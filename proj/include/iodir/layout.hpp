// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <initializer_list>
#include <string>
#include <vector>

namespace iodir {

struct Factor {
  std::string label;
  int dim = 2;

  bool operator==(const Factor&) const = default;
};

// Ordered tensor factors. Composite indices are row-major: the first factor
// is the most significant digit.
class SystemLayout {
 public:
  SystemLayout() = default;
  explicit SystemLayout(std::vector<Factor> factors);
  SystemLayout(std::initializer_list<Factor> factors);

  static SystemLayout qubits(const std::vector<std::string>& labels);

  std::size_t size() const { return factors_.size(); }
  bool empty() const { return factors_.empty(); }
  const Factor& operator[](std::size_t i) const { return factors_[i]; }
  const std::vector<Factor>& factors() const { return factors_; }

  int total_dim() const { return total_; }
  std::vector<int> dims() const;
  std::vector<std::string> labels() const;

  bool contains(const std::string& label) const;
  // Throws LayoutError for unknown labels.
  std::size_t index_of(const std::string& label) const;
  int dim_of(const std::string& label) const;

  // Kept factors in original order; throws on unknown labels.
  SystemLayout subset(const std::vector<std::string>& labels) const;
  SystemLayout without(const std::vector<std::string>& labels) const;
  SystemLayout concat(const SystemLayout& other) const;
  // Same factors, new order (must be a permutation of the labels).
  SystemLayout reordered(const std::vector<std::string>& labels) const;

  std::vector<bool> mask_of(const std::vector<std::string>& labels) const;
  std::string to_string() const;

  bool operator==(const SystemLayout& other) const { return factors_ == other.factors_; }

 private:
  std::vector<Factor> factors_;
  int total_ = 1;
};

}  // namespace iodir
