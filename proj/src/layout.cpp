// SPDX-License-Identifier: Apache-2.0
#include "iodir/layout.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "iodir/error.hpp"

namespace iodir {

SystemLayout::SystemLayout(std::vector<Factor> factors) : factors_(std::move(factors)) {
  std::set<std::string> seen;
  total_ = 1;
  for (const auto& f : factors_) {
    if (f.dim <= 0) throw LayoutError("factor '" + f.label + "' has non-positive dimension");
    if (!seen.insert(f.label).second) throw LayoutError("duplicate label '" + f.label + "'");
    total_ *= f.dim;
  }
}

SystemLayout::SystemLayout(std::initializer_list<Factor> factors)
    : SystemLayout(std::vector<Factor>(factors)) {}

SystemLayout SystemLayout::qubits(const std::vector<std::string>& labels) {
  std::vector<Factor> f;
  f.reserve(labels.size());
  for (const auto& l : labels) f.push_back({l, 2});
  return SystemLayout(std::move(f));
}

std::vector<int> SystemLayout::dims() const {
  std::vector<int> d;
  d.reserve(factors_.size());
  for (const auto& f : factors_) d.push_back(f.dim);
  return d;
}

std::vector<std::string> SystemLayout::labels() const {
  std::vector<std::string> l;
  l.reserve(factors_.size());
  for (const auto& f : factors_) l.push_back(f.label);
  return l;
}

bool SystemLayout::contains(const std::string& label) const {
  return std::any_of(factors_.begin(), factors_.end(),
                     [&](const Factor& f) { return f.label == label; });
}

std::size_t SystemLayout::index_of(const std::string& label) const {
  for (std::size_t i = 0; i < factors_.size(); ++i)
    if (factors_[i].label == label) return i;
  throw LayoutError("unknown label '" + label + "' in layout " + to_string());
}

int SystemLayout::dim_of(const std::string& label) const { return factors_[index_of(label)].dim; }

std::vector<bool> SystemLayout::mask_of(const std::vector<std::string>& labels) const {
  std::vector<bool> m(factors_.size(), false);
  for (const auto& l : labels) m[index_of(l)] = true;
  return m;
}

SystemLayout SystemLayout::subset(const std::vector<std::string>& labels) const {
  auto m = mask_of(labels);
  std::vector<Factor> f;
  for (std::size_t i = 0; i < factors_.size(); ++i)
    if (m[i]) f.push_back(factors_[i]);
  return SystemLayout(std::move(f));
}

SystemLayout SystemLayout::without(const std::vector<std::string>& labels) const {
  auto m = mask_of(labels);
  std::vector<Factor> f;
  for (std::size_t i = 0; i < factors_.size(); ++i)
    if (!m[i]) f.push_back(factors_[i]);
  return SystemLayout(std::move(f));
}

SystemLayout SystemLayout::concat(const SystemLayout& other) const {
  std::vector<Factor> f = factors_;
  f.insert(f.end(), other.factors_.begin(), other.factors_.end());
  return SystemLayout(std::move(f));
}

SystemLayout SystemLayout::reordered(const std::vector<std::string>& labels) const {
  if (labels.size() != factors_.size()) throw LayoutError("reorder must list every factor");
  std::vector<Factor> f;
  for (const auto& l : labels) f.push_back(factors_[index_of(l)]);
  return SystemLayout(std::move(f));
}

std::string SystemLayout::to_string() const {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    if (i) os << ", ";
    os << factors_[i].label << ':' << factors_[i].dim;
  }
  os << ')';
  return os.str();
}

}  // namespace iodir
