// SPDX-License-Identifier: Apache-2.0
#include "iodir/components.hpp"

#include <algorithm>

#include "iodir/error.hpp"

namespace iodir {

ComponentMask::ComponentMask(int groups, bool value)
    : groups_(groups), bits_(std::size_t{1} << groups, value ? 1 : 0) {
  if (groups < 0 || groups > 16) throw DomainError("component mask supports 0..16 groups");
}

ComponentMask ComponentMask::single(int groups, int component) {
  ComponentMask m(groups, false);
  m.set(component, true);
  return m;
}

int ComponentMask::count() const {
  return static_cast<int>(std::count(bits_.begin(), bits_.end(), std::uint8_t{1}));
}

ComponentMask ComponentMask::operator&(const ComponentMask& o) const {
  if (groups_ != o.groups_) throw DomainError("component mask group count mismatch");
  ComponentMask r = *this;
  for (std::size_t i = 0; i < bits_.size(); ++i) r.bits_[i] = bits_[i] & o.bits_[i];
  return r;
}

ComponentMask ComponentMask::operator|(const ComponentMask& o) const {
  if (groups_ != o.groups_) throw DomainError("component mask group count mismatch");
  ComponentMask r = *this;
  for (std::size_t i = 0; i < bits_.size(); ++i) r.bits_[i] = bits_[i] | o.bits_[i];
  return r;
}

ComponentMask ComponentMask::operator~() const {
  ComponentMask r = *this;
  for (auto& b : r.bits_) b ^= 1;
  return r;
}

bool ComponentPattern::matches(int component) const {
  for (int k : traceless)
    if (!(component >> k & 1)) return false;
  for (int k : traced)
    if (component >> k & 1) return false;
  return true;
}

ComponentBasis::ComponentBasis(const SystemLayout& layout, const std::vector<std::vector<std::string>>& groups)
    : layout_(layout) {
  std::vector<bool> used(layout.size(), false);
  for (const auto& g : groups) {
    auto m = layout.mask_of(g);
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (m[i] && used[i]) throw LayoutError("factor '" + layout[i].label + "' appears in two groups");
      used[i] = used[i] || m[i];
    }
    splits_.emplace_back(layout.dims(), m);
  }
}

Matrix ComponentBasis::trace_and_replace(const Matrix& m, int group) const {
  return splits_.at(group).trace_and_replace(m);
}

std::vector<Matrix> ComponentBasis::decompose(const Matrix& m) const {
  std::vector<Matrix> comps(components());
  comps[0] = m;
  for (int k = 0; k < groups(); ++k) {
    const int bit = 1 << k;
    for (int s = 0; s < bit; ++s) {
      Matrix p = splits_[k].trace_and_replace(comps[s]);
      comps[s | bit] = comps[s] - p;
      comps[s] = std::move(p);
    }
  }
  return comps;
}

Matrix ComponentBasis::project(const Matrix& m, const ComponentMask& mask) const {
  if (mask.groups() != groups()) throw DomainError("component mask does not match basis");
  const int n = dim();
  if (mask.count() == mask.size()) return m;
  Matrix out = Matrix::Zero(n, n);
  if (mask.count() == 0) return out;
  auto comps = decompose(m);
  for (int c = 0; c < components(); ++c)
    if (mask.contains(c)) out += comps[c];
  return out;
}

ComponentMask ComponentBasis::excluding(const std::vector<ComponentPattern>& patterns) const {
  ComponentMask m = ComponentMask::all(groups());
  for (int c = 0; c < components(); ++c)
    for (const auto& p : patterns)
      if (p.matches(c)) m.set(c, false);
  return m;
}

}  // namespace iodir
