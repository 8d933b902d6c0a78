#pragma once

#include <bit>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <vector>

namespace copylp {

/// A subset of a problem's ordered variable list, stored as a bitmask.
/// Bit i stands for the variable with index i. The canonical order of entropy
/// coordinates is the order of the mask integers.
class VarSet {
 public:
  using Mask = std::uint32_t;
  static constexpr int kCapacity = 32;

  constexpr VarSet() = default;
  constexpr explicit VarSet(Mask mask) : mask_(mask) {}

  static constexpr VarSet single(int index) { return VarSet(Mask{1} << index); }
  static constexpr VarSet of(std::initializer_list<int> indices) {
    Mask m = 0;
    for (int i : indices) m |= Mask{1} << i;
    return VarSet(m);
  }
  /// The first `n` variables.
  static constexpr VarSet prefix(int n) {
    return VarSet(n >= kCapacity ? ~Mask{0} : (Mask{1} << n) - 1);
  }

  constexpr Mask mask() const { return mask_; }
  constexpr bool empty() const { return mask_ == 0; }
  constexpr int size() const { return std::popcount(mask_); }
  constexpr bool contains(int index) const { return (mask_ >> index) & 1u; }
  constexpr bool subset_of(VarSet other) const { return (mask_ & ~other.mask_) == 0; }
  constexpr bool disjoint(VarSet other) const { return (mask_ & other.mask_) == 0; }
  /// Index of the highest member, or -1 when empty.
  constexpr int highest() const { return mask_ == 0 ? -1 : 31 - std::countl_zero(mask_); }

  std::vector<int> indices() const {
    std::vector<int> out;
    for (Mask m = mask_; m != 0; m &= m - 1) out.push_back(std::countr_zero(m));
    return out;
  }

  constexpr VarSet operator|(VarSet o) const { return VarSet(mask_ | o.mask_); }
  constexpr VarSet operator&(VarSet o) const { return VarSet(mask_ & o.mask_); }
  constexpr VarSet operator-(VarSet o) const { return VarSet(mask_ & ~o.mask_); }
  constexpr VarSet& operator|=(VarSet o) {
    mask_ |= o.mask_;
    return *this;
  }

  constexpr auto operator<=>(const VarSet&) const = default;

 private:
  Mask mask_ = 0;
};

/// Number of entropy coordinates over n variables.
constexpr long long coordinate_count(int n) { return (1LL << n) - 1; }

}  // namespace copylp

template <>
struct std::hash<copylp::VarSet> {
  std::size_t operator()(copylp::VarSet v) const noexcept { return v.mask(); }
};
