#pragma once

#include <compare>
#include <cstdint>
#include <limits>
#include <optional>
#include <ostream>
#include <string>

namespace emu {

/// An element of E(c) = [0, c] U {+inf}.
///
/// Stored as an unsigned integer with a distinguished sentinel for +inf that
/// compares greater than every finite value. The natural (integer) order is
/// exposed through the comparison operators; the lattice order, under which
/// smaller credits are "better", is `precedes_eq` and is the reverse.
class EnergyValue {
 public:
  using Rep = std::uint64_t;
  static constexpr Rep kInfinityRep = std::numeric_limits<Rep>::max();

  constexpr EnergyValue() = default;
  constexpr explicit EnergyValue(Rep finite) : rep_(finite) {}

  static constexpr EnergyValue infinity() { return EnergyValue(kInfinityRep); }
  static constexpr EnergyValue zero() { return EnergyValue(0); }

  constexpr bool is_infinite() const { return rep_ == kInfinityRep; }
  constexpr bool is_finite() const { return rep_ != kInfinityRep; }
  /// Finite value; meaningless for +inf.
  constexpr Rep value() const { return rep_; }
  constexpr Rep rep() const { return rep_; }

  constexpr auto operator<=>(const EnergyValue&) const = default;

  std::string to_string() const { return is_infinite() ? std::string("inf") : std::to_string(rep_); }

 private:
  Rep rep_ = 0;
};

/// x ⪯ y iff x >= y.
constexpr bool precedes_eq(EnergyValue x, EnergyValue y) { return x >= y; }

inline std::ostream& operator<<(std::ostream& os, EnergyValue v) { return os << v.to_string(); }

/// Upper bound on energy accumulation: a natural number or +inf.
class CreditBound {
 public:
  constexpr CreditBound() = default;
  static constexpr CreditBound finite(std::uint64_t c) { return CreditBound(c); }
  static constexpr CreditBound infinite() { return CreditBound(); }

  constexpr bool is_infinite() const { return !value_.has_value(); }
  constexpr std::uint64_t value() const { return *value_; }

  /// Accepts a natural number or "inf".
  static CreditBound parse(const std::string& text);
  std::string to_string() const { return is_infinite() ? std::string("inf") : std::to_string(*value_); }

  constexpr bool operator==(const CreditBound&) const = default;

 private:
  constexpr explicit CreditBound(std::uint64_t c) : value_(c) {}
  std::optional<std::uint64_t> value_;
};

/// Finite bounds above this are rejected so that credit arithmetic on int64
/// weights cannot overflow.
inline constexpr std::uint64_t kMaxFiniteBound = std::uint64_t{1} << 60;

}  // namespace emu
