#pragma once

#include <compare>
#include <cstdint>
#include <limits>
#include <ostream>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

#include "errors.hpp"

namespace vdw {

using BigInt = boost::multiprecision::cpp_int;
using Position = std::uint64_t;

namespace detail {

template <class Int>
std::string to_decimal(const Int& v) {
  if constexpr (std::is_integral_v<Int>)
    return std::to_string(v);
  else
    return v.str();
}

// Checked narrowing of a big integer into a machine integer.
template <class Int>
Int narrow(const BigInt& v, const char* what) {
  if constexpr (std::is_same_v<Int, BigInt>) {
    return v;
  } else {
    if (v < 0 || v > BigInt(std::numeric_limits<Int>::max()))
      throw ResourceLimitError(std::string(what) + " does not fit in 64 bits: " + v.str());
    return static_cast<Int>(v);
  }
}

} // namespace detail

// Contiguous range [lo, hi] of positive integers with 1-based element access.
template <class Int>
class BasicInterval {
public:
  using value_type = Int;

  BasicInterval(Int lo, Int hi) : lo_(std::move(lo)), hi_(std::move(hi)) {
    if (lo_ < 1 || hi_ < lo_)
      throw PreconditionError("invalid interval [" + detail::to_decimal(lo_) + "," +
                              detail::to_decimal(hi_) + "]");
  }

  const Int& lo() const noexcept { return lo_; }
  const Int& hi() const noexcept { return hi_; }
  Int size() const { return hi_ - lo_ + 1; }

  bool contains(const Int& p) const { return lo_ <= p && p <= hi_; }
  bool contains(const BasicInterval& other) const { return lo_ <= other.lo_ && other.hi_ <= hi_; }

  // I[i] = lo + i - 1 for 1 <= i <= size().
  Int element(const Int& i) const {
    if (i < 1 || i > size())
      throw DomainError("element index " + detail::to_decimal(i) + " outside 1.." +
                        detail::to_decimal(size()));
    return lo_ + i - 1;
  }

  friend bool operator==(const BasicInterval&, const BasicInterval&) = default;

  friend std::ostream& operator<<(std::ostream& os, const BasicInterval& I) {
    return os << '[' << I.lo_ << ',' << I.hi_ << ']';
  }

private:
  Int lo_;
  Int hi_;
};

using Interval = BasicInterval<Position>;
using BigInterval = BasicInterval<BigInt>;

// T^b I = {p + b : p in I}.
template <class Int>
BasicInterval<Int> translate(const BasicInterval<Int>& I, const Int& b) {
  if constexpr (!std::is_unsigned_v<Int>) {
    if (b < 0)
      throw PreconditionError("negative translation");
  }
  if constexpr (std::is_integral_v<Int>) {
    if (I.hi() > std::numeric_limits<Int>::max() - b)
      throw ResourceLimitError("translated interval overflows 64 bits");
  }
  return BasicInterval<Int>(I.lo() + b, I.hi() + b);
}

inline BigInterval widen(const Interval& I) { return BigInterval(BigInt(I.lo()), BigInt(I.hi())); }

inline Interval narrow(const BigInterval& I) {
  return Interval(detail::narrow<Position>(I.lo(), "interval start"),
                  detail::narrow<Position>(I.hi(), "interval end"));
}

} // namespace vdw
