#pragma once

#include <algorithm>
#include <bit>
#include <cstddef>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "errors.hpp"
#include "interval.hpp"
#include "limits.hpp"
#include "vdw_numbers.hpp"

namespace vdw {

// Stage parameters of the interval tower, all exact:
//   W_1 = W(k_1, c),  c_m = c^(W_m ... W_1),  W_{m+1} = W(k_{m+1}, c_m),  |I_m| = W_m ... W_1.
// With uniform k every k_m equals k. Accessors are 1-based like the stages they name.
struct TowerParams {
  Color c = 1;
  std::vector<std::uint32_t> ks;  // k_1..k_n
  std::vector<BigInt> W;          // W_1..W_n
  std::vector<BigInt> C;          // c_1..c_{n-1}
  std::vector<BigInt> sizes;      // |I_1|..|I_n|

  std::size_t depth() const noexcept { return W.size(); }

  bool uniform() const {
    return std::all_of(ks.begin(), ks.end(), [&](auto k) { return k == ks.front(); });
  }

  std::uint32_t k(std::size_t m) const { return ks.at(m - 1); }
  const BigInt& width(std::size_t m) const { return W.at(m - 1); }
  const BigInt& colors(std::size_t m) const { return C.at(m - 1); }
  const BigInt& size(std::size_t m) const { return sizes.at(m - 1); }
};

namespace detail {

inline BigInt stage_width(std::uint32_t k, const BigInt& colors, std::size_t stage, const Limits& limits,
                          WNumberCache* cache) {
  if (k == 2)
    return colors + 1;
  if (colors == 1)
    return BigInt(k);
  const std::string what = "W(" + std::to_string(k) + "," + colors.str() + ")";
  if (colors > BigInt(std::numeric_limits<Color>::max()))
    throw TowerUncomputable(stage, what + " exceeds the search limit");
  auto c = static_cast<Color>(colors);
  if (cache)
    if (auto v = cache->value(k, c))
      return BigInt(*v);
  WNumberOptions o;
  o.search_limit = limits.wnumber_limit;
  o.threads = limits.threads;
  o.cache = cache;
  auto r = vdw_number(k, c, o);
  if (!r)
    throw TowerUncomputable(stage, what + " exceeds the search limit " + std::to_string(limits.wnumber_limit));
  return BigInt(r->value);
}

} // namespace detail

// Stagewise parameters for side lengths ks = (k_1, ..., k_n).
inline TowerParams tower_params(std::vector<std::uint32_t> ks, Color c, const Limits& limits = {},
                                WNumberCache* cache = nullptr) {
  if (ks.empty())
    throw PreconditionError("tower depth n must be >= 1");
  if (c < 1)
    throw PreconditionError("tower needs c >= 1");
  for (auto k : ks)
    if (k < 2)
      throw PreconditionError("tower needs every k >= 2");

  TowerParams p;
  p.c = c;
  p.ks = std::move(ks);
  const std::size_t n = p.ks.size();
  p.W.push_back(detail::stage_width(p.ks[0], BigInt(c), 1, limits, cache));
  p.sizes.push_back(p.W.back());
  for (std::size_t m = 1; m < n; ++m) {
    const BigInt& exponent = p.sizes.back();
    BigInt cm = 1;
    if (c > 1) {
      const std::uint64_t bits_per_color = std::bit_width(c);
      if (exponent > BigInt(limits.max_color_bits / bits_per_color))
        throw TowerUncomputable(m + 1, "c_" + std::to_string(m) + " = " + std::to_string(c) + "^" +
                                           exponent.str() + " exceeds " +
                                           std::to_string(limits.max_color_bits) + " bits");
      cm = boost::multiprecision::pow(BigInt(c), static_cast<unsigned>(exponent));
    }
    p.C.push_back(cm);
    p.W.push_back(detail::stage_width(p.ks[m], cm, m + 1, limits, cache));
    p.sizes.push_back(p.sizes.back() * p.W.back());
  }
  return p;
}

inline TowerParams tower_params(std::uint32_t k, Color c, std::size_t n, const Limits& limits = {},
                                WNumberCache* cache = nullptr) {
  if (n < 1)
    throw PreconditionError("tower depth n must be >= 1");
  return tower_params(std::vector<std::uint32_t>(n, k), c, limits, cache);
}

namespace detail {

template <class Int>
void check_tower_base(const BasicInterval<Int>& I, std::size_t n, const TowerParams& params) {
  if (n < 1 || n > params.depth())
    throw PreconditionError("tower stage " + std::to_string(n) + " not covered by params of depth " +
                            std::to_string(params.depth()));
  if (BigInt(I.size()) != params.width(1))
    throw PreconditionError("tower base interval must have size W_1 = " + params.width(1).str());
}

} // namespace detail

// I(I, n): the interval obtained by stacking W_{m+1} translates of I_m, each shifted by |I_m|.
// It is contiguous, so only its endpoints are computed: [I.lo, I.lo + |I_n| - 1].
template <class Int>
BasicInterval<Int> build_tower_interval(const BasicInterval<Int>& I, std::size_t n, const TowerParams& params) {
  detail::check_tower_base(I, n, params);
  BigInt lo(I.lo());
  return BasicInterval<Int>(I.lo(), detail::narrow<Int>(lo + params.size(n) - 1, "tower interval end"));
}

// Block J_i = T^{i |I_n|} I(I, n) inside I(I, n+1). Block indices are 0-based: 0 <= i <= W_{n+1} - 1.
template <class Int>
BasicInterval<Int> block(const BasicInterval<Int>& I, std::size_t n, const TowerParams& params, const Int& i) {
  detail::check_tower_base(I, n, params);
  if (n + 1 > params.depth())
    throw PreconditionError("blocks of stage " + std::to_string(n) + " need params of depth " +
                            std::to_string(n + 1));
  if (i < 0 || BigInt(i) >= params.width(n + 1))
    throw DomainError("block index " + detail::to_decimal(i) + " outside 0.." + BigInt(params.width(n + 1) - 1).str());
  auto base = build_tower_interval(I, n, params);
  Int shift = detail::narrow<Int>(BigInt(i) * params.size(n), "block offset");
  return translate(base, shift);
}

// T^b I(I, n) == I(T^b I, n).
template <class Int>
bool check_translation_identity(const BasicInterval<Int>& I, std::size_t n, const TowerParams& params, const Int& b) {
  return translate(build_tower_interval(I, n, params), b) == build_tower_interval(translate(I, b), n, params);
}

} // namespace vdw
