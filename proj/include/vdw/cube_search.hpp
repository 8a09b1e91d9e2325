#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <limits>
#include <mutex>
#include <optional>
#include <thread>
#include <vector>

#include "coloring.hpp"
#include "errors.hpp"
#include "witness.hpp"

namespace vdw {

// Optional per-dimension caps on d_i. Dimensions without a cap are bounded only by the domain.
struct SearchBounds {
  std::vector<Position> caps;

  Position cap(std::size_t i) const {
    return i < caps.size() ? caps[i] : std::numeric_limits<Position>::max();
  }
};

struct CubeSearchOptions {
  SearchBounds bounds;
  // Require d_1 < d_2 < ... (uniform ks) or pairwise distinct d_i (mixed ks).
  bool distinct = false;
  unsigned threads = 1;
};

namespace detail {

inline bool all_equal(const std::vector<std::uint32_t>& ks) {
  return std::all_of(ks.begin(), ks.end(), [&](auto k) { return k == ks.front(); });
}

class CubeSearcher {
public:
  CubeSearcher(ColoringView coloring, const std::vector<std::uint32_t>& ks, const CubeSearchOptions& options)
      : coloring_(coloring), ks_(ks), options_(options), uniform_(all_equal(ks)), ds_(ks.size()) {}

  // Least difference vector for anchor a, if any.
  std::optional<CubeWitness> at_anchor(Position a) {
    gamma_ = coloring_[a];
    std::vector<Position> set{a};
    if (!descend(0, set, a))
      return std::nullopt;
    return CubeWitness(gamma_, a, ds_, ks_);
  }

private:
  bool descend(std::size_t i, const std::vector<Position>& set, Position top) {
    if (i == ks_.size())
      return true;
    const Position hi = coloring_.domain().hi();
    const Position steps = ks_[i] - 1;
    Position dmin = 1;
    if (uniform_ && i > 0)
      dmin = ds_[i - 1] + (options_.distinct ? 1 : 0);
    // Every later dimension needs at least (k_j - 1) * dmin more room.
    Position reserve = 0;
    for (std::size_t j = i + 1; j < ks_.size(); ++j)
      reserve += (ks_[j] - 1) * (uniform_ ? dmin : 1);
    if (top + reserve > hi)
      return false;
    const Position dmax = std::min(options_.bounds.cap(i), (hi - top - reserve) / steps);

    std::vector<Position> next;
    for (Position d = dmin; d <= dmax; ++d) {
      if (options_.distinct && !uniform_ && std::find(ds_.begin(), ds_.begin() + i, d) != ds_.begin() + i)
        continue;
      bool mono = true;
      for (std::uint32_t j = 1; j <= steps && mono; ++j)
        for (Position p : set)
          if (coloring_[p + j * d] != gamma_) {
            mono = false;
            break;
          }
      if (!mono)
        continue;
      next.clear();
      for (std::uint32_t j = 0; j <= steps; ++j)
        for (Position p : set)
          next.push_back(p + j * d);
      std::sort(next.begin(), next.end());
      next.erase(std::unique(next.begin(), next.end()), next.end());
      ds_[i] = d;
      if (descend(i + 1, next, top + steps * d))
        return true;
    }
    return false;
  }

  ColoringView coloring_;
  const std::vector<std::uint32_t>& ks_;
  const CubeSearchOptions& options_;
  bool uniform_;
  Color gamma_ = 0;
  std::vector<Position> ds_;
};

} // namespace detail

// Least monochromatic cube under the order (a, d_1, ..., d_n), lexicographic. With equal side
// lengths the dimensions are interchangeable, so only d_1 <= d_2 <= ... <= d_n is searched.
inline std::optional<CubeWitness> find_cube(ColoringView coloring, const std::vector<std::uint32_t>& ks,
                                            const CubeSearchOptions& options = {}) {
  if (ks.empty())
    throw PreconditionError("cube search needs at least one dimension");
  for (auto k : ks)
    if (k < 2)
      throw PreconditionError("cube side lengths must be >= 2");
  for (auto cap : options.bounds.caps)
    if (cap < 1)
      throw PreconditionError("search bounds must be >= 1");

  const Position lo = coloring.domain().lo();
  const Position hi = coloring.domain().hi();

  if (options.threads <= 1) {
    detail::CubeSearcher searcher(coloring, ks, options);
    for (Position a = lo; a <= hi; ++a)
      if (auto w = searcher.at_anchor(a))
        return w;
    return std::nullopt;
  }

  // Anchors are handed out in increasing order; once some anchor succeeds, larger ones are skipped.
  std::atomic<Position> next{lo};
  std::atomic<Position> best{std::numeric_limits<Position>::max()};
  std::mutex mutex;
  std::optional<CubeWitness> result;
  auto worker = [&] {
    detail::CubeSearcher searcher(coloring, ks, options);
    for (Position a; (a = next.fetch_add(1)) <= hi;) {
      if (a > best.load())
        break;
      if (auto w = searcher.at_anchor(a)) {
        std::lock_guard lock(mutex);
        if (a < best.load()) {
          best = a;
          result = std::move(w);
        }
        break;
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < options.threads; ++t)
    pool.emplace_back(worker);
  for (auto& t : pool)
    t.join();
  return result;
}

namespace detail {

// True iff colors[1..p] holds a monochromatic cube with side lengths ks whose largest element
// is p. The cube is grown downward from p: {p - sum j_i d_i}.
inline bool closes_cube(const std::vector<Color>& colors, std::size_t p, const std::vector<std::uint32_t>& ks,
                        bool uniform) {
  const Color x = colors[p];
  std::vector<std::size_t> ds(ks.size());
  auto rec = [&](auto&& self, std::size_t i, const std::vector<std::size_t>& set, std::size_t bottom) -> bool {
    if (i == ks.size())
      return true;
    const std::size_t steps = ks[i] - 1;
    const std::size_t dmin = (uniform && i > 0) ? ds[i - 1] : 1;
    std::vector<std::size_t> next;
    for (std::size_t d = dmin; steps * d < bottom; ++d) {
      bool mono = true;
      for (std::size_t j = 1; j <= steps && mono; ++j)
        for (auto q : set)
          if (colors[q - j * d] != x) {
            mono = false;
            break;
          }
      if (!mono)
        continue;
      next.clear();
      for (std::size_t j = 0; j <= steps; ++j)
        for (auto q : set)
          next.push_back(q - j * d);
      std::sort(next.begin(), next.end());
      next.erase(std::unique(next.begin(), next.end()), next.end());
      ds[i] = d;
      if (self(self, i + 1, next, bottom - steps * d))
        return true;
    }
    return false;
  };
  return rec(rec, 0, std::vector<std::size_t>{p}, p);
}

} // namespace detail

// Least N <= cap such that every c-coloring of [1, N] contains a monochromatic cube with side
// lengths ks; absent when a cube-free coloring of [1, cap] exists. Colorings are enumerated as
// a base-c odometer over positions 1, 2, ... that backs up as soon as the newest position closes
// a cube, with first occurrences of colors forced into increasing order.
inline std::optional<std::uint64_t> cube_number(const std::vector<std::uint32_t>& ks, Color c, std::uint64_t cap) {
  if (ks.empty())
    throw PreconditionError("cube number needs at least one dimension");
  for (auto k : ks)
    if (k < 2)
      throw PreconditionError("cube side lengths must be >= 2");
  if (c < 1 || cap < 1)
    throw PreconditionError("cube number needs c >= 1 and cap >= 1");

  const bool uniform = detail::all_equal(ks);
  std::vector<Color> colors(cap + 2, 0);
  std::vector<Color> used(cap + 2, 0);  // used[p] = largest color among positions 1..p
  std::size_t len = 1;
  std::size_t longest = 0;
  colors[1] = 1;
  for (;;) {
    used[len] = std::max(used[len - 1], colors[len]);
    if (!detail::closes_cube(colors, len, ks, uniform)) {
      longest = std::max(longest, len);
      if (len == cap)
        return std::nullopt;
      colors[++len] = 1;
      continue;
    }
    // Advance the odometer, carrying past digits that are at their largest allowed color.
    while (len > 0 && colors[len] >= std::min<Color>(c, used[len - 1] + 1))
      colors[len--] = 0;
    if (len == 0)
      break;
    ++colors[len];
  }
  return longest + 1;
}

} // namespace vdw
