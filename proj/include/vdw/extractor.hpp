#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "coloring.hpp"
#include "errors.hpp"
#include "tower.hpp"
#include "vdw_numbers.hpp"
#include "witness.hpp"

namespace vdw {

// Coloring of block indices 0..num_blocks-1 where two blocks share an id iff their color
// patterns agree at every offset. Ids are interned in first-occurrence order starting at 1,
// so at most num_blocks patterns are ever stored, however large c^block_size is.
struct CompressedColoring {
  std::uint64_t num_blocks = 0;
  std::uint64_t block_size = 0;
  std::vector<Color> ids;                        // one per block, in [1, palette_size()]
  std::vector<std::uint64_t> representatives;    // first block carrying each id

  std::uint32_t palette_size() const noexcept { return static_cast<std::uint32_t>(representatives.size()); }

  // Block i becomes position i + 1.
  FiniteColoring as_coloring() const {
    return FiniteColoring(palette_size(), Interval(1, num_blocks), ids);
  }
};

inline CompressedColoring compress(ColoringView coloring, std::uint64_t block_size, std::uint64_t num_blocks) {
  if (block_size < 1 || num_blocks < 1)
    throw PreconditionError("compression needs positive block size and count");
  if (coloring.size() / block_size != num_blocks || coloring.size() % block_size != 0)
    throw PreconditionError("coloring of size " + std::to_string(coloring.size()) + " is not " +
                            std::to_string(num_blocks) + " blocks of size " + std::to_string(block_size));

  const auto colors = coloring.colors();
  auto pattern = [&](std::uint64_t i) { return colors.subspan(i * block_size, block_size); };
  auto hash_of = [](std::span<const Color> s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (Color x : s) {
      h ^= x;
      h *= 0x100000001b3ULL;
    }
    return h;
  };

  CompressedColoring out;
  out.num_blocks = num_blocks;
  out.block_size = block_size;
  out.ids.reserve(num_blocks);
  std::unordered_multimap<std::uint64_t, Color> seen;
  for (std::uint64_t i = 0; i < num_blocks; ++i) {
    const auto pat = pattern(i);
    const auto h = hash_of(pat);
    Color id = 0;
    for (auto [it, end] = seen.equal_range(h); it != end; ++it) {
      const auto rep = pattern(out.representatives[it->second - 1]);
      if (std::equal(pat.begin(), pat.end(), rep.begin())) {
        id = it->second;
        break;
      }
    }
    if (id == 0) {
      out.representatives.push_back(i);
      id = out.palette_size();
      seen.emplace(h, id);
    }
    out.ids.push_back(id);
  }
  return out;
}

// One recursion step of the extraction, top stage first.
struct ExtractionStage {
  std::size_t stage;
  std::uint64_t b1;          // first selected block (0-based)
  std::uint64_t dstar;       // common difference of the selected block indices
  std::uint64_t block_size;  // |I_{stage-1}|
  std::uint32_t palette_size;
};

struct ExtractOptions {
  // Re-check the block-shift law (colors of selected blocks agree offset by offset) at every stage.
  bool checked = false;
  std::vector<ExtractionStage>* trace = nullptr;
};

namespace detail {

inline void check_block_shift(ColoringView tower, const Interval& first, std::uint64_t block_size,
                              std::uint64_t dstar, std::uint32_t k) {
  const Position step = dstar * block_size;
  for (std::uint32_t j = 1; j < k; ++j) {
    const Interval shifted = translate(first, j * step);
    if (!tower.domain().contains(shifted))
      throw InvariantViolation("selected block leaves the tower");
    for (Position i = 1; i <= block_size; ++i) {
      if (shifted.element(i) != first.element(i) + j * step)
        throw InvariantViolation("block shift law broken in geometry");
      if (tower[shifted.element(i)] != tower[first.element(i)])
        throw InvariantViolation("block shift law broken: selected blocks differ at offset " +
                                 std::to_string(i));
    }
  }
}

inline CubeWitness extract_impl(ColoringView coloring, const Interval& I, std::size_t n, const TowerParams& params,
                                const std::vector<std::uint32_t>& ks, const ExtractOptions& options) {
  if (coloring.num_colors() != params.c)
    throw PreconditionError("coloring has " + std::to_string(coloring.num_colors()) +
                            " colors but the tower was built for c = " + std::to_string(params.c));
  if (coloring.domain() != build_tower_interval(I, n, params))
    throw PreconditionError("coloring domain must be the tower interval I(I, n)");

  std::vector<Position> ds(n);
  Position base = I.lo();
  // Stages n, n-1, ..., 2 each pick a k_m-AP of identical blocks and descend into the first one.
  for (std::size_t m = n; m >= 2; --m) {
    const auto block_size = narrow<Position>(params.size(m - 1), "block size");
    const auto num_blocks = narrow<Position>(params.width(m), "block count");
    const Interval tower(base, base + block_size * num_blocks - 1);
    const ColoringView here = coloring.restrict_to(tower);
    const auto compressed = compress(here, block_size, num_blocks);
    const auto hit = find_ap(compressed.as_coloring(), ks[m - 1]);
    if (!hit)
      throw InvariantViolation("no " + std::to_string(ks[m - 1]) + "-AP among " + std::to_string(num_blocks) +
                               " compressed blocks at stage " + std::to_string(m));
    const std::uint64_t b1 = hit->a - 1;
    const Interval first(base + b1 * block_size, base + (b1 + 1) * block_size - 1);
    if (options.checked)
      check_block_shift(here, first, block_size, hit->d, ks[m - 1]);
    if (options.trace)
      options.trace->push_back({m, b1, hit->d, block_size, compressed.palette_size()});
    ds[m - 1] = hit->d * block_size;
    base = first.lo();
  }

  const Interval bottom(base, base + narrow<Position>(params.width(1), "W_1") - 1);
  const auto hit = find_ap(coloring.restrict_to(bottom), ks[0]);
  if (!hit)
    throw InvariantViolation("no " + std::to_string(ks[0]) + "-AP in the base interval");
  if (options.trace)
    options.trace->push_back({1, hit->a - bottom.lo(), hit->d, 1, coloring.num_colors()});
  ds[0] = hit->d;

  std::vector<std::uint32_t> own_ks(ks.begin(), ks.begin() + static_cast<std::ptrdiff_t>(n));
  CubeWitness w(coloring[hit->a], hit->a, std::move(ds), std::move(own_ks));
  if (options.checked && !verify_witness(coloring, w))
    throw InvariantViolation("extracted cube is not monochromatic");
  return w;
}

} // namespace detail

// Monochromatic n-dimensional cube inside I(I, n), following the inductive construction: the
// top stage compresses the tower into W_n blocks of size |I_{n-1}|, finds a k-AP (b_1, d*) of
// identical blocks and recurses into block b_1; the step recorded for that stage is the
// absolute shift d* |I_{n-1}|. Hence d_1 <= W_1 and d_m <= W_m |I_{m-1}|.
inline CubeWitness extract(ColoringView coloring, const Interval& I, std::size_t n, const TowerParams& params,
                           const ExtractOptions& options = {}) {
  if (n < 1 || n > params.depth())
    throw PreconditionError("extraction depth outside the tower params");
  return detail::extract_impl(coloring, I, n, params, params.ks, options);
}

// Per-dimension side lengths ks (nondecreasing); params must be the stagewise tower for ks.
inline CubeWitness extract_nonuniform(ColoringView coloring, const Interval& I, std::size_t n,
                                      const std::vector<std::uint32_t>& ks, const TowerParams& params,
                                      const ExtractOptions& options = {}) {
  if (n < 1 || ks.size() < n || n > params.depth())
    throw PreconditionError("extraction depth outside ks or tower params");
  if (!std::is_sorted(ks.begin(), ks.begin() + static_cast<std::ptrdiff_t>(n)))
    throw PreconditionError("side lengths k_1 <= k_2 <= ... must be nondecreasing");
  if (!std::equal(ks.begin(), ks.begin() + static_cast<std::ptrdiff_t>(n), params.ks.begin()))
    throw PreconditionError("tower params were built for different side lengths");
  return detail::extract_impl(coloring, I, n, params, ks, options);
}

} // namespace vdw
