#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cube_search.hpp"
#include "errors.hpp"
#include "extractor.hpp"
#include "interval.hpp"
#include "limits.hpp"
#include "oracle.hpp"
#include "tower.hpp"
#include "witness.hpp"

namespace vdw {

enum class StreamMode { proof, search };

inline const char* to_string(StreamMode m) { return m == StreamMode::proof ? "proof" : "search"; }

// Monochromatic cube A_m = {e + sum j_i l_i} harvested from window m.
struct WindowWitness {
  std::size_t m;
  Position e;
  std::vector<Position> ls;
  Color gamma;
  Interval window;
};

struct StreamState {
  std::vector<WindowWitness> witnesses;
  // survivors[t] holds S_t as window indices m; survivors[0] is the color class.
  std::vector<std::vector<std::size_t>> survivors;
  Color gamma = 1;
  std::vector<Position> ds;        // d_1..d_depth
  std::vector<Position> anchors;   // a_t = e_{s_t}
  std::vector<std::size_t> sources;  // s_t = min S_t
  std::size_t achieved_depth = 0;

  const WindowWitness& witness(std::size_t m) const { return witnesses.at(m - 1); }
};

// J*_m = [max J_m + 1, max J_m + W_1] and J_{m+1} = I(J*_m, m).
inline std::pair<Interval, Interval> next_window(std::size_t m, const Interval& prev, const TowerParams& params) {
  if (m < 1 || m > params.depth())
    throw PreconditionError("window stage outside the tower params");
  const Position w1 = detail::narrow<Position>(params.width(1), "W_1");
  const Interval star(prev.hi() + 1, prev.hi() + w1);
  return {star, build_tower_interval(star, m, params)};
}

// First window J_1 = [1, W_1].
inline Interval first_window(const TowerParams& params) {
  return Interval(1, detail::narrow<Position>(params.width(1), "W_1"));
}

// Largest allowed l_i in proof mode: W_1 for i = 1, W_i |I_{i-1}| after that.
inline std::vector<BigInt> proof_caps(const TowerParams& params, std::size_t m) {
  std::vector<BigInt> caps;
  for (std::size_t i = 1; i <= m; ++i)
    caps.push_back(i == 1 ? params.width(1) : params.width(i) * params.size(i - 1));
  return caps;
}

struct SolveOptions {
  Limits limits;
  bool checked = false;
  bool distinct = false;
};

// Proof mode: the window must be I(J*, m); its restriction of the oracle goes through the
// extractor. The witness carries exactly m differences.
inline WindowWitness solve_window_proof(const ColorOracle& oracle, const Interval& window, std::size_t m,
                                        const TowerParams& params, const SolveOptions& options = {}) {
  const auto coloring = oracle.materialize(window, options.limits);
  const Interval base(window.lo(), window.lo() + detail::narrow<Position>(params.width(1), "W_1") - 1);
  ExtractOptions eo;
  eo.checked = options.checked;
  std::vector<std::uint32_t> ks(params.ks.begin(), params.ks.begin() + static_cast<std::ptrdiff_t>(m));
  auto w = params.uniform() ? extract(coloring, base, m, params, eo)
                            : extract_nonuniform(coloring, base, m, ks, params, eo);
  const auto caps = proof_caps(params, m);
  for (std::size_t i = 0; i < m; ++i)
    if (BigInt(w.ds[i]) > caps[i])
      throw InvariantViolation("proof-mode difference l_" + std::to_string(i + 1) + " above its bound");
  return {m, w.a, std::move(w.ds), w.gamma, window};
}

// Search mode: least cube of the given side lengths inside the window under the caps.
inline WindowWitness solve_window_search(const ColorOracle& oracle, const Interval& window, std::size_t m,
                                         const std::vector<std::uint32_t>& ks, const SearchBounds& caps,
                                         const SolveOptions& options = {}) {
  const auto coloring = oracle.materialize(window, options.limits);
  CubeSearchOptions so;
  so.bounds = caps;
  so.distinct = options.distinct;
  so.threads = options.limits.threads;
  auto w = find_cube(coloring, ks, so);
  if (!w)
    throw WindowFailure(m, "no " + std::to_string(ks.size()) + "-dimensional monochromatic cube in [" +
                               std::to_string(window.lo()) + "," + std::to_string(window.hi()) +
                               "] within the caps");
  return {m, w->a, std::move(w->ds), w->gamma, window};
}

namespace detail {

// Most frequent value, ties to the smaller one.
template <class T, class Key>
T majority(const std::vector<std::size_t>& indices, Key key) {
  std::map<T, std::size_t> counts;
  for (auto i : indices)
    ++counts[key(i)];
  auto best = counts.begin();
  for (auto it = counts.begin(); it != counts.end(); ++it)
    if (it->second > best->second)
      best = it;
  return best->first;
}

} // namespace detail

// Finite form of the nested pigeonhole: S_0 is the most frequent color class, S_t keeps the
// members of S_{t-1} with at least t differences whose l_t takes the most frequent value.
// Stops early, with achieved_depth < n, when some S_t would be empty.
inline StreamState stabilize(std::vector<WindowWitness> witnesses, std::size_t n) {
  if (witnesses.empty())
    throw PreconditionError("stabilization needs at least one witness");
  for (std::size_t i = 0; i < witnesses.size(); ++i)
    if (witnesses[i].m != i + 1)
      throw PreconditionError("witnesses must be indexed 1, 2, ... in order");

  StreamState s;
  s.witnesses = std::move(witnesses);
  std::vector<std::size_t> all;
  for (const auto& w : s.witnesses)
    all.push_back(w.m);
  s.gamma = detail::majority<Color>(all, [&](std::size_t m) { return s.witness(m).gamma; });
  std::vector<std::size_t> s0;
  for (auto m : all)
    if (s.witness(m).gamma == s.gamma)
      s0.push_back(m);
  s.survivors.push_back(std::move(s0));

  for (std::size_t t = 1; t <= n; ++t) {
    std::vector<std::size_t> candidates;
    for (auto m : s.survivors.back())
      if (m >= t && s.witness(m).ls.size() >= t)
        candidates.push_back(m);
    if (candidates.empty())
      break;
    const Position d = detail::majority<Position>(candidates, [&](std::size_t m) { return s.witness(m).ls[t - 1]; });
    std::vector<std::size_t> st;
    for (auto m : candidates)
      if (s.witness(m).ls[t - 1] == d)
        st.push_back(m);
    s.ds.push_back(d);
    s.sources.push_back(st.front());
    s.anchors.push_back(s.witness(st.front()).e);
    s.survivors.push_back(std::move(st));
    s.achieved_depth = t;
  }
  return s;
}

struct StreamConfig {
  // Side length per dimension; a single entry means the same k everywhere.
  std::vector<std::uint32_t> ks{2};
  Color c = 2;
  std::size_t depth = 1;
  std::size_t windows = 1;
  StreamMode mode = StreamMode::search;
  // Search mode geometry: window m is [(m-1) S + 1, m S].
  Position window_size = 64;
  SearchBounds caps;
  bool skip_failures = false;
  bool distinct = false;
  bool checked = false;
  Limits limits;

  std::uint32_t k(std::size_t i) const { return ks.size() == 1 ? ks[0] : ks.at(i - 1); }
};

struct DepthReport {
  std::size_t n;
  Position a;
  std::size_t s;
  std::vector<Position> positions;
  bool verified;
};

struct StreamReport {
  StreamMode mode;
  StreamState state;
  std::vector<DepthReport> depths;
  std::vector<std::size_t> skipped_windows;
  std::size_t windows = 0;

  bool conforming() const noexcept { return skipped_windows.empty(); }
  bool verified() const {
    return std::all_of(depths.begin(), depths.end(), [](const auto& d) { return d.verified; });
  }
};

// Re-checks every stabilized depth against the oracle itself.
inline std::vector<DepthReport> verify_stream(const ColorOracle& oracle, const StreamState& s,
                                              const std::vector<std::uint32_t>& ks) {
  std::vector<DepthReport> out;
  for (std::size_t t = 1; t <= s.achieved_depth; ++t) {
    CubeWitness w(s.gamma, s.anchors[t - 1], std::vector<Position>(s.ds.begin(), s.ds.begin() + t),
                  std::vector<std::uint32_t>(ks.begin(), ks.begin() + t));
    out.push_back({t, w.a, s.sources[t - 1], cube_positions(w), verify_witness(oracle, w).ok()});
  }
  return out;
}

// Harvests one witness per window, stabilizes, and verifies all depths.
// Proof mode: witness m comes from J_{m+1} = I(J*_m, m) and has m differences.
// Search mode: witness m comes from the m-th fixed-size window and has min(m, depth) differences.
inline StreamReport run_stream(const ColorOracle& oracle, const StreamConfig& config) {
  if (config.depth < 1)
    throw PreconditionError("stream depth must be >= 1");
  if (config.windows < config.depth)
    throw PreconditionError("the number of windows M must be at least the depth n");
  if (config.ks.empty() || (config.ks.size() != 1 && config.ks.size() < config.depth))
    throw PreconditionError("ks must give one side length or at least depth many");
  if (oracle.num_colors() != config.c)
    throw PreconditionError("oracle has " + std::to_string(oracle.num_colors()) + " colors, expected " +
                            std::to_string(config.c));
  const std::size_t stages = config.mode == StreamMode::proof ? config.windows : config.depth;
  std::vector<std::uint32_t> ks;
  // Proof mode may need more stages than ks lists; the last side length repeats.
  for (std::size_t i = 1; i <= stages; ++i)
    ks.push_back(config.ks.at(std::min(i, config.ks.size()) - 1));
  if (!std::is_sorted(ks.begin(), ks.end()))
    throw PreconditionError("side lengths k_1 <= k_2 <= ... must be nondecreasing");
  for (auto k : ks)
    if (k < 2)
      throw PreconditionError("side lengths must be >= 2");

  SolveOptions so;
  so.limits = config.limits;
  so.checked = config.checked;
  so.distinct = config.distinct;

  StreamReport report;
  report.mode = config.mode;
  report.windows = config.windows;
  std::vector<WindowWitness> witnesses;

  if (config.mode == StreamMode::proof) {
    const auto params = tower_params(ks, config.c, config.limits);
    Interval window = first_window(params);
    for (std::size_t m = 1; m <= config.windows; ++m) {
      window = next_window(m, window, params).second;
      witnesses.push_back(solve_window_proof(oracle, window, m, params, so));
    }
  } else {
    if (config.window_size < 1)
      throw PreconditionError("window size must be >= 1");
    for (std::size_t m = 1; m <= config.windows; ++m) {
      const Interval window((m - 1) * config.window_size + 1, m * config.window_size);
      const std::size_t dims = std::min(m, config.depth);
      std::vector<std::uint32_t> wks(ks.begin(), ks.begin() + static_cast<std::ptrdiff_t>(dims));
      try {
        auto w = solve_window_search(oracle, window, m, wks, config.caps, so);
        w.m = witnesses.size() + 1;
        witnesses.push_back(std::move(w));
      } catch (const WindowFailure&) {
        if (!config.skip_failures)
          throw;
        report.skipped_windows.push_back(m);
      }
    }
    if (witnesses.empty())
      throw WindowFailure(config.windows, "every window failed");
  }

  report.state = stabilize(std::move(witnesses), config.depth);
  report.depths = verify_stream(oracle, report.state, ks);
  return report;
}

} // namespace vdw
