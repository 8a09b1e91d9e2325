#pragma once

#include <algorithm>
#include <atomic>
#include <fstream>
#include <map>
#include <mutex>
#include <numeric>
#include <optional>
#include <sstream>
#include <thread>
#include <tuple>
#include <vector>

#include "coloring.hpp"
#include "errors.hpp"

namespace vdw {

struct ApHit {
  Position a;
  Position d;
  friend bool operator==(const ApHit&, const ApHit&) = default;
};

// Least (a, d), ordered by a then d, with a, a+d, ..., a+(k-1)d monochromatic inside the domain.
inline std::optional<ApHit> find_ap(ColoringView coloring, std::uint32_t k) {
  if (k < 2)
    throw PreconditionError("arithmetic progressions need k >= 2");
  const Position lo = coloring.domain().lo();
  const Position hi = coloring.domain().hi();
  const Position steps = k - 1;
  for (Position a = lo; a <= hi; ++a) {
    const Color x = coloring[a];
    for (Position d = 1; a + steps * d <= hi; ++d) {
      std::uint32_t j = 1;
      while (j < k && coloring[a + j * d] == x)
        ++j;
      if (j == k)
        return ApHit{a, d};
    }
  }
  return std::nullopt;
}

// True iff no monochromatic k-AP lies inside the domain. Scans by difference first, so it shares
// no loop structure with find_ap or the W(k,c) search.
inline bool verify_ap_free(ColoringView coloring, std::uint32_t k) {
  if (k < 2)
    throw PreconditionError("arithmetic progressions need k >= 2");
  const auto colors = coloring.colors();
  const std::size_t n = colors.size();
  const std::size_t span_steps = k - 1;
  for (std::size_t d = 1; span_steps * d < n; ++d) {
    for (std::size_t start = 0; start + span_steps * d < n; ++start) {
      bool mono = true;
      for (std::size_t j = 1; j < k && mono; ++j)
        mono = colors[start + j * d] == colors[start];
      if (mono)
        return false;
    }
  }
  return true;
}

struct WNumberResult {
  std::uint32_t k;
  Color c;
  std::uint64_t value;
  // Lexicographically least coloring of [1, value - 1] with no monochromatic k-AP.
  FiniteColoring certificate;
};

// Persisted "k c W" triples. Values are advisory and can always be recomputed.
class WNumberCache {
public:
  std::optional<std::uint64_t> value(std::uint32_t k, Color c) const {
    std::lock_guard lock(mutex_);
    if (auto it = values_.find({k, c}); it != values_.end())
      return it->second;
    return std::nullopt;
  }

  void store(std::uint32_t k, Color c, std::uint64_t w) {
    std::lock_guard lock(mutex_);
    values_[{k, c}] = w;
  }

  void load(const std::string& path) {
    std::ifstream in(path);
    if (!in)
      return;
    std::uint64_t k, c, w;
    std::string line;
    while (std::getline(in, line)) {
      std::istringstream ls(line);
      if (ls >> k >> c >> w)
        store(static_cast<std::uint32_t>(k), static_cast<Color>(c), w);
    }
  }

  void save(const std::string& path) const {
    std::lock_guard lock(mutex_);
    std::ofstream out(path);
    if (!out)
      throw PreconditionError("cannot write cache file " + path);
    for (const auto& [key, w] : values_)
      out << key.first << ' ' << key.second << ' ' << w << '\n';
  }

  std::size_t size() const {
    std::lock_guard lock(mutex_);
    return values_.size();
  }

private:
  mutable std::mutex mutex_;
  std::map<std::pair<std::uint32_t, Color>, std::uint64_t> values_;
};

struct WNumberOptions {
  std::uint64_t search_limit = 64;
  unsigned threads = 1;
  // Disable to force the exhaustive search even where W(k,1)=k or W(2,c)=c+1 applies.
  bool closed_forms = true;
  WNumberCache* cache = nullptr;
};

namespace detail {

// Depth-first extension of AP-free colorings, one position at a time, colors tried in
// increasing order. A new color may only be the next unused one (color-renaming cut), so
// the first coloring reaching a given length is the lexicographically least one.
class ApFreeExtender {
public:
  struct Outcome {
    std::size_t best_len = 0;
    std::vector<Color> best;  // colors of positions 1..best_len
    bool hit_limit = false;
  };

  ApFreeExtender(std::uint32_t k, Color c, std::uint64_t limit, const std::atomic<bool>* stop)
      : k_(k), c_(c), limit_(limit), stop_(stop), colors_(limit + 2, 0) {}

  // Explores every AP-free extension of an AP-free prefix.
  Outcome explore(const std::vector<Color>& prefix) {
    outcome_ = {};
    std::copy(prefix.begin(), prefix.end(), colors_.begin() + 1);
    Color used = *std::max_element(prefix.begin(), prefix.end());
    record(prefix.size());
    if (!outcome_.hit_limit)
      descend(prefix.size(), used);
    return outcome_;
  }

  // True iff the color already at p closes a monochromatic k-AP whose last term is p.
  bool closes_ap(std::size_t p) const {
    const Color x = colors_[p];
    const std::size_t steps = k_ - 1;
    for (std::size_t d = 1; steps * d < p; ++d) {
      std::uint32_t j = 1;
      while (j < k_ && colors_[p - j * d] == x)
        ++j;
      if (j == k_)
        return true;
    }
    return false;
  }

  const std::vector<Color>& colors() const noexcept { return colors_; }
  std::vector<Color>& colors() noexcept { return colors_; }

private:
  void record(std::size_t len) {
    if (len > outcome_.best_len) {
      outcome_.best_len = len;
      outcome_.best.assign(colors_.begin() + 1, colors_.begin() + 1 + len);
    }
    if (len >= limit_)
      outcome_.hit_limit = true;
  }

  void descend(std::size_t len, Color used) {
    if (outcome_.hit_limit || (stop_ && stop_->load(std::memory_order_relaxed)))
      return;
    const std::size_t p = len + 1;
    const Color top = std::min<Color>(c_, used + 1);
    for (Color x = 1; x <= top; ++x) {
      colors_[p] = x;
      if (closes_ap(p))
        continue;
      record(p);
      if (outcome_.hit_limit)
        return;
      descend(p, std::max(used, x));
      if (outcome_.hit_limit)
        return;
    }
    colors_[p] = 0;
  }

  std::uint32_t k_;
  Color c_;
  std::uint64_t limit_;
  const std::atomic<bool>* stop_;
  std::vector<Color> colors_;
  Outcome outcome_;
};

// Canonical AP-free prefixes of length len, in lexicographic order.
inline std::vector<std::vector<Color>> ap_free_prefixes(std::uint32_t k, Color c, std::size_t len) {
  std::vector<std::vector<Color>> out;
  ApFreeExtender probe(k, c, len, nullptr);
  auto& col = probe.colors();
  auto rec = [&](auto&& self, std::size_t p, Color used) -> void {
    if (p > len) {
      out.emplace_back(col.begin() + 1, col.begin() + 1 + len);
      return;
    }
    for (Color x = 1; x <= std::min<Color>(c, used + 1); ++x) {
      col[p] = x;
      if (!probe.closes_ap(p))
        self(self, p + 1, std::max(used, x));
    }
    col[p] = 0;
  };
  rec(rec, 1, 0);
  return out;
}

inline ApFreeExtender::Outcome search_ap_free(std::uint32_t k, Color c, std::uint64_t limit, unsigned threads) {
  if (threads <= 1)
    return ApFreeExtender(k, c, limit, nullptr).explore({1});

  // Split into prefix branches. Each branch reports its own longest coloring; reducing in
  // branch order keeps the result identical to the sequential search.
  std::size_t split = 1;
  std::vector<std::vector<Color>> branches{{1}};
  while (split < limit && branches.size() < 8 * threads) {
    auto deeper = ap_free_prefixes(k, c, split + 1);
    if (deeper.empty())
      break;
    branches = std::move(deeper);
    ++split;
  }
  if (branches.size() < 2)
    return ApFreeExtender(k, c, limit, nullptr).explore({1});

  std::vector<ApFreeExtender::Outcome> results(branches.size());
  std::atomic<std::size_t> next{0};
  std::atomic<bool> stop{false};
  auto worker = [&] {
    ApFreeExtender ext(k, c, limit, &stop);
    for (std::size_t i; (i = next.fetch_add(1)) < branches.size();) {
      results[i] = ext.explore(branches[i]);
      if (results[i].hit_limit)
        stop = true;
    }
  };
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t)
    pool.emplace_back(worker);
  for (auto& t : pool)
    t.join();

  ApFreeExtender::Outcome best;
  for (auto& r : results) {
    best.hit_limit = best.hit_limit || r.hit_limit;
    if (r.best_len > best.best_len) {
      best.best_len = r.best_len;
      best.best = std::move(r.best);
    }
  }
  return best;
}

inline std::map<std::pair<std::uint32_t, Color>, WNumberResult>& resolved_memo() {
  static std::map<std::pair<std::uint32_t, Color>, WNumberResult> memo;
  return memo;
}

inline std::mutex& resolved_memo_mutex() {
  static std::mutex m;
  return m;
}

} // namespace detail

// Least n such that every c-coloring of [1, n] has a monochromatic k-AP, with the
// lexicographically least extremal coloring of [1, n - 1]. Absent when an AP-free coloring
// of length options.search_limit exists, i.e. the value exceeds the limit.
inline std::optional<WNumberResult> vdw_number(std::uint32_t k, Color c, const WNumberOptions& options = {}) {
  if (k < 2)
    throw PreconditionError("W(k,c) needs k >= 2");
  if (c < 1)
    throw PreconditionError("W(k,c) needs c >= 1");
  if (options.search_limit < 1)
    throw PreconditionError("search limit must be >= 1");

  auto finish = [&](WNumberResult r) {
    if (options.cache)
      options.cache->store(k, c, r.value);
    return std::optional<WNumberResult>(std::move(r));
  };

  if (options.closed_forms) {
    if (c == 1)
      return finish({k, c, k, FiniteColoring(1, Interval(1, k - 1), std::vector<Color>(k - 1, 1))});
    if (k == 2) {
      std::vector<Color> distinct(c);
      std::iota(distinct.begin(), distinct.end(), Color{1});
      return finish({k, c, std::uint64_t{c} + 1, FiniteColoring(c, Interval(1, c), std::move(distinct))});
    }
    {
      std::lock_guard lock(detail::resolved_memo_mutex());
      auto& memo = detail::resolved_memo();
      if (auto it = memo.find({k, c}); it != memo.end()) {
        if (it->second.value > options.search_limit)
          return std::nullopt;
        return finish(it->second);
      }
    }
  }

  // Coloring in blocks of k-1 equal colors is AP-free, so W(k,c) > c(k-1).
  if (std::uint64_t{c} * (k - 1) >= options.search_limit)
    return std::nullopt;

  auto outcome = detail::search_ap_free(k, c, options.search_limit, options.threads);
  if (outcome.hit_limit)
    return std::nullopt;

  WNumberResult r{k, c, outcome.best_len + 1,
                  FiniteColoring(c, Interval(1, outcome.best_len), std::move(outcome.best))};
  if (options.closed_forms) {
    std::lock_guard lock(detail::resolved_memo_mutex());
    detail::resolved_memo().emplace(std::pair{k, c}, r);
  }
  return finish(std::move(r));
}

inline std::optional<WNumberResult> vdw_number(std::uint32_t k, Color c, std::uint64_t search_limit) {
  WNumberOptions o;
  o.search_limit = search_limit;
  return vdw_number(k, c, o);
}

} // namespace vdw
