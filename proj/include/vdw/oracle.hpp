#pragma once

#include <bit>
#include <cstdint>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "coloring.hpp"
#include "errors.hpp"
#include "interval.hpp"
#include "limits.hpp"

namespace vdw {

// Finitely described coloring of every positive integer.
class ColorOracle {
public:
  struct Constant {
    Color gamma;
  };
  struct Periodic {
    std::vector<Color> pattern;
  };
  struct EventuallyPeriodic {
    std::vector<Color> prefix;
    std::vector<Color> pattern;
  };
  struct ThueMorse {};
  struct SeededRandom {
    std::uint64_t seed;
  };
  // An explicit coloring; positions it does not cover get the default color.
  struct FilePrefix {
    std::shared_ptr<const FiniteColoring> coloring;
    Color default_color;
  };
  using Rule = std::variant<Constant, Periodic, EventuallyPeriodic, ThueMorse, SeededRandom, FilePrefix>;

  ColorOracle(Color c, Rule rule) : c_(c), rule_(std::move(rule)) { validate(); }

  static ColorOracle constant(Color c, Color gamma) { return {c, Constant{gamma}}; }
  static ColorOracle periodic(Color c, std::vector<Color> pattern) { return {c, Periodic{std::move(pattern)}}; }
  static ColorOracle eventually_periodic(Color c, std::vector<Color> prefix, std::vector<Color> pattern) {
    return {c, EventuallyPeriodic{std::move(prefix), std::move(pattern)}};
  }
  static ColorOracle thue_morse() { return {2, ThueMorse{}}; }
  static ColorOracle seeded_random(Color c, std::uint64_t seed) { return {c, SeededRandom{seed}}; }
  static ColorOracle file_prefix(FiniteColoring coloring, Color default_color = 1) {
    Color c = coloring.num_colors();
    return {c, FilePrefix{std::make_shared<const FiniteColoring>(std::move(coloring)), default_color}};
  }

  Color num_colors() const noexcept { return c_; }
  const Rule& rule() const noexcept { return rule_; }

  Color color_at(Position p) const {
    if (p < 1)
      throw DomainError("oracle positions start at 1");
    return std::visit([&](const auto& r) { return eval(r, p); }, rule_);
  }

  // Dense restriction to an interval, refused beyond limits.max_cells.
  FiniteColoring materialize(const Interval& I, const Limits& limits = {}) const {
    if (I.size() > limits.max_cells)
      throw ResourceLimitError("materializing " + std::to_string(I.size()) +
                               " cells exceeds VDW_MAX_CELLS=" + std::to_string(limits.max_cells));
    std::vector<Color> colors;
    colors.reserve(I.size());
    for (Position p = I.lo(); p <= I.hi(); ++p)
      colors.push_back(color_at(p));
    return FiniteColoring(c_, I, std::move(colors));
  }

private:
  static std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
  }

  Color eval(const Constant& r, Position) const { return r.gamma; }
  Color eval(const Periodic& r, Position p) const { return r.pattern[(p - 1) % r.pattern.size()]; }
  Color eval(const EventuallyPeriodic& r, Position p) const {
    if (p <= r.prefix.size())
      return r.prefix[p - 1];
    return r.pattern[(p - 1 - r.prefix.size()) % r.pattern.size()];
  }
  Color eval(const ThueMorse&, Position p) const {
    return 1 + static_cast<Color>(std::popcount(p - 1) & 1);
  }
  // Keyed by (seed, position) only, so query order never matters.
  Color eval(const SeededRandom& r, Position p) const {
    return 1 + static_cast<Color>(splitmix64(splitmix64(r.seed) ^ p) % c_);
  }
  Color eval(const FilePrefix& r, Position p) const {
    return r.coloring->domain().contains(p) ? r.coloring->at(p) : r.default_color;
  }

  void check_color(Color x) const {
    if (x < 1 || x > c_)
      throw PreconditionError("oracle color " + std::to_string(x) + " outside [1," + std::to_string(c_) + "]");
  }

  void validate() const {
    if (c_ < 1)
      throw PreconditionError("an oracle needs at least one color");
    std::visit(
        [&](const auto& r) {
          using R = std::decay_t<decltype(r)>;
          if constexpr (std::is_same_v<R, Constant>) {
            check_color(r.gamma);
          } else if constexpr (std::is_same_v<R, Periodic>) {
            if (r.pattern.empty())
              throw PreconditionError("empty periodic pattern");
            for (Color x : r.pattern)
              check_color(x);
          } else if constexpr (std::is_same_v<R, EventuallyPeriodic>) {
            if (r.pattern.empty())
              throw PreconditionError("empty periodic pattern");
            for (Color x : r.prefix)
              check_color(x);
            for (Color x : r.pattern)
              check_color(x);
          } else if constexpr (std::is_same_v<R, ThueMorse>) {
            if (c_ < 2)
              throw PreconditionError("the Thue-Morse oracle uses two colors");
          } else if constexpr (std::is_same_v<R, FilePrefix>) {
            if (!r.coloring)
              throw PreconditionError("missing prefix coloring");
            check_color(r.default_color);
            if (r.coloring->num_colors() > c_)
              throw PreconditionError("prefix coloring uses more colors than the oracle");
          }
        },
        rule_);
  }

  Color c_;
  Rule rule_;
};

} // namespace vdw
