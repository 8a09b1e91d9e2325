#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "interval.hpp"

namespace vdw {

using Color = std::uint32_t;

// Read-only window onto a dense coloring. Colors are 1-based, positions are absolute.
class ColoringView {
public:
  ColoringView(Color c, Interval domain, std::span<const Color> colors)
      : c_(c), domain_(domain), colors_(colors) {
    if (colors_.size() != domain_.size())
      throw PreconditionError("coloring length does not match its domain");
  }

  Color num_colors() const noexcept { return c_; }
  const Interval& domain() const noexcept { return domain_; }
  std::span<const Color> colors() const noexcept { return colors_; }
  std::size_t size() const noexcept { return colors_.size(); }

  Color at(Position p) const {
    if (!domain_.contains(p))
      throw DomainError("position " + std::to_string(p) + " outside coloring domain [" +
                        std::to_string(domain_.lo()) + "," + std::to_string(domain_.hi()) + "]");
    return colors_[p - domain_.lo()];
  }

  // Unchecked access by absolute position.
  Color operator[](Position p) const noexcept { return colors_[p - domain_.lo()]; }

  ColoringView restrict_to(const Interval& sub) const {
    if (!domain_.contains(sub))
      throw DomainError("restriction leaves the coloring domain");
    return ColoringView(c_, sub, colors_.subspan(sub.lo() - domain_.lo(), sub.size()));
  }

private:
  Color c_;
  Interval domain_;
  std::span<const Color> colors_;
};

// A c-coloring of an interval, stored densely.
class FiniteColoring {
public:
  FiniteColoring(Color c, Interval domain, std::vector<Color> colors)
      : c_(c), domain_(domain), colors_(std::move(colors)) {
    if (c_ < 1)
      throw PreconditionError("a coloring needs at least one color");
    if (colors_.size() != domain_.size())
      throw PreconditionError("coloring has " + std::to_string(colors_.size()) +
                              " entries for a domain of size " + std::to_string(domain_.size()));
    for (Color x : colors_)
      if (x < 1 || x > c_)
        throw PreconditionError("color " + std::to_string(x) + " outside [1," +
                                std::to_string(c_) + "]");
  }

  // Coloring of [lo, lo + |digits| - 1] from a string of single-digit colors such as "11221122".
  static FiniteColoring from_digits(Color c, std::string_view digits, Position lo = 1) {
    if (digits.empty())
      throw PreconditionError("empty color string");
    std::vector<Color> colors;
    colors.reserve(digits.size());
    for (char ch : digits) {
      if (ch < '0' || ch > '9')
        throw PreconditionError(std::string("not a color digit: ") + ch);
      colors.push_back(static_cast<Color>(ch - '0'));
    }
    return FiniteColoring(c, Interval(lo, lo + digits.size() - 1), std::move(colors));
  }

  Color num_colors() const noexcept { return c_; }
  const Interval& domain() const noexcept { return domain_; }
  const std::vector<Color>& colors() const noexcept { return colors_; }
  std::size_t size() const noexcept { return colors_.size(); }

  Color at(Position p) const { return view().at(p); }

  ColoringView view() const { return ColoringView(c_, domain_, colors_); }
  operator ColoringView() const { return view(); }

  friend bool operator==(const FiniteColoring&, const FiniteColoring&) = default;

private:
  Color c_;
  Interval domain_;
  std::vector<Color> colors_;
};

// Single-digit rendering when every color fits in one digit, comma-separated otherwise.
inline std::string render_colors(ColoringView v) {
  std::string out;
  bool digits = v.num_colors() <= 9;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!digits && i > 0)
      out += ',';
    out += std::to_string(v.colors()[i]);
  }
  return out;
}

} // namespace vdw
