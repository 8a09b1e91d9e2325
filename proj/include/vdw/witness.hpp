#pragma once

#include <algorithm>
#include <numeric>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "coloring.hpp"
#include "errors.hpp"
#include "interval.hpp"
#include "oracle.hpp"

namespace vdw {

// Claim that {a + j_1 d_1 + ... + j_n d_n : 0 <= j_i <= k_i - 1} is monochromatic with color gamma.
// Coinciding sums collapse; the witness describes a set.
struct CubeWitness {
  Color gamma = 1;
  Position a = 1;
  std::vector<Position> ds;
  std::vector<std::uint32_t> ks;

  CubeWitness() = default;
  CubeWitness(Color gamma_, Position a_, std::vector<Position> ds_, std::vector<std::uint32_t> ks_)
      : gamma(gamma_), a(a_), ds(std::move(ds_)), ks(std::move(ks_)) {
    validate();
  }

  // Uniform side length k in every dimension.
  static CubeWitness uniform(Color gamma, Position a, std::vector<Position> ds, std::uint32_t k) {
    std::vector<std::uint32_t> ks(ds.size(), k);
    return CubeWitness(gamma, a, std::move(ds), std::move(ks));
  }

  std::size_t dimension() const noexcept { return ds.size(); }

  // a + sum (k_i - 1) d_i
  Position max_position() const {
    Position top = a;
    for (std::size_t i = 0; i < ds.size(); ++i)
      top += (ks[i] - 1) * ds[i];
    return top;
  }

  void validate() const {
    if (gamma < 1)
      throw PreconditionError("witness color must be >= 1");
    if (a < 1)
      throw PreconditionError("witness anchor must be >= 1");
    if (ds.empty())
      throw PreconditionError("witness needs at least one dimension");
    if (ds.size() != ks.size())
      throw PreconditionError("witness ds and ks differ in length");
    for (auto d : ds)
      if (d < 1)
        throw PreconditionError("witness differences must be >= 1");
    for (auto k : ks)
      if (k < 2)
        throw PreconditionError("witness side lengths must be >= 2");
  }

  friend bool operator==(const CubeWitness&, const CubeWitness&) = default;
};

// Sorted, deduplicated cube set.
inline std::vector<Position> cube_positions(const CubeWitness& w) {
  std::vector<Position> set{w.a};
  std::vector<Position> next;
  for (std::size_t i = 0; i < w.ds.size(); ++i) {
    next.clear();
    next.reserve(set.size() * w.ks[i]);
    for (std::uint32_t j = 0; j < w.ks[i]; ++j)
      for (Position p : set)
        next.push_back(p + j * w.ds[i]);
    std::sort(next.begin(), next.end());
    next.erase(std::unique(next.begin(), next.end()), next.end());
    set.swap(next);
  }
  return set;
}

struct Violation {
  Position position;
  Color color;
};

// Outcome of checking a witness: the first position (ascending) whose color differs from gamma.
struct VerifyReport {
  std::optional<Violation> first_violation;
  bool ok() const noexcept { return !first_violation; }
  explicit operator bool() const noexcept { return ok(); }
};

// Out-of-domain positions throw DomainError; they are not a "false".
inline VerifyReport verify_witness(ColoringView source, const CubeWitness& w) {
  w.validate();
  auto positions = cube_positions(w);
  if (!source.domain().contains(positions.front()) || !source.domain().contains(positions.back()))
    throw DomainError("witness positions leave the coloring domain");
  for (Position p : positions)
    if (Color x = source[p]; x != w.gamma)
      return {Violation{p, x}};
  return {};
}

inline VerifyReport verify_witness(const ColorOracle& source, const CubeWitness& w) {
  w.validate();
  for (Position p : cube_positions(w))
    if (Color x = source.color_at(p); x != w.gamma)
      return {Violation{p, x}};
  return {};
}

inline VerifyReport verify_witness(const FiniteColoring& source, const CubeWitness& w) {
  return verify_witness(source.view(), w);
}

} // namespace vdw
