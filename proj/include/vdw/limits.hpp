#pragma once

#include <cstddef>
#include <cstdint>
#include <cstdlib>
#include <string>

#include "errors.hpp"

namespace vdw {

// Resource caps shared by every module.
struct Limits {
  // Largest coloring (in cells) that may be materialized from an oracle.
  std::uint64_t max_cells = std::uint64_t{1} << 26;
  // Exhaustive W(k, c) search gives up once an AP-free coloring of this length exists.
  std::uint64_t wnumber_limit = 64;
  // Largest color count c_m = c^(W_m...W_1), measured in bits, a tower will hold.
  std::uint64_t max_color_bits = std::uint64_t{1} << 20;
  // Worker threads for the exhaustive searches.
  unsigned threads = 1;

  // Defaults overridden by VDW_MAX_CELLS and VDW_WNUMBER_LIMIT when set.
  static Limits from_env() {
    Limits l;
    if (const char* s = std::getenv("VDW_MAX_CELLS"))
      l.max_cells = parse(s, "VDW_MAX_CELLS");
    if (const char* s = std::getenv("VDW_WNUMBER_LIMIT"))
      l.wnumber_limit = parse(s, "VDW_WNUMBER_LIMIT");
    return l;
  }

private:
  static std::uint64_t parse(const char* s, const char* name) {
    char* end = nullptr;
    auto v = std::strtoull(s, &end, 10);
    if (end == s || *end != '\0' || v == 0)
      throw PreconditionError(std::string(name) + " must be a positive integer");
    return v;
  }
};

} // namespace vdw
