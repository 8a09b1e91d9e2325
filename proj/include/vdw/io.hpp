#pragma once

#include <charconv>
#include <fstream>
#include <istream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "coloring.hpp"
#include "errors.hpp"
#include "extractor.hpp"
#include "oracle.hpp"
#include "streamer.hpp"
#include "tower.hpp"
#include "witness.hpp"

namespace vdw::io {

using Json = nlohmann::ordered_json;

namespace detail {

inline std::uint64_t parse_uint(std::string_view s, const char* what) {
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty())
    throw PreconditionError(std::string("bad ") + what + ": '" + std::string(s) + "'");
  return v;
}

// "122" -> {1,2,2}; "1,2,12" -> {1,2,12}.
inline std::vector<Color> parse_color_list(std::string_view s) {
  std::vector<Color> out;
  if (s.find(',') == std::string_view::npos) {
    for (char ch : s) {
      if (ch < '1' || ch > '9')
        throw PreconditionError("bad color '" + std::string(1, ch) + "' in '" + std::string(s) + "'");
      out.push_back(static_cast<Color>(ch - '0'));
    }
  } else {
    std::size_t start = 0;
    while (start <= s.size()) {
      auto end = s.find(',', start);
      if (end == std::string_view::npos)
        end = s.size();
      out.push_back(static_cast<Color>(parse_uint(s.substr(start, end - start), "color")));
      start = end + 1;
    }
  }
  if (out.empty())
    throw PreconditionError("empty color list");
  return out;
}

} // namespace detail

// Coloring file: "c=<int> lo=<int> hi=<int>" then hi-lo+1 colors separated by whitespace or commas.
inline FiniteColoring read_coloring(std::istream& in) {
  std::string header;
  if (!std::getline(in, header))
    throw PreconditionError("coloring file is empty");
  std::istringstream hs(header);
  std::uint64_t c = 0, lo = 0, hi = 0;
  bool have_c = false, have_lo = false, have_hi = false;
  for (std::string field; hs >> field;) {
    auto eq = field.find('=');
    if (eq == std::string::npos)
      throw PreconditionError("bad coloring header field '" + field + "'");
    auto key = field.substr(0, eq);
    auto value = detail::parse_uint(std::string_view(field).substr(eq + 1), "header value");
    if (key == "c")
      c = value, have_c = true;
    else if (key == "lo")
      lo = value, have_lo = true;
    else if (key == "hi")
      hi = value, have_hi = true;
    else
      throw PreconditionError("unknown coloring header key '" + key + "'");
  }
  if (!have_c || !have_lo || !have_hi)
    throw PreconditionError("coloring header needs c=, lo= and hi=");
  Interval domain(lo, hi);
  std::vector<Color> colors;
  colors.reserve(domain.size());
  std::string body((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  for (char& ch : body)
    if (ch == ',')
      ch = ' ';
  std::istringstream bs(body);
  for (std::string tok; bs >> tok;)
    colors.push_back(static_cast<Color>(detail::parse_uint(tok, "color")));
  if (colors.size() != domain.size())
    throw PreconditionError("coloring file lists " + std::to_string(colors.size()) + " colors for [" +
                            std::to_string(lo) + "," + std::to_string(hi) + "]");
  return FiniteColoring(static_cast<Color>(c), domain, std::move(colors));
}

inline FiniteColoring read_coloring_file(const std::string& path) {
  std::ifstream in(path);
  if (!in)
    throw PreconditionError("cannot open coloring file " + path);
  return read_coloring(in);
}

inline void write_coloring(std::ostream& out, ColoringView coloring) {
  out << "c=" << coloring.num_colors() << " lo=" << coloring.domain().lo() << " hi=" << coloring.domain().hi()
      << '\n';
  for (std::size_t i = 0; i < coloring.size(); ++i)
    out << coloring.colors()[i] << ((i + 1) % 64 == 0 || i + 1 == coloring.size() ? '\n' : ' ');
}

// Oracle spec: constant:G, periodic:PATTERN, evperiodic:PREFIX/PATTERN, thue-morse, random:SEED,
// file:PATH (positions outside the file get color 1). The color count comes from the caller.
inline ColorOracle parse_oracle(std::string_view spec, Color c) {
  auto colon = spec.find(':');
  auto kind = spec.substr(0, colon);
  auto arg = colon == std::string_view::npos ? std::string_view{} : spec.substr(colon + 1);
  auto need_arg = [&] {
    if (arg.empty())
      throw PreconditionError("oracle '" + std::string(kind) + "' needs an argument");
  };
  if (kind == "constant") {
    need_arg();
    return ColorOracle::constant(c, static_cast<Color>(detail::parse_uint(arg, "constant color")));
  }
  if (kind == "periodic") {
    need_arg();
    return ColorOracle::periodic(c, detail::parse_color_list(arg));
  }
  if (kind == "evperiodic") {
    need_arg();
    auto slash = arg.find('/');
    if (slash == std::string_view::npos)
      throw PreconditionError("evperiodic needs PREFIX/PATTERN");
    auto prefix = arg.substr(0, slash);
    return ColorOracle::eventually_periodic(c, prefix.empty() ? std::vector<Color>{} : detail::parse_color_list(prefix),
                                            detail::parse_color_list(arg.substr(slash + 1)));
  }
  if (kind == "thue-morse") {
    if (c != 2)
      throw PreconditionError("the Thue-Morse oracle is a 2-coloring");
    return ColorOracle::thue_morse();
  }
  if (kind == "random") {
    need_arg();
    return ColorOracle::seeded_random(c, detail::parse_uint(arg, "seed"));
  }
  if (kind == "file") {
    need_arg();
    auto coloring = read_coloring_file(std::string(arg));
    return ColorOracle(c, ColorOracle::FilePrefix{std::make_shared<const FiniteColoring>(std::move(coloring)), 1});
  }
  throw PreconditionError("unknown oracle '" + std::string(spec) + "'");
}

template <class Ints>
Json decimal_array(const Ints& values) {
  Json a = Json::array();
  for (const auto& v : values)
    a.push_back(v.str());
  return a;
}

inline Json to_json(const CubeWitness& w) {
  return Json{{"gamma", w.gamma}, {"a", w.a}, {"ds", w.ds}, {"ks", w.ks}, {"positions", cube_positions(w)}};
}

inline CubeWitness witness_from_json(const Json& j) {
  try {
    return CubeWitness(j.at("gamma").get<Color>(), j.at("a").get<Position>(), j.at("ds").get<std::vector<Position>>(),
                       j.at("ks").get<std::vector<std::uint32_t>>());
  } catch (const nlohmann::json::exception& e) {
    throw PreconditionError(std::string("bad witness JSON: ") + e.what());
  }
}

inline Json to_json(const TowerParams& p) {
  Json j;
  if (p.uniform())
    j["k"] = p.ks.front();
  else
    j["ks"] = p.ks;
  j["c"] = p.c;
  j["n"] = p.depth();
  j["W"] = decimal_array(p.W);
  j["C"] = decimal_array(p.C);
  j["sizes"] = decimal_array(p.sizes);
  return j;
}

inline Json to_json(const std::vector<ExtractionStage>& trace) {
  Json a = Json::array();
  for (const auto& s : trace)
    a.push_back(Json{{"stage", s.stage}, {"b1", s.b1}, {"dstar", s.dstar}, {"block_size", s.block_size},
                     {"palette_size", s.palette_size}});
  return a;
}

inline Json to_json(const StreamReport& r) {
  Json depths = Json::array();
  for (const auto& d : r.depths)
    depths.push_back(Json{{"n", d.n}, {"a", d.a}, {"s", d.s}, {"positions", d.positions}, {"verified", d.verified}});
  std::vector<std::size_t> sizes;
  for (const auto& s : r.state.survivors)
    sizes.push_back(s.size());
  Json j{{"mode", to_string(r.mode)},
         {"gamma", r.state.gamma},
         {"ds", r.state.ds},
         {"depths", depths},
         {"survivor_sizes", sizes},
         {"windows", r.windows},
         {"achieved_depth", r.state.achieved_depth},
         {"conforming", r.conforming()}};
  if (!r.conforming())
    j["skipped_windows"] = r.skipped_windows;
  return j;
}

} // namespace vdw::io
