#pragma once

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cube_search.hpp"
#include "errors.hpp"
#include "extractor.hpp"
#include "io.hpp"
#include "limits.hpp"
#include "streamer.hpp"
#include "tower.hpp"
#include "vdw_numbers.hpp"
#include "witness.hpp"

namespace vdw::cli {

enum Exit : int { ok = 0, absent = 1, input_error = 2, resource_limit = 3 };

namespace detail {

using io::Json;

struct Context {
  std::ostream& out;
  std::ostream& err;
  Limits limits;

  int emit(const Json& j, int code) const {
    out << j.dump() << '\n';
    return code;
  }
};

// --k K or --ks K1,K2,... ; returns n side lengths.
inline std::vector<std::uint32_t> side_lengths(std::optional<std::uint32_t> k, const std::vector<std::uint32_t>& ks,
                                               std::size_t n) {
  if (k && !ks.empty())
    throw PreconditionError("give either --k or --ks, not both");
  if (k) {
    if (n == 0)
      throw PreconditionError("--k needs --n");
    return std::vector<std::uint32_t>(n, *k);
  }
  if (ks.empty())
    throw PreconditionError("missing --k or --ks");
  if (n == 0)
    return ks;
  if (ks.size() < n)
    throw PreconditionError("--ks lists fewer side lengths than --n");
  return {ks.begin(), ks.begin() + static_cast<std::ptrdiff_t>(n)};
}

inline std::string join(const std::vector<Position>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i)
    s += (i ? "," : "") + std::to_string(v[i]);
  return s;
}

} // namespace detail

// Entry point behind the vdw executable. Structured output goes to out, human summaries to err.
inline int run(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  using detail::Json;
  CLI::App app{"Witness engine for monochromatic arithmetic progressions and combinatorial cubes", "vdw"};
  app.require_subcommand(1);

  std::optional<std::uint64_t> max_cells, wnumber_limit;
  unsigned threads = 1;
  app.add_option("--max-cells", max_cells, "Materialization cap (overrides VDW_MAX_CELLS)");
  app.add_option("--wnumber-limit", wnumber_limit, "W(k,c) search limit (overrides VDW_WNUMBER_LIMIT)");
  app.add_option("--threads", threads, "Worker threads for exhaustive searches")->check(CLI::Range(1u, 256u));

  // wnumber
  auto* wn = app.add_subcommand("wnumber", "Exact van der Waerden number W(k,c) with an extremal certificate");
  std::uint32_t wn_k = 0;
  Color wn_c = 0;
  std::optional<std::uint64_t> wn_limit;
  std::string wn_cache;
  bool wn_search = false;
  wn->add_option("--k", wn_k, "Progression length")->required()->check(CLI::Range(2u, 1u << 20));
  wn->add_option("--c", wn_c, "Number of colors")->required()->check(CLI::Range(1u, 1u << 20));
  wn->add_option("--limit", wn_limit, "Search limit in positions");
  wn->add_option("--cache", wn_cache, "Cache file of 'k c W' lines");
  wn->add_flag("--search", wn_search, "Search even where a closed form applies");

  // tower
  auto* tw = app.add_subcommand("tower", "Tower parameters W_m, c_m and sizes |I_m|");
  std::optional<std::uint32_t> tw_k;
  std::vector<std::uint32_t> tw_ks;
  Color tw_c = 0;
  std::size_t tw_n = 0;
  Position tw_start = 1;
  tw->add_option("--k", tw_k, "Uniform side length");
  tw->add_option("--ks", tw_ks, "Per-stage side lengths")->delimiter(',');
  tw->add_option("--c", tw_c, "Number of colors")->required()->check(CLI::PositiveNumber);
  tw->add_option("--n", tw_n, "Depth (defaults to the length of --ks)")->check(CLI::PositiveNumber);
  tw->add_option("--start", tw_start, "Base interval start A; I = [A, A + W_1 - 1]")->check(CLI::PositiveNumber);

  // extract
  auto* ex = app.add_subcommand("extract", "Monochromatic cube from a coloring of the tower interval");
  std::optional<std::uint32_t> ex_k;
  std::vector<std::uint32_t> ex_ks;
  Color ex_c = 0;
  std::size_t ex_n = 0;
  std::string ex_file;
  bool ex_trace = false, ex_checked = false;
  ex->add_option("--k", ex_k, "Uniform side length");
  ex->add_option("--ks", ex_ks, "Nondecreasing per-dimension side lengths")->delimiter(',');
  ex->add_option("--c", ex_c, "Number of colors")->required()->check(CLI::PositiveNumber);
  ex->add_option("--n", ex_n, "Depth (defaults to the length of --ks)")->check(CLI::PositiveNumber);
  ex->add_option("--coloring", ex_file, "Coloring file")->required();
  ex->add_flag("--trace", ex_trace, "Include per-stage records");
  ex->add_flag("--checked", ex_checked, "Re-check the block-shift law at every stage");

  // search
  auto* se = app.add_subcommand("search", "Least monochromatic cube by direct search");
  std::vector<std::uint32_t> se_ks;
  std::vector<Position> se_bounds;
  std::string se_file;
  bool se_distinct = false;
  se->add_option("--ks", se_ks, "Per-dimension side lengths")->required()->delimiter(',');
  se->add_option("--coloring", se_file, "Coloring file")->required();
  se->add_option("--bounds", se_bounds, "Caps on d_1, d_2, ...")->delimiter(',');
  se->add_flag("--distinct", se_distinct, "Only nondegenerate difference vectors");

  // cube-number
  auto* cn = app.add_subcommand("cube-number", "Least N forcing a monochromatic cube in every coloring of [1,N]");
  std::vector<std::uint32_t> cn_ks;
  Color cn_c = 0;
  std::uint64_t cn_cap = 0;
  cn->add_option("--ks", cn_ks, "Per-dimension side lengths")->required()->delimiter(',');
  cn->add_option("--c", cn_c, "Number of colors")->required()->check(CLI::PositiveNumber);
  cn->add_option("--cap", cn_cap, "Largest N to try")->required()->check(CLI::PositiveNumber);

  // stream
  auto* st = app.add_subcommand("stream", "Window stream with pigeonhole stabilization against an infinite coloring");
  std::string st_oracle, st_mode = "search";
  std::optional<std::uint32_t> st_k;
  std::vector<std::uint32_t> st_ks;
  Color st_c = 0;
  std::size_t st_depth = 0, st_windows = 0;
  Position st_window_size = 64;
  std::vector<Position> st_caps;
  bool st_skip = false, st_distinct = false, st_checked = false;
  st->add_option("--oracle", st_oracle, "Oracle spec")->required();
  st->add_option("--k", st_k, "Uniform side length");
  st->add_option("--ks", st_ks, "Nondecreasing per-dimension side lengths")->delimiter(',');
  st->add_option("--c", st_c, "Number of colors")->required()->check(CLI::PositiveNumber);
  st->add_option("--depth", st_depth, "Depth n")->required()->check(CLI::PositiveNumber);
  st->add_option("--windows", st_windows, "Number of windows M")->required()->check(CLI::PositiveNumber);
  st->add_option("--mode", st_mode, "proof or search")->check(CLI::IsMember({"proof", "search"}));
  st->add_option("--window-size", st_window_size, "Search-mode window size")->check(CLI::PositiveNumber);
  st->add_option("--caps", st_caps, "Search-mode caps on l_1, l_2, ...")->delimiter(',');
  st->add_flag("--skip-failures", st_skip, "Skip failed windows (marks the run non-conforming)");
  st->add_flag("--distinct", st_distinct, "Only nondegenerate difference vectors");
  st->add_flag("--checked", st_checked, "Proof mode: re-check the block-shift law");

  // verify
  auto* ve = app.add_subcommand("verify", "Check a witness against a coloring file or an oracle");
  std::string ve_witness, ve_coloring, ve_oracle;
  Color ve_c = 2;
  ve->add_option("--witness", ve_witness, "Witness JSON file")->required();
  auto* ve_col_opt = ve->add_option("--coloring", ve_coloring, "Coloring file");
  auto* ve_orc_opt = ve->add_option("--oracle", ve_oracle, "Oracle spec");
  ve->add_option("--c", ve_c, "Oracle color count")->check(CLI::PositiveNumber);
  ve_col_opt->excludes(ve_orc_opt);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << "vdw: " << e.what() << '\n';
    return input_error;
  }

  detail::Context ctx{out, err, {}};
  try {
    ctx.limits = Limits::from_env();
    if (max_cells)
      ctx.limits.max_cells = *max_cells;
    if (wnumber_limit)
      ctx.limits.wnumber_limit = *wnumber_limit;
    ctx.limits.threads = threads;

    if (wn->parsed()) {
      WNumberCache cache;
      if (!wn_cache.empty())
        cache.load(wn_cache);
      WNumberOptions o;
      o.search_limit = wn_limit.value_or(ctx.limits.wnumber_limit);
      o.threads = ctx.limits.threads;
      o.closed_forms = !wn_search;
      o.cache = &cache;
      auto r = vdw_number(wn_k, wn_c, o);
      if (!r) {
        err << "W(" << wn_k << "," << wn_c << ") exceeds the search limit " << o.search_limit << '\n';
        return ctx.emit(Json{{"error", "exceeds limit"}, {"k", wn_k}, {"c", wn_c}, {"limit", o.search_limit}},
                        resource_limit);
      }
      if (!wn_cache.empty())
        cache.save(wn_cache);
      err << "W(" << wn_k << "," << wn_c << ") = " << r->value << '\n';
      return ctx.emit(Json{{"k", r->k}, {"c", r->c}, {"value", r->value}, {"certificate", render_colors(r->certificate)}},
                      ok);
    }

    if (tw->parsed()) {
      auto params = tower_params(detail::side_lengths(tw_k, tw_ks, tw_n), tw_c, ctx.limits);
      tw_n = params.depth();
      auto base = BigInterval(BigInt(tw_start), BigInt(tw_start) + params.width(1) - 1);
      auto top = build_tower_interval(base, tw_n, params);
      Json j = io::to_json(params);
      j["interval"] = Json::array({top.lo().str(), top.hi().str()});
      err << "|I_" << tw_n << "| = " << params.size(tw_n) << '\n';
      return ctx.emit(j, ok);
    }

    if (ex->parsed()) {
      auto coloring = io::read_coloring_file(ex_file);
      auto ks = detail::side_lengths(ex_k, ex_ks, ex_n);
      auto params = tower_params(ks, ex_c, ctx.limits);
      ex_n = ks.size();
      const Interval base(coloring.domain().lo(),
                          coloring.domain().lo() + vdw::detail::narrow<Position>(params.width(1), "W_1") - 1);
      std::vector<ExtractionStage> trace;
      ExtractOptions eo;
      eo.checked = ex_checked;
      eo.trace = ex_trace ? &trace : nullptr;
      auto w = ex_k ? extract(coloring, base, ex_n, params, eo) : extract_nonuniform(coloring, base, ex_n, ks, params, eo);
      Json j = io::to_json(w);
      if (ex_trace)
        j["trace"] = io::to_json(trace);
      err << "cube at a=" << w.a << " ds=" << detail::join(w.ds) << " color " << w.gamma << '\n';
      return ctx.emit(j, ok);
    }

    if (se->parsed()) {
      auto coloring = io::read_coloring_file(se_file);
      CubeSearchOptions so;
      so.bounds.caps = se_bounds;
      so.distinct = se_distinct;
      so.threads = ctx.limits.threads;
      auto w = find_cube(coloring, se_ks, so);
      if (!w) {
        err << "no monochromatic cube\n";
        return ctx.emit(Json{{"found", false}}, absent);
      }
      err << "cube at a=" << w->a << " ds=" << detail::join(w->ds) << " color " << w->gamma << '\n';
      return ctx.emit(io::to_json(*w), ok);
    }

    if (cn->parsed()) {
      auto v = cube_number(cn_ks, cn_c, cn_cap);
      if (!v) {
        err << "cube number exceeds cap " << cn_cap << '\n';
        return ctx.emit(Json{{"exceeds_cap", cn_cap}}, resource_limit);
      }
      err << "cube number = " << *v << '\n';
      return ctx.emit(Json{{"ks", cn_ks}, {"c", cn_c}, {"value", *v}}, ok);
    }

    if (st->parsed()) {
      StreamConfig config;
      if (st_k && !st_ks.empty())
        throw PreconditionError("give either --k or --ks, not both");
      if (!st_k && st_ks.empty())
        throw PreconditionError("missing --k or --ks");
      config.ks = st_k ? std::vector<std::uint32_t>{*st_k} : st_ks;
      config.c = st_c;
      config.depth = st_depth;
      config.windows = st_windows;
      config.mode = st_mode == "proof" ? StreamMode::proof : StreamMode::search;
      config.window_size = st_window_size;
      config.caps.caps = st_caps;
      config.skip_failures = st_skip;
      config.distinct = st_distinct;
      config.checked = st_checked;
      config.limits = ctx.limits;
      auto oracle = io::parse_oracle(st_oracle, st_c);
      auto report = run_stream(oracle, config);
      err << "stream: gamma=" << report.state.gamma << " ds=" << detail::join(report.state.ds) << " depth "
          << report.state.achieved_depth << "/" << st_depth << (report.verified() ? " verified" : " NOT verified")
          << '\n';
      return ctx.emit(io::to_json(report), report.verified() ? ok : absent);
    }

    if (ve->parsed()) {
      std::ifstream in(ve_witness);
      if (!in)
        throw PreconditionError("cannot open witness file " + ve_witness);
      Json wj;
      try {
        wj = Json::parse(in);
      } catch (const nlohmann::json::exception& e) {
        throw PreconditionError(std::string("witness file is not JSON: ") + e.what());
      }
      auto w = io::witness_from_json(wj);
      VerifyReport r;
      if (!ve_coloring.empty())
        r = verify_witness(io::read_coloring_file(ve_coloring), w);
      else if (!ve_oracle.empty())
        r = verify_witness(io::parse_oracle(ve_oracle, ve_c), w);
      else
        throw PreconditionError("verify needs --coloring or --oracle");
      if (r.ok()) {
        err << "witness verified\n";
        return ctx.emit(Json{{"verified", true}}, ok);
      }
      err << "position " << r.first_violation->position << " has color " << r.first_violation->color << '\n';
      return ctx.emit(Json{{"verified", false},
                           {"first_violation",
                            {{"position", r.first_violation->position}, {"color", r.first_violation->color}}}},
                      absent);
    }
  } catch (const TowerUncomputable& e) {
    err << "vdw: " << e.what() << '\n';
    return ctx.emit(Json{{"error", "tower uncomputable"}, {"stage", e.stage()}, {"reason", e.reason()}}, resource_limit);
  } catch (const ResourceLimitError& e) {
    err << "vdw: " << e.what() << '\n';
    return ctx.emit(Json{{"error", "resource limit"}, {"message", e.what()}}, resource_limit);
  } catch (const WindowFailure& e) {
    err << "vdw: " << e.what() << '\n';
    return ctx.emit(Json{{"error", "window failure"}, {"window", e.window()}, {"message", e.what()}}, absent);
  } catch (const DomainError& e) {
    err << "vdw: " << e.what() << '\n';
    return ctx.emit(Json{{"error", "domain"}, {"message", e.what()}}, input_error);
  } catch (const PreconditionError& e) {
    err << "vdw: " << e.what() << '\n';
    return ctx.emit(Json{{"error", "input"}, {"message", e.what()}}, input_error);
  } catch (const InvariantViolation& e) {
    err << "vdw: internal fault: " << e.what() << '\n';
    return ctx.emit(Json{{"error", "invariant violation"}, {"message", e.what()}}, resource_limit);
  }
  return input_error;
}

} // namespace vdw::cli
