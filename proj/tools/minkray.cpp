// minkray: Minkowski-plane norm calculus, plane-colouring experiments and
// the monochromatic-progression search, from the command line.

#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "minkray/bisector.hpp"
#include "minkray/distinct_distances.hpp"
#include "minkray/hypergraph.hpp"
#include "minkray/io.hpp"
#include "minkray/mono_search.hpp"
#include "minkray/oracles.hpp"
#include "minkray/ring_colouring.hpp"
#include "minkray/svg.hpp"

using namespace minkray;

namespace {

double env_tolerance() {
  if (const char* v = std::getenv("MINKRAY_TOL")) {
    try {
      return std::stod(v);
    } catch (const std::exception&) {
      throw Error(errc::bad_input, "MINKRAY_TOL is not a number");
    }
  }
  return kDefaultTolerance;
}

Vec2 parse_pair(const std::string& s) {
  auto comma = s.find(',');
  if (comma == std::string::npos)
    throw Error(errc::bad_input, "expected \"x,y\", got '" + s + "'");
  try {
    return {std::stod(s.substr(0, comma)), std::stod(s.substr(comma + 1))};
  } catch (const std::exception&) {
    throw Error(errc::bad_input, "expected \"x,y\", got '" + s + "'");
  }
}

std::string out_path(const std::string& out_dir, const std::string& name) {
  if (out_dir.empty()) return name;
  return out_dir + "/" + name;
}

json manifest(const std::string& command, json parameters, const Norm* norm,
              const std::string& oracle, std::uint64_t seed, json outputs) {
  json m;
  m["command"] = command;
  m["parameters"] = std::move(parameters);
  if (norm) m["norm_hash"] = norm_hash(*norm);
  if (!oracle.empty()) m["oracle"] = oracle;
  m["seed"] = seed;
  m["tool_version"] = kToolVersion;
  m["outputs"] = std::move(outputs);
  return m;
}

void emit(const json& j) { std::cout << j.dump(2) << "\n"; }

std::string colour_code(int colour) { return colour == 0 ? "#d43d3d" : "#3d6bd4"; }

void render_trace_svg(const json& trace, const std::string& path) {
  SvgCanvas canvas;
  for (const json& e : trace["events"]) {
    const std::string kind = e.value("event", "");
    if ((kind == "step1" || kind == "seed" || kind == "record" || kind == "slide-merge") &&
        e.contains("a")) {
      Segment seg{vec_from_json(e["a"]), vec_from_json(e["b"])};
      std::string stroke = "#999999";
      if (!e.contains("mono") || e["mono"] == true)
        stroke = e.contains("colour") && !e["colour"].is_null() ? colour_code(e["colour"]) : "#999999";
      canvas.add_segment(seg, stroke, kind == "step1" ? 0.01 : 0.02);
    } else if (kind == "certificate" && e.contains("points")) {
      for (const json& p : e["points"])
        canvas.add_point(vec_from_json(p), colour_code(e.value("colour", 0)));
    } else if (kind == "prepend" && e.contains("point")) {
      canvas.add_point(vec_from_json(e["point"]), "#222222", 0.025);
    }
  }
  save_text_file(path, canvas.render());
}

int cmd_norm(const std::string& file, const std::optional<std::string>& eval_at, bool facets) {
  Norm n = norm_from_json(load_json_file(file));
  json out;
  out["norm"] = norm_to_json(n);
  out["norm_hash"] = norm_hash(n);
  out["valid"] = true;
  if (eval_at) {
    Vec2 p = parse_pair(*eval_at);
    out["point"] = vec_to_json(p);
    out["value"] = norm_eval(n, p);
  }
  if (facets) {
    if (!n.is_polygonal()) throw Error(errc::invalid_norm, "facet data requires a polygonal norm");
    json fs = json::array();
    for (const FacetData& f : n.polygonal().facets())
      fs.push_back({{"v", vec_to_json(f.v)}, {"w", vec_to_json(f.w)}, {"lambda", f.lambda}});
    out["facets"] = std::move(fs);
    out["min_side_length"] = min_side_length(n.polygonal());
  }
  emit(out);
  return 0;
}

int cmd_verify_copy(const std::string& cert_file, const std::string& norm_file,
                    const std::string& seq_file, double tol) {
  json out;
  if (!cert_file.empty()) {
    CertificateFile f = certificate_from_json(load_json_file(cert_file));
    VerifyResult r = verify_certificate(f.norm, f.cert, nullptr, tol);
    out["accepted"] = r.ok;
    out["max_deviation"] = r.max_deviation;
    out["colour"] = f.cert.colour;
    out["oracle"] = f.cert.oracle;
  } else {
    if (norm_file.empty() || seq_file.empty())
      throw Error(errc::bad_input, "verify-copy needs --cert, or --norm and --seq");
    Norm n = norm_from_json(load_json_file(norm_file));
    SequenceFile s = sequence_from_json(load_json_file(seq_file));
    VerifyResult r = verify_slice(n, s.q, s.pts, s.include_zero ? 0 : 1, tol);
    out["accepted"] = r.ok;
    out["max_deviation"] = r.max_deviation;
  }
  emit(out);
  return out["accepted"] == true ? 0 : 1;
}

int cmd_find_copy(const std::string& norm_file, const std::string& oracle_spec, double q,
                  int prefix, int density, std::uint64_t seed, int scale,
                  const std::string& svg_file, const std::string& trace_file,
                  const std::string& out_dir, double tol) {
  Norm n = norm_from_json(load_json_file(norm_file));
  ColouringOracle oracle = parse_oracle(oracle_spec, n);
  SearchConfig cfg;
  cfg.q = q;
  cfg.prefix = prefix;
  cfg.density = density;
  cfg.seed = seed;
  cfg.scale = scale;
  cfg.tol = tol;
  SearchOutcome outcome = find_copy(n, oracle, cfg);

  json outputs = json::array();
  if (!trace_file.empty()) {
    save_text_file(out_path(out_dir, trace_file), outcome.trace.dump(2) + "\n");
    outputs.push_back(trace_file);
  }
  if (!svg_file.empty()) {
    render_trace_svg(outcome.trace, out_path(out_dir, svg_file));
    outputs.push_back(svg_file);
  }

  json out;
  out["manifest"] = manifest("find-copy",
                             {{"q", q}, {"prefix", prefix}, {"density", density}, {"scale", scale}},
                             &n, oracle.name, seed, outputs);
  out["status"] = outcome.status;
  if (outcome.found) {
    out["certificate"] = certificate_to_json(*outcome.certificate, n);
    const ColouringOracle* oc = &oracle;
    VerifyResult r = verify_certificate(n, *outcome.certificate, oc, tol);
    out["verified"] = r.ok;
  } else {
    out["reason"] = outcome.reason;
    out["final_density"] = outcome.final_density;
  }
  emit(out);
  return outcome.found ? 0 : 1;
}

int cmd_ring(const std::string& norm_file, const std::string& set_name, int rings,
             const std::optional<std::string>& query, const std::string& json_file,
             const std::string& out_dir) {
  Norm n = norm_from_json(load_json_file(norm_file));
  PointSampler sampler = [&]() {
    if (set_name == "powers-of-two") return powers_of_two_sampler();
    if (set_name.rfind("gp:", 0) == 0) return geometric_progression_sampler(std::stod(set_name.substr(3)));
    throw Error(errc::bad_input, "unknown set '" + set_name + "' (try powers-of-two or gp:<q>)");
  }();
  RingColouring rc = build_ring_colouring(n, sampler, rings);
  json out;
  out["manifest"] = manifest("ring-colouring", {{"set", set_name}, {"rings", rings}}, &n,
                             "", 0, json::array());
  out["radii"] = rc.radii();
  json anchors = json::array();
  for (Vec2 p : rc.anchor_points()) anchors.push_back(vec_to_json(p));
  out["anchors"] = std::move(anchors);
  json colours = json::array();
  for (int i = 1; i <= rc.rings(); ++i) colours.push_back(psi(i));
  out["ring_colours"] = std::move(colours);
  if (query) {
    Vec2 p = parse_pair(*query);
    out["query"] = vec_to_json(p);
    out["ring"] = rc.ring_of(p);
    out["colour"] = rc.colour(p);
    out["parity"] = rc.colour(p) % 2;
  }
  if (!json_file.empty()) save_text_file(out_path(out_dir, json_file), out.dump(2) + "\n");
  emit(out);
  return 0;
}

int cmd_distinct(const std::string& norm_file, const std::string& points_file, bool with_oracle,
                 const std::optional<std::string>& centre, double tol) {
  Norm n = norm_from_json(load_json_file(norm_file));
  json pj = load_json_file(points_file);
  std::vector<Vec2> pts;
  const json& arr = pj.is_array() ? pj : pj.at("points");
  for (const json& p : arr) pts.push_back(vec_from_json(p));

  std::optional<Vec2> y;
  if (centre) y = parse_pair(*centre);
  ContractingSequence cs = select_contracting(pts, n, y, tol);
  RedBlueResult filtered = red_blue_filter(cs, n, tol);

  json out;
  out["manifest"] = manifest("distinct-subset", {{"points", pts.size()}}, &n, "", 0, json::array());
  out["accumulation_point"] = vec_to_json(cs.y);
  json seq = json::array();
  for (Vec2 p : cs.pts) seq.push_back(vec_to_json(p));
  out["contracting_sequence"] = std::move(seq);
  json red = json::array();
  for (Vec2 p : filtered.points) red.push_back(vec_to_json(p));
  out["distinct_subset"] = std::move(red);
  out["blue_count"] = filtered.blue_count;
  out["dropped"] = filtered.dropped;
  out["pairwise_distinct"] = pairwise_distances_distinct(filtered.points, n, tol);
  if (with_oracle) {
    auto best = brute_force_distinct_subset(cs.pts, n, std::nullopt, tol);
    out["brute_force_maximum"] = best.size();
    out["filter_within_two_of_maximum"] =
        filtered.points.size() + 2 >= best.size();
  }
  emit(out);
  return 0;
}

int cmd_peel(const std::string& graph_file, int k, int colours) {
  FiniteHypergraph h = hypergraph_from_json(load_json_file(graph_file));
  CoreCheckResult cores_ok = core_disjointness_check(h, k);
  json out;
  out["manifest"] = manifest("peel", {{"k", k}, {"colours", colours}}, nullptr, "", 0,
                             json::array());
  out["core_dichotomy"] = cores_ok.ok;
  PeelResult r = peel_transversals(h, k, colours);
  out["success"] = r.success;
  if (r.success) {
    out["transversals"] = r.transversals;
    out["colouring"] = r.colouring;
  } else {
    out["reason"] = r.failure_reason;
  }
  emit(out);
  return r.success ? 0 : 1;
}

int cmd_bisector(const std::string& mode, double p, const std::string& y1s,
                 const std::string& y2s, const std::string& y3s, const std::string& y4s,
                 const std::string& window_s, double step, const std::string& svg_file,
                 const std::string& json_file, const std::string& out_dir, double tol) {
  Window win;
  if (!window_s.empty()) {
    std::istringstream in(window_s);
    std::string tok;
    std::vector<double> v;
    while (std::getline(in, tok, ',')) v.push_back(std::stod(tok));
    if (v.size() != 4) throw Error(errc::bad_input, "window must be x0,y0,x1,y1");
    win = Window{v[0], v[1], v[2], v[3]};
  }
  BisectorSpec b1 = BisectorSpec::make(p, parse_pair(y1s), parse_pair(y2s));
  json out;
  SvgCanvas canvas;
  if (mode == "trace") {
    Polyline line = trace_bisector(b1, win, step, tol);
    out["manifest"] = manifest("bisector-trace",
                               {{"p", p}, {"step", step}, {"y1", y1s}, {"y2", y2s}}, nullptr,
                               "", 0, json::array());
    json pts = json::array();
    for (Vec2 q : line.points) pts.push_back(vec_to_json(q));
    out["points"] = std::move(pts);
    out["scanlines"] = line.scanlines;
    out["missed_scanlines"] = line.missed_scanlines;
    if (line.points.size() >= 3) {
      LinearityResult lr = linearity_test(line.points, tol);
      out["linear"] = lr.linear;
      out["max_line_deviation"] = lr.max_deviation;
    }
    canvas.add_polyline(line.points, "#3d6bd4");
  } else if (mode == "intersect") {
    if (y3s.empty() || y4s.empty())
      throw Error(errc::bad_input, "bisector intersect needs --y3 and --y4");
    BisectorSpec b2 = BisectorSpec::make(p, parse_pair(y3s), parse_pair(y4s));
    IntersectionResult r = count_intersections(b1, b2, win, step, std::max(tol, 1e-6));
    out["manifest"] = manifest(
        "bisector-intersect",
        {{"p", p}, {"step", step}, {"y1", y1s}, {"y2", y2s}, {"y3", y3s}, {"y4", y4s}}, nullptr,
        "", 0, json::array());
    out["count"] = r.count;
    json pts = json::array();
    for (Vec2 q : r.points) pts.push_back(vec_to_json(q));
    out["points"] = std::move(pts);
    canvas.add_polyline(trace_bisector(b1, win, step, tol).points, "#3d6bd4");
    canvas.add_polyline(trace_bisector(b2, win, step, tol).points, "#d43d3d");
    for (Vec2 q : r.points) canvas.add_point(q, "#222222", 0.1);
  } else {
    throw Error(errc::bad_input, "bisector mode must be trace or intersect");
  }
  if (!svg_file.empty()) save_text_file(out_path(out_dir, svg_file), canvas.render());
  if (!json_file.empty()) save_text_file(out_path(out_dir, json_file), out.dump(2) + "\n");
  emit(out);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Minkowski-plane norms, colourings and progression searches"};
  app.require_subcommand(1);

  // norm
  auto* norm_cmd = app.add_subcommand("norm", "evaluate and inspect a norm definition");
  std::string norm_file, eval_at;
  bool facets = false;
  norm_cmd->add_option("--file", norm_file, "norm JSON file")->required();
  norm_cmd->add_option("--eval", eval_at, "point x,y to evaluate");
  norm_cmd->add_flag("--facets", facets, "print facet functionals and side lengths");

  // verify-copy
  auto* verify_cmd = app.add_subcommand("verify-copy", "check a certificate or point sequence");
  std::string cert_file, vnorm_file, seq_file;
  verify_cmd->add_option("--cert", cert_file, "certificate JSON");
  verify_cmd->add_option("--norm", vnorm_file, "norm JSON (with --seq)");
  verify_cmd->add_option("--seq", seq_file, "sequence JSON (with --norm)");

  // find-copy
  auto* find_cmd = app.add_subcommand("find-copy", "search for a monochromatic copy");
  std::string fnorm_file, oracle_spec, svg_file, trace_file, out_dir;
  double q = 0.3;
  int prefix = 8, density = 64, scale = 1;
  std::uint64_t seed = 0;
  find_cmd->add_option("--norm", fnorm_file, "norm JSON file")->required();
  find_cmd->add_option("--oracle", oracle_spec, "oracle spec, e.g. half-plane or stripes:0.05")
      ->required();
  find_cmd->add_option("--q", q, "progression ratio")->required();
  find_cmd->add_option("--prefix", prefix, "certificate length");
  find_cmd->add_option("--density", density, "samples per segment");
  find_cmd->add_option("--seed", seed, "manifest seed");
  find_cmd->add_option("--scale", scale, "search for the q^{s-1}-dilated progression");
  find_cmd->add_option("--svg", svg_file, "write an SVG of the search");
  find_cmd->add_option("--trace", trace_file, "write the trace JSON");
  find_cmd->add_option("--out", out_dir, "output directory");

  // ring-colouring
  auto* ring_cmd = app.add_subcommand("ring-colouring", "build the nested-ring colouring");
  std::string rnorm_file, set_name = "powers-of-two", rjson_file, rquery;
  int rings = 8;
  ring_cmd->add_option("--norm", rnorm_file, "norm JSON file")->required();
  ring_cmd->add_option("--set", set_name, "point set (powers-of-two, gp:<q>)");
  ring_cmd->add_option("--rings", rings, "number of rings");
  ring_cmd->add_option("--query", rquery, "point x,y to colour");
  ring_cmd->add_option("--json", rjson_file, "write the colouring JSON");
  ring_cmd->add_option("--out", out_dir, "output directory");

  // distinct-subset
  auto* dist_cmd = app.add_subcommand("distinct-subset", "extract a distinct-distance subset");
  std::string dnorm_file, points_file, centre;
  bool with_oracle = false;
  dist_cmd->add_option("--norm", dnorm_file, "norm JSON file")->required();
  dist_cmd->add_option("--points", points_file, "points JSON file")->required();
  dist_cmd->add_option("--centre", centre, "accumulation point x,y (detected if omitted)");
  dist_cmd->add_flag("--oracle", with_oracle, "also run the exhaustive maximum search");

  // peel
  auto* peel_cmd = app.add_subcommand("peel", "hypergraph transversal peeling");
  std::string graph_file;
  int k = 2, colours = 2;
  peel_cmd->add_option("--graph", graph_file, "hypergraph JSON")->required();
  peel_cmd->add_option("--k", k, "core overlap threshold")->required();
  peel_cmd->add_option("--colours", colours, "number of transversals")->required();

  // bisector
  auto* bis_cmd = app.add_subcommand("bisector", "lp bisector tracing and intersections");
  std::string mode, y1s, y2s, y3s, y4s, window_s, bis_svg, bis_json;
  double p = 3.0, step = 0.05;
  bis_cmd->add_option("mode", mode, "trace or intersect")->required();
  bis_cmd->add_option("--p", p, "lp exponent (1 < p < inf)")->required();
  bis_cmd->add_option("--y1", y1s, "first point x,y")->required();
  bis_cmd->add_option("--y2", y2s, "second point x,y")->required();
  bis_cmd->add_option("--y3", y3s, "second pair, first point");
  bis_cmd->add_option("--y4", y4s, "second pair, second point");
  bis_cmd->add_option("--window", window_s, "x0,y0,x1,y1 (default -10,-10,10,10)");
  bis_cmd->add_option("--step", step, "scanline spacing");
  bis_cmd->add_option("--svg", bis_svg, "write an SVG");
  bis_cmd->add_option("--json", bis_json, "write the result JSON");
  bis_cmd->add_option("--out", out_dir, "output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    const double tol = env_tolerance();
    if (norm_cmd->parsed())
      return cmd_norm(norm_file, eval_at.empty() ? std::nullopt : std::make_optional(eval_at),
                      facets);
    if (verify_cmd->parsed()) return cmd_verify_copy(cert_file, vnorm_file, seq_file, tol);
    if (find_cmd->parsed())
      return cmd_find_copy(fnorm_file, oracle_spec, q, prefix, density, seed, scale, svg_file,
                           trace_file, out_dir, tol);
    if (ring_cmd->parsed())
      return cmd_ring(rnorm_file, set_name, rings,
                      rquery.empty() ? std::nullopt : std::make_optional(rquery), rjson_file,
                      out_dir);
    if (dist_cmd->parsed())
      return cmd_distinct(dnorm_file, points_file, with_oracle,
                          centre.empty() ? std::nullopt : std::make_optional(centre), tol);
    if (peel_cmd->parsed()) return cmd_peel(graph_file, k, colours);
    if (bis_cmd->parsed())
      return cmd_bisector(mode, p, y1s, y2s, y3s, y4s, window_s, step, bis_svg, bis_json,
                          out_dir, tol);
  } catch (const Error& e) {
    json err;
    err["error"] = {{"code", e.code()}, {"message", e.what()}};
    std::cout << err.dump(2) << "\n";
    return 1;
  } catch (const std::exception& e) {
    json err;
    err["error"] = {{"code", "internal"}, {"message", e.what()}};
    std::cout << err.dump(2) << "\n";
    return 1;
  }
  return 2;
}
