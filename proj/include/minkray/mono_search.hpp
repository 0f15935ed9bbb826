#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "minkray/errors.hpp"
#include "minkray/geometry.hpp"
#include "minkray/io.hpp"
#include "minkray/norm.hpp"
#include "minkray/oracles.hpp"
#include "minkray/progression.hpp"

namespace minkray {

struct SearchConfig {
  double q = 0.3;
  int prefix = 8;            // certificate length: progression indices 0..prefix-1
  int density = 64;          // oracle samples per segment
  int density_cap = 4096;    // escalation limit before giving up
  double tol = kDefaultTolerance;
  int max_steps = 512;       // inscription/extension budget per attempt
  int scale = 1;             // s >= 1: search for a copy of q^{s-1} * G(q)
  std::uint64_t seed = 0;    // recorded in the manifest; the search is deterministic
};

/// Rescales the search: with scale s the target is the progression dilated
/// by q^{s-1}, realized by composing the oracle with that dilation.
inline SearchConfig scale_handling(SearchConfig cfg, int s) {
  if (s < 1) throw Error(errc::bad_input, "scale must be >= 1");
  cfg.scale = s;
  return cfg;
}

/// A segment each of whose sampled points had the claimed colour, parallel
/// to the side vector of the given facet.
struct SegmentRecord {
  Segment seg;
  int colour = 0;
  int facet = 0;
  double length = 0.0;  // in the norm
  std::string provenance;
};

struct CopyCertificate {
  std::vector<Vec2> points;  // plane points realizing indices 0..prefix-1
  int colour = 0;
  std::string oracle;
  double q = 0.0;
  int scale = 1;
  double max_deviation = 0.0;
  std::string trace_id;
};

struct SearchOutcome {
  bool found = false;
  std::optional<CopyCertificate> certificate;
  std::string status;  // "certificate" or "inconclusive"
  std::string reason;
  int final_density = 0;
  json trace;
};

inline json certificate_to_json(const CopyCertificate& c, const Norm& n) {
  json j = sequence_to_json(c.q, true, c.points);
  j["norm"] = norm_to_json(n);
  j["oracle"] = c.oracle;
  j["colour"] = c.colour;
  j["scale"] = c.scale;
  j["max_deviation"] = c.max_deviation;
  j["trace_id"] = c.trace_id;
  return j;
}

struct CertificateFile {
  CopyCertificate cert;
  Norm norm = Norm::lp(2);
};

inline CertificateFile certificate_from_json(const json& j) {
  CertificateFile f;
  SequenceFile s = sequence_from_json(j);
  f.cert.points = s.pts;
  f.cert.q = s.q;
  if (!j.contains("norm")) throw Error(errc::bad_input, "certificate JSON needs \"norm\"");
  f.norm = norm_from_json(j["norm"]);
  f.cert.oracle = j.value("oracle", std::string{});
  f.cert.colour = j.value("colour", 0);
  f.cert.scale = j.value("scale", 1);
  f.cert.max_deviation = j.contains("max_deviation") ? to_real(j["max_deviation"]) : 0.0;
  f.cert.trace_id = j.value("trace_id", std::string{});
  return f;
}

/// Re-checks a certificate: pairwise distances against the (possibly scaled)
/// progression and, when an oracle is supplied, that all points share the
/// claimed colour.
inline VerifyResult verify_certificate(const Norm& n, const CopyCertificate& c,
                                       const ColouringOracle* oracle = nullptr,
                                       double tol = kDefaultTolerance) {
  const double f = std::pow(c.q, c.scale - 1);
  VerifyResult r;
  r.ok = true;
  for (std::size_t a = 0; a < c.points.size(); ++a)
    for (std::size_t b = a + 1; b < c.points.size(); ++b) {
      double want = f * gp_distance(c.q, static_cast<int>(a), static_cast<int>(b));
      double dev = std::abs(n.eval(c.points[a] - c.points[b]) - want);
      r.max_deviation = std::max(r.max_deviation, dev);
      if (dev > tol) r.ok = false;
    }
  if (oracle)
    for (Vec2 p : c.points)
      if ((*oracle)(p) != c.colour) r.ok = false;
  return r;
}

/// Smallest progression index lo >= 1 whose tail q^lo/(1-q) fits a segment
/// of the given length.
inline int feasible_first_index(double q, double length, double tol = kDefaultTolerance) {
  int lo = 1;
  while (std::pow(q, lo) / (1.0 - q) > length + tol) {
    if (++lo > 300)
      throw Error(errc::segment_too_short, "segment too short for any workable scale");
  }
  return lo;
}

/// Geometry of the sliding step. A copy inscribed at the lex-greater end of
/// `host` can slide toward the other end by host.length - q^lo/(1-q); the
/// derivation of `out` from the copy is translation-equivariant, so `out`
/// sweeps along itself (both segments are parallel to the same side vector).
/// Returns the swept union and the slide range.
inline std::pair<Segment, double> swept_union(const SegmentRecord& host,
                                              const SegmentRecord& out, double q,
                                              double tol = kDefaultTolerance) {
  const int lo = feasible_first_index(q, host.length, tol);
  const double range = host.length - std::pow(q, lo) / (1.0 - q);
  const Vec2 hi_end = host.seg.lex_greater_end();
  const Vec2 u_slide = (host.seg.lex_lesser_end() - hi_end) / host.length;
  Segment merged = out.seg;
  for (Vec2 p : {out.seg.a + u_slide * range, out.seg.b + u_slide * range}) {
    if (lex_less(p, merged.lex_lesser_end())) merged = {p, merged.lex_greater_end()};
    if (lex_less(merged.lex_greater_end(), p)) merged = {merged.lex_lesser_end(), p};
  }
  return {merged, range};
}

namespace detail {

struct Inconclusive {
  std::string reason;
};

class Searcher {
 public:
  Searcher(const PolygonalNorm& n, const ColouringOracle& oracle, const SearchConfig& cfg,
           int density, json& events)
      : n_(n), oracle_(oracle), cfg_(cfg), density_(density), events_(events) {}

  CopyCertificate run() {
    auto seeded = step1();
    if (auto* cert = std::get_if<CopyCertificate>(&seeded)) return *cert;
    const SegmentRecord& seed = std::get<SegmentRecord>(seeded);
    return attempt(seed, {seed});  // step1 already sampled and logged it
  }

  CopyCertificate run_from(const SegmentRecord& seed) {
    Sample s = sample_segment(seed.seg);
    if (!s.mono || s.colour != seed.colour)
      throw Inconclusive{"seed segment " + seed.provenance + " refuted by sampling"};
    log({{"event", "seed"},
         {"facet", seed.facet},
         {"colour", seed.colour},
         {"length", seed.length},
         {"a", vec_to_json(seed.seg.a)},
         {"b", vec_to_json(seed.seg.b)},
         {"provenance", seed.provenance}});
    return attempt(seed, {seed});
  }

  /// First stage: segments J_i across the ray through the midpoint of side 0.
  /// All sampled-bichromatic yields an immediate certificate; otherwise the
  /// first sampled-monochromatic J_i seeds the alternation.
  std::variant<SegmentRecord, CopyCertificate> step1() {
    const Vec2 x = n_.side(0, +1).midpoint();  // unit norm, vertex-free ray
    const Vec2 w = n_.facets()[0].w;
    const double tau = 0.5;  // x + t*w stays on the side exactly for |t| <= 1/2
    const double q = cfg_.q;

    std::vector<Vec2> picks;
    for (int i = 0; i < cfg_.prefix; ++i) {
      const double reach = (1.0 - std::pow(q, i)) / (1.0 - q);
      const double half = tau * std::pow(q, i) / 2.0;
      Segment ji{x * reach - w * half, x * reach + w * half};
      Sample s = sample_segment(ji);
      log({{"event", "step1"},
           {"segment", "J" + std::to_string(i)},
           {"a", vec_to_json(ji.a)},
           {"b", vec_to_json(ji.b)},
           {"mono", s.mono},
           {"colour", s.mono ? json(s.colour) : json(nullptr)}});
      if (s.mono) {
        SegmentRecord rec;
        rec.seg = ji;
        rec.colour = s.colour;
        rec.facet = 0;
        rec.length = n_.eval(ji.b - ji.a);
        rec.provenance = "step1:J" + std::to_string(i);
        log({{"event", "seed"},
             {"facet", rec.facet},
             {"colour", rec.colour},
             {"length", rec.length},
             {"a", vec_to_json(ji.a)},
             {"b", vec_to_json(ji.b)},
             {"provenance", rec.provenance}});
        return rec;
      }
      // both colours present; keep the first point of colour 0
      picks.push_back(*s.first_of[0]);
    }
    // Every J_i is bichromatic: the colour-0 picks already form a copy.
    return finish_certificate(picks, 0, "step1-bichromatic");
  }

 private:
  struct Sample {
    bool mono = true;
    int colour = 0;
    std::optional<Vec2> first_of[2];
  };

  Sample sample_segment(const Segment& seg) {
    Sample s;
    for (int i = 0; i < density_; ++i) {
      double t = density_ == 1 ? 0.5 : static_cast<double>(i) / (density_ - 1);
      Vec2 p = seg.a + (seg.b - seg.a) * t;
      int c = oracle_(p);
      if (c != 0 && c != 1)
        throw Error(errc::bad_input, "the search needs a two-colour oracle, got colour " +
                                         std::to_string(c));
      if (i == 0) s.colour = c;
      if (c != s.colour) s.mono = false;
      if (!s.first_of[c]) s.first_of[c] = p;
    }
    return s;
  }

  void log(json e) { events_.push_back(std::move(e)); }

  void spend_step(const char* what) {
    if (++steps_ > cfg_.max_steps)
      throw Inconclusive{std::string("step budget exhausted at ") + what};
  }

  /// Alternation from a sampled-monochromatic record. chain carries the
  /// records since the last growth reset, for facet-cycle detection.
  CopyCertificate attempt(const SegmentRecord& rec, std::vector<SegmentRecord> chain) {
    spend_step("inscription");
    const double q = cfg_.q;
    const double full_need = 1.0 / (1.0 - q);

    // Long enough for the whole prefix: inscribe it and check directly.
    if (rec.length + cfg_.tol >= full_need) {
      auto pts = inscribe_progression(Norm::from(n_), rec.seg, q, 0, cfg_.prefix, cfg_.tol);
      log({{"event", "inscribe"}, {"first_index", 0}, {"count", cfg_.prefix}});
      for (Vec2 p : pts)
        if (oracle_(p) != rec.colour)
          throw Inconclusive{"record " + rec.provenance + " refuted at full inscription"};
      return finish_certificate(pts, rec.colour, "full-inscription");
    }

    // Otherwise inscribe a scaled copy at the finest feasible index.
    const int lo = feasible_first_index(q, rec.length, cfg_.tol);
    auto copy = inscribe_progression(Norm::from(n_), rec.seg, q, lo, cfg_.prefix - 1, cfg_.tol);
    log({{"event", "inscribe"}, {"first_index", lo}, {"count", cfg_.prefix - 1}});
    for (Vec2 p : copy)
      if (oracle_(p) != rec.colour)
        throw Inconclusive{"record " + rec.provenance + " refuted by inscription sampling"};

    // Work the lowest index down to 0, switching records when an extension
    // segment samples entirely opposite.
    int j = lo;
    while (j >= 1) {
      spend_step("extension");
      auto exts = extension_segments_at(n_, copy, q, j, cfg_.tol);
      std::optional<Vec2> same;
      const ExtensionSegment* via = nullptr;
      std::vector<const ExtensionSegment*> opposite;
      for (const ExtensionSegment& e : exts) {
        Sample s = sample_segment(e.seg);
        if (s.first_of[rec.colour]) {
          same = s.first_of[rec.colour];
          via = &e;
          break;
        }
        opposite.push_back(&e);
      }
      if (same) {
        sum_rule_self_check(*via, *same, copy);
        copy.insert(copy.begin(), *same);
        --j;
        log({{"event", "prepend"},
             {"index", j},
             {"facet", via->facet},
             {"sign", via->sign},
             {"point", vec_to_json(*same)}});
        continue;
      }
      // Every sampled point of every extension segment has the opposite
      // colour: each is the next monochromatic segment candidate. Branch
      // depth-first on vertex-degenerate pairs.
      std::string last_reason = "no extension branch succeeded";
      for (const ExtensionSegment* e : opposite) {
        SegmentRecord next;
        next.seg = e->seg;
        next.colour = 1 - rec.colour;
        next.facet = e->facet;
        next.length = n_.eval(e->seg.b - e->seg.a);
        next.provenance = "extension:index" + std::to_string(e->new_index) + ":facet" +
                          std::to_string(e->facet);
        log({{"event", "record"},
             {"facet", next.facet},
             {"colour", next.colour},
             {"length", next.length},
             {"a", vec_to_json(next.seg.a)},
             {"b", vec_to_json(next.seg.b)},
             {"provenance", next.provenance}});
        try {
          const SegmentRecord* cycle_start = nullptr;
          for (const SegmentRecord& r : chain)
            if (r.facet == next.facet) {
              cycle_start = &r;
              break;
            }
          if (cycle_start) {
            log({{"event", "cycle"}, {"facet", next.facet}});
            SegmentRecord merged = slide_merge(*cycle_start, next);
            return attempt(merged, {merged});
          }
          std::vector<SegmentRecord> grown = chain;
          grown.push_back(next);
          return attempt(next, std::move(grown));
        } catch (const Inconclusive& inc) {
          last_reason = inc.reason;
        }
      }
      throw Inconclusive{last_reason};
    }
    return finish_certificate(copy, rec.colour, "prepend-cascade");
  }

  /// Sliding step on a facet cycle: sweep the cycle's output along itself
  /// and validate the union by sampling as one longer monochromatic segment.
  SegmentRecord slide_merge(const SegmentRecord& host, const SegmentRecord& out) {
    auto [merged_seg, range] = swept_union(host, out, cfg_.q, cfg_.tol);
    SegmentRecord merged;
    merged.seg = merged_seg;
    merged.colour = out.colour;
    merged.facet = out.facet;
    merged.length = n_.eval(merged_seg.b - merged_seg.a);
    merged.provenance = "slide-merge:facet" + std::to_string(out.facet);
    Sample s = sample_segment(merged.seg);
    if (!s.mono || s.colour != merged.colour)
      throw Inconclusive{"slide-merged segment refuted by sampling"};
    log({{"event", "slide-merge"},
         {"facet", merged.facet},
         {"colour", merged.colour},
         {"length", merged.length},
         {"a", vec_to_json(merged.seg.a)},
         {"b", vec_to_json(merged.seg.b)},
         {"range", range}});
    return merged;
  }

  void sum_rule_self_check(const ExtensionSegment& e, Vec2 z_new, const std::vector<Vec2>& copy) {
    const double s = e.sign;
    Vec2 x1 = (z_new - copy.front()) * s;
    Vec2 x2 = (copy.front() - copy.back()) * s;
    bool ok = false;
    try {
      ok = sum_direction_check(n_, e.facet, x1, x2, cfg_.tol * 16);
    } catch (const Error&) {
    }
    if (!ok) throw Inconclusive{"sum-direction self-check failed at a prepend step"};
  }

  CopyCertificate finish_certificate(const std::vector<Vec2>& pts, int colour,
                                     const std::string& how) {
    CopyCertificate cert;
    cert.points.assign(pts.begin(), pts.begin() + cfg_.prefix);
    cert.colour = colour;
    cert.q = cfg_.q;
    cert.scale = 1;  // the driver applies the dilation
    VerifyResult r = verify_slice(Norm::from(n_), cfg_.q, cert.points, 0, cfg_.tol);
    if (!r.ok)
      throw Inconclusive{"candidate copy failed distance verification (deviation " +
                         std::to_string(r.max_deviation) + ")"};
    for (Vec2 p : cert.points)
      if (oracle_(p) != colour) throw Inconclusive{"candidate copy failed the colour re-check"};
    cert.max_deviation = r.max_deviation;
    json pts_json = json::array();
    for (Vec2 p : cert.points) pts_json.push_back(vec_to_json(p));
    log({{"event", "certificate"},
         {"via", how},
         {"max_deviation", r.max_deviation},
         {"colour", colour},
         {"points", std::move(pts_json)}});
    return cert;
  }

  const PolygonalNorm& n_;
  const ColouringOracle& oracle_;
  const SearchConfig& cfg_;
  int density_;
  json& events_;
  int steps_ = 0;
};

inline SearchOutcome drive(const Norm& norm, const ColouringOracle& oracle,
                           const SearchConfig& cfg, const std::optional<SegmentRecord>& seed,
                           const char* command) {
  const PolygonalNorm& poly = norm.polygonal();
  const double lambda = min_side_length(poly);
  const double bound = lambda / (1.0 + lambda);
  if (!(cfg.q > 0.0) || cfg.q >= bound)
    throw Error(errc::precondition_violated,
                "q = " + std::to_string(cfg.q) + " outside (0, " + std::to_string(bound) +
                    ") = (0, lambda/(1+lambda)) for this norm");
  if (cfg.prefix < 2) throw Error(errc::bad_input, "prefix must be >= 2");
  if (cfg.density < 2) throw Error(errc::bad_input, "density must be >= 2");
  if (cfg.scale < 1) throw Error(errc::bad_input, "scale must be >= 1");

  const double dilation = std::pow(cfg.q, cfg.scale - 1);
  ColouringOracle effective = oracle;
  if (cfg.scale > 1) {
    auto base = oracle.colour;
    effective.colour = [base, dilation](Vec2 p) { return base(p * dilation); };
  }

  SearchOutcome outcome;
  outcome.trace = json::object();
  outcome.trace["manifest"] = {{"command", command},
                               {"norm_hash", norm_hash(norm)},
                               {"oracle", oracle.name},
                               {"q", cfg.q},
                               {"prefix", cfg.prefix},
                               {"density", cfg.density},
                               {"density_cap", cfg.density_cap},
                               {"scale", cfg.scale},
                               {"seed", cfg.seed},
                               {"tool_version", kToolVersion}};
  json events = json::array();
  std::string reason = "density cap reached";
  int density = cfg.density;
  for (; density <= cfg.density_cap; density *= 2) {
    events.push_back({{"event", "density"}, {"density", density}});
    Searcher searcher(poly, effective, cfg, density, events);
    try {
      CopyCertificate cert = seed ? searcher.run_from(*seed) : searcher.run();
      cert.oracle = oracle.name;
      cert.scale = cfg.scale;
      if (cfg.scale > 1)
        for (Vec2& p : cert.points) p = p * dilation;
      cert.trace_id = fnv1a_hex(outcome.trace["manifest"].dump());
      outcome.found = true;
      outcome.certificate = std::move(cert);
      outcome.status = "certificate";
      break;
    } catch (const Inconclusive& inc) {
      events.push_back({{"event", "inconclusive"}, {"density", density}, {"reason", inc.reason}});
      reason = inc.reason;
    } catch (const Error& e) {
      // Numeric breakage of a sampled copy escalates like any other
      // inconclusive attempt; genuine usage errors propagate.
      if (e.code() != errc::no_witness && e.code() != errc::segment_too_short) throw;
      events.push_back({{"event", "inconclusive"}, {"density", density}, {"reason", e.what()}});
      reason = e.what();
    }
  }
  outcome.final_density = std::min(density, cfg.density_cap);
  if (!outcome.found) {
    outcome.status = "inconclusive";
    outcome.reason = reason;
  }
  outcome.trace["events"] = std::move(events);
  outcome.trace["status"] = outcome.status;
  return outcome;
}

}  // namespace detail

/// Searches for a monochromatic copy of the progression prefix under the
/// oracle. Semi-decision procedure: segment monochromaticity is only ever
/// established by sampling, with density doubling up to the configured cap;
/// a returned certificate is always verified, an inconclusive outcome is
/// reported as such.
inline SearchOutcome find_copy(const Norm& norm, const ColouringOracle& oracle,
                               const SearchConfig& cfg) {
  return detail::drive(norm, oracle, cfg, std::nullopt, "find-copy");
}

/// First proof stage on its own: either a certificate (all cross segments
/// sampled bichromatic) or the first sampled-monochromatic segment.
inline std::variant<SegmentRecord, CopyCertificate> step1_find_mono_segment(
    const Norm& norm, const ColouringOracle& oracle, const SearchConfig& cfg) {
  json events = json::array();
  detail::Searcher searcher(norm.polygonal(), oracle, cfg, cfg.density, events);
  try {
    auto out = searcher.step1();
    if (auto* cert = std::get_if<CopyCertificate>(&out)) {
      cert->oracle = oracle.name;
      cert->scale = cfg.scale;
    }
    return out;
  } catch (const detail::Inconclusive& inc) {
    throw Error(errc::iteration_limit, "inconclusive: " + inc.reason);
  }
}

/// Alternation stage from a caller-supplied monochromatic seed segment. The
/// seed is re-validated by sampling at every density.
inline SearchOutcome alternation_loop(const Norm& norm, const ColouringOracle& oracle,
                                      const SearchConfig& cfg, const SegmentRecord& seed) {
  const PolygonalNorm& poly = norm.polygonal();
  const Vec2 w = poly.facets().at(seed.facet).w;
  Vec2 d = seed.seg.b - seed.seg.a;
  if (std::abs(cross(d, w)) > cfg.tol * (1.0 + euclid(d) * euclid(w)))
    throw Error(errc::bad_input, "seed segment is not parallel to its facet's side vector");
  SegmentRecord s = seed;
  s.length = poly.eval(d);
  return detail::drive(norm, oracle, cfg, s, "alternation");
}

}  // namespace minkray
