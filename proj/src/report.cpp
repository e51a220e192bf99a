#include "arbocert/report.hpp"

#include <set>

#include "arbocert/version.hpp"

namespace arbo {

namespace {

Json rat_string(const BigRat& q) { return q.get_str(); }

}  // namespace

Json to_json(const LevelCertificate& cert) {
  Json j;
  j["family"] = cert.family;
  j["level"] = cert.level;
  j["verdict"] = verdict_string(cert.verdict);
  j["test_value"] = cert.test_value;
  j["stripped_value"] = cert.stripped_value;
  j["stripped_digits"] = cert.stripped_digits;
  if (cert.square_root) j["square_root"] = rat_string(*cert.square_root);
  if (cert.witness_prime) j["witness_prime"] = cert.witness_prime->get_str();
  j["notes"] = cert.notes;
  return j;
}

Json to_json(const TowerReport& report) {
  Json j;
  j["family"] = report.family;
  j["depth"] = report.depth;
  Json levels = Json::array();
  for (const LevelCertificate& lc : report.levels) levels.push_back(to_json(lc));
  j["levels"] = levels;
  j["overall"] = overall_string(report.overall);
  j["index_bound"] = report.index_bound.get_str();
  j["proves_all_levels"] = report.proves_all_levels;
  j["notes"] = report.notes;
  return j;
}

Json to_json(const Mod3Certificate& cert) {
  Json j;
  j["applies"] = cert.applies;
  j["fixed_point_reached"] = cert.fixed_point_reached;
  j["note"] = cert.note;
  return j;
}

Json to_json(const IteratesEisenstein& ie) {
  Json j;
  j["all_eisenstein"] = ie.all_eisenstein;
  j["levels_checked"] = ie.levels_checked;
  j["note"] = ie.note;
  return j;
}

Json to_json(const NewtonPolygon& np) {
  Json j;
  j["p"] = np.p.get_str();
  Json pts = Json::array();
  for (const auto& [x, y] : np.points) pts.push_back(Json::array({x, y}));
  j["points"] = pts;
  Json hull = Json::array();
  for (const auto& [x, y] : np.hull) hull.push_back(Json::array({x, y}));
  j["hull"] = hull;
  Json segs = Json::array();
  for (const NewtonSegment& s : np.segments) {
    Json seg;
    seg["run"] = s.run;
    seg["rise"] = s.rise;
    seg["lattice_length"] = s.lattice_length;
    segs.push_back(seg);
  }
  j["segments"] = segs;
  return j;
}

Json to_json(const NewtonCertificate& cert) {
  Json j;
  j["certified"] = cert.certified;
  j["polygon"] = to_json(cert.polygon);
  j["note"] = cert.note;
  return j;
}

Json to_json(const BdEvidence& bd) {
  Json j;
  j["coprime"] = bd.coprime;
  j["c_is_prime"] = bd.c_is_prime;
  j["eisenstein_at_c"] = bd.eisenstein_at_c;
  j["levels_checked"] = bd.levels_checked;
  j["note"] = bd.note;
  return j;
}

Json to_json(const CurveCheckReport& report) {
  Json j;
  j["id"] = report.id;
  j["equation"] = report.equation;
  j["map_identity_ok"] = report.map_identity_ok;
  Json pts = Json::array();
  for (const CurvePointCheck& pc : report.points) {
    Json p;
    p["x"] = rat_string(pc.x);
    p["y"] = rat_string(pc.y);
    p["on_curve"] = pc.on_curve;
    p["image_x"] = pc.image_x.get_str();
    p["image_y"] = pc.image_y.get_str();
    p["image_integral"] = pc.image_integral;
    p["image_on_curve"] = pc.image_on_curve;
    pts.push_back(p);
  }
  j["points"] = pts;
  j["search_bound"] = report.search_bound;
  Json found = Json::array();
  for (const auto& [x, y] : report.found) {
    Json f;
    f["x"] = x;
    f["y"] = y.get_str();
    found.push_back(f);
  }
  j["found"] = found;
  j["expected_x"] = report.expected_x;
  j["passed"] = report.passed;
  return j;
}

Json to_json(const std::vector<CurveCheckReport>& reports) {
  Json j = Json::array();
  for (const CurveCheckReport& r : reports) j.push_back(to_json(r));
  return j;
}

Json to_json(const DensityReport& report) {
  Json j;
  j["family"] = report.family;
  j["a0"] = report.a0;
  Json rows = Json::array();
  for (const DensityRow& row : report.rows) {
    Json r;
    r["limit"] = row.limit;
    r["members"] = row.members;
    r["primes"] = row.primes;
    r["ratio"] = row.ratio;
    rows.push_back(r);
  }
  j["rows"] = rows;
  j["skipped"] = report.skipped;
  return j;
}

Json to_json(const DiscCheckReport& report) {
  Json j;
  j["samples"] = report.samples;
  j["agreed"] = report.agreed;
  j["fixed_values_ok"] = report.fixed_values_ok;
  j["mismatches"] = report.mismatches;
  j["passed"] = report.passed();
  return j;
}

Json to_json(const ShapePropertyReport& report) {
  Json j;
  j["target"] = report.target;
  j["certified"] = report.certified;
  j["attempts"] = report.attempts;
  j["failures"] = report.failures;
  j["passed"] = report.passed();
  return j;
}

Json to_json(const CycleTypeDistribution& dist) {
  Json j;
  j["m"] = dist.m;
  j["total"] = dist.total;
  j["skips"] = dist.skips;
  Json counts;
  Json freqs;
  for (const auto& [type, c] : dist.counts) {
    std::string key = partition_string(type);
    counts[key] = c;
    freqs[key] = dist.frequency(type).get_d();
  }
  j["counts"] = counts.is_null() ? Json::object() : counts;
  j["frequencies"] = freqs.is_null() ? Json::object() : freqs;
  return j;
}

Json to_json(const RigidDivisibilityReport& report) {
  Json j;
  j["depth"] = report.depth;
  j["prime_bound"] = report.prime_bound;
  Json viols = Json::array();
  for (const RigidViolation& v : report.violations) {
    Json w;
    w["prime"] = v.prime;
    w["condition"] = v.condition;
    w["n"] = v.n;
    w["m"] = v.m;
    w["detail"] = v.detail;
    viols.push_back(w);
  }
  j["violations"] = viols;
  j["ok"] = report.ok();
  return j;
}

Json to_json(const std::vector<HeightGrowthRow>& rows) {
  Json j = Json::array();
  for (const HeightGrowthRow& row : rows) {
    Json r;
    r["n"] = row.n;
    r["height_next"] = row.height_next.get_str();
    r["recurrence_bound"] = row.recurrence_bound.get_str();
    r["closed_form_bound"] = row.closed_form_bound.get_str();
    r["recurrence_ok"] = row.recurrence_ok;
    r["closed_form_ok"] = row.closed_form_ok;
    j.push_back(r);
  }
  return j;
}

Json to_json(const DynatomicAtZero& dz) {
  Json j;
  j["value"] = coeff_strings(dz.value);
  j["used_gcd_fallback"] = dz.used_gcd_fallback;
  j["is_polynomial"] = dz.is_polynomial;
  j["note"] = dz.note;
  return j;
}

Json report_envelope(const std::string& command, const Json& config,
                     const Json& result, double timing_ms) {
  Json j;
  j["tool"] = Json{{"name", kToolName}, {"version", kToolVersion}};
  j["command"] = command;
  j["config"] = config;
  j["result"] = result;
  j["timing_ms"] = timing_ms;
  return j;
}

namespace {

void validate_strings(const Json& node) {
  static const std::set<std::string> kVerdicts{"maximal", "not_maximal",
                                               "unknown"};
  static const std::set<std::string> kOverall{
      "surjective_evidence", "finite_index_evidence", "inconclusive"};
  if (node.is_object()) {
    for (const auto& [key, value] : node.items()) {
      if (key == "verdict" &&
          (!value.is_string() || !kVerdicts.count(value.get<std::string>())))
        throw std::invalid_argument("invalid verdict string");
      if (key == "overall" &&
          (!value.is_string() || !kOverall.count(value.get<std::string>())))
        throw std::invalid_argument("invalid overall string");
      validate_strings(value);
    }
  } else if (node.is_array()) {
    for (const Json& v : node) validate_strings(v);
  }
}

}  // namespace

void validate_report(const Json& report) {
  if (!report.is_object()) throw std::invalid_argument("report must be an object");
  for (const char* key : {"tool", "command", "config", "result", "timing_ms"})
    if (!report.contains(key))
      throw std::invalid_argument(std::string("report missing key: ") + key);
  const Json& tool = report["tool"];
  if (!tool.is_object() || !tool.contains("name") || !tool.contains("version"))
    throw std::invalid_argument("report tool block malformed");
  if (!report["timing_ms"].is_number())
    throw std::invalid_argument("timing_ms must be a number");
  validate_strings(report["result"]);
}

std::string dump_report(const Json& report, int indent) {
  return report.dump(indent);
}

}  // namespace arbo
