#include <chrono>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "arbocert/certificates.hpp"
#include "arbocert/dynamics.hpp"
#include "arbocert/report.hpp"
#include "arbocert/version.hpp"
#include "arbocert/wreath.hpp"

namespace {

using namespace arbo;

// Exit codes: 0 = the asserted property holds, 2 = a check came back
// negative, 1 = usage or capacity error. Pipelines can assert outcomes.
constexpr int kOk = 0;
constexpr int kError = 1;
constexpr int kNegative = 2;

unsigned long env_ulong(const char* name, unsigned long fallback) {
  const char* v = std::getenv(name);
  if (!v || !*v) return fallback;
  char* end = nullptr;
  unsigned long parsed = std::strtoul(v, &end, 10);
  if (end == v || *end != '\0' || parsed == 0)
    throw std::invalid_argument(std::string(name) + " must be a positive integer");
  return parsed;
}

FactorBudget budget_from_env() {
  FactorBudget b;
  b.trial_bound = env_ulong("ARBOCERT_TRIAL_BOUND", b.trial_bound);
  b.rho_iterations = env_ulong("ARBOCERT_RHO_ITERATIONS", b.rho_iterations);
  b.rho_attempts = static_cast<int>(
      env_ulong("ARBOCERT_RHO_ATTEMPTS",
                static_cast<unsigned long>(b.rho_attempts)));
  b.mr_rounds = static_cast<int>(env_ulong(
      "ARBOCERT_MR_ROUNDS", static_cast<unsigned long>(b.mr_rounds)));
  return b;
}

std::size_t orbit_digits_from_env() {
  return env_ulong("ARBOCERT_ORBIT_DIGITS", 100000);
}

BigInt parse_bigint(const std::string& s) {
  try {
    return BigInt(s);
  } catch (const std::invalid_argument&) {
    throw std::invalid_argument("not an integer: " + s);
  }
}

BigRat parse_bigrat(const std::string& s) {
  std::size_t slash = s.find('/');
  if (slash == std::string::npos) return BigRat(parse_bigint(s));
  BigInt num = parse_bigint(s.substr(0, slash));
  BigInt den = parse_bigint(s.substr(slash + 1));
  if (den == 0) throw std::invalid_argument("zero denominator: " + s);
  return make_rat(num, den);
}

// Family specs: "odoni:p,k", "vojta:d,c", "index2", "trinomial:d,s,A,B".
struct ParsedFamily {
  std::string label;
  IntPoly base;
  int base_degree = 0;
  bool is_index2 = false;
};

ParsedFamily parse_family(const std::string& spec) {
  auto split = [](const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(item);
    return out;
  };
  ParsedFamily out;
  if (spec == "index2") {
    out.label = "index2(x^3+7x^2-7)";
    out.base = index2_poly();
    out.base_degree = 3;
    out.is_index2 = true;
    return out;
  }
  std::size_t colon = spec.find(':');
  if (colon == std::string::npos)
    throw std::invalid_argument("family spec needs kind:params, got " + spec);
  std::string kind = spec.substr(0, colon);
  std::vector<std::string> args = split(spec.substr(colon + 1));
  if (kind == "odoni") {
    if (args.size() != 2) throw std::invalid_argument("odoni needs p,k");
    OdoniFamily fam(std::stoul(args[0]), parse_bigint(args[1]));
    out.label = fam.id();
    out.base = fam.poly();
    out.base_degree = static_cast<int>(fam.p);
    return out;
  }
  if (kind == "vojta") {
    if (args.size() != 2) throw std::invalid_argument("vojta needs d,c");
    VojtaFamily fam(std::stoi(args[0]), parse_bigint(args[1]));
    out.label = fam.id();
    out.base = fam.poly();
    out.base_degree = fam.d;
    return out;
  }
  if (kind == "trinomial") {
    if (args.size() != 4) throw std::invalid_argument("trinomial needs d,s,A,B");
    Trinomial t(std::stoi(args[0]), std::stoi(args[1]), parse_bigint(args[2]),
                parse_bigint(args[3]));
    out.label = t.poly().str();
    out.base = t.poly();
    out.base_degree = t.d;
    return out;
  }
  throw std::invalid_argument("unknown family kind: " + kind);
}

struct Output {
  std::string format = "text";
};

int emit(const Output& opts, const std::string& command, const Json& config,
         const Json& result, const std::string& text, double ms, int code) {
  if (opts.format == "json") {
    Json report = report_envelope(command, config, result, ms);
    validate_report(report);
    std::cout << dump_report(report) << "\n";
  } else {
    std::cout << text;
  }
  return code;
}

std::string tower_text(const TowerReport& rep) {
  std::ostringstream os;
  os << rep.family << ", depth " << rep.depth << "\n";
  for (const LevelCertificate& lc : rep.levels) {
    os << "  level " << lc.level << ": " << verdict_string(lc.verdict);
    if (lc.witness_prime) os << " (witness prime " << lc.witness_prime->get_str() << ")";
    if (lc.square_root) os << " (square root " << lc.square_root->get_str() << ")";
    os << "\n";
  }
  os << "overall: " << overall_string(rep.overall);
  if (rep.overall == Overall::FiniteIndexEvidence)
    os << " (index bound " << rep.index_bound.get_str() << ")";
  if (rep.proves_all_levels) os << " [all levels pinned by congruence]";
  os << "\n";
  for (const std::string& n : rep.notes) os << "note: " << n << "\n";
  return os.str();
}

std::string distribution_text(const CycleTypeDistribution& dist) {
  std::ostringstream os;
  os << "points " << dist.m << ", samples " << dist.total << ", skips "
     << dist.skips << "\n";
  for (const auto& [type, count] : dist.counts) {
    os << "  " << partition_string(type) << ": " << count << " ("
       << dist.frequency(type).get_d() << ")\n";
  }
  return os.str();
}

Json budget_json(const FactorBudget& b, std::size_t orbit_digits) {
  Json j;
  j["trial_bound"] = b.trial_bound;
  j["rho_iterations"] = b.rho_iterations;
  j["rho_attempts"] = b.rho_attempts;
  j["mr_rounds"] = b.mr_rounds;
  j["orbit_digits"] = orbit_digits;
  return j;
}

int run_certify_odoni(const Output& out, unsigned long p, const std::string& k,
                      int depth) {
  FactorBudget budget = budget_from_env();
  std::size_t digits = orbit_digits_from_env();
  OdoniFamily fam(p, parse_bigint(k));
  auto t0 = std::chrono::steady_clock::now();
  TowerReport rep = certify_odoni_tower(fam, depth, budget, digits);
  double ms = std::chrono::duration<double, std::milli>(
                  std::chrono::steady_clock::now() - t0)
                  .count();
  Json config;
  config["p"] = p;
  config["k"] = k;
  config["depth"] = depth;
  config["budget"] = budget_json(budget, digits);
  int code = kError;
  bool any_failed = false;
  for (const LevelCertificate& lc : rep.levels)
    any_failed = any_failed || lc.verdict == Verdict::NotMaximal;
  if (any_failed)
    code = kNegative;
  else if (rep.overall == Overall::SurjectiveEvidence)
    code = kOk;
  return emit(out, "certify-odoni", config, to_json(rep), tower_text(rep), ms,
              code);
}

int run_certify_index2(const Output& out, int depth) {
  std::size_t digits = orbit_digits_from_env();
  auto t0 = std::chrono::steady_clock::now();
  TowerReport rep = index2_report(depth, digits);
  double ms = std::chrono::duration<double, std::milli>(
                  std::chrono::steady_clock::now() - t0)
                  .count();
  Json config;
  config["depth"] = depth;
  config["orbit_digits"] = digits;
  bool pattern = rep.overall == Overall::FiniteIndexEvidence &&
                 rep.index_bound == 2 &&
                 rep.levels[0].verdict == Verdict::NotMaximal;
  bool any_unknown = false;
  for (const LevelCertificate& lc : rep.levels)
    any_unknown = any_unknown || lc.verdict == Verdict::Unknown;
  int code = any_unknown ? kError : (pattern ? kOk : kNegative);
  return emit(out, "certify-index2", config, to_json(rep), tower_text(rep), ms,
              code);
}

int run_certify_vojta(const Output& out, int d, const std::string& c,
                      int depth) {
  std::size_t digits = orbit_digits_from_env();
  VojtaFamily fam(d, parse_bigint(c));
  auto t0 = std::chrono::steady_clock::now();
  TowerReport rep = certify_vojta_tower(fam, depth, digits);
  double ms = std::chrono::duration<double, std::milli>(
                  std::chrono::steady_clock::now() - t0)
                  .count();
  Json config;
  config["d"] = d;
  config["c"] = c;
  config["depth"] = depth;
  config["orbit_digits"] = digits;
  int code = kError;
  bool any_failed = false;
  for (const LevelCertificate& lc : rep.levels)
    any_failed = any_failed || lc.verdict == Verdict::NotMaximal;
  if (any_failed)
    code = kNegative;
  else if (rep.overall == Overall::SurjectiveEvidence)
    code = kOk;
  return emit(out, "certify-vojta", config, to_json(rep), tower_text(rep), ms,
              code);
}

int run_disc_check(const Output& out, int samples, std::uint64_t seed) {
  auto t0 = std::chrono::steady_clock::now();
  DiscCheckReport rep = disc_equivalence_check(samples, seed);
  double ms = std::chrono::duration<double, std::milli>(
                  std::chrono::steady_clock::now() - t0)
                  .count();
  Json config;
  config["samples"] = samples;
  config["seed"] = seed;
  std::ostringstream text;
  text << "agreed " << rep.agreed << "/" << rep.samples << ", fixed values "
       << (rep.fixed_values_ok ? "ok" : "FAILED") << "\n";
  for (const std::string& m : rep.mismatches) text << "mismatch: " << m << "\n";
  return emit(out, "disc-check", config, to_json(rep), text.str(), ms,
              rep.passed() ? kOk : kNegative);
}

int run_frobenius(const Output& out, const std::string& family, int level,
                  unsigned long pmax, int jobs) {
  ParsedFamily fam = parse_family(family);
  auto t0 = std::chrono::steady_clock::now();
  IntPoly f = iterate_poly(fam.base, level);
  CycleTypeDistribution dist = frobenius_distribution(f, pmax, jobs);

  Json result;
  result["family"] = fam.label;
  result["level"] = level;
  result["degree"] = f.degree();
  result["distribution"] = to_json(dist);
  std::ostringstream text;
  text << fam.label << " iterate " << level << " (degree " << f.degree()
       << "), primes <= " << pmax << "\n"
       << distribution_text(dist);

  // Exact references, when the wreath group fits the enumeration caps.
  Json refs = Json::object();
  try {
    PermGroup full = wreath_generators(fam.base_degree, level);
    unsigned long order = enumerate(full);
    CycleTypeDistribution exact = exact_cycle_distribution(full);
    double tv = total_variation(dist, exact);
    refs["full_wreath"] = Json{{"order", order}, {"total_variation", tv}};
    text << "full wreath order " << order << ", total variation " << tv
         << "\n";
    if (fam.is_index2 && level == 2) {
      PermGroup cand = index2_candidate_group();
      unsigned long cand_order = enumerate(cand);
      CycleTypeDistribution cand_exact = exact_cycle_distribution(cand);
      double cand_tv = total_variation(dist, cand_exact);
      refs["index2_candidate"] =
          Json{{"order", cand_order}, {"total_variation", cand_tv}};
      text << "index-2 candidate order " << cand_order
           << ", total variation " << cand_tv << "\n";
    }
  } catch (const capacity_error&) {
    refs["note"] = "wreath group beyond enumeration caps";
  }
  result["references"] = refs;

  double ms = std::chrono::duration<double, std::milli>(
                  std::chrono::steady_clock::now() - t0)
                  .count();
  Json config;
  config["family"] = family;
  config["level"] = level;
  config["pmax"] = pmax;
  config["jobs"] = jobs;
  return emit(out, "frobenius", config, result, text.str(), ms,
              dist.total > 0 ? kOk : kError);
}

int run_density(const Output& out, const std::string& family,
                const std::string& a0, unsigned long pmax, int jobs) {
  ParsedFamily fam = parse_family(family);
  BigRat start = parse_bigrat(a0);
  auto t0 = std::chrono::steady_clock::now();
  DensityReport rep = density_experiment(fam.base, start, pmax, jobs);
  double ms = std::chrono::duration<double, std::milli>(
                  std::chrono::steady_clock::now() - t0)
                  .count();
  Json config;
  config["family"] = family;
  config["a0"] = a0;
  config["pmax"] = pmax;
  config["jobs"] = jobs;
  std::ostringstream text;
  text << rep.family << ", orbit of " << rep.a0 << "\n";
  for (const DensityRow& row : rep.rows)
    text << "  X = " << row.limit << ": " << row.members << "/" << row.primes
         << " = " << row.ratio << "\n";
  text << "skipped " << rep.skipped << " prime(s)\n";
  return emit(out, "density", config, to_json(rep), text.str(), ms, kOk);
}

int run_dynatomic(const Output& out, int d, int nmax) {
  if (d < 3 || nmax < 1) throw std::invalid_argument("need d >= 3, nmax >= 1");
  auto t0 = std::chrono::steady_clock::now();
  Json rows = Json::array();
  std::ostringstream text;
  bool all_ok = true;
  for (int n = 1; n <= nmax; ++n) {
    IntPoly b = vojta_param_orbit_poly(d, n);
    bool sf = is_squarefree_certified(b);
    // Leading coefficient must be +-(d-1)^m.
    BigInt lead = abs(b.lc());
    while (lead > 1 && mpz_divisible_ui_p(lead.get_mpz_t(),
                                          static_cast<unsigned long>(d - 1)))
      lead /= (d - 1);
    bool lc_ok = lead == 1;

    DynatomicAtZero dz = vojta_dynatomic_at_zero(d, n);
    int simple = simple_root_count_lower_bound(dz.value);
    bool simple_ok = n < 3 || simple >= 3;
    bool closed_ok = true;
    if (d == 3 && n == 2) closed_ok = dz.value == IntPoly{1, 0, -2};
    all_ok = all_ok && sf && lc_ok && dz.is_polynomial && simple_ok && closed_ok;

    Json row;
    row["n"] = n;
    row["orbit_poly_degree"] = b.degree();
    row["orbit_poly_squarefree"] = sf;
    row["leading_coefficient_ok"] = lc_ok;
    row["dynatomic"] = to_json(dz);
    row["simple_root_lower_bound"] = simple;
    row["simple_roots_ok"] = simple_ok;
    row["closed_form_ok"] = closed_ok;
    rows.push_back(row);
    text << "n = " << n << ": orbit poly degree " << b.degree()
         << (sf ? ", squarefree" : ", NOT SQUAREFREE")
         << (lc_ok ? ", lc ok" : ", lc UNEXPECTED") << ", >= " << simple
         << " simple dynatomic roots\n";
  }
  double ms = std::chrono::duration<double, std::milli>(
                  std::chrono::steady_clock::now() - t0)
                  .count();
  Json config;
  config["d"] = d;
  config["nmax"] = nmax;
  Json result;
  result["rows"] = rows;
  result["all_ok"] = all_ok;
  text << (all_ok ? "all checks passed\n" : "CHECKS FAILED\n");
  return emit(out, "dynatomic", config, result, text.str(), ms,
              all_ok ? kOk : kNegative);
}

int run_newton(const Output& out, int d, int s, const std::string& A,
               const std::string& B, const std::string& p) {
  Trinomial t(d, s, parse_bigint(A), parse_bigint(B));
  auto t0 = std::chrono::steady_clock::now();
  NewtonCertificate cert = newton_polygon_certificate(t, parse_bigint(p));
  double ms = std::chrono::duration<double, std::milli>(
                  std::chrono::steady_clock::now() - t0)
                  .count();
  Json config;
  config["d"] = d;
  config["s"] = s;
  config["A"] = A;
  config["B"] = B;
  config["p"] = p;
  std::ostringstream text;
  text << t.poly().str() << " at p = " << p << ": "
       << (cert.certified ? "certified" : "not certified") << " (" << cert.note
       << ")\n";
  for (const auto& [x, y] : cert.polygon.hull)
    text << "  hull vertex (" << x << ", " << y << ")\n";
  return emit(out, "newton", config, to_json(cert), text.str(), ms,
              cert.certified ? kOk : kNegative);
}

int run_curves(const Output& out, std::int64_t bound, int jobs) {
  auto t0 = std::chrono::steady_clock::now();
  std::vector<CurveCheckReport> reps = curve_checks(bound, jobs);
  double ms = std::chrono::duration<double, std::milli>(
                  std::chrono::steady_clock::now() - t0)
                  .count();
  Json config;
  config["bound"] = bound;
  config["jobs"] = jobs;
  bool all = true;
  std::ostringstream text;
  for (const CurveCheckReport& r : reps) {
    all = all && r.passed;
    text << r.id << ": " << (r.passed ? "passed" : "FAILED") << " ("
         << r.found.size() << " integral point(s) in |x| <= " << r.search_bound
         << ")\n";
  }
  return emit(out, "curves", config, to_json(reps), text.str(), ms,
              all ? kOk : kNegative);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact Galois-maximality certificates for trinomial towers"};
  app.set_version_flag("--version", std::string(kToolVersion));
  app.require_subcommand(1);
  app.fallthrough();

  Output out;
  app.add_option("--format", out.format, "Output format")
      ->check(CLI::IsMember({"json", "text"}))
      ->capture_default_str();
  std::uint64_t seed = 1;
  app.add_option("--seed", seed, "Seed for randomized sampling")
      ->capture_default_str();
  int jobs = 1;
  app.add_option("--jobs", jobs, "Worker threads for sweep subcommands")
      ->check(CLI::Range(1, 64))
      ->capture_default_str();

  int rc = kOk;

  auto* odoni = app.add_subcommand("certify-odoni", "Certify an Odoni tower");
  unsigned long odoni_p = 3;
  std::string odoni_k = "1";
  int odoni_depth = 6;
  odoni->add_option("--p", odoni_p, "Degree (odd prime)")->required();
  odoni->add_option("--k", odoni_k, "Coefficient k >= 1")->required();
  odoni->add_option("--depth", odoni_depth, "Tower depth")
      ->check(CLI::Range(1, 64))
      ->capture_default_str();
  odoni->callback(
      [&] { rc = run_certify_odoni(out, odoni_p, odoni_k, odoni_depth); });

  auto* index2 =
      app.add_subcommand("certify-index2", "Certify the index-2 example tower");
  int index2_depth = 6;
  index2->add_option("--depth", index2_depth, "Tower depth")
      ->check(CLI::Range(1, 64))
      ->capture_default_str();
  index2->callback([&] { rc = run_certify_index2(out, index2_depth); });

  auto* vojta = app.add_subcommand("certify-vojta", "Certify a Vojta tower");
  int vojta_d = 3;
  std::string vojta_c = "1";
  int vojta_depth = 4;
  vojta->add_option("--d", vojta_d, "Degree >= 3")->required();
  vojta->add_option("--c", vojta_c, "Coefficient c >= 1")->required();
  vojta->add_option("--depth", vojta_depth, "Tower depth")
      ->check(CLI::Range(1, 64))
      ->capture_default_str();
  vojta->callback(
      [&] { rc = run_certify_vojta(out, vojta_d, vojta_c, vojta_depth); });

  auto* disc = app.add_subcommand(
      "disc-check", "Compare the trinomial discriminant formula with resultants");
  int disc_samples = 50;
  disc->add_option("--samples", disc_samples, "Random trinomial count")
      ->check(CLI::Range(1, 100000))
      ->capture_default_str();
  disc->callback([&] { rc = run_disc_check(out, disc_samples, seed); });

  auto* frob = app.add_subcommand(
      "frobenius", "Sample Frobenius cycle types of an iterate");
  std::string frob_family = "odoni:3,2";
  int frob_level = 2;
  unsigned long frob_pmax = 100000;
  frob->add_option("--family", frob_family,
                   "odoni:p,k | vojta:d,c | index2 | trinomial:d,s,A,B")
      ->capture_default_str();
  frob->add_option("--level", frob_level, "Iterate to factor")
      ->check(CLI::Range(1, 12))
      ->capture_default_str();
  frob->add_option("--pmax", frob_pmax, "Prime bound")->capture_default_str();
  frob->callback(
      [&] { rc = run_frobenius(out, frob_family, frob_level, frob_pmax, jobs); });

  auto* dens = app.add_subcommand(
      "density", "Proportion of primes whose orbit reduction hits zero");
  std::string dens_family = "odoni:3,2";
  std::string dens_a0 = "2";
  unsigned long dens_pmax = 100000;
  dens->add_option("--family", dens_family,
                   "odoni:p,k | vojta:d,c | index2 | trinomial:d,s,A,B")
      ->capture_default_str();
  dens->add_option("--a0", dens_a0, "Starting point (rational)")
      ->capture_default_str();
  dens->add_option("--pmax", dens_pmax, "Prime bound")->capture_default_str();
  dens->callback(
      [&] { rc = run_density(out, dens_family, dens_a0, dens_pmax, jobs); });

  auto* dyn = app.add_subcommand(
      "dynatomic", "Squarefreeness and simple roots of parameter polynomials");
  int dyn_d = 3;
  int dyn_nmax = 4;
  dyn->add_option("--d", dyn_d, "Family degree")->required();
  dyn->add_option("--nmax", dyn_nmax, "Largest level")
      ->check(CLI::Range(1, 8))
      ->capture_default_str();
  dyn->callback([&] { rc = run_dynatomic(out, dyn_d, dyn_nmax); });

  auto* newt = app.add_subcommand(
      "newton", "Newton polygon certificate for a trinomial");
  int newt_d = 3, newt_s = 2;
  std::string newt_A, newt_B, newt_p;
  newt->add_option("--d", newt_d, "Degree")->required();
  newt->add_option("--s", newt_s, "Middle exponent (must be d-1)")->required();
  newt->add_option("--A", newt_A, "Middle coefficient")->required();
  newt->add_option("--B", newt_B, "Constant coefficient")->required();
  newt->add_option("--p", newt_p, "Prime")->required();
  newt->callback(
      [&] { rc = run_newton(out, newt_d, newt_s, newt_A, newt_B, newt_p); });

  auto* curves = app.add_subcommand(
      "curves", "Verify the curve maps, listed points, and bounded searches");
  std::int64_t curves_bound = 1000000;
  curves->add_option("--bound", curves_bound, "Search |x| <= bound")
      ->check(CLI::Range(static_cast<std::int64_t>(1),
                         static_cast<std::int64_t>(2000000)))
      ->capture_default_str();
  curves->callback([&] { rc = run_curves(out, curves_bound, jobs); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kError;
  } catch (const capacity_error& e) {
    std::cerr << "capacity: " << e.what() << "\n";
    return kError;
  } catch (const anomaly_error& e) {
    std::cerr << "internal invariant violated: " << e.what() << "\n";
    return kError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kError;
  }
  return rc;
}
