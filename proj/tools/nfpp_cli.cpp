// nfpp command-line front end. Human summaries go to stdout; data goes to
// --out as CSV (schema v1) or JSON.

#include <chrono>
#include <cmath>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "nfpp/arms.hpp"
#include "nfpp/montecarlo.hpp"
#include "nfpp/records.hpp"
#include "nfpp/scaling.hpp"
#include "nfpp/verify.hpp"

using namespace nfpp;

namespace {

// set to 3 when an invariant check fails; output is still written
int g_status = 0;

struct Opts {
  double p = 0.4;
  std::uint64_t seed = 1;
  std::size_t samples = 100;
  int n = 32;
  double theta = 0.0;
  double eps = 0.1;
  unsigned threads = 1;
  std::string out;
  std::string format = "csv";

  std::string ladder;      // estimate-mu rungs; default n/2, n
  double L = 0;            // correlation length hint; 0 = estimate it
  int K = 6;
  std::size_t bootstrap = 1000;
  double level = 0.9;
  double r = 1, R = 8;     // annulus radii, or the box size for `crossing`
  int k = 4;
  std::string kind = "alternating";
  std::string color = "blue";
  std::optional<double> half_plane;
  std::string table;       // pi4 table CSV for corr-length
  std::string radii = "2,4,8,16,32";
  std::string table_out;
  std::string ps = "0.40,0.44,0.46,0.47";
  double N = 8;
  double nu = -1;          // negative: L_eps * mu estimated on the spot
  double max_R = 4096;
  std::string suite = "all";
  std::string config;
};

using Records = std::vector<ResultRecord>;

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

ResultRecord record(const std::string& estimand, const Opts& o, Json params, const MCEstimate& e) {
  ResultRecord r;
  r.estimand = estimand;
  r.p = o.p;
  r.params = std::move(params);
  r.mean = e.mean;
  r.std_err = e.std_err;
  r.n = e.n;
  r.seed = o.seed;
  return r;
}

CorrelationSearch search_of(const Opts& o) {
  CorrelationSearch s;
  s.max_R = o.max_R;
  return s;
}

std::vector<int> ladder_of(const Opts& o) {
  if (o.ladder.empty()) {
    if (o.n < 1) throw ArgumentError("estimate-mu: --n must be at least 1");
    return o.n >= 2 ? std::vector<int>{o.n / 2, o.n} : std::vector<int>{o.n};
  }
  std::vector<int> out;
  for (const double x : parse_number_list(o.ladder)) {
    if (x != std::floor(x)) throw ArgumentError("estimate-mu: ladder entries must be integers");
    out.push_back(static_cast<int>(x));
  }
  return out;
}

double L_eps_of(const Opts& o) {
  return o.L > 0 ? o.L : correlation_length_eps(o.p, o.eps, o.samples, o.seed, o.threads, search_of(o)).value;
}

// Each estimand returns its rows with the headline row first; `sweep` keeps
// only the headline.

Records run_mu(const Opts& o) {
  const std::vector<int> ladder = ladder_of(o);
  const MuEstimate m = o.L > 0 ? estimate_mu(o.p, o.theta, ladder, o.samples, o.seed, o.threads, o.L)
                                : estimate_mu(o.p, o.theta, ladder, o.samples, o.seed, o.threads);
  Records rs;
  rs.push_back(record("mu", o,
                      {{"n", ladder.back()},
                       {"theta", o.theta},
                       {"two_point", m.two_point.mean},
                       {"two_point_stderr", m.two_point.std_err},
                       {"intercept", m.intercept},
                       {"subadditive_in_expectation", m.expectation_subadditive},
                       {"ladder_warning", m.ladder_warning}},
                      m.at_largest));
  for (const MuRung& r : m.rungs)
    rs.push_back(record("mu_rung", o, {{"n", r.n}, {"theta", o.theta}, {"x", r.target.x}, {"y", r.target.y}}, r.ratio));
  std::cout << "mu(p=" << o.p << ", theta=" << o.theta << ") at n=" << ladder.back() << ": mean " << m.at_largest.mean
            << " +- " << m.at_largest.std_err << "\n";
  std::cout << "two-point slope: " << m.two_point.mean << " +- " << m.two_point.std_err << "\n";
  if (!m.expectation_subadditive) std::cout << "warning: expectation not subadditive along the ladder\n";
  if (m.ladder_warning) std::cout << "warning: largest rung below 8 L_eps(p)\n";
  return rs;
}

Records run_shape(const Opts& o) {
  Opts q = o;
  double L = 0;
  if (q.n <= 0) {
    L = L_eps_of(o);
    q.n = static_cast<int>(std::ceil(8.0 * L));
  }
  const ShapeEstimate s = shape_anisotropy(q.p, q.K, q.n, q.samples, q.seed, q.threads, q.bootstrap, q.level);
  Records rs;
  MCEstimate head{s.anisotropy, 0.0, q.samples};
  rs.push_back(record("anisotropy", q,
                      {{"K", q.K}, {"n", q.n}, {"ci_lo", s.ci.lo}, {"ci_hi", s.ci.hi}, {"level", s.level}, {"L_eps", L}},
                      head));
  for (std::size_t k = 0; k < s.thetas.size(); ++k)
    rs.push_back(record("mu_direction", q, {{"K", q.K}, {"n", q.n}, {"theta", s.thetas[k]}}, s.mu[k]));
  std::cout << "anisotropy(p=" << q.p << ", K=" << q.K << ", n=" << q.n << "): " << s.anisotropy << "  "
            << 100 * s.level << "% CI [" << s.ci.lo << ", " << s.ci.hi << "]\n";
  return rs;
}

Records run_corr(const Opts& o) {
  const CorrelationLength L = correlation_length_eps(o.p, o.eps, o.samples, o.seed, o.threads, search_of(o));
  Records rs;
  rs.push_back(record("L_eps", o,
                      {{"eps", o.eps}, {"bracket_lo", L.bracket_lo}, {"bracket_hi", L.bracket_hi},
                       {"log_stderr", L.log_stderr}, {"evaluations", L.evaluations}},
                      {L.value, L.value * L.log_stderr, o.samples}));
  std::cout << "L_eps(p=" << o.p << ", eps=" << o.eps << ") = " << L.value << "  bracket [" << L.bracket_lo << ", "
            << L.bracket_hi << "]\n";
  if (!o.table.empty()) {
    std::ifstream in(o.table);
    if (!in) throw ArgumentError("corr-length: cannot read --table " + o.table);
    const Pi4Table t = Pi4Table::read_csv(in);
    const double Lp = correlation_length_L(o.p, t);
    rs.push_back(record("L", o, {{"table", o.table}}, {Lp, 0.0, t.rows.size()}));
    std::cout << "L(p=" << o.p << ") = " << Lp << " from " << t.rows.size() << " table rows\n";
    for (const double R : t.monotonicity_violations()) std::cout << "warning: R^2 pi4 decreases at R=" << R << "\n";
  }
  return rs;
}

ArmEventSpec arm_spec_of(const Opts& o) {
  ArmEventSpec s;
  s.r = o.r;
  s.R = o.R;
  s.k = o.k;
  if (o.kind == "alternating")
    s.kind = ArmKind::kAlternating;
  else if (o.kind == "mono" || o.kind == "monochromatic")
    s.kind = ArmKind::kMonochromatic;
  else
    throw ArgumentError("arm-prob: --kind must be alternating or mono");
  if (o.color == "blue")
    s.color = Color::kBlue;
  else if (o.color == "yellow")
    s.color = Color::kYellow;
  else
    throw ArgumentError("arm-prob: --color must be blue or yellow");
  s.half_plane = o.half_plane;
  return s;
}

Records run_arm(const Opts& o) {
  const ArmEventSpec s = arm_spec_of(o);
  const MCEstimate e = estimate_arm_probability(s, o.p, o.samples, o.seed, o.threads);
  Json params{{"r", s.r}, {"R", s.R}, {"k", s.k}, {"kind", o.kind}};
  if (s.kind == ArmKind::kMonochromatic) params["color"] = o.color;
  if (s.half_plane) params["half_plane"] = *s.half_plane;
  std::cout << "arm probability(p=" << o.p << ", " << o.kind << " " << s.k << ", r=" << s.r << ", R=" << s.R
            << "): " << e.mean << " +- " << e.std_err << "\n";
  return {record("arm", o, params, e)};
}

Records run_crossing(const Opts& o) {
  const MCEstimate e = crossing_probability(o.p, o.R, o.samples, o.seed, o.threads);
  std::cout << "crossing probability(p=" << o.p << ", R=" << o.R << "): " << e.mean << " +- " << e.std_err << "\n";
  return {record("crossing", o, {{"R", o.R}}, e)};
}

Records run_pi4(const Opts& o) {
  const Pi4Table t = build_pi4_table(parse_number_list(o.radii), o.samples, o.seed, o.threads);
  if (!o.table_out.empty()) {
    std::ofstream f(o.table_out);
    if (!f) throw ArgumentError("pi4-table: cannot write --table-out " + o.table_out);
    t.write_csv(f);
  }
  Records rs;
  Opts q = o;
  q.p = kCriticalP;
  for (const Pi4Row& r : t.rows) {
    rs.push_back(record("pi4", q, {{"R", r.R}}, r.estimate));
    std::cout << "pi4(1, " << r.R << ") = " << r.estimate.mean << " +- " << r.estimate.std_err << "\n";
  }
  for (const double R : t.monotonicity_violations()) std::cout << "warning: R^2 pi4 decreases at R=" << R << "\n";
  return rs;
}

Records run_ccd(const Opts& o) {
  const CcdRatio c = ccd_ratio(o.p, o.eps, o.samples, o.seed, o.threads, search_of(o));
  std::cout << "L_eps(p=" << o.p << ") * mu = " << c.L.value << " * " << c.mu.mean << " = " << c.ratio << " +- "
            << c.stderr_ratio << " (n=" << c.n << ")\n";
  return {record("ccd", o, {{"eps", o.eps}, {"L_eps", c.L.value}, {"mu", c.mu.mean}, {"mu_stderr", c.mu.std_err}, {"n", c.n}},
                 {c.ratio, c.stderr_ratio, o.samples})};
}

Records run_exponent(const Opts& o) {
  const std::vector<double> ps = parse_number_list(o.ps);
  const ExponentFit f = fit_correlation_exponent(ps, o.eps, o.samples, o.seed, o.threads, o.bootstrap, o.level, search_of(o));
  Records rs;
  Opts q = o;
  q.p = ps.empty() ? 0.0 : ps.back();
  rs.push_back(record("exponent", q,
                      {{"eps", o.eps}, {"ps", ps}, {"ci_lo", f.ci.lo}, {"ci_hi", f.ci.hi}, {"level", f.level},
                       {"intercept", f.fit.intercept}},
                      {f.fit.slope, f.bootstrap_sd, ps.size()}));
  for (std::size_t i = 0; i < ps.size(); ++i) {
    q.p = ps[i];
    rs.push_back(record("L_eps", q, {{"eps", o.eps}, {"log_stderr", f.L[i].log_stderr}},
                        {f.L[i].value, f.L[i].value * f.L[i].log_stderr, o.samples}));
    std::cout << "L_eps(" << ps[i] << ") = " << f.L[i].value << "\n";
  }
  std::cout << "slope: " << f.fit.slope << "  " << 100 * f.level << "% CI [" << f.ci.lo << ", " << f.ci.hi << "]\n";
  return rs;
}

Records run_bonds(const Opts& o) {
  double L = o.L, nu = o.nu;
  if (L <= 0 || nu < 0) {
    const CcdRatio c = ccd_ratio(o.p, 0.1, o.samples, o.seed, o.threads, search_of(o));
    if (L <= 0) L = c.L.value;
    if (nu < 0) nu = c.ratio;
  }
  const MCEstimate e = good_bond_fraction(o.p, o.N, o.eps, nu, L, o.samples, o.seed, o.threads);
  std::cout << "good bond fraction(p=" << o.p << ", N=" << o.N << ", eps=" << o.eps << ", nu=" << nu << ", L=" << L
            << "): " << e.mean << " +- " << e.std_err << "\n";
  return {record("good_bonds", o, {{"N", o.N}, {"eps", o.eps}, {"nu", nu}, {"L", L}}, e)};
}

Records run_verify(const Opts& o) {
  Records rs;
  std::size_t total = 0;
  auto report = [&](const std::string& name, const DualityReport& r) {
    std::cout << name << ": checked " << r.checked << ", mismatches " << r.mismatches;
    if (r.skipped) std::cout << ", skipped " << r.skipped << " (rate " << r.skip_rate() << ")";
    std::cout << "\n";
    for (const auto& ex : r.examples) std::cout << "  " << ex << "\n";
    total += r.mismatches;
    rs.push_back(record("duality_mismatches", o, {{"suite", name}, {"skipped", r.skipped}},
                        {static_cast<double>(r.mismatches), 0.0, r.checked}));
  };
  const bool all = o.suite == "all";
  if (!all && o.suite != "quad" && o.suite != "circuit" && o.suite != "strip")
    throw ArgumentError("verify-duality: --suite must be quad, circuit, strip or all");
  if (all || o.suite == "quad") report("quad", verify_quad_duality(o.samples, o.seed, o.threads));
  if (all || o.suite == "circuit") report("circuit", verify_circuit_duality(o.samples, o.seed, o.threads));
  if (all || o.suite == "strip") report("strip", verify_strip_duality(o.threads));
  std::cout << "mismatches: " << total << "\n";
  if (total) g_status = 3;
  return rs;
}

}  // namespace

namespace {

Records run_sample(const Opts& o) {
  if (o.n < 1) throw ArgumentError("sample: --n (half-width) must be at least 1");
  const Window w = Window::covering(AxisBox{{0, 0}, static_cast<double>(o.n), static_cast<double>(o.n)}, 0.0);
  const Configuration c = Configuration::sample(w, o.p, o.seed);
  std::size_t blue = 0;
  for (std::size_t i = 0; i < w.size(); ++i) blue += c.blue(i);
  std::cout << "sampled " << w.size() << " sites at p=" << o.p << ", blue fraction "
            << static_cast<double>(blue) / static_cast<double>(w.size()) << "\n";
  if (!o.out.empty()) {
    std::ofstream f(o.out);
    if (!f) throw ArgumentError("sample: cannot write --out " + o.out);
    if (o.format == "json") {
      Json sites = Json::array();
      for (std::size_t i = 0; i < w.size(); ++i) sites.push_back({w.site(i).x, w.site(i).y, c.blue(i) ? 1 : 0});
      f << Json{{"p", o.p}, {"seed", o.seed}, {"sites", sites}}.dump() << "\n";
    } else {
      f << "x,y,blue\n";
      for (std::size_t i = 0; i < w.size(); ++i) f << w.site(i).x << ',' << w.site(i).y << ',' << (c.blue(i) ? 1 : 0) << '\n';
    }
  }
  return {};
}

using Runner = std::function<Records(const Opts&)>;

const std::map<std::string, Runner>& estimands() {
  static const std::map<std::string, Runner> m{
      {"estimate-mu", run_mu},     {"estimate-shape", run_shape}, {"corr-length", run_corr},
      {"arm-prob", run_arm},       {"crossing", run_crossing},    {"pi4-table", run_pi4},
      {"ccd", run_ccd},            {"fit-exponent", run_exponent}, {"good-bonds", run_bonds},
      {"verify-duality", run_verify}};
  return m;
}

double to_double(const std::string& key, const std::string& v) {
  const auto xs = parse_number_list(v);
  if (xs.size() != 1) throw ArgumentError("sweep: key '" + key + "' needs one number, got '" + v + "'");
  return xs[0];
}

long long to_integer(const std::string& key, const std::string& v) {
  const double x = to_double(key, v);
  if (x != std::floor(x) || x < 0) throw ArgumentError("sweep: key '" + key + "' needs a nonnegative integer");
  return static_cast<long long>(x);
}

// Config keys carry the same names as the flags, without dashes.
void apply_keys(Opts& o, const std::map<std::string, std::string>& kv) {
  for (const auto& [key, v] : kv) {
    if (key == "p") continue;  // the sweep ladder
    if (key == "seed") {
      o.seed = std::stoull(v);
    } else if (key == "samples") {
      o.samples = static_cast<std::size_t>(to_integer(key, v));
    } else if (key == "n") {
      o.n = static_cast<int>(to_integer(key, v));
    } else if (key == "theta") {
      o.theta = to_double(key, v);
    } else if (key == "eps") {
      o.eps = to_double(key, v);
    } else if (key == "ladder") {
      o.ladder = v;
    } else if (key == "L") {
      o.L = to_double(key, v);
    } else if (key == "K") {
      o.K = static_cast<int>(to_integer(key, v));
    } else if (key == "bootstrap") {
      o.bootstrap = static_cast<std::size_t>(to_integer(key, v));
    } else if (key == "level") {
      o.level = to_double(key, v);
    } else if (key == "r") {
      o.r = to_double(key, v);
    } else if (key == "R") {
      o.R = to_double(key, v);
    } else if (key == "k") {
      o.k = static_cast<int>(to_integer(key, v));
    } else if (key == "kind") {
      o.kind = v;
    } else if (key == "color") {
      o.color = v;
    } else if (key == "half_plane") {
      o.half_plane = to_double(key, v);
    } else if (key == "radii") {
      o.radii = v;
    } else if (key == "N") {
      o.N = to_double(key, v);
    } else if (key == "nu") {
      o.nu = to_double(key, v);
    } else if (key == "max_R") {
      o.max_R = to_double(key, v);
    } else if (key == "suite") {
      o.suite = v;
    } else {
      throw ArgumentError("sweep: unknown key '" + key + "'");
    }
  }
}

// One headline row per (estimand section, p).
Records run_sweep(const Opts& o) {
  if (o.config.empty()) throw ArgumentError("sweep: --config is required");
  std::ifstream in(o.config);
  if (!in) throw ArgumentError("sweep: cannot read --config " + o.config);
  const ExperimentFile f = parse_experiment_file(in);
  if (f.sections.empty()) throw ArgumentError("sweep: config has no [estimand] sections");
  Records rs;
  for (std::size_t s = 0; s < f.sections.size(); ++s) {
    const std::string& name = f.sections[s].first;
    const auto it = estimands().find(name);
    if (it == estimands().end()) throw ArgumentError("sweep: unknown estimand section [" + name + "]");
    const auto kv = f.merged(s);
    if (!kv.count("p")) throw ArgumentError("sweep: section [" + name + "] has no p list");
    for (const double p : parse_number_list(kv.at("p"))) {
      Opts q = o;
      apply_keys(q, kv);
      q.p = p;
      std::cout << "[" << name << "] ";
      const auto t0 = std::chrono::steady_clock::now();
      Records one = it->second(q);
      if (one.empty()) throw ArgumentError("sweep: estimand " + name + " produced no rows");
      one.front().wall_time = seconds_since(t0);
      rs.push_back(one.front());
    }
  }
  return rs;
}

void write_output(const Opts& o, const Records& rs) {
  if (o.out.empty() || rs.empty()) return;
  std::ofstream f(o.out);
  if (!f) throw ArgumentError("cannot write --out " + o.out);
  if (o.format == "json")
    f << to_json(rs).dump(2) << "\n";
  else
    write_csv(f, rs);
  std::cout << "wrote " << rs.size() << " rows to " << o.out << "\n";
}

void add_common(CLI::App* sub, Opts& o) {
  sub->add_option("--p", o.p, "site occupation probability (blue)")->capture_default_str();
  sub->add_option("--seed", o.seed, "master seed")->capture_default_str();
  sub->add_option("--samples", o.samples, "Monte Carlo samples")->capture_default_str()->check(CLI::PositiveNumber);
  sub->add_option("--threads", o.threads, "worker threads (results do not depend on it)")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  sub->add_option("--out", o.out, "data file");
  sub->add_option("--format", o.format, "data format")->capture_default_str()->check(CLI::IsMember({"csv", "json"}));
}

}  // namespace

int main(int argc, char** argv) {
  std::cout << std::setprecision(10);
  CLI::App app{"Bernoulli first-passage percolation on the triangular lattice"};
  app.require_subcommand(1);
  std::map<std::string, Opts> opts;
  std::map<std::string, Runner> runners = estimands();
  runners["sample"] = run_sample;
  runners["sweep"] = run_sweep;

  auto sub = [&](const std::string& name, const std::string& help) {
    CLI::App* s = app.add_subcommand(name, help);
    add_common(s, opts[name]);
    return s;
  };

  {
    Opts& o = opts["sample"];
    auto* s = sub("sample", "dump a sampled configuration (x,y,blue)");
    s->add_option("--n", o.n, "half-width of the square window")->capture_default_str();
  }
  {
    Opts& o = opts["verify-duality"];
    o.samples = 10000;
    auto* s = sub("verify-duality", "passage time versus disjoint yellow separators (quads, circuits, strip)");
    s->add_option("--suite", o.suite, "quad, circuit, strip or all")->capture_default_str();
  }
  {
    Opts& o = opts["estimate-mu"];
    auto* s = sub("estimate-mu", "time constant along a direction");
    s->add_option("--n", o.n, "largest rung")->capture_default_str();
    s->add_option("--theta", o.theta, "direction angle")->capture_default_str();
    s->add_option("--ladder", o.ladder, "comma-separated rungs (default n/2,n)");
    s->add_option("--L", o.L, "correlation length for the ladder warning");
  }
  {
    Opts& o = opts["estimate-shape"];
    o.n = 0;
    auto* s = sub("estimate-shape", "anisotropy max/min of mu over K directions");
    s->add_option("--n", o.n, "radius; 0 picks ceil(8 L_eps)")->capture_default_str();
    s->add_option("--K", o.K, "directions")->capture_default_str();
    s->add_option("--eps", o.eps, "crossing level for L_eps when --n is 0")->capture_default_str();
    s->add_option("--L", o.L, "use this L_eps instead of estimating it");
    s->add_option("--bootstrap", o.bootstrap, "bootstrap resamples")->capture_default_str();
    s->add_option("--level", o.level, "interval level")->capture_default_str();
  }
  {
    Opts& o = opts["corr-length"];
    auto* s = sub("corr-length", "L_eps(p), and L(p) from a pi4 table");
    s->add_option("--eps", o.eps, "crossing level")->capture_default_str();
    s->add_option("--table", o.table, "pi4 table CSV (R,mean,stderr,n,seed)");
    s->add_option("--max-R", o.max_R, "search budget")->capture_default_str();
  }
  {
    Opts& o = opts["arm-prob"];
    auto* s = sub("arm-prob", "arm event probability in an annulus");
    s->add_option("--r", o.r, "inner radius")->capture_default_str();
    s->add_option("--R", o.R, "outer radius")->capture_default_str();
    s->add_option("--k", o.k, "number of arms")->capture_default_str();
    s->add_option("--kind", o.kind, "alternating or mono")->capture_default_str();
    s->add_option("--color", o.color, "arm colour for mono")->capture_default_str();
    s->add_option("--half-plane", o.half_plane, "restrict arms to a half-plane at this angle");
  }
  {
    Opts& o = opts["crossing"];
    auto* s = sub("crossing", "blue left-right crossing probability of [0,R]^2");
    s->add_option("--R", o.R, "box size")->capture_default_str();
  }
  {
    Opts& o = opts["pi4-table"];
    auto* s = sub("pi4-table", "four-arm probabilities at p = 1/2");
    s->add_option("--radii", o.radii, "comma-separated radii")->capture_default_str();
    s->add_option("--table-out", o.table_out, "write the table CSV here");
  }
  {
    Opts& o = opts["ccd"];
    auto* s = sub("ccd", "L_eps(p) * mu(p)");
    s->add_option("--eps", o.eps, "crossing level")->capture_default_str();
    s->add_option("--max-R", o.max_R, "search budget")->capture_default_str();
  }
  {
    Opts& o = opts["fit-exponent"];
    auto* s = sub("fit-exponent", "slope of log L_eps against log 1/(1/2 - p)");
    s->add_option("--ps", o.ps, "comma-separated p values")->capture_default_str();
    s->add_option("--eps", o.eps, "crossing level")->capture_default_str();
    s->add_option("--bootstrap", o.bootstrap, "bootstrap resamples")->capture_default_str();
    s->add_option("--level", o.level, "interval level")->capture_default_str();
    s->add_option("--max-R", o.max_R, "search budget")->capture_default_str();
  }
  {
    Opts& o = opts["good-bonds"];
    o.eps = 0.3;
    auto* s = sub("good-bonds", "fraction of renormalized bonds with a fast connecting path");
    s->add_option("--N", o.N, "bond length in units of L")->capture_default_str();
    s->add_option("--eps", o.eps, "slack per unit length")->capture_default_str();
    s->add_option("--nu", o.nu, "time constant per unit L (default: estimated L_eps * mu)");
    s->add_option("--L", o.L, "length unit (default: estimated L_eps)");
  }
  {
    Opts& o = opts["sweep"];
    auto* s = sub("sweep", "run estimands over a p ladder from a config file");
    s->add_option("--config", o.config, "key = value file with [estimand] sections")->required();
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  for (CLI::App* s : app.get_subcommands()) {
    const std::string name = s->get_name();
    const Opts& o = opts.at(name);
    try {
      const auto t0 = std::chrono::steady_clock::now();
      Records rs = runners.at(name)(o);
      if (name != "sweep") {
        const double wt = seconds_since(t0);
        for (auto& r : rs) r.wall_time = wt;
      }
      write_output(o, rs);
    } catch (const BudgetError& e) {
      std::cerr << "error: " << e.what() << "\n";
      return 2;
    } catch (const WindowError& e) {
      std::cerr << "error: " << e.what() << "\n";
      return 2;
    } catch (const CapacityError& e) {
      std::cerr << "error: " << e.what() << "\n";
      return 2;
    } catch (const RangeError& e) {
      std::cerr << "error: " << e.what() << "\n";
      return 2;
    } catch (const std::exception& e) {
      std::cerr << "error: " << e.what() << "\n";
      return 1;
    }
  }
  return g_status;
}
