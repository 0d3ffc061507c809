#include "gslab/scenario.hpp"

#include <algorithm>
#include <cctype>
#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <limits>
#include <random>
#include <sstream>

#include "gslab/classify.hpp"
#include "gslab/csv.hpp"
#include "gslab/error.hpp"
#include "gslab/exactform.hpp"
#include "gslab/focksim.hpp"
#include "gslab/groundstate.hpp"
#include "gslab/kernels.hpp"
#include "gslab/numeric.hpp"
#include "gslab/testfunctions.hpp"
#include "gslab/witness.hpp"

namespace gslab {

namespace fs = std::filesystem;

namespace {

using Defaults = std::map<std::string, std::string>;

const Defaults kTrapKeys = {
    {"trap", "harmonic"}, {"frequency", "1"}, {"half_width", "4"}, {"resolution", "2048"}, {"cubic", "0.2"},
};

Defaults with_trap(Defaults d) {
  d.insert(kTrapKeys.begin(), kTrapKeys.end());
  return d;
}

const std::map<std::string, Defaults>& all_defaults() {
  static const std::map<std::string, Defaults> table = {
      {"ground-state", with_trap({{"radius", "6"}, {"points", "1201"}})},
      {"resolvent",
       {{"n_list", "0, 1, 10, 100, 1000, 10000, 100000"},
        {"p_list", "0, 0.01, 0.1, 0.5, 0.9, 1"},
        {"mu_list", "0.5, 1, 2"}}},
      {"limit",
       {{"nu_list", "0.1, 0.5, 1, 2, 5, 10"},
        {"mu_list", "0.5, 1, 2"},
        {"frequency", "1"},
        {"sigma", "1"},
        {"region", "-1, 1"},
        {"points", "2001"},
        {"conv_mu", "1"},
        {"conv_n_list", "100, 1000, 10000, 100000"}}},
      {"classify", with_trap({{"kappa", "0.5"},
                              {"sigma", "1"},
                              {"function", "indicator"},
                              {"region", "0, 1"},
                              {"order", "0"},
                              {"points", "2001"},
                              {"n_min", "100"},
                              {"n_max", "1e8"},
                              {"n_count", "13"}})},
      {"onset", with_trap({{"region", "-1, 1"},
                           {"sigma", "1"},
                           {"kappa", "1"},
                           {"lambda_min", "1e-3"},
                           {"lambda_max", "1e-1"},
                           {"lambda_count", "9"},
                           {"n_list", "1, 10, 100, 1000, 10000, 100000, 1000000"}})},
      {"split",
       {{"frequency", "1"}, {"n", "100"}, {"k_list", "0, 25, 50, 75, 100"}, {"lambda", "0.1"}, {"region", "-1, 1"}}},
      {"fock-verify",
       {{"oracle_n_max", "8"},
        {"p_list", "0, 0.25, 0.5, 0.75, 1"},
        {"mu_list", "0.5, 1, 2"},
        {"max_particles", "24"},
        {"buffer", "8"},
        {"eps_list", "0.1, 0.02, 0.004"},
        {"lambda_list", "0.5, 1, 2"},
        {"g_mode", "0.6, 0.8"},
        {"f_mode", "1, 0"},
        {"chain_p", "0.4"},
        {"chain_n_list", "1000, 2000, 5000, 10000, 100000, 1000000"},
        {"chain_eps_list", "1, 0.1, 0.01"},
        {"score_mu_list", "1, 10, 100, 1000"}}},
      {"witness",
       {{"chi", "ln"},
        {"delta", "0.5"},
        {"k_max", "12"},
        {"schedule", "power-of-cube"},
        {"explicit", ""},
        {"support", "0"},
        {"max_bits", "1048576"}}},
  };
  return table;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_list(const std::string& value) {
  std::vector<std::string> out;
  if (trim(value).empty()) return out;
  std::string item;
  std::istringstream is(value);
  while (std::getline(is, item, ',')) out.push_back(trim(item));
  if (value.back() == ',') out.emplace_back();
  return out;
}

class Params {
 public:
  Params(const Defaults& defaults, const std::map<std::string, std::string>& given)
      : values_(defaults) {
    for (const auto& [k, v] : given) {
      if (values_.count(k) > 0) values_[k] = v;
    }
  }

  std::string text(const std::string& key) const { return values_.at(key); }

  double real(const std::string& key) const { return parse_real(key, text(key)); }

  std::vector<double> reals(const std::string& key) const {
    std::vector<double> out;
    for (const auto& item : split_list(text(key))) out.push_back(parse_real(key, item));
    return out;
  }

  std::uint64_t count(const std::string& key) const { return parse_count(key, text(key)); }

  std::vector<std::uint64_t> counts(const std::string& key) const {
    std::vector<std::uint64_t> out;
    for (const auto& item : split_list(text(key))) out.push_back(parse_count(key, item));
    return out;
  }

  int small(const std::string& key) const {
    const auto v = count(key);
    if (v > 1'000'000'000) throw ValidationError("config: '" + key + "' is too large");
    return static_cast<int>(v);
  }

  RegionSpec region(const std::string& key) const {
    const auto v = reals(key);
    if (v.size() != 2 || !(v[0] < v[1])) {
      throw ValidationError("config: '" + key + "' must be two increasing numbers 'lo, hi'");
    }
    return RegionSpec::interval(v[0], v[1]);
  }

 private:
  static double parse_real(const std::string& key, const std::string& item) {
    const char* begin = item.c_str();
    char* end = nullptr;
    const double v = std::strtod(begin, &end);
    if (item.empty() || *end != '\0' || !std::isfinite(v)) {
      throw ValidationError("config: '" + key + "' expects a finite number, got '" + item + "'");
    }
    return v;
  }

  static std::uint64_t parse_count(const std::string& key, const std::string& item) {
    const double v = parse_real(key, item);
    if (v < 0.0 || v != std::floor(v) || v > 9007199254740992.0) {
      throw ValidationError("config: '" + key + "' expects a nonnegative integer, got '" + item + "'");
    }
    return static_cast<std::uint64_t>(v);
  }

  Defaults values_;
};

struct Context {
  const Params& params;
  std::uint64_t seed;
  const fs::path& out_dir;
  std::vector<fs::path>& files;

  void write(const std::string& name, const std::function<void(std::ostream&)>& body) const {
    const fs::path path = out_dir / name;
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot open '" + path.string() + "' for writing");
    body(out);
    out.flush();
    if (!out) throw Error("failed writing '" + path.string() + "'");
    files.push_back(path);
  }
};

void write_one_table(const Context& ctx, const std::string& name, const Table& table) {
  ctx.write(name, [&](std::ostream& os) { write_table(os, table); });
}

std::string flag(bool b) { return b ? "1" : "0"; }

GroundStateModel make_ground_state(const Params& p) {
  const std::string trap = p.text("trap");
  const double w = p.real("frequency");
  if (!(w > 0.0)) throw ValidationError("config: 'frequency' must be positive");
  if (trap == "harmonic") return solve_ground_state(TrapPotential::harmonic(1, w));
  const double half = p.real("half_width");
  const auto resolution = static_cast<std::size_t>(p.count("resolution"));
  if (!(half > 0.0)) throw ValidationError("config: 'half_width' must be positive");
  if (resolution < 128) throw ValidationError("config: 'resolution' must be >= 128");
  if (trap == "harmonic-grid") {
    return solve_ground_state(
        TrapPotential::sampled_from([w](double x) { return w * w * x * x; }, half, resolution),
        resolution);
  }
  if (trap == "asymmetric") {
    const double c = p.real("cubic");
    return solve_ground_state(
        TrapPotential::sampled_from([w, c](double x) { return w * w * x * x + c * x * x * x; }, half,
                                    resolution),
        resolution);
  }
  throw ValidationError("config: 'trap' must be harmonic, harmonic-grid or asymmetric");
}

GroundStateModel harmonic_from(const Params& p) {
  const double w = p.real("frequency");
  if (!(w > 0.0)) throw ValidationError("config: 'frequency' must be positive");
  return solve_ground_state(TrapPotential::harmonic(1, w));
}

void run_ground_state(const Context& ctx) {
  const auto& p = ctx.params;
  const auto g = make_ground_state(p);
  const double radius = p.real("radius") / std::sqrt(p.real("frequency"));
  ctx.write("ground_state.csv", [&](std::ostream& os) {
    write_ground_state(os, g, radius, static_cast<std::size_t>(p.count("points")));
  });
  Table summary({"energy", "g0", "refinement_delta", "edge_amplitude", "inverse_iterations"});
  const auto& d = g.diagnostics();
  summary.add_numeric_row({g.ground_energy(), g.at_origin(), d.refinement_delta, d.edge_amplitude,
                           static_cast<double>(d.inverse_iterations)});
  write_one_table(ctx, "ground_state_summary.csv", summary);
}

void run_resolvent(const Context& ctx) {
  const auto& p = ctx.params;
  std::vector<ResolventQuery> queries;
  for (auto n : p.counts("n_list")) {
    for (double prob : p.reals("p_list")) {
      for (double mu : p.reals("mu_list")) queries.push_back({n, prob, mu});
    }
  }
  const auto omega = resolvent_batch(queries);
  Table table({"n", "p", "mu", "omega", "regular_bound", "singular_bound"});
  for (std::size_t i = 0; i < queries.size(); ++i) {
    const auto& q = queries[i];
    const double singular =
        q.p > 0.0 ? resolvent_bounds(q).singular_bound : std::numeric_limits<double>::quiet_NaN();
    table.add_numeric_row({static_cast<double>(q.n), q.p, q.mu, omega[i], regular_bound(q), singular});
  }
  write_one_table(ctx, "resolvent.csv", table);
}

void run_limit(const Context& ctx) {
  const auto& p = ctx.params;
  std::vector<LimitQuery> queries;
  for (double nu : p.reals("nu_list")) {
    for (double mu : p.reals("mu_list")) queries.push_back({nu, mu});
  }
  const auto values = poisson_batch(queries);
  Table table({"nu", "mu", "series", "integral", "difference"});
  for (std::size_t i = 0; i < queries.size(); ++i) {
    table.add_numeric_row({queries[i].nu, queries[i].mu, values[i].series_value, values[i].integral_value,
                           std::abs(values[i].series_value - values[i].integral_value)});
  }
  write_one_table(ctx, "limit.csv", table);

  const auto g = harmonic_from(p);
  const auto f = normalized_indicator(p.region("region"), static_cast<std::size_t>(p.count("points")));
  const auto rows = finite_n_limit_convergence(g, f, ScalingFamily(p.real("sigma"), 1.0), p.real("conv_mu"),
                                               p.counts("conv_n_list"));
  Table conv({"n", "lambda", "p", "exact", "limit", "gap"});
  for (const auto& r : rows) conv.add_numeric_row({r.n, r.lambda, r.p, r.exact, r.limit, r.gap});
  write_one_table(ctx, "limit_convergence.csv", conv);
}

SampledWaveFunction make_test_function(const Context& ctx) {
  const auto& p = ctx.params;
  const auto region = p.region("region");
  const auto points = static_cast<std::size_t>(p.count("points"));
  const std::string kind = p.text("function");
  if (kind == "indicator") return normalized_indicator(region, points);
  if (kind == "moment") {
    const auto& a = region.axis(0);
    if (a.lo != -a.hi) throw ValidationError("config: function = moment needs a symmetric region");
    return exact_moment_function(a.hi, p.small("order"), points);
  }
  if (kind == "bump") {
    std::mt19937_64 rng(ctx.seed);
    return random_smooth_bump(region, rng, points);
  }
  throw ValidationError("config: 'function' must be indicator, moment or bump");
}

void run_classify(const Context& ctx) {
  const auto& p = ctx.params;
  const auto g = make_ground_state(p);
  const auto f = make_test_function(ctx);
  const ScalingFamily family(p.real("sigma"), p.real("kappa"));
  const auto n_count = static_cast<std::size_t>(p.count("n_count"));
  if (n_count < 2) throw ValidationError("config: 'n_count' must be >= 2");
  const auto n_grid = logspace(p.real("n_min"), p.real("n_max"), n_count);
  const auto report = classify_function(g, f, family, n_grid);
  ctx.write("classify.csv", [&](std::ostream& os) { write_classification(os, report); });

  if (family.kappa() > g.dimension()) {
    const auto basis = condensate_space_basis(g, f.region(), family.kappa(), f.grid().size());
    Table table({"index", "degree", "overlap"});
    const auto& w = f.grid().weights();
    for (std::size_t i = 0; i < basis.functions.size(); ++i) {
      CompensatedSum re;
      CompensatedSum im;
      const auto b = basis.functions[i].values();
      const auto v = f.values();
      for (std::size_t j = 0; j < w.size(); ++j) {
        const Complex t = w[j] * std::conj(b[j]) * v[j];
        re.add(t.real());
        im.add(t.imag());
      }
      const double overlap = f.l2norm() > 0.0 ? std::abs(Complex(re.value(), im.value())) / f.l2norm() : 0.0;
      table.add_numeric_row({static_cast<double>(i), static_cast<double>(basis.degrees[i]), overlap});
    }
    write_one_table(ctx, "classify_basis.csv", table);
  }
}

void run_onset(const Context& ctx) {
  const auto& p = ctx.params;
  const auto g = make_ground_state(p);
  const auto region = p.region("region");
  const auto lambda_count = static_cast<std::size_t>(p.count("lambda_count"));
  if (lambda_count < 2) throw ValidationError("config: 'lambda_count' must be >= 2");
  const auto exponent =
      critical_exponent(g, region, logspace(p.real("lambda_min"), p.real("lambda_max"), lambda_count));
  const auto report =
      onset_report(g, region, ScalingFamily(p.real("sigma"), p.real("kappa")), p.counts("n_list"), exponent);
  Table rows({"n", "lambda", "condensate", "regular"});
  for (const auto& r : report.rows) {
    rows.add_numeric_row({static_cast<double>(r.n), r.lambda, r.condensate, r.regular});
  }
  write_one_table(ctx, "onset.csv", rows);
  Table summary({"l", "c_O", "slope", "snap_residual", "fit_rms", "m_R", "n_c"});
  summary.add_row({std::to_string(exponent.l), format_real(exponent.c_O), format_real(exponent.slope),
                   format_real(exponent.snap_residual), format_real(exponent.fit_rms), format_real(report.m_R),
                   report.n_c ? std::to_string(*report.n_c) : "none"});
  write_one_table(ctx, "critical_exponent.csv", summary);
}

void run_split(const Context& ctx) {
  const auto& p = ctx.params;
  const auto g = harmonic_from(p);
  const auto region = p.region("region");
  const auto n = p.count("n");
  const double lambda = p.real("lambda");
  Table table({"k", "condensate", "regular"});
  for (auto k : p.counts("k_list")) {
    table.add_numeric_row(
        {static_cast<double>(k),
         split_state_expectation(g, n, k, lambda, region, SplitObservable::CondensateNumber),
         split_state_expectation(g, n, k, lambda, region, SplitObservable::RegularNumber)});
  }
  write_one_table(ctx, "split.csv", table);
}

ModeVector mode_from(const Params& p, const std::string& key) {
  const auto v = p.reals(key);
  if (v.empty()) throw ValidationError("config: '" + key + "' needs at least one component");
  ModeVector m(static_cast<Eigen::Index>(v.size()));
  for (std::size_t i = 0; i < v.size(); ++i) m(static_cast<Eigen::Index>(i)) = v[i];
  return m;
}

void run_fock_verify(const Context& ctx) {
  const auto& p = ctx.params;

  const int oracle_max = p.small("oracle_n_max");
  const TruncatedFock oracle_space(2, oracle_max);
  Table oracle({"n", "p", "mu", "exact", "brute", "difference"});
  for (int n = 0; n <= oracle_max; ++n) {
    for (double prob : p.reals("p_list")) {
      if (!(prob >= 0.0 && prob <= 1.0)) throw ValidationError("config: 'p_list' entries must lie in [0, 1]");
      ModeVector g(2);
      g << 1.0, 0.0;
      ModeVector f(2);
      f << std::sqrt(prob), std::sqrt(1.0 - prob);
      for (double mu : p.reals("mu_list")) {
        const double exact = resolvent_expectation({static_cast<std::uint64_t>(n), prob, mu});
        const double brute = brute_resolvent(oracle_space, g, f, n, mu);
        oracle.add_numeric_row({static_cast<double>(n), prob, mu, exact, brute, std::abs(exact - brute)});
      }
    }
  }
  write_one_table(ctx, "fock_oracle.csv", oracle);

  const ModeVector g = mode_from(p, "g_mode");
  ModeVector f = mode_from(p, "f_mode");
  if (g.size() != f.size()) throw ValidationError("config: 'g_mode' and 'f_mode' lengths differ");
  if (!(f.norm() > 0.0)) throw ValidationError("config: 'f_mode' must be nonzero");
  f /= f.norm();
  const auto ops = build_operators(TruncatedFock(static_cast<int>(g.size()), p.small("max_particles")));
  const int buffer = p.small("buffer");
  Table comm({"kind", "eps", "lambda", "observed", "bound", "ok"});
  for (double eps : p.reals("eps_list")) {
    const auto field = commutator_bound_check(ops, CommutatorKind::Field, 1.0, g, f, eps, buffer);
    comm.add_row({"field", format_real(eps), "nan", format_real(field.observed), format_real(field.bound),
                  flag(field.margin_ok)});
    for (double lambda : p.reals("lambda_list")) {
      const auto r = commutator_bound_check(ops, CommutatorKind::Resolvent, lambda, g, f, eps, buffer);
      comm.add_row({"resolvent", format_real(eps), format_real(lambda), format_real(r.observed),
                    format_real(r.bound), flag(r.margin_ok)});
    }
  }
  write_one_table(ctx, "fock_commutator.csv", comm);

  const double chain_p = p.real("chain_p");
  std::vector<OccupationSample> sequence;
  for (auto n : p.counts("chain_n_list")) sequence.push_back({n, chain_p * static_cast<double>(n)});
  const auto growing = growing_condensate_margin(sequence, chain_p, p.reals("chain_eps_list"));
  Table chain({"n", "eps", "d_eps", "d_eps_bound", "tail_mass", "ok"});
  for (const auto& r : growing.chain) {
    chain.add_row({std::to_string(r.n), format_real(r.eps), format_real(r.d_eps), format_real(r.d_eps_bound),
                   format_real(r.tail_mass), flag(r.ok)});
  }
  write_one_table(ctx, "fock_growing.csv", chain);

  double limsup = 0.0;
  for (std::size_t i = sequence.size() / 2; i < sequence.size(); ++i) {
    const auto score =
        proper_condensate_score(binomial_state_expectation(sequence[i].n, chain_p), p.reals("score_mu_list"));
    limsup = std::max(limsup, score.tail);
  }
  Table summary({"delta_hat", "chain_ok", "limsup_score"});
  summary.add_row({format_real(growing.delta_hat), flag(growing.chain_ok), format_real(limsup)});
  write_one_table(ctx, "fock_growing_summary.csv", summary);
}

void run_witness(const Context& ctx) {
  const auto& p = ctx.params;
  WitnessSpec spec;
  spec.chi = parse_chi(p.text("chi"));
  spec.delta = p.real("delta");
  spec.k_max = p.small("k_max");
  spec.support = p.small("support");
  spec.max_bits = p.count("max_bits");
  const std::string schedule = p.text("schedule");
  if (schedule == "power-of-cube") {
    spec.schedule = ScheduleKind::PowerOfCube;
  } else if (schedule == "auto") {
    spec.schedule = ScheduleKind::Auto;
  } else if (schedule == "explicit") {
    spec.schedule = ScheduleKind::Explicit;
    for (const auto& item : split_list(p.text("explicit"))) {
      if (item.empty() || !std::all_of(item.begin(), item.end(), [](unsigned char c) { return std::isdigit(c); })) {
        throw ValidationError("config: 'explicit' expects decimal integers, got '" + item + "'");
      }
      spec.explicit_schedule.emplace_back(item);
    }
  } else {
    throw ValidationError("config: 'schedule' must be power-of-cube, auto or explicit");
  }
  const auto result = almost_macroscopic_witness(spec);
  Table table({"k", "n_k", "chi", "weight", "lower_bound", "meets_cube_target"});
  for (const auto& r : result.rows) {
    table.add_row({std::to_string(r.k), r.n_k.str(), format_real(r.chi), format_real(r.weight),
                   format_real(r.lower_bound), flag(r.meets_cube_target)});
  }
  write_one_table(ctx, "witness.csv", table);
  Table summary({"chi", "strictly_increasing"});
  summary.add_row({chi_name(spec.chi), flag(result.strictly_increasing)});
  write_one_table(ctx, "witness_summary.csv", summary);
}

using Runner = void (*)(const Context&);

const std::map<std::string, Runner>& runners() {
  static const std::map<std::string, Runner> table = {
      {"ground-state", run_ground_state}, {"resolvent", run_resolvent}, {"limit", run_limit},
      {"classify", run_classify},         {"onset", run_onset},         {"split", run_split},
      {"fock-verify", run_fock_verify},   {"witness", run_witness},
  };
  return table;
}

bool valid_key(const std::string& key) {
  if (key.empty() || !(std::islower(static_cast<unsigned char>(key[0])) || key[0] == '_')) return false;
  return std::all_of(key.begin(), key.end(), [](unsigned char c) {
    return std::islower(c) || std::isdigit(c) || c == '_';
  });
}

}  // namespace

const std::vector<std::string>& scenario_names() {
  static const std::vector<std::string> names = {"ground-state", "resolvent", "limit",       "classify",
                                                 "onset",        "split",     "fock-verify", "witness"};
  return names;
}

const std::map<std::string, std::string>& scenario_defaults(const std::string& name) {
  const auto& table = all_defaults();
  const auto it = table.find(name);
  if (it == table.end()) throw ValidationError("unknown scenario '" + name + "'");
  return it->second;
}

ScenarioConfig parse_config(std::istream& in) {
  ScenarioConfig config;
  std::string raw;
  int line_no = 0;
  std::map<std::string, bool> seen;
  while (std::getline(in, raw)) {
    ++line_no;
    const auto hash = raw.find('#');
    const std::string line = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (line.empty()) continue;
    const std::string where = "config line " + std::to_string(line_no) + ": ";
    if (line.front() == '[') throw ValidationError(where + "sections are not supported");
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ValidationError(where + "expected 'key = value'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (!valid_key(key)) throw ValidationError(where + "invalid key '" + key + "'");
    if (value.find_first_of("{}[]=") != std::string::npos) {
      throw ValidationError(where + "nested or structured values are not supported");
    }
    if (seen[key]) throw ValidationError(where + "duplicate key '" + key + "'");
    seen[key] = true;
    if (key == "scenario") {
      config.scenario = value == "all" ? "" : value;
    } else if (key == "seed") {
      char* end = nullptr;
      errno = 0;
      const auto v = std::strtoull(value.c_str(), &end, 10);
      if (value.empty() || *end != '\0' || value.front() == '-' || errno == ERANGE) {
        throw ValidationError(where + "seed must be an unsigned 64-bit integer");
      }
      config.seed = v;
    } else if (key == "out") {
      if (value.empty()) throw ValidationError(where + "out must be a path");
      config.out_dir = value;
    } else {
      config.params[key] = value;
    }
  }
  return config;
}

ScenarioConfig load_config(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot read config '" + path.string() + "'");
  return parse_config(in);
}

std::vector<fs::path> run_scenario(const ScenarioConfig& config) {
  std::vector<std::string> selected;
  if (config.scenario.empty()) {
    selected = scenario_names();
  } else {
    scenario_defaults(config.scenario);
    selected = {config.scenario};
  }
  for (const auto& [key, value] : config.params) {
    const bool known = std::any_of(selected.begin(), selected.end(), [&key](const std::string& s) {
      return scenario_defaults(s).count(key) > 0;
    });
    if (!known) {
      throw ValidationError("unknown key '" + key + "'" +
                            (config.scenario.empty() ? "" : " for scenario '" + config.scenario + "'"));
    }
  }
  fs::create_directories(config.out_dir);
  std::vector<fs::path> files;
  for (const auto& name : selected) {
    const Params params(scenario_defaults(name), config.params);
    runners().at(name)(Context{params, config.seed, config.out_dir, files});
  }
  return files;
}

}  // namespace gslab
