#include "hsl/run.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <iomanip>
#include <limits>
#include <random>
#include <sstream>

#include "hsl/pick.hpp"

namespace hsl {

std::string to_string(Command c) {
  switch (c) {
    case Command::integrals:
      return "integrals";
    case Command::pick:
      return "pick";
    case Command::symbol:
      return "symbol";
    case Command::verify_symbol:
      return "verify-symbol";
    case Command::gram:
      return "gram";
    case Command::positivity:
      return "positivity";
    case Command::classify:
      return "classify";
    case Command::example_t:
      return "example-t";
    case Command::simulate:
      return "simulate";
  }
  return "integrals";
}

const std::map<std::string, double>& default_tolerances() {
  static const std::map<std::string, double> table{
      {"integrals", 1e-8},       {"pick_closed_form", 1e-8}, {"pick_symmetry", 1e-9}, {"kappa_ratio", 1e-8},
      {"beta", 1e-7},            {"unitary_closed", 1e-10}, {"symbol", 1e-8},        {"verify", 1e-6},
      {"gram_psd", 1e-9},        {"classify", 1e-8},        {"complex_structure", 1e-9},
      {"exact", 1e-12},          {"sharp_stability", 1e-10}, {"rp", 1e-6},          {"monotonicity", 1e-6},
      {"rp_witness", 1e-2},      {"quad_rel", 1e-10},       {"quad_abs", 1e-12},
  };
  return table;
}

void apply_tolerance_override(RunConfig& config, const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos) throw ConfigError("tolerances", "override must read key=value: " + assignment);
  const std::string key = assignment.substr(0, eq);
  const std::string path = "tolerances." + key;
  if (!default_tolerances().count(key)) throw ConfigError(path, "unknown tolerance key");
  double value = 0.0;
  try {
    std::size_t used = 0;
    value = std::stod(assignment.substr(eq + 1), &used);
    if (used != assignment.size() - eq - 1) throw std::invalid_argument("trailing characters");
  } catch (const std::exception&) {
    throw ConfigError(path, "not a number: " + assignment.substr(eq + 1));
  }
  if (!(value > 0.0)) throw ConfigError(path, "tolerance must be positive");
  config.tolerances[key] = value;
}

namespace {

// ---------------------------------------------------------------- JSON input

const Json& require(const Json& j, const std::string& key, const std::string& path) {
  if (!j.is_object() || !j.contains(key)) throw ConfigError(path + "." + key, "missing field");
  return j.at(key);
}

double number(const Json& j, const std::string& path) {
  if (!j.is_number()) throw ConfigError(path, "expected a number");
  return j.get<double>();
}

int integer(const Json& j, const std::string& path) {
  if (!j.is_number_integer()) throw ConfigError(path, "expected an integer");
  return j.get<int>();
}

std::vector<double> numbers(const Json& j, const std::string& path) {
  if (!j.is_array()) throw ConfigError(path, "expected an array of numbers");
  std::vector<double> out;
  for (std::size_t k = 0; k < j.size(); ++k) out.push_back(number(j[k], path + "[" + std::to_string(k) + "]"));
  return out;
}

Matrix real_matrix(const Json& j, const std::string& path, std::optional<int> dim = std::nullopt) {
  if (!j.is_array() || j.empty()) throw ConfigError(path, "expected a nonempty square array of rows");
  const auto n = static_cast<Eigen::Index>(j.size());
  if (dim && n != *dim) throw ConfigError(path, "expected " + std::to_string(*dim) + " rows");
  Matrix m(n, n);
  for (Eigen::Index r = 0; r < n; ++r) {
    const std::string row_path = path + "[" + std::to_string(r) + "]";
    const std::vector<double> row = numbers(j[static_cast<std::size_t>(r)], row_path);
    if (static_cast<Eigen::Index>(row.size()) != n) throw ConfigError(row_path, "row length differs from row count");
    for (Eigen::Index c = 0; c < n; ++c) m(r, c) = row[static_cast<std::size_t>(c)];
  }
  return m;
}

Command parse_command(const Json& j) {
  if (!j.is_string()) throw ConfigError("command", "expected a string");
  const std::string s = j.get<std::string>();
  for (Command c : {Command::integrals, Command::pick, Command::symbol, Command::verify_symbol, Command::gram,
                    Command::positivity, Command::classify, Command::example_t, Command::simulate}) {
    if (to_string(c) == s) return c;
  }
  throw ConfigError("command", "unknown command " + s);
}

// --------------------------------------------------------------- JSON output

Json matrix_json(const Matrix& m) {
  Json re = Json::array();
  Json im = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    Json rr = Json::array();
    Json ri = Json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      rr.push_back(m(r, c).real());
      ri.push_back(m(r, c).imag());
    }
    re.push_back(rr);
    im.push_back(ri);
  }
  return {{"re", re}, {"im", im}};
}

Json finite_or_null(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

std::string fmt(double v) {
  std::ostringstream os;
  os << std::setprecision(17) << v;
  return os.str();
}

// Header "x,<prefix>_jk_re,<prefix>_jk_im,..." and one row per x.
void csv_header(std::ostringstream& os, const std::vector<std::string>& prefixes, int dim) {
  os << "x";
  for (const auto& p : prefixes) {
    for (int r = 0; r < dim; ++r)
      for (int c = 0; c < dim; ++c) os << ',' << p << '_' << r + 1 << c + 1 << "_re," << p << '_' << r + 1 << c + 1 << "_im";
  }
  os << '\n';
}

void csv_matrix(std::ostringstream& os, const Matrix& m) {
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = 0; c < m.cols(); ++c) os << ',' << fmt(m(r, c).real()) << ',' << fmt(m(r, c).imag());
}

// ----------------------------------------------------------------- recording

class Recorder {
 public:
  void check(const std::string& name, double value, double threshold, bool pass) {
    checks_.push_back({{"name", name}, {"value", finite_or_null(value)}, {"threshold", finite_or_null(threshold)}, {"pass", pass}});
    ok_ = ok_ && pass;
  }
  void at_most(const std::string& name, double value, double threshold) {
    check(name, value, threshold, value <= threshold);
  }
  void at_least(const std::string& name, double value, double threshold) {
    check(name, value, threshold, value >= threshold);
  }
  void failure(const std::string& name, const std::string& message) {
    checks_.push_back({{"name", name}, {"error", message}, {"pass", false}});
    ok_ = false;
  }
  void evidence(const std::string& name, double value, double threshold) {
    evidence_.push_back({{"name", name}, {"value", finite_or_null(value)}, {"threshold", threshold}});
  }
  void evidence(const std::vector<Evidence>& list) {
    for (const auto& e : list) evidence(e.name, e.value, e.threshold);
  }

  bool ok() const noexcept { return ok_; }
  const Json& checks() const noexcept { return checks_; }
  const Json& evidence() const noexcept { return evidence_; }

 private:
  Json checks_ = Json::array();
  Json evidence_ = Json::array();
  bool ok_ = true;
};

struct Context {
  explicit Context(const RunConfig& c) : config(c) {}

  const RunConfig& config;
  QuadratureSpec quadrature;
  Recorder rec;
  Json verdicts = Json::object();
  Json data = Json::object();
  std::map<std::string, std::string> csv;

  double tol(const std::string& key) const { return config.tolerances.at(key); }

  const CarlesonMeasure& measure() const {
    if (!config.measure) throw ConfigError("measure", "required by command " + to_string(config.command));
    return *config.measure;
  }

  std::vector<double> x_grid() const {
    const XGridSpec& g = config.x_grid;
    return g.symmetric ? symmetric_log_grid(g.lo, g.hi, g.n) : log_grid(g.lo, g.hi, g.n);
  }
  std::vector<double> positive_grid() const { return log_grid(config.x_grid.lo, config.x_grid.hi, config.x_grid.n); }
};

int symbol_dim(const Context& ctx) {
  const auto& spec = *ctx.config.symbol;
  if (spec.dim) return *spec.dim;
  if (ctx.config.measure) return ctx.config.measure->dim();
  if (spec.name == "example_beta_closed") return 4;
  throw ConfigError("symbol.dim", "missing field");
}

Matrix projection_or_identity(const Context& ctx, int dim) {
  if (ctx.config.projection) return *ctx.config.projection;
  return Matrix::Identity(dim, dim);
}

Symbol unsigned_symbol(const Context& ctx) {
  if (!ctx.config.symbol) throw ConfigError("symbol", "required by command " + to_string(ctx.config.command));
  const SymbolSpec& spec = *ctx.config.symbol;
  const int dim = symbol_dim(ctx);
  if (spec.name == "beta" || spec.name == "i_imag") {
    const CarlesonMeasure& mu = ctx.measure();
    Matrix p = spec.name == "i_imag" ? Matrix::Identity(mu.dim(), mu.dim()) : projection_or_identity(ctx, mu.dim());
    Matrix c = ctx.config.c_block && spec.name == "beta" ? *ctx.config.c_block : Matrix::Zero(mu.dim(), mu.dim());
    try {
      return beta_symbol(mu, ProjectionSpec(p, c), ctx.quadrature);
    } catch (const NotProjection& e) {
      throw ConfigError("projection", e.what());
    } catch (const BadParams& e) {
      throw ConfigError("C", e.what());
    }
  }
  try {
    return builtin_symbol(spec.name, spec.params, dim);
  } catch (const UnknownSymbol& e) {
    throw ConfigError("symbol.name", e.what());
  } catch (const BadParams& e) {
    throw ConfigError("symbol.params", e.what());
  }
}

Symbol make_symbol(const Context& ctx) {
  Symbol h = unsigned_symbol(ctx);
  if (ctx.config.symbol->sign > 0.0) return h;
  return Symbol(h.dim(), [h](double x) -> Matrix { return -h(x); }, "-" + h.name());
}

// -------------------------------------------------------------------- suites

void run_integrals(Context& ctx) {
  const std::vector<double> xs{0.25, 0.5, 1.0, 2.0, 4.0};
  Json rows = Json::array();
  for (const IntegralIdentity& id : integral_identities()) {
    for (double x : xs) {
      const std::string name = "identity_" + id.name + "_x=" + fmt(x);
      try {
        const double value = integrate_halfline<double>([&](double l) { return id.integrand(l, x); }, ctx.quadrature);
        const double reference = id.closed_form(x);
        const double err = std::abs(value - reference) / std::max(1.0, std::abs(reference));
        ctx.rec.at_most(name, err, ctx.tol("integrals"));
        rows.push_back({{"identity", id.name}, {"x", x}, {"value", value}, {"reference", reference}, {"error", err}});
      } catch (const NonConvergence& e) {
        ctx.rec.failure(name, e.what());
      }
    }
  }
  ctx.data["identities"] = rows;
}

void run_pick(Context& ctx) {
  const CarlesonMeasure& mu = ctx.measure();
  const int d = mu.dim();
  double even = 0.0, odd = 0.0, consistency = 0.0;
  double positivity = std::numeric_limits<double>::infinity();
  std::ostringstream csv;
  csv_header(csv, {"r", "i"}, d);
  for (double x : ctx.x_grid()) {
    const PickEvaluation b = pick_boundary(mu, x, ctx.quadrature);
    const Matrix n = pick_n(mu, Complex(x, 0.0), ctx.quadrature);
    consistency = std::max(consistency, spectral_norm(n - (b.r_value + I * b.i_value)));
    positivity = std::min(positivity, hermitian_spectrum((x > 0.0 ? 1.0 : -1.0) * b.i_value, 1e-8)(0));
    if (x > 0.0) {
      const PickEvaluation m = pick_boundary(mu, -x, ctx.quadrature);
      even = std::max(even, spectral_norm(m.r_value - b.r_value));
      odd = std::max(odd, spectral_norm(m.i_value + b.i_value));
    }
    csv << fmt(x);
    csv_matrix(csv, b.r_value);
    csv_matrix(csv, b.i_value);
    csv << '\n';
  }
  ctx.csv["pick.csv"] = csv.str();
  const double tol = ctx.tol("pick_symmetry");
  ctx.rec.at_most("r_even_defect", even, tol);
  ctx.rec.at_most("i_odd_defect", odd, tol);
  ctx.rec.at_least("sgn_i_min_eig", positivity, -tol);
  ctx.rec.at_most("boundary_consistency", consistency, tol);

  // Lebesgue-type measure 2·dλ·1: closed form −(2/π)log(−iz)·1.
  if (mu.has_density() && mu.density()->name == "lebesgue2" && mu.atoms().empty()) {
    const Matrix id = Matrix::Identity(d, d);
    auto closed = [](Complex z) { return -(2.0 / pi) * std::log(-I * z); };
    double err = 0.0;
    for (double x : ctx.x_grid()) err = std::max(err, max_abs(pick_n(mu, Complex(x, 0.0), ctx.quadrature) - closed(x) * id));
    std::mt19937_64 rng(ctx.config.seed);
    std::uniform_real_distribution<double> unit;
    for (int k = 0; k < 50; ++k) {
      const Complex z = std::polar(std::pow(10.0, -2.0 + 4.0 * unit(rng)), pi * unit(rng));
      if (z.imag() <= 0.0) continue;
      err = std::max(err, max_abs(pick_n(mu, z, ctx.quadrature) - closed(z) * id));
    }
    ctx.rec.at_most("closed_form_error", err, ctx.tol("pick_closed_form"));
  }

  if (ctx.config.alpha) {
    const auto z = kappa_grid(ctx.config.x_grid.lo, ctx.config.x_grid.hi, ctx.config.x_grid.n,
                              {0.0, pi / 4.0, pi / 2.0, 3.0 * pi / 4.0, pi});
    const KappaBoundReport k = kappa_bound_check(mu, *ctx.config.alpha, z, ctx.quadrature);
    const double limit = 1.0 + ctx.tol("kappa_ratio");
    ctx.rec.at_most("kappa_i_ratio", k.max_i_ratio, limit);
    ctx.rec.at_most("kappa_r_ratio", k.max_r_ratio, limit);
    ctx.data["kappa"] = {{"alpha", k.alpha}, {"grid_points", z.size()}};
  }
}

void symbol_flags(Context& ctx, Symbol& h, const std::vector<double>& xs, double tol) {
  const CheckResult u = check_unitary(h, xs, tol);
  const CheckResult s = check_sharp(h, xs, tol);
  const CheckResult f = check_flat(h, xs, tol);
  ctx.rec.at_most("unitary_defect", u.max_defect, tol);
  ctx.rec.at_most("sharp_defect", s.max_defect, tol);
  ctx.rec.at_most("flat_defect", f.max_defect, tol);
  ctx.data["flags"] = {{"unitary", u.passed()}, {"sharp_fixed", s.passed()}, {"flat_fixed", f.passed()}};
}

void run_symbol(Context& ctx) {
  Symbol h = make_symbol(ctx);
  const std::vector<double> xs = ctx.x_grid();
  std::ostringstream csv;
  csv_header(csv, {"h"}, h.dim());
  for (double x : xs) {
    csv << fmt(x);
    csv_matrix(csv, h(x));
    csv << '\n';
  }
  ctx.csv["symbol.csv"] = csv.str();
  const double tol = ctx.tol("symbol");
  symbol_flags(ctx, h, xs, tol);
  if (ctx.config.projection) {
    const CheckResult sym = projection_symmetry_check(h, *ctx.config.projection, xs, tol);
    ctx.rec.at_most("projection_symmetry_defect", sym.max_defect, tol);
    if (ctx.config.measure && ctx.config.symbol->name == "beta") {
      ctx.data["off_diagonal_r_sup"] = off_diagonal_r_sup(ctx.measure(), *ctx.config.projection, xs, ctx.quadrature);
    }
  }
}

void run_verify(Context& ctx) {
  const CarlesonMeasure& mu = ctx.measure();
  const Symbol h = make_symbol(ctx);
  const auto pairs = default_sample_pairs(mu.dim(), 12, ctx.config.seed);
  ctx.rec.at_most("verify_symbol_max_error", verify_symbol(mu, h, pairs, ctx.quadrature), ctx.tol("verify"));
  ctx.data["sample_pairs"] = pairs.size();
}

void run_gram(Context& ctx) {
  const bool from_measure = ctx.config.measure.has_value();
  const int dim = from_measure ? ctx.measure().dim() : make_symbol(ctx).dim();
  const auto points = default_gram_points(dim, ctx.config.gram_axis_points);
  const GramReport g = from_measure ? gram_matrix(ctx.measure(), points, ctx.quadrature)
                                    : gram_matrix(make_symbol(ctx), points, ctx.quadrature);
  const double rayleigh = min_rayleigh(g.matrix, points);
  ctx.data["source"] = from_measure ? "measure" : "symbol";
  ctx.data["points"] = points.size();
  ctx.data["min_eig"] = g.min_eig;
  ctx.data["max_eig"] = g.max_eig;
  ctx.data["min_rayleigh"] = rayleigh;
  if (from_measure) {
    ctx.rec.at_least("gram_min_eig", g.min_eig, -ctx.tol("gram_psd"));
    ctx.data["norm_lower_bound"] = norm_lower_bound(ctx.measure(), points, ctx.quadrature);
  }
  ctx.rec.evidence("gram_min_rayleigh", rayleigh, ctx.tol("classify"));
}

void expect_verdict(Context& ctx, const std::string& verdict) {
  if (!ctx.config.expect) return;
  ctx.rec.check("expected_verdict_" + *ctx.config.expect, verdict == *ctx.config.expect ? 0.0 : 1.0, 0.0,
                verdict == *ctx.config.expect);
}

void run_positivity(Context& ctx) {
  const PositivityReport r = strict_positivity_report(ctx.measure(), ctx.positive_grid(), ctx.quadrature);
  ctx.verdicts["positivity"] = to_string(r.verdict);
  ctx.data["criterion"] = r.criterion;
  ctx.rec.evidence(r.evidence);
  if (r.witness_form) ctx.data["witness_form"] = *r.witness_form;
  expect_verdict(ctx, to_string(r.verdict));
}

void record_classification(Context& ctx, const Classification& c) {
  ctx.verdicts["classify"] = to_string(c.verdict);
  ctx.verdicts["standard"] = c.is_standard();
  ctx.verdicts["borchers"] = c.verdict == Verdict::borchers;
  ctx.rec.evidence(c.evidence);
  // borchers ⇒ standard ⇒ rp_only gates: every passing verdict must carry
  // passing evidence for each gate below it.
  bool nested = true;
  for (const auto& e : c.evidence) {
    if (e.name == "gram_min_eig" || e.name == "borchers_defect") continue;
    if (e.name == "gram_min_rayleigh") {
      if (c.verdict != Verdict::invalid_symbol && e.value < -e.threshold) nested = false;
      if (c.is_standard() && !(e.value > e.threshold)) nested = false;
    } else if (c.verdict != Verdict::invalid_symbol && e.value > e.threshold) {
      nested = false;
    }
  }
  ctx.rec.check("verdict_nesting", nested ? 0.0 : 1.0, 0.0, nested);
  for (const auto& e : c.evidence) {
    if (e.name == "complex_structure_square_defect") {
      ctx.rec.at_most("complex_structure_square_defect", e.value, ctx.tol("complex_structure"));
    }
  }
}

void run_classify(Context& ctx) {
  const Symbol h = make_symbol(ctx);
  const Matrix p = projection_or_identity(ctx, h.dim());
  ClassifyOptions options;
  options.tol = ctx.tol("classify");
  options.quadrature = ctx.quadrature;
  options.points = default_gram_points(h.dim(), ctx.config.gram_axis_points);
  Classification c;
  try {
    c = classify(h, p, ctx.config.measure, ctx.x_grid(), options);
  } catch (const NotProjection& e) {
    throw ConfigError("projection", e.what());
  }
  record_classification(ctx, c);
  expect_verdict(ctx, to_string(c.verdict));
}

Grid simulator_grid(const Context& ctx) {
  try {
    Grid g(ctx.config.simulator.n, ctx.config.simulator.x_max);
    if ((g.size() & (g.size() - 1)) != 0) throw BadGridSize("grid size must be a power of two");
    return g;
  } catch (const Error& e) {
    throw ConfigError("grids.simulator", e.what());
  }
}

void simulate(Context& ctx, const Symbol& h, int trials, bool expect_positive) {
  const Grid grid = simulator_grid(ctx);
  const SimulatorSpec& s = ctx.config.simulator;
  const QuadrupleReport r = quadruple_checks(h, s.t_list, grid, trials, ctx.config.seed);
  const double exact = ctx.tol("exact");
  ctx.rec.at_most("commutation_residual", r.commutation_residual, exact);

  // θ² = 1 needs h(−x) = h(x)*; only then is the involution residual exact.
  Symbol probe = h;
  const std::vector<double> nodes(grid.nodes().begin(), grid.nodes().begin() + grid.size() / 2);
  if (check_flat(probe, nodes, exact).passed()) {
    ctx.rec.at_most("involution_residual", r.involution_residual, exact);
  } else {
    ctx.rec.evidence("involution_residual", r.involution_residual, exact);
  }
  ctx.rec.at_most("sharp_stability", r.sharp_stability, ctx.tol("sharp_stability"));
  if (expect_positive) {
    ctx.rec.at_least("reflection_positivity_min", r.rp_min, -ctx.tol("rp"));
  } else {
    ctx.rec.at_most("reflection_positivity_witness", r.rp_min, -ctx.tol("rp_witness"));
  }
  ctx.rec.at_most("monotonicity_residual", r.monotonicity_residual, ctx.tol("monotonicity"));
  ctx.rec.check("outgoing_decay_trend", r.decay.empty() ? 0.0 : r.decay.back().norm, 1.0, r.decay_monotone);

  const DiscretizationBudget b1 = discretization_budget(grid, 1);
  const DiscretizationBudget b2 = discretization_budget(grid, 2);
  Json decay = Json::array();
  std::ostringstream csv;
  csv << "t,norm\n";
  for (const DecayPoint& p : r.decay) {
    decay.push_back({{"t", p.t}, {"norm", p.norm}});
    csv << fmt(p.t) << ',' << fmt(p.norm) << '\n';
  }
  ctx.csv["decay.csv"] = csv.str();
  ctx.data["simulation"] = {
      {"n", grid.size()},
      {"x_max", grid.x_max()},
      {"trials", r.trials},
      {"rp_min", r.rp_min},
      {"commutation_residual", r.commutation_residual},
      {"involution_residual", r.involution_residual},
      {"monotonicity_residual", r.monotonicity_residual},
      {"sharp_stability", r.sharp_stability},
      {"decay", decay},
      {"epsilon_hardy", b1.hardy_residual},
      {"epsilon_antihardy", b1.antihardy_residual},
      {"epsilon_hardy_squared_kernel", b2.hardy_residual},
  };
}

void run_simulate(Context& ctx) {
  const Symbol h = make_symbol(ctx);
  const std::string expect = ctx.config.expect.value_or("reflection_positive");
  if (expect != "reflection_positive" && expect != "not_reflection_positive") {
    throw ConfigError("expect", "simulate expects reflection_positive or not_reflection_positive");
  }
  simulate(ctx, h, ctx.config.simulator.trials, expect == "reflection_positive");
}

void run_example_t(Context& ctx) {
  if (!ctx.config.t) throw ConfigError("t", "missing field");
  const double t = *ctx.config.t;
  if (!(t >= 0.0 && t <= 1.0)) throw ConfigError("t", "must lie in [0, 1]");
  ctx.data["t"] = t;

  double density_min = std::numeric_limits<double>::infinity();
  for (double l : log_grid(1e-3, 1e3, 64)) density_min = std::min(density_min, hermitian_spectrum(example_density(t, l))(0));
  ctx.data["density_min_eig"] = density_min;
  if (t > 1.0 / 3.0) {
    ctx.rec.check("density_min_eig", density_min, 0.0, density_min > 0.0);
  } else {
    ctx.rec.at_least("density_min_eig", density_min, -psd_tol);
  }
  const CarlesonMeasure mu = builtin_measure("example_t", {t}, 4);

  const CarlesonRatioReport ratio = carleson_ratio_check(mu, log_grid(1e-2, 1e2, 9), ctx.quadrature);
  ctx.rec.check("carleson_ratio_finite", std::max(ratio.max_ratio_low, ratio.max_ratio_high),
                std::numeric_limits<double>::infinity(),
                std::isfinite(ratio.max_ratio_low) && std::isfinite(ratio.max_ratio_high));

  const ProjectionSpec ps = example_projection(t);
  const Symbol quad = beta_symbol(mu, ps, ctx.quadrature);
  Symbol closed = builtin_symbol("example_beta_closed", {t}, 4);
  double beta_err = 0.0;
  for (double x : {-10.0, -1.0, -0.1, 0.1, 1.0, 10.0}) beta_err = std::max(beta_err, max_abs(quad(x) - closed(x)));
  ctx.rec.at_most("beta_quadrature_vs_closed", beta_err, ctx.tol("beta"));

  const std::vector<double> xs = ctx.x_grid();
  symbol_flags(ctx, closed, xs, ctx.tol("unitary_closed"));

  const auto pairs = default_sample_pairs(4, 12, ctx.config.seed);
  ctx.rec.at_most("verify_symbol_max_error", verify_symbol(mu, closed, pairs, ctx.quadrature), ctx.tol("verify"));

  ClassifyOptions options;
  options.tol = ctx.tol("classify");
  options.quadrature = ctx.quadrature;
  options.points = default_gram_points(4, ctx.config.gram_axis_points);
  const GramReport gram = gram_matrix(mu, options.points, ctx.quadrature);
  ctx.rec.at_least("gram_min_eig", gram.min_eig, -ctx.tol("gram_psd"));
  ctx.data["norm_lower_bound"] = norm_lower_bound(mu, options.points, ctx.quadrature);

  const Classification c = classify(closed, ps.p(), mu, xs, options);
  record_classification(ctx, c);
  const std::string expected = t == 1.0 ? "borchers" : "standard";
  ctx.rec.check("expected_verdict_" + expected, to_string(c.verdict) == expected ? 0.0 : 1.0, 0.0,
                to_string(c.verdict) == expected);

  simulate(ctx, closed, ctx.config.simulator.trials_set ? ctx.config.simulator.trials : 50, true);
}

}  // namespace

// -------------------------------------------------------------- config / run

Json measure_to_json(const CarlesonMeasure& mu) {
  Json j{{"dim", mu.dim()}};
  if (mu.density()) j["density"] = {{"name", mu.density()->name}, {"params", mu.density()->params}};
  Json atoms = Json::array();
  for (const Atom& a : mu.atoms()) {
    const Json w = matrix_json(a.weight);
    atoms.push_back({{"lambda", a.location}, {"weight_re", w["re"]}, {"weight_im", w["im"]}});
  }
  j["atoms"] = atoms;
  return j;
}

CarlesonMeasure measure_from_json(const Json& j, const std::string& path) {
  if (!j.is_object()) throw ConfigError(path, "expected an object");
  const int dim = integer(require(j, "dim", path), path + ".dim");
  if (dim < 1) throw ConfigError(path + ".dim", "must be positive");

  std::optional<Density> density;
  if (j.contains("density") && !j.at("density").is_null()) {
    const Json& dj = j.at("density");
    const std::string dpath = path + ".density";
    const Json& name = require(dj, "name", dpath);
    if (!name.is_string()) throw ConfigError(dpath + ".name", "expected a string");
    const std::vector<double> params = dj.contains("params") ? numbers(dj.at("params"), dpath + ".params")
                                                             : std::vector<double>{};
    try {
      density = make_density(name.get<std::string>(), params, dim);
    } catch (const UnknownDensity& e) {
      throw ConfigError(dpath + ".name", e.what());
    } catch (const BadParams& e) {
      throw ConfigError(dpath + ".params", e.what());
    }
  }

  std::vector<Atom> atoms;
  if (j.contains("atoms")) {
    const Json& aj = j.at("atoms");
    if (!aj.is_array()) throw ConfigError(path + ".atoms", "expected an array");
    for (std::size_t k = 0; k < aj.size(); ++k) {
      const std::string apath = path + ".atoms[" + std::to_string(k) + "]";
      const double location = number(require(aj[k], "lambda", apath), apath + ".lambda");
      Matrix w = real_matrix(require(aj[k], "weight_re", apath), apath + ".weight_re", dim);
      if (aj[k].contains("weight_im")) {
        w += I * real_matrix(aj[k].at("weight_im"), apath + ".weight_im", dim);
      }
      atoms.push_back({location, w});
    }
  }

  try {
    return CarlesonMeasure(dim, density, atoms);
  } catch (const Error& e) {
    throw ConfigError(path, e.what());
  }
}

RunConfig parse_config(const Json& j) {
  if (!j.is_object()) throw ConfigError("$", "config must be a JSON object");
  RunConfig config;
  config.echo = j;
  config.tolerances = default_tolerances();
  if (!j.contains("command")) throw ConfigError("command", "missing field");
  config.command = parse_command(j.at("command"));

  if (j.contains("seed")) {
    if (!j.at("seed").is_number_unsigned() && !(j.at("seed").is_number_integer() && j.at("seed").get<long long>() >= 0))
      throw ConfigError("seed", "expected a nonnegative integer");
    config.seed = j.at("seed").get<std::uint64_t>();
  }
  if (j.contains("measure")) config.measure = measure_from_json(j.at("measure"));
  if (j.contains("symbol")) {
    const Json& sj = j.at("symbol");
    SymbolSpec spec;
    const Json& name = require(sj, "name", "symbol");
    if (!name.is_string()) throw ConfigError("symbol.name", "expected a string");
    spec.name = name.get<std::string>();
    if (sj.contains("params")) spec.params = numbers(sj.at("params"), "symbol.params");
    if (sj.contains("dim")) spec.dim = integer(sj.at("dim"), "symbol.dim");
    if (sj.contains("sign")) {
      spec.sign = number(sj.at("sign"), "symbol.sign");
      if (spec.sign != 1.0 && spec.sign != -1.0) throw ConfigError("symbol.sign", "must be 1 or -1");
    }
    config.symbol = spec;
  }
  std::optional<int> dim;
  if (config.measure) dim = config.measure->dim();
  if (j.contains("projection")) config.projection = real_matrix(j.at("projection"), "projection", dim);
  if (j.contains("C")) config.c_block = real_matrix(j.at("C"), "C", dim);
  if (j.contains("t")) config.t = number(j.at("t"), "t");
  if (j.contains("alpha")) {
    config.alpha = number(j.at("alpha"), "alpha");
    if (!(*config.alpha > 0.0)) throw ConfigError("alpha", "must be positive");
  }
  if (j.contains("expect")) {
    if (!j.at("expect").is_string()) throw ConfigError("expect", "expected a string");
    config.expect = j.at("expect").get<std::string>();
  }

  if (j.contains("grids")) {
    const Json& g = j.at("grids");
    if (!g.is_object()) throw ConfigError("grids", "expected an object");
    if (g.contains("x_grid")) {
      const Json& x = g.at("x_grid");
      if (x.contains("lo")) config.x_grid.lo = number(x.at("lo"), "grids.x_grid.lo");
      if (x.contains("hi")) config.x_grid.hi = number(x.at("hi"), "grids.x_grid.hi");
      if (x.contains("n")) config.x_grid.n = integer(x.at("n"), "grids.x_grid.n");
      if (x.contains("symmetric")) {
        if (!x.at("symmetric").is_boolean()) throw ConfigError("grids.x_grid.symmetric", "expected a boolean");
        config.x_grid.symmetric = x.at("symmetric").get<bool>();
      }
      if (!(config.x_grid.lo > 0.0) || !(config.x_grid.hi > config.x_grid.lo) || config.x_grid.n < 2)
        throw ConfigError("grids.x_grid", "need 0 < lo < hi and n >= 2");
    }
    if (g.contains("gram_points")) {
      config.gram_axis_points = integer(require(g.at("gram_points"), "n_axis", "grids.gram_points"),
                                        "grids.gram_points.n_axis");
      if (config.gram_axis_points < 1) throw ConfigError("grids.gram_points.n_axis", "must be positive");
    }
    if (g.contains("simulator")) {
      const Json& s = g.at("simulator");
      if (s.contains("n")) config.simulator.n = integer(s.at("n"), "grids.simulator.n");
      if (s.contains("x_max")) config.simulator.x_max = number(s.at("x_max"), "grids.simulator.x_max");
      if (s.contains("trials")) {
        config.simulator.trials = integer(s.at("trials"), "grids.simulator.trials");
        config.simulator.trials_set = true;
        if (config.simulator.trials < 1) throw ConfigError("grids.simulator.trials", "must be positive");
      }
      if (s.contains("t_list")) config.simulator.t_list = numbers(s.at("t_list"), "grids.simulator.t_list");
    }
  }

  if (j.contains("tolerances")) {
    const Json& t = j.at("tolerances");
    if (!t.is_object()) throw ConfigError("tolerances", "expected an object");
    for (const auto& [key, value] : t.items()) {
      const std::string path = "tolerances." + key;
      if (!default_tolerances().count(key)) throw ConfigError(path, "unknown tolerance key");
      const double v = number(value, path);
      if (!(v > 0.0)) throw ConfigError(path, "tolerance must be positive");
      config.tolerances[key] = v;
    }
  }
  return config;
}

RunOutput run(const RunConfig& config, const RunOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  Context ctx{config};
  ctx.quadrature.rel_tol = ctx.tol("quad_rel");
  ctx.quadrature.abs_tol = ctx.tol("quad_abs");

  try {
    switch (config.command) {
      case Command::integrals:
        run_integrals(ctx);
        break;
      case Command::pick:
        run_pick(ctx);
        break;
      case Command::symbol:
        run_symbol(ctx);
        break;
      case Command::verify_symbol:
        run_verify(ctx);
        break;
      case Command::gram:
        run_gram(ctx);
        break;
      case Command::positivity:
        run_positivity(ctx);
        break;
      case Command::classify:
        run_classify(ctx);
        break;
      case Command::example_t:
        run_example_t(ctx);
        break;
      case Command::simulate:
        run_simulate(ctx);
        break;
    }
  } catch (const ConfigError&) {
    throw;
  } catch (const Error& e) {
    ctx.rec.failure("numeric_error", e.what());
  }

  RunOutput out;
  out.ok = ctx.rec.ok();
  out.csv = std::move(ctx.csv);
  Json& r = out.report;
  r["schema"] = report_schema;
  r["version"] = HSL_VERSION;
  r["command"] = to_string(config.command);
  r["seed"] = config.seed;
  r["config"] = config.echo;
  r["tolerances"] = config.tolerances;
  r["verdicts"] = ctx.verdicts;
  r["checks"] = ctx.rec.checks();
  r["evidence"] = ctx.rec.evidence();
  r["data"] = ctx.data;
  r["ok"] = out.ok;
  if (options.timing) {
    r["wall_time"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  }
  return out;
}

const std::vector<IntegralIdentity>& integral_identities() {
  static const std::vector<IntegralIdentity> table{
      {"a", [](double l, double x) { return (2.0 / pi) * x / (x * x + l * l); }, [](double) { return 1.0; }},
      {"b", [](double l, double x) { return (2.0 / pi) * x / ((x * x + l * l) * (1.0 + l * l)); },
       [](double x) { return 1.0 / (1.0 + x); }},
      {"c", [](double l, double x) { return (2.0 / pi) * x * l * l / ((x * x + l * l) * (1.0 + l * l)); },
       [](double x) { return x / (1.0 + x); }},
      {"d",
       [](double l, double x) {
         return (2.0 / pi) * (l / (x * x + l * l) - l / (1.0 + l * l)) * l / (1.0 + l * l);
       },
       [](double x) { return 1.0 / (1.0 + x) - 0.5; }},
      {"e", [](double l, double x) { return (2.0 / pi) * (l - 1.0) / (std::sqrt(l) * (x * x + l * l)); },
       [](double x) { return std::sqrt(2.0 * x) * (x - 1.0) / (x * x); }},
      {"f",
       [](double l, double x) {
         return (2.0 / pi) * l / (x * x + l * l) * std::sqrt(l) * (l - 1.0) / (1.0 + l * l);
       },
       [](double x) { return std::sqrt(2.0) * std::sqrt(x) / (1.0 + x); }},
      {"g",
       [](double l, double x) {
         return (2.0 / pi) * (l / (x * x + l * l) - l / (1.0 + l * l)) * std::sqrt(l) * (l - 1.0) / (1.0 + l * l);
       },
       [](double x) { return std::sqrt(2.0) * (std::sqrt(x) / (1.0 + x) - 0.5); }},
      {"h", [](double l, double x) { return l * (x * x - 1.0) / ((l * l + x * x) * (l * l + 1.0)); },
       [](double x) { return std::log(x); }},
  };
  return table;
}

}  // namespace hsl
