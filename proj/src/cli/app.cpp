#include "casimir/cli/app.hpp"

#include "casimir/anisotropy.hpp"
#include "casimir/cli/sweep.hpp"
#include "casimir/cli/table.hpp"
#include "casimir/cylinders.hpp"
#include "casimir/model.hpp"
#include "casimir/plates.hpp"
#include "casimir/quad.hpp"
#include "casimir/wedge_scalar.hpp"

#include <CLI11.hpp>

#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <limits>
#include <numbers>
#include <set>
#include <sstream>

namespace casimir::cli {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kDeg = std::numbers::pi / 180.0;

const std::set<std::string> kGlobalKeys = {"format", "output", "config", "jobs", "rel-tol", "abs-tol", "degrees"};
const std::vector<std::string> kSubcommands = {"plates", "wedge-scalar", "cylinders", "anisotropy"};

struct Globals {
  std::string format = "auto";
  std::string output;
  std::string config;
  int jobs = 1;
  double rel_tol = quad::QuadConfig{}.rel_tol;
  double abs_tol = quad::QuadConfig{}.abs_tol;
  bool degrees = false;

  quad::QuadConfig quad() const {
    quad::QuadConfig q;
    q.rel_tol = rel_tol;
    q.abs_tol = abs_tol;
    quad::validate(q);
    return q;
  }
};

struct Row {
  std::vector<Cell> cells;
  bool converged = true;
  std::vector<std::string> warnings;
};

struct Outcome {
  Table table;
  std::vector<Row> rows;
};

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::string unquote(std::string s) {
  if (s.size() >= 2 && (s.front() == '"' || s.front() == '\'') && s.back() == s.front())
    return s.substr(1, s.size() - 2);
  return s;
}

double parse_real(const std::string& text, std::string_view what) {
  const std::string t = trim(text);
  double v = 0.0;
  const auto res = std::from_chars(t.data(), t.data() + t.size(), v);
  if (t.empty() || res.ec != std::errc{} || res.ptr != t.data() + t.size() || !std::isfinite(v))
    throw DomainError(std::string(what) + ": not a number: '" + text + "'");
  return v;
}

Polarizability parse_alpha(const std::string& text) {
  std::vector<double> parts;
  std::size_t pos = 0;
  while (true) {
    const std::size_t next = text.find(',', pos);
    parts.push_back(parse_real(text.substr(pos, next - pos), "--alpha"));
    if (next == std::string::npos) break;
    pos = next + 1;
  }
  if (parts.size() != 3) throw DomainError("--alpha expects three components ax,ay,az");
  Polarizability a{parts[0], parts[1], parts[2]};
  validate(a);
  return a;
}

std::vector<double> sweep_grid(const std::string& text, std::initializer_list<std::string_view> allowed,
                               std::string& parameter) {
  const SweepSpec spec = parse_sweep(text);
  bool ok = false;
  for (auto name : allowed) ok = ok || name == spec.parameter;
  if (!ok) {
    std::string names;
    for (auto name : allowed) names += (names.empty() ? "" : ", ") + std::string(name);
    throw DomainError("sweep parameter '" + spec.parameter + "' not valid here (use " + names + ")");
  }
  parameter = spec.parameter;
  return grid(spec);
}

Cell real(double x) { return x; }
Cell integer(long long x) { return static_cast<std::int64_t>(x); }

Outcome collect(std::vector<std::string> columns, std::vector<Row> rows) {
  Outcome o;
  o.table.columns = std::move(columns);
  for (const auto& r : rows) o.table.rows.push_back(r.cells);
  o.rows = std::move(rows);
  return o;
}

// ---------------------------------------------------------------- plates

struct PlatesArgs {
  double a = 1.0;
  std::string z;
  std::string alpha;
  std::string sweep;
};

Row plates_row(double z_over_a, double a, const Polarizability& alpha, const quad::QuadConfig& q) {
  const PlatesGeometry geom{a, z_over_a * a};
  validate(geom);
  Row row;
  const plates::TwoBody two = plates::cp_two_body(geom, alpha);
  const double exact = plates::cp_three_body_exact(geom, alpha);
  double te = kNaN;
  double tm = kNaN;
  try {
    const plates::ThreeBodyIntegral integral = plates::cp_three_body_integral(geom, alpha, q);
    te = integral.te;
    tm = integral.tm;
    row.converged = integral.report.converged;
    row.warnings = integral.report.warnings;
  } catch (const ConvergenceError& e) {
    row.converged = false;
    row.warnings.push_back(e.what());
  }
  const plates::Truncation trunc = plates::scattering_truncation(geom, alpha);
  const double ratio = plates::three_body_ratio(geom, alpha);
  const double force = plates::force(geom, alpha);
  row.cells = {real(z_over_a), real(two.e12), real(two.e13), real(exact), real(te), real(tm),
               real(trunc.e3), real(trunc.e4), real(ratio), real(force), row.converged};
  return row;
}

Outcome cmd_plates(const PlatesArgs& args, const Globals& g) {
  const Polarizability alpha = parse_alpha(args.alpha);
  if (!(args.a > 0) || !std::isfinite(args.a)) throw DomainError("--a must be > 0");
  const quad::QuadConfig q = g.quad();
  std::vector<double> zs;
  if (!args.sweep.empty()) {
    if (!args.z.empty()) throw DomainError("give either --z or --sweep, not both");
    std::string param;
    zs = sweep_grid(args.sweep, {"z_over_a"}, param);
  } else if (!args.z.empty()) {
    zs = {parse_real(args.z, "--z") / args.a};
  } else {
    throw DomainError("one of --z or --sweep is required");
  }
  auto rows = parallel_map(zs.size(), g.jobs, [&](std::size_t i) { return plates_row(zs[i], args.a, alpha, q); });
  Outcome o = collect({"Z/a", "E12", "E13", "E123_exact", "E123_TE", "E123_TM", "E3scatter", "E4scatter", "ratio_r",
                       "force", "converged"},
                      std::move(rows));
  o.table.meta.emplace_back("units", "energy alpha/a^4 (alpha_ref = 1); force alpha/a^5");
  return o;
}

// ---------------------------------------------------------------- wedge

struct WedgeArgs {
  std::string beta;
  std::string p;
  double r = 1.0;
  std::string phi;
  std::string phi_rel;
  std::string method = "both";
  std::string sweep;
};

Row wedge_row(const WedgeGeometry& geom, const std::string& method, const quad::QuadConfig& q) {
  validate(geom);
  Row row;
  row.cells = {real(geom.p()), real(geom.beta()), real(geom.r()), real(geom.phi()), real(geom.phi_face())};
  const double scale = wedge_scalar::energy_scale(geom, 1.0);
  double closed = kNaN;
  if (method != "integral") {
    closed = wedge_scalar::scalar_cp_closed(geom, 1.0) / scale;
    row.cells.push_back(closed);
  }
  if (method != "closed") {
    double integral = kNaN;
    try {
      const quad::Result r = wedge_scalar::scalar_cp_integral(geom, 1.0, q);
      integral = r.value / scale;
      row.converged = r.report.converged;
      row.warnings = r.report.warnings;
    } catch (const ConvergenceError& e) {
      integral = e.value() / scale;
      row.converged = false;
      row.warnings.push_back(e.what());
    }
    row.cells.push_back(integral);
    if (method == "both") row.cells.push_back(std::abs(integral - closed) / std::abs(closed));
  }
  row.cells.push_back(row.converged);
  return row;
}

Outcome cmd_wedge(const WedgeArgs& args, const Globals& g) {
  const quad::QuadConfig q = g.quad();
  std::string param;
  std::vector<double> values;
  if (!args.sweep.empty()) values = sweep_grid(args.sweep, {"p", "phi"}, param);
  const bool sweep_p = param == "p";
  const bool sweep_phi = param == "phi";
  if (sweep_p) {
    if (!args.beta.empty() || !args.p.empty()) throw DomainError("a p sweep replaces --beta/--p");
  } else if (args.beta.empty() == args.p.empty()) {
    throw DomainError("give exactly one of --beta or --p");
  }
  if (sweep_phi) {
    if (!args.phi.empty() || !args.phi_rel.empty()) throw DomainError("a phi sweep replaces --phi/--phi-rel");
    if (g.degrees)
      for (double& v : values) v *= kDeg;
  } else if (args.phi.empty() == args.phi_rel.empty()) {
    throw DomainError("give exactly one of --phi or --phi-rel");
  }
  if (!std::isfinite(args.r) || !(args.r > 0)) throw DomainError("--r must be > 0");

  auto make = [&](std::size_t i) {
    const bool from_p = sweep_p || !args.p.empty();
    const double shape = sweep_p ? values[i] : from_p ? parse_real(args.p, "--p") : parse_angle(args.beta, g.degrees);
    const double beta = from_p ? WedgeGeometry::beta_of_p(shape) : shape;
    double phi = 0.0;
    if (sweep_phi)
      phi = values[i];
    else if (!args.phi.empty())
      phi = parse_angle(args.phi, g.degrees);
    else
      phi = parse_angle(args.phi_rel, g.degrees) + beta / 2;
    return from_p ? WedgeGeometry::from_p(shape, args.r, phi) : WedgeGeometry::from_beta(shape, args.r, phi);
  };
  const std::size_t n = values.empty() ? 1 : values.size();
  for (std::size_t i = 0; i < n; ++i) validate(make(i));
  auto rows = parallel_map(n, g.jobs, [&](std::size_t i) { return wedge_row(make(i), args.method, q); });

  std::vector<std::string> cols = {"p", "beta", "r", "phi", "phi_rel"};
  if (args.method != "integral") cols.emplace_back("E_closed");
  if (args.method != "closed") cols.emplace_back("E_integral");
  if (args.method == "both") cols.emplace_back("rel_diff");
  cols.emplace_back("converged");
  Outcome o = collect(std::move(cols), std::move(rows));
  o.table.meta.emplace_back("units", "energy alpha/(8 pi R^2); angles rad");
  return o;
}

// ---------------------------------------------------------------- cylinders

struct CylinderArgs {
  double a_over_r0 = 0.01;
  std::string theta;
  std::string phi_tilde;
  std::string y;
  std::string sweep;
  bool fig3 = false;
  bool threshold = false;
  int m_max = cylinders::default_mode_config().m_max;
  double tail_tol = cylinders::default_mode_config().tail_tol;
};

constexpr int kFig3Points = 44;
constexpr double kFig3FirstDeg = 2.0;
constexpr double kFig3LastDeg = 88.0;
constexpr double kFig3AOverR0 = 0.01;

void check_regime(double a_over_r0) {
  if (!std::isfinite(a_over_r0) || !(a_over_r0 > 0))
    throw DomainError("--a-over-r0 must be > 0");
  if (a_over_r0 > cylinders::kMaxRegimeRatio) {
    std::ostringstream os;
    os << "a/R0 = " << a_over_r0 << " is outside the model regime: the three-body terms keep only m = 0 and need "
       << "a/R0 <= " << cylinders::kMaxRegimeRatio;
    throw DomainError(os.str());
  }
}

Row cylinder_row(const CylinderPairGeometry& geom, const quad::ModeSumConfig& m, const quad::QuadConfig& q,
                 bool fig3) {
  Row row;
  EnergyBreakdown b;
  ConvergenceReport report;
  const double nan = kNaN;
  try {
    b = cylinders::total_energy(geom, m, q, &report);
    row.converged = report.converged;
  } catch (const ConvergenceError& e) {
    b.e12 = b.e13 = b.e3scatter = b.e4scatter = b.e123_total = b.te_part = b.tm_part = nan;
    row.converged = false;
    report = e.report();
    report.warnings.push_back(e.what());
  }
  row.warnings = report.warnings;
  if (fig3) {
    row.cells = {real(geom.phi_tilde()), real(b.two_body()), real(b.e3scatter), real(b.e4scatter), real(b.total()),
                 row.converged};
  } else {
    row.cells = {real(geom.phi_tilde()), real(geom.theta()), real(geom.a_over_r0()), real(b.two_body()),
                 real(b.tm_part),        real(b.te_part),    real(b.e3scatter),      real(b.e4scatter),
                 real(b.total()),        integer(report.modes_used), row.converged};
  }
  return row;
}

Outcome cmd_cylinders(const CylinderArgs& args, const Globals& g, const CLI::App& sub) {
  const quad::QuadConfig q = g.quad();
  quad::ModeSumConfig m = cylinders::default_mode_config();
  m.m_max = args.m_max;
  m.tail_tol = args.tail_tol;
  quad::validate(m);

  const int angle_flags = !args.theta.empty() + !args.phi_tilde.empty() + !args.y.empty();
  if (args.threshold) {
    if (args.fig3 || !args.sweep.empty() || angle_flags || sub.count("--a-over-r0"))
      throw DomainError("--threshold takes no geometry options");
    Row row;
    double value = kNaN;
    try {
      value = cylinders::repulsion_threshold(m, q);
    } catch (const ConvergenceError& e) {
      row.converged = false;
      row.warnings.push_back(e.what());
    }
    row.cells = {real(value), row.converged};
    Outcome o = collect({"r0_over_a_threshold", "converged"}, {row});
    o.table.meta.emplace_back("units", "R0/a");
    return o;
  }

  std::vector<CylinderPairGeometry> points;
  bool fig3 = false;
  if (args.fig3) {
    if (!args.sweep.empty() || angle_flags || sub.count("--a-over-r0"))
      throw DomainError("--fig3 is a fixed preset and takes no geometry options");
    fig3 = true;
    SweepSpec spec{"phi_tilde", kFig3FirstDeg * kDeg, kFig3LastDeg * kDeg, kFig3Points, Spacing::Linear};
    for (double phi : grid(spec)) points.push_back(CylinderPairGeometry::from_phi_tilde(kFig3AOverR0, 1.0, phi));
  } else {
    std::string param;
    std::vector<double> values;
    if (!args.sweep.empty()) values = sweep_grid(args.sweep, {"phi_tilde", "a_over_r0"}, param);
    if (param == "phi_tilde") {
      if (angle_flags) throw DomainError("a phi_tilde sweep replaces --theta/--phi-tilde/--y");
      check_regime(args.a_over_r0);
      for (double v : values)
        points.push_back(CylinderPairGeometry::from_phi_tilde(args.a_over_r0, 1.0, g.degrees ? v * kDeg : v));
    } else {
      if (angle_flags != 1) throw DomainError("give exactly one of --theta, --phi-tilde or --y");
      if (param.empty()) values = {args.a_over_r0};
      for (double a : values) {
        check_regime(a);
        if (!args.theta.empty())
          points.push_back(CylinderPairGeometry::from_theta(a, 1.0, parse_angle(args.theta, g.degrees)));
        else if (!args.phi_tilde.empty())
          points.push_back(CylinderPairGeometry::from_phi_tilde(a, 1.0, parse_angle(args.phi_tilde, g.degrees)));
        else
          points.push_back(CylinderPairGeometry::from_height(a, 1.0, parse_real(args.y, "--y")));
      }
    }
  }
  for (const auto& p : points) validate(p);

  auto rows = parallel_map(points.size(), g.jobs, [&](std::size_t i) { return cylinder_row(points[i], m, q, fig3); });
  std::vector<std::string> cols;
  if (fig3)
    cols = {"phi_tilde", "e_two_body", "e_three_scatter", "e_four_scatter", "e_total", "converged"};
  else
    cols = {"phi_tilde", "theta",           "a_over_r0",      "e_two_body", "e_tm",     "e_te",
            "e_three_scatter", "e_four_scatter", "e_total", "modes_used", "converged"};
  Outcome o = collect(std::move(cols), std::move(rows));
  o.table.meta.emplace_back("units", "energy alpha_yy/(4 pi R0^4); angles rad");
  return o;
}

// ---------------------------------------------------------------- anisotropy

struct AnisotropyArgs {
  int l = 0;
  int m = 0;
  bool scan = false;
  int l_max = 30;
  std::string sweep;
};

std::vector<Cell> state_cells(const anisotropy::EigenstateLabel& s) {
  const anisotropy::Rational q = anisotropy::q_exact(s);
  const anisotropy::Rational gamma = anisotropy::gamma_of_q(q);
  return {integer(s.l), integer(s.m), real(q.to_double()), q.to_string(), real(gamma.to_double()),
          gamma.to_string(), gamma < anisotropy::kRepulsionGamma};
}

Outcome cmd_anisotropy(const AnisotropyArgs& args, const Globals&, const CLI::App& sub) {
  const std::vector<std::string> state_cols = {"l", "m", "q", "q_exact", "gamma", "gamma_exact", "repulsion_capable"};
  std::vector<Row> rows;
  if (args.scan) {
    if (sub.count("--l") || sub.count("--m") || !args.sweep.empty())
      throw DomainError("--scan takes only --l-max");
    if (args.l_max < 0) throw DomainError("--l-max must be >= 0");
    for (int l = 0; l <= args.l_max; ++l)
      for (int m = -l; m <= l; ++m) {
        Row row;
        row.cells = state_cells({l, m});
        row.cells.insert(row.cells.begin(), std::string("state"));
        rows.push_back(std::move(row));
      }
    const anisotropy::GammaMinimum min = anisotropy::min_gamma_over_states(args.l_max);
    Row row;
    row.cells = state_cells(min.state);
    row.cells.insert(row.cells.begin(), std::string("minimum"));
    rows.push_back(std::move(row));
    std::vector<std::string> cols = {"kind"};
    cols.insert(cols.end(), state_cols.begin(), state_cols.end());
    return collect(std::move(cols), std::move(rows));
  }
  if (sub.count("--l-max")) throw DomainError("--l-max needs --scan");
  std::vector<int> ls;
  if (!args.sweep.empty()) {
    if (sub.count("--l")) throw DomainError("an l sweep replaces --l");
    std::string param;
    for (double v : sweep_grid(args.sweep, {"l"}, param)) {
      if (std::abs(v - std::round(v)) > 1e-9) throw DomainError("l sweep must land on integers");
      ls.push_back(static_cast<int>(std::lround(v)));
    }
  } else {
    if (!sub.count("--l")) throw DomainError("--l is required (or use --scan)");
    ls = {args.l};
  }
  for (int l : ls) {
    const anisotropy::EigenstateLabel s{l, args.m};
    anisotropy::validate(s);
    Row row;
    row.cells = state_cells(s);
    rows.push_back(std::move(row));
  }
  return collect(state_cols, std::move(rows));
}

// ---------------------------------------------------------------- driver

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DomainError("cannot read config file '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

// Inserts config-file values so that explicit arguments still win: global
// keys go before everything, subcommand keys right after the subcommand name.
std::vector<std::string> expand_config(const std::vector<std::string>& args) {
  std::string path;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) path = args[i + 1];
    if (args[i].rfind("--config=", 0) == 0) path = args[i].substr(9);
  }
  if (path.empty()) return args;
  std::size_t sub_pos = args.size();
  std::string sub;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (std::find(kSubcommands.begin(), kSubcommands.end(), args[i]) != kSubcommands.end()) {
      sub_pos = i;
      sub = args[i];
      break;
    }
  }
  std::vector<std::string> global_tokens;
  std::vector<std::string> sub_tokens;
  for (const auto& [key, value] : parse_config(read_file(path), sub)) {
    if (key == "config") continue;
    (kGlobalKeys.count(key) ? global_tokens : sub_tokens).push_back("--" + key + "=" + value);
  }
  std::vector<std::string> out = global_tokens;
  out.insert(out.end(), args.begin(), args.begin() + static_cast<std::ptrdiff_t>(std::min(sub_pos + 1, args.size())));
  out.insert(out.end(), sub_tokens.begin(), sub_tokens.end());
  if (sub_pos + 1 < args.size()) out.insert(out.end(), args.begin() + static_cast<std::ptrdiff_t>(sub_pos + 1), args.end());
  return out;
}

std::vector<std::pair<std::string, std::string>> normalized_config(const CLI::App& app, const std::string& sub) {
  std::vector<std::pair<std::string, std::string>> out;
  std::istringstream lines(app.config_to_str(true, false));
  std::string line;
  while (std::getline(lines, line)) {
    const auto eq = line.find('=');
    if (eq == std::string::npos) continue;
    std::string key = trim(line.substr(0, eq));
    const std::string value = unquote(trim(line.substr(eq + 1)));
    const auto dot = key.find('.');
    if (dot != std::string::npos) {
      if (key.substr(0, dot) != sub) continue;
      key = key.substr(dot + 1);
    }
    out.emplace_back(key, value);
  }
  return out;
}

} // namespace

double parse_angle(const std::string& text, bool degrees) {
  std::string t = trim(text);
  double factor = degrees ? kDeg : 1.0;
  for (const auto& [suffix, f] : {std::pair<std::string_view, double>{"deg", kDeg}, {"rad", 1.0}}) {
    if (t.size() > suffix.size() && t.compare(t.size() - suffix.size(), suffix.size(), suffix) == 0) {
      t = trim(t.substr(0, t.size() - suffix.size()));
      factor = f;
      break;
    }
  }
  return parse_real(t, "angle") * factor;
}

std::vector<std::pair<std::string, std::string>> parse_config(const std::string& text, const std::string& subcommand) {
  std::vector<std::pair<std::string, std::string>> out;
  std::istringstream lines(text);
  std::string line;
  int lineno = 0;
  while (std::getline(lines, line)) {
    ++lineno;
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#' || t[0] == ';') continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos || eq == 0)
      throw DomainError("config line " + std::to_string(lineno) + ": expected key=value");
    std::string key = trim(t.substr(0, eq));
    if (key.rfind("--", 0) == 0) key = key.substr(2);
    const auto dot = key.find('.');
    if (dot != std::string::npos) {
      if (key.substr(0, dot) != subcommand) continue;
      key = key.substr(dot + 1);
    }
    std::string value = unquote(trim(t.substr(eq + 1)));
    if (value.empty()) continue;
    out.emplace_back(std::move(key), std::move(value));
  }
  return out;
}

int run(const std::vector<std::string>& raw_args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Casimir-Polder energies from the multiple-scattering formalism.", kToolName};
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  app.require_subcommand(1);
  app.fallthrough();
  app.set_version_flag("--version", std::string(kToolName) + " " + kToolVersion);

  Globals g;
  app.add_option("--format", g.format, "Output format; auto picks json for one record, csv otherwise")
      ->check(CLI::IsMember({"auto", "csv", "json"}))
      ->capture_default_str();
  app.add_option("--output", g.output, "Write results to this file instead of stdout");
  app.add_option("--config", g.config, "File of key=value lines mirroring the flags; flags override it");
  app.add_option("--jobs", g.jobs, "Grid points evaluated concurrently")
      ->envname("CASIMIR_MS_JOBS")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--rel-tol", g.rel_tol, "Quadrature relative tolerance")->capture_default_str();
  app.add_option("--abs-tol", g.abs_tol, "Quadrature absolute tolerance")->capture_default_str();
  app.add_flag("--degrees", g.degrees, "Read bare angles (and angle sweeps) in degrees");

  PlatesArgs pa;
  auto* plates_cmd = app.add_subcommand("plates", "Atom between two parallel conducting plates");
  plates_cmd->add_option("--a", pa.a, "Plate separation")->capture_default_str();
  plates_cmd->add_option("--z", pa.z, "Atom height above the lower plate (0 < z < a)");
  plates_cmd->add_option("--alpha", pa.alpha, "Polarizability components ax,ay,az")->required();
  plates_cmd->add_option("--sweep", pa.sweep, "z_over_a:start:stop:points[:lin|log]");

  WedgeArgs wa;
  auto* wedge_cmd = app.add_subcommand("wedge-scalar", "Scalar atom outside a Dirichlet wedge");
  wedge_cmd->add_option("--beta", wa.beta, "Interior opening angle in [0, pi]");
  wedge_cmd->add_option("--p", wa.p, "Wedge parameter pi/(2 pi - beta) in [1/2, 1]");
  wedge_cmd->add_option("--r", wa.r, "Atom distance from the edge")->capture_default_str();
  wedge_cmd->add_option("--phi", wa.phi, "Atom angle from the symmetry plane");
  wedge_cmd->add_option("--phi-rel", wa.phi_rel, "Atom angle from the upper face (phi - beta/2)");
  wedge_cmd->add_option("--method", wa.method, "closed, integral or both")
      ->check(CLI::IsMember({"closed", "integral", "both"}))
      ->capture_default_str();
  wedge_cmd->add_option("--sweep", wa.sweep, "p|phi:start:stop:points[:lin|log]");

  CylinderArgs ca;
  auto* cyl_cmd = app.add_subcommand("cylinders", "Atom on the bisector of two parallel conducting cylinders");
  cyl_cmd->add_option("--a-over-r0", ca.a_over_r0, "Cylinder radius over half the axis separation")
      ->capture_default_str();
  cyl_cmd->add_option("--theta", ca.theta, "Polar angle of the atom, cos(theta) = y/R");
  cyl_cmd->add_option("--phi-tilde", ca.phi_tilde, "pi/2 - theta");
  cyl_cmd->add_option("--y", ca.y, "Atom height above the axis plane, in units of R0");
  cyl_cmd->add_option("--sweep", ca.sweep, "phi_tilde|a_over_r0:start:stop:points[:lin|log]");
  cyl_cmd->add_flag("--fig3", ca.fig3, "Preset phi_tilde sweep at a/R0 = 0.01 with the four energy curves");
  cyl_cmd->add_flag("--threshold", ca.threshold, "Critical R0/a for repulsion along the bisector");
  cyl_cmd->add_option("--m-max", ca.m_max, "Largest azimuthal mode in the two-body sums")->capture_default_str();
  cyl_cmd->add_option("--tail-tol", ca.tail_tol, "Mode-sum tail tolerance")->capture_default_str();

  AnisotropyArgs aa;
  auto* aniso_cmd = app.add_subcommand("anisotropy", "Dipole anisotropy of atomic eigenstates |n l m>");
  aniso_cmd->add_option("--l", aa.l, "Orbital quantum number");
  aniso_cmd->add_option("--m", aa.m, "Magnetic quantum number")->capture_default_str();
  aniso_cmd->add_flag("--scan", aa.scan, "Tabulate every state up to --l-max and the minimum gamma");
  aniso_cmd->add_option("--l-max", aa.l_max, "Largest l in a scan")->capture_default_str();
  aniso_cmd->add_option("--sweep", aa.sweep, "l:start:stop:points at fixed --m");

  auto usage = [&]() -> std::string {
    for (auto* sub : app.get_subcommands()) return sub->help();
    return app.help();
  };

  std::vector<std::string> args;
  try {
    args = expand_config(raw_args);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  }
  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << usage();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::CallForVersion& e) {
    out << e.what() << "\n";
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << usage();
    return kExitInput;
  }

  auto* chosen = app.get_subcommands().front();
  const std::string name = chosen->get_name();
  Outcome outcome;
  try {
    if (name == "plates")
      outcome = cmd_plates(pa, g);
    else if (name == "wedge-scalar")
      outcome = cmd_wedge(wa, g);
    else if (name == "cylinders")
      outcome = cmd_cylinders(ca, g, *chosen);
    else
      outcome = cmd_anisotropy(aa, g, *chosen);
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n\n" << usage();
    return kExitInput;
  } catch (const RangeError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  }

  Table& table = outcome.table;
  table.meta.insert(table.meta.begin(), {"command", name});
  table.meta.insert(table.meta.begin(), {"tool", std::string(kToolName) + " " + kToolVersion});
  table.config = normalized_config(app, name);

  std::size_t failed = 0;
  std::set<std::string> seen;
  for (const Row& row : outcome.rows) {
    failed += !row.converged;
    for (const auto& w : row.warnings)
      if (seen.insert(w).second) err << "warning: " << w << "\n";
  }

  const bool json = g.format == "json" || (g.format == "auto" && table.rows.size() == 1);
  std::ofstream file;
  if (!g.output.empty()) {
    file.open(g.output, std::ios::binary | std::ios::trunc);
    if (!file) {
      err << "error: cannot write '" << g.output << "'\n";
      return kExitInput;
    }
  }
  std::ostream& sink = g.output.empty() ? out : file;
  if (json)
    write_json(sink, table);
  else
    write_csv(sink, table);
  sink.flush();

  if (failed) {
    err << "error: " << failed << " of " << outcome.rows.size() << " rows did not converge (flagged converged=false)\n";
    return kExitConvergence;
  }
  return kExitOk;
}

} // namespace casimir::cli
