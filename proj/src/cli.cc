#include "srbm2d/cli.h"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <numbers>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "srbm2d/adh_product.h"
#include "srbm2d/char_points.h"
#include "srbm2d/domains_rate.h"
#include "srbm2d/instance_io.h"
#include "srbm2d/simulate.h"
#include "srbm2d/tail.h"
#include "srbm2d/vp_oracle.h"

namespace srbm2d {

using nlohmann::json;

std::string format_double(double x) {
  if (x == 0.0) return "0";
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidInstance: return kExitInvalidInstance;
    case ErrorCode::kParseError:
    case ErrorCode::kDomainError:
    case ErrorCode::kZeroDirection:
    case ErrorCode::kOutOfSupport: return kExitParseError;
    case ErrorCode::kConfigError: return kExitConfigError;
    case ErrorCode::kNoFeasiblePath: return kExitInfeasibleOracle;
    default: return kExitImpossibleCase;
  }
}

namespace {

struct Options {
  std::string command;
  std::string input;
  std::string format = "human";
  double tol = kDefaultTol;
  std::uint64_t seed = 1;
  double dt = 1e-3;
  double horizon = 2e4;
  double burn_in = 100.0;
  int replications = 1;
  int threads = 1;
  int bins = 240;
  double x_max = 0.0;
  int polar = 0;
  std::vector<std::string> dirs;
  std::string measure = "nu2";
  std::string what = "all";
  std::string out_dir;
};

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  std::string csv() const {
    std::string s;
    auto line = [&s](const std::vector<std::string>& cells) {
      for (std::size_t k = 0; k < cells.size(); ++k) {
        if (k) s += ',';
        s += cells[k];
      }
      s += '\n';
    };
    line(header);
    for (const auto& r : rows) line(r);
    return s;
  }
};

struct Report {
  json payload = json::object();
  std::vector<std::string> warnings;
  std::optional<Table> table;
  int exit_code = kExitOk;
};

json vec(Vector2 v) { return json::array({v.x1 + 0.0, v.x2 + 0.0}); }

// NaN is not representable in JSON.
json num(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error(ErrorCode::kConfigError, "cannot write " + path.string());
  f << text;
}

Vector2 parse_direction(const std::string& s) {
  const auto comma = s.find(',');
  Vector2 v;
  auto parse = [&s](std::string_view part, double& x) {
    const auto res = std::from_chars(part.data(), part.data() + part.size(), x);
    if (res.ec != std::errc() || res.ptr != part.data() + part.size())
      throw Error(ErrorCode::kParseError, "bad direction '" + s + "', expected v1,v2");
  };
  if (comma == std::string::npos) throw Error(ErrorCode::kParseError, "bad direction '" + s + "', expected v1,v2");
  parse(std::string_view(s).substr(0, comma), v.x1);
  parse(std::string_view(s).substr(comma + 1), v.x2);
  if (!(v.x1 >= 0.0) || !(v.x2 >= 0.0))
    throw Error(ErrorCode::kDomainError, "direction '" + s + "' must lie in the nonnegative quadrant");
  return v;
}

std::vector<std::pair<double, Vector2>> directions(const Options& o) {
  std::vector<std::pair<double, Vector2>> out;
  if (o.polar > 0) {
    if (o.polar < 2) throw Error(ErrorCode::kParseError, "--polar needs at least 2 angles");
    for (int k = 0; k < o.polar; ++k) {
      const double a = 0.5 * std::numbers::pi * k / (o.polar - 1);
      Vector2 v{std::cos(a), std::sin(a)};
      if (k == 0) v = {1.0, 0.0};
      if (k == o.polar - 1) v = {0.0, 1.0};
      out.emplace_back(a, v);
    }
  }
  for (const std::string& d : o.dirs) {
    const Vector2 v = parse_direction(d);
    out.emplace_back(std::atan2(v.x2, v.x1), v);
  }
  if (out.empty())
    for (Vector2 v : {Vector2{1, 0}, Vector2{1, 1}, Vector2{0, 1}}) out.emplace_back(std::atan2(v.x2, v.x1), v);
  return out;
}

// ---- commands ----

Report cmd_validate(const InstanceFile& inst) {
  const ValidationReport v = validate(inst.data);
  Report r;
  r.payload["valid"] = v.ok;
  json failures = json::array();
  for (Condition c : v.failures) failures.push_back(std::string(to_string(c)));
  r.payload["failures"] = failures;
  r.exit_code = v.ok ? kExitOk : kExitInvalidInstance;
  return r;
}

Report cmd_points(const Geometry& g) {
  Report r;
  json& p = r.payload;
  Table t{{"label", "x1", "x2"}, {}};
  double worst = 0.0;
  auto add = [&](const std::string& label, Vector2 v, bool on_ellipse) {
    p[label] = vec(v);
    t.rows.push_back({label, format_double(v.x1), format_double(v.x2)});
    if (on_ellipse) {
      const double scale = 1.0 + dot(v, v) * g.srbm.sigma().max_abs() + norm(v) * norm(g.srbm.mu());
      worst = std::max(worst, std::fabs(g.srbm.gamma(v)) / scale);
    }
  };
  for (int i = 1; i <= 2; ++i) {
    const std::string s = std::to_string(i);
    add("theta_r_" + s, g.theta_r(i), true);
    add("theta_r_tilde_" + s, g.theta_r_tilde(i), true);
    add("theta_max_" + s, g.theta_max(i), true);
    add("theta_gamma_" + s, g.theta_gamma(i), true);
    add("p_" + s, g.srbm.p_vec(i), false);
    p["theta_max_in_boundary_" + s] = g.theta_max_in_boundary(i);
    p["domain_case_" + s] = std::string(to_string(domain_case(g, i)));
  }
  const CategoryResult c = category(g);
  const Tau tau_v = tau(g);
  add("tau", tau_v.tau, false);
  p["tau_in_gamma"] = tau_v.tau_in_gamma;
  p["category"] = std::string(to_string(c.tag));
  p["category_tie"] = c.tie;
  if (c.tie) r.warnings.push_back("theta^(1,Gamma) and theta^(2,Gamma) coincide; reported as Category II");
  p["self_check"] = {{"max_rel_gamma", worst}, {"ok", worst <= 1e-9}};
  if (worst > 1e-9) r.warnings.push_back("characteristic point off the ellipse beyond 1e-9");
  r.table = t;
  return r;
}

std::string cases_string(const RateResult& res) {
  return std::string(to_string(res.case_fired[0])) + "|" + std::string(to_string(res.case_fired[1]));
}

Table rate_table(const Geometry& g, const std::vector<std::pair<double, Vector2>>& dirs, json* rows_out,
                 std::vector<std::string>* warnings) {
  Table t{{"angle", "v1", "v2", "I", "I1", "I2", "case_fired"}, {}};
  json rows = json::array();
  for (const auto& [angle, v] : dirs) {
    json row{{"angle", angle}, {"v", vec(v)}};
    std::vector<std::string> cells{format_double(angle), format_double(v.x1), format_double(v.x2)};
    try {
      const RateResult res = rate(g, v);
      row["I"] = res.value;
      row["I1"] = res.i1;
      row["I2"] = res.i2;
      row["maximizer"] = vec(res.maximizer);
      row["case_fired"] = {std::string(to_string(res.case_fired[0])), std::string(to_string(res.case_fired[1]))};
      cells.insert(cells.end(), {format_double(res.value), format_double(res.i1), format_double(res.i2), cases_string(res)});
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kZeroDirection) throw;
      row["error"] = std::string(to_string(e.code()));
      cells.insert(cells.end(), {"", "", "", std::string(to_string(e.code()))});
      if (warnings) warnings->push_back("zero direction skipped");
    }
    rows.push_back(row);
    t.rows.push_back(cells);
  }
  if (rows_out) *rows_out = rows;
  return t;
}

Report cmd_rate(const Geometry& g, const Options& o) {
  Report r;
  json rows;
  r.table = rate_table(g, directions(o), &rows, &r.warnings);
  r.payload["rows"] = rows;
  return r;
}

Report cmd_product_form(const Geometry& g, const Options& o) {
  Report r;
  json& p = r.payload;
  const Srbm& s = g.srbm;
  const ProductFormResult pf = product_form(s, o.tol);
  p["skew_symmetric"] = pf.skew_symmetric;
  p["geometric"] = pf.geometric;
  p["is_product_form"] = pf.is_product_form;
  p["alpha"] = pf.alpha ? vec(*pf.alpha) : json(nullptr);
  p["max_bar_residual"] = nullptr;
  if (pf.alpha) {
    const Vector2 a = *pf.alpha;
    double worst = 0.0;
    for (int j = 0; j < 20; ++j)
      for (int k = 0; k < 20; ++k) {
        const Vector2 th{a.x1 * (-1.0 + 1.9 * j / 19.0), a.x2 * (-1.0 + 1.9 * k / 19.0)};
        worst = std::max(worst, std::fabs(bar_residual(s, a, th)));
      }
    p["max_bar_residual"] = worst;
  }
  const ExitVelocities ev = exit_velocities(s);
  for (int i = 1; i <= 2; ++i) {
    const std::string k = std::to_string(i);
    p["exit_velocity_" + k] = vec(ev.a[i - 1]);
    p["exit_velocity_tilde_" + k] = vec(ev.a_tilde[i - 1]);
    p["reflective_F" + k] = is_reflective(s, i);
  }
  return r;
}

Report cmd_tail(const Geometry& g, const Options& o) {
  if (o.measure != "nu1" && o.measure != "nu2") throw Error(ErrorCode::kParseError, "--measure must be nu1 or nu2");
  const Measure m = o.measure == "nu1" ? Measure::kNu1 : Measure::kNu2;
  const TailAsymptotic t = classify_boundary_tail(g, m);
  Report r;
  r.payload = {{"measure", o.measure},
               {"decay", t.decay},
               {"kappa", t.kappa},
               {"category", std::string(to_string(t.category))},
               {"boundary_case", std::string(to_string(t.boundary_case))},
               {"theta_r_is_max", t.theta_r_is_max},
               {"tau_hits_theta_r", t.tau_hits_theta_r}};
  return r;
}

Table simulation_table(const SimResult& res) {
  const bool se = res.replications.size() > 1;
  Table t{{"x", "density_1", "density_2", "log_tail_1", "log_tail_2", "log_nu_tail_1", "log_nu_tail_2"}, {}};
  if (se) t.header.insert(t.header.end(), {"tail_se_1", "tail_se_2"});
  const SimEstimate& p = res.pooled;
  const double n = static_cast<double>(res.replications.size());
  for (int k = 0; k <= res.bins; ++k) {
    std::vector<std::string> row{format_double(k * res.bin_width)};
    for (int i = 0; i < 2; ++i) row.push_back(k < res.bins ? format_double(p.density[i][k]) : "");
    for (int i = 0; i < 2; ++i) row.push_back(format_double(std::log(p.tail[i][k])));
    for (int i = 0; i < 2; ++i) row.push_back(format_double(std::log(p.boundary_tail[i][k])));
    if (se) {
      for (int i = 0; i < 2; ++i) {
        double ss = 0.0;
        for (const SimEstimate& e : res.replications) ss += std::pow(e.tail[i][k] - p.tail[i][k], 2);
        row.push_back(format_double(std::sqrt(ss / (n - 1) / n)));
      }
    }
    t.rows.push_back(row);
  }
  return t;
}

Report cmd_simulate(const Geometry& g, const Options& o) {
  SimConfig cfg;
  cfg.dt = o.dt;
  cfg.horizon = o.horizon;
  cfg.burn_in = o.burn_in;
  cfg.seed = o.seed;
  cfg.replications = o.replications;
  cfg.threads = o.threads;
  cfg.bins = o.bins;
  cfg.x_max = o.x_max;
  const SimResult res = simulate(g.srbm, cfg);

  Report r;
  json& p = r.payload;
  p["config"] = {{"dt", cfg.dt},       {"horizon", cfg.horizon}, {"burn_in", cfg.burn_in},
                 {"seed", cfg.seed},   {"replications", cfg.replications},
                 {"bins", cfg.bins},   {"bin_width", res.bin_width}};
  const Vector2 t = tau(g).tau;
  const std::optional<Vector2> alpha = product_form(g.srbm, g.tol).alpha;
  const SimEstimate& e = res.pooled;
  for (int i = 0; i < 2; ++i) {
    const std::string k = std::to_string(i + 1);
    const double ti = i == 0 ? t.x1 : t.x2;
    p["mean_" + k] = num(e.mean[i]);
    p["mean_se_" + k] = num(res.mean_se[i]);
    p["half_means_" + k] = {num(e.half_means[0][i]), num(e.half_means[1][i])};
    p["y_total_" + k] = num(e.y_total[i]);
    p["tail_decay_" + k] = num(e.tail_decay[i]);
    p["tail_decay_se_" + k] = num(res.tail_decay_se[i]);
    p["tail_decay_rel_err_vs_tau_" + k] = num(e.tail_decay[i] / ti - 1.0);
    p["nu_tail_decay_" + k] = num(e.boundary_decay[i]);
    p["nu_tail_decay_se_" + k] = num(res.boundary_decay_se[i]);
    p["tau_" + k] = ti;
    if (alpha) {
      const double ai = i == 0 ? alpha->x1 : alpha->x2;
      p["alpha_" + k] = ai;
      p["mean_rel_err_vs_alpha_" + k] = num(e.mean[i] * ai - 1.0);
    }
    if (!std::isfinite(e.tail_decay[i])) r.warnings.push_back("too few tail points to fit the decay of Z_" + k);
  }
  r.table = simulation_table(res);
  if (!o.out_dir.empty()) {
    std::filesystem::create_directories(o.out_dir);
    const auto path = std::filesystem::path(o.out_dir) / "simulate.csv";
    write_file(path, r.table->csv());
    p["csv"] = path.string();
  }
  return r;
}

Report cmd_oracle(const Geometry& g, const Options& o) {
  Report r;
  Table t{{"v1", "v2", "I", "oracle", "rel_gap"}, {}};
  json rows = json::array();
  OracleOptions opts;
  opts.seed = o.seed;
  for (const auto& [angle, v] : directions(o)) {
    double closed = 0.0, oracle = 0.0, gap = 0.0;
    if (v.x1 != 0.0 || v.x2 != 0.0) {
      closed = rate(g, v).value;
      oracle = vp_oracle(g.srbm, v, opts);
      gap = closed > 0.0 ? (oracle - closed) / closed : oracle - closed;
    }
    rows.push_back({{"v", vec(v)}, {"I", closed}, {"oracle", oracle}, {"rel_gap", gap}});
    t.rows.push_back({format_double(v.x1), format_double(v.x2), format_double(closed), format_double(oracle),
                      format_double(gap)});
    if (std::fabs(gap) > 0.02) r.warnings.push_back("oracle gap above 2% at v=" + format_double(v.x1) + "," + format_double(v.x2));
  }
  r.payload["rows"] = rows;
  r.table = t;
  return r;
}

// Boundary of {x < x_cap, y < y_cap, (x, y) in Gamma_max if clipped} as a
// polyline from the far left along the top, then down the right side.
std::vector<Vector2> region_outline(const Geometry& g, double x_cap, double y_cap, bool clip, double far) {
  const double x_right = clip ? std::min(x_cap, g.theta_max(1).x1) : x_cap;
  auto top = [&](double x) {
    double y = y_cap;
    if (clip) {
      const double u = x >= g.theta_max(1).x1 ? g.theta_max(1).x2 : gamma_max_upper(g, x);
      y = std::min(y, u);
    }
    return y;
  };
  std::vector<Vector2> pts;
  const int n = 200;
  for (int k = 0; k <= n; ++k) {
    const double x = far + (x_right - far) * k / n;
    pts.push_back({x, top(x)});
  }
  pts.push_back({x_right, far});
  return pts;
}

std::vector<Vector2> domain_i_outline(const Geometry& g, double far) {
  constexpr double inf = std::numeric_limits<double>::infinity();
  const Vector2 t = g.theta_r_tilde(1);
  switch (domain_case(g, 1)) {
    case DomainCase::kBoxBelowTilde: return region_outline(g, t.x1, t.x2, false, far);
    case DomainCase::kGammaMaxCappedAtTilde: return region_outline(g, t.x1, inf, true, far);
    case DomainCase::kGammaMax: break;
  }
  return region_outline(g, inf, inf, true, far);
}

Report cmd_plot(const Geometry& g, const Options& o) {
  static const std::vector<std::string> kinds{"ellipse", "rays", "domains", "rate-profile", "all"};
  if (std::find(kinds.begin(), kinds.end(), o.what) == kinds.end())
    throw Error(ErrorCode::kParseError, "--what must be one of ellipse, rays, domains, rate-profile, all");
  const std::filesystem::path dir = o.out_dir.empty() ? "." : o.out_dir;
  std::filesystem::create_directories(dir);
  Report r;
  json files = json::array();
  auto emit = [&](const std::string& name, const Table& t) {
    write_file(dir / name, t.csv());
    files.push_back((dir / name).string());
  };
  auto fmt = [](Vector2 v) { return std::vector<std::string>{format_double(v.x1), format_double(v.x2)}; };
  const bool all = o.what == "all";

  double reach = 1.0;
  for (int i = 1; i <= 2; ++i)
    reach = std::max({reach, norm(g.theta_r(i)), norm(g.theta_max(i)), norm(g.theta_r_tilde(i))});
  const double far = -1.5 * reach;

  if (all || o.what == "ellipse") {
    Table e{{"x1", "x2"}, {}};
    for (Vector2 v : ellipse_samples(g.srbm, 512)) e.rows.push_back(fmt(v));
    emit("ellipse.csv", e);
    Report pts = cmd_points(g);
    emit("points.csv", *pts.table);
  }
  if (all || o.what == "rays") {
    Table t{{"ray", "x1", "x2"}, {}};
    for (int i = 1; i <= 2; ++i) {
      const Vector2 p = g.srbm.p_vec(i);
      const Vector2 u = (1.5 * reach / norm(p)) * p;
      for (Vector2 v : {-1.0 * u, Vector2{}, u}) {
        auto row = fmt(v);
        row.insert(row.begin(), "p_" + std::to_string(i));
        t.rows.push_back(row);
      }
    }
    emit("rays.csv", t);
  }
  if (all || o.what == "domains") {
    Table t{{"domain", "x1", "x2"}, {}};
    auto add = [&](const std::string& label, const std::vector<Vector2>& pts) {
      for (Vector2 v : pts) {
        auto row = fmt(v);
        row.insert(row.begin(), label);
        t.rows.push_back(row);
      }
    };
    add("D1", domain_i_outline(g, far));
    std::vector<Vector2> d2 = domain_i_outline(g.swapped(), far);
    for (Vector2& v : d2) v = swapped(v);
    add("D2", d2);
    const Vector2 cap = tau(g).tau;
    add("D", region_outline(g, cap.x1, cap.x2, true, far));
    emit("domains.csv", t);
  }
  if (all || o.what == "rate-profile") {
    Options polar = o;
    polar.dirs.clear();
    if (polar.polar == 0) polar.polar = 90;
    emit("rate.csv", rate_table(g, directions(polar), nullptr, &r.warnings));
  }
  r.payload["files"] = files;
  return r;
}

void flatten(const json& j, const std::string& prefix, std::vector<std::pair<std::string, std::string>>& out) {
  if (j.is_object() && !j.empty()) {
    for (const auto& [k, v] : j.items()) flatten(v, prefix.empty() ? k : prefix + "." + k, out);
  } else if (j.is_number_float()) {
    out.emplace_back(prefix, format_double(j.get<double>()));
  } else if (j.is_string()) {
    out.emplace_back(prefix, j.get<std::string>());
  } else {
    out.emplace_back(prefix, j.dump());
  }
}

void print_report(const Options& o, const InstanceFile& inst, const Report& r, double wall, std::ostream& out) {
  if (o.format == "json") {
    json env{{"command", o.command},
             {"instance", inst.name},
             {"version", kVersion},
             {"wall_time_s", wall},
             {"payload", r.payload},
             {"warnings", r.warnings}};
    out << env.dump(2) << "\n";
    return;
  }
  std::vector<std::pair<std::string, std::string>> kv;
  if (o.format == "csv") {
    if (r.table) {
      out << r.table->csv();
      return;
    }
    flatten(r.payload, "", kv);
    out << "key,value\n";
    for (const auto& [k, v] : kv) out << k << ',' << (v.find(',') != std::string::npos ? "\"" + v + "\"" : v) << '\n';
    return;
  }
  out << o.command << ": " << inst.name << "\n";
  json shown = r.payload;
  if (shown.contains("rows")) shown.erase("rows");
  if (!shown.empty()) flatten(shown, "", kv);
  for (const auto& [k, v] : kv) out << "  " << k << " = " << v << "\n";
  if (r.table && (o.command == "rate" || o.command == "oracle")) out << r.table->csv();
  for (const std::string& w : r.warnings) out << "warning: " << w << "\n";
}

int run(const Options& o, std::ostream& out) {
  const auto start = std::chrono::steady_clock::now();
  const InstanceFile inst = load_instance(o.input);
  Report r;
  if (o.command == "validate") {
    r = cmd_validate(inst);
  } else {
    if (!(o.tol > 0.0) || !(o.tol < 1.0)) throw Error(ErrorCode::kParseError, "--tol must lie in (0, 1)");
    const Geometry g(Srbm(inst.data), o.tol);
    static const std::map<std::string, std::function<Report(const Geometry&, const Options&)>> table{
        {"points", [](const Geometry& g, const Options&) { return cmd_points(g); }},
        {"rate", cmd_rate},
        {"product-form", cmd_product_form},
        {"tail", cmd_tail},
        {"simulate", cmd_simulate},
        {"oracle", cmd_oracle},
        {"plot", cmd_plot},
    };
    r = table.at(o.command)(g, o);
  }
  const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  print_report(o, inst, r, wall, out);
  return r.exit_code;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Two-dimensional SRBM geometry, rates, tails and simulation", "srbm2d"};
  app.add_option("command", o.command, "Command to run")
      ->required()
      ->check(CLI::IsMember({"validate", "points", "rate", "product-form", "tail", "simulate", "oracle", "plot"}));
  app.add_option("--input", o.input, "Instance JSON file")->required();
  app.add_option("--format", o.format, "Output format")->check(CLI::IsMember({"human", "json", "csv"}));
  app.add_option("--tol", o.tol, "Relative tolerance for equality snapping");
  app.add_option("--seed", o.seed, "Simulation / oracle seed");
  app.add_option("--dt", o.dt, "Euler time step");
  app.add_option("--horizon", o.horizon, "Simulated time per replication");
  app.add_option("--burn-in", o.burn_in, "Discarded initial time");
  app.add_option("--replications", o.replications, "Independent replications");
  app.add_option("--threads", o.threads, "Worker threads for replications");
  app.add_option("--bins", o.bins, "Histogram bins");
  app.add_option("--x-max", o.x_max, "Histogram range (0 = automatic)");
  app.add_option("--polar", o.polar, "Evaluate N directions evenly spaced in angle over [0, pi/2]");
  app.add_option("--dir", o.dirs, "Direction v1,v2 (repeatable)");
  app.add_option("--measure", o.measure, "Boundary measure for tail")->check(CLI::IsMember({"nu1", "nu2"}));
  app.add_option("--what", o.what, "Plot data to emit")
      ->check(CLI::IsMember({"ellipse", "rays", "domains", "rate-profile", "all"}));
  app.add_option("--out", o.out_dir, "Output directory for CSV files");
  app.set_version_flag("--version", kVersion);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << (dynamic_cast<const CLI::CallForVersion*>(&e) ? std::string(kVersion) + "\n" : app.help());
      return kExitOk;
    }
    err << "error: " << e.what() << "\n";
    return kExitParseError;
  }

  try {
    return run(o, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitParseError;
  }
}

}  // namespace srbm2d
