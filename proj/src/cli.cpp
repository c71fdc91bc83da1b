#include "bbm/cli.hpp"

#include <CLI11.hpp>
#include <cmath>
#include <iostream>
#include <json.hpp>
#include <map>
#include <optional>
#include <sstream>

#include "bbm/errors.hpp"
#include "bbm/estimates.hpp"
#include "bbm/fkpp.hpp"
#include "bbm/io.hpp"
#include "bbm/limitlaw.hpp"
#include "bbm/observables.hpp"
#include "bbm/parallel.hpp"
#include "bbm/simulator.hpp"
#include "bbm/stats.hpp"
#include "bbm/wave.hpp"

namespace bbm::cli {

namespace {

using nlohmann::ordered_json;

/// Round to the project-wide 9 significant digits before emitting.
double round9(double x) { return std::stod(io::fmt(x)); }

std::vector<double> parse_list(const std::string& s) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(std::stod(item));
  return out;
}

std::pair<double, double> parse_range(const std::string& s) {
  const auto pos = s.find(':');
  if (pos == std::string::npos)
    throw CLI::ValidationError("range", "expected LO:HI, got '" + s + "'");
  return {std::stod(s.substr(0, pos)), std::stod(s.substr(pos + 1))};
}

void write_json(const std::string& path, const ordered_json& j) {
  auto os = io::open_out(path);
  os << j.dump(2) << "\n";
}

// ---------------------------------------------------------------------------
// simulate
// ---------------------------------------------------------------------------

struct SimulateArgs {
  double alpha = 1.0;
  double t = 8.0;
  std::string obs;
  int replicas = 1000;
  std::uint64_t seed = 0;
  std::uint64_t stream_base = 0;
  double barrier = 0.0;  // 0 = disabled
  std::uint64_t cap = 50'000'000;
  int num_types = 2;
  int threads = 0;
  std::string out;
  std::string snapshot_out;
  int snapshot_replica = 0;
};

sim::SimParams to_params(const SimulateArgs& a) {
  sim::SimParams p;
  p.alpha = a.alpha;
  p.t_max = a.t;
  p.num_types = a.num_types;
  if (a.barrier > 0.0) p.barrier_offset = a.barrier;
  p.observation_times = a.obs.empty() ? std::vector<double>{a.t} : parse_list(a.obs);
  p.seed = a.seed;
  p.event_cap = a.cap;
  p.validate();
  return p;
}

int cmd_simulate(const SimulateArgs& a, bool dry_run) {
  const sim::SimParams base = to_params(a);
  if (dry_run) {
    std::cout << "config ok\n";
    return 0;
  }
  const int threads = a.threads > 0 ? a.threads : default_threads();

  std::vector<sim::ReplicaAggregates> results(a.replicas);
  parallel_for(static_cast<std::size_t>(a.replicas), threads, [&](std::size_t r) {
    RngStream rng(base.seed, a.stream_base + r);
    sim::AggregateSink sink(base);
    sim::run_replica(base, rng, sink);
    results[r] = std::move(sink.agg);
  });

  auto os = io::open_out(a.out);
  os << "replica,t,max_type1,max_type2,Z,W,founders\n";
  for (int r = 0; r < a.replicas; ++r) {
    for (const auto& row : results[r].rows) {
      os << r << ',' << io::fmt(row.t) << ',';
      if (row.count_type1 > 0) os << io::fmt(row.max_type1);
      os << ',';
      if (row.count_type2 > 0) os << io::fmt(row.max_type2);
      os << ',' << io::fmt(row.martingale_z) << ',' << io::fmt(row.martingale_w) << ','
         << row.founders << '\n';
    }
  }

  if (!a.snapshot_out.empty()) {
    sim::SimParams snap = base;
    snap.stream_index = a.stream_base + static_cast<std::uint64_t>(a.snapshot_replica);
    const auto snaps = sim::simulate(snap);
    auto ss = io::open_out(a.snapshot_out);
    sim::write_snapshot_csv(ss, snaps.back());
  }
  return 0;
}

// ---------------------------------------------------------------------------
// summarize
// ---------------------------------------------------------------------------

ordered_json stat_block(const std::vector<double>& xs) {
  const auto ms = stats::mean_stderr(xs);
  ordered_json j;
  j["mean"] = round9(ms.mean);
  j["stderr"] = round9(ms.stderr_);
  j["median"] = round9(stats::median(xs));
  j["n"] = xs.size();
  return j;
}

int cmd_summarize(const std::string& in, const std::string& out, std::uint64_t seed,
                  bool dry_run) {
  if (dry_run) {
    std::cout << "config ok\n";
    return 0;
  }
  const auto table = io::read_csv_file(in);
  if (table.rows.empty()) throw MalformedInputError("summarize: no data rows in " + in);

  const int ct = table.column("t");
  if (ct < 0) throw MalformedInputError("summarize: missing 't' column");
  std::map<double, std::vector<std::size_t>> groups;
  for (std::size_t i = 0; i < table.rows.size(); ++i)
    groups[std::stod(table.rows[i][ct])].push_back(i);

  const auto collect = [&](const std::vector<std::size_t>& idx, const std::string& col) {
    std::vector<double> xs;
    const int c = table.column(col);
    if (c < 0) return xs;
    for (auto i : idx) {
      const auto& cell = table.rows[i][c];
      if (!cell.empty()) xs.push_back(std::stod(cell));
    }
    return xs;
  };

  ordered_json summaries = ordered_json::array();
  for (const auto& [t, idx] : groups) {
    ordered_json j;
    j["t"] = round9(t);
    j["replicas"] = idx.size();
    ordered_json cols;
    for (const auto& name : {"max_type1", "max_type2", "Z", "W", "founders"}) {
      const auto xs = collect(idx, name);
      if (!xs.empty()) cols[name] = stat_block(xs);
    }
    j["stats"] = cols;

    const auto max2 = collect(idx, "max_type2");
    if (max2.size() >= 100 && t >= 1.0) {
      const double m_t = obs::median_type2(t);
      std::vector<double> centred(max2.size());
      for (std::size_t i = 0; i < max2.size(); ++i) centred[i] = max2[i] - m_t;

      RngStream rng(seed, 0);
      const auto ci = stats::bootstrap_median_ci(centred, 1000, 0.95, rng);
      j["centred_max2"] = {{"median", round9(ci.point)},
                           {"ci_lo", round9(ci.lo)},
                           {"ci_hi", round9(ci.hi)}};

      const auto fit = obs::fit_gumbel(centred);
      j["gumbel_fit"] = {{"location", round9(fit.location)},
                         {"scale", round9(fit.scale)},
                         {"ks_statistic", round9(fit.ks_statistic)}};

      ordered_json cdf = ordered_json::array();
      for (int x = -2; x <= 3; ++x) {
        double p = 0.0;
        for (double v : centred)
          if (v <= x) p += 1.0;
        p /= static_cast<double>(centred.size());
        cdf.push_back({{"x", x}, {"p", round9(p)}});
      }
      j["cdf_table"] = cdf;
    }
    summaries.push_back(j);
  }
  ordered_json root;
  root["summaries"] = summaries;
  write_json(out, root);
  return 0;
}

// ---------------------------------------------------------------------------
// fkpp / regress / wave
// ---------------------------------------------------------------------------

struct FkppArgs {
  int types = 1;
  double alpha = 1.0;
  double t_end = 1000.0;
  double dx = 0.05;
  double dt_factor = 0.4;
  std::string domain = "-60:60";
  double record_dt = 0.5;
  double record_from = 1.0;
  int track_type = 1;
  std::string scheme = "rk4";
  std::string out;
  std::string profile_out;
  double profile_at = 0.0;
};

int cmd_fkpp(const FkppArgs& a, bool dry_run) {
  fkpp::GridConfig grid;
  grid.dx = a.dx;
  grid.dt_factor = a.dt_factor;
  std::tie(grid.x_lo, grid.x_hi) = parse_range(a.domain);
  grid.scheme = a.scheme == "ftcs" ? fkpp::GridConfig::Scheme::kCentral2Euler
                                   : fkpp::GridConfig::Scheme::kCentral4Rk4;
  grid.validate();
  if (a.track_type < 1 || a.track_type > a.types)
    throw CLI::ValidationError("--track-type", "outside 1..types");
  if (dry_run) {
    std::cout << "config ok\n";
    return 0;
  }

  fkpp::Solver solver = fkpp::Solver::heaviside(a.types, a.alpha, grid);
  fkpp::FrontTrace trace;
  const bool want_profile = !a.profile_out.empty();
  const double profile_t = want_profile ? (a.profile_at > 0 ? a.profile_at : a.t_end) : -1.0;
  for (double t = a.record_from; t <= a.t_end + 1e-9; t += a.record_dt) {
    if (want_profile && profile_t > solver.time() - 1e-9 && profile_t <= t) {
      solver.advance_to(profile_t);
      auto ps = io::open_out(a.profile_out);
      ps << "xi,";
      for (int j = 1; j <= a.types; ++j) ps << "v" << j << (j == a.types ? '\n' : ',');
      for (std::size_t i = 0; i < solver.grid_size(); ++i) {
        ps << io::fmt(solver.grid_x(i));
        for (int j = 1; j <= a.types; ++j) ps << ',' << io::fmt(solver.values(j)[i]);
        ps << '\n';
      }
    }
    solver.advance_to(t);
    if (const auto p = solver.front(a.track_type)) trace.points.push_back(*p);
  }

  auto os = io::open_out(a.out);
  os << "t,front_static,front_comoving\n";
  for (const auto& p : trace.points)
    os << io::fmt(p.t) << ',' << io::fmt(p.front_static) << ','
       << io::fmt(p.front_comoving) << '\n';
  return 0;
}

int cmd_regress(const std::string& in, const std::string& window, const std::string& column,
                const std::string& out, bool dry_run) {
  const auto [lo, hi] = parse_range(window);
  if (dry_run) {
    std::cout << "config ok\n";
    return 0;
  }
  const auto table = io::read_csv_file(in);
  const auto ts = table.numeric_column("t");
  const auto ys = table.numeric_column(column);
  std::vector<std::pair<double, double>> pairs;
  for (std::size_t i = 0; i < ts.size(); ++i)
    if (ts[i] >= lo && ts[i] <= hi) pairs.push_back({ts[i], ys[i]});
  const auto reg = obs::log_correction_regression(pairs);
  ordered_json j;
  j["slope"] = round9(reg.slope);
  j["intercept"] = round9(reg.intercept);
  j["stderr_slope"] = round9(reg.stderr_slope);
  j["window"] = window;
  j["n"] = pairs.size();
  if (out.empty())
    std::cout << j.dump(2) << "\n";
  else
    write_json(out, j);
  return 0;
}

int cmd_wave(double tol, const std::string& out, const std::string& summary_out,
             bool dry_run) {
  if (dry_run) {
    std::cout << "config ok\n";
    return 0;
  }
  const auto wave = fkpp::solve_travelling_wave(tol);

  if (!out.empty()) {
    auto os = io::open_out(out);
    os << "x,w\n";
    for (double x = -15.0; x <= 25.0 + 1e-9; x += 0.01)
      os << io::fmt(x) << ',' << io::fmt(wave.eval(x)) << '\n';
  }

  // Tail exponent: slope of log((1 - w) / x) over [10, 20].
  std::vector<double> xs, ys;
  for (double x = 10.0; x <= 20.0 + 1e-9; x += 0.1) {
    xs.push_back(x);
    ys.push_back(std::log(wave.eval_one_minus(x) / x));
  }
  const auto fit = stats::ols_fit(xs, ys);

  ordered_json j;
  j["max_residual"] = round9(wave.max_residual);
  j["tail_slope"] = round9(fit.slope);
  if (summary_out.empty())
    std::cout << j.dump(2) << "\n";
  else
    write_json(summary_out, j);
  return 0;
}

// ---------------------------------------------------------------------------
// limit
// ---------------------------------------------------------------------------

struct LimitSampleArgs {
  double alpha_cstar = 1.0;
  double z = 1.0;
  double window_left = -4.0;
  int draws = 10000;
  std::uint64_t seed = 0;
  std::string decoration = "degenerate";
  double dec_t = 6.0;
  double dec_depth = 8.0;
  int dec_attempts = 100000;
  std::string convention = "fold";
  std::string out;
  std::string atoms_out;
};

int cmd_limit_sample(const LimitSampleArgs& a, bool dry_run) {
  if (a.draws < 2) throw CLI::ValidationError("--draws", "need at least 2");
  const auto conv = a.convention == "shift" ? limitlaw::ZShiftConvention::kExplicitLogShift
                                            : limitlaw::ZShiftConvention::kFoldIntoIntensity;
  if (dry_run) {
    std::cout << "config ok\n";
    return 0;
  }
  std::unique_ptr<limitlaw::DecorationSource> source;
  if (a.decoration == "bbm")
    source = std::make_unique<limitlaw::ConditionedBbmDecoration>(a.dec_t, a.dec_depth,
                                                                  a.dec_attempts);
  else
    source = std::make_unique<limitlaw::DegenerateDecoration>();

  const double c = a.alpha_cstar * a.z;
  RngStream rng(a.seed, 0);
  std::vector<double> maxima;
  maxima.reserve(a.draws);
  PointMeasure last;
  for (int i = 0; i < a.draws; ++i) {
    last = limitlaw::sample_limit_extremal(a.z, a.alpha_cstar, *source, rng, a.window_left,
                                           conv);
    if (!last.empty()) maxima.push_back(last.max_atom());
  }
  const double ks = stats::ks_statistic(maxima, [&](double x) {
    return std::exp(-c * std::exp(-sim::kSqrt2 * x));
  });
  const auto fit = obs::fit_gumbel(maxima);

  ordered_json j;
  j["c"] = round9(c);
  j["window_left"] = round9(a.window_left);
  j["num_draws"] = a.draws;
  j["ks_statistic"] = round9(ks);
  j["gumbel_scale"] = round9(fit.scale);
  if (a.out.empty())
    std::cout << j.dump(2) << "\n";
  else
    write_json(a.out, j);

  if (!a.atoms_out.empty()) {
    auto os = io::open_out(a.atoms_out);
    write_point_measure_csv(os, last);
  }
  return 0;
}

int cmd_limit_cdf(double alpha_cstar, const std::string& z_list, const std::string& z_in,
                  const std::string& grid, const std::string& out, bool dry_run) {
  std::vector<double> zs;
  if (!z_in.empty()) {
    zs = io::read_csv_file(z_in).numeric_column("z");
  } else {
    zs = parse_list(z_list);
  }
  std::stringstream ss(grid);
  std::string part;
  std::vector<double> spec;
  while (std::getline(ss, part, ':')) spec.push_back(std::stod(part));
  if (spec.size() != 3 || spec[2] < 2)
    throw CLI::ValidationError("--x", "expected LO:HI:N with N >= 2");
  if (dry_run) {
    std::cout << "config ok\n";
    return 0;
  }
  auto os = io::open_out(out);
  os << "x,cdf\n";
  const int n = static_cast<int>(spec[2]);
  for (int i = 0; i < n; ++i) {
    const double x = spec[0] + (spec[1] - spec[0]) * i / (n - 1);
    os << io::fmt(x) << ',' << io::fmt(limitlaw::shifted_gumbel_cdf(x, alpha_cstar, zs))
       << '\n';
  }
  return 0;
}

// ---------------------------------------------------------------------------
// verify
// ---------------------------------------------------------------------------

int cmd_verify(const std::string& suite, std::uint64_t seed, int threads,
               const std::string& out, bool dry_run) {
  if (dry_run) {
    std::cout << "config ok\n";
    return 0;
  }
  auto reports = est::golden_suite(seed, threads);
  if (suite != "all") {
    std::erase_if(reports, [&](const est::CheckReport& r) {
      return r.name.find(suite) == std::string::npos;
    });
    if (reports.empty()) throw CLI::ValidationError("--suite", "no check matches '" + suite + "'");
  }
  ordered_json arr = ordered_json::array();
  bool all_ok = true;
  for (const auto& r : reports) {
    ordered_json j;
    j["name"] = r.name;
    j["lhs"] = round9(r.lhs);
    j["lhs_stderr"] = round9(r.lhs_stderr);
    j["rhs"] = round9(r.rhs);
    j["rhs_stderr"] = round9(r.rhs_stderr);
    j["z_score"] = round9(r.z_score);
    j["passed"] = r.passed;
    arr.push_back(j);
    all_ok = all_ok && r.passed;
    std::cout << (r.passed ? "[PASS] " : "[FAIL] ") << r.name << ": lhs=" << io::fmt(r.lhs)
              << " rhs=" << io::fmt(r.rhs) << " z=" << io::fmt(r.z_score) << "\n";
  }
  if (!out.empty()) write_json(out, arr);
  return all_ok ? 0 : 1;
}

}  // namespace

int run(std::vector<std::string> args) {
  CLI::App app{"Desk-scale laboratory for two-type and cascading branching "
               "Brownian motion: exact simulation, limit-law samplers, "
               "F-KPP front numerics and identity checks"};
  app.set_config("--config", "", "Key-value config file; command-line flags win");
  app.require_subcommand(1);

  bool dry_run = false;

  SimulateArgs sa;
  auto* s_sim = app.add_subcommand("simulate", "Run replicas, write per-replica statistics");
  s_sim->add_option("--alpha", sa.alpha, "Mutation rate");
  s_sim->add_option("--t", sa.t, "Horizon (also default observation time)");
  s_sim->add_option("--obs", sa.obs, "Comma-separated observation times");
  s_sim->add_option("--replicas", sa.replicas, "Number of replicas")->check(CLI::PositiveNumber);
  s_sim->add_option("--seed", sa.seed, "RNG seed");
  s_sim->add_option("--stream-base", sa.stream_base, "First RNG stream index");
  s_sim->add_option("--barrier", sa.barrier, "Kill offset L (0 disables)");
  s_sim->add_option("--cap", sa.cap, "Event cap per replica");
  s_sim->add_option("--types", sa.num_types, "Number of particle types");
  s_sim->add_option("--threads", sa.threads, "Worker threads (0 = auto)");
  s_sim->add_option("--out", sa.out, "Output CSV")->required();
  s_sim->add_option("--snapshot-out", sa.snapshot_out, "Write one replica's particle snapshot CSV");
  s_sim->add_option("--snapshot-replica", sa.snapshot_replica, "Replica index for --snapshot-out");
  s_sim->add_flag("--dry-run", dry_run, "Validate configuration only");

  std::string su_in, su_out;
  std::uint64_t su_seed = 0;
  auto* s_sum = app.add_subcommand("summarize", "Summarize a replica CSV");
  s_sum->add_option("--in", su_in, "Replica CSV")->required();
  s_sum->add_option("--out", su_out, "Summary JSON")->required();
  s_sum->add_option("--seed", su_seed, "Bootstrap seed");
  s_sum->add_flag("--dry-run", dry_run, "Validate configuration only");

  FkppArgs fa;
  auto* s_fkpp = app.add_subcommand("fkpp", "Solve the (coupled) front equation");
  s_fkpp->add_option("--types", fa.types, "Number of types (1 = plain)");
  s_fkpp->add_option("--alpha", fa.alpha, "Coupling rate");
  s_fkpp->add_option("--t-end", fa.t_end, "Final time");
  s_fkpp->add_option("--dx", fa.dx, "Grid spacing");
  s_fkpp->add_option("--dt-factor", fa.dt_factor, "dt = factor * dx^2");
  s_fkpp->add_option("--domain", fa.domain, "Co-moving domain LO:HI");
  s_fkpp->add_option("--record-dt", fa.record_dt, "Front recording interval");
  s_fkpp->add_option("--record-from", fa.record_from, "First recording time");
  s_fkpp->add_option("--track-type", fa.track_type, "Type whose front goes to --out");
  s_fkpp->add_option("--scheme", fa.scheme, "rk4 (default) or ftcs")
      ->check(CLI::IsMember({"rk4", "ftcs"}));
  s_fkpp->add_option("--out", fa.out, "Front trace CSV")->required();
  s_fkpp->add_option("--profile-out", fa.profile_out, "Profile CSV");
  s_fkpp->add_option("--profile-at", fa.profile_at, "Profile snapshot time");
  s_fkpp->add_flag("--dry-run", dry_run, "Validate configuration only");

  std::string r_in, r_window = "200:1000", r_col = "front_static", r_out;
  auto* s_reg = app.add_subcommand("regress", "Log-correction regression of a front trace");
  s_reg->add_option("--in", r_in, "Front trace CSV")->required();
  s_reg->add_option("--window", r_window, "Time window LO:HI");
  s_reg->add_option("--column", r_col, "Statistic column");
  s_reg->add_option("--out", r_out, "JSON output (stdout if omitted)");
  s_reg->add_flag("--dry-run", dry_run, "Validate configuration only");

  double w_tol = 1e-8;
  std::string w_out, w_summary;
  auto* s_wave = app.add_subcommand("wave", "Solve the critical travelling wave");
  s_wave->add_option("--tol", w_tol, "Residual tolerance");
  s_wave->add_option("--out", w_out, "Profile CSV");
  s_wave->add_option("--summary-out", w_summary, "JSON summary (stdout if omitted)");
  s_wave->add_flag("--dry-run", dry_run, "Validate configuration only");

  auto* s_limit = app.add_subcommand("limit", "Limit-law samplers and CDF");
  s_limit->require_subcommand(1);
  LimitSampleArgs la;
  auto* s_ls = s_limit->add_subcommand("sample", "Sample the decorated-PPP extremal process");
  s_ls->add_option("--alpha-cstar", la.alpha_cstar, "alpha C* constant");
  s_ls->add_option("--z", la.z, "Fixed derivative-martingale value");
  s_ls->add_option("--window-left", la.window_left, "Window left edge");
  s_ls->add_option("--draws", la.draws, "Number of draws");
  s_ls->add_option("--seed", la.seed, "RNG seed");
  s_ls->add_option("--decoration", la.decoration, "degenerate or bbm")
      ->check(CLI::IsMember({"degenerate", "bbm"}));
  s_ls->add_option("--dec-t", la.dec_t, "Decoration conditioning horizon");
  s_ls->add_option("--dec-depth", la.dec_depth, "Decoration truncation depth");
  s_ls->add_option("--dec-attempts", la.dec_attempts, "Rejection budget");
  s_ls->add_option("--convention", la.convention, "fold or shift")
      ->check(CLI::IsMember({"fold", "shift"}));
  s_ls->add_option("--out", la.out, "JSON summary (stdout if omitted)");
  s_ls->add_option("--atoms-out", la.atoms_out, "CSV of the final draw's atoms");
  s_ls->add_flag("--dry-run", dry_run, "Validate configuration only");

  double lc_ac = 1.0;
  std::string lc_z = "1.0", lc_zin, lc_grid = "-2:3:11", lc_out;
  auto* s_lc = s_limit->add_subcommand("cdf", "Randomly shifted Gumbel CDF");
  s_lc->add_option("--alpha-cstar", lc_ac, "alpha C* constant");
  s_lc->add_option("--z", lc_z, "Comma-separated Z samples");
  s_lc->add_option("--z-in", lc_zin, "CSV with a z column");
  s_lc->add_option("--x", lc_grid, "Evaluation grid LO:HI:N");
  s_lc->add_option("--out", lc_out, "Output CSV")->required();
  s_lc->add_flag("--dry-run", dry_run, "Validate configuration only");

  std::string v_suite = "all", v_out;
  std::uint64_t v_seed = 7;
  int v_threads = 0;
  auto* s_ver = app.add_subcommand("verify", "Run the golden-seed identity checks");
  s_ver->add_option("--suite", v_suite, "all, or a name substring filter");
  s_ver->add_option("--seed", v_seed, "RNG seed");
  s_ver->add_option("--threads", v_threads, "Worker threads (0 = auto)");
  s_ver->add_option("--out", v_out, "JSON report path");
  s_ver->add_flag("--dry-run", dry_run, "Validate configuration only");

  std::vector<const char*> argv;
  argv.push_back("bbmlab");
  for (const auto& s : args) argv.push_back(s.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (s_sim->parsed()) return cmd_simulate(sa, dry_run);
    if (s_sum->parsed()) return cmd_summarize(su_in, su_out, su_seed, dry_run);
    if (s_fkpp->parsed()) return cmd_fkpp(fa, dry_run);
    if (s_reg->parsed()) return cmd_regress(r_in, r_window, r_col, r_out, dry_run);
    if (s_wave->parsed()) return cmd_wave(w_tol, w_out, w_summary, dry_run);
    if (s_limit->parsed()) {
      if (s_ls->parsed()) return cmd_limit_sample(la, dry_run);
      if (s_lc->parsed()) return cmd_limit_cdf(lc_ac, lc_z, lc_zin, lc_grid, lc_out, dry_run);
    }
    if (s_ver->parsed()) return cmd_verify(v_suite, v_seed, v_threads, v_out, dry_run);
  } catch (const CLI::ValidationError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const ResourceLimitError& e) {
    std::cerr << "resource error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}

int run(int argc, const char* const* argv) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run(std::move(args));
}

}  // namespace bbm::cli
