#include "sphere/cli.hpp"

#include "sphere/frame_finder.hpp"
#include "sphere/gegenbauer.hpp"
#include "sphere/inequalities.hpp"
#include "sphere/json_io.hpp"
#include "sphere/montecarlo.hpp"
#include "sphere/oracles.hpp"
#include "sphere/zonal.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace sphere {

namespace {

using nlohmann::json;

std::string format_num(double v) {
  std::ostringstream os;
  os << std::setprecision(17) << v;
  return os.str();
}

void emit(const json& report, const std::string& output_path) {
  std::string text = report.dump(2);
  text += '\n';
  if (output_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(output_path);
  if (!out) throw std::invalid_argument("cannot open output file: " + output_path);
  out << text;
}

void write_csv(const std::string& path, const std::string& header,
               const std::vector<std::string>& rows) {
  std::ofstream out(path);
  if (!out) throw std::invalid_argument("cannot open csv file: " + path);
  out << header << '\n';
  for (const auto& row : rows) out << row << '\n';
}

json load_json_file(const std::string& path, const char* what) {
  std::ifstream in(path);
  if (!in)
    throw std::invalid_argument(std::string(what) + ": cannot open " + path);
  json j;
  in >> j;
  return j;
}

// Shared --set/--param/--profile-json/--n block for commands that act on a
// zonal set.
struct SetOpts {
  std::string set;
  double param = 0.0;
  std::string profile_json;
  int n = 0;
  CLI::Option* param_opt = nullptr;

  void attach(CLI::App* cmd) {
    cmd->add_option("--set", set,
                    "named set: band, double_cap, cap, cap_complement, full");
    param_opt = cmd->add_option("--param,--eps,--tau,--threshold", param,
                                "parameter of the named set");
    cmd->add_option("--profile-json", profile_json,
                    "path of a zonal profile JSON file");
    cmd->add_option("--n", n, "ambient dimension");
  }

  ZonalProfile resolve() const {
    if (!profile_json.empty()) {
      if (!set.empty())
        throw std::invalid_argument("--set and --profile-json are exclusive");
      ZonalProfile profile =
          profile_from_json(load_json_file(profile_json, "profile"));
      if (n != 0 && n != profile.n)
        throw std::invalid_argument("--n disagrees with the profile file");
      return profile;
    }
    if (set.empty())
      throw std::invalid_argument("need --set or --profile-json");
    if (n < 2) throw std::invalid_argument("--n (>= 2) is required with --set");
    std::optional<double> p;
    if (param_opt && param_opt->count() > 0) p = param;
    return make_named_profile(set, n, p);
  }
};

struct SuiteOutcome {
  bool pass = true;
  json checks = json::array();

  void add(const std::string& label, bool ok, json detail = json::object()) {
    detail["label"] = label;
    detail["pass"] = ok;
    checks.push_back(std::move(detail));
    pass = pass && ok;
  }
};

SuiteOutcome suite_gegenbauer() {
  SuiteOutcome out;
  double worst_rel = 0.0;
  for (int n : {2, 3, 5, 10, 25, 50})
    for (int d = 0; d <= 20; ++d)
      for (int k = 0; k <= 20; ++k) {
        double t = -1.0 + 0.1 * k;
        double a = gegenbauer_eval(n, d, t);
        double b = gegenbauer_eval_explicit(n, d, t);
        worst_rel = std::max(worst_rel,
                             std::abs(a - b) / std::max(1.0, std::abs(b)));
      }
  out.add("recurrence vs explicit formula", worst_rel <= 1e-10,
          {{"worst_rel_err", worst_rel}});

  double worst_closed = 0.0;
  for (int n = 2; n <= 100; ++n) {
    double nn = n;
    worst_closed = std::max(
        worst_closed, std::abs(gegenbauer_zero(n, 2) + 1.0 / (nn - 1.0)));
    worst_closed = std::max(
        worst_closed,
        std::abs(gegenbauer_zero(n, 4) - 3.0 / (nn * nn - 1.0)));
    worst_closed = std::max(
        worst_closed, std::abs(gegenbauer_zero(n, 6) +
                               15.0 / ((nn * nn - 1.0) * (nn + 3.0))));
  }
  out.add("central values match closed forms", worst_closed <= 1e-12,
          {{"worst_abs_err", worst_closed}});
  return out;
}

SuiteOutcome suite_decay() {
  SuiteOutcome out;
  double worst_ratio = 0.0;
  for (int n = 2; n <= 500; ++n) {
    double bound = 15.0 / (static_cast<double>(n) * n * n);
    for (int d = 6; d <= 40; d += 2)
      worst_ratio =
          std::max(worst_ratio, std::abs(gegenbauer_zero(n, d)) / bound);
  }
  out.add("|P_{n,d}(0)| <= 15/n^3 for even d in [6,40]", worst_ratio <= 1.0,
          {{"worst_ratio", worst_ratio}});
  return out;
}

SuiteOutcome suite_level_d(const ZonalProfile& profile, int d_max) {
  SuiteOutcome out;
  for (int d = 0; d <= d_max; ++d) {
    LevelDReport rep = check_level_d(profile, d);
    json detail = level_d_to_json(rep);
    if (!rep.applicable) {
      out.add("d=" + std::to_string(d) + " not applicable", true,
              std::move(detail));
      continue;
    }
    out.add("d=" + std::to_string(d) + " bound holds", rep.holds,
            std::move(detail));
  }
  return out;
}

SuiteOutcome suite_noise(int n, int d, double rho, std::int64_t samples,
                         std::uint64_t seed) {
  SuiteOutcome out;
  NoiseReport rep = noise_operator_check(d, n, rho, samples, seed);
  json probes = json::array();
  for (const auto& probe : rep.probes)
    probes.push_back(json{{"input_value", probe.input_value},
                          {"expected", probe.expected},
                          {"smoothed", estimate_to_json(probe.smoothed)}});
  out.add("noise operator scales degree-" + std::to_string(d) +
              " harmonics by rho^d",
          rep.pass, {{"rho", rho}, {"probes", probes}});
  return out;
}

SuiteOutcome suite_budget(double eps, int n, int n0, double c) {
  SuiteOutcome out;
  BudgetReport rep = budget_chain(BudgetParams{eps, n, n0, c});
  out.add("density budget survives the descent", !rep.exhausted,
          budget_to_json(rep));
  return out;
}

SuiteOutcome suite_slicing(const ZonalProfile& profile, int draws,
                           std::int64_t samples, int d_max,
                           std::uint64_t seed) {
  if (draws < 2) throw std::invalid_argument("slicing suite needs --draws >= 2");
  SuiteOutcome out;
  auto oracle = zonal_oracle(profile);
  auto frame = make_full_frame(profile.n);
  double mass = density(profile);
  auto spectrum = funk_hecke_spectrum(profile, d_max);
  auto expected = g_t_zonal(spectrum, spectrum, 0.0);

  Engine rng = make_engine(seed, 0);
  double sum = 0.0, sum_sq = 0.0;
  for (int i = 0; i < draws; ++i) {
    Eigen::VectorXd x;
    do {
      x = sample_sphere(profile.n, rng);
    } while (!oracle.contains(x));
    double slice =
        slice_density(oracle, x, frame, samples, mix_seed(seed, 1 + i)).mean;
    sum += slice;
    sum_sq += slice * slice;
  }
  double avg = sum / draws;
  double var = (sum_sq - draws * avg * avg) / (draws - 1);
  double se = std::sqrt(std::max(0.0, var) / draws);
  double lhs = mass * avg;
  bool ok = std::abs(lhs - expected.value) <=
            3.0 * mass * se + expected.tail_bound + 1e-12;
  out.add("mean slice density times set measure matches the pair operator at 0",
          ok,
          {{"lhs", lhs},
           {"rhs", expected.value},
           {"tail_bound", expected.tail_bound},
           {"stderr", mass * se}});
  return out;
}

int dispatch(const std::vector<std::string>& args);

int run_from_config(const std::string& path) {
  json j = load_json_file(path, "config");
  if (!j.is_object())
    throw std::invalid_argument("config: expected a JSON object");
  for (const auto& item : j.items())
    if (item.key() != "command" && item.key() != "params" &&
        item.key() != "seed" && item.key() != "output_path")
      throw std::invalid_argument("config: unknown key \"" + item.key() + "\"");
  if (!j.contains("command"))
    throw std::invalid_argument("config: missing key \"command\"");

  std::vector<std::string> args{"spherekit", j.at("command").get<std::string>()};
  if (j.contains("params")) {
    const json& params = j.at("params");
    if (!params.is_object())
      throw std::invalid_argument("config: \"params\" must be an object");
    for (const auto& item : params.items()) {
      const json& v = item.value();
      if (v.is_boolean()) {
        if (v.get<bool>()) args.push_back("--" + item.key());
      } else if (v.is_number_integer()) {
        args.push_back("--" + item.key());
        args.push_back(std::to_string(v.get<std::int64_t>()));
      } else if (v.is_number_float()) {
        args.push_back("--" + item.key());
        args.push_back(format_num(v.get<double>()));
      } else if (v.is_string()) {
        args.push_back("--" + item.key());
        args.push_back(v.get<std::string>());
      } else {
        throw std::invalid_argument("config: unsupported value for key \"" +
                                    item.key() + "\"");
      }
    }
  }
  if (j.contains("seed")) {
    args.push_back("--seed");
    args.push_back(std::to_string(j.at("seed").get<std::uint64_t>()));
  }
  if (j.contains("output_path")) {
    args.push_back("--output");
    args.push_back(j.at("output_path").get<std::string>());
  }
  return dispatch(args);
}

int dispatch(const std::vector<std::string>& args) {
  CLI::App app{"spherical-set toolkit: orthogonal polynomials, zonal spectra, "
               "randomized estimators, and orthogonal-frame extraction"};
  app.require_subcommand(1);

  // gegenbauer
  auto* geg = app.add_subcommand(
      "gegenbauer", "evaluate the normalized polynomial or sweep its decay");
  int geg_n = 0, geg_d = 0, geg_nmax = 500, geg_dmax = 40;
  double geg_t = 0.0;
  std::string geg_sweep, geg_csv, geg_out;
  auto* geg_n_opt = geg->add_option("--n", geg_n, "dimension, n >= 2");
  auto* geg_d_opt = geg->add_option("--d", geg_d, "degree, d >= 0");
  auto* geg_t_opt = geg->add_option("--t", geg_t, "argument in [-1, 1]");
  geg->add_option("--sweep", geg_sweep, "sweep name: zero-decay");
  geg->add_option("--n-max", geg_nmax, "sweep upper dimension");
  geg->add_option("--d-max", geg_dmax, "sweep upper degree");
  geg->add_option("--csv", geg_csv, "sweep CSV output path");
  geg->add_option("--output", geg_out, "JSON report path (default stdout)");

  // spectrum
  auto* spec = app.add_subcommand(
      "spectrum", "density and harmonic coefficients of a zonal set");
  SetOpts spec_set;
  spec_set.attach(spec);
  int spec_dmax = 8, spec_nmin = 2, spec_nmax = 0;
  std::string spec_sweep, spec_csv, spec_out;
  spec->add_option("--d-max", spec_dmax, "truncation degree");
  spec->add_option("--sweep", spec_sweep, "sweep name: density");
  spec->add_option("--n-min", spec_nmin, "sweep lower dimension");
  spec->add_option("--n-max", spec_nmax, "sweep upper dimension");
  spec->add_option("--csv", spec_csv, "sweep CSV output path");
  spec->add_option("--output", spec_out, "JSON report path (default stdout)");

  // gt
  auto* gt = app.add_subcommand(
      "gt", "cross-validate the pair operator: zonal pipeline vs Monte Carlo");
  SetOpts gt_set;
  gt_set.attach(gt);
  double gt_t = 0.0;
  int gt_dmax = 40;
  std::int64_t gt_samples = 1000000;
  std::uint64_t gt_seed = 0;
  std::string gt_out;
  gt->add_option("--t", gt_t, "scalar product in [-1, 1]")->required();
  gt->add_option("--d-max", gt_dmax, "truncation degree");
  gt->add_option("--samples", gt_samples, "pair samples");
  gt->add_option("--seed", gt_seed, "RNG seed")->required();
  gt->add_option("--output", gt_out, "JSON report path (default stdout)");

  // verify
  auto* ver = app.add_subcommand("verify", "run a named verification suite");
  std::string ver_suite, ver_profile = "band", ver_out;
  int ver_n = 10, ver_d = 2, ver_dmax = 8, ver_n0 = 10, ver_draws = 32;
  double ver_param = 0.0, ver_rho = 0.5, ver_eps = 0.01, ver_c = 10.0;
  std::int64_t ver_samples = 0;
  std::uint64_t ver_seed = 0;
  ver->add_option("--suite", ver_suite,
                  "gegenbauer, decay, level-d, noise, budget, slicing")
      ->required();
  ver->add_option("--profile", ver_profile, "named set for set-based suites");
  auto* ver_param_opt =
      ver->add_option("--param", ver_param, "parameter of the named set");
  ver->add_option("--n", ver_n, "dimension");
  ver->add_option("--d", ver_d, "harmonic degree (noise suite)");
  ver->add_option("--d-max", ver_dmax, "largest degree (level-d, slicing)");
  ver->add_option("--rho", ver_rho, "noise rate (noise suite)");
  ver->add_option("--eps", ver_eps, "per-step budget (budget suite)");
  ver->add_option("--n0", ver_n0, "terminal dimension (budget suite)");
  ver->add_option("--c", ver_c, "budget constant (budget suite)");
  ver->add_option("--draws", ver_draws, "set points averaged (slicing suite)");
  ver->add_option("--samples", ver_samples, "MC samples per estimate");
  auto* ver_seed_opt = ver->add_option("--seed", ver_seed, "RNG seed");
  ver->add_option("--output", ver_out, "JSON report path (default stdout)");

  // find-frame
  auto* ff = app.add_subcommand(
      "find-frame", "extract pairwise orthogonal members of a set");
  SetOpts ff_set;
  ff_set.attach(ff);
  FinderConfig ff_cfg;
  bool ff_no_sym = false;
  std::string ff_out;
  ff->add_option("--seed", ff_cfg.seed, "RNG seed")->required();
  ff->add_option("--candidates", ff_cfg.candidates_per_level,
                 "candidates scored per level");
  ff->add_option("--slice-samples", ff_cfg.slice_samples,
                 "MC samples per slice estimate");
  ff->add_option("--n0", ff_cfg.n0, "terminal subspace dimension");
  ff->add_option("--terminal-trials", ff_cfg.terminal_trials,
                 "random frames tried in the terminal subspace");
  ff->add_option("--max-rejections", ff_cfg.max_rejections,
                 "consecutive misses before giving up");
  ff->add_flag("--no-symmetrize", ff_no_sym,
               "search the literal set instead of A u (-A)");
  ff->add_flag("--restrict-degree2", ff_cfg.restrict_degree2,
               "keep only candidates with non-positive degree-2 projection");
  ff->add_option("--output", ff_out, "JSON report path (default stdout)");

  try {
    std::vector<std::string> rest(args.begin() + 1, args.end());
    std::reverse(rest.begin(), rest.end());
    app.parse(rest);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  if (*geg) {
    if (geg_sweep.empty()) {
      if (geg_n_opt->count() == 0 || geg_d_opt->count() == 0 ||
          geg_t_opt->count() == 0)
        throw std::invalid_argument("gegenbauer needs --n, --d, --t");
      double value = gegenbauer_eval(geg_n, geg_d, geg_t);
      emit(json{{"command", "gegenbauer"},
                {"n", geg_n},
                {"d", geg_d},
                {"t", geg_t},
                {"value", value}},
           geg_out);
      return 0;
    }
    if (geg_sweep != "zero-decay")
      throw std::invalid_argument("unknown sweep \"" + geg_sweep + "\"");
    if (geg_csv.empty())
      throw std::invalid_argument("sweep mode needs --csv");
    std::vector<std::string> rows;
    double worst_ratio = 0.0;
    for (int n = 2; n <= geg_nmax; ++n) {
      double bound = 15.0 / (static_cast<double>(n) * n * n);
      for (int d = 6; d <= geg_dmax; d += 2) {
        double v = std::abs(gegenbauer_zero(n, d));
        worst_ratio = std::max(worst_ratio, v / bound);
        rows.push_back(std::to_string(n) + "," + std::to_string(d) + "," +
                       format_num(v) + "," + format_num(bound));
      }
    }
    write_csv(geg_csv, "n,d,abs_value_at_zero,decay_bound", rows);
    emit(json{{"command", "gegenbauer"},
              {"sweep", "zero-decay"},
              {"rows", rows.size()},
              {"csv", geg_csv},
              {"worst_ratio", worst_ratio}},
         geg_out);
    return 0;
  }

  if (*spec) {
    if (!spec_sweep.empty()) {
      if (spec_sweep != "density")
        throw std::invalid_argument("unknown sweep \"" + spec_sweep + "\"");
      if (spec_csv.empty())
        throw std::invalid_argument("sweep mode needs --csv");
      if (spec_set.set.empty())
        throw std::invalid_argument("density sweep needs --set");
      if (spec_nmax < spec_nmin)
        throw std::invalid_argument("density sweep needs --n-max >= --n-min");
      std::optional<double> p;
      if (spec_set.param_opt->count() > 0) p = spec_set.param;
      std::vector<std::string> rows;
      for (int n = std::max(2, spec_nmin); n <= spec_nmax; ++n)
        rows.push_back(std::to_string(n) + "," +
                       format_num(density(make_named_profile(spec_set.set, n, p))));
      write_csv(spec_csv, "n,density", rows);
      emit(json{{"command", "spectrum"},
                {"sweep", "density"},
                {"set", spec_set.set},
                {"rows", rows.size()},
                {"csv", spec_csv}},
           spec_out);
      return 0;
    }
    ZonalProfile profile = spec_set.resolve();
    HarmonicSpectrum spectrum = funk_hecke_spectrum(profile, spec_dmax);
    emit(json{{"command", "spectrum"},
              {"profile", profile_to_json(profile)},
              {"density", density(profile)},
              {"spectrum", spectrum_to_json(spectrum)}},
         spec_out);
    return 0;
  }

  if (*gt) {
    ZonalProfile profile = gt_set.resolve();
    auto oracle = zonal_oracle(profile);
    HarmonicSpectrum spectrum = funk_hecke_spectrum(profile, gt_dmax);
    GtValue zonal = g_t_zonal(spectrum, spectrum, gt_t);
    McEstimate mc = mc_g_t(oracle, oracle, gt_t, gt_samples, gt_seed);
    bool consistent = std::abs(zonal.value - mc.mean) <=
                      3.0 * mc.std_err + zonal.tail_bound + 1e-12;
    emit(json{{"command", "gt"},
              {"profile", profile_to_json(profile)},
              {"t", gt_t},
              {"d_max", gt_dmax},
              {"zonal", json{{"value", zonal.value},
                             {"tail_bound", zonal.tail_bound}}},
              {"mc", estimate_to_json(mc)},
              {"consistent", consistent}},
         gt_out);
    return consistent ? 0 : 1;
  }

  if (*ver) {
    bool randomized = ver_suite == "noise" || ver_suite == "slicing";
    if (randomized && ver_seed_opt->count() == 0)
      throw std::invalid_argument("suite \"" + ver_suite +
                                  "\" is randomized and needs --seed");
    std::optional<double> p;
    if (ver_param_opt->count() > 0) p = ver_param;

    SuiteOutcome outcome;
    if (ver_suite == "gegenbauer") {
      outcome = suite_gegenbauer();
    } else if (ver_suite == "decay") {
      outcome = suite_decay();
    } else if (ver_suite == "level-d") {
      outcome = suite_level_d(make_named_profile(ver_profile, ver_n, p), ver_dmax);
    } else if (ver_suite == "noise") {
      outcome = suite_noise(ver_n, ver_d, ver_rho,
                            ver_samples > 0 ? ver_samples : 20000, ver_seed);
    } else if (ver_suite == "budget") {
      outcome = suite_budget(ver_eps, ver_n, ver_n0, ver_c);
    } else if (ver_suite == "slicing") {
      outcome = suite_slicing(make_named_profile(ver_profile, ver_n, p),
                              ver_draws, ver_samples > 0 ? ver_samples : 2000,
                              std::max(ver_dmax, 20), ver_seed);
    } else {
      throw std::invalid_argument("unknown suite \"" + ver_suite + "\"");
    }
    emit(json{{"command", "verify"},
              {"suite", ver_suite},
              {"pass", outcome.pass},
              {"checks", outcome.checks}},
         ver_out);
    return outcome.pass ? 0 : 1;
  }

  if (*ff) {
    ZonalProfile profile = ff_set.resolve();
    auto oracle = zonal_oracle(profile);
    if (ff_no_sym) ff_cfg.symmetrize = false;
    FrameSearchReport report = find_orthogonal_frame(oracle, ff_cfg);
    FrameCheck check;
    if (report.success) check = verify_frame(oracle, report.frame.vectors);
    json j = search_report_to_json(report, check);
    j["command"] = "find-frame";
    j["profile"] = profile_to_json(profile);
    j["config"] = json{{"seed", ff_cfg.seed},
                       {"candidates_per_level", ff_cfg.candidates_per_level},
                       {"slice_samples", ff_cfg.slice_samples},
                       {"n0", ff_cfg.n0},
                       {"terminal_trials", ff_cfg.terminal_trials},
                       {"max_rejections", ff_cfg.max_rejections},
                       {"symmetrize", ff_cfg.symmetrize},
                       {"restrict_degree2", ff_cfg.restrict_degree2}};
    emit(j, ff_out);
    return report.success && check.ok() ? 0 : 1;
  }

  return 2;
}

}  // namespace

int cli_run(int argc, const char* const* argv) {
  std::vector<std::string> args(argv, argv + argc);
  try {
    auto config_it = std::find(args.begin(), args.end(), "--config");
    if (config_it != args.end()) {
      if (args.size() != 3 || config_it != args.begin() + 1)
        throw std::invalid_argument(
            "--config replaces all other arguments: spherekit --config path");
      return run_from_config(args[2]);
    }
    return dispatch(args);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
}

}  // namespace sphere
