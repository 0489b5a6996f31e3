#include "sphere/json_io.hpp"

#include <stdexcept>
#include <string>

namespace sphere {

namespace {

using nlohmann::json;

// Readers accept exactly the documented keys, so configs that misspell a
// field fail loudly instead of silently using a default.
void check_keys(const json& j, std::initializer_list<const char*> allowed,
                const char* what) {
  if (!j.is_object())
    throw std::invalid_argument(std::string(what) + ": expected a JSON object");
  for (const auto& item : j.items()) {
    bool known = false;
    for (const char* key : allowed)
      if (item.key() == key) known = true;
    if (!known)
      throw std::invalid_argument(std::string(what) + ": unknown key \"" +
                                  item.key() + "\"");
  }
  for (const char* key : allowed)
    if (!j.contains(key))
      throw std::invalid_argument(std::string(what) + ": missing key \"" +
                                  key + "\"");
}

}  // namespace

json profile_to_json(const ZonalProfile& profile) {
  if (profile.kind != ZonalProfile::Kind::indicator)
    throw std::invalid_argument(
        "profile_to_json: only indicator profiles are serializable");
  return json{{"n", profile.n},
              {"kind", "indicator"},
              {"breakpoints", profile.breakpoints},
              {"symmetric", profile.symmetric}};
}

ZonalProfile profile_from_json(const json& j) {
  check_keys(j, {"n", "kind", "breakpoints", "symmetric"}, "profile JSON");
  if (j.at("kind").get<std::string>() != "indicator")
    throw std::invalid_argument(
        "profile JSON: kind must be \"indicator\"");
  return make_indicator_profile(j.at("n").get<int>(),
                                j.at("breakpoints").get<std::vector<double>>(),
                                j.at("symmetric").get<bool>());
}

json estimate_to_json(const McEstimate& est) {
  return json{{"mean", est.mean},
              {"stderr", est.std_err},
              {"samples", est.samples},
              {"seed", est.seed}};
}

McEstimate estimate_from_json(const json& j) {
  check_keys(j, {"mean", "stderr", "samples", "seed"}, "estimate JSON");
  McEstimate est;
  est.mean = j.at("mean").get<double>();
  est.std_err = j.at("stderr").get<double>();
  est.samples = j.at("samples").get<std::int64_t>();
  est.seed = j.at("seed").get<std::uint64_t>();
  return est;
}

json spectrum_to_json(const HarmonicSpectrum& spectrum) {
  return json{{"n", spectrum.n},
              {"d_max", spectrum.d_max},
              {"coeffs", spectrum.coeffs},
              {"tail_norm_sq", spectrum.tail_norm_sq},
              {"norm_sq", spectrum.norm_sq}};
}

json level_d_to_json(const LevelDReport& report) {
  return json{{"applicable", report.applicable}, {"reason", report.reason},
              {"alpha", report.alpha},           {"flipped", report.flipped},
              {"d", report.d},                   {"measured", report.measured},
              {"bound", report.bound},           {"holds", report.holds}};
}

json budget_to_json(const BudgetReport& report) {
  json steps = json::array();
  for (const auto& step : report.per_step)
    steps.push_back(json{{"k", step.k},
                         {"loss", step.loss},
                         {"lower_bound", step.lower_bound}});
  return json{{"final_density_lower_bound", report.final_density_lower_bound},
              {"per_step", steps},
              {"threshold", report.threshold},
              {"exhausted", report.exhausted},
              {"failing_step", report.failing_step}};
}

json frame_to_json(const std::vector<Eigen::VectorXd>& vectors,
                   const FrameCheck& check) {
  json coords = json::array();
  for (const auto& v : vectors) {
    json row = json::array();
    for (int i = 0; i < v.size(); ++i) row.push_back(v(i));
    coords.push_back(std::move(row));
  }
  return json{{"vectors", coords},
              {"verification", json{{"ok", check.ok()},
                                    {"orthogonal", check.orthogonal},
                                    {"unit", check.unit},
                                    {"members", check.members},
                                    {"max_cross", check.max_cross},
                                    {"max_norm_err", check.max_norm_err}}}};
}

json search_report_to_json(const FrameSearchReport& report,
                           const FrameCheck& check) {
  json levels = json::array();
  for (const auto& lvl : report.levels)
    levels.push_back(json{{"level", lvl.level},
                          {"subspace_dim", lvl.subspace_dim},
                          {"slice", estimate_to_json(lvl.slice)}});
  json j{{"success", report.success},
         {"level_reached", report.level_reached},
         {"levels", levels},
         {"terminal_trials_used", report.terminal_trials_used},
         {"message", report.message}};
  if (report.success) j["frame"] = frame_to_json(report.frame.vectors, check);
  return j;
}

}  // namespace sphere
