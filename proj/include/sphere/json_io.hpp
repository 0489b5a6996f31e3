#pragma once

// JSON serialization for the documented report schemas: zonal profiles
// {n, kind, breakpoints, symmetric}, MC estimates {mean, stderr, samples,
// seed}, harmonic spectra, inequality reports, and frames with their
// verification block. Readers are strict: unknown keys are rejected by name.

#include "sphere/frame_finder.hpp"
#include "sphere/inequalities.hpp"
#include "sphere/zonal.hpp"

#include <json.hpp>

#include <vector>

namespace sphere {

nlohmann::json profile_to_json(const ZonalProfile& profile);
ZonalProfile profile_from_json(const nlohmann::json& j);

nlohmann::json estimate_to_json(const McEstimate& est);
McEstimate estimate_from_json(const nlohmann::json& j);

nlohmann::json spectrum_to_json(const HarmonicSpectrum& spectrum);

nlohmann::json level_d_to_json(const LevelDReport& report);
nlohmann::json budget_to_json(const BudgetReport& report);

// Frame as an array of coordinate arrays plus the verifier's certificate.
nlohmann::json frame_to_json(const std::vector<Eigen::VectorXd>& vectors,
                             const FrameCheck& check);
nlohmann::json search_report_to_json(const FrameSearchReport& report,
                                     const FrameCheck& check);

}  // namespace sphere
