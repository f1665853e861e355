#ifndef EPILOG_SERIALIZE_H
#define EPILOG_SERIALIZE_H

#include "epilog/calibration.h"
#include "epilog/case_data.h"
#include "epilog/scenario.h"

#include <json.hpp>

#include <string>
#include <string_view>

namespace epilog
{

/// Shortest round-trip decimal form, independent of the C locale.
std::string format_number(double x);

nlohmann::json to_json(const FitResult& fit);
/// Reads the fit.json schema back; only the model rates are needed downstream.
ModelParams params_from_fit_json(const nlohmann::json& doc);

nlohmann::json to_json(const ScenarioReport& report);
nlohmann::json to_json(const ControlPolicy& policy);
nlohmann::json to_json(const RankedStrategy& ranked);

/// day,date,baseline_cumulative,scenario_cumulative,baseline_daily,scenario_daily
std::string trajectories_csv(const ScenarioReport& report);

/// day,date,cumulative,daily
std::string trajectory_csv(const Trajectory& traj);

/// day,date,observed,model,residual
std::string residuals_csv(const FitResult& fit, const CaseSeries& series);

} // namespace epilog

#endif // EPILOG_SERIALIZE_H
