#ifndef EPILOG_SCENARIO_H
#define EPILOG_SCENARIO_H

#include "epilog/model.h"
#include "epilog/numerics.h"

#include <optional>
#include <string>
#include <vector>

namespace epilog
{

/// Reference horizon: 10 May 2022 (day 0) to 31 December 2022 (day 236).
inline constexpr int study_horizon = 236;

struct ScenarioSpec {
    std::string label = "scenario";
    ControlPolicy policy;
    int horizon = study_horizon;
    double y0   = 1.0;

    void validate() const;
};

/**
 * @brief Baseline (no controls) versus one policy on the same daily grid.
 *
 * Reductions are relative to the baseline and are not clamped, so they can be negative.
 */
struct ScenarioReport {
    std::string label;
    ControlPolicy policy;
    double y0 = 1.0;
    Trajectory baseline;
    Trajectory scenario;
    double avg_cumulative_reduction = 0.0; ///< mean over days 1..N of 1 - scenario/baseline
    double max_pointwise_reduction  = 0.0; ///< max over days 1..N of the same ratio
    double final_size_reduction     = 0.0; ///< 1 - scenario[N] / baseline[N]
    /// Analytic inflection times; empty for u = 1, which has no interior peak.
    std::optional<double> peak_day_baseline;
    std::optional<double> peak_day_scenario;
    double peak_daily_baseline = 0.0;
    double peak_daily_scenario = 0.0;
};

enum class Strategy {
    ControlOne  = 1, ///< u = efficacy
    ControlTwo  = 2, ///< v = efficacy
    BothControls = 3,
};

struct RankedStrategy {
    Strategy strategy;
    ScenarioReport report;
};

/**
 * @brief Cumulative cases on days 0..horizon under a policy.
 *
 * Uses the closed form, or RK4 at 0.01 day when u = 1.
 */
Trajectory simulate(const ModelParams& params, const ControlPolicy& policy, int horizon, double y0);

ScenarioReport run_scenario(const ModelParams& params, const ScenarioSpec& spec);

/// Mean over days 1..N of 1 - scenario[i] / baseline[i]. Throws if a baseline value is zero.
double avg_cumulative_reduction(const Trajectory& baseline, const Trajectory& scenario);
double max_pointwise_reduction(const Trajectory& baseline, const Trajectory& scenario);

/// Strategies 1-3 at one efficacy, best first by average then final-size reduction.
std::vector<RankedStrategy> compare_strategies(const ModelParams& params, double efficacy,
                                               int horizon = study_horizon, double y0 = 1.0);

/// One report per multiplier with both controls off, in input order.
std::vector<ScenarioReport> treatment_sweep(const ModelParams& params, const std::vector<double>& multipliers,
                                            int horizon = study_horizon, double y0 = 1.0);

ControlPolicy policy_for(Strategy strategy, double efficacy);
const char* to_string(Strategy strategy);

} // namespace epilog

#endif // EPILOG_SCENARIO_H
