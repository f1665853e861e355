#ifndef EPILOG_NUMERICS_H
#define EPILOG_NUMERICS_H

#include "epilog/date.h"

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace epilog
{

/**
 * @brief Cumulative cases on a uniform day grid, with daily incidence as first differences.
 *
 * daily[0] is cumulative[0]; daily[i] = cumulative[i] - cumulative[i-1] for i >= 1.
 */
struct Trajectory {
    Date t0_epoch = study_epoch;
    double step   = 1.0;
    std::vector<double> cumulative;
    std::vector<double> daily;

    std::size_t size() const
    {
        return cumulative.size();
    }

    /// Build from cumulative values, deriving the daily column.
    static Trajectory from_cumulative(std::vector<double> cumulative, Date t0_epoch = study_epoch);
};

/// Fill `daily` from `cumulative`.
void derive_daily(Trajectory& traj);

using RateFunction = std::function<double(double)>;

/**
 * @brief Classical fixed-step RK4 for an autonomous scalar ODE.
 *
 * Integrates from t = 0 to `horizon` days and returns the state at every whole day, so the
 * output has floor(horizon) + 1 samples. `step` must divide one day into a whole number of
 * substeps. Throws NumericalError if the state leaves [0, 1e12] or becomes non-finite.
 */
Trajectory integrate_rk4(const RateFunction& rate, double y0, double horizon, double step,
                         Date t0_epoch = study_epoch);

/// Sum of squared differences. Throws std::invalid_argument on length mismatch or empty input.
double sse(std::span<const double> model_values, std::span<const double> observed);

struct OptimizerSettings {
    int max_iterations         = 10000;
    double simplex_tolerance   = 1e-10; ///< relative spread of objective values across the simplex
    double parameter_tolerance = 1e-8;  ///< largest vertex distance from the best vertex
    /// Relative perturbation per coordinate for the starting simplex. A single entry applies to
    /// all coordinates. Coordinates equal to zero are perturbed by the fraction itself.
    std::vector<double> initial_step_fractions{0.1};
    /// Jittered restarts used by multi-start callers (calibration). Ignored by nelder_mead().
    int restarts       = 5;
    std::uint64_t seed = 20220510;

    void validate() const;
};

enum class StopReason {
    ObjectiveSpread,
    SimplexSize,
    MaxIterations,
};

struct OptimizeResult {
    std::vector<double> best_point;
    double best_value = 0.0;
    int iterations    = 0;
    bool converged    = false;
    StopReason reason = StopReason::MaxIterations;
};

using Objective = std::function<double(std::span<const double>)>;

/**
 * @brief Nelder–Mead downhill simplex (reflection 1, expansion 2, contraction 1/2, shrink 1/2).
 *
 * Throws NumericalError naming the point when the objective returns a non-finite value.
 */
OptimizeResult nelder_mead(const Objective& objective, std::span<const double> initial_guess,
                           const OptimizerSettings& settings = {});

const char* to_string(StopReason reason);

} // namespace epilog

#endif // EPILOG_NUMERICS_H
