#ifndef EPILOG_CALIBRATION_H
#define EPILOG_CALIBRATION_H

#include "epilog/case_data.h"
#include "epilog/model.h"
#include "epilog/numerics.h"

#include <span>
#include <vector>

namespace epilog
{

struct FitResult {
    ModelParams params;
    double sse     = 0.0;
    double rmse    = 0.0;
    int iterations = 0; ///< summed over all restarts and polishing passes
    bool converged = false;
    double y0_used = 0.0;
    std::vector<double> residuals; ///< model - observed, one per fitted day
};

struct GoodnessReport {
    double rmse             = 0.0;
    double max_abs_residual = 0.0;
    int sign_runs           = 0; ///< maximal runs of residuals sharing a sign; zeros end a run
    int longest_run         = 0;
};

/// Starting point used when the caller has no better guess.
constexpr ModelParams default_initial_guess()
{
    return {0.1, 1e-5, 1.0};
}

/// Model cumulative values on days 0..n-1 for y(0) = y0, controls off.
std::vector<double> model_cumulative(const ModelParams& params, double y0, std::size_t n);

/**
 * @brief Least-squares fit of (r, gamma, h) to cumulative observations on consecutive days.
 *
 * observed[0] is day 0 and fixes y0. The search runs Nelder–Mead over (log r, log gamma, log h)
 * from the initial guess plus `settings.restarts` jittered starts, each polished by restarting
 * the simplex at its optimum, and keeps the lowest SSE (ties go to the lowest restart index).
 * With `fit_h` false, h stays at `initial_guess.h` (which may be 0) and only (r, gamma) move.
 */
FitResult fit_cumulative(std::span<const double> observed, const ModelParams& initial_guess,
                         const OptimizerSettings& settings = {}, bool fit_h = true);

/// Fit to the cumulative column of a case series.
FitResult fit(const CaseSeries& series, const ModelParams& initial_guess = default_initial_guess(),
              const OptimizerSettings& settings = {});

GoodnessReport goodness_report(const FitResult& fit, const CaseSeries& series);
GoodnessReport goodness_report(std::span<const double> residuals);

} // namespace epilog

#endif // EPILOG_CALIBRATION_H
