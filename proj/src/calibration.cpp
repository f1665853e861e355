#include "epilog/calibration.h"
#include "epilog/error.h"

#include <cmath>
#include <future>
#include <random>
#include <stdexcept>

namespace epilog
{

namespace
{

// Returned for trial points whose rates are not representable (exp over/underflow).
constexpr double infeasible_objective = 1e300;
constexpr int max_polish_passes       = 5;

// Search coordinates are (log r, log gamma[, log h]); with h held, the third rate is fixed.
ModelParams from_log(std::span<const double> x, bool fit_h, double held_h)
{
    return {std::exp(x[0]), std::exp(x[1]), fit_h ? std::exp(x[2]) : held_h};
}

bool representable(const ModelParams& p)
{
    return p.r > 0.0 && std::isfinite(p.r) && p.gamma > 0.0 && std::isfinite(1.0 / p.gamma) &&
           std::isfinite(p.gamma) && p.h >= 0.0 && std::isfinite(p.h);
}

struct RunOutcome {
    OptimizeResult best;
    int iterations = 0;
};

RunOutcome minimize_with_polish(const Objective& objective, std::vector<double> start,
                                const OptimizerSettings& settings)
{
    RunOutcome out;
    out.best = nelder_mead(objective, start, settings);
    out.iterations += out.best.iterations;
    for (int pass = 0; pass < max_polish_passes; ++pass) {
        auto again = nelder_mead(objective, out.best.best_point, settings);
        out.iterations += again.iterations;
        const double gain = out.best.best_value - again.best_value;
        const bool better = again.best_value < out.best.best_value;
        if (better) {
            out.best = std::move(again);
        } else {
            out.best.converged = again.converged;
        }
        if (!better || gain <= 1e-12 * std::abs(out.best.best_value)) {
            break;
        }
    }
    return out;
}

} // namespace

std::vector<double> model_cumulative(const ModelParams& params, double y0, std::size_t n)
{
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) {
        out[i] = exact_solution(static_cast<double>(i), y0, params, ControlPolicy::none());
    }
    return out;
}

FitResult fit_cumulative(std::span<const double> observed, const ModelParams& initial_guess,
                         const OptimizerSettings& settings, bool fit_h)
{
    settings.validate();
    initial_guess.validate();
    if (observed.size() < 10) {
        throw std::invalid_argument("fit: need at least 10 days of observations, got " +
                                    std::to_string(observed.size()));
    }
    for (std::size_t i = 0; i < observed.size(); ++i) {
        if (!(observed[i] >= 0.0) || !std::isfinite(observed[i])) {
            throw std::invalid_argument("fit: observation " + std::to_string(i) + " is negative or non-finite");
        }
        if (i > 0 && observed[i] < observed[i - 1]) {
            throw std::invalid_argument("fit: cumulative observations decrease at day " + std::to_string(i));
        }
    }
    if (fit_h && initial_guess.h <= 0.0) {
        throw std::invalid_argument("fit: initial h must be > 0 for the log-space search");
    }

    const double y0 = observed[0];
    const Objective objective = [&](std::span<const double> x) {
        const auto p = from_log(x, fit_h, initial_guess.h);
        if (!representable(p)) {
            return infeasible_objective;
        }
        return sse(model_cumulative(p, y0, observed.size()), observed);
    };

    std::vector<double> guess{std::log(initial_guess.r), std::log(initial_guess.gamma)};
    if (fit_h) {
        guess.push_back(std::log(initial_guess.h));
    }
    std::vector<std::vector<double>> starts{guess};
    for (int k = 1; k <= settings.restarts; ++k) {
        std::mt19937_64 rng(settings.seed + static_cast<std::uint64_t>(k));
        std::uniform_real_distribution<double> jitter(-1.0, 1.0);
        auto s = guess;
        for (double& xi : s) {
            xi += jitter(rng);
        }
        starts.push_back(std::move(s));
    }

    std::vector<std::future<RunOutcome>> runs;
    runs.reserve(starts.size());
    for (auto& s : starts) {
        runs.push_back(std::async(std::launch::async, minimize_with_polish, std::cref(objective), s,
                                  std::cref(settings)));
    }

    FitResult result;
    OptimizeResult best;
    bool have_best = false;
    for (auto& run : runs) {
        auto outcome = run.get();
        result.iterations += outcome.iterations;
        if (!have_best || outcome.best.best_value < best.best_value) {
            best      = std::move(outcome.best);
            have_best = true;
        }
    }

    result.params    = from_log(best.best_point, fit_h, initial_guess.h);
    result.converged = best.converged;
    result.y0_used   = y0;
    const auto model = model_cumulative(result.params, y0, observed.size());
    result.residuals.resize(observed.size());
    for (std::size_t i = 0; i < observed.size(); ++i) {
        result.residuals[i] = model[i] - observed[i];
    }
    result.sse  = sse(model, observed);
    result.rmse = std::sqrt(result.sse / static_cast<double>(observed.size()));
    return result;
}

FitResult fit(const CaseSeries& series, const ModelParams& initial_guess, const OptimizerSettings& settings)
{
    series.validate();
    const auto observed = series.cumulative_as_double();
    return fit_cumulative(observed, initial_guess, settings);
}

GoodnessReport goodness_report(std::span<const double> residuals)
{
    GoodnessReport g;
    if (residuals.empty()) {
        return g;
    }
    double total = 0.0;
    int prev_sign = 0;
    int run       = 0;
    for (double e : residuals) {
        total += e * e;
        g.max_abs_residual = std::max(g.max_abs_residual, std::abs(e));
        const int sign     = (e > 0.0) - (e < 0.0);
        if (sign != 0 && sign == prev_sign) {
            ++run;
        } else if (sign != 0) {
            ++g.sign_runs;
            run = 1;
        } else {
            run = 0;
        }
        g.longest_run = std::max(g.longest_run, run);
        prev_sign     = sign;
    }
    g.rmse = std::sqrt(total / static_cast<double>(residuals.size()));
    return g;
}

GoodnessReport goodness_report(const FitResult& fit, const CaseSeries& series)
{
    if (fit.residuals.size() != series.size()) {
        throw std::invalid_argument("goodness_report: " + std::to_string(fit.residuals.size()) +
                                    " residuals for a series of " + std::to_string(series.size()) + " days");
    }
    return goodness_report(fit.residuals);
}

} // namespace epilog
