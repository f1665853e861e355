#include "epilog/numerics.h"
#include "epilog/error.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace epilog
{

Trajectory Trajectory::from_cumulative(std::vector<double> cumulative, Date t0_epoch)
{
    Trajectory traj;
    traj.t0_epoch   = t0_epoch;
    traj.cumulative = std::move(cumulative);
    derive_daily(traj);
    return traj;
}

void derive_daily(Trajectory& traj)
{
    const auto& cum = traj.cumulative;
    traj.daily.resize(cum.size());
    if (cum.empty()) {
        return;
    }
    traj.daily[0] = cum[0];
    for (std::size_t i = 1; i < cum.size(); ++i) {
        traj.daily[i] = cum[i] - cum[i - 1];
    }
}

Trajectory integrate_rk4(const RateFunction& rate, double y0, double horizon, double step, Date t0_epoch)
{
    constexpr double state_limit = 1e12;
    if (!std::isfinite(y0) || !std::isfinite(step) || !std::isfinite(horizon)) {
        throw NumericalError("integrate_rk4: y0, step and horizon must be finite");
    }
    if (!(step > 0.0) || step > 1.0) {
        throw std::invalid_argument("integrate_rk4: step must lie in (0, 1] day");
    }
    if (!(horizon >= step)) {
        throw std::invalid_argument("integrate_rk4: horizon must be >= step");
    }
    const long substeps = std::lround(1.0 / step);
    if (std::abs(static_cast<double>(substeps) * step - 1.0) > 1e-9) {
        throw std::invalid_argument("integrate_rk4: step must divide one day evenly");
    }
    const double dt = 1.0 / static_cast<double>(substeps);
    const auto days = static_cast<std::size_t>(std::floor(horizon + 1e-9));

    auto check = [&](double y, std::size_t day) {
        if (!std::isfinite(y) || y < 0.0 || y > state_limit) {
            std::ostringstream msg;
            msg << "integrate_rk4: state " << y << " left [0, 1e12] before day " << day;
            throw NumericalError(msg.str());
        }
    };
    check(y0, 0);

    std::vector<double> out;
    out.reserve(days + 1);
    out.push_back(y0);
    double y = y0;
    for (std::size_t day = 1; day <= days; ++day) {
        for (long s = 0; s < substeps; ++s) {
            const double k1 = rate(y);
            const double k2 = rate(y + 0.5 * dt * k1);
            const double k3 = rate(y + 0.5 * dt * k2);
            const double k4 = rate(y + dt * k3);
            y += dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        }
        check(y, day);
        out.push_back(y);
    }
    return Trajectory::from_cumulative(std::move(out), t0_epoch);
}

double sse(std::span<const double> model_values, std::span<const double> observed)
{
    if (model_values.size() != observed.size()) {
        throw std::invalid_argument("sse: length mismatch (" + std::to_string(model_values.size()) + " vs " +
                                    std::to_string(observed.size()) + ")");
    }
    if (model_values.empty()) {
        throw std::invalid_argument("sse: empty sequences");
    }
    double total = 0.0;
    for (std::size_t i = 0; i < observed.size(); ++i) {
        const double d = model_values[i] - observed[i];
        total += d * d;
    }
    return total;
}

void OptimizerSettings::validate() const
{
    if (max_iterations < 1) {
        throw std::invalid_argument("max_iterations must be >= 1");
    }
    if (!(simplex_tolerance > 0.0) || !(parameter_tolerance > 0.0)) {
        throw std::invalid_argument("optimizer tolerances must be > 0");
    }
    if (initial_step_fractions.empty()) {
        throw std::invalid_argument("initial_step_fractions must not be empty");
    }
    for (double f : initial_step_fractions) {
        if (!(f > 0.0) || !std::isfinite(f)) {
            throw std::invalid_argument("initial_step_fractions must be finite and > 0");
        }
    }
    if (restarts < 0) {
        throw std::invalid_argument("restarts must be >= 0");
    }
}

const char* to_string(StopReason reason)
{
    switch (reason) {
    case StopReason::ObjectiveSpread:
        return "objective_spread";
    case StopReason::SimplexSize:
        return "simplex_size";
    case StopReason::MaxIterations:
        return "max_iterations";
    }
    return "unknown";
}

namespace
{

struct Vertex {
    std::vector<double> x;
    double f;
};

} // namespace

OptimizeResult nelder_mead(const Objective& objective, std::span<const double> initial_guess,
                           const OptimizerSettings& settings)
{
    settings.validate();
    const std::size_t n = initial_guess.size();
    if (n == 0) {
        throw std::invalid_argument("nelder_mead: empty initial guess");
    }
    const auto& fractions = settings.initial_step_fractions;
    if (fractions.size() != 1 && fractions.size() != n) {
        throw std::invalid_argument("nelder_mead: initial_step_fractions must have 1 or n entries");
    }

    auto evaluate = [&](const std::vector<double>& x) {
        const double f = objective(x);
        if (!std::isfinite(f)) {
            std::ostringstream msg;
            msg.precision(17);
            msg << "nelder_mead: objective is " << f << " at (";
            for (std::size_t i = 0; i < x.size(); ++i) {
                msg << (i ? ", " : "") << x[i];
            }
            msg << ")";
            throw NumericalError(msg.str());
        }
        return f;
    };

    std::vector<Vertex> simplex;
    simplex.reserve(n + 1);
    {
        std::vector<double> x0(initial_guess.begin(), initial_guess.end());
        simplex.push_back({x0, evaluate(x0)});
        for (std::size_t i = 0; i < n; ++i) {
            const double frac = fractions.size() == 1 ? fractions[0] : fractions[i];
            auto xi = x0;
            xi[i] += x0[i] != 0.0 ? frac * std::abs(x0[i]) : frac;
            simplex.push_back({xi, evaluate(xi)});
        }
    }

    auto by_value = [](const Vertex& a, const Vertex& b) { return a.f < b.f; };
    auto blend    = [n](const std::vector<double>& from, const std::vector<double>& to, double t) {
        std::vector<double> out(n);
        for (std::size_t j = 0; j < n; ++j) {
            out[j] = from[j] + t * (to[j] - from[j]);
        }
        return out;
    };

    OptimizeResult result;
    int iter = 0;
    for (;; ++iter) {
        std::stable_sort(simplex.begin(), simplex.end(), by_value);
        const double fbest  = simplex.front().f;
        const double fworst = simplex.back().f;

        const double spread = fworst - fbest;
        if (spread <= settings.simplex_tolerance * (std::abs(fbest) + std::abs(fworst)) + 1e-300) {
            result.converged = true;
            result.reason    = StopReason::ObjectiveSpread;
            break;
        }
        double diameter = 0.0;
        for (std::size_t i = 1; i <= n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                diameter = std::max(diameter, std::abs(simplex[i].x[j] - simplex[0].x[j]));
            }
        }
        if (diameter <= settings.parameter_tolerance) {
            result.converged = true;
            result.reason    = StopReason::SimplexSize;
            break;
        }
        if (iter >= settings.max_iterations) {
            result.converged = false;
            result.reason    = StopReason::MaxIterations;
            break;
        }

        std::vector<double> centroid(n, 0.0);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                centroid[j] += simplex[i].x[j];
            }
        }
        for (double& c : centroid) {
            c /= static_cast<double>(n);
        }

        Vertex& worst      = simplex.back();
        const double fnext = simplex[n - 1].f;

        auto reflected  = blend(centroid, worst.x, -1.0);
        const double fr = evaluate(reflected);

        if (fr < fbest) {
            auto expanded   = blend(centroid, worst.x, -2.0);
            const double fe = evaluate(expanded);
            if (fe < fr) {
                worst = {std::move(expanded), fe};
            } else {
                worst = {std::move(reflected), fr};
            }
            continue;
        }
        if (fr < fnext) {
            worst = {std::move(reflected), fr};
            continue;
        }

        bool shrink = false;
        if (fr < worst.f) {
            auto contracted = blend(centroid, reflected, 0.5);
            const double fc = evaluate(contracted);
            if (fc <= fr) {
                worst = {std::move(contracted), fc};
            } else {
                shrink = true;
            }
        } else {
            auto contracted = blend(centroid, worst.x, 0.5);
            const double fc = evaluate(contracted);
            if (fc < worst.f) {
                worst = {std::move(contracted), fc};
            } else {
                shrink = true;
            }
        }
        if (shrink) {
            for (std::size_t i = 1; i <= n; ++i) {
                simplex[i].x = blend(simplex[0].x, simplex[i].x, 0.5);
                simplex[i].f = evaluate(simplex[i].x);
            }
        }
    }

    result.best_point = simplex.front().x;
    result.best_value = simplex.front().f;
    result.iterations = iter;
    return result;
}

} // namespace epilog
