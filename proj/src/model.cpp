#include "epilog/model.h"
#include "epilog/error.h"

#include <cmath>
#include <string>

namespace epilog
{

namespace
{

std::string num(double x)
{
    return std::to_string(x);
}

// Half-width of the interval between the equilibria, W = xi1 - xi2 = b1 / b2. Written so that
// a3 = 0 gives W = a2 without rounding.
double equilibrium_span(const DerivedConstants& c)
{
    return c.a2 * std::sqrt(1.0 + 4.0 * c.a3 / (c.a1 * c.a2));
}

void require_growth(const DerivedConstants& c, const char* op)
{
    if (!(c.a1 > 0.0)) {
        throw DomainError(std::string(op) +
                          ": u = 1 removes the logistic term; the tanh solution does not exist "
                          "(integrate rhs numerically instead)");
    }
}

// Phase s0 with y(t) = a2/2 + (W/2) tanh(k t + s0). Throws unless xi2 < y0 < xi1.
double growth_phase(double y0, const DerivedConstants& c, double span, const char* op)
{
    const double w0 = 2.0 * y0 - c.a2;
    if (!(std::abs(w0) < span)) {
        const double xi1 = 0.5 * (c.a2 + span);
        const double xi2 = 0.5 * (c.a2 - span);
        throw DomainError(std::string(op) + ": y0 = " + num(y0) + " outside the growing branch (" +
                          num(xi2) + ", " + num(xi1) + ")");
    }
    return std::atanh(w0 / span);
}

} // namespace

void ModelParams::validate() const
{
    if (!(r > 0.0) || !std::isfinite(r)) {
        throw DomainError("r must be finite and > 0, got " + num(r));
    }
    if (!(gamma > 0.0) || !std::isfinite(gamma) || !std::isfinite(1.0 / gamma)) {
        throw DomainError("gamma must be > 0 with finite 1/gamma, got " + num(gamma));
    }
    if (!(h >= 0.0) || !std::isfinite(h)) {
        throw DomainError("h must be finite and >= 0, got " + num(h));
    }
}

void ControlPolicy::validate() const
{
    if (!(u >= 0.0 && u <= 1.0)) {
        throw DomainError("u must lie in [0, 1], got " + num(u));
    }
    if (!(v >= 0.0 && v <= 1.0)) {
        throw DomainError("v must lie in [0, 1], got " + num(v));
    }
    if (!(treatment_multiplier >= 1.0) || !std::isfinite(treatment_multiplier)) {
        throw DomainError("treatment multiplier must be finite and >= 1, got " + num(treatment_multiplier));
    }
}

DerivedConstants derive_constants(const ModelParams& params, const ControlPolicy& policy)
{
    params.validate();
    policy.validate();

    DerivedConstants c;
    c.a1 = (1.0 - policy.u) * params.r;
    c.a2 = 1.0 / (policy.treatment_multiplier * params.gamma);
    c.a3 = (1.0 - policy.v) * params.h;
    c.b1 = std::sqrt(c.a1 * c.a2 + 4.0 * c.a3);
    c.b2 = std::sqrt(c.a1 / c.a2);
    c.b3 = std::sqrt(c.a1 * c.a2);
    return c;
}

double rhs(double y, const DerivedConstants& c)
{
    return c.a1 * y * (1.0 - y / c.a2) + c.a3;
}

double rhs(double y, const ModelParams& params, const ControlPolicy& policy)
{
    return rhs(y, derive_constants(params, policy));
}

double closed_form(double t, double y0, const ModelParams& params, const ControlPolicy& policy)
{
    const auto c = derive_constants(params, policy);
    require_growth(c, "closed_form");
    const double span  = equilibrium_span(c);
    const double phase = growth_phase(y0, c, span, "closed_form");
    const double k     = 0.5 * c.b1 * c.b2;
    return 0.5 * c.a2 + 0.5 * span * std::tanh(k * t + phase);
}

double inflection_time(double y0, const ModelParams& params, const ControlPolicy& policy)
{
    const auto c = derive_constants(params, policy);
    require_growth(c, "inflection_time");
    const double span = equilibrium_span(c);
    const double k    = 0.5 * c.b1 * c.b2;
    return -growth_phase(y0, c, span, "inflection_time") / k;
}

double exact_solution(double t, double y0, const ModelParams& params, const ControlPolicy& policy)
{
    const auto c = derive_constants(params, policy);
    require_growth(c, "exact_solution");
    if (!(y0 >= 0.0) || !std::isfinite(y0)) {
        throw DomainError("exact_solution: y0 must be finite and >= 0, got " + num(y0));
    }
    const double span = equilibrium_span(c);
    const double k    = 0.5 * c.b1 * c.b2;
    const double w0   = 2.0 * y0 - c.a2;

    if (std::abs(w0) < span) {
        return 0.5 * c.a2 + 0.5 * span * std::tanh(k * t + std::atanh(w0 / span));
    }
    if (w0 > span) {
        // above xi1: decays towards it along W coth(k t + s0)
        const double s = k * t + std::atanh(span / w0);
        return 0.5 * c.a2 + 0.5 * span / std::tanh(s);
    }
    // w0 == span or w0 == -span: resting at an equilibrium
    return y0;
}

Equilibria equilibria(const ModelParams& params, const ControlPolicy& policy)
{
    const auto c = derive_constants(params, policy);
    require_growth(c, "equilibria");
    const double span = equilibrium_span(c);
    Equilibria e;
    e.xi1 = 0.5 * (c.a2 + span);
    // product of roots is -a2 a3 / a1; avoids cancellation in (a2 - span) / 2
    e.xi2 = -(c.a2 * c.a3 / c.a1) / e.xi1 + 0.0; // + 0.0 turns -0 into 0 when h = 0
    return e;
}

PeakInfo peak_incidence(const ModelParams& params, const ControlPolicy& policy, double y0)
{
    const auto c = derive_constants(params, policy);
    if (!(c.a1 > 0.0)) {
        throw DomainError("peak_incidence: u = 1 leaves a constant influx with no interior maximum");
    }
    PeakInfo p;
    p.peak_day           = inflection_time(y0, params, policy);
    p.peak_daily_cases   = 0.25 * c.a1 * c.a2 + c.a3;
    p.cumulative_at_peak = 0.5 * c.a2;
    p.already_passed     = y0 >= p.cumulative_at_peak;
    return p;
}

} // namespace epilog
