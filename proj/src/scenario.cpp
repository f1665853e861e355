#include "epilog/scenario.h"
#include "epilog/error.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <future>
#include <stdexcept>

namespace epilog
{

namespace
{

constexpr double fallback_step = 0.01;

std::string compact(double x)
{
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x);
    return ec == std::errc{} ? std::string(buf, ptr) : std::to_string(x);
}

void require_shared_grid(const Trajectory& baseline, const Trajectory& scenario)
{
    if (baseline.size() != scenario.size() || baseline.step != scenario.step || baseline.t0_epoch != scenario.t0_epoch) {
        throw std::invalid_argument("baseline and scenario trajectories do not share a grid");
    }
    if (baseline.size() < 2) {
        throw std::invalid_argument("trajectories need at least days 0 and 1");
    }
}

template <class F>
void for_each_ratio(const Trajectory& baseline, const Trajectory& scenario, F&& f)
{
    require_shared_grid(baseline, scenario);
    for (std::size_t i = 1; i < baseline.size(); ++i) {
        const double b = baseline.cumulative[i];
        if (b == 0.0) {
            throw std::domain_error("baseline cumulative is zero on day " + std::to_string(i));
        }
        f(1.0 - scenario.cumulative[i] / b);
    }
}

} // namespace

void ScenarioSpec::validate() const
{
    policy.validate();
    if (horizon < 1) {
        throw DomainError("scenario horizon must be >= 1 day, got " + std::to_string(horizon));
    }
    if (!(y0 >= 0.0) || !std::isfinite(y0)) {
        throw DomainError("scenario y0 must be finite and >= 0");
    }
}

Trajectory simulate(const ModelParams& params, const ControlPolicy& policy, int horizon, double y0)
{
    const auto c = derive_constants(params, policy);
    if (horizon < 1) {
        throw DomainError("horizon must be >= 1 day");
    }
    if (c.a1 == 0.0) {
        return integrate_rk4([c](double y) { return rhs(y, c); }, y0, horizon, fallback_step);
    }
    std::vector<double> cum(static_cast<std::size_t>(horizon) + 1);
    for (std::size_t i = 0; i < cum.size(); ++i) {
        cum[i] = closed_form(static_cast<double>(i), y0, params, policy);
    }
    return Trajectory::from_cumulative(std::move(cum));
}

double avg_cumulative_reduction(const Trajectory& baseline, const Trajectory& scenario)
{
    double total      = 0.0;
    std::size_t count = 0;
    for_each_ratio(baseline, scenario, [&](double r) {
        total += r;
        ++count;
    });
    return total / static_cast<double>(count);
}

double max_pointwise_reduction(const Trajectory& baseline, const Trajectory& scenario)
{
    double best = -HUGE_VAL;
    for_each_ratio(baseline, scenario, [&](double r) { best = std::max(best, r); });
    return best;
}

ScenarioReport run_scenario(const ModelParams& params, const ScenarioSpec& spec)
{
    params.validate();
    spec.validate();

    const auto none = ControlPolicy::none();
    ScenarioReport report;
    report.label    = spec.label;
    report.policy   = spec.policy;
    report.y0       = spec.y0;
    report.baseline = simulate(params, none, spec.horizon, spec.y0);
    report.scenario = simulate(params, spec.policy, spec.horizon, spec.y0);

    report.avg_cumulative_reduction = avg_cumulative_reduction(report.baseline, report.scenario);
    report.max_pointwise_reduction  = max_pointwise_reduction(report.baseline, report.scenario);
    report.final_size_reduction     = 1.0 - report.scenario.cumulative.back() / report.baseline.cumulative.back();

    const auto base_peak            = peak_incidence(params, none, spec.y0);
    report.peak_day_baseline        = base_peak.peak_day;
    report.peak_daily_baseline      = base_peak.peak_daily_cases;
    if (spec.policy.u < 1.0) {
        const auto peak            = peak_incidence(params, spec.policy, spec.y0);
        report.peak_day_scenario   = peak.peak_day;
        report.peak_daily_scenario = peak.peak_daily_cases;
    } else {
        report.peak_daily_scenario = derive_constants(params, spec.policy).a3;
    }
    return report;
}

ControlPolicy policy_for(Strategy strategy, double efficacy)
{
    switch (strategy) {
    case Strategy::ControlOne:
        return {efficacy, 0.0, 1.0};
    case Strategy::ControlTwo:
        return {0.0, efficacy, 1.0};
    case Strategy::BothControls:
        return {efficacy, efficacy, 1.0};
    }
    throw std::invalid_argument("unknown strategy");
}

const char* to_string(Strategy strategy)
{
    switch (strategy) {
    case Strategy::ControlOne:
        return "strategy1";
    case Strategy::ControlTwo:
        return "strategy2";
    case Strategy::BothControls:
        return "strategy3";
    }
    return "unknown";
}

std::vector<RankedStrategy> compare_strategies(const ModelParams& params, double efficacy, int horizon, double y0)
{
    if (!(efficacy > 0.0 && efficacy < 1.0)) {
        throw DomainError("efficacy must lie in (0, 1), got " + std::to_string(efficacy));
    }
    std::vector<RankedStrategy> ranked;
    for (auto s : {Strategy::ControlOne, Strategy::ControlTwo, Strategy::BothControls}) {
        ScenarioSpec spec{to_string(s), policy_for(s, efficacy), horizon, y0};
        ranked.push_back({s, run_scenario(params, spec)});
    }
    std::stable_sort(ranked.begin(), ranked.end(), [](const RankedStrategy& a, const RankedStrategy& b) {
        if (a.report.avg_cumulative_reduction != b.report.avg_cumulative_reduction) {
            return a.report.avg_cumulative_reduction > b.report.avg_cumulative_reduction;
        }
        return a.report.final_size_reduction > b.report.final_size_reduction;
    });
    return ranked;
}

std::vector<ScenarioReport> treatment_sweep(const ModelParams& params, const std::vector<double>& multipliers,
                                            int horizon, double y0)
{
    for (double m : multipliers) {
        if (!(m >= 1.0)) {
            throw DomainError("treatment multipliers must be >= 1, got " + std::to_string(m));
        }
    }
    std::vector<std::future<ScenarioReport>> pending;
    pending.reserve(multipliers.size());
    for (double m : multipliers) {
        ScenarioSpec spec{"treatment x" + compact(m), {0.0, 0.0, m}, horizon, y0};
        pending.push_back(std::async(std::launch::async, [params, spec] { return run_scenario(params, spec); }));
    }
    std::vector<ScenarioReport> reports;
    reports.reserve(pending.size());
    for (auto& p : pending) {
        reports.push_back(p.get());
    }
    return reports;
}

} // namespace epilog
