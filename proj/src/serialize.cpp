#include "epilog/serialize.h"

#include <charconv>
#include <stdexcept>

namespace epilog
{

using nlohmann::json;

std::string format_number(double x)
{
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x);
    if (ec != std::errc{}) {
        throw std::runtime_error("format_number: conversion failed");
    }
    return {buf, ptr};
}

json to_json(const FitResult& fit)
{
    json doc;
    doc["r"]          = fit.params.r;
    doc["gamma"]      = fit.params.gamma;
    doc["h"]          = fit.params.h;
    doc["sse"]        = fit.sse;
    doc["rmse"]       = fit.rmse;
    doc["iterations"] = fit.iterations;
    doc["converged"]  = fit.converged;
    doc["y0"]         = fit.y0_used;
    doc["residuals"]  = fit.residuals;
    return doc;
}

ModelParams params_from_fit_json(const json& doc)
{
    ModelParams p;
    try {
        p.r     = doc.at("r").get<double>();
        p.gamma = doc.at("gamma").get<double>();
        p.h     = doc.at("h").get<double>();
    } catch (const json::exception& e) {
        throw std::invalid_argument(std::string("fit document: ") + e.what());
    }
    p.validate();
    return p;
}

json to_json(const ControlPolicy& policy)
{
    return {{"u", policy.u}, {"v", policy.v}, {"treatment_multiplier", policy.treatment_multiplier}};
}

namespace
{

json optional_number(const std::optional<double>& x)
{
    return x ? json(*x) : json(nullptr);
}

json trajectory_json(const Trajectory& t)
{
    return {{"cumulative", t.cumulative}, {"daily", t.daily}};
}

} // namespace

json to_json(const ScenarioReport& report)
{
    json doc;
    doc["label"]                    = report.label;
    doc["policy"]                   = to_json(report.policy);
    doc["horizon"]                  = report.baseline.size() - 1;
    doc["y0"]                       = report.y0;
    doc["epoch"]                    = format_iso_date(report.baseline.t0_epoch);
    doc["avg_cumulative_reduction"] = report.avg_cumulative_reduction;
    doc["max_pointwise_reduction"]  = report.max_pointwise_reduction;
    doc["final_size_reduction"]     = report.final_size_reduction;
    doc["peak_day_baseline"]        = optional_number(report.peak_day_baseline);
    doc["peak_day_scenario"]        = optional_number(report.peak_day_scenario);
    doc["peak_daily_baseline"]      = report.peak_daily_baseline;
    doc["peak_daily_scenario"]      = report.peak_daily_scenario;
    doc["baseline"]                 = trajectory_json(report.baseline);
    doc["scenario"]                 = trajectory_json(report.scenario);
    return doc;
}

json to_json(const RankedStrategy& ranked)
{
    json doc        = to_json(ranked.report);
    doc["strategy"] = to_string(ranked.strategy);
    return doc;
}

std::string trajectories_csv(const ScenarioReport& report)
{
    const auto& b   = report.baseline;
    const auto& s   = report.scenario;
    std::string out = "day,date,baseline_cumulative,scenario_cumulative,baseline_daily,scenario_daily\n";
    for (std::size_t i = 0; i < b.size(); ++i) {
        out += std::to_string(i) + ',' + format_iso_date(add_days(b.t0_epoch, static_cast<long long>(i))) + ',' +
               format_number(b.cumulative[i]) + ',' + format_number(s.cumulative[i]) + ',' +
               format_number(b.daily[i]) + ',' + format_number(s.daily[i]) + '\n';
    }
    return out;
}

std::string trajectory_csv(const Trajectory& traj)
{
    std::string out = "day,date,cumulative,daily\n";
    for (std::size_t i = 0; i < traj.size(); ++i) {
        out += std::to_string(i) + ',' + format_iso_date(add_days(traj.t0_epoch, static_cast<long long>(i))) + ',' +
               format_number(traj.cumulative[i]) + ',' + format_number(traj.daily[i]) + '\n';
    }
    return out;
}

std::string residuals_csv(const FitResult& fit, const CaseSeries& series)
{
    if (fit.residuals.size() != series.size()) {
        throw std::invalid_argument("residuals_csv: fit and series lengths differ");
    }
    std::string out = "day,date,observed,model,residual\n";
    for (std::size_t i = 0; i < series.size(); ++i) {
        const auto observed = static_cast<double>(series.cumulative[i]);
        out += std::to_string(i) + ',' + format_iso_date(series.dates[i]) + ',' + std::to_string(series.cumulative[i]) +
               ',' + format_number(observed + fit.residuals[i]) + ',' + format_number(fit.residuals[i]) + '\n';
    }
    return out;
}

} // namespace epilog
