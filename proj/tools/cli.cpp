#include "cli.h"

#include "epilog/calibration.h"
#include "epilog/case_data.h"
#include "epilog/error.h"
#include "epilog/model.h"
#include "epilog/scenario.h"
#include "epilog/serialize.h"
#include "epilog/svg.h"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

namespace epilog::cli
{

namespace fs = std::filesystem;
using nlohmann::json;

namespace
{

struct Failure {
    ExitCode code;
    std::string message;
};

struct RunConfig {
    std::string subcommand;
    std::optional<std::string> input_path;
    std::string output_dir = ".";
    std::optional<double> r, gamma, h;
    std::optional<double> u, v;
    std::optional<std::string> mult;
    std::optional<std::string> efficacy;
    int horizon = study_horizon;
    std::optional<double> y0;
    std::optional<std::string> from_fit;
    bool plot          = false;
    std::string format = "both";

    bool want_json() const
    {
        return format != "csv";
    }
    bool want_csv() const
    {
        return format != "json";
    }
};

void add_options(CLI::App* sub, RunConfig& cfg)
{
    sub->add_option("--input", cfg.input_path, "case-count CSV (date plus daily or cumulative column)");
    sub->add_option("--output", cfg.output_dir, "output directory")->capture_default_str();
    sub->add_option("--r", cfg.r, "human-to-human transmission rate per day");
    sub->add_option("--gamma", cfg.gamma, "treatment facility rate; 1/gamma is the final size");
    sub->add_option("--h", cfg.h, "zoonotic transmission rate, persons per day");
    sub->add_option("--u", cfg.u, "control 1 efficacy in [0, 1]");
    sub->add_option("--v", cfg.v, "control 2 efficacy in [0, 1]");
    sub->add_option("--mult", cfg.mult, "treatment multiplier (>= 1); comma list for sweep");
    sub->add_option("--efficacy", cfg.efficacy, "comma list of strategy efficacies for sweep (default 0.4,0.8)");
    sub->add_option("--horizon", cfg.horizon, "days after the epoch to simulate")->capture_default_str();
    sub->add_option("--y0", cfg.y0, "cumulative cases at day 0 (default 1, or the fit's y0)");
    sub->add_option("--from-fit", cfg.from_fit, "take r, gamma, h from a fit.json");
    sub->add_flag("--plot", cfg.plot, "also write chart.svg and chart_daily.svg");
    sub->add_option("--format", cfg.format, "artifact format")
        ->check(CLI::IsMember({"json", "csv", "both"}))
        ->capture_default_str();
}

std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Failure{IoFailure, "cannot open " + path};
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    if (in.bad()) {
        throw Failure{IoFailure, "cannot read " + path};
    }
    return buf.str();
}

class OutputDir
{
public:
    explicit OutputDir(const std::string& dir)
        : m_dir(dir)
    {
        std::error_code ec;
        fs::create_directories(m_dir, ec);
        if (ec || !fs::is_directory(m_dir)) {
            throw Failure{IoFailure, "cannot create output directory " + dir};
        }
    }

    void write(const std::string& name, const std::string& content) const
    {
        const auto path = m_dir / name;
        std::ofstream out(path, std::ios::binary | std::ios::trunc);
        out << content;
        out.close();
        if (!out) {
            throw Failure{IoFailure, "cannot write " + path.string()};
        }
    }

    void write(const std::string& name, const json& doc) const
    {
        write(name, doc.dump(2) + "\n");
    }

private:
    fs::path m_dir;
};

std::vector<double> parse_list(const std::string& text, const char* flag)
{
    std::vector<double> out;
    std::stringstream ss(text);
    ss.imbue(std::locale::classic());
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::istringstream is(item);
        is.imbue(std::locale::classic());
        double x = 0.0;
        if (!(is >> x) || !(is >> std::ws).eof()) {
            throw Failure{Validation, std::string(flag) + ": '" + item + "' is not a number"};
        }
        out.push_back(x);
    }
    if (out.empty()) {
        throw Failure{Validation, std::string(flag) + ": empty list"};
    }
    return out;
}

struct Resolved {
    ModelParams params;
    double y0 = 1.0;
};

Resolved resolve_params(const RunConfig& cfg)
{
    Resolved res;
    bool have_r = false, have_gamma = false, have_h = false;
    if (cfg.from_fit) {
        const auto text = read_file(*cfg.from_fit);
        json doc;
        try {
            doc = json::parse(text);
        } catch (const json::exception& e) {
            throw Failure{Validation, *cfg.from_fit + ": " + e.what()};
        }
        res.params = params_from_fit_json(doc);
        if (doc.contains("y0") && doc["y0"].is_number()) {
            res.y0 = doc["y0"].get<double>();
        }
        have_r = have_gamma = have_h = true;
    }
    if (cfg.r) {
        res.params.r = *cfg.r;
        have_r       = true;
    }
    if (cfg.gamma) {
        res.params.gamma = *cfg.gamma;
        have_gamma       = true;
    }
    if (cfg.h) {
        res.params.h = *cfg.h;
        have_h       = true;
    }
    if (!have_r || !have_gamma || !have_h) {
        throw Failure{Validation, cfg.subcommand + ": give --r, --gamma and --h, or --from-fit"};
    }
    if (cfg.y0) {
        res.y0 = *cfg.y0;
    }
    res.params.validate();
    return res;
}

ControlPolicy resolve_policy(const RunConfig& cfg)
{
    ControlPolicy p;
    p.u = cfg.u.value_or(0.0);
    p.v = cfg.v.value_or(0.0);
    if (cfg.mult) {
        const auto m = parse_list(*cfg.mult, "--mult");
        if (m.size() != 1) {
            throw Failure{Validation, "--mult takes a single value for " + cfg.subcommand};
        }
        p.treatment_multiplier = m.front();
    }
    p.validate();
    return p;
}

CaseSeries load_series(const RunConfig& cfg)
{
    if (!cfg.input_path) {
        throw Failure{Validation, cfg.subcommand + ": --input is required"};
    }
    const auto text = read_file(*cfg.input_path);
    return parse_case_csv(text);
}

std::string summary_line(std::initializer_list<std::pair<const char*, double>> items)
{
    std::string line;
    for (const auto& [key, value] : items) {
        if (!line.empty()) {
            line += ' ';
        }
        line += key;
        line += '=';
        line += format_number(value);
    }
    return line;
}

void write_charts(const OutputDir& dir, const std::vector<LabeledTrajectory>& curves, const std::string& title)
{
    dir.write("chart.svg", emit_svg(curves, Column::Cumulative, {title + " (cumulative)", "cumulative cases"}));
    dir.write("chart_daily.svg", emit_svg(curves, Column::Daily, {title + " (daily)", "daily cases"}));
}

int cmd_fit(const RunConfig& cfg, std::ostream& out)
{
    const auto series = load_series(cfg);
    const OutputDir dir(cfg.output_dir);
    const auto result = fit(series);

    if (cfg.want_json()) {
        dir.write("fit.json", to_json(result));
    }
    if (cfg.want_csv()) {
        dir.write("residuals.csv", residuals_csv(result, series));
    }
    if (cfg.plot) {
        const auto observed = Trajectory::from_cumulative(series.cumulative_as_double(), series.epoch_date);
        const auto model = Trajectory::from_cumulative(model_cumulative(result.params, result.y0_used, series.size()),
                                                       series.epoch_date);
        std::vector<SvgSeries> cum{{"observed", observed.cumulative, true, true}, {"model", model.cumulative}};
        std::vector<SvgSeries> daily{{"observed", observed.daily, true, true}, {"model", model.daily}};
        dir.write("chart.svg", emit_svg(cum, {"Fit (cumulative)", "cumulative cases", series.epoch_date}));
        dir.write("chart_daily.svg", emit_svg(daily, {"Fit (daily)", "daily cases", series.epoch_date}));
    }
    if (cfg.want_json()) {
        out << summary_line({{"r", result.params.r}, {"gamma", result.params.gamma}, {"h", result.params.h},
                             {"rmse", result.rmse}})
            << (result.converged ? "" : " (not converged)") << "\n";
    }
    return result.converged ? Success : NotConverged;
}

int cmd_simulate(const RunConfig& cfg, std::ostream& out)
{
    const auto res    = resolve_params(cfg);
    const auto policy = resolve_policy(cfg);
    const OutputDir dir(cfg.output_dir);
    const auto traj = simulate(res.params, policy, cfg.horizon, res.y0);
    const auto c    = derive_constants(res.params, policy);

    if (cfg.want_json()) {
        json doc;
        doc["params"]    = {{"r", res.params.r}, {"gamma", res.params.gamma}, {"h", res.params.h}};
        doc["policy"]    = to_json(policy);
        doc["horizon"]   = cfg.horizon;
        doc["y0"]        = res.y0;
        doc["epoch"]     = format_iso_date(traj.t0_epoch);
        doc["constants"] = {{"a1", c.a1}, {"a2", c.a2}, {"a3", c.a3}, {"b1", c.b1}, {"b2", c.b2}, {"b3", c.b3}};
        doc["final_cumulative"] = traj.cumulative.back();
        if (policy.u < 1.0) {
            const auto eq   = equilibria(res.params, policy);
            const auto peak = peak_incidence(res.params, policy, res.y0);
            doc["equilibria"] = {{"xi1", eq.xi1}, {"xi2", eq.xi2}};
            doc["peak"] = {{"peak_day", peak.peak_day},
                           {"peak_daily_cases", peak.peak_daily_cases},
                           {"cumulative_at_peak", peak.cumulative_at_peak},
                           {"already_passed", peak.already_passed}};
        } else {
            doc["equilibria"] = nullptr;
            doc["peak"]       = nullptr;
        }
        doc["cumulative"] = traj.cumulative;
        doc["daily"]      = traj.daily;
        dir.write("simulation.json", doc);
        out << summary_line({{"final_cumulative", traj.cumulative.back()}}) << "\n";
    }
    if (cfg.want_csv()) {
        dir.write("simulation.csv", trajectory_csv(traj));
    }
    if (cfg.plot) {
        write_charts(dir, {{"model", traj}}, "Simulation");
    }
    return Success;
}

int cmd_scenario(const RunConfig& cfg, std::ostream& out)
{
    const auto res    = resolve_params(cfg);
    const auto policy = resolve_policy(cfg);
    const OutputDir dir(cfg.output_dir);
    const ScenarioSpec spec{"u=" + format_number(policy.u) + " v=" + format_number(policy.v) +
                                " mult=" + format_number(policy.treatment_multiplier),
                            policy, cfg.horizon, res.y0};
    const auto report = run_scenario(res.params, spec);

    if (cfg.want_json()) {
        dir.write("scenario.json", to_json(report));
        out << summary_line({{"avg_cumulative_reduction", report.avg_cumulative_reduction},
                             {"final_size_reduction", report.final_size_reduction}})
            << "\n";
    }
    if (cfg.want_csv()) {
        dir.write("trajectories.csv", trajectories_csv(report));
    }
    if (cfg.plot) {
        write_charts(dir, {{"baseline", report.baseline}, {report.label, report.scenario}}, "Scenario");
    }
    return Success;
}

int cmd_sweep(const RunConfig& cfg, std::ostream& out)
{
    const auto res = resolve_params(cfg);
    const auto multipliers = cfg.mult ? parse_list(*cfg.mult, "--mult") : std::vector<double>{2.0, 5.0};
    const auto efficacies  = cfg.efficacy ? parse_list(*cfg.efficacy, "--efficacy") : std::vector<double>{0.4, 0.8};
    const OutputDir dir(cfg.output_dir);

    const auto treatment = treatment_sweep(res.params, multipliers, cfg.horizon, res.y0);
    std::vector<std::pair<double, std::vector<RankedStrategy>>> strategies;
    for (double e : efficacies) {
        strategies.emplace_back(e, compare_strategies(res.params, e, cfg.horizon, res.y0));
    }

    auto row = [](const ScenarioReport& r) {
        auto opt = [](const std::optional<double>& x) { return x ? format_number(*x) : std::string(); };
        return r.label + ',' + format_number(r.policy.u) + ',' + format_number(r.policy.v) + ',' +
               format_number(r.policy.treatment_multiplier) + ',' + format_number(r.avg_cumulative_reduction) + ',' +
               format_number(r.max_pointwise_reduction) + ',' + format_number(r.final_size_reduction) + ',' +
               opt(r.peak_day_baseline) + ',' + opt(r.peak_day_scenario) + '\n';
    };

    if (cfg.want_json()) {
        json doc;
        doc["treatment"] = json::array();
        for (const auto& r : treatment) {
            doc["treatment"].push_back(to_json(r));
        }
        doc["strategies"] = json::array();
        for (const auto& [e, ranked] : strategies) {
            json entry;
            entry["efficacy"] = e;
            entry["ranking"]  = json::array();
            for (const auto& rs : ranked) {
                entry["ranking"].push_back(to_json(rs));
            }
            doc["strategies"].push_back(entry);
        }
        dir.write("sweep.json", doc);
        for (const auto& r : treatment) {
            out << r.label << ": "
                << summary_line({{"avg_cumulative_reduction", r.avg_cumulative_reduction},
                                 {"final_size_reduction", r.final_size_reduction}})
                << "\n";
        }
        for (const auto& [e, ranked] : strategies) {
            out << "efficacy " << format_number(e) << ":";
            for (const auto& rs : ranked) {
                out << ' ' << to_string(rs.strategy);
            }
            out << "\n";
        }
    }
    if (cfg.want_csv()) {
        std::string csv = "label,u,v,treatment_multiplier,avg_cumulative_reduction,max_pointwise_reduction,"
                          "final_size_reduction,peak_day_baseline,peak_day_scenario\n";
        for (const auto& r : treatment) {
            csv += row(r);
        }
        for (const auto& [e, ranked] : strategies) {
            for (const auto& rs : ranked) {
                csv += row(rs.report);
            }
        }
        dir.write("sweep.csv", csv);
    }
    if (cfg.plot && !treatment.empty()) {
        std::vector<LabeledTrajectory> curves{{"baseline", treatment.front().baseline}};
        for (const auto& r : treatment) {
            curves.push_back({r.label, r.scenario});
        }
        write_charts(dir, curves, "Treatment sweep");
    }
    return Success;
}

int cmd_plot(const RunConfig& cfg, std::ostream&)
{
    const bool have_params = cfg.from_fit || cfg.r || cfg.gamma || cfg.h;
    if (!cfg.input_path && !have_params) {
        throw Failure{Validation, "plot: give --input and/or model parameters"};
    }
    const OutputDir dir(cfg.output_dir);
    std::vector<SvgSeries> cum, daily;
    Date epoch        = study_epoch;
    std::size_t n     = static_cast<std::size_t>(cfg.horizon) + 1;
    std::optional<double> observed_y0;
    if (cfg.input_path) {
        const auto series = load_series(cfg);
        const auto obs    = Trajectory::from_cumulative(series.cumulative_as_double(), series.epoch_date);
        epoch             = series.epoch_date;
        n                 = series.size();
        observed_y0       = obs.cumulative.front();
        cum.push_back({"observed", obs.cumulative, true, true});
        daily.push_back({"observed", obs.daily, true, true});
    }
    if (have_params) {
        auto res = resolve_params(cfg);
        if (observed_y0 && !cfg.y0) {
            res.y0 = *observed_y0;
        }
        const auto policy = resolve_policy(cfg);
        const auto traj   = simulate(res.params, policy, static_cast<int>(n) - 1, res.y0);
        cum.push_back({"model", traj.cumulative});
        daily.push_back({"model", traj.daily});
    }
    dir.write("chart.svg", emit_svg(cum, {"Cumulative cases", "cumulative cases", epoch}));
    dir.write("chart_daily.svg", emit_svg(daily, {"Daily cases", "daily cases", epoch}));
    return Success;
}

} // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Controlled logistic epidemic model: fit, simulate and compare interventions", "epilog"};
    app.require_subcommand(1);
    // -h would clash with the --h rate option
    app.set_help_flag("--help", "print this help and exit");
    RunConfig cfg;

    struct Entry {
        const char* name;
        const char* help;
        int (*fn)(const RunConfig&, std::ostream&);
    };
    const Entry entries[] = {
        {"fit", "fit r, gamma, h to a case-count CSV", cmd_fit},
        {"simulate", "evaluate the model under one policy", cmd_simulate},
        {"scenario", "compare one policy against the no-control baseline", cmd_scenario},
        {"sweep", "treatment-multiplier sweep and strategy ranking", cmd_sweep},
        {"plot", "chart observed data and/or a model trajectory", cmd_plot},
    };
    for (const auto& e : entries) {
        add_options(app.add_subcommand(e.name, e.help), cfg);
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? Success : Validation;
    }

    for (const auto& e : entries) {
        if (!app.got_subcommand(e.name)) {
            continue;
        }
        cfg.subcommand = e.name;
        try {
            return e.fn(cfg, out);
        } catch (const Failure& f) {
            err << "error: " << f.message << "\n";
            return f.code;
        } catch (const ParseError& ex) {
            err << "error: " << (cfg.input_path ? *cfg.input_path + ": " : std::string()) << ex.what() << "\n";
            return Validation;
        } catch (const std::invalid_argument& ex) {
            err << "error: " << ex.what() << "\n";
            return Validation;
        } catch (const std::out_of_range& ex) {
            err << "error: " << ex.what() << "\n";
            return Validation;
        } catch (const std::domain_error& ex) {
            err << "error: " << ex.what() << "\n";
            return Validation;
        } catch (const NumericalError& ex) {
            err << "error: " << ex.what() << "\n";
            return NotConverged;
        } catch (const std::exception& ex) {
            err << "error: " << ex.what() << "\n";
            return IoFailure;
        }
    }
    return Validation;
}

} // namespace epilog::cli
