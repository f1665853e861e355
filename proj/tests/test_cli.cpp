#include "cli.h"

#include "epilog/date.h"
#include "epilog/model.h"

#include <doctest.h>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <random>
#include <sstream>
#include <string>
#include <vector>

namespace fs = std::filesystem;
using nlohmann::json;

namespace
{

struct Outcome {
    int code;
    std::string out;
    std::string err;
};

Outcome invoke(std::initializer_list<std::string> args)
{
    std::vector<std::string> storage{"epilog"};
    storage.insert(storage.end(), args.begin(), args.end());
    std::vector<const char*> argv;
    for (const auto& a : storage) {
        argv.push_back(a.c_str());
    }
    std::ostringstream out, err;
    const int code = epilog::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

class TempDir
{
public:
    TempDir()
    {
        static std::mt19937_64 rng{std::random_device{}()};
        m_path = fs::temp_directory_path() / ("epilog_cli_test_" + std::to_string(rng()));
        fs::remove_all(m_path);
        fs::create_directories(m_path);
    }
    ~TempDir()
    {
        std::error_code ec;
        fs::remove_all(m_path, ec);
    }
    std::string operator/(const std::string& name) const
    {
        return (m_path / name).string();
    }
    std::string str() const
    {
        return m_path.string();
    }

private:
    fs::path m_path;
};

std::string slurp(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void spit(const std::string& path, const std::string& content)
{
    std::ofstream(path, std::ios::binary) << content;
}

std::string synthetic_csv()
{
    using namespace epilog;
    std::string csv = "date,cumulative\n";
    for (int t = 0; t < 236; ++t) {
        const double y = closed_form(t, 1.0, ModelParams::reference(), ControlPolicy::none());
        csv += format_iso_date(add_days(study_epoch, t)) + "," + std::to_string(std::llround(y)) + "\n";
    }
    return csv;
}

const std::initializer_list<std::string> ref_flags = {"--r", "0.06", "--gamma", "0.000034", "--h", "5.99"};

Outcome scenario(const TempDir& dir, std::initializer_list<std::string> extra)
{
    std::vector<std::string> args{"scenario", "--output", dir.str()};
    args.insert(args.end(), ref_flags.begin(), ref_flags.end());
    args.insert(args.end(), extra.begin(), extra.end());
    std::vector<const char*> argv{"epilog"};
    for (const auto& a : args) {
        argv.push_back(a.c_str());
    }
    std::ostringstream out, err;
    const int code = epilog::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

} // namespace

TEST_CASE("fit on a synthetic csv recovers r")
{
    TempDir dir;
    spit(dir / "cases.csv", synthetic_csv());
    const auto res = invoke({"fit", "--input", dir / "cases.csv", "--output", dir.str()});
    INFO(res.err);
    REQUIRE(res.code == 0);
    const auto doc = json::parse(slurp(dir / "fit.json"));
    CHECK(std::abs(doc["r"].get<double>() - 0.06) / 0.06 < 0.01);
    CHECK(doc["converged"].get<bool>());
    CHECK(doc["residuals"].size() == 236);

    const auto residuals = slurp(dir / "residuals.csv");
    CHECK(residuals.rfind("day,date,observed,model,residual\n", 0) == 0);
    CHECK(std::count(residuals.begin(), residuals.end(), '\n') == 237);
}

TEST_CASE("missing input file is an io failure naming the path")
{
    TempDir dir;
    const auto path = dir / "nope.csv";
    const auto res  = invoke({"fit", "--input", path, "--output", dir.str()});
    CHECK(res.code == 1);
    CHECK(res.err.find(path) != std::string::npos);
}

TEST_CASE("negative count is a validation failure naming the row")
{
    TempDir dir;
    spit(dir / "bad.csv", "date,daily\n2022-05-10,1\n2022-05-11,-4\n");
    const auto res = invoke({"fit", "--input", dir / "bad.csv", "--output", dir.str()});
    CHECK(res.code == 2);
    CHECK(res.err.find("row 3") != std::string::npos);
}

TEST_CASE("strong control 1 scenario")
{
    TempDir dir;
    const auto res = scenario(dir, {"--u", "0.8", "--v", "0", "--horizon", "236"});
    INFO(res.err);
    REQUIRE(res.code == 0);
    const auto doc = json::parse(slurp(dir / "scenario.json"));
    CHECK(std::abs(doc["final_size_reduction"].get<double>() - 0.78) < 0.05);
    CHECK(doc["horizon"] == 236);
    CHECK(doc["baseline"]["cumulative"].size() == 237);
    const auto csv = slurp(dir / "trajectories.csv");
    CHECK(csv.rfind("day,date,baseline_cumulative,scenario_cumulative,baseline_daily,scenario_daily\n", 0) == 0);
    CHECK_FALSE(fs::exists(dir / "chart.svg"));
}

TEST_CASE("out-of-range control is rejected")
{
    TempDir dir;
    const auto res = scenario(dir, {"--u", "1.2"});
    CHECK(res.code == 2);
    CHECK(res.err.find("[0, 1]") != std::string::npos);
    CHECK_FALSE(fs::exists(dir / "scenario.json"));
}

TEST_CASE("no controls means no reduction")
{
    TempDir dir;
    REQUIRE(scenario(dir, {"--u", "0", "--v", "0"}).code == 0);
    const auto doc = json::parse(slurp(dir / "scenario.json"));
    CHECK(doc["avg_cumulative_reduction"].get<double>() == 0.0);
    CHECK(doc["final_size_reduction"].get<double>() == 0.0);
    CHECK(doc["baseline"] == doc["scenario"]);
}

TEST_CASE("parameters are required")
{
    TempDir dir;
    CHECK(invoke({"simulate", "--output", dir.str()}).code == 2);
    CHECK(invoke({"simulate", "--output", dir.str(), "--r", "0.06"}).code == 2);
    CHECK(invoke({"simulate", "--output", dir.str(), "--r", "0.06", "--gamma", "-1", "--h", "1"}).code == 2);
    CHECK(invoke({"scenario", "--output", dir.str(), "--r", "abc"}).code == 2);
    CHECK(invoke({"nonsense"}).code == 2);
    CHECK(invoke({}).code == 2);
    CHECK(invoke({"--help"}).code == 0);
}

TEST_CASE("fit output chains into simulate")
{
    TempDir dir;
    spit(dir / "cases.csv", synthetic_csv());
    REQUIRE(invoke({"fit", "--input", dir / "cases.csv", "--output", dir.str()}).code == 0);
    const auto fit = json::parse(slurp(dir / "fit.json"));

    const auto res = invoke({"simulate", "--from-fit", dir / "fit.json", "--output", dir.str()});
    INFO(res.err);
    REQUIRE(res.code == 0);
    const auto sim = json::parse(slurp(dir / "simulation.json"));
    CHECK(sim["params"]["r"] == fit["r"]);
    CHECK(sim["y0"] == fit["y0"]);
    CHECK(std::abs(sim["final_cumulative"].get<double>() - 29506.0) < 30.0);

    // explicit flags override the file
    REQUIRE(invoke({"simulate", "--from-fit", dir / "fit.json", "--r", "0.05", "--output", dir.str()}).code == 0);
    CHECK(json::parse(slurp(dir / "simulation.json"))["params"]["r"] == 0.05);

    spit(dir / "broken.json", "{ not json");
    CHECK(invoke({"simulate", "--from-fit", dir / "broken.json", "--output", dir.str()}).code == 2);
    CHECK(invoke({"simulate", "--from-fit", dir / "absent.json", "--output", dir.str()}).code == 1);
}

TEST_CASE("format flag selects artifacts")
{
    TempDir json_only, csv_only;
    REQUIRE(scenario(json_only, {"--u", "0.4", "--format", "json"}).code == 0);
    CHECK(fs::exists(json_only / "scenario.json"));
    CHECK_FALSE(fs::exists(json_only / "trajectories.csv"));

    REQUIRE(scenario(csv_only, {"--u", "0.4", "--format", "csv", "--plot"}).code == 0);
    CHECK_FALSE(fs::exists(csv_only / "scenario.json"));
    CHECK(fs::exists(csv_only / "trajectories.csv"));
    CHECK(fs::exists(csv_only / "chart.svg"));
    CHECK(fs::exists(csv_only / "chart_daily.svg"));

    TempDir dir;
    CHECK(scenario(dir, {"--format", "xml"}).code == 2);
}

TEST_CASE("sweep ranks strategies and lists multipliers in order")
{
    TempDir dir;
    std::vector<std::string> args{"sweep", "--output", dir.str(), "--mult", "5,2"};
    args.insert(args.end(), ref_flags.begin(), ref_flags.end());
    std::vector<const char*> argv{"epilog"};
    for (const auto& a : args) {
        argv.push_back(a.c_str());
    }
    std::ostringstream out, err;
    REQUIRE(epilog::cli::run(static_cast<int>(argv.size()), argv.data(), out, err) == 0);
    const auto doc = json::parse(slurp(dir / "sweep.json"));
    REQUIRE(doc["treatment"].size() == 2);
    CHECK(doc["treatment"][0]["policy"]["treatment_multiplier"] == 5.0);
    CHECK(doc["treatment"][1]["policy"]["treatment_multiplier"] == 2.0);
    for (const auto& entry : doc["strategies"]) {
        CHECK(entry["ranking"][0]["strategy"] == "strategy3");
        CHECK(entry["ranking"][1]["strategy"] == "strategy1");
        CHECK(entry["ranking"][2]["strategy"] == "strategy2");
    }
    CHECK(fs::exists(dir / "sweep.csv"));
}

TEST_CASE("plot needs something to draw")
{
    TempDir dir;
    CHECK(invoke({"plot", "--output", dir.str()}).code == 2);
    spit(dir / "cases.csv", synthetic_csv());
    REQUIRE(invoke({"plot", "--input", dir / "cases.csv", "--output", dir.str()}).code == 0);
    const auto svg = slurp(dir / "chart.svg");
    CHECK(svg.find("<polyline") != std::string::npos);
}

TEST_CASE("repeated runs write identical bytes")
{
    TempDir a, b;
    REQUIRE(scenario(a, {"--u", "0.3", "--v", "0.2", "--mult", "2", "--plot"}).code == 0);
    REQUIRE(scenario(b, {"--u", "0.3", "--v", "0.2", "--mult", "2", "--plot"}).code == 0);
    for (const char* name : {"scenario.json", "trajectories.csv", "chart.svg", "chart_daily.svg"}) {
        CHECK(slurp(a / name) == slurp(b / name));
    }
}
