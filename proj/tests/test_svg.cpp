#include "epilog/scenario.h"
#include "epilog/svg.h"

#include <doctest.h>

#include <stdexcept>
#include <string>
#include <vector>

using namespace epilog;

namespace
{

std::size_t count(const std::string& hay, const std::string& needle)
{
    std::size_t n = 0;
    for (auto pos = hay.find(needle); pos != std::string::npos; pos = hay.find(needle, pos + 1)) {
        ++n;
    }
    return n;
}

// raw y attribute (screen coordinate, grows downward) of the last vertex of the k-th polyline
double last_ordinate(const std::string& svg, std::size_t k)
{
    std::size_t pos = 0;
    for (std::size_t i = 0; i <= k; ++i) {
        pos = svg.find("<polyline", pos + 1);
    }
    const auto start = svg.find("points=\"", pos) + 8;
    const auto end   = svg.find('"', start);
    const auto pts   = svg.substr(start, end - start);
    const auto comma = pts.rfind(',');
    return std::stod(pts.substr(comma + 1));
}

} // namespace

TEST_CASE("single constant series gives one polyline")
{
    const auto svg = emit_svg({SvgSeries{"flat", std::vector<double>(30, 5.0)}});
    CHECK(count(svg, "<polyline") == 1);
    CHECK(count(svg, "<svg ") == 1);
    CHECK(svg.find("width=\"960\"") != std::string::npos);
    CHECK(svg.find("height=\"540\"") != std::string::npos);
    CHECK(svg.find("nan") == std::string::npos);
}

TEST_CASE("identical series keep separate polylines and legend entries")
{
    const std::vector<double> v{1, 2, 3, 4, 5};
    const auto svg = emit_svg({SvgSeries{"first", v}, SvgSeries{"second", v, true}});
    CHECK(count(svg, "<polyline") == 2);
    const auto a = svg.find(">first</text>");
    const auto b = svg.find(">second</text>");
    REQUIRE(a != std::string::npos);
    REQUIRE(b != std::string::npos);
    CHECK(a < b);
    CHECK(count(svg, "stroke-dasharray") == 2); // polyline and its legend swatch
}

TEST_CASE("controlled cumulative curve ends with a larger screen ordinate")
{
    const auto report = run_scenario(ModelParams::reference(), {"u=0.4", {0.4, 0.0, 1.0}});
    const auto svg =
        emit_svg({{"baseline", report.baseline}, {"u=0.4", report.scenario}}, Column::Cumulative, {"cumulative"});
    CHECK(count(svg, "<polyline") == 2);
    CHECK(last_ordinate(svg, 1) > last_ordinate(svg, 0));
}

TEST_CASE("markers and escaping")
{
    const auto svg = emit_svg({SvgSeries{"a<b & c", {1, 3, 2}, false, true}}, {"t\"itle"});
    CHECK(count(svg, "<rect x=") >= 3);
    CHECK(svg.find("a&lt;b &amp; c") != std::string::npos);
    CHECK(svg.find("t&quot;itle") != std::string::npos);
}

TEST_CASE("month ticks on a long window")
{
    const auto svg = emit_svg({SvgSeries{"s", std::vector<double>(236, 1.0)}});
    CHECK(svg.find(">2022-06</text>") != std::string::npos);
    CHECK(svg.find(">2022-12</text>") != std::string::npos);
}

TEST_CASE("rejects bad input")
{
    CHECK_THROWS_AS(emit_svg(std::vector<SvgSeries>{}), std::invalid_argument);
    CHECK_THROWS_AS(emit_svg({SvgSeries{"a", {1, 2}}, SvgSeries{"b", {1, 2, 3}}}), std::invalid_argument);
    CHECK_THROWS_AS(emit_svg(std::vector<LabeledTrajectory>{}, Column::Daily), std::invalid_argument);
}

TEST_CASE("output is byte-identical across calls")
{
    const auto report = run_scenario(ModelParams::reference(), {"x", {0.2, 0.3, 2.0}});
    const std::vector<LabeledTrajectory> series{{"baseline", report.baseline}, {"x", report.scenario}};
    CHECK(emit_svg(series, Column::Daily) == emit_svg(series, Column::Daily));
    CHECK(emit_svg(series, Column::Cumulative) == emit_svg(series, Column::Cumulative));
}

TEST_CASE("nice ticks")
{
    CHECK(nice_ticks(0.0, 30000.0) == std::vector<double>{0, 5000, 10000, 15000, 20000, 25000, 30000});
    CHECK(nice_ticks(0.0, 1.0, 5) == std::vector<double>{0, 0.2, 0.4, 0.6000000000000001, 0.8, 1});
    const auto t = nice_ticks(3.0, 447.0);
    REQUIRE(t.size() >= 2);
    CHECK(t.front() <= 3.0);
    CHECK(t.back() >= 447.0);
    CHECK(nice_ticks(5.0, 5.0).size() >= 2);
}
