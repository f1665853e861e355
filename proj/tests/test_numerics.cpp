#include "epilog/error.h"
#include "epilog/model.h"
#include "epilog/numerics.h"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

using namespace epilog;

namespace
{

double max_rel_error_vs_closed_form(double step)
{
    const auto p    = ModelParams::reference();
    const auto none = ControlPolicy::none();
    const auto c    = derive_constants(p, none);
    const auto traj = integrate_rk4([&](double y) { return rhs(y, c); }, 1.0, 236.0, step);
    double worst    = 0.0;
    for (std::size_t t = 0; t < traj.size(); ++t) {
        const double exact = closed_form(static_cast<double>(t), 1.0, p, none);
        worst              = std::max(worst, std::abs(traj.cumulative[t] - exact) / exact);
    }
    return worst;
}

} // namespace

TEST_CASE("rk4 with zero dynamics is constant")
{
    const auto traj = integrate_rk4([](double) { return 0.0; }, 7.0, 10.0, 0.1);
    REQUIRE(traj.size() == 11);
    for (double y : traj.cumulative) {
        CHECK(y == 7.0);
    }
    CHECK(traj.daily[0] == 7.0);
    CHECK(traj.daily[5] == 0.0);
}

TEST_CASE("rk4 exponential decay")
{
    const auto traj = integrate_rk4([](double y) { return -y; }, 1.0, 1.0, 0.01);
    REQUIRE(traj.size() == 2);
    CHECK(std::abs(traj.cumulative[1] - std::exp(-1.0)) < 1e-6);
    CHECK(std::abs(traj.cumulative[1] - 0.367879) < 1e-6);
}

TEST_CASE("rk4 matches the closed form on the fitted model")
{
    CHECK(max_rel_error_vs_closed_form(0.01) < 1e-6);
}

TEST_CASE("rk4 is fourth order")
{
    const double coarse = max_rel_error_vs_closed_form(1.0);
    const double fine   = max_rel_error_vs_closed_form(0.5);
    INFO("errors " << coarse << " " << fine);
    CHECK(coarse > 1e-12);
    CHECK(coarse / fine >= 12.0);
}

TEST_CASE("rk4 argument checks")
{
    auto zero = [](double) { return 0.0; };
    CHECK_THROWS_AS(integrate_rk4(zero, NAN, 10.0, 0.1), NumericalError);
    CHECK_THROWS_AS(integrate_rk4(zero, 1.0, 10.0, INFINITY), NumericalError);
    CHECK_THROWS(integrate_rk4(zero, 1.0, 10.0, 0.0));
    CHECK_THROWS(integrate_rk4(zero, 1.0, 10.0, 0.3));
    CHECK_THROWS(integrate_rk4(zero, 1.0, 0.01, 0.1));
    CHECK_THROWS_AS(integrate_rk4([](double y) { return y * y; }, 1.0, 10.0, 0.01), NumericalError);
    CHECK_THROWS_AS(integrate_rk4([](double) { return -1.0; }, 1.0, 10.0, 0.01), NumericalError);
}

TEST_CASE("trajectory daily column")
{
    const auto t = Trajectory::from_cumulative({3.0, 5.0, 5.0, 9.5});
    CHECK(t.daily == std::vector<double>{3.0, 2.0, 0.0, 4.5});
}

TEST_CASE("sse")
{
    const std::vector<double> a{1.0, 2.0, 3.0};
    const std::vector<double> ones{1.0, 1.0, 1.0};
    CHECK(sse(a, a) == 0.0);
    CHECK(sse(a, ones) == 5.0);

    std::vector<double> base(50), shifted(50);
    for (int i = 0; i < 50; ++i) {
        base[i]    = 0.37 * i;
        shifted[i] = base[i] + 0.5;
    }
    CHECK(sse(shifted, base) == doctest::Approx(50 * 0.25));

    CHECK_THROWS_AS(sse(a, std::vector<double>{1.0}), std::invalid_argument);
    CHECK_THROWS_AS(sse(std::vector<double>{}, std::vector<double>{}), std::invalid_argument);
}

TEST_CASE("property: sse is non-negative, zero only on equality, permutation invariant")
{
    std::mt19937_64 rng(3);
    std::normal_distribution<double> noise(0.0, 10.0);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t n = 1 + rng() % 40;
        std::vector<double> a(n), b(n);
        for (std::size_t i = 0; i < n; ++i) {
            a[i] = noise(rng);
            b[i] = noise(rng);
        }
        const double e = sse(a, b);
        CHECK(e > 0.0);
        std::vector<std::size_t> perm(n);
        for (std::size_t i = 0; i < n; ++i) {
            perm[i] = i;
        }
        std::shuffle(perm.begin(), perm.end(), rng);
        std::vector<double> pa(n), pb(n);
        for (std::size_t i = 0; i < n; ++i) {
            pa[i] = a[perm[i]];
            pb[i] = b[perm[i]];
        }
        CHECK(sse(pa, pb) == doctest::Approx(e).epsilon(1e-12));
        CHECK(sse(a, a) == 0.0);
    }
}

TEST_CASE("nelder-mead on a 1-d quadratic")
{
    const auto res = nelder_mead([](std::span<const double> x) { return (x[0] - 2.0) * (x[0] - 2.0); },
                                 std::vector<double>{10.0});
    CHECK(res.converged);
    CHECK(std::abs(res.best_point[0] - 2.0) < 1e-5);
}

TEST_CASE("nelder-mead on an anisotropic bowl")
{
    const auto res = nelder_mead([](std::span<const double> x) { return x[0] * x[0] + 10.0 * x[1] * x[1]; },
                                 std::vector<double>{3.0, 3.0});
    CHECK(res.converged);
    CHECK(std::abs(res.best_point[0]) < 1e-4);
    CHECK(std::abs(res.best_point[1]) < 1e-4);
}

TEST_CASE("nelder-mead on Rosenbrock")
{
    OptimizerSettings settings;
    settings.max_iterations = 5000;
    const auto res          = nelder_mead(
        [](std::span<const double> x) {
            return (1.0 - x[0]) * (1.0 - x[0]) + 100.0 * (x[1] - x[0] * x[0]) * (x[1] - x[0] * x[0]);
        },
        std::vector<double>{-1.2, 1.0}, settings);
    INFO("iterations " << res.iterations << " stop " << to_string(res.reason));
    CHECK(res.iterations <= 5000);
    CHECK(std::abs(res.best_point[0] - 1.0) < 1e-3);
    CHECK(std::abs(res.best_point[1] - 1.0) < 1e-3);
}

TEST_CASE("nelder-mead stop reasons and errors")
{
    OptimizerSettings one;
    one.max_iterations = 1;
    const auto capped  = nelder_mead([](std::span<const double> x) { return std::cosh(x[0]) + x[1] * x[1]; },
                                     std::vector<double>{4.0, -3.0}, one);
    CHECK_FALSE(capped.converged);
    CHECK(capped.reason == StopReason::MaxIterations);
    CHECK(capped.iterations == 1);

    CHECK_THROWS_AS(nelder_mead([](std::span<const double> x) { return x[0] > 1.05 ? NAN : x[0]; },
                                std::vector<double>{1.0}),
                    NumericalError);

    OptimizerSettings bad;
    bad.simplex_tolerance = 0.0;
    CHECK_THROWS(nelder_mead([](std::span<const double>) { return 0.0; }, std::vector<double>{1.0}, bad));
    bad = {};
    bad.initial_step_fractions = {0.1, 0.1, 0.1};
    CHECK_THROWS(nelder_mead([](std::span<const double>) { return 0.0; }, std::vector<double>{1.0, 2.0}, bad));
}

TEST_CASE("property: nelder-mead never ends worse than its start")
{
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> coord(-5.0, 5.0);
    for (int trial = 0; trial < 50; ++trial) {
        const double a = coord(rng), b = coord(rng);
        // multimodal surface so the simplex can get stuck
        auto f = [a, b](std::span<const double> x) {
            return std::sin(3.0 * x[0]) * std::cos(2.0 * x[1]) + 0.05 * ((x[0] - a) * (x[0] - a) + (x[1] - b) * (x[1] - b));
        };
        const std::vector<double> start{coord(rng), coord(rng)};
        OptimizerSettings s;
        s.max_iterations = 1 + static_cast<int>(rng() % 200);
        const auto res   = nelder_mead(f, start, s);
        CHECK(res.best_value <= f(start));
        CHECK(res.best_value == f(res.best_point));
    }
}
