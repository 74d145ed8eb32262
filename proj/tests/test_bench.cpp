#include <algorithm>
#include <cmath>
#include <vector>

#include "doctest.h"
#include "rpp/bench.hpp"
#include "rpp/error.hpp"
#include "rpp/io.hpp"
#include "rpp/parallel.hpp"
#include "rpp/sampling.hpp"
#include "rpp/stats.hpp"

using namespace rpp;
using doctest::Approx;

TEST_CASE("ols on an exact line")
{
    std::vector<double> const x{0, 1, 2, 3, 4}, y{1, 3, 5, 7, 9};
    auto f = ols_fit(x, y);
    CHECK(f.slope == Approx(2.0));
    CHECK(f.intercept == Approx(1.0));
    CHECK(f.slope_stderr == Approx(0.0).epsilon(1e-12));
    CHECK(f.r_squared == Approx(1.0));
}

TEST_CASE("ols preconditions")
{
    std::vector<double> const two{0, 1};
    CHECK_THROWS_AS(ols_fit(two, two), Error);
    std::vector<double> const flat{1, 1, 1}, y{0, 1, 2};
    try {
        ols_fit(flat, y);
        FAIL("expected contract error");
    } catch (Error const& e) {
        CHECK(e.kind() == ErrorKind::Contract);
    }
}

TEST_CASE("ols on a noisy line")
{
    Rng rng(Seed{1, 0});
    std::vector<double> x, y;
    for (int i = 0; i < 20; ++i) {
        x.push_back(i * 0.1);
        y.push_back(-0.5 * x.back() + 0.01 * rng.normal());
    }
    auto f = ols_fit(x, y);
    // sigma / sqrt(Sxx) = 0.01 / sqrt(0.665): the band is several stderr wide.
    CHECK(std::abs(f.slope + 0.5) < 0.02);
    CHECK(f.slope_stderr > 0);
    CHECK(f.slope_stderr < 0.02);
}

TEST_CASE("epsilon sweep at zero is the un-repelled baseline")
{
    EpsilonSweepConfig cfg;
    cfg.d = 3;
    cfg.rho = 200;
    cfg.integrand = "f2";
    cfg.epsilons = {0.0};
    cfg.reps = 6;
    cfg.seed = Seed{2, 0};
    auto r = epsilon_sweep(cfg);
    REQUIRE(r.per_cell.size() == 1);
    CHECK(r.axis_values.size() == r.per_cell.size());
    auto const k = integration_box(3);
    auto const f = integrand_f2(3);
    Seed const base = cfg.seed.derive("epsilon-sweep/poisson");
    for (std::size_t i = 0; i < 6; ++i) {
        auto src = sample_source(Process::Poisson, 3, 200, base.with_stream(i));
        CHECK(r.per_cell[0].values[i] == estimate_self_normalized(src.restricted_to(k), f, k));
        CHECK(r.per_cell[0].n_points_used[i] == src.count_in(k));
    }
    CHECK(r.metadata.at("process") == "poisson");
    CHECK(r.metadata.at("M") == "6");
}

TEST_CASE("epsilon sweep is deterministic and independent of threads")
{
    EpsilonSweepConfig cfg;
    cfg.d = 3;
    cfg.rho = 150;
    cfg.integrand = "f3";
    cfg.epsilons = {-epsilon_zero(3, 150), 0.0, epsilon_zero(3, 150)};
    cfg.reps = 4;
    cfg.seed = Seed{3, 0};
    set_thread_count(1);
    auto const a = sweep_to_json(epsilon_sweep(cfg)).dump();
    set_thread_count(4);
    auto const b = sweep_to_json(epsilon_sweep(cfg)).dump();
    set_thread_count(0);
    auto const c = sweep_to_json(epsilon_sweep(cfg)).dump();
    CHECK(a == b);
    CHECK(a == c);
}

TEST_CASE("epsilon sweep for the other processes")
{
    EpsilonSweepConfig cfg;
    cfg.d = 2;
    cfg.rho = 60;
    cfg.integrand = "f1";
    cfg.epsilons = {0.0, epsilon_zero(2, 60)};
    cfg.reps = 3;
    auto prev = set_warning_handler(nullptr);
    for (Process p : {Process::Ginibre, Process::Sobol}) {
        cfg.process = p;
        auto r = epsilon_sweep(cfg);
        CHECK(r.per_cell.size() == 2);
        CHECK(r.failed == std::vector<std::size_t>{0, 0});
    }
    set_warning_handler(prev);

    cfg.process = Process::Ginibre;
    cfg.d = 3;
    try {
        epsilon_sweep(cfg);
        FAIL("every replication should fail");
    } catch (Error const& e) {
        CHECK(e.kind() == ErrorKind::Contract);
    }
}

TEST_CASE("sources cover the ball at the requested intensity")
{
    auto prev = set_warning_handler(nullptr);
    auto g = sample_source(Process::Ginibre, 2, 300, Seed{4, 0});
    CHECK(*g.intensity() == Approx(300.0).epsilon(1e-12));
    CHECK(g.size() == Approx(300 * std::acos(-1.0) * 0.5).epsilon(0.1));
    auto s = sample_source(Process::Sobol, 3, 300, Seed{4, 1});
    CHECK(*s.intensity() == Approx(300.0).epsilon(0.01));
    CHECK(s.window() == Window::centered_ball(3, std::sqrt(3.0) / 2));
    set_warning_handler(prev);
}

TEST_CASE("n sweep with one cell has no slope")
{
    NSweepConfig cfg;
    cfg.methods = {Method::MC};
    cfg.d = 2;
    cfg.integrand = "f2";
    cfg.n_values = {64};
    cfg.reps = 10;
    auto r = n_sweep(cfg);
    REQUIRE(r.size() == 1);
    CHECK_FALSE(r[0].slope);

    cfg.n_values = {64, 32};
    CHECK_THROWS_AS(n_sweep(cfg), Error);
    cfg.n_values = {32, 64};
    cfg.reps = 5;
    CHECK_THROWS_AS(n_sweep(cfg), Error);
}

TEST_CASE("crude monte carlo slope")
{
    NSweepConfig cfg;
    cfg.methods = {Method::MC};
    cfg.d = 2;
    cfg.integrand = "f2";
    cfg.n_values = {64, 128, 256, 512, 1024};
    cfg.reps = 100;
    cfg.seed = Seed{5, 0};
    auto r = n_sweep(cfg);
    REQUIRE(r[0].slope);
    CHECK(r[0].slope->slope > -0.65);
    CHECK(r[0].slope->slope < -0.35);
}

TEST_CASE("budget accounting")
{
    auto prev = set_warning_handler(nullptr);
    for (Method m : {Method::MC, Method::MCCV, Method::RQMC, Method::MCRB}) {
        for (std::size_t n : {50, 200}) {
            auto counter = std::make_shared<std::atomic<std::size_t>>(0);
            auto f = counted(integrand_f1(3), counter);
            auto run = run_method(m, 3, f, n, Seed{6, n});
            CHECK(counter->load() == run.n_points);
            if (m != Method::MCRB)
                CHECK(run.n_points == n);
            else
                CHECK(std::abs(static_cast<double>(run.n_points) - n) < 0.1 * n);
        }
    }
    set_warning_handler(prev);
}

TEST_CASE("error study of a constant integrand")
{
    ErrorStudyConfig cfg;
    cfg.methods = {Method::MC};
    cfg.d = 2;
    cfg.n = 30;
    cfg.reps = 20;
    Integrand const one("one", integration_box(2), [](std::span<double const>) { return 1.0; });
    auto r = error_study(cfg, one, 1.0);
    for (double e : r.per_cell[0].values)
        CHECK(e == Approx(0.0).epsilon(1e-15));
}

TEST_CASE("error study without a reference")
{
    ErrorStudyConfig cfg;
    cfg.methods = {Method::MC};
    cfg.d = 12;
    cfg.integrand = "f1";
    cfg.reps = 10;
    try {
        error_study(cfg);
        FAIL("expected contract error");
    } catch (Error const& e) {
        CHECK(e.kind() == ErrorKind::Contract);
    }
}

TEST_CASE("errors on f3 are centred")
{
    ErrorStudyConfig cfg;
    cfg.methods = {Method::MC, Method::MCRB, Method::MCCV, Method::RQMC};
    cfg.d = 2;
    cfg.integrand = "f3";
    cfg.n = 128;
    cfg.reps = 100;
    cfg.seed = Seed{7, 0};
    auto prev = set_warning_handler(nullptr);
    auto r = error_study(cfg);
    set_warning_handler(prev);
    REQUIRE(r.per_cell.size() == 4);
    CHECK(r.metadata.at("methods") == "mc,mcrb,mccv,rqmc");
    // Two standard errors of the median in sign-test units: 0 must lie
    // between the order statistics M/2 -/+ sqrt(M).
    for (auto const& cell : r.per_cell) {
        auto v = cell.values;
        std::sort(v.begin(), v.end());
        auto const m = v.size();
        auto const half = static_cast<std::size_t>(std::sqrt(static_cast<double>(m)));
        CHECK(v[m / 2 - half] < 0.0);
        CHECK(v[m / 2 + half] > 0.0);
    }
}

TEST_CASE("mcrb is unbiased for f2")
{
    ErrorStudyConfig cfg;
    cfg.methods = {Method::MCRB};
    cfg.d = 3;
    cfg.integrand = "f2";
    cfg.n = 500;
    cfg.reps = 200;
    cfg.seed = Seed{8, 0};
    auto r = error_study(cfg);
    CHECK(std::abs(r.per_cell[0].mean) < 3 * r.per_cell[0].standard_error);
    CHECK(r.failed[0] == 0);
}
