#include <cmath>
#include <numbers>
#include <vector>

#include "doctest.h"
#include "rpp/error.hpp"
#include "rpp/repulsion.hpp"
#include "rpp/sampling.hpp"
#include "rpp/secondorder.hpp"

using namespace rpp;
using doctest::Approx;

namespace {
RepulsionParams params(double eps, ForceSpec spec, int t = 1)
{
    RepulsionParams p;
    p.epsilon = eps;
    p.spec = spec;
    p.iterations = t;
    return p;
}
}  // namespace

TEST_CASE("epsilon zero")
{
    CHECK(epsilon_zero(3, 500) == Approx(1.0 / (4000 * std::numbers::pi)).epsilon(1e-14));
    CHECK(epsilon_zero(3, 500) == Approx(7.9577e-5).epsilon(1e-4));
    CHECK(epsilon_zero(2, 1000) == Approx(1.0 / (4000 * std::numbers::pi)).epsilon(1e-14));
    CHECK(epsilon_zero(3, 1000) == Approx(epsilon_zero(3, 500) / 2).epsilon(1e-15));
}

TEST_CASE("repel with zero step is the identity")
{
    auto c = sample_poisson(Window::centered_ball(3, 1.0), 100, Seed{1, 0});
    CHECK(repel(c, params(0.0, ForceSpec::origin_ordered())) == c);
}

TEST_CASE("two-point hand computation")
{
    Configuration c(3, {0, 0, 0, 1, 0, 0}, Window::centered_box(3, 4.0));
    auto out = repel(c, params(0.5, ForceSpec::target_ordered()));
    REQUIRE(out.size() == 2);
    CHECK(out.point(0) == Point{-0.5, 0, 0});
    CHECK(out.point(1) == Point{1.5, 0, 0});
}

TEST_CASE("escaped points enlarge the window and keep the intensity")
{
    Configuration c(3, {0, 0, 0, 1, 0, 0}, Window::centered_box(3, 2.0), 0.25);
    auto out = repel(c, params(0.5, ForceSpec::target_ordered()));
    CHECK(out.window().contains(out[1]));
    CHECK(out.intensity() == c.intensity());
    CHECK(out.size() == c.size());
}

TEST_CASE("sign symmetry on a centrally symmetric pair")
{
    Configuration c(3, {-0.3, 0.1, 0.2, 0.3, -0.1, -0.2}, Window::centered_box(3, 4.0));
    auto plus = repel(c, params(0.01, ForceSpec::target_ordered()));
    auto minus = repel(c, params(-0.01, ForceSpec::target_ordered()));
    for (int k = 0; k < 3; ++k) {
        CHECK(plus[0][k] == -plus[1][k]);
        CHECK(minus[0][k] == -minus[1][k]);
        // Moving apart versus together: reflected displacements about the input.
        CHECK(plus[0][k] - c[0][k] == -(minus[0][k] - c[0][k]));
    }
}

TEST_CASE("frozen input differs from sequential updating")
{
    Configuration c(3, {0, 0, 0, 1, 0, 0, 0, 2, 0}, Window::centered_box(3, 10.0));
    double const eps = 0.1;
    auto out = repel(c, params(eps, ForceSpec::target_ordered()));

    auto term = [](std::vector<double> const& x, std::vector<double> const& z, std::vector<double>& f) {
        double r2 = 0;
        for (int k = 0; k < 3; ++k)
            r2 += (x[k] - z[k]) * (x[k] - z[k]);
        double const r3 = r2 * std::sqrt(r2);
        for (int k = 0; k < 3; ++k)
            f[k] += (x[k] - z[k]) / r3;
    };
    std::vector<std::vector<double>> pts{{0, 0, 0}, {1, 0, 0}, {0, 2, 0}};

    auto frozen = pts;
    for (std::size_t i = 0; i < 3; ++i) {
        std::vector<double> f(3, 0.0);
        for (std::size_t j = 0; j < 3; ++j)
            if (j != i)
                term(pts[i], pts[j], f);
        for (int k = 0; k < 3; ++k)
            frozen[i][k] += eps * f[k];
    }
    auto seq = pts;
    for (std::size_t i = 0; i < 3; ++i) {
        std::vector<double> f(3, 0.0);
        for (std::size_t j = 0; j < 3; ++j)
            if (j != i)
                term(seq[i], seq[j], f);
        for (int k = 0; k < 3; ++k)
            seq[i][k] += eps * f[k];
    }

    bool differs = false;
    for (std::size_t i = 0; i < 3; ++i)
        for (int k = 0; k < 3; ++k) {
            CHECK(out[i][k] == Approx(frozen[i][k]).epsilon(1e-14));
            differs |= std::abs(seq[i][k] - frozen[i][k]) > 1e-6;
        }
    CHECK(differs);
}

TEST_CASE("iterated repulsion")
{
    auto c = sample_poisson(Window::centered_ball(3, 1.0), 60, Seed{2, 0});
    double const eps = epsilon_zero(3, 60);

    auto one = repel_iterated(c, params(eps, ForceSpec::origin_ordered(), 1));
    REQUIRE(one.size() == 1);
    CHECK(one[0] == repel(c, params(eps, ForceSpec::origin_ordered())));

    auto zero = repel_iterated(c, params(0.0, ForceSpec::origin_ordered(), 4));
    REQUIRE(zero.size() == 4);
    for (auto const& z : zero)
        CHECK(z == c);

    // Step two evaluates the force of the original configuration at step one.
    auto two = repel_iterated(c, params(eps, ForceSpec::origin_ordered(), 2));
    REQUIRE(two.size() == 2);
    ForceEvaluator ev(c, ForceSpec::origin_ordered());
    for (std::size_t i = 0; i < c.size(); i += 7) {
        auto const f = ev(two[0].point(i));
        for (int k = 0; k < 3; ++k)
            CHECK(two[1][i][k] == two[0][i][k] + eps * f[k]);
    }

    auto sc = params(eps, ForceSpec::origin_ordered(), 2);
    sc.self_consistent = true;
    auto live = repel_iterated(c, sc);
    CHECK(live[0] == two[0]);
    CHECK_FALSE(live[1] == two[1]);
}

TEST_CASE("attractive iteration clusters a planar pattern")
{
    auto c = sample_poisson(Window::centered_ball(2, 12.0), 1 / std::numbers::pi, Seed{3, 0});
    auto p = params(-epsilon_zero(2, 1 / std::numbers::pi), ForceSpec::origin_ordered(), 50);
    auto steps = repel_iterated(c, p);
    CHECK(steps.size() == 50);
    auto const last = steps.back().restricted_to(Window::centered_box(2, 12.0));
    auto g = pcf_estimate(last.with_intensity(last.size() / 144.0), 2.0, 10);
    CHECK(g.values[1] > 1.0);
}

TEST_CASE("windowed repulsion")
{
    auto const k = Window::centered_box(3, 1.0);
    auto src = sample_poisson(Window::centered_ball(3, 0.5 * k.diameter()), 200, Seed{4, 0});
    auto res = repel_in_window(src, k, params(epsilon_zero(3, 200), ForceSpec::origin_ordered()));
    CHECK(res.points.size() == src.count_in(k));
    CHECK(res.escaped.size() == res.points.size());
    std::size_t escaped = 0;
    for (std::size_t i = 0; i < res.points.size(); ++i) {
        CHECK(res.escaped[i] == !k.contains(res.points[i]));
        escaped += res.escaped[i];
    }
    CHECK(res.escaped_count() == escaped);

    CHECK_THROWS_AS(repel_in_window(src, k, params(0.01, ForceSpec::target_ordered())), Error);
    auto big = sample_poisson(Window::centered_ball(3, k.diameter()), 50, Seed{5, 0});
    CHECK_NOTHROW(repel_in_window(big, k, params(0.001, ForceSpec::target_ordered())));

    auto small = sample_poisson(Window::centered_ball(3, 0.6), 100, Seed{6, 0});
    try {
        repel_in_window(small, k, params(0.01, ForceSpec::origin_ordered()));
        FAIL("expected window-too-small");
    } catch (Error const& e) {
        CHECK(e.kind() == ErrorKind::WindowTooSmall);
    }

    Configuration far(3, {0.9, 0.9, 0.9}, Window::centered_ball(3, 2.0), 1.0);
    CHECK(repel_in_window(far, k, params(0.01, ForceSpec::origin_ordered())).points.empty());
}

TEST_CASE("windowed repulsion on the full window matches repel")
{
    auto const w = Window::centered_ball(3, 1.0);
    auto src = sample_poisson(w, 100, Seed{7, 0});
    auto p = params(epsilon_zero(3, 100), ForceSpec::origin_ordered());
    auto a = repel_in_window(src, Window::centered_ball(3, 0.5), p);
    auto b = repel(src, p);
    std::size_t j = 0;
    for (std::size_t i = 0; i < src.size(); ++i) {
        if (!Window::centered_ball(3, 0.5).contains(src[i]))
            continue;
        for (int k = 0; k < 3; ++k)
            CHECK(a.points[j][k] == b[i][k]);
        ++j;
    }
}

TEST_CASE("repel validates parameters")
{
    auto c = sample_poisson(Window::centered_ball(3, 1.0), 50, Seed{8, 0});
    CHECK_THROWS_AS(repel(c, params(0.01, ForceSpec::origin_ordered(), 0)), Error);
    CHECK_THROWS_AS(repel(c, params(std::nan(""), ForceSpec::origin_ordered())), Error);
    CHECK_THROWS_AS(repel(c, params(0.01, ForceSpec::origin_ordered(), 3)), Error);
}
