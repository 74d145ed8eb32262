#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "doctest.h"
#include "rpp/error.hpp"
#include "rpp/sampling.hpp"
#include "rpp/stats.hpp"

using namespace rpp;
using doctest::Approx;

namespace {
// Exact star discrepancy of a point set in [0,1)^2 over anchored boxes with
// corners on the point coordinates.
double star_discrepancy_2d(std::vector<std::array<double, 2>> const& pts)
{
    std::vector<double> xs{1.0}, ys{1.0};
    for (auto const& p : pts) {
        xs.push_back(p[0]);
        ys.push_back(p[1]);
    }
    double const n = static_cast<double>(pts.size());
    double worst = 0;
    for (double a : xs)
        for (double b : ys) {
            int open = 0, closed = 0;
            for (auto const& p : pts) {
                open += p[0] < a && p[1] < b;
                closed += p[0] <= a && p[1] <= b;
            }
            worst = std::max({worst, a * b - open / n, closed / n - a * b});
        }
    return worst;
}

std::vector<std::array<double, 2>> unit_square(Configuration const& c)
{
    std::vector<std::array<double, 2>> out;
    for (std::size_t i = 0; i < c.size(); ++i)
        out.push_back({c[i][0] + 0.5, c[i][1] + 0.5});
    return out;
}
}  // namespace

TEST_CASE("binomial count and intensity")
{
    auto const w = Window::centered_ball(3, 2.0);
    auto c = sample_binomial(w, 5, Seed{1, 0});
    CHECK(c.size() == 5);
    REQUIRE(c.intensity());
    CHECK(*c.intensity() == Approx(5.0 / w.volume()));
    for (std::size_t i = 0; i < c.size(); ++i)
        CHECK(w.contains(c[i]));
}

TEST_CASE("binomial coordinate means")
{
    auto c = sample_binomial(Window::centered_box(2, 1.0), 10000, Seed{2, 0});
    for (int k = 0; k < 2; ++k) {
        std::vector<double> v;
        for (std::size_t i = 0; i < c.size(); ++i)
            v.push_back(c[i][k]);
        CHECK(std::abs(mean(v)) < 3 * (1 / std::sqrt(12.0)) / 100);
    }
}

TEST_CASE("poisson mean count")
{
    auto const w = Window::centered_ball(2, 0.5);
    double const rho = 1000;
    std::vector<double> counts;
    for (std::uint64_t r = 0; r < 100; ++r)
        counts.push_back(static_cast<double>(sample_poisson(w, rho, Seed{3, r}).size()));
    double const expected = rho * w.volume();
    CHECK(std::abs(mean(counts) - expected) < 3 * std::sqrt(expected / 100));
}

TEST_CASE("poisson fano factor")
{
    auto const w = Window::centered_box(3, 1.0);
    std::vector<double> counts;
    for (std::uint64_t r = 0; r < 200; ++r)
        counts.push_back(static_cast<double>(sample_poisson(w, 500, Seed{4, r}).size()));
    double const fano = sample_std(counts) * sample_std(counts) / mean(counts);
    CHECK(fano > 0.85);
    CHECK(fano < 1.15);
}

TEST_CASE("poisson void probability")
{
    auto const w = Window::centered_box(2, 1.0);
    int empty = 0;
    for (std::uint64_t r = 0; r < 1000; ++r)
        empty += sample_poisson(w, 1.0, Seed{5, r}).empty();
    CHECK(std::abs(empty / 1000.0 - std::exp(-1.0)) < 0.05);
}

TEST_CASE("poisson resource guard")
{
    CHECK_THROWS_AS(sample_poisson(Window::centered_box(3, 1000.0), 1000.0, Seed{}), Error);
    try {
        sample_poisson(Window::centered_box(3, 1000.0), 1000.0, Seed{});
    } catch (Error const& e) {
        CHECK(e.kind() == ErrorKind::Resource);
    }
}

TEST_CASE("samplers are deterministic and stream independent")
{
    auto const w = Window::centered_ball(3, 1.0);
    CHECK(sample_poisson(w, 200, Seed{6, 1}) == sample_poisson(w, 200, Seed{6, 1}));
    CHECK(sample_binomial(w, 50, Seed{6, 1}) == sample_binomial(w, 50, Seed{6, 1}));
    CHECK(sample_sobol(3, 64, true, Seed{6, 1}) == sample_sobol(3, 64, true, Seed{6, 1}));
    CHECK_FALSE(sample_poisson(w, 200, Seed{6, 1}) == sample_poisson(w, 200, Seed{6, 2}));

    std::vector<double> a, b;
    for (std::uint64_t i = 0; i < 200; ++i) {
        a.push_back(static_cast<double>(sample_poisson(w, 100, Seed{7, 2 * i}).size()));
        b.push_back(static_cast<double>(sample_poisson(w, 100, Seed{7, 2 * i + 1}).size()));
    }
    double const ma = mean(a), mb = mean(b);
    double sab = 0, saa = 0, sbb = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        sab += (a[i] - ma) * (b[i] - mb);
        saa += (a[i] - ma) * (a[i] - ma);
        sbb += (b[i] - mb) * (b[i] - mb);
    }
    CHECK(std::abs(sab / std::sqrt(saa * sbb)) < 0.1);
}

TEST_CASE("ginibre")
{
    auto one = sample_ginibre(1, Seed{8, 0});
    CHECK(one.size() == 1);
    CHECK(one.dim() == 2);

    int const m = 400;
    auto g = sample_ginibre(m, Seed{8, 1});
    CHECK(g.size() == static_cast<std::size_t>(m));
    REQUIRE(g.intensity());
    CHECK(*g.intensity() == Approx(1 / std::numbers::pi));
    CHECK(g.window().radius() >= std::sqrt(m));
    auto const inner = Window::centered_ball(2, 0.8 * std::sqrt(m));
    double const emp = g.count_in(inner) / inner.volume();
    CHECK(std::abs(emp * std::numbers::pi - 1.0) < 0.10);

    double const f = std::sqrt(1 / (500 * std::numbers::pi));
    auto s = rescale(g, f);
    CHECK(*s.intensity() == Approx(500.0));
    auto const inner_s = Window::centered_ball(2, 0.8 * std::sqrt(m) * f);
    CHECK(std::abs(s.count_in(inner_s) / inner_s.volume() / 500.0 - 1.0) < 0.10);

    CHECK_THROWS_AS(sample_ginibre(50, Seed{}, 10), Error);
    CHECK_THROWS_AS(sample_ginibre(0, Seed{}), Error);
}

TEST_CASE("rescale")
{
    auto c = sample_poisson(Window::centered_box(2, 1.0), 1.0 * 50, Seed{9, 0}).with_intensity(1.0);
    CHECK(rescale(c, 1.0) == c);
    auto r = rescale(c, 2.0);
    CHECK(*r.intensity() == Approx(0.25));
    CHECK(r.window().side() == Approx(2.0));
    for (std::size_t i = 0; i < c.size(); ++i)
        CHECK(r[i][0] == 2.0 * c[i][0]);
    CHECK_THROWS_AS(rescale(c, 0.0), Error);
}

TEST_CASE("sobol unscrambled prefix")
{
    auto s = sample_sobol(1, 4, false, Seed{});
    CHECK(s[0][0] == -0.5);
    CHECK(s[1][0] == 0.0);
    CHECK(s[2][0] == 0.25);
    CHECK(s[3][0] == -0.25);
    CHECK_FALSE(s.intensity());
    CHECK(s.window() == Window::centered_box(1, 1.0));
}

TEST_CASE("sobol dimension bound")
{
    CHECK_NOTHROW(sample_sobol(21, 8, true, Seed{}));
    try {
        sample_sobol(9999, 8, false, Seed{});
        FAIL("expected an error");
    } catch (Error const& e) {
        CHECK(e.kind() == ErrorKind::UnsupportedDimension);
    }
}

TEST_CASE("scrambled sobol marginals are uniform")
{
    auto s = sample_sobol(3, 4096, true, Seed{10, 0});
    for (int k = 0; k < 3; ++k) {
        std::vector<int> bins(16, 0);
        for (std::size_t i = 0; i < s.size(); ++i)
            ++bins[static_cast<int>((s[i][k] + 0.5) * 16)];
        double chi2 = 0;
        for (int b : bins)
            chi2 += (b - 256.0) * (b - 256.0) / 256.0;
        // chi^2_15 upper 0.001 quantile
        CHECK(chi2 < 37.70);
    }
}

TEST_CASE("sobol star discrepancy beats pseudorandom")
{
    auto const sob = star_discrepancy_2d(unit_square(sample_sobol(2, 256, false, Seed{})));
    auto const rnd = star_discrepancy_2d(
        unit_square(sample_binomial(Window::centered_box(2, 1.0), 256, Seed{11, 0})));
    CHECK(sob < rnd);
}
