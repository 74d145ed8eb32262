#include <cmath>
#include <numbers>

#include "doctest.h"
#include "rpp/error.hpp"
#include "rpp/geometry.hpp"
#include "rpp/random.hpp"
#include "rpp/sampling.hpp"

using namespace rpp;
using doctest::Approx;

TEST_CASE("unit ball volume closed forms")
{
    CHECK(unit_ball_volume(1) == Approx(2.0));
    CHECK(unit_ball_volume(2) == Approx(std::numbers::pi).epsilon(1e-14));
    CHECK(unit_ball_volume(3) == Approx(4.0 * std::numbers::pi / 3.0).epsilon(1e-14));
    CHECK_THROWS_AS(unit_ball_volume(0), Error);
}

TEST_CASE("unit ball volume recurrence")
{
    for (int d = 3; d <= 30; ++d) {
        double const lhs = unit_ball_volume(d);
        double const rhs = unit_ball_volume(d - 2) * 2.0 * std::numbers::pi / d;
        CHECK(std::abs(lhs - rhs) <= 1e-12 * rhs);
    }
}

TEST_CASE("window volumes")
{
    CHECK(Window::centered_box(3, 1.0).volume() == Approx(1.0));
    CHECK(Window::centered_ball(2, 1.0).volume() == Approx(std::numbers::pi));
    CHECK(Window::annulus(Point::origin(3), 1.0, 2.0).volume()
          == Approx(4.0 * std::numbers::pi / 3.0 * 7.0).epsilon(1e-12));
    CHECK(Window::annulus(Point::origin(3), 1.0, 2.0).volume() == Approx(29.32153).epsilon(1e-6));
}

TEST_CASE("window membership")
{
    CHECK(Window::centered_ball(2, 1.0).contains(Point{0.5, 0.0}));
    CHECK_FALSE(Window::centered_box(2, 1.0).contains(Point{0.6, 0.0}));
    CHECK(Window::annulus(Point::origin(3), 1.0, 2.0).contains(Point{1.5, 0.0, 0.0}));
    CHECK_FALSE(Window::annulus(Point::origin(3), 1.0, 2.0).contains(Point{0.5, 0.0, 0.0}));

    // Boundaries are inside.
    CHECK(Window::centered_box(2, 1.0).contains(Point{0.5, -0.5}));
    CHECK(Window::centered_ball(2, 1.0).contains(Point{1.0, 0.0}));
    CHECK(Window::annulus(Point::origin(2), 1.0, 2.0).contains(Point{1.0, 0.0}));

    CHECK_THROWS_AS(Window::centered_box(2, 1.0).contains(Point{0.0, 0.0, 0.0}), Error);
}

TEST_CASE("window diameters")
{
    CHECK(Window::centered_box(4, 1.0).diameter() == Approx(2.0));
    CHECK(Window::centered_ball(3, 3.0).diameter() == Approx(6.0));
    CHECK(Window::annulus(Point::origin(2), 1.0, 2.0).diameter() == Approx(4.0));
}

TEST_CASE("invalid windows and points")
{
    CHECK_THROWS_AS(Window::centered_box(2, 0.0), Error);
    CHECK_THROWS_AS(Window::centered_ball(2, -1.0), Error);
    CHECK_THROWS_AS(Window::annulus(Point::origin(2), 2.0, 1.0), Error);
    CHECK_THROWS_AS(Point({1.0, std::nan("")}), Error);
    CHECK_THROWS_AS(Point({INFINITY}), Error);
}

TEST_CASE("members lie within half the diameter of the center")
{
    Rng rng(Seed{11, 0});
    Window const shapes[] = {Window::box(Point{0.3, -0.2, 1.0}, 2.0),
                             Window::ball(Point{1.0, 1.0, 1.0}, 0.7),
                             Window::annulus(Point{0.0, 2.0, 0.0}, 0.5, 1.5)};
    for (auto const& w : shapes) {
        std::vector<double> x(3);
        for (int i = 0; i < 2000; ++i) {
            for (int k = 0; k < 3; ++k)
                x[k] = w.center()[k] + (rng.uniform() - 0.5) * 1.2 * w.diameter();
            if (w.contains(x))
                CHECK(distance(x, w.center().coords()) <= w.diameter() / 2 + 1e-12);
        }
    }
}

TEST_CASE("contains_ball")
{
    auto const box = Window::centered_box(2, 2.0);
    double const c[] = {0.0, 0.0};
    CHECK(box.contains_ball(c, 1.0));
    CHECK_FALSE(box.contains_ball(c, 1.01));
    auto const ann = Window::annulus(Point::origin(2), 1.0, 3.0);
    double const m[] = {2.0, 0.0};
    CHECK(ann.contains_ball(m, 1.0));
    CHECK_FALSE(ann.contains_ball(m, 1.1));
    CHECK_FALSE(ann.contains_ball(c, 0.5));
}
