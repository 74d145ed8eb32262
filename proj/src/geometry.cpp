#include "rpp/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "rpp/error.hpp"

namespace rpp {

double unit_ball_volume(int d)
{
    if (d < 1)
        throw Error(ErrorKind::InvalidArgument,
                    "unit_ball_volume: dimension must be >= 1, got "
                        + std::to_string(d));
    double const half = 0.5 * d;
    return std::pow(std::numbers::pi, half) / std::tgamma(half + 1.0);
}

namespace {
void check_finite(std::span<double const> c)
{
    if (c.empty())
        throw Error(ErrorKind::InvalidArgument, "point must have dimension >= 1");
    for (double v : c) {
        if (!std::isfinite(v))
            throw Error(ErrorKind::InvalidArgument, "point coordinate is not finite");
    }
}

double ipow(double x, int n)
{
    double r = 1.0;
    for (int i = 0; i < n; ++i)
        r *= x;
    return r;
}
}  // namespace

Point::Point(std::vector<double> coords) : coords_(std::move(coords))
{
    check_finite(coords_);
}

Point::Point(std::initializer_list<double> coords) : coords_(coords)
{
    check_finite(coords_);
}

Point::Point(std::span<double const> coords) : coords_(coords.begin(), coords.end())
{
    check_finite(coords_);
}

Point Point::origin(int d)
{
    if (d < 1)
        throw Error(ErrorKind::InvalidArgument, "dimension must be >= 1");
    return Point(std::vector<double>(static_cast<std::size_t>(d), 0.0));
}

double Point::norm() const
{
    return rpp::norm(coords_);
}

double norm(std::span<double const> x)
{
    double s = 0;
    for (double v : x)
        s += v * v;
    return std::sqrt(s);
}

double distance(std::span<double const> a, std::span<double const> b)
{
    double s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        double const t = a[i] - b[i];
        s += t * t;
    }
    return std::sqrt(s);
}

//---------------------------------------------------------------------------//

Window::Window(WindowKind kind, Point center, double a, double b)
    : kind_(kind), center_(std::move(center)), a_(a), b_(b)
{
    if (center_.dim() < 1)
        throw Error(ErrorKind::InvalidArgument, "window center has no coordinates");
}

Window Window::box(Point center, double side)
{
    if (!(side > 0) || !std::isfinite(side))
        throw Error(ErrorKind::InvalidArgument, "box side must be positive");
    return Window(WindowKind::Box, std::move(center), side, 0.0);
}

Window Window::ball(Point center, double radius)
{
    if (!(radius > 0) || !std::isfinite(radius))
        throw Error(ErrorKind::InvalidArgument, "ball radius must be positive");
    return Window(WindowKind::Ball, std::move(center), 0.0, radius);
}

Window Window::annulus(Point center, double inner, double outer)
{
    if (!(inner >= 0) || !(outer > inner) || !std::isfinite(outer))
        throw Error(ErrorKind::InvalidArgument,
                    "annulus radii must satisfy 0 <= inner < outer");
    return Window(WindowKind::Annulus, std::move(center), inner, outer);
}

Window Window::centered_box(int d, double side)
{
    return box(Point::origin(d), side);
}

Window Window::centered_ball(int d, double radius)
{
    return ball(Point::origin(d), radius);
}

double Window::volume() const
{
    int const d = dim();
    switch (kind_) {
    case WindowKind::Box: return ipow(a_, d);
    case WindowKind::Ball: return unit_ball_volume(d) * ipow(b_, d);
    case WindowKind::Annulus:
        return unit_ball_volume(d) * (ipow(b_, d) - ipow(a_, d));
    }
    return 0;
}

double Window::diameter() const
{
    if (kind_ == WindowKind::Box)
        return a_ * std::sqrt(static_cast<double>(dim()));
    return 2 * b_;
}

double Window::circumradius() const
{
    return 0.5 * diameter();
}

bool Window::contains(std::span<double const> p) const
{
    if (static_cast<int>(p.size()) != dim())
        throw Error(ErrorKind::InvalidArgument,
                    "dimension mismatch: point has " + std::to_string(p.size())
                        + " coordinates, window has " + std::to_string(dim()));
    auto const c = center_.coords();
    if (kind_ == WindowKind::Box) {
        double const h = 0.5 * a_;
        for (std::size_t i = 0; i < p.size(); ++i) {
            if (std::abs(p[i] - c[i]) > h)
                return false;
        }
        return true;
    }
    double const r = distance(p, c);
    if (r > b_)
        return false;
    return kind_ == WindowKind::Ball || r >= a_;
}

bool Window::contains_ball(std::span<double const> c, double r) const
{
    auto const wc = center_.coords();
    double const off = distance(c, wc);
    switch (kind_) {
    case WindowKind::Box: {
        double const h = 0.5 * a_;
        for (std::size_t i = 0; i < c.size(); ++i) {
            if (std::abs(c[i] - wc[i]) + r > h)
                return false;
        }
        return true;
    }
    case WindowKind::Ball: return off + r <= b_;
    case WindowKind::Annulus:
        // The ball must avoid the hole entirely.
        return off + r <= b_ && (a_ == 0.0 || off - r >= a_);
    }
    return false;
}

Window Window::translated(std::span<double const> shift) const
{
    std::vector<double> c(center_.coords().begin(), center_.coords().end());
    for (std::size_t i = 0; i < c.size(); ++i)
        c[i] += shift[i];
    return Window(kind_, Point(std::move(c)), a_, b_);
}

Window Window::scaled(double factor) const
{
    if (!(factor > 0))
        throw Error(ErrorKind::InvalidArgument, "scale factor must be positive");
    std::vector<double> c(center_.coords().begin(), center_.coords().end());
    for (double& v : c)
        v *= factor;
    return Window(kind_, Point(std::move(c)), a_ * factor, b_ * factor);
}

Window Window::enlarged_to_fit(std::span<double const> flat) const
{
    int const d = dim();
    auto const c = center_.coords();
    std::size_t const n = flat.size() / static_cast<std::size_t>(d);
    bool all_inside = true;
    for (std::size_t k = 0; k < n && all_inside; ++k)
        all_inside = contains(flat.subspan(k * d, d));
    if (all_inside)
        return *this;

    if (kind_ == WindowKind::Box) {
        double half = 0.5 * a_;
        for (std::size_t k = 0; k < n; ++k)
            for (int i = 0; i < d; ++i)
                half = std::max(half, std::abs(flat[k * d + i] - c[i]));
        return Window(WindowKind::Box, center_, 2 * half, 0.0);
    }
    double r = b_;
    for (std::size_t k = 0; k < n; ++k)
        r = std::max(r, distance(flat.subspan(k * d, d), c));
    return Window(WindowKind::Ball, center_, 0.0, r);
}

}  // namespace rpp
