#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace rpp {

//! Volume of the unit ball of R^d.
double unit_ball_volume(int d);

/*!
 * A point of R^d with finite coordinates.
 */
class Point
{
  public:
    Point() = default;
    explicit Point(std::vector<double> coords);
    Point(std::initializer_list<double> coords);
    explicit Point(std::span<double const> coords);

    static Point origin(int d);

    int dim() const { return static_cast<int>(coords_.size()); }
    double operator[](std::size_t i) const { return coords_[i]; }
    std::span<double const> coords() const { return coords_; }

    double norm() const;

    friend bool operator==(Point const&, Point const&) = default;

  private:
    std::vector<double> coords_;
};

double norm(std::span<double const> x);
double distance(std::span<double const> a, std::span<double const> b);

enum class WindowKind { Box, Ball, Annulus };

/*!
 * Observation window: an axis-aligned cube, a ball, or an annulus.
 *
 * A box is parameterized by its full side length. All shapes are closed:
 * boundary points are members.
 */
class Window
{
  public:
    static Window box(Point center, double side);
    static Window ball(Point center, double radius);
    static Window annulus(Point center, double inner, double outer);

    //! The centered cube [-side/2, side/2]^d.
    static Window centered_box(int d, double side);
    static Window centered_ball(int d, double radius);

    WindowKind kind() const { return kind_; }
    int dim() const { return center_.dim(); }
    Point const& center() const { return center_; }

    //! Box side; zero for other shapes.
    double side() const { return kind_ == WindowKind::Box ? a_ : 0.0; }
    //! Ball radius or annulus outer radius.
    double radius() const { return kind_ == WindowKind::Box ? 0.0 : b_; }
    double inner_radius() const { return kind_ == WindowKind::Annulus ? a_ : 0.0; }

    double volume() const;
    double diameter() const;
    bool contains(std::span<double const> p) const;
    bool contains(Point const& p) const { return contains(p.coords()); }

    //! Whether the closed ball B(c, r) lies inside this window.
    bool contains_ball(std::span<double const> c, double r) const;

    //! Largest distance from the center to a point of the window.
    double circumradius() const;

    //! Translate by a vector.
    Window translated(std::span<double const> shift) const;
    //! Scale about the origin.
    Window scaled(double factor) const;

    //! Smallest window of the same family (annuli become balls) with the
    //! same center that also contains the given points.
    Window enlarged_to_fit(std::span<double const> flat_coords) const;

    friend bool operator==(Window const&, Window const&) = default;

  private:
    Window(WindowKind kind, Point center, double a, double b);

    WindowKind kind_{WindowKind::Box};
    Point center_;
    double a_{0};  // side (box) or inner radius (annulus)
    double b_{0};  // radius (ball) or outer radius (annulus)
};

}  // namespace rpp
