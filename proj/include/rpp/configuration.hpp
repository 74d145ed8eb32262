#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "rpp/geometry.hpp"

namespace rpp {

/*!
 * A finite simple point pattern observed in a window.
 *
 * Coordinates are stored row-major (point-major) in one flat buffer.
 * Construction checks that every point is finite, inside the window, and
 * that no two points coincide exactly.
 */
class Configuration
{
  public:
    Configuration(int d, std::vector<double> coords, Window window,
                  std::optional<double> intensity = std::nullopt);

    //! Empty configuration in a window.
    explicit Configuration(Window window, std::optional<double> intensity = std::nullopt);

    int dim() const { return d_; }
    std::size_t size() const { return coords_.size() / static_cast<std::size_t>(d_); }
    bool empty() const { return coords_.empty(); }

    std::span<double const> operator[](std::size_t i) const
    {
        return std::span<double const>(coords_).subspan(i * d_, d_);
    }
    Point point(std::size_t i) const { return Point((*this)[i]); }

    std::span<double const> coords() const { return coords_; }
    Window const& window() const { return window_; }
    std::optional<double> intensity() const { return intensity_; }

    //! Intensity metadata if present, else the empirical n/|W|.
    double intensity_or_estimate() const;

    Configuration with_intensity(std::optional<double> rho) const;

    //! Points inside w (in original order), observed in w.
    Configuration restricted_to(Window const& w) const;

    //! Number of points inside w.
    std::size_t count_in(Window const& w) const;

    //! Shift points and window by the same vector.
    Configuration translated(std::span<double const> shift) const;

    friend bool operator==(Configuration const&, Configuration const&) = default;

  private:
    int d_;
    std::vector<double> coords_;
    Window window_;
    std::optional<double> intensity_;
};

//! Indices (i, j), i < j, of the first exactly coincident pair, if any.
std::optional<std::pair<std::size_t, std::size_t>>
find_duplicate(int d, std::span<double const> coords);

}  // namespace rpp
