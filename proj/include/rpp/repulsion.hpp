#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "rpp/configuration.hpp"
#include "rpp/force.hpp"

namespace rpp {

//! Step size 1/(2 d kappa_d rho) that cancels the first-order variance term.
double epsilon_zero(int d, double rho);

struct RepulsionParams
{
    //! Step size; negative values make the map attractive.
    double epsilon{0.0};
    int iterations{1};
    //! Force definition; defaults to origin-ordered with the configuration's
    //! intensity.
    std::optional<ForceSpec> spec;
    //! Evaluate forces on the current iterate instead of the original
    //! configuration. Off by default.
    bool self_consistent{false};

    void validate() const;
    ForceSpec resolved_spec() const;
};

/*!
 * Move every point x to x + epsilon * F(x).
 *
 * All forces are computed on the input before any point moves. The
 * output keeps the input's order and intensity; its window grows to
 * contain points that leave the input window.
 */
Configuration repel(Configuration const& c, RepulsionParams const& params);

/*!
 * All iterates x_t = x_{t-1} + epsilon * F(x_{t-1}), t = 1..iterations.
 *
 * Forces come from the original configuration at every step (sources are
 * frozen) unless params.self_consistent is set. A source is skipped only
 * when it coincides exactly with the evaluation point.
 */
std::vector<Configuration> repel_iterated(Configuration const& c, RepulsionParams const& params);

struct WindowedRepulsion
{
    //! Displaced images of the points of c inside the target, in input order.
    Configuration points;
    //! True where the displaced point left the target window.
    std::vector<bool> escaped;

    std::size_t escaped_count() const;
};

/*!
 * Displace the points of c that lie in target, using every point of c as
 * a force source.
 *
 * Target-ordered forces require c's window to contain the ball of radius
 * diam(target) around the target center and use p = diam(target)/2 unless
 * params.spec sets a finite p. Origin-ordered forces require the ball of
 * radius diam(target)/2.
 */
WindowedRepulsion repel_in_window(Configuration const& c, Window const& target,
                                  RepulsionParams const& params);

}  // namespace rpp
