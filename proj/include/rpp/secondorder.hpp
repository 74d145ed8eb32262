#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "rpp/configuration.hpp"

namespace rpp {

//! Binned radial function: g(r) or S(k).
struct RadialFunctionEstimate
{
    std::vector<double> abscissae;
    std::vector<double> values;
    std::vector<std::size_t> counts;

    std::size_t size() const { return abscissae.size(); }
};

//! Volume of W intersected with W translated by h (box or ball windows).
double window_set_covariance(Window const& w, std::span<double const> h);

/*!
 * Pair correlation function by ring counting with translation edge correction.
 *
 * Each unordered pair at distance r in bin j adds 2/|W cap (W + x - y)|,
 * and the bin total is divided by rho^2 times the ring volume. rho is the
 * configuration intensity, or n/|W| when absent. Bins split [0, r_max]
 * evenly; abscissae are bin centers and counts are unordered pair counts.
 */
RadialFunctionEstimate pcf_estimate(Configuration const& c, double r_max, int n_bins);

/*!
 * Scattering intensity |sum_x exp(-i k.x)|^2 / (rho |W|) on the allowed
 * wavevectors k = 2 pi m / L of a box window, averaged in bins of |k|
 * over (0, k_max].
 *
 * Only one of each pair {k, -k} is evaluated (the intensity is even in k);
 * counts are numbers of wavevectors in that half-space. Empty bins are
 * omitted.
 */
RadialFunctionEstimate structure_factor_estimate(Configuration const& c, double k_max,
                                                 int n_bins = 40);

//! Points of a ball-window configuration inside the inscribed cube.
Configuration crop_to_inscribed_box(Configuration const& c);

}  // namespace rpp
