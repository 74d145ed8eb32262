#pragma once

#include <cstddef>

#include "rpp/configuration.hpp"
#include "rpp/random.hpp"

namespace rpp {

//! Largest expected point count accepted by sample_poisson.
inline constexpr double kMaxExpectedPoints = 1e8;
//! Largest Sobol dimension supported.
inline constexpr int kMaxSobolDimension = 21;
//! Default cap on the Ginibre matrix size.
inline constexpr int kDefaultGinibreBudget = 3000;

//! Exactly n i.i.d. uniform points in w; intensity recorded as n/|w|.
Configuration sample_binomial(Window const& w, std::size_t n, Seed seed);

//! Homogeneous Poisson process of intensity rho observed in w.
Configuration sample_poisson(Window const& w, double rho, Seed seed);

/*!
 * Eigenvalues of an m x m matrix of i.i.d. standard complex Gaussians.
 *
 * Eigenvalues are not rescaled, so the pattern has intensity 1/pi on a
 * disk of radius about sqrt(m). The window is Ball(0, sqrt(m)), enlarged
 * when an eigenvalue falls outside it.
 */
Configuration sample_ginibre(int m, Seed seed, int max_size = kDefaultGinibreBudget);

//! Multiply coordinates and window by factor; intensity becomes rho/factor^d.
Configuration rescale(Configuration const& c, double factor);

/*!
 * First n points (index 0 included) of the Joe-Kuo Sobol sequence, shifted
 * to [-1/2, 1/2)^d.
 *
 * With scramble=true every coordinate is XORed with a per-dimension random
 * 64-bit digital shift before conversion, so each point is uniform on the
 * box while the net structure is preserved.
 */
Configuration sample_sobol(int d, std::size_t n, bool scramble, Seed seed);

//! Uniform point in w.
void sample_uniform_point(Window const& w, Rng& rng, std::span<double> out);

}  // namespace rpp
