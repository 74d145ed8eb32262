#pragma once

#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "rpp/configuration.hpp"

namespace rpp {

//! Outer radius meaning "no outer truncation".
inline constexpr double kNoTruncation = std::numeric_limits<double>::infinity();
//! Source points closer than this to a target raise a singularity error.
inline constexpr double kMinPairDistance = 1e-12;

enum class ForceScheme {
    TargetOrdered,  //!< terms ordered by distance to the target, optional annulus
    OriginOrdered,  //!< terms ordered by distance to the origin, mean-field corrected
};

/*!
 * Which Coulomb force to evaluate.
 *
 * TargetOrdered sums (x - z)/|x - z|^d over sources z with q <= |x - z| < p,
 * by increasing |x - z|. OriginOrdered sums over sources with |z| <=
 * origin_radius by increasing |z| and subtracts kappa_d * rho * x. When rho
 * is absent it is taken from the source configuration's intensity.
 */
struct ForceSpec
{
    ForceScheme scheme{ForceScheme::OriginOrdered};
    double q{0.0};
    double p{kNoTruncation};
    std::optional<double> rho;
    double origin_radius{kNoTruncation};

    static ForceSpec target_ordered(double q = 0.0, double p = kNoTruncation);
    static ForceSpec origin_ordered(std::optional<double> rho = std::nullopt,
                                    double origin_radius = kNoTruncation);

    void validate() const;
};

//! Vectors aligned with a list of targets, stored flat.
class ForceField
{
  public:
    ForceField(int d, std::vector<double> values) : d_(d), values_(std::move(values)) {}

    int dim() const { return d_; }
    std::size_t size() const { return values_.size() / static_cast<std::size_t>(d_); }
    std::span<double const> operator[](std::size_t i) const
    {
        return std::span<double const>(values_).subspan(i * d_, d_);
    }
    std::span<double const> values() const { return values_; }

  private:
    int d_;
    std::vector<double> values_;
};

/*!
 * Force evaluator bound to a frozen source configuration.
 *
 * The source ordering for OriginOrdered is computed once at construction,
 * so repeated evaluations (iterated repulsion) cost O(N) per target.
 * A source exactly equal to the target is skipped.
 */
class ForceEvaluator
{
  public:
    ForceEvaluator(Configuration const& sources, ForceSpec spec);

    //! Force at x; the error index refers to the source configuration.
    void evaluate(std::span<double const> x, std::span<double> out) const;
    Point operator()(Point const& x) const;

    //! Forces at every row of targets (flat, d per row), in parallel.
    ForceField field(std::span<double const> targets) const;

    ForceSpec const& spec() const { return spec_; }
    double correction_rho() const { return rho_; }

  private:
    void evaluate_target_ordered(std::span<double const> x, std::span<double> out) const;
    void evaluate_origin_ordered(std::span<double const> x, std::span<double> out) const;

    Configuration const& src_;
    ForceSpec spec_;
    double rho_{0};
    double kappa_{0};
    std::vector<std::size_t> origin_order_;
};

//! The (x, z) summand (x - z)/|x - z|^d; exactly antisymmetric in (x, z).
void pair_term(std::span<double const> x, std::span<double const> z, std::span<double> out);

Point force_target_ordered(Configuration const& c, Point const& x, double q,
                           double p = kNoTruncation);
Point force_origin_ordered(Configuration const& c, Point const& x, double rho);

//! Force at every point of c.
ForceField force_field(Configuration const& c, ForceSpec const& spec);

}  // namespace rpp
