#pragma once

#include <atomic>
#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "rpp/configuration.hpp"

namespace rpp {

/*!
 * Real function with compact support.
 *
 * Calls outside the support return 0 without evaluating the body.
 */
class Integrand
{
  public:
    using Body = std::function<double(std::span<double const>)>;

    Integrand(std::string name, Window support, Body body)
        : name_(std::move(name)), support_(std::move(support)), body_(std::move(body))
    {
    }

    double operator()(std::span<double const> x) const
    {
        if (counter_)
            counter_->fetch_add(1, std::memory_order_relaxed);
        return support_.contains(x) ? body_(x) : 0.0;
    }

    std::string const& name() const { return name_; }
    Window const& support() const { return support_; }
    int dim() const { return support_.dim(); }

    //! Copy that no longer increments a counter.
    Integrand uncounted() const
    {
        Integrand g = *this;
        g.counter_.reset();
        return g;
    }

  private:
    friend Integrand counted(Integrand const&, std::shared_ptr<std::atomic<std::size_t>>);

    std::string name_;
    Window support_;
    Body body_;
    std::shared_ptr<std::atomic<std::size_t>> counter_;
};

//! Smooth bump (1-4|x|^2)^2 exp(-2/(1-4|x|^2)) on the ball of radius 1/2.
Integrand integrand_f1(int d);
//! Indicator of the ball of radius 1/2.
Integrand integrand_f2(int d);
//! prod_i cos^3(pi x_i) sin(pi x_i) on [-1/2, 1/2]^d.
Integrand integrand_f3(int d);
//! "f1", "f2" or "f3".
Integrand integrand_by_name(std::string const& name, int d);

//! Wrap f so that every evaluation (inside the support or not) increments counter.
Integrand counted(Integrand const& f, std::shared_ptr<std::atomic<std::size_t>> counter);

//! Exact or tabulated integral of a named test integrand; absent when unknown.
std::optional<double> reference_integral(Integrand const& f, int d);

//! (1/rho) sum_x f(x) using the configuration's intensity.
double estimate_unbiased(Configuration const& c, Integrand const& f);

//! (|K|/N_K) sum over c in K of f(x); 0 when N_K = 0.
double estimate_self_normalized(Configuration const& c, Integrand const& f, Window const& k);

//! (1/N) sum_x f(x) over a fixed-size sample.
double estimate_crude_mc(Configuration const& c, Integrand const& f);

//! Same average, over a scrambled low-discrepancy point set.
double estimate_rqmc(Configuration const& c, Integrand const& f);

//! Control function with known integral over the integration box.
struct ControlVariate
{
    std::function<double(std::span<double const>)> h;
    double integral{0};
};

/*!
 * Least-squares fit of f on the pilot sample by all monomials of total
 * degree <= 2, with the fit's exact integral over the box k.
 */
ControlVariate fit_quadratic_control(Configuration const& pilot, Integrand const& f,
                                     Window const& k);

//! sum f (h - hbar) / sum (h - hbar)^2 over the pilot; 0 (with a warning)
//! when h is constant on the pilot.
double control_coefficient(Configuration const& pilot, Integrand const& f,
                           std::function<double(std::span<double const>)> const& h);

//! I_MC(f) - coef * (I_MC(h) - I(h)) on c.
double estimate_with_control(Configuration const& c, Integrand const& f,
                             ControlVariate const& cv, double coef);

//! Control-variate estimate with a quadratic regressor fitted on the pilot.
//! The integration box is c's window.
double estimate_mccv(Configuration const& c, Integrand const& f, Configuration const& pilot);

/*!
 * Replicated estimates with summary statistics.
 */
struct EstimateReport
{
    std::vector<double> values;
    double mean{0};
    double sample_std{0};
    double standard_error{0};
    std::vector<std::size_t> n_points_used;

    static EstimateReport from(std::vector<double> values, std::vector<std::size_t> n_points);
    double mean_points() const;
};

}  // namespace rpp
