#include "rpp/estimators.hpp"

#include <Eigen/Dense>
#include <array>
#include <cmath>
#include <numbers>

#include "rpp/error.hpp"
#include "rpp/stats.hpp"

namespace rpp {

namespace {
// Generated by tools/f1_reference.py (radial reduction, 40-digit quadrature).
constexpr std::array<double, 10> kF1Reference = {
    0.053234448337997709,    // d = 1
    0.019652893532194778,    // d = 2
    0.0068644792803050236,   // d = 3
    0.0022826180557166234,   // d = 4
    0.00072618693861158235,  // d = 5
    0.00022192194483633872,  // d = 6
    6.5364149713705274e-5,   // d = 7
    1.8607627965351464e-5,   // d = 8
    5.1321802934318501e-6,   // d = 9
    1.3742910440750198e-6,   // d = 10
};

double squared_norm(std::span<double const> x)
{
    double s = 0;
    for (double v : x)
        s += v * v;
    return s;
}

template<class F>
double sum_over(Configuration const& c, F&& f)
{
    std::vector<double> vals(c.size());
    for (std::size_t i = 0; i < c.size(); ++i)
        vals[i] = f(c[i]);
    return pairwise_sum(vals);
}
}  // namespace

Integrand integrand_f1(int d)
{
    return Integrand("f1", Window::centered_ball(d, 0.5), [](std::span<double const> x) {
        double const t = 1.0 - 4.0 * squared_norm(x);
        if (t < 1e-14)
            return 0.0;
        return t * t * std::exp(-2.0 / t);
    });
}

Integrand integrand_f2(int d)
{
    return Integrand("f2", Window::centered_ball(d, 0.5),
                     [](std::span<double const>) { return 1.0; });
}

Integrand integrand_f3(int d)
{
    return Integrand("f3", Window::centered_box(d, 1.0), [](std::span<double const> x) {
        double p = 1.0;
        for (double v : x) {
            double const c = std::cos(std::numbers::pi * v);
            p *= c * c * c * std::sin(std::numbers::pi * v);
        }
        return p;
    });
}

Integrand integrand_by_name(std::string const& name, int d)
{
    if (name == "f1")
        return integrand_f1(d);
    if (name == "f2")
        return integrand_f2(d);
    if (name == "f3")
        return integrand_f3(d);
    throw Error(ErrorKind::InvalidArgument, "unknown integrand '" + name + "'");
}

Integrand counted(Integrand const& f, std::shared_ptr<std::atomic<std::size_t>> counter)
{
    Integrand g = f;
    g.counter_ = std::move(counter);
    return g;
}

std::optional<double> reference_integral(Integrand const& f, int d)
{
    if (f.name() == "f2")
        return unit_ball_volume(d) / std::pow(2.0, d);
    if (f.name() == "f3")
        return 0.0;
    if (f.name() == "f1" && d >= 1 && d <= static_cast<int>(kF1Reference.size()))
        return kF1Reference[static_cast<std::size_t>(d - 1)];
    return std::nullopt;
}

double estimate_unbiased(Configuration const& c, Integrand const& f)
{
    if (!c.intensity())
        throw Error(ErrorKind::Contract, "unbiased estimator needs the configuration intensity");
    return sum_over(c, f) / *c.intensity();
}

double estimate_self_normalized(Configuration const& c, Integrand const& f, Window const& k)
{
    std::vector<double> vals;
    for (std::size_t i = 0; i < c.size(); ++i) {
        if (k.contains(c[i]))
            vals.push_back(f(c[i]));
    }
    if (vals.empty())
        return 0.0;
    return k.volume() / static_cast<double>(vals.size()) * pairwise_sum(vals);
}

double estimate_crude_mc(Configuration const& c, Integrand const& f)
{
    if (c.empty())
        throw Error(ErrorKind::Contract, "crude Monte Carlo needs at least one point");
    return sum_over(c, f) / static_cast<double>(c.size());
}

double estimate_rqmc(Configuration const& c, Integrand const& f)
{
    return estimate_crude_mc(c, f);
}

//---------------------------------------------------------------------------//

namespace {
using Exponents = std::vector<std::vector<int>>;

Exponents quadratic_monomials(int d)
{
    Exponents out;
    out.emplace_back(d, 0);
    for (int i = 0; i < d; ++i) {
        std::vector<int> e(d, 0);
        e[i] = 1;
        out.push_back(e);
    }
    for (int i = 0; i < d; ++i)
        for (int j = i; j < d; ++j) {
            std::vector<int> e(d, 0);
            e[i] += 1;
            e[j] += 1;
            out.push_back(e);
        }
    return out;
}

double monomial(std::vector<int> const& e, std::span<double const> x)
{
    double r = 1.0;
    for (std::size_t i = 0; i < e.size(); ++i)
        for (int k = 0; k < e[i]; ++k)
            r *= x[i];
    return r;
}

double monomial_box_integral(std::vector<int> const& e, Window const& k)
{
    auto const c = k.center().coords();
    double const h = 0.5 * k.side();
    double r = 1.0;
    for (std::size_t i = 0; i < e.size(); ++i) {
        double const a = c[i] - h;
        double const b = c[i] + h;
        int const p = e[i] + 1;
        r *= (std::pow(b, p) - std::pow(a, p)) / p;
    }
    return r;
}
}  // namespace

ControlVariate fit_quadratic_control(Configuration const& pilot, Integrand const& f,
                                     Window const& k)
{
    if (k.kind() != WindowKind::Box)
        throw Error(ErrorKind::UnsupportedWindow, "control variate integrals need a box window");
    if (pilot.empty())
        throw Error(ErrorKind::Contract, "control variate fit needs a non-empty pilot");
    int const d = pilot.dim();
    auto const terms = quadratic_monomials(d);
    Eigen::Index const n = static_cast<Eigen::Index>(pilot.size());
    Eigen::Index const m = static_cast<Eigen::Index>(terms.size());
    Eigen::MatrixXd design(n, m);
    Eigen::VectorXd y(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        auto x = pilot[static_cast<std::size_t>(i)];
        for (Eigen::Index j = 0; j < m; ++j)
            design(i, j) = monomial(terms[static_cast<std::size_t>(j)], x);
        y(i) = f(x);
    }
    Eigen::VectorXd beta = design.completeOrthogonalDecomposition().solve(y);

    std::vector<double> coef(beta.data(), beta.data() + beta.size());
    double integral = 0;
    for (std::size_t j = 0; j < terms.size(); ++j)
        integral += coef[j] * monomial_box_integral(terms[j], k);

    auto h = [terms, coef](std::span<double const> x) {
        double s = 0;
        for (std::size_t j = 0; j < terms.size(); ++j)
            s += coef[j] * monomial(terms[j], x);
        return s;
    };
    return {h, integral};
}

double control_coefficient(Configuration const& pilot, Integrand const& f,
                           std::function<double(std::span<double const>)> const& h)
{
    std::size_t const n = pilot.size();
    std::vector<double> hv(n), fv(n);
    for (std::size_t i = 0; i < n; ++i) {
        hv[i] = h(pilot[i]);
        fv[i] = f(pilot[i]);
    }
    double const hbar = mean(hv);
    std::vector<double> num(n), den(n);
    for (std::size_t i = 0; i < n; ++i) {
        double const u = hv[i] - hbar;
        num[i] = fv[i] * u;
        den[i] = u * u;
    }
    double const sden = pairwise_sum(den);
    if (!(sden > 0)) {
        warn("control variate is constant on the pilot sample; using coefficient 0");
        return 0.0;
    }
    return pairwise_sum(num) / sden;
}

double estimate_with_control(Configuration const& c, Integrand const& f,
                             ControlVariate const& cv, double coef)
{
    double const imf = estimate_crude_mc(c, f);
    if (coef == 0.0)
        return imf;
    double const imh = sum_over(c, cv.h) / static_cast<double>(c.size());
    return imf - coef * (imh - cv.integral);
}

double estimate_mccv(Configuration const& c, Integrand const& f, Configuration const& pilot)
{
    auto const cv = fit_quadratic_control(pilot, f, c.window());
    double const coef = control_coefficient(pilot, f, cv.h);
    return estimate_with_control(c, f, cv, coef);
}

//---------------------------------------------------------------------------//

EstimateReport EstimateReport::from(std::vector<double> values, std::vector<std::size_t> n_points)
{
    if (values.size() != n_points.size())
        throw Error(ErrorKind::InvalidArgument, "values and point counts differ in length");
    EstimateReport r;
    r.mean = rpp::mean(values);
    r.sample_std = rpp::sample_std(values);
    r.standard_error =
        values.empty() ? 0.0 : r.sample_std / std::sqrt(static_cast<double>(values.size()));
    r.values = std::move(values);
    r.n_points_used = std::move(n_points);
    return r;
}

double EstimateReport::mean_points() const
{
    std::vector<double> n(n_points_used.begin(), n_points_used.end());
    return rpp::mean(n);
}

}  // namespace rpp
