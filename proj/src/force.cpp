#include "rpp/force.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "rpp/error.hpp"
#include "rpp/parallel.hpp"

namespace rpp {

ForceSpec ForceSpec::target_ordered(double q, double p)
{
    ForceSpec s;
    s.scheme = ForceScheme::TargetOrdered;
    s.q = q;
    s.p = p;
    s.validate();
    return s;
}

ForceSpec ForceSpec::origin_ordered(std::optional<double> rho, double origin_radius)
{
    ForceSpec s;
    s.scheme = ForceScheme::OriginOrdered;
    s.rho = rho;
    s.origin_radius = origin_radius;
    s.validate();
    return s;
}

void ForceSpec::validate() const
{
    if (!(q >= 0) || std::isinf(q))
        throw Error(ErrorKind::InvalidArgument, "inner truncation q must be finite and >= 0");
    if (!(p > q))
        throw Error(ErrorKind::InvalidArgument, "outer truncation p must exceed q");
    if (rho && !(*rho > 0 && std::isfinite(*rho)))
        throw Error(ErrorKind::InvalidArgument, "force intensity rho must be positive");
    if (!(origin_radius > 0))
        throw Error(ErrorKind::InvalidArgument, "origin radius must be positive");
}

namespace {
double ipow(double x, int n)
{
    double r = 1.0;
    for (int i = 0; i < n; ++i)
        r *= x;
    return r;
}

bool lex_less(std::span<double const> a, std::span<double const> b)
{
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

bool same_point(std::span<double const> a, std::span<double const> b)
{
    return std::equal(a.begin(), a.end(), b.begin());
}

[[noreturn]] void throw_singular(std::size_t index, double dist)
{
    throw SingularityError(index, "source point " + std::to_string(index)
                                      + " is at distance " + std::to_string(dist)
                                      + " from the target");
}
}  // namespace

void pair_term(std::span<double const> x, std::span<double const> z, std::span<double> out)
{
    int const d = static_cast<int>(x.size());
    double r2 = 0;
    for (int i = 0; i < d; ++i) {
        out[i] = x[i] - z[i];
        r2 += out[i] * out[i];
    }
    double const rd = ipow(std::sqrt(r2), d);
    for (int i = 0; i < d; ++i)
        out[i] /= rd;
}

ForceEvaluator::ForceEvaluator(Configuration const& sources, ForceSpec spec)
    : src_(sources), spec_(std::move(spec))
{
    spec_.validate();
    kappa_ = unit_ball_volume(src_.dim());
    if (spec_.scheme != ForceScheme::OriginOrdered)
        return;

    if (spec_.rho)
        rho_ = *spec_.rho;
    else if (src_.intensity())
        rho_ = *src_.intensity();
    else
        throw Error(ErrorKind::Contract,
                    "origin-ordered force needs an intensity: none in the ForceSpec or "
                    "the configuration");

    std::vector<double> norms(src_.size());
    for (std::size_t i = 0; i < src_.size(); ++i) {
        norms[i] = norm(src_[i]);
        if (norms[i] <= spec_.origin_radius)
            origin_order_.push_back(i);
    }
    std::sort(origin_order_.begin(), origin_order_.end(), [&](std::size_t a, std::size_t b) {
        if (norms[a] != norms[b])
            return norms[a] < norms[b];
        return lex_less(src_[a], src_[b]);
    });
}

void ForceEvaluator::evaluate(std::span<double const> x, std::span<double> out) const
{
    if (static_cast<int>(x.size()) != src_.dim())
        throw Error(ErrorKind::InvalidArgument, "target and configuration dimensions differ");
    if (spec_.scheme == ForceScheme::TargetOrdered)
        evaluate_target_ordered(x, out);
    else
        evaluate_origin_ordered(x, out);
}

Point ForceEvaluator::operator()(Point const& x) const
{
    std::vector<double> out(static_cast<std::size_t>(src_.dim()));
    evaluate(x.coords(), out);
    return Point(std::move(out));
}

void ForceEvaluator::evaluate_target_ordered(std::span<double const> x,
                                             std::span<double> out) const
{
    int const d = src_.dim();
    struct Term
    {
        double dist;
        std::size_t index;
    };
    std::vector<Term> terms;
    terms.reserve(src_.size());
    for (std::size_t j = 0; j < src_.size(); ++j) {
        auto z = src_[j];
        if (same_point(x, z))
            continue;
        double const r = distance(x, z);
        if (r < spec_.q || !(r < spec_.p))
            continue;
        if (r < kMinPairDistance)
            throw_singular(j, r);
        terms.push_back({r, j});
    }
    std::sort(terms.begin(), terms.end(), [&](Term const& a, Term const& b) {
        if (a.dist != b.dist)
            return a.dist < b.dist;
        return lex_less(src_[a.index], src_[b.index]);
    });

    std::fill(out.begin(), out.end(), 0.0);
    std::vector<double> t(static_cast<std::size_t>(d));
    for (auto const& term : terms) {
        pair_term(x, src_[term.index], t);
        for (int i = 0; i < d; ++i)
            out[i] += t[i];
    }
}

void ForceEvaluator::evaluate_origin_ordered(std::span<double const> x,
                                             std::span<double> out) const
{
    int const d = src_.dim();
    std::fill(out.begin(), out.end(), 0.0);
    std::vector<double> t(static_cast<std::size_t>(d));
    for (std::size_t j : origin_order_) {
        auto z = src_[j];
        if (same_point(x, z))
            continue;
        double r2 = 0;
        for (int i = 0; i < d; ++i) {
            t[i] = x[i] - z[i];
            r2 += t[i] * t[i];
        }
        if (r2 < kMinPairDistance * kMinPairDistance)
            throw_singular(j, std::sqrt(r2));
        double const rd = ipow(std::sqrt(r2), d);
        for (int i = 0; i < d; ++i)
            out[i] += t[i] / rd;
    }
    double const c = kappa_ * rho_;
    for (int i = 0; i < d; ++i)
        out[i] -= c * x[i];
}

ForceField ForceEvaluator::field(std::span<double const> targets) const
{
    int const d = src_.dim();
    std::size_t const n = targets.size() / static_cast<std::size_t>(d);
    std::vector<double> values(targets.size());
    parallel_for(n, [&](std::size_t i) {
        evaluate(targets.subspan(i * d, d), std::span<double>(values).subspan(i * d, d));
    });
    return ForceField(d, std::move(values));
}

Point force_target_ordered(Configuration const& c, Point const& x, double q, double p)
{
    return ForceEvaluator(c, ForceSpec::target_ordered(q, p))(x);
}

Point force_origin_ordered(Configuration const& c, Point const& x, double rho)
{
    return ForceEvaluator(c, ForceSpec::origin_ordered(rho))(x);
}

ForceField force_field(Configuration const& c, ForceSpec const& spec)
{
    return ForceEvaluator(c, spec).field(c.coords());
}

}  // namespace rpp
