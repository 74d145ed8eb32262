#include "rpp/repulsion.hpp"

#include <atomic>
#include <cmath>
#include <string>

#include "rpp/error.hpp"

namespace rpp {

double epsilon_zero(int d, double rho)
{
    if (!(rho > 0) || !std::isfinite(rho))
        throw Error(ErrorKind::InvalidArgument, "epsilon_zero: rho must be positive");
    return 1.0 / (2.0 * d * unit_ball_volume(d) * rho);
}

void RepulsionParams::validate() const
{
    if (!std::isfinite(epsilon))
        throw Error(ErrorKind::InvalidArgument, "epsilon must be finite");
    if (iterations < 1)
        throw Error(ErrorKind::InvalidArgument, "iterations must be >= 1");
    if (spec)
        spec->validate();
}

ForceSpec RepulsionParams::resolved_spec() const
{
    return spec ? *spec : ForceSpec::origin_ordered();
}

namespace {
void warn_low_dimension(int d)
{
    static std::atomic<bool> warned{false};
    if (d < 3 && !warned.exchange(true))
        warn("repulsion in dimension " + std::to_string(d)
             + " < 3: the force series has no convergence guarantee");
}

void check_no_coincidence(int d, std::span<double const> coords)
{
    if (auto dup = find_duplicate(d, coords))
        throw Error(ErrorKind::Coincidence, "displaced points " + std::to_string(dup->first)
                                                + " and " + std::to_string(dup->second)
                                                + " coincide");
}

// Apply x + eps * F(x) row by row.
std::vector<double> displace(std::span<double const> targets, ForceField const& f, double eps)
{
    std::vector<double> out(targets.begin(), targets.end());
    auto values = f.values();
    for (std::size_t k = 0; k < out.size(); ++k)
        out[k] += eps * values[k];
    return out;
}
}  // namespace

Configuration repel(Configuration const& c, RepulsionParams const& params)
{
    params.validate();
    if (params.iterations != 1)
        throw Error(ErrorKind::InvalidArgument,
                    "repel applies a single step; use repel_iterated");
    warn_low_dimension(c.dim());
    if (params.epsilon == 0.0 || c.empty())
        return c;

    ForceEvaluator force(c, params.resolved_spec());
    auto moved = displace(c.coords(), force.field(c.coords()), params.epsilon);
    check_no_coincidence(c.dim(), moved);
    Window w = c.window().enlarged_to_fit(moved);
    return Configuration(c.dim(), std::move(moved), std::move(w), c.intensity());
}

std::vector<Configuration> repel_iterated(Configuration const& c, RepulsionParams const& params)
{
    params.validate();
    warn_low_dimension(c.dim());
    ForceSpec const spec = params.resolved_spec();

    std::vector<Configuration> steps;
    steps.reserve(static_cast<std::size_t>(params.iterations));
    std::optional<ForceEvaluator> frozen;
    if (!params.self_consistent)
        frozen.emplace(c, spec);

    Configuration const* current = &c;
    for (int t = 0; t < params.iterations; ++t) {
        std::vector<double> moved;
        if (params.epsilon == 0.0 || current->empty()) {
            moved.assign(current->coords().begin(), current->coords().end());
        } else if (frozen) {
            moved = displace(current->coords(), frozen->field(current->coords()),
                             params.epsilon);
        } else {
            ForceSpec s = spec;
            if (!s.rho && c.intensity())
                s.rho = c.intensity();
            ForceEvaluator live(*current, s);
            moved = displace(current->coords(), live.field(current->coords()), params.epsilon);
        }
        check_no_coincidence(c.dim(), moved);
        Window w = current->window().enlarged_to_fit(moved);
        steps.emplace_back(c.dim(), std::move(moved), std::move(w), c.intensity());
        current = &steps.back();
    }
    return steps;
}

std::size_t WindowedRepulsion::escaped_count() const
{
    std::size_t k = 0;
    for (bool e : escaped)
        k += e ? 1 : 0;
    return k;
}

WindowedRepulsion repel_in_window(Configuration const& c, Window const& target,
                                  RepulsionParams const& params)
{
    params.validate();
    if (target.dim() != c.dim())
        throw Error(ErrorKind::InvalidArgument, "target window dimension differs");
    warn_low_dimension(c.dim());

    ForceSpec spec = params.resolved_spec();
    double const diam = target.diameter();
    double const needed = spec.scheme == ForceScheme::TargetOrdered ? diam : 0.5 * diam;
    if (!c.window().contains_ball(target.center().coords(), needed))
        throw Error(ErrorKind::WindowTooSmall,
                    "sample window must contain the ball of radius " + std::to_string(needed)
                        + " around the target center");
    if (spec.scheme == ForceScheme::TargetOrdered && std::isinf(spec.p))
        spec.p = 0.5 * diam;

    int const d = c.dim();
    std::vector<double> inside;
    for (std::size_t i = 0; i < c.size(); ++i) {
        auto p = c[i];
        if (target.contains(p))
            inside.insert(inside.end(), p.begin(), p.end());
    }

    std::vector<double> moved;
    if (params.epsilon == 0.0 || inside.empty()) {
        moved = inside;
    } else {
        ForceEvaluator force(c, spec);
        moved = displace(inside, force.field(inside), params.epsilon);
        check_no_coincidence(d, moved);
    }

    std::size_t const n = moved.size() / static_cast<std::size_t>(d);
    std::vector<bool> escaped(n);
    for (std::size_t i = 0; i < n; ++i)
        escaped[i] = !target.contains(std::span<double const>(moved).subspan(i * d, d));
    Window w = target.enlarged_to_fit(moved);
    return {Configuration(d, std::move(moved), std::move(w), c.intensity()), std::move(escaped)};
}

}  // namespace rpp
