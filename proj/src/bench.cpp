#include "rpp/bench.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "rpp/error.hpp"
#include "rpp/parallel.hpp"
#include "rpp/sampling.hpp"
#include "rpp/stats.hpp"

namespace rpp {

std::string to_string(Process p)
{
    switch (p) {
    case Process::Poisson: return "poisson";
    case Process::Ginibre: return "ginibre";
    case Process::Sobol: return "sobol";
    }
    return "?";
}

std::string to_string(Method m)
{
    switch (m) {
    case Method::MC: return "mc";
    case Method::MCRB: return "mcrb";
    case Method::MCCV: return "mccv";
    case Method::RQMC: return "rqmc";
    }
    return "?";
}

Process process_from_string(std::string const& s)
{
    if (s == "poisson")
        return Process::Poisson;
    if (s == "ginibre")
        return Process::Ginibre;
    if (s == "sobol")
        return Process::Sobol;
    throw Error(ErrorKind::InvalidArgument, "unknown process '" + s + "'");
}

Method method_from_string(std::string const& s)
{
    if (s == "mc")
        return Method::MC;
    if (s == "mcrb")
        return Method::MCRB;
    if (s == "mccv")
        return Method::MCCV;
    if (s == "rqmc")
        return Method::RQMC;
    throw Error(ErrorKind::InvalidArgument, "unknown method '" + s + "'");
}

SlopeFit ols_fit(std::span<double const> xs, std::span<double const> ys)
{
    if (xs.size() != ys.size())
        throw Error(ErrorKind::InvalidArgument, "ols_fit: xs and ys differ in length");
    std::size_t const n = xs.size();
    if (n < 3)
        throw Error(ErrorKind::Contract, "ols_fit needs at least 3 points");
    double const mx = mean(xs);
    double const my = mean(ys);
    double sxx = 0, sxy = 0, syy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        sxx += (xs[i] - mx) * (xs[i] - mx);
        sxy += (xs[i] - mx) * (ys[i] - my);
        syy += (ys[i] - my) * (ys[i] - my);
    }
    if (!(sxx > 0))
        throw Error(ErrorKind::Contract, "ols_fit: all xs are equal");
    SlopeFit fit;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    double ssr = 0;
    for (std::size_t i = 0; i < n; ++i) {
        double const e = ys[i] - (fit.intercept + fit.slope * xs[i]);
        ssr += e * e;
    }
    fit.slope_stderr = std::sqrt(ssr / static_cast<double>(n - 2) / sxx);
    fit.r_squared = syy > 0 ? 1.0 - ssr / syy : 1.0;
    return fit;
}

Window integration_box(int d)
{
    return Window::centered_box(d, 1.0);
}

int default_ginibre_size(double rho)
{
    // Circular-law disk radius sqrt(m) / sqrt(pi rho) must exceed the source
    // ball radius sqrt(2)/2 by a few unscaled units (the edge layer).
    double const r = std::sqrt(0.5) * std::sqrt(std::numbers::pi * rho) + 3.0;
    return static_cast<int>(std::ceil(r * r));
}

Configuration sample_source(Process process, int d, double rho, Seed seed, int ginibre_size)
{
    Window const k = integration_box(d);
    Window const ball = Window::centered_ball(d, 0.5 * k.diameter());
    switch (process) {
    case Process::Poisson: return sample_poisson(ball, rho, seed);
    case Process::Ginibre: {
        if (d != 2)
            throw Error(ErrorKind::UnsupportedDimension, "the Ginibre process lives in d = 2");
        int const m = ginibre_size > 0 ? ginibre_size : default_ginibre_size(rho);
        auto g = sample_ginibre(m, seed);
        auto scaled = rescale(g, std::sqrt(1.0 / (std::numbers::pi * rho)));
        if (!scaled.window().contains_ball(ball.center().coords(), ball.radius()))
            throw Error(ErrorKind::WindowTooSmall, "Ginibre sample does not cover the source ball");
        return scaled.restricted_to(ball).with_intensity(rho);
    }
    case Process::Sobol: {
        double const side = ball.diameter();
        auto const n = static_cast<std::size_t>(std::llround(rho * std::pow(side, d)));
        auto s = rescale(sample_sobol(d, std::max<std::size_t>(n, 1), true, seed), side);
        return s.restricted_to(ball).with_intensity(static_cast<double>(n) / std::pow(side, d));
    }
    }
    throw Error(ErrorKind::InvalidArgument, "unknown process");
}

Configuration repel_into(Configuration const& source, Window const& k, double epsilon)
{
    if (epsilon == 0.0)
        return source.restricted_to(k);
    RepulsionParams params;
    params.epsilon = epsilon;
    params.spec = ForceSpec::origin_ordered(source.intensity());
    return repel(source, params).restricted_to(k);
}

Configuration sample_repelled_in_box(Process process, int d, double rho, double epsilon,
                                     Seed seed, int ginibre_size)
{
    return repel_into(sample_source(process, d, rho, seed, ginibre_size), integration_box(d),
                      epsilon);
}

namespace {
struct Slot
{
    double value{0};
    std::size_t n_points{0};
    bool failed{false};
};

// Gather per-cell reports, enforcing the failure policy.
SweepResult collect(std::string axis, std::vector<double> axis_values,
                    std::vector<std::vector<Slot>> const& slots)
{
    SweepResult r;
    r.axis_name = std::move(axis);
    r.axis_values = std::move(axis_values);
    for (auto const& cell : slots) {
        std::vector<double> vals;
        std::vector<std::size_t> pts;
        std::size_t failed = 0;
        for (auto const& s : cell) {
            if (s.failed) {
                ++failed;
                continue;
            }
            vals.push_back(s.value);
            pts.push_back(s.n_points);
        }
        if (static_cast<double>(failed) > 0.01 * static_cast<double>(cell.size()))
            throw Error(ErrorKind::Contract, std::to_string(failed) + " of "
                                                 + std::to_string(cell.size())
                                                 + " replications failed (limit 1%)");
        r.per_cell.push_back(EstimateReport::from(std::move(vals), std::move(pts)));
        r.failed.push_back(failed);
    }
    return r;
}

// Run body(cell, rep) over a cells x reps grid in parallel.
template<class Body>
std::vector<std::vector<Slot>> run_grid(std::size_t cells, std::size_t reps, Body&& body)
{
    std::vector<std::vector<Slot>> slots(cells, std::vector<Slot>(reps));
    parallel_for(cells * reps, [&](std::size_t t) {
        std::size_t const cell = t / reps;
        std::size_t const rep = t % reps;
        Slot& s = slots[cell][rep];
        try {
            body(cell, rep, s);
        } catch (Error const& e) {
            if (e.kind() == ErrorKind::Resource)
                throw;
            s.failed = true;
        }
    });
    return slots;
}
}  // namespace

SweepResult epsilon_sweep(EpsilonSweepConfig const& cfg)
{
    if (cfg.reps < 2)
        throw Error(ErrorKind::InvalidArgument, "epsilon sweep needs at least 2 replications");
    if (cfg.epsilons.empty())
        throw Error(ErrorKind::InvalidArgument, "epsilon grid is empty");
    Integrand const f = integrand_by_name(cfg.integrand, cfg.d);
    Window const k = integration_box(cfg.d);
    Seed const base = cfg.seed.derive("epsilon-sweep/" + to_string(cfg.process));
    auto const reps = static_cast<std::size_t>(cfg.reps);

    // Sources are shared across epsilons: sample once per replication.
    std::vector<std::optional<Configuration>> sources(reps);
    std::vector<bool> source_failed(reps, false);
    parallel_for(reps, [&](std::size_t r) {
        try {
            sources[r] = sample_source(cfg.process, cfg.d, cfg.rho, base.with_stream(r),
                                       cfg.ginibre_size);
        } catch (Error const& e) {
            if (e.kind() == ErrorKind::Resource)
                throw;
            source_failed[r] = true;
        }
    });

    auto slots = run_grid(cfg.epsilons.size(), reps, [&](std::size_t cell, std::size_t r, Slot& s) {
        if (source_failed[r]) {
            s.failed = true;
            return;
        }
        auto const pts = repel_into(*sources[r], k, cfg.epsilons[cell]);
        s.value = estimate_self_normalized(pts, f, k);
        s.n_points = pts.count_in(k);
    });

    SweepResult r = collect("epsilon", cfg.epsilons, slots);
    r.metadata = {{"experiment", "epsilon_sweep"},
                  {"process", to_string(cfg.process)},
                  {"d", std::to_string(cfg.d)},
                  {"rho", format_double(cfg.rho)},
                  {"M", std::to_string(cfg.reps)},
                  {"integrand", cfg.integrand},
                  {"estimator", "self_normalized"},
                  {"epsilon_0", format_double(epsilon_zero(cfg.d, cfg.rho))},
                  {"seed", std::to_string(cfg.seed.base)}};
    if (cfg.process == Process::Ginibre)
        r.metadata["ginibre_size"] = std::to_string(
            cfg.ginibre_size > 0 ? cfg.ginibre_size : default_ginibre_size(cfg.rho));
    return r;
}

MethodRun run_method(Method method, int d, Integrand const& f, std::size_t n, Seed seed)
{
    Window const k = integration_box(d);
    switch (method) {
    case Method::MC: {
        auto c = sample_binomial(k, n, seed);
        return {estimate_crude_mc(c, f), c.size()};
    }
    case Method::MCCV: {
        auto c = sample_binomial(k, n, seed.derive("main"));
        auto pilot = sample_binomial(k, n, seed.derive("pilot"));
        // The pilot's evaluations are not charged; strip any counter.
        Integrand const plain = f.uncounted();
        auto cv = fit_quadratic_control(pilot, plain, k);
        double const coef = control_coefficient(pilot, plain, cv.h);
        return {estimate_with_control(c, f, cv, coef), c.size()};
    }
    case Method::RQMC: {
        auto c = sample_sobol(d, n, true, seed);
        return {estimate_rqmc(c, f), c.size()};
    }
    case Method::MCRB: {
        // N uniform points in K are displaced; a binomial shell on B \ K at
        // the same density supplies the remaining force sources.
        Window const ball = Window::centered_ball(d, 0.5 * k.diameter());
        double const rho = static_cast<double>(n) / k.volume();
        auto const n_shell = static_cast<std::size_t>(
            std::llround(static_cast<double>(n) * (ball.volume() - k.volume()) / k.volume()));
        auto inner = sample_binomial(k, n, seed.derive("inner"));
        std::vector<double> coords(inner.coords().begin(), inner.coords().end());
        Rng rng(seed.derive("shell"));
        std::vector<double> x(static_cast<std::size_t>(d));
        for (std::size_t i = 0; i < n_shell;) {
            sample_uniform_point(ball, rng, x);
            if (k.contains(x))
                continue;
            coords.insert(coords.end(), x.begin(), x.end());
            ++i;
        }
        Configuration src(d, std::move(coords), ball, rho);
        auto moved = repel_into(src, k, epsilon_zero(d, rho));
        return {estimate_unbiased(moved, f), moved.size()};
    }
    }
    throw Error(ErrorKind::InvalidArgument, "unknown method");
}

std::vector<MethodSweep> n_sweep(NSweepConfig const& cfg)
{
    if (cfg.reps < 10)
        throw Error(ErrorKind::InvalidArgument, "N sweep needs at least 10 replications");
    if (cfg.n_values.empty() || !std::is_sorted(cfg.n_values.begin(), cfg.n_values.end())
        || std::adjacent_find(cfg.n_values.begin(), cfg.n_values.end()) != cfg.n_values.end())
        throw Error(ErrorKind::InvalidArgument, "N values must be strictly increasing");
    Integrand const f = integrand_by_name(cfg.integrand, cfg.d);
    auto const reps = static_cast<std::size_t>(cfg.reps);
    std::vector<double> axis(cfg.n_values.begin(), cfg.n_values.end());

    std::vector<MethodSweep> out;
    for (Method m : cfg.methods) {
        auto slots = run_grid(cfg.n_values.size(), reps, [&](std::size_t cell, std::size_t r, Slot& s) {
            Seed const seed = cfg.seed.derive("n-sweep/" + to_string(m) + "/"
                                              + std::to_string(cfg.n_values[cell]))
                                  .with_stream(r);
            auto const run = run_method(m, cfg.d, f, cfg.n_values[cell], seed);
            s.value = run.estimate;
            s.n_points = run.n_points;
        });
        MethodSweep ms{m, collect("N", axis, slots), std::nullopt};
        ms.result.metadata = {{"experiment", "n_sweep"},
                              {"method", to_string(m)},
                              {"d", std::to_string(cfg.d)},
                              {"M", std::to_string(cfg.reps)},
                              {"integrand", cfg.integrand},
                              {"seed", std::to_string(cfg.seed.base)},
                              {"mccv_pilot", "size N, not charged to the budget"}};
        if (ms.result.per_cell.size() >= 3) {
            std::vector<double> lx, ly;
            for (auto const& rep : ms.result.per_cell) {
                lx.push_back(std::log(rep.mean_points()));
                ly.push_back(std::log(rep.sample_std));
            }
            ms.slope = ols_fit(lx, ly);
        }
        out.push_back(std::move(ms));
    }
    return out;
}

SweepResult error_study(ErrorStudyConfig const& cfg)
{
    Integrand const f = integrand_by_name(cfg.integrand, cfg.d);
    auto const ref = reference_integral(f, cfg.d);
    if (!ref)
        throw Error(ErrorKind::Contract,
                    "no reference integral for " + cfg.integrand + " in d = " + std::to_string(cfg.d));
    return error_study(cfg, f, *ref);
}

SweepResult error_study(ErrorStudyConfig const& cfg, Integrand const& f, double reference)
{
    if (f.dim() != cfg.d)
        throw Error(ErrorKind::InvalidArgument, "integrand dimension does not match d");
    std::optional<double> const ref = reference;
    auto const reps = static_cast<std::size_t>(cfg.reps);
    auto slots = run_grid(cfg.methods.size(), reps, [&](std::size_t cell, std::size_t r, Slot& s) {
        Method const m = cfg.methods[cell];
        Seed const seed = cfg.seed.derive("error-study/" + to_string(m)).with_stream(r);
        auto const run = run_method(m, cfg.d, f, cfg.n, seed);
        s.value = run.estimate - *ref;
        s.n_points = run.n_points;
    });
    std::vector<double> axis;
    std::string names;
    for (std::size_t i = 0; i < cfg.methods.size(); ++i) {
        axis.push_back(static_cast<double>(i));
        names += (i ? "," : "") + to_string(cfg.methods[i]);
    }
    SweepResult r = collect("method", axis, slots);
    r.metadata = {{"experiment", "error_study"},
                  {"methods", names},
                  {"d", std::to_string(cfg.d)},
                  {"N", std::to_string(cfg.n)},
                  {"M", std::to_string(cfg.reps)},
                  {"integrand", f.name()},
                  {"reference", format_double(*ref)},
                  {"seed", std::to_string(cfg.seed.base)}};
    return r;
}

}  // namespace rpp
