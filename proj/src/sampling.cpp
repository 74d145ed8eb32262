#include "rpp/sampling.hpp"

#include <boost/random/sobol.hpp>
#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <string>

#include "rpp/error.hpp"

namespace rpp {

void sample_uniform_point(Window const& w, Rng& rng, std::span<double> out)
{
    int const d = w.dim();
    auto const c = w.center().coords();
    switch (w.kind()) {
    case WindowKind::Box:
        do {
            for (int i = 0; i < d; ++i)
                out[i] = c[i] + w.side() * (rng.uniform() - 0.5);
        } while (!w.contains(out));
        return;
    case WindowKind::Ball:
    case WindowKind::Annulus: {
        double const lo = std::pow(w.inner_radius(), d);
        double const hi = std::pow(w.radius(), d);
        do {
            double n2 = 0;
            do {
                n2 = 0;
                for (int i = 0; i < d; ++i) {
                    out[i] = rng.normal();
                    n2 += out[i] * out[i];
                }
            } while (n2 == 0);
            double const r = std::pow(lo + (hi - lo) * rng.uniform(), 1.0 / d);
            double const s = r / std::sqrt(n2);
            for (int i = 0; i < d; ++i)
                out[i] = c[i] + s * out[i];
        } while (!w.contains(out));
        return;
    }
    }
}

namespace {
// Replace exact duplicates by fresh draws from perturbed substreams.
void resolve_duplicates(Window const& w, Seed seed, std::vector<double>& coords)
{
    int const d = w.dim();
    for (std::uint64_t attempt = 1;; ++attempt) {
        auto dup = find_duplicate(d, coords);
        if (!dup)
            return;
        Rng rng(seed.derive("duplicate-" + std::to_string(attempt)));
        sample_uniform_point(w, rng, std::span<double>(coords).subspan(dup->second * d, d));
    }
}

std::vector<double> uniform_points(Window const& w, std::size_t n, Rng& rng)
{
    std::size_t const d = static_cast<std::size_t>(w.dim());
    std::vector<double> coords(n * d);
    for (std::size_t k = 0; k < n; ++k)
        sample_uniform_point(w, rng, std::span<double>(coords).subspan(k * d, d));
    return coords;
}
}  // namespace

Configuration sample_binomial(Window const& w, std::size_t n, Seed seed)
{
    if (n < 1)
        throw Error(ErrorKind::InvalidArgument, "binomial process needs n >= 1");
    Rng rng(seed);
    auto coords = uniform_points(w, n, rng);
    resolve_duplicates(w, seed, coords);
    return Configuration(w.dim(), std::move(coords), w, static_cast<double>(n) / w.volume());
}

Configuration sample_poisson(Window const& w, double rho, Seed seed)
{
    if (!(rho > 0) || !std::isfinite(rho))
        throw Error(ErrorKind::InvalidArgument, "Poisson intensity must be positive");
    double const mean = rho * w.volume();
    if (!(mean <= kMaxExpectedPoints))
        throw Error(ErrorKind::Resource,
                    "Poisson sample would have " + std::to_string(mean)
                        + " expected points (limit 1e8)");
    Rng rng(seed);
    auto const n = sample_poisson_count(rng, mean);
    auto coords = uniform_points(w, n, rng);
    resolve_duplicates(w, seed, coords);
    return Configuration(w.dim(), std::move(coords), w, rho);
}

Configuration sample_ginibre(int m, Seed seed, int max_size)
{
    if (m < 1)
        throw Error(ErrorKind::InvalidArgument, "Ginibre matrix size must be >= 1");
    if (m > max_size)
        throw Error(ErrorKind::Resource,
                    "Ginibre matrix size " + std::to_string(m) + " exceeds budget "
                        + std::to_string(max_size));
    Rng rng(seed);
    double const s = std::sqrt(0.5);
    Eigen::MatrixXcd a(m, m);
    for (int j = 0; j < m; ++j)
        for (int i = 0; i < m; ++i) {
            double const re = rng.normal();
            double const im = rng.normal();
            a(i, j) = std::complex<double>(s * re, s * im);
        }
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(a, false);
    if (solver.info() != Eigen::Success)
        throw Error(ErrorKind::Contract, "Ginibre eigendecomposition did not converge");
    auto const& ev = solver.eigenvalues();
    std::vector<double> coords(2 * static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) {
        coords[2 * i] = ev(i).real();
        coords[2 * i + 1] = ev(i).imag();
    }
    Window w = Window::centered_ball(2, std::sqrt(static_cast<double>(m)));
    w = w.enlarged_to_fit(coords);
    return Configuration(2, std::move(coords), w, 1.0 / std::numbers::pi);
}

Configuration rescale(Configuration const& c, double factor)
{
    if (!(factor > 0) || !std::isfinite(factor))
        throw Error(ErrorKind::InvalidArgument, "rescale factor must be positive");
    std::vector<double> coords(c.coords().begin(), c.coords().end());
    for (double& v : coords)
        v *= factor;
    std::optional<double> rho;
    if (c.intensity())
        rho = *c.intensity() / std::pow(factor, c.dim());
    Window w = c.window().scaled(factor);
    // Scaling rounds coordinates and window bounds independently.
    w = w.enlarged_to_fit(coords);
    return Configuration(c.dim(), std::move(coords), w, rho);
}

Configuration sample_sobol(int d, std::size_t n, bool scramble, Seed seed)
{
    if (d < 1 || d > kMaxSobolDimension)
        throw Error(ErrorKind::UnsupportedDimension,
                    "Sobol dimension " + std::to_string(d) + " outside [1, "
                        + std::to_string(kMaxSobolDimension) + "]");
    if (n < 1)
        throw Error(ErrorKind::InvalidArgument, "Sobol sample needs n >= 1");

    std::vector<std::uint64_t> shift(static_cast<std::size_t>(d), 0);
    if (scramble) {
        Rng rng(seed);
        for (auto& s : shift)
            s = rng.next_u64();
    }

    // boost's engine starts at index 1; index 0 is the zero vector.
    boost::random::sobol engine(static_cast<std::size_t>(d));
    std::vector<double> coords(n * static_cast<std::size_t>(d));
    for (std::size_t k = 0; k < n; ++k) {
        for (int i = 0; i < d; ++i) {
            std::uint64_t const v = k == 0 ? 0 : engine();
            std::uint64_t const x = v ^ shift[i];
            coords[k * d + i] = static_cast<double>(x >> 11) * 0x1.0p-53 - 0.5;
        }
    }
    return Configuration(d, std::move(coords), Window::centered_box(d, 1.0));
}

}  // namespace rpp
