#include "rpp/secondorder.hpp"

#include <boost/math/special_functions/beta.hpp>
#include <cmath>
#include <numbers>
#include <string>

#include "rpp/error.hpp"
#include "rpp/parallel.hpp"

namespace rpp {

namespace {
// Row block size for pair loops; fixed so results do not depend on threads.
constexpr std::size_t kRowBlock = 128;
}  // namespace

double window_set_covariance(Window const& w, std::span<double const> h)
{
    int const d = w.dim();
    switch (w.kind()) {
    case WindowKind::Box: {
        double v = 1.0;
        for (int i = 0; i < d; ++i) {
            double const s = w.side() - std::abs(h[i]);
            if (s <= 0)
                return 0.0;
            v *= s;
        }
        return v;
    }
    case WindowKind::Ball: {
        double const r = w.radius();
        double const t = norm(h);
        if (t >= 2 * r)
            return 0.0;
        double const x = 1.0 - t * t / (4 * r * r);
        return unit_ball_volume(d) * std::pow(r, d)
               * boost::math::ibeta(0.5 * (d + 1), 0.5, x);
    }
    case WindowKind::Annulus: break;
    }
    throw Error(ErrorKind::UnsupportedWindow, "set covariance of an annulus is not supported");
}

RadialFunctionEstimate pcf_estimate(Configuration const& c, double r_max, int n_bins)
{
    if (c.size() < 2)
        throw Error(ErrorKind::Contract, "pair correlation needs at least 2 points");
    if (n_bins < 1)
        throw Error(ErrorKind::InvalidArgument, "pcf needs at least one bin");
    Window const& w = c.window();
    if (w.kind() == WindowKind::Annulus)
        throw Error(ErrorKind::UnsupportedWindow, "pcf edge correction needs a box or ball window");
    if (!(r_max > 0) || r_max > 0.5 * w.diameter())
        throw Error(ErrorKind::InvalidArgument,
                    "r_max must lie in (0, diameter/2], got " + std::to_string(r_max));

    int const d = c.dim();
    std::size_t const n = c.size();
    std::size_t const bins = static_cast<std::size_t>(n_bins);
    double const dr = r_max / n_bins;

    std::size_t const blocks = (n + kRowBlock - 1) / kRowBlock;
    std::vector<std::vector<double>> weight(blocks, std::vector<double>(bins, 0.0));
    std::vector<std::vector<std::size_t>> count(blocks, std::vector<std::size_t>(bins, 0));

    parallel_for(blocks, [&](std::size_t b) {
        std::vector<double> h(static_cast<std::size_t>(d));
        std::size_t const end = std::min(n, (b + 1) * kRowBlock);
        for (std::size_t i = b * kRowBlock; i < end; ++i) {
            auto x = c[i];
            for (std::size_t j = i + 1; j < n; ++j) {
                auto y = c[j];
                double r2 = 0;
                for (int k = 0; k < d; ++k) {
                    h[k] = x[k] - y[k];
                    r2 += h[k] * h[k];
                }
                double const r = std::sqrt(r2);
                if (!(r < r_max))
                    continue;
                auto const bin = std::min(bins - 1, static_cast<std::size_t>(r / dr));
                double const cov = window_set_covariance(w, h);
                if (cov <= 0)
                    continue;
                weight[b][bin] += 1.0 / cov;
                count[b][bin] += 1;
            }
        }
    });

    double const rho = c.intensity_or_estimate();
    double const kappa = unit_ball_volume(d);
    RadialFunctionEstimate out;
    out.abscissae.resize(bins);
    out.values.resize(bins);
    out.counts.assign(bins, 0);
    for (std::size_t j = 0; j < bins; ++j) {
        double total = 0;
        for (std::size_t b = 0; b < blocks; ++b) {
            total += weight[b][j];
            out.counts[j] += count[b][j];
        }
        double const lo = j * dr;
        double const hi = (j + 1) * dr;
        double const ring = kappa * (std::pow(hi, d) - std::pow(lo, d));
        out.abscissae[j] = 0.5 * (lo + hi);
        out.values[j] = 2.0 * total / (rho * rho * ring);
    }
    return out;
}

RadialFunctionEstimate structure_factor_estimate(Configuration const& c, double k_max, int n_bins)
{
    Window const& w = c.window();
    if (w.kind() != WindowKind::Box)
        throw Error(ErrorKind::UnsupportedWindow,
                    "structure factor needs a box window (crop balls to the inscribed box)");
    if (!(k_max > 0) || n_bins < 1)
        throw Error(ErrorKind::InvalidArgument, "structure factor needs k_max > 0 and bins >= 1");

    int const d = c.dim();
    double const step = 2 * std::numbers::pi / w.side();
    auto const mmax = static_cast<long>(std::floor(k_max / step));

    // Half-space of integer vectors: first nonzero component positive.
    std::vector<std::vector<long>> modes;
    std::vector<long> m(static_cast<std::size_t>(d), -mmax);
    for (;;) {
        long first = 0;
        for (long v : m) {
            if (v != 0) {
                first = v;
                break;
            }
        }
        if (first > 0) {
            double k2 = 0;
            for (long v : m)
                k2 += static_cast<double>(v * v);
            if (std::sqrt(k2) * step <= k_max)
                modes.push_back(m);
        }
        int i = d - 1;
        while (i >= 0 && m[i] == mmax) {
            m[i] = -mmax;
            --i;
        }
        if (i < 0)
            break;
        ++m[i];
    }

    double const norm_factor = c.intensity_or_estimate() * w.volume();
    std::vector<double> intensity(modes.size());
    std::vector<double> kabs(modes.size());
    parallel_for(modes.size(), [&](std::size_t q) {
        std::vector<double> k(static_cast<std::size_t>(d));
        double k2 = 0;
        for (int i = 0; i < d; ++i) {
            k[i] = step * static_cast<double>(modes[q][i]);
            k2 += k[i] * k[i];
        }
        kabs[q] = std::sqrt(k2);
        double re = 0, im = 0;
        for (std::size_t p = 0; p < c.size(); ++p) {
            auto x = c[p];
            double phase = 0;
            for (int i = 0; i < d; ++i)
                phase += k[i] * x[i];
            re += std::cos(phase);
            im -= std::sin(phase);
        }
        intensity[q] = (re * re + im * im) / norm_factor;
    });

    std::size_t const bins = static_cast<std::size_t>(n_bins);
    double const dk = k_max / n_bins;
    std::vector<double> sum(bins, 0.0);
    std::vector<std::size_t> cnt(bins, 0);
    for (std::size_t q = 0; q < modes.size(); ++q) {
        auto const bin = std::min(bins - 1, static_cast<std::size_t>(kabs[q] / dk));
        sum[bin] += intensity[q];
        cnt[bin] += 1;
    }
    RadialFunctionEstimate out;
    for (std::size_t j = 0; j < bins; ++j) {
        if (cnt[j] == 0)
            continue;
        out.abscissae.push_back((j + 0.5) * dk);
        out.values.push_back(sum[j] / static_cast<double>(cnt[j]));
        out.counts.push_back(cnt[j]);
    }
    return out;
}

Configuration crop_to_inscribed_box(Configuration const& c)
{
    Window const& w = c.window();
    if (w.kind() == WindowKind::Box)
        return c;
    if (w.kind() != WindowKind::Ball)
        throw Error(ErrorKind::UnsupportedWindow, "only ball windows can be cropped to a box");
    double const side = 2 * w.radius() / std::sqrt(static_cast<double>(c.dim()));
    return c.restricted_to(Window::box(w.center(), side));
}

}  // namespace rpp
