#include "rpp/configuration.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "rpp/error.hpp"

namespace rpp {

std::optional<std::pair<std::size_t, std::size_t>>
find_duplicate(int d, std::span<double const> coords)
{
    std::size_t const n = coords.size() / static_cast<std::size_t>(d);
    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    auto row = [&](std::size_t i) { return coords.subspan(i * d, d); };
    std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
        auto ra = row(a), rb = row(b);
        return std::lexicographical_compare(ra.begin(), ra.end(), rb.begin(), rb.end());
    });
    for (std::size_t k = 1; k < n; ++k) {
        auto ra = row(idx[k - 1]), rb = row(idx[k]);
        if (std::equal(ra.begin(), ra.end(), rb.begin()))
            return std::pair{std::min(idx[k - 1], idx[k]), std::max(idx[k - 1], idx[k])};
    }
    return std::nullopt;
}

Configuration::Configuration(int d, std::vector<double> coords, Window window,
                             std::optional<double> intensity)
    : d_(d), coords_(std::move(coords)), window_(std::move(window)), intensity_(intensity)
{
    if (d_ < 1)
        throw Error(ErrorKind::InvalidArgument, "configuration dimension must be >= 1");
    if (window_.dim() != d_)
        throw Error(ErrorKind::InvalidArgument, "configuration and window dimensions differ");
    if (coords_.size() % static_cast<std::size_t>(d_) != 0)
        throw Error(ErrorKind::InvalidArgument, "coordinate buffer is not a multiple of d");
    if (intensity_ && !(*intensity_ > 0 && std::isfinite(*intensity_)))
        throw Error(ErrorKind::InvalidArgument, "intensity must be positive");
    for (double v : coords_) {
        if (!std::isfinite(v))
            throw Error(ErrorKind::InvalidArgument, "configuration has a non-finite coordinate");
    }
    for (std::size_t i = 0; i < size(); ++i) {
        if (!window_.contains((*this)[i]))
            throw Error(ErrorKind::Contract,
                        "point " + std::to_string(i) + " lies outside the window");
    }
    if (auto dup = find_duplicate(d_, coords_))
        throw Error(ErrorKind::Coincidence,
                    "points " + std::to_string(dup->first) + " and "
                        + std::to_string(dup->second) + " coincide");
}

Configuration::Configuration(Window window, std::optional<double> intensity)
    : Configuration(window.dim(), {}, window, intensity)
{
}

double Configuration::intensity_or_estimate() const
{
    if (intensity_)
        return *intensity_;
    return static_cast<double>(size()) / window_.volume();
}

Configuration Configuration::with_intensity(std::optional<double> rho) const
{
    Configuration c = *this;
    if (rho && !(*rho > 0 && std::isfinite(*rho)))
        throw Error(ErrorKind::InvalidArgument, "intensity must be positive");
    c.intensity_ = rho;
    return c;
}

Configuration Configuration::restricted_to(Window const& w) const
{
    std::vector<double> out;
    for (std::size_t i = 0; i < size(); ++i) {
        auto p = (*this)[i];
        if (w.contains(p))
            out.insert(out.end(), p.begin(), p.end());
    }
    return Configuration(d_, std::move(out), w, intensity_);
}

std::size_t Configuration::count_in(Window const& w) const
{
    std::size_t k = 0;
    for (std::size_t i = 0; i < size(); ++i)
        k += w.contains((*this)[i]) ? 1 : 0;
    return k;
}

Configuration Configuration::translated(std::span<double const> shift) const
{
    std::vector<double> out = coords_;
    for (std::size_t i = 0; i < size(); ++i)
        for (int k = 0; k < d_; ++k)
            out[i * d_ + k] += shift[k];
    return Configuration(d_, std::move(out), window_.translated(shift), intensity_);
}

}  // namespace rpp
