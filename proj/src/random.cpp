#include "rpp/random.hpp"

#include <cmath>
#include <numbers>

#include "rpp/error.hpp"

namespace rpp {

std::uint64_t splitmix64(std::uint64_t x)
{
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

Seed Seed::derive(std::uint64_t tag) const
{
    return {splitmix64(base ^ splitmix64(tag + 0x632be59bd9b4e019ULL)), stream};
}

Seed Seed::derive(std::string_view tag) const
{
    // FNV-1a
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (char c : tag) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001b3ULL;
    }
    return derive(h);
}

std::array<std::uint32_t, 4> philox4x32_10(std::array<std::uint32_t, 4> ctr,
                                           std::array<std::uint32_t, 2> key)
{
    constexpr std::uint64_t m0 = 0xD2511F53;
    constexpr std::uint64_t m1 = 0xCD9E8D57;
    constexpr std::uint32_t w0 = 0x9E3779B9;
    constexpr std::uint32_t w1 = 0xBB67AE85;
    for (int round = 0; round < 10; ++round) {
        std::uint64_t const p0 = m0 * ctr[0];
        std::uint64_t const p1 = m1 * ctr[2];
        auto const hi0 = static_cast<std::uint32_t>(p0 >> 32);
        auto const lo0 = static_cast<std::uint32_t>(p0);
        auto const hi1 = static_cast<std::uint32_t>(p1 >> 32);
        auto const lo1 = static_cast<std::uint32_t>(p1);
        ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
        key[0] += w0;
        key[1] += w1;
    }
    return ctr;
}

Rng::Rng(Seed seed)
    : key_{static_cast<std::uint32_t>(seed.base), static_cast<std::uint32_t>(seed.base >> 32)},
      stream_(seed.stream)
{
}

void Rng::refill()
{
    buf_ = philox4x32_10({static_cast<std::uint32_t>(block_),
                          static_cast<std::uint32_t>(block_ >> 32),
                          static_cast<std::uint32_t>(stream_),
                          static_cast<std::uint32_t>(stream_ >> 32)},
                         key_);
    ++block_;
    pos_ = 0;
}

Rng::result_type Rng::operator()()
{
    if (pos_ == 4)
        refill();
    return buf_[pos_++];
}

std::uint64_t Rng::next_u64()
{
    std::uint64_t const hi = (*this)();
    std::uint64_t const lo = (*this)();
    return (hi << 32) | lo;
}

double Rng::uniform()
{
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double Rng::normal()
{
    // Marsaglia polar method
    if (has_spare_) {
        has_spare_ = false;
        return spare_;
    }
    double u, v, s;
    do {
        u = 2.0 * uniform() - 1.0;
        v = 2.0 * uniform() - 1.0;
        s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    double const m = std::sqrt(-2.0 * std::log(s) / s);
    spare_ = v * m;
    has_spare_ = true;
    return u * m;
}

namespace {
std::uint64_t poisson_inversion(Rng& rng, double mean)
{
    double const p0 = std::exp(-mean);
    double u = rng.uniform();
    std::uint64_t k = 0;
    double p = p0;
    // Guard the tail against round-off leaving u unexhausted.
    while (u > p && k < 1000) {
        u -= p;
        ++k;
        p *= mean / static_cast<double>(k);
    }
    return k;
}

// W. Hörmann, "The transformed rejection method for generating Poisson
// random variables", Insurance: Mathematics and Economics 12 (1993).
std::uint64_t poisson_ptrs(Rng& rng, double mean)
{
    double const slam = std::sqrt(mean);
    double const loglam = std::log(mean);
    double const b = 0.931 + 2.53 * slam;
    double const a = -0.059 + 0.02483 * b;
    double const inv_alpha = 1.1239 + 1.1328 / (b - 3.4);
    double const vr = 0.9277 - 3.6224 / (b - 2);
    for (;;) {
        double const u = rng.uniform() - 0.5;
        double const v = rng.uniform();
        double const us = 0.5 - std::abs(u);
        double const k = std::floor((2 * a / us + b) * u + mean + 0.43);
        if (us >= 0.07 && v <= vr)
            return static_cast<std::uint64_t>(k);
        if (k < 0 || (us < 0.013 && v > us))
            continue;
        if (std::log(v) + std::log(inv_alpha) - std::log(a / (us * us) + b)
            <= -mean + k * loglam - std::lgamma(k + 1))
            return static_cast<std::uint64_t>(k);
    }
}
}  // namespace

std::uint64_t sample_poisson_count(Rng& rng, double mean)
{
    if (!(mean >= 0) || !std::isfinite(mean))
        throw Error(ErrorKind::InvalidArgument, "Poisson mean must be finite and >= 0");
    if (mean == 0)
        return 0;
    return mean < 30 ? poisson_inversion(rng, mean) : poisson_ptrs(rng, mean);
}

}  // namespace rpp
