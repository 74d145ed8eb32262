#pragma once

#include <array>
#include <cstdint>
#include <limits>
#include <string_view>

namespace rpp {

/*!
 * Seed of every sampler: a base key and a stream (replication) index.
 *
 * The pair fully determines the output of any sampler.
 */
struct Seed
{
    std::uint64_t base{0};
    std::uint64_t stream{0};

    //! Same stream, base key mixed with a tag. Used to give independent
    //! keys to different experiment cells without touching the stream.
    Seed derive(std::uint64_t tag) const;
    Seed derive(std::string_view tag) const;
    Seed with_stream(std::uint64_t s) const { return {base, s}; }

    friend bool operator==(Seed const&, Seed const&) = default;
};

std::uint64_t splitmix64(std::uint64_t x);

//! Philox4x32-10 block function (Salmon et al., Random123).
std::array<std::uint32_t, 4> philox4x32_10(std::array<std::uint32_t, 4> ctr,
                                           std::array<std::uint32_t, 2> key);

/*!
 * Counter-based generator: key = seed base, counter = (block, stream).
 *
 * Satisfies UniformRandomBitGenerator. Distinct streams never share
 * counters, so replications are independent of scheduling.
 */
class Rng
{
  public:
    using result_type = std::uint32_t;

    explicit Rng(Seed seed);

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

    result_type operator()();

    std::uint64_t next_u64();
    //! Uniform on [0, 1) with 53 random bits.
    double uniform();
    //! Uniform on (0, 1].
    double uniform_pos() { return 1.0 - uniform(); }
    double normal();

  private:
    void refill();

    std::array<std::uint32_t, 2> key_;
    std::uint64_t stream_;
    std::uint64_t block_{0};
    std::array<std::uint32_t, 4> buf_{};
    int pos_{4};
    bool has_spare_{false};
    double spare_{0};
};

//! Poisson variate: inversion below mean 30, PTRS rejection above.
std::uint64_t sample_poisson_count(Rng& rng, double mean);

}  // namespace rpp
