#pragma once

// Counter-based RNG (Philox-4x32-10) so that every random draw is a pure
// function of (seed, sample, stream, index). Parallel sweeps stay
// bit-reproducible no matter how work is scheduled.

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>

namespace nlse {

namespace detail {

inline constexpr std::uint32_t kPhiloxM0 = 0xD2511F53u;
inline constexpr std::uint32_t kPhiloxM1 = 0xCD9E8D57u;
inline constexpr std::uint32_t kPhiloxW0 = 0x9E3779B9u;
inline constexpr std::uint32_t kPhiloxW1 = 0xBB67AE85u;

inline void philox_round(std::array<std::uint32_t, 4>& ctr,
                         const std::array<std::uint32_t, 2>& key) {
    const std::uint64_t p0 = std::uint64_t(kPhiloxM0) * ctr[0];
    const std::uint64_t p1 = std::uint64_t(kPhiloxM1) * ctr[2];
    const auto hi0 = std::uint32_t(p0 >> 32), lo0 = std::uint32_t(p0);
    const auto hi1 = std::uint32_t(p1 >> 32), lo1 = std::uint32_t(p1);
    ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
}

} // namespace detail

// One 128-bit block of Philox-4x32 with 10 rounds.
inline std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> ctr,
                                               std::array<std::uint32_t, 2> key) {
    for (int round = 0; round < 10; ++round) {
        detail::philox_round(ctr, key);
        key[0] += detail::kPhiloxW0;
        key[1] += detail::kPhiloxW1;
    }
    return ctr;
}

// Stateless generator addressed by (seed; a, b, c): the caller encodes
// sample index, block/mode index and draw purpose into the counter words.
class CounterRng {
  public:
    explicit CounterRng(std::uint64_t seed) : seed_(seed) {}

    std::array<std::uint32_t, 4> raw(std::uint64_t a, std::uint64_t b,
                                     std::uint32_t c = 0) const {
        return philox4x32(
            {std::uint32_t(a), std::uint32_t(a >> 32), std::uint32_t(b),
             std::uint32_t(b >> 32) ^ c},
            {std::uint32_t(seed_), std::uint32_t(seed_ >> 32)});
    }

    // Uniform in (0,1]: never 0, so log() below is safe.
    static double to_unit(std::uint32_t w) {
        return (double(w) + 1.0) * 0x1p-32;
    }

    double uniform(std::uint64_t a, std::uint64_t b, std::uint32_t c = 0) const {
        return to_unit(raw(a, b, c)[0]);
    }

    // Standard complex Gaussian, E g = 0, E|g|^2 = 1 (Re and Im have
    // variance 1/2 each): g = sqrt(-log u1) e^{2 pi i u2}.
    std::complex<double> gaussian(std::uint64_t a, std::uint64_t b,
                                  std::uint32_t c = 0) const {
        const auto w = raw(a, b, c);
        const double r = std::sqrt(-std::log(to_unit(w[0])));
        const double phi = 2.0 * M_PI * (double(w[1]) * 0x1p-32);
        return {r * std::cos(phi), r * std::sin(phi)};
    }

    // Real standard normal.
    double normal(std::uint64_t a, std::uint64_t b, std::uint32_t c = 0) const {
        const auto w = raw(a, b, c);
        const double r = std::sqrt(-2.0 * std::log(to_unit(w[0])));
        return r * std::cos(2.0 * M_PI * (double(w[1]) * 0x1p-32));
    }

    std::uint64_t seed() const { return seed_; }

  private:
    std::uint64_t seed_;
};

} // namespace nlse
