// test_helpers.hpp: deterministic random inputs for property tests
//
// All random frequencies are integer multiples of 2^-16. Sums and differences
// of such values (at the magnitudes used here) are exact in double precision,
// so lattice identities can be asserted with zero tolerance. Draws use raw
// mt19937_64 output only; std::random distributions are avoided because their
// streams vary across standard libraries.
#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <vector>

#include "swapsim/photon_state.hpp"
#include "swapsim/spectral_amplitude.hpp"

namespace testhelp {

inline constexpr double kQuantum = 0x1.0p-16;

class DyadicRng {
  public:
    explicit DyadicRng(std::uint64_t seed) : engine_(seed) {}

    // Integer in [lo, hi], both inclusive. Modulo bias is irrelevant here.
    std::int64_t integer(std::int64_t lo, std::int64_t hi) {
        const auto span = static_cast<std::uint64_t>(hi - lo + 1);
        return lo + static_cast<std::int64_t>(engine_() % span);
    }

    // Multiple of 2^-16 in [lo_units, hi_units] quanta.
    double dyadic(std::int64_t lo_units, std::int64_t hi_units) {
        return static_cast<double>(integer(lo_units, hi_units)) * kQuantum;
    }

    double real(double lo, double hi) {
        const double u = static_cast<double>(engine_() >> 11) * 0x1.0p-53;
        return lo + u * (hi - lo);
    }

    swapsim::Complex amplitude() {
        const double modulus = real(0.2, 1.0);
        const double phase = real(0.0, 6.283185307179586);
        return std::polar(modulus, phase);
    }

    bool chance(double p) { return real(0.0, 1.0) < p; }

  private:
    std::mt19937_64 engine_;
};

inline constexpr std::int64_t units(double value) {
    return static_cast<std::int64_t>(value / kQuantum);
}

// Grid with dyadic start and spacing; spacing between 1 and ~0.1/quantum.
inline swapsim::FrequencyGrid random_grid(DyadicRng& rng, swapsim::BinIndex max_bins = 10) {
    const double start = rng.dyadic(units(0.25), units(2.0));
    const double delta = rng.dyadic(1, units(0.1));
    const auto bins = static_cast<swapsim::BinIndex>(rng.integer(1, max_bins));
    return swapsim::FrequencyGrid(start, delta, bins);
}

// Profile with random complex weights; roughly one bin in five is zeroed.
inline swapsim::SpectralAmplitude random_profile(DyadicRng& rng, const swapsim::FrequencyGrid& grid,
                                                 double zero_fraction = 0.2) {
    std::vector<swapsim::Complex> values(static_cast<std::size_t>(grid.bin_count));
    bool any = false;
    for (auto& v : values) {
        if (!rng.chance(zero_fraction)) {
            v = rng.amplitude();
            any = true;
        }
    }
    if (!any) values[0] = rng.amplitude();  // keep the support nonempty
    return swapsim::SpectralAmplitude(grid, values);
}

// Pump high enough that at least the lowest profile bin has a positive
// partner frequency, placed dyadically so split arithmetic is exact.
inline double random_pump(DyadicRng& rng, const swapsim::FrequencyGrid& grid) {
    const auto lowest = units(grid.center(0));
    return rng.dyadic(lowest + units(0.1), lowest + units(4.0));
}

// Normalized state with random sparse support on the given channels.
inline swapsim::PhotonState random_state(DyadicRng& rng,
                                         const std::vector<swapsim::Channel>& channels,
                                         double fill = 0.5) {
    swapsim::AmplitudeMap amps;
    std::size_t total = 1;
    for (const auto& c : channels) total *= static_cast<std::size_t>(c.grid.bin_count);
    for (std::size_t flat = 0; flat < total; ++flat) {
        if (!rng.chance(fill)) continue;
        swapsim::BinTuple tuple(channels.size());
        std::size_t rest = flat;
        for (std::size_t p = channels.size(); p-- > 0;) {
            const auto n = static_cast<std::size_t>(channels[p].grid.bin_count);
            tuple[p] = static_cast<swapsim::BinIndex>(rest % n);
            rest /= n;
        }
        amps[tuple] = rng.amplitude();
    }
    if (amps.empty()) amps[swapsim::BinTuple(channels.size(), 0)] = rng.amplitude();
    return swapsim::normalize(swapsim::PhotonState(channels, std::move(amps)));
}

}  // namespace testhelp
