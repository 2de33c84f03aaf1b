// sampling.hpp: reproducible Monte Carlo draws from a photon state
//
// Sampling is counter-based so a run is a pure function of (seed, trial
// index): trial t uses the SplitMix64 output for state seed + (t+1)*gamma.
// RNG identity, for reproducing streams elsewhere:
//   gamma = 0x9E3779B97F4A7C15
//   z = state; z ^= z >> 30; z *= 0xBF58476D1CE4E5B9;
//   z ^= z >> 27; z *= 0x94D049BB133111EB; z ^= z >> 31;
//   u = (z >> 11) * 2^-53   in [0, 1)
// Each trial consumes exactly one uniform and inverts the cumulative
// distribution over bin tuples in their lexicographic order.
#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "swapsim/measurement.hpp"
#include "swapsim/photon_state.hpp"

namespace swapsim {

namespace detail {

constexpr std::uint64_t kSplitMixGamma = 0x9E3779B97F4A7C15ULL;

constexpr std::uint64_t splitmix64(std::uint64_t state) noexcept {
    std::uint64_t z = state;
    z ^= z >> 30;
    z *= 0xBF58476D1CE4E5B9ULL;
    z ^= z >> 27;
    z *= 0x94D049BB133111EBULL;
    z ^= z >> 31;
    return z;
}

// Uniform in [0, 1) with 53 random bits.
constexpr double uniform_for_trial(std::uint64_t seed, std::int64_t trial) noexcept {
    const std::uint64_t state =
        seed + (static_cast<std::uint64_t>(trial) + 1ULL) * kSplitMixGamma;
    return static_cast<double>(splitmix64(state) >> 11) * 0x1.0p-53;
}

}  // namespace detail

struct SampleRun {
    std::uint64_t seed = 0;
    std::int64_t trials = 0;
    std::vector<Channel> channels;  // layout of each event tuple
    std::vector<BinTuple> events;   // one joint detection per trial, in trial order
};

// Draws `trials` joint frequency-bin tuples from |amplitude|^2. The state must
// be normalized; probabilities are renormalized over its retained entries so
// pruning noise cannot leave a dangling tail.
inline SampleRun sample_frequencies(const PhotonState& state, std::int64_t trials,
                                    std::uint64_t seed) {
    if (trials < 1) throw std::invalid_argument("sample_frequencies: trials must be >= 1");
    if (!state.is_normalized())
        throw std::invalid_argument("sample_frequencies: state must be normalized");

    std::vector<const BinTuple*> tuples;
    std::vector<double> cdf;
    tuples.reserve(state.entry_count());
    cdf.reserve(state.entry_count());
    double acc = 0.0;
    for (const auto& [tuple, amp] : state.amplitudes()) {
        acc += std::norm(amp);
        tuples.push_back(&tuple);
        cdf.push_back(acc);
    }
    const double total = acc;

    SampleRun run;
    run.seed = seed;
    run.trials = trials;
    run.channels = state.channels();
    run.events.reserve(static_cast<std::size_t>(trials));
    for (std::int64_t t = 0; t < trials; ++t) {
        const double target = detail::uniform_for_trial(seed, t) * total;
        std::size_t lo = 0, hi = cdf.size() - 1;
        while (lo < hi) {
            const std::size_t mid = lo + (hi - lo) / 2;
            if (cdf[mid] > target)
                hi = mid;
            else
                lo = mid + 1;
        }
        run.events.push_back(*tuples[lo]);
    }
    return run;
}

struct HistogramCell {
    double omega_a = 0.0;
    double omega_b = 0.0;
    std::int64_t count = 0;
};

// Builds (center_a, center_b) cells covering the full lattices of two channels.
inline std::vector<std::pair<double, double>> full_grid_cells(const SampleRun& run,
                                                              ChannelId chan_a, ChannelId chan_b) {
    const FrequencyGrid* ga = nullptr;
    const FrequencyGrid* gb = nullptr;
    for (const Channel& c : run.channels) {
        if (c.id == chan_a) ga = &c.grid;
        if (c.id == chan_b) gb = &c.grid;
    }
    if (ga == nullptr || gb == nullptr)
        throw std::invalid_argument("full_grid_cells: run lacks the requested channels");
    std::vector<std::pair<double, double>> cells;
    cells.reserve(static_cast<std::size_t>(ga->bin_count) * static_cast<std::size_t>(gb->bin_count));
    for (BinIndex i = 0; i < ga->bin_count; ++i)
        for (BinIndex j = 0; j < gb->bin_count; ++j)
            cells.emplace_back(ga->center(i), gb->center(j));
    return cells;
}

// Counts events caught by the detector pair swept over the given center
// pairs; each detector keeps its bandwidth, only its center moves. Cells may
// overlap and are counted independently; a full-lattice sweep with one-bin
// detectors partitions the events, so its counts sum to the trial count.
inline std::vector<HistogramCell> coincidence_histogram(
    const SampleRun& run, const NarrowbandDetector& det_a, const NarrowbandDetector& det_b,
    const std::vector<std::pair<double, double>>& bins) {
    if (run.events.empty()) throw std::invalid_argument("coincidence_histogram: run is empty");
    std::size_t pa = run.channels.size(), pb = run.channels.size();
    for (std::size_t i = 0; i < run.channels.size(); ++i) {
        if (run.channels[i].id == det_a.channel) pa = i;
        if (run.channels[i].id == det_b.channel) pb = i;
    }
    if (pa == run.channels.size() || pb == run.channels.size() || pa == pb)
        throw std::invalid_argument(
            "coincidence_histogram: detector channels must be present and distinct");
    const FrequencyGrid& ga = run.channels[pa].grid;
    const FrequencyGrid& gb = run.channels[pb].grid;

    std::vector<HistogramCell> histogram;
    histogram.reserve(bins.size());
    for (const auto& [ca, cb] : bins) histogram.push_back({ca, cb, 0});
    for (const BinTuple& event : run.events) {
        const double wa = ga.center(event[pa]);
        const double wb = gb.center(event[pb]);
        for (HistogramCell& cell : histogram) {
            if (in_half_open_window(wa, cell.omega_a - det_a.bandwidth / 2.0, det_a.bandwidth) &&
                in_half_open_window(wb, cell.omega_b - det_b.bandwidth / 2.0, det_b.bandwidth))
                ++cell.count;
        }
    }
    return histogram;
}

}  // namespace swapsim
