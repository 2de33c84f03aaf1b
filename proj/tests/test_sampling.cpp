// Monte Carlo sampling: reproducibility, the published RNG identity, and
// histogram bookkeeping.

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <cstdint>
#include <set>

#include "swapsim/sampling.hpp"
#include "swapsim/swap.hpp"

using namespace swapsim;

namespace {

PhotonState desk_swapped_pair() {
    SwapConfig cfg;
    cfg.omega_I = 2.0;
    cfg.omega_II = 2.2;
    cfg.omega_III = 2.1;
    cfg.f = SpectralAmplitude::flat(FrequencyGrid(0.8, 0.05, 8));
    cfg.g = SpectralAmplitude::flat(FrequencyGrid(0.9, 0.05, 8));
    const SwapResult result = run_swap(cfg);
    return *result.post_state_14;
}

}  // namespace

TEST_CASE("a deterministic state samples the same tuple every trial") {
    const PhotonState state({{ChannelId::Ch1, FrequencyGrid(1.0, 0.05, 1)},
                             {ChannelId::Ch2, FrequencyGrid(1.2, 0.05, 1)}},
                            {{{0, 0}, 1.0}});
    const SampleRun run = sample_frequencies(state, 100, 7);
    REQUIRE(run.events.size() == 100);
    for (const BinTuple& event : run.events) CHECK((event == BinTuple{0, 0}));
}

TEST_CASE("sampling validates its inputs") {
    const PhotonState state({{ChannelId::Ch1, FrequencyGrid(1.0, 0.05, 1)}}, {{{0}, 1.0}});
    REQUIRE_THROWS_AS(sample_frequencies(state, 0, 7), std::invalid_argument);
    const PhotonState unnormalized({{ChannelId::Ch1, FrequencyGrid(1.0, 0.05, 1)}}, {{{0}, 2.0}});
    REQUIRE_THROWS_AS(sample_frequencies(unnormalized, 10, 7), std::invalid_argument);
}

TEST_CASE("event draws follow the published counter-based uniform stream") {
    // four equally likely tuples: the drawn index is floor(4u) for the trial's
    // uniform u, reproduced here from the documented SplitMix64 identity
    const PhotonState state({{ChannelId::Ch1, FrequencyGrid(1.0, 0.05, 4)}},
                            {{{0}, 0.5}, {{1}, 0.5}, {{2}, 0.5}, {{3}, 0.5}});
    const std::uint64_t seed = 9001;
    const SampleRun run = sample_frequencies(state, 64, seed);
    for (std::int64_t t = 0; t < run.trials; ++t) {
        std::uint64_t z = seed + (static_cast<std::uint64_t>(t) + 1ULL) * 0x9E3779B97F4A7C15ULL;
        z ^= z >> 30;
        z *= 0xBF58476D1CE4E5B9ULL;
        z ^= z >> 27;
        z *= 0x94D049BB133111EBULL;
        z ^= z >> 31;
        const double u = static_cast<double>(z >> 11) * 0x1.0p-53;
        const auto expected = static_cast<BinIndex>(u * 4.0);
        CHECK(run.events[static_cast<std::size_t>(t)][0] == expected);
    }
}

TEST_CASE("a biased two-outcome state hits its weights within three sigma") {
    const PhotonState state({{ChannelId::Ch1, FrequencyGrid(1.0, 0.05, 2)}},
                            {{{0}, 0.5}, {{1}, std::sqrt(0.75)}});
    const SampleRun run = sample_frequencies(state, 10000, 2024);
    std::int64_t heavy = 0;
    for (const BinTuple& event : run.events) heavy += event[0] == 1 ? 1 : 0;
    // 3 * sqrt(0.25 * 0.75 / 10000) = 0.013
    CHECK(std::abs(static_cast<double>(heavy) / 10000.0 - 0.75) <= 0.013);
}

TEST_CASE("runs are pure functions of seed and trial index") {
    const PhotonState pair = desk_swapped_pair();
    const SampleRun a = sample_frequencies(pair, 8000, 42);
    const SampleRun b = sample_frequencies(pair, 8000, 42);
    CHECK(a.events == b.events);

    // counter-based: a shorter run is a prefix of a longer one
    const SampleRun prefix = sample_frequencies(pair, 100, 42);
    for (std::size_t t = 0; t < 100; ++t) CHECK(prefix.events[t] == a.events[t]);

    const SampleRun other = sample_frequencies(pair, 8000, 43);
    CHECK(a.events != other.events);
}

TEST_CASE("desk-scale swap events stay on the anti-correlated line") {
    const PhotonState pair = desk_swapped_pair();
    const SampleRun run = sample_frequencies(pair, 8000, 42);
    std::set<BinTuple> distinct;
    for (const BinTuple& event : run.events) {
        REQUIRE(event.size() == 2);
        CHECK(event[0] + event[1] == 7);
        distinct.insert(event);
    }
    CHECK(distinct.size() == 8);
}

TEST_CASE("a full one-bin histogram sweep partitions the events") {
    const PhotonState pair = desk_swapped_pair();
    const SampleRun run = sample_frequencies(pair, 8000, 42);
    const auto cells = full_grid_cells(run, ChannelId::Ch1, ChannelId::Ch4);
    REQUIRE(cells.size() == 64);
    const NarrowbandDetector det_1(ChannelId::Ch1, 1.0, 0.05);
    const NarrowbandDetector det_4(ChannelId::Ch4, 1.1, 0.05);
    const auto histogram = coincidence_histogram(run, det_1, det_4, cells);
    REQUIRE(histogram.size() == 64);

    std::int64_t total = 0;
    for (std::size_t i = 0; i < 8; ++i) {
        for (std::size_t l = 0; l < 8; ++l) {
            const HistogramCell& cell = histogram[i * 8 + l];
            std::int64_t recount = 0;
            for (const BinTuple& event : run.events)
                if (event[0] == static_cast<BinIndex>(i) && event[1] == static_cast<BinIndex>(l))
                    ++recount;
            CHECK(cell.count == recount);
            if (i + l != 7) CHECK(cell.count == 0);
            total += cell.count;
        }
    }
    CHECK(total == run.trials);
}

TEST_CASE("histogram construction rejects malformed requests") {
    const PhotonState pair = desk_swapped_pair();
    const SampleRun run = sample_frequencies(pair, 10, 42);
    const NarrowbandDetector det_1(ChannelId::Ch1, 1.0, 0.05);
    const NarrowbandDetector det_4(ChannelId::Ch4, 1.1, 0.05);
    const NarrowbandDetector det_2(ChannelId::Ch2, 1.0, 0.05);

    REQUIRE_THROWS_AS(full_grid_cells(run, ChannelId::Ch1, ChannelId::Ch2),
                      std::invalid_argument);
    REQUIRE_THROWS_AS(coincidence_histogram(run, det_1, det_2, {{1.0, 1.0}}),
                      std::invalid_argument);
    REQUIRE_THROWS_AS(coincidence_histogram(run, det_1, det_1, {{1.0, 1.0}}),
                      std::invalid_argument);

    SampleRun empty;
    empty.channels = run.channels;
    REQUIRE_THROWS_AS(coincidence_histogram(empty, det_1, det_4, {{1.0, 1.0}}),
                      std::invalid_argument);
}
