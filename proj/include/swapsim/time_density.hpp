// time_density.hpp: joint time-of-arrival density of a two-photon state
#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

#include "swapsim/photon_state.hpp"

namespace swapsim {

// Uniform sampling lattice for registration times, in the inverse of the
// frequency units.
struct TimeGrid {
    double t_start = 0.0;
    double delta_t = 0.0;
    std::int32_t sample_count = 0;

    TimeGrid() = default;

    TimeGrid(double start, double dt, std::int32_t count)
        : t_start(start), delta_t(dt), sample_count(count) {
        if (!(delta_t > 0.0)) throw std::invalid_argument("TimeGrid: delta_t must be > 0");
        if (sample_count < 1) throw std::invalid_argument("TimeGrid: sample_count must be >= 1");
    }

    double time(std::int32_t i) const { return t_start + static_cast<double>(i) * delta_t; }
};

// Sampled joint density over (t1, t2), normalized so that
// sum(values) * delta_t^2 = 1. Row-major: value(i, j) pairs t1 = time(i) with
// t2 = time(j).
struct TimeDensity {
    TimeGrid grid;
    std::vector<double> values;

    double value(std::int32_t i, std::int32_t j) const {
        return values[static_cast<std::size_t>(i) * static_cast<std::size_t>(grid.sample_count) +
                      static_cast<std::size_t>(j)];
    }
};

// Joint probability density for registering the chan_a photon at t1 and the
// chan_b photon at t2, sampled on grid x grid:
//
//   density(t1, t2) ~ | sum over tuples amp * exp(-i w_a t1 - i w_b t2) |^2
//
// renormalized so the discrete integral is 1. For constant-sum (pump-locked)
// biphotons the density depends on t1 - t2 only; a flat spectral profile of
// bandwidth B gives the discrete-sinc profile with first zero at
// |t1 - t2| = 2 pi / B. Summation order over tuples is the fixed lexicographic
// state order, so results do not depend on evaluation scheduling.
inline TimeDensity joint_time_density(const PhotonState& state, ChannelId chan_a,
                                      ChannelId chan_b, const TimeGrid& grid) {
    if (state.channel_count() != 2)
        throw std::invalid_argument("joint_time_density: state must have exactly two channels");
    const auto pa = state.position_of(chan_a);
    const auto pb = state.position_of(chan_b);
    if (!pa || !pb || chan_a == chan_b)
        throw std::invalid_argument("joint_time_density: state must live on exactly {chan_a, chan_b}");
    if (!state.is_normalized())
        throw std::invalid_argument("joint_time_density: state must be normalized");

    const auto n = static_cast<std::size_t>(grid.sample_count);
    std::vector<Complex> field(n * n, Complex(0.0, 0.0));

    // Per-tuple separable phase tables: one transcendental per (tuple, sample)
    // instead of per (tuple, sample pair).
    std::vector<Complex> phase_a(n), phase_b(n);
    constexpr double kTwoPi = 6.283185307179586476925286766559;
    for (const auto& [tuple, amp] : state.amplitudes()) {
        const double wa = state.frequency(tuple, *pa);
        const double wb = state.frequency(tuple, *pb);
        for (std::size_t i = 0; i < n; ++i) {
            const double t = grid.time(static_cast<std::int32_t>(i));
            phase_a[i] = std::polar(1.0, -wa * t);
            phase_b[i] = std::polar(1.0, -wb * t);
        }
        for (std::size_t i = 0; i < n; ++i) {
            const Complex left = amp * phase_a[i];
            for (std::size_t j = 0; j < n; ++j) field[i * n + j] += left * phase_b[j];
        }
    }

    TimeDensity density;
    density.grid = grid;
    density.values.resize(n * n);
    double total = 0.0;
    for (std::size_t k = 0; k < field.size(); ++k) {
        const double v = std::norm(field[k]) / (kTwoPi * kTwoPi);
        density.values[k] = v;
        total += v;
    }
    total *= grid.delta_t * grid.delta_t;
    if (!(total > 0.0))
        throw std::runtime_error("joint_time_density: density vanishes on the whole grid");
    for (double& v : density.values) v /= total;
    return density;
}

}  // namespace swapsim
