// measurement.hpp: frequency-sum projectors, narrow-band absorbing detectors,
// and spectral coincidence probabilities
#pragma once

#include <optional>
#include <stdexcept>
#include <utility>

#include "swapsim/photon_state.hpp"

namespace swapsim {

// Measurement window [omega_lo, omega_lo + width) over the summed frequency
// of a channel pair. The infinitesimal-window limit is realized operationally
// as a one-bin window (width = bin spacing).
struct FrequencySumWindow {
    ChannelId chan_a;
    ChannelId chan_b;
    double omega_lo = 0.0;
    double width = 0.0;

    FrequencySumWindow(ChannelId a, ChannelId b, double lo, double w)
        : chan_a(a), chan_b(b), omega_lo(lo), width(w) {
        if (a == b) throw std::invalid_argument("FrequencySumWindow: channels must differ");
        if (!(omega_lo > 0.0)) throw std::invalid_argument("FrequencySumWindow: omega_lo must be > 0");
        if (!(width > 0.0)) throw std::invalid_argument("FrequencySumWindow: width must be > 0");
    }
};

// Ideal absorbing detector: fires only for photons inside
// [center - bandwidth/2, center + bandwidth/2), and absorbs on firing.
// No dark counts, unit efficiency.
struct NarrowbandDetector {
    ChannelId channel;
    double center = 0.0;
    double bandwidth = 0.0;

    NarrowbandDetector(ChannelId ch, double c, double bw)
        : channel(ch), center(c), bandwidth(bw) {
        if (!(bandwidth > 0.0))
            throw std::invalid_argument("NarrowbandDetector: bandwidth must be > 0");
    }

    bool accepts(double omega) const {
        return in_half_open_window(omega, center - bandwidth / 2.0, bandwidth);
    }

    // Detector spanning a grid's whole lattice (plus one guard bin each side).
    static NarrowbandDetector wide_open(ChannelId ch, const FrequencyGrid& grid) {
        const double lo = grid.omega_start - grid.delta_omega;
        const double hi = grid.max_center() + grid.delta_omega;
        return NarrowbandDetector(ch, (lo + hi) / 2.0, hi - lo);
    }
};

// One branch of the binary frequency-sum measurement. For a normalized input
// the two branch probabilities sum to 1 within 1e-12; a branch that captures
// no amplitude reports probability 0 with an absent post state.
struct MeasurementOutcome {
    int outcome = 0;  // 1 = projected into the window, 0 = complement
    double probability = 0.0;
    std::optional<PhotonState> post_state;  // normalized
};

namespace detail {

inline std::pair<std::size_t, std::size_t> window_positions(const PhotonState& state,
                                                            const FrequencySumWindow& window,
                                                            const char* who) {
    const auto pa = state.position_of(window.chan_a);
    const auto pb = state.position_of(window.chan_b);
    if (!pa || !pb)
        throw std::invalid_argument(std::string(who) + ": state is missing a window channel");
    return {*pa, *pb};
}

}  // namespace detail

// Binary projective measurement of "does the (chan_a, chan_b) frequency sum
// lie in the window". Outcome 1 keeps exactly the tuples whose bin-center sum
// lies in [omega_lo, omega_lo + width); outcome 0 keeps the rest. The two
// unnormalized parts are orthogonal by construction and reapplying the
// projector to outcome 1 changes nothing.
inline std::pair<MeasurementOutcome, MeasurementOutcome>
project_frequency_sum(const PhotonState& state, const FrequencySumWindow& window) {
    const auto [pa, pb] = detail::window_positions(state, window, "project_frequency_sum");
    if (!state.is_normalized())
        throw std::invalid_argument("project_frequency_sum: state must be normalized");

    AmplitudeMap inside, outside;
    double p1 = 0.0, p0 = 0.0;
    for (const auto& [tuple, amp] : state.amplitudes()) {
        const double sum = state.frequency(tuple, pa) + state.frequency(tuple, pb);
        if (in_half_open_window(sum, window.omega_lo, window.width)) {
            inside.emplace(tuple, amp);
            p1 += std::norm(amp);
        } else {
            outside.emplace(tuple, amp);
            p0 += std::norm(amp);
        }
    }

    auto make = [&state](int bit, double p, AmplitudeMap&& amps) {
        MeasurementOutcome o;
        o.outcome = bit;
        o.probability = p;
        if (!amps.empty())
            o.post_state = normalize(PhotonState(state.channels(), std::move(amps)));
        return o;
    };
    return {make(1, p1, std::move(inside)), make(0, p0, std::move(outside))};
}

struct DetectionResult {
    double probability = 0.0;
    // Post state with the detector channel deleted, renormalized; absent when
    // nothing fires. When several detector bins fire, amplitudes that land on
    // the same remaining tuple add coherently; a one-bin detector never
    // produces such a collision, which is how the swap protocol uses it.
    std::optional<PhotonState> post_state;
};

// Projection onto the detector's acceptance interval followed by absorption
// of the registered photon (the detector channel vanishes from the state).
inline DetectionResult detect_and_absorb(const PhotonState& state,
                                         const NarrowbandDetector& detector) {
    const auto pos = state.position_of(detector.channel);
    if (!pos) throw std::invalid_argument("detect_and_absorb: state is missing detector channel");
    if (state.channel_count() < 2)
        throw std::invalid_argument("detect_and_absorb: cannot absorb the only channel");
    if (!state.is_normalized())
        throw std::invalid_argument("detect_and_absorb: state must be normalized");

    std::vector<Channel> channels = state.channels();
    channels.erase(channels.begin() + static_cast<std::ptrdiff_t>(*pos));

    AmplitudeMap amps;
    double p = 0.0;
    for (const auto& [tuple, amp] : state.amplitudes()) {
        if (!detector.accepts(state.frequency(tuple, *pos))) continue;
        p += std::norm(amp);
        BinTuple rest = tuple;
        rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(*pos));
        amps[rest] += amp;
    }

    DetectionResult result;
    result.probability = p;
    if (!amps.empty())
        result.post_state = normalize(PhotonState(std::move(channels), std::move(amps)));
    return result;
}

// Probability that two narrow-band detectors on distinct channels fire
// simultaneously: the squared norm of the component passing both acceptance
// intervals. "Simultaneous" is spectral here; the temporal statement lives in
// joint_time_density.
inline double coincidence_probability(const PhotonState& state, const NarrowbandDetector& det_a,
                                      const NarrowbandDetector& det_b) {
    if (det_a.channel == det_b.channel)
        throw std::invalid_argument("coincidence_probability: detectors must sit on distinct channels");
    const auto pa = state.position_of(det_a.channel);
    const auto pb = state.position_of(det_b.channel);
    if (!pa || !pb)
        throw std::invalid_argument("coincidence_probability: state is missing a detector channel");
    if (!state.is_normalized())
        throw std::invalid_argument("coincidence_probability: state must be normalized");

    double p = 0.0;
    for (const auto& [tuple, amp] : state.amplitudes()) {
        if (det_a.accepts(state.frequency(tuple, *pa)) &&
            det_b.accepts(state.frequency(tuple, *pb)))
            p += std::norm(amp);
    }
    return p;
}

}  // namespace swapsim
