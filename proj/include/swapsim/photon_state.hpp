// photon_state.hpp: sparse multi-channel photon states and their algebra
//
// A PhotonState maps per-channel frequency-bin tuples to complex amplitudes.
// States are immutable values: every operation returns a new state, so any
// number of readers may share one safely.
#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "swapsim/channel.hpp"
#include "swapsim/frequency_grid.hpp"
#include "swapsim/spectral_amplitude.hpp"

namespace swapsim {

struct Channel {
    ChannelId id;
    FrequencyGrid grid;
};

using BinTuple = std::vector<BinIndex>;

// Ordered map keeps tuple enumeration lexicographic, which fixes summation
// order everywhere and makes sampling platform-independent.
using AmplitudeMap = std::map<BinTuple, Complex>;

// Entries with modulus below kPruneRel * (max modulus in state) are dropped
// on construction. Well below every quoted tolerance.
inline constexpr double kPruneRel = 1e-14;

inline constexpr double kNormTol = 1e-12;

class PhotonState {
  public:
    PhotonState(std::vector<Channel> channels, AmplitudeMap amplitudes)
        : channels_(std::move(channels)), amplitudes_(std::move(amplitudes)) {
        validate_channels();
        validate_tuples();
        prune();
    }

    const std::vector<Channel>& channels() const { return channels_; }
    const AmplitudeMap& amplitudes() const { return amplitudes_; }

    std::size_t channel_count() const { return channels_.size(); }
    std::size_t entry_count() const { return amplitudes_.size(); }
    bool empty() const { return amplitudes_.empty(); }

    bool has_channel(ChannelId id) const { return position_of(id).has_value(); }

    std::optional<std::size_t> position_of(ChannelId id) const {
        for (std::size_t i = 0; i < channels_.size(); ++i) {
            if (channels_[i].id == id) return i;
        }
        return std::nullopt;
    }

    const Channel& channel(ChannelId id) const {
        auto pos = position_of(id);
        if (!pos)
            throw std::invalid_argument("PhotonState: no channel " + std::string(to_string(id)));
        return channels_[*pos];
    }

    // Frequency of one leg of a stored tuple.
    double frequency(const BinTuple& tuple, std::size_t channel_pos) const {
        return channels_[channel_pos].grid.center(tuple[channel_pos]);
    }

    double squared_norm() const {
        double s = 0.0;
        for (const auto& [tuple, amp] : amplitudes_) s += std::norm(amp);
        return s;
    }

    double norm() const { return std::sqrt(squared_norm()); }

    bool is_normalized(double tol = kNormTol) const { return std::abs(norm() - 1.0) <= tol; }

  private:
    void validate_channels() const {
        if (channels_.empty()) throw std::invalid_argument("PhotonState: needs at least one channel");
        for (std::size_t i = 0; i < channels_.size(); ++i) {
            for (std::size_t j = i + 1; j < channels_.size(); ++j) {
                if (channels_[i].id == channels_[j].id)
                    throw std::invalid_argument("PhotonState: duplicate channel " +
                                                std::string(to_string(channels_[i].id)));
            }
        }
    }

    void validate_tuples() const {
        for (const auto& [tuple, amp] : amplitudes_) {
            if (tuple.size() != channels_.size())
                throw std::invalid_argument("PhotonState: tuple arity does not match channel list");
            for (std::size_t i = 0; i < tuple.size(); ++i) {
                if (!channels_[i].grid.contains(tuple[i]))
                    throw std::invalid_argument("PhotonState: bin index out of range");
            }
            if (!std::isfinite(amp.real()) || !std::isfinite(amp.imag()))
                throw std::invalid_argument("PhotonState: non-finite amplitude");
        }
    }

    void prune() {
        double max_mod = 0.0;
        for (const auto& [tuple, amp] : amplitudes_) max_mod = std::max(max_mod, std::abs(amp));
        const double cut = kPruneRel * max_mod;
        for (auto it = amplitudes_.begin(); it != amplitudes_.end();) {
            if (std::abs(it->second) < cut || it->second == Complex(0.0, 0.0))
                it = amplitudes_.erase(it);
            else
                ++it;
        }
    }

    std::vector<Channel> channels_;
    AmplitudeMap amplitudes_;
};

// Single-tuple convenience constructor.
inline PhotonState single_tuple_state(std::vector<Channel> channels, BinTuple tuple,
                                      Complex amplitude = Complex(1.0, 0.0)) {
    AmplitudeMap amps;
    amps.emplace(std::move(tuple), amplitude);
    return PhotonState(std::move(channels), std::move(amps));
}

// <a|b>; states must share the identical channel layout.
inline Complex inner_product(const PhotonState& a, const PhotonState& b) {
    if (a.channels().size() != b.channels().size())
        throw std::invalid_argument("inner_product: channel lists differ");
    for (std::size_t i = 0; i < a.channels().size(); ++i) {
        if (a.channels()[i].id != b.channels()[i].id ||
            !(a.channels()[i].grid == b.channels()[i].grid))
            throw std::invalid_argument("inner_product: channel lists differ");
    }
    Complex s(0.0, 0.0);
    const auto& bigger = a.entry_count() >= b.entry_count() ? a : b;
    const auto& smaller = a.entry_count() >= b.entry_count() ? b : a;
    for (const auto& [tuple, amp] : smaller.amplitudes()) {
        auto it = bigger.amplitudes().find(tuple);
        if (it == bigger.amplitudes().end()) continue;
        // conjugate always goes on a's side
        const Complex& aa = (&bigger == &a) ? it->second : amp;
        const Complex& bb = (&bigger == &a) ? amp : it->second;
        s += std::conj(aa) * bb;
    }
    return s;
}

// Joint state on the concatenated channel lists. Channel label sets must be
// disjoint; the result's norm is the product of the factor norms.
inline PhotonState tensor_product(const PhotonState& a, const PhotonState& b) {
    for (const Channel& ca : a.channels()) {
        if (b.has_channel(ca.id))
            throw std::invalid_argument("tensor_product: channel " +
                                        std::string(to_string(ca.id)) + " present in both factors");
    }
    std::vector<Channel> channels = a.channels();
    channels.insert(channels.end(), b.channels().begin(), b.channels().end());

    AmplitudeMap amps;
    for (const auto& [ta, va] : a.amplitudes()) {
        for (const auto& [tb, vb] : b.amplitudes()) {
            BinTuple joint = ta;
            joint.insert(joint.end(), tb.begin(), tb.end());
            amps.emplace(std::move(joint), va * vb);
        }
    }
    return PhotonState(std::move(channels), std::move(amps));
}

// Scales by a single positive real factor so that |norm - 1| <= 1e-12.
inline PhotonState normalize(const PhotonState& state) {
    const double n = state.norm();
    if (!(n > 0.0)) throw std::invalid_argument("normalize: zero-norm state");
    AmplitudeMap amps = state.amplitudes();
    for (auto& [tuple, amp] : amps) amp /= n;
    return PhotonState(state.channels(), std::move(amps));
}

}  // namespace swapsim
