// crystal.hpp: first-order S-matrix action of the chi(2) crystals
//
// Two processes, both with perfect phase matching (the momentum condition is
// treated as exact, so wavevectors never enter the data model) and a
// frequency-independent coupling chi:
//
//   Split: a monochromatic pump at Omega decays into two photons whose bin
//          centers sum to Omega on the lattice (pair creation).
//   Merge: two photons merge into one photon on the pairwise-sum lattice
//          (sum-frequency generation).
//
// Only the first-order term of the S-matrix expansion in chi is kept; the
// unconverted (vacuum) component and higher orders are discarded, so the
// states below describe the post-selected conversion sector.
#pragma once

#include <stdexcept>
#include <vector>

#include "swapsim/photon_state.hpp"

namespace swapsim {

enum class CrystalMode { Split, Merge };

struct CrystalSpec {
    double chi = 1.0;
    CrystalMode mode = CrystalMode::Split;
    std::vector<ChannelId> in_channels;
    std::vector<ChannelId> out_channels;

    CrystalSpec() = default;

    CrystalSpec(double coupling, CrystalMode m, std::vector<ChannelId> in,
                std::vector<ChannelId> out)
        : chi(coupling), mode(m), in_channels(std::move(in)), out_channels(std::move(out)) {
        if (!(chi > 0.0)) throw std::invalid_argument("CrystalSpec: chi must be > 0");
        const std::size_t want_in = mode == CrystalMode::Split ? 1 : 2;
        const std::size_t want_out = mode == CrystalMode::Split ? 2 : 1;
        if (in_channels.size() != want_in || out_channels.size() != want_out)
            throw std::invalid_argument("CrystalSpec: wrong channel arity for mode");
    }
};

// Normalized biphoton from a monochromatic pump at pump_omega:
//
//   sum_k f(omega_k) |omega_k>_a (x) |pump_omega - omega_k>_b
//
// chan_b carries the derived lattice with bin centers pump_omega - omega_k,
// indexed in ascending order; the partner of a-bin k is b-bin (k_hi - k), so
// every stored tuple satisfies omega_a + omega_b = pump_omega by index
// arithmetic. Bins where pump_omega - omega_k <= 0 or f(omega_k) = 0 are
// absent.
inline PhotonState spdc_biphoton(double pump_omega, const SpectralAmplitude& weight,
                                 ChannelId chan_a, ChannelId chan_b) {
    if (chan_a == chan_b) throw std::invalid_argument("spdc_biphoton: output channels must differ");
    if (!(pump_omega > 0.0)) throw std::invalid_argument("spdc_biphoton: pump frequency must be > 0");

    const FrequencyGrid& ga = weight.grid;
    BinIndex k_hi = -1;
    for (BinIndex k = 0; k < ga.bin_count; ++k) {
        if (pump_omega - ga.center(k) > 0.0) k_hi = k;
    }
    if (k_hi < 0)
        throw std::invalid_argument("spdc_biphoton: empty support (no bin with both legs positive)");

    const FrequencyGrid gb(pump_omega - ga.center(k_hi), ga.delta_omega, k_hi + 1);

    AmplitudeMap amps;
    for (BinIndex k = 0; k <= k_hi; ++k) {
        const Complex w = weight[k];
        if (w == Complex(0.0, 0.0)) continue;
        amps.emplace(BinTuple{k, static_cast<BinIndex>(k_hi - k)}, w);
    }
    if (amps.empty())
        throw std::invalid_argument("spdc_biphoton: empty support (weight vanishes on all allowed bins)");

    PhotonState state({Channel{chan_a, ga}, Channel{chan_b, gb}}, std::move(amps));
    return normalize(state);
}

// First-order sum-frequency component: chan_a and chan_b are replaced by
// chan_out on the lattice of pairwise sums (bin 0 center = sum of the input
// bin-0 centers, common spacing, count Na + Nb - 1). The out amplitude of
// sum bin m is chi times the coherent sum of input amplitudes over all index
// pairs with ka + kb = m; other channels pass through untouched. The result
// is unnormalized.
inline PhotonState sum_frequency_merge(const PhotonState& state, ChannelId chan_a,
                                       ChannelId chan_b, ChannelId chan_out, double chi) {
    if (chan_a == chan_b)
        throw std::invalid_argument("sum_frequency_merge: input channels must differ");
    const auto pa = state.position_of(chan_a);
    const auto pb = state.position_of(chan_b);
    if (!pa || !pb)
        throw std::invalid_argument("sum_frequency_merge: state is missing an input channel");

    const FrequencyGrid& ga = state.channels()[*pa].grid;
    const FrequencyGrid& gb = state.channels()[*pb].grid;
    if (ga.delta_omega != gb.delta_omega)
        throw std::invalid_argument("sum_frequency_merge: input channels must share bin spacing");

    for (const Channel& ch : state.channels()) {
        if (ch.id == chan_out && ch.id != chan_a && ch.id != chan_b)
            throw std::invalid_argument("sum_frequency_merge: output channel already present");
    }

    const FrequencyGrid gout(ga.omega_start + gb.omega_start, ga.delta_omega,
                             ga.bin_count + gb.bin_count - 1);

    // chan_out takes the position of whichever input channel comes first in
    // the channel list; the other is deleted and the rest keep their order.
    const std::size_t out_pos = std::min(*pa, *pb);
    const std::size_t del_pos = std::max(*pa, *pb);
    std::vector<Channel> channels = state.channels();
    channels[out_pos] = Channel{chan_out, gout};
    channels.erase(channels.begin() + static_cast<std::ptrdiff_t>(del_pos));

    AmplitudeMap amps;
    for (const auto& [tuple, amp] : state.amplitudes()) {
        const BinIndex m = tuple[*pa] + tuple[*pb];
        BinTuple out = tuple;
        out[out_pos] = m;
        out.erase(out.begin() + static_cast<std::ptrdiff_t>(del_pos));
        amps[out] += chi * amp;
    }
    return PhotonState(std::move(channels), std::move(amps));
}

}  // namespace swapsim
