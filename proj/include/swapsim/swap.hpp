// swap.hpp: end-to-end frequency entanglement swapping
//
// Pipeline: two independent biphotons are created by down-conversion of
// monochromatic pumps at Omega_I and Omega_II; a frequency-sum measurement on
// the inner pair (arms 2 and 3) post-selects the component whose summed
// frequency lies in [Omega_III, Omega_III + width); the surviving outer
// photons (arms 1 and 4) end up frequency-entangled on the line
// omega_1 + omega_4 = Omega_I + Omega_II - Omega_III, although they never
// interacted.
//
// The measurement has two interchangeable realizations: the ideal frequency-
// sum projector, and its physical counterpart: sum-frequency merging of the
// inner photons in a third crystal followed by a narrow-band detector that
// absorbs the merged photon. For one-bin windows both produce the same
// normalized post state.
#pragma once

#include <cmath>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <vector>

#include "swapsim/crystal.hpp"
#include "swapsim/measurement.hpp"
#include "swapsim/photon_state.hpp"
#include "swapsim/schmidt.hpp"

namespace swapsim {

enum class MeasurementPath { IdealProjector, PhysicalMergeDetect };

constexpr std::string_view to_string(MeasurementPath path) noexcept {
    return path == MeasurementPath::IdealProjector ? "ideal" : "physical";
}

struct SwapConfig {
    double omega_I = 0.0;
    double omega_II = 0.0;
    double omega_III = 0.0;
    SpectralAmplitude f;  // pair profile of source I (arms 1, 2)
    SpectralAmplitude g;  // pair profile of source II (arms 3, 4)
    std::optional<double> window_width;  // default: one bin
    double chi_I = 1.0;
    double chi_II = 1.0;
    double chi_III = 1.0;
    MeasurementPath path = MeasurementPath::IdealProjector;

    void validate() const {
        if (!(omega_I > 0.0) || !(omega_II > 0.0) || !(omega_III > 0.0))
            throw std::invalid_argument("SwapConfig: pump and window frequencies must be > 0");
        if (f.grid.delta_omega != g.grid.delta_omega)
            throw std::invalid_argument("SwapConfig: f and g grids must share bin spacing");
        if (window_width && !(*window_width > 0.0))
            throw std::invalid_argument("SwapConfig: window width must be > 0");
        if (!(chi_I > 0.0) || !(chi_II > 0.0) || !(chi_III > 0.0))
            throw std::invalid_argument("SwapConfig: couplings must be > 0");
    }

    double effective_window_width() const { return window_width.value_or(f.grid.delta_omega); }
};

struct CoincidenceCell {
    double omega_1 = 0.0;
    double omega_4 = 0.0;
    double probability = 0.0;
};

// Post-selected (arm 1, arm 4) state conditioned on one captured sum bin.
struct SumBinComponent {
    double sum_center = 0.0;
    double probability = 0.0;  // within the post-selected sector
    PhotonState state14;
};

struct SwapResult {
    double success_probability = 0.0;  // of the post-selecting outcome
    // The physical path's raw firing probability carries an overall chi_III^2
    // factor on top of success_probability; reported here, 1 for the ideal path.
    double chi_scale = 1.0;
    MeasurementPath path = MeasurementPath::IdealProjector;
    double sum_invariant = 0.0;  // Omega_I + Omega_II - Omega_III

    // Present when exactly one sum bin is captured (always true for one-bin
    // windows); multi-bin captures are reported per bin in `components`.
    std::optional<PhotonState> post_state_14;
    std::vector<double> schmidt_coefficients;
    double entanglement_entropy = 0.0;
    std::vector<CoincidenceCell> coincidence_table;
    std::vector<SumBinComponent> components;

    bool succeeded() const { return success_probability > 0.0 && !components.empty(); }
};

namespace detail {

// Group a state's amplitudes by the summed bin index of two channels, delete
// those channels, and normalize each group. Valid per group because each
// surviving (outer) tuple determines its inner pair uniquely in the swap
// pipeline; amplitudes falling on the same outer tuple add coherently.
inline std::vector<SumBinComponent> split_by_sum_bin(const PhotonState& state, std::size_t pa,
                                                     std::size_t pb,
                                                     const FrequencyGrid& sum_lattice,
                                                     double outcome_probability) {
    std::map<BinIndex, AmplitudeMap> groups;
    std::map<BinIndex, double> weights;
    for (const auto& [tuple, amp] : state.amplitudes()) {
        const BinIndex m = tuple[pa] + tuple[pb];
        BinTuple outer = tuple;
        outer.erase(outer.begin() + static_cast<std::ptrdiff_t>(std::max(pa, pb)));
        outer.erase(outer.begin() + static_cast<std::ptrdiff_t>(std::min(pa, pb)));
        groups[m][outer] += amp;
        weights[m] += std::norm(amp);
    }

    std::vector<Channel> channels;
    for (std::size_t i = 0; i < state.channels().size(); ++i)
        if (i != pa && i != pb) channels.push_back(state.channels()[i]);

    std::vector<SumBinComponent> components;
    for (auto& [m, amps] : groups) {
        SumBinComponent comp{sum_lattice.center(m), weights.at(m) * outcome_probability,
                             normalize(PhotonState(channels, std::move(amps)))};
        components.push_back(std::move(comp));
    }
    return components;
}

}  // namespace detail

// Full sweep of one-bin coincidence detectors over the post-state lattices.
inline std::vector<CoincidenceCell> coincidence_sweep(const PhotonState& state14) {
    const Channel& c1 = state14.channel(ChannelId::Ch1);
    const Channel& c4 = state14.channel(ChannelId::Ch4);
    std::vector<CoincidenceCell> table;
    table.reserve(static_cast<std::size_t>(c1.grid.bin_count) *
                  static_cast<std::size_t>(c4.grid.bin_count));
    for (BinIndex i = 0; i < c1.grid.bin_count; ++i) {
        for (BinIndex j = 0; j < c4.grid.bin_count; ++j) {
            const NarrowbandDetector d1(ChannelId::Ch1, c1.grid.center(i), c1.grid.delta_omega);
            const NarrowbandDetector d4(ChannelId::Ch4, c4.grid.center(j), c4.grid.delta_omega);
            table.push_back(
                {c1.grid.center(i), c4.grid.center(j), coincidence_probability(state14, d1, d4)});
        }
    }
    return table;
}

inline SwapResult run_swap(const SwapConfig& config) {
    config.validate();
    const double width = config.effective_window_width();

    const PhotonState phi = spdc_biphoton(config.omega_I, config.f, ChannelId::Ch1, ChannelId::Ch2);
    const PhotonState psi = spdc_biphoton(config.omega_II, config.g, ChannelId::Ch3, ChannelId::Ch4);
    const PhotonState four = tensor_product(phi, psi);

    SwapResult result;
    result.path = config.path;
    result.sum_invariant = config.omega_I + config.omega_II - config.omega_III;
    result.chi_scale =
        config.path == MeasurementPath::PhysicalMergeDetect ? config.chi_III * config.chi_III : 1.0;

    if (config.path == MeasurementPath::IdealProjector) {
        const FrequencySumWindow window(ChannelId::Ch2, ChannelId::Ch3, config.omega_III, width);
        auto [fired, complement] = project_frequency_sum(four, window);
        result.success_probability = fired.probability;
        if (!fired.post_state) return result;  // no successful post-selection

        const auto pa = *four.position_of(ChannelId::Ch2);
        const auto pb = *four.position_of(ChannelId::Ch3);
        const FrequencyGrid sum_lattice(
            four.channels()[pa].grid.omega_start + four.channels()[pb].grid.omega_start,
            four.channels()[pa].grid.delta_omega,
            four.channels()[pa].grid.bin_count + four.channels()[pb].grid.bin_count - 1);
        result.components = detail::split_by_sum_bin(*fired.post_state, pa, pb, sum_lattice,
                                                     fired.probability);
    } else {
        const PhotonState merged = sum_frequency_merge(four, ChannelId::Ch2, ChannelId::Ch3,
                                                       ChannelId::Out, config.chi_III);
        const PhotonState merged_unit = normalize(merged);
        const auto out_pos = *merged_unit.position_of(ChannelId::Out);
        const FrequencyGrid& out_grid = merged_unit.channels()[out_pos].grid;
        const NarrowbandDetector heralding(ChannelId::Out, config.omega_III + width / 2.0, width);

        // Group the accepted component per out bin; probabilities are relative
        // to the retained first-order sector (chi_scale carries the rest).
        std::map<BinIndex, AmplitudeMap> groups;
        std::map<BinIndex, double> weights;
        for (const auto& [tuple, amp] : merged_unit.amplitudes()) {
            if (!heralding.accepts(out_grid.center(tuple[out_pos]))) continue;
            const BinIndex m = tuple[out_pos];
            BinTuple outer = tuple;
            outer.erase(outer.begin() + static_cast<std::ptrdiff_t>(out_pos));
            groups[m][outer] += amp;
            weights[m] += std::norm(amp);
        }
        std::vector<Channel> channels = merged_unit.channels();
        channels.erase(channels.begin() + static_cast<std::ptrdiff_t>(out_pos));

        double total = 0.0;
        for (auto& [m, amps] : groups) {
            const double p = weights.at(m);
            total += p;
            result.components.push_back(
                {out_grid.center(m), p, normalize(PhotonState(channels, std::move(amps)))});
        }
        result.success_probability = total;
        if (result.components.empty()) return result;  // no successful post-selection
    }

    if (result.components.size() == 1) {
        result.post_state_14 = result.components.front().state14;
        const SchmidtDecomposition sd = schmidt_decompose(*result.post_state_14, {ChannelId::Ch1});
        result.schmidt_coefficients = sd.coefficients;
        result.entanglement_entropy = sd.entropy;
        result.coincidence_table = coincidence_sweep(*result.post_state_14);
    }
    return result;
}

// Coincidence probabilities of one-bin detector pairs on the post-selected
// (arm 1, arm 4) state. Nonzero cells can only occur where
// omega_1 + omega_4 matches the sum invariant to within the window width.
inline std::vector<CoincidenceCell> verify_epr(const SwapResult& result,
                                               const std::vector<std::pair<double, double>>& detector_pairs) {
    if (!(result.success_probability > 0.0) || !result.post_state_14)
        throw std::invalid_argument("verify_epr: swap result has no post-selected state");
    const PhotonState& state = *result.post_state_14;
    const Channel& c1 = state.channel(ChannelId::Ch1);
    const Channel& c4 = state.channel(ChannelId::Ch4);

    std::vector<CoincidenceCell> table;
    table.reserve(detector_pairs.size());
    for (const auto& [omega_1, omega_4] : detector_pairs) {
        const NarrowbandDetector d1(ChannelId::Ch1, omega_1, c1.grid.delta_omega);
        const NarrowbandDetector d4(ChannelId::Ch4, omega_4, c4.grid.delta_omega);
        table.push_back({omega_1, omega_4, coincidence_probability(state, d1, d4)});
    }
    return table;
}

}  // namespace swapsim
