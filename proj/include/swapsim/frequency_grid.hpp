// frequency_grid.hpp: arithmetic lattice of positive angular-frequency bins
#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>

namespace swapsim {

using BinIndex = std::int32_t;

// Arithmetic lattice of frequency-bin centers: center(k) = omega_start + k * delta_omega.
//
// All frequency bookkeeping in this library is done on such lattices. Derived
// lattices (the partner arm of a down-conversion, the sum arm of a merge) are
// built so that the energy-conservation identities hold by index arithmetic,
// never by re-binning a floating-point frequency. On lattices whose start and
// spacing are binary-representable the identities hold bit-exactly in double
// arithmetic as well.
struct FrequencyGrid {
    double omega_start = 0.0;  // center of bin 0, > 0
    double delta_omega = 0.0;  // bin spacing, > 0
    BinIndex bin_count = 0;

    FrequencyGrid() = default;

    FrequencyGrid(double start, double spacing, BinIndex count)
        : omega_start(start), delta_omega(spacing), bin_count(count) {
        if (!(omega_start > 0.0))
            throw std::invalid_argument("FrequencyGrid: omega_start must be > 0");
        if (!(delta_omega > 0.0))
            throw std::invalid_argument("FrequencyGrid: delta_omega must be > 0");
        if (bin_count < 1)
            throw std::invalid_argument("FrequencyGrid: bin_count must be >= 1");
    }

    double center(BinIndex k) const { return omega_start + static_cast<double>(k) * delta_omega; }
    double max_center() const { return center(bin_count - 1); }

    bool contains(BinIndex k) const { return k >= 0 && k < bin_count; }

    friend bool operator==(const FrequencyGrid& a, const FrequencyGrid& b) {
        return a.omega_start == b.omega_start && a.delta_omega == b.delta_omega &&
               a.bin_count == b.bin_count;
    }
};

// Bin lookup: returns k iff |omega - center(k)| <= delta/2 for an in-range k,
// empty otherwise. A tie at exactly half a spacing resolves to the lower bin.
inline std::optional<BinIndex> bin_of(const FrequencyGrid& grid, double omega) {
    const double half = grid.delta_omega / 2.0;
    const double t = (omega - grid.omega_start) / grid.delta_omega;
    const auto lo = static_cast<BinIndex>(std::floor(t));
    for (BinIndex k = lo; k <= lo + 1; ++k) {
        if (grid.contains(k) && std::abs(omega - grid.center(k)) <= half) return k;
    }
    return std::nullopt;
}

// Half-open interval [lo, lo + width) membership for lattice points, with the
// boundary snapped at 1e-9 * width so that a center computed with ulp-level
// rounding noise still classifies as if the lattice arithmetic were exact.
// Adjacent intervals built from the same lo/width partition the lattice with
// no double counting.
inline bool in_half_open_window(double value, double lo, double width) {
    const double snap = 1e-9 * width;
    return (value - lo) >= -snap && (value - (lo + width)) < -snap;
}

}  // namespace swapsim
