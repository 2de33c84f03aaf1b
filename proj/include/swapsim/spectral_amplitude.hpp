// spectral_amplitude.hpp: tabulated complex weight function on a frequency grid
#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include "swapsim/frequency_grid.hpp"

namespace swapsim {

using Complex = std::complex<double>;

// Complex spectral weight tabulated per bin of a grid. Used as the pair
// profiles f and g of the two photon sources.
struct SpectralAmplitude {
    FrequencyGrid grid;
    std::vector<Complex> values;  // one per bin

    SpectralAmplitude() = default;

    SpectralAmplitude(FrequencyGrid g, std::vector<Complex> v)
        : grid(g), values(std::move(v)) {
        if (values.size() != static_cast<std::size_t>(grid.bin_count))
            throw std::invalid_argument("SpectralAmplitude: value count must equal bin_count");
        for (const Complex& c : values) {
            if (!std::isfinite(c.real()) || !std::isfinite(c.imag()))
                throw std::invalid_argument("SpectralAmplitude: entries must be finite");
        }
    }

    static SpectralAmplitude flat(FrequencyGrid g) {
        return SpectralAmplitude(g, std::vector<Complex>(static_cast<std::size_t>(g.bin_count),
                                                         Complex(1.0, 0.0)));
    }

    const Complex& operator[](BinIndex k) const { return values[static_cast<std::size_t>(k)]; }
};

}  // namespace swapsim
