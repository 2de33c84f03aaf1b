// swapsim.hpp: umbrella header for the whole library
#pragma once

#include "swapsim/channel.hpp"
#include "swapsim/config.hpp"
#include "swapsim/crystal.hpp"
#include "swapsim/frequency_grid.hpp"
#include "swapsim/measurement.hpp"
#include "swapsim/photon_state.hpp"
#include "swapsim/results.hpp"
#include "swapsim/sampling.hpp"
#include "swapsim/schmidt.hpp"
#include "swapsim/spectral_amplitude.hpp"
#include "swapsim/swap.hpp"
#include "swapsim/time_density.hpp"
#include "swapsim/version.hpp"
