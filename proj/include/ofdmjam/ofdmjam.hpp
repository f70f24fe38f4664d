#pragma once

#include "ofdmjam/analysis.hpp"
#include "ofdmjam/channel.hpp"
#include "ofdmjam/errors.hpp"
#include "ofdmjam/jammer.hpp"
#include "ofdmjam/ofdm.hpp"
#include "ofdmjam/receiver.hpp"
#include "ofdmjam/results_io.hpp"
#include "ofdmjam/rng.hpp"
#include "ofdmjam/scenario.hpp"
#include "ofdmjam/simulation.hpp"
#include "ofdmjam/studies.hpp"
