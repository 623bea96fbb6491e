#pragma once

// Umbrella header for the frequency-hopping link simulator library.

#include "fhlink/adversary.hpp"
#include "fhlink/analysis.hpp"
#include "fhlink/channel.hpp"
#include "fhlink/config.hpp"
#include "fhlink/csv.hpp"
#include "fhlink/empirical.hpp"
#include "fhlink/frequency_plan.hpp"
#include "fhlink/hopping.hpp"
#include "fhlink/modem.hpp"
#include "fhlink/parallel.hpp"
#include "fhlink/presets.hpp"
#include "fhlink/rng.hpp"
#include "fhlink/special_functions.hpp"
#include "fhlink/threshold.hpp"
#include "fhlink/version.hpp"
