#pragma once

#include "snntwin/analysis.hpp"
#include "snntwin/energy.hpp"
#include "snntwin/errors.hpp"
#include "snntwin/hardware.hpp"
#include "snntwin/instance_gen.hpp"
#include "snntwin/neuron.hpp"
#include "snntwin/rational.hpp"
#include "snntwin/rng.hpp"
#include "snntwin/spike.hpp"
#include "snntwin/twin.hpp"
