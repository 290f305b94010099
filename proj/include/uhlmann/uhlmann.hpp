// uhlmann.hpp: umbrella header.

#pragma once

#include "uhlmann/core.hpp"
#include "uhlmann/spin_model.hpp"
#include "uhlmann/states.hpp"
#include "uhlmann/entanglement.hpp"
#include "uhlmann/holonomy.hpp"
#include "uhlmann/closed_form.hpp"
#include "uhlmann/topology.hpp"
#include "uhlmann/sweeps.hpp"
