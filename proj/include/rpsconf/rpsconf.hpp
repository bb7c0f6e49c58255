#pragma once

// Umbrella header: conflict measurement for random permutation sets.

#include "rpsconf/classify.hpp"
#include "rpsconf/conflict.hpp"
#include "rpsconf/errors.hpp"
#include "rpsconf/evidence.hpp"
#include "rpsconf/frame.hpp"
#include "rpsconf/io.hpp"
#include "rpsconf/overlap.hpp"
#include "rpsconf/tables.hpp"
