#pragma once

// Umbrella header for the whole library.

#include "banach/cache.hpp"
#include "banach/constants.hpp"
#include "banach/errors.hpp"
#include "banach/io.hpp"
#include "banach/rng.hpp"
#include "banach/search.hpp"
#include "banach/spaces.hpp"
#include "banach/theorems.hpp"
#include "banach/validate.hpp"
#include "banach/vec.hpp"
