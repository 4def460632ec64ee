#pragma once

// Umbrella header for the Gauss-Markov adjunction library.

#include "gma/adjunction.hpp"
#include "gma/category.hpp"
#include "gma/descent.hpp"
#include "gma/errors.hpp"
#include "gma/functors.hpp"
#include "gma/law_report.hpp"
#include "gma/numlin.hpp"
#include "gma/rng.hpp"
#include "gma/types.hpp"
