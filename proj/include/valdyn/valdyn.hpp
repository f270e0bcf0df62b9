#pragma once

#include "valdyn/bigint.hpp"
#include "valdyn/bipoly.hpp"
#include "valdyn/blowup.hpp"
#include "valdyn/coeff.hpp"
#include "valdyn/dynamics.hpp"
#include "valdyn/errors.hpp"
#include "valdyn/green.hpp"
#include "valdyn/invariants.hpp"
#include "valdyn/quadreal.hpp"
#include "valdyn/rat.hpp"
#include "valdyn/recurrence.hpp"
#include "valdyn/resultant.hpp"
#include "valdyn/rng.hpp"
#include "valdyn/valuation.hpp"
