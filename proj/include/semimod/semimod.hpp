#pragma once

#include "error.hpp"
#include "semigroup.hpp"
#include "semimodule.hpp"
#include "enumeration.hpp"
#include "rational.hpp"
#include "mpoly.hpp"
#include "series.hpp"
#include "valuation.hpp"
#include "realization.hpp"
#include "render.hpp"
