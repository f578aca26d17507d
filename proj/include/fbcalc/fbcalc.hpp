#pragma once

#include "fbcalc/errors.hpp"
#include "fbcalc/geometry.hpp"
#include "fbcalc/quadrature.hpp"
#include "fbcalc/measure.hpp"
#include "fbcalc/transform.hpp"
#include "fbcalc/operator.hpp"
#include "fbcalc/calculus.hpp"
#include "fbcalc/jordan.hpp"
#include "fbcalc/constants.hpp"
#include "fbcalc/report.hpp"
#include "fbcalc/json_io.hpp"
#include "fbcalc/scenarios.hpp"
