#pragma once

#include "eliashberg/bounds.hpp"
#include "eliashberg/config.hpp"
#include "eliashberg/errors.hpp"
#include "eliashberg/gamma_model.hpp"
#include "eliashberg/measure.hpp"
#include "eliashberg/numerics.hpp"
#include "eliashberg/operator.hpp"
#include "eliashberg/tc_solver.hpp"
