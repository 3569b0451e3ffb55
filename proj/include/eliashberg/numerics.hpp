#pragma once

#include "eliashberg/numerics/bisect.hpp"
#include "eliashberg/numerics/eigen.hpp"
#include "eliashberg/numerics/power_iteration.hpp"
#include "eliashberg/numerics/quadrature.hpp"
#include "eliashberg/numerics/sym_matrix.hpp"
#include "eliashberg/numerics/zeta.hpp"
