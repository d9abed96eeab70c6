#pragma once

/**
 * @file zetavoa.hpp
 * @brief Umbrella header: exact arithmetic, Fock space, quadratic operators,
 * formal series, generating functions and the free boson vertex algebra.
 */

#include "zetavoa/errors.hpp"
#include "zetavoa/rational.hpp"
#include "zetavoa/power_series.hpp"
#include "zetavoa/zeta.hpp"
#include "zetavoa/report.hpp"
#include "zetavoa/fock.hpp"
#include "zetavoa/linear_solve.hpp"
#include "zetavoa/quadratic.hpp"
#include "zetavoa/multiseries.hpp"
#include "zetavoa/generating.hpp"
#include "zetavoa/vertex.hpp"
