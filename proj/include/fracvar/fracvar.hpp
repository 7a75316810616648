#pragma once

// Umbrella header for the fractional variational calculus toolkit.

#include "chebyshev.hpp"
#include "euler_lagrange.hpp"
#include "expansion.hpp"
#include "grid_function.hpp"
#include "lagrangian.hpp"
#include "memory_window.hpp"
#include "operators.hpp"
#include "smooth_model.hpp"
#include "solver.hpp"
#include "special_functions.hpp"
#include "weak_convergence.hpp"
