#ifndef POLYCM_POLYCM_HPP
#define POLYCM_POLYCM_HPP

#include "real.hpp"
#include "bernoulli.hpp"
#include "quadrature.hpp"
#include "special_fn.hpp"
#include "shift_pair.hpp"
#include "divided_diff.hpp"
#include "cm_checker.hpp"
#include "applications.hpp"
#include "report.hpp"

#endif  // POLYCM_POLYCM_HPP
