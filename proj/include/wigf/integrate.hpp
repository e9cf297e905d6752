#pragma once

#include <functional>
#include <limits>

#include "wigf/errors.hpp"

namespace wigf {

// Adaptive quadrature request. `hi` may be +infinity; the semi-infinite part
// is mapped onto [0,1) with x = lo + u/(1-u). The panel rule is Gauss-Kronrod
// 7-15, whose nodes are all interior, so integrable endpoint singularities
// (e.g. a 1/x weight against a density vanishing at 0) are never evaluated
// at the endpoint itself.
struct QuadSpec {
    std::function<double(double)> integrand;
    double lo = 0.0;
    double hi = std::numeric_limits<double>::infinity();
    double rel_tol = 1e-10;
    double abs_tol = 1e-12;
    int max_subdiv = 2000;
};

struct QuadResult {
    double value = 0.0;
    double err_estimate = 0.0;
    int subdivisions = 0;
};

// Throws divergence_error when the error estimate cannot be brought below
// max(abs_tol, rel_tol*|value|) within max_subdiv panels, and numeric_error
// when the integrand produces NaN.
QuadResult integrate(const QuadSpec& q);

// Integral over [t, hi]; t must be >= q.lo.
QuadResult integrate_tail(const QuadSpec& q, double t);

} // namespace wigf
