#pragma once

#include "wigf/igf.hpp"
#include "wigf/rigf.hpp"

namespace wigf {

struct IdentityReport {
    double lhs = 0.0;
    double rhs = 0.0;
    double gap = 0.0;
    double tolerance = 0.0;
    bool passed = false;
};

struct CrossEnergyReport : IdentityReport {
    double bound = 0.0;
    bool bound_satisfied = false;
};

// f^a / int f^a. Exponential maps to exponential with rate a*lambda.
Distribution escort(const Distribution& d, double alpha);

// f^a g^{1-a} / normalizer on the common support.
Distribution generalized_escort(const Distribution& f, const Distribution& g, double alpha);

// [r f1^g + (1-r) f2^g]^{1/g} / normalizer. gamma = 1 is an ordinary mixture.
Distribution mixture_r_gamma(const Distribution& f1, const Distribution& f2, double r,
                             double gamma);

// Density survival(x)/mean. Throws divergence_error when the mean is infinite.
Distribution equilibrium(const Distribution& d);

// Proportional hazards: survival F^beta (analytic model, exact quantiles).
Distribution ph(const Distribution& d, double beta);

// Numeric checks of the transform identities. Each evaluates both sides
// independently by quadrature and reports the gap against `tol`.

// I^w_b(escort(d,a)) vs I^w_{ab}(d) / I_a(d)^b.
IdentityReport verify_escort_igf(const Distribution& d, const WeightFn& w, double alpha,
                                 double beta, double tol = 1e-7);

// I^w_b of the generalized escort vs
// I_b(f)^a I_b(g)^{1-a} R^w_a(escort(f,b), escort(g,b)) / R_a(f,g)^b.
IdentityReport verify_gen_escort_igf(const Distribution& f, const Distribution& g,
                                     const WeightFn& w, double alpha, double beta,
                                     double tol = 1e-7);

// I^w_b of the (r,gamma)-mixture vs I^w_{b/g}(X_G) / I_{1/g}(X_G)^b where
// X_G mixes the order-gamma escorts with weight G built from I_gamma values.
IdentityReport verify_mixture_igf(const Distribution& f1, const Distribution& f2, double r,
                                  double gamma, const WeightFn& w, double beta,
                                  double tol = 1e-7);

// R^w_b(mixture, f_i) vs R^w_b(escort(X_G, 1/gamma), f_i).
IdentityReport verify_mixture_rigf(const Distribution& f1, const Distribution& f2, double r,
                                   double gamma, const WeightFn& w, double beta, int i,
                                   double tol = 1e-7);

// CI^w_b between order-alpha escorts vs CI^w_{ab}(f,g)/sqrt((I_a(f)I_a(g))^b),
// plus the arithmetic-mean upper bound on the same quantity.
CrossEnergyReport verify_cross_energy_escort(const Distribution& f, const Distribution& g,
                                             const WeightFn& w, double alpha, double beta,
                                             double tol = 1e-7);

} // namespace wigf
