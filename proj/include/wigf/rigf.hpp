#pragma once

#include <optional>

#include "wigf/igf.hpp"

namespace wigf {

// R^w_beta(X,Y) = int w(x) f^beta(x) g^{1-beta}(x) dx. Requires g > 0
// wherever f > 0; enforced by a 64-quantile grid check on f. The public
// entry point requires beta >= 1; gwrigf_ext accepts any real beta (the
// skew-symmetry identity R_beta(X,Y) = R_{1-beta}(Y,X) needs beta <= 0).
double gwrigf(const Distribution& f, const Distribution& g, const WeightFn& w, double beta,
              const QuadOpts& opts = {});
double gwrigf_ext(const Distribution& f, const Distribution& g, const WeightFn& w, double beta,
                  const QuadOpts& opts = {});

// k-th derivative in beta: int w f^beta g^{1-beta} (log(f/g))^k.
double gwrigf_derivative(const Distribution& f, const Distribution& g, const WeightFn& w,
                         double beta, int k, const QuadOpts& opts = {});

// int w f log(f/g); the beta-derivative of R at beta = 1.
double weighted_kl(const Distribution& f, const Distribution& g, const WeightFn& w,
                   const QuadOpts& opts = {});

// Symmetrized divergence: weighted_kl(f,g) + weighted_kl(g,f).
double weighted_j_divergence(const Distribution& f, const Distribution& g, const WeightFn& w,
                             const QuadOpts& opts = {});

// R^w_beta(zeta(X), zeta(Y)) evaluated on the base scale.
double gwrigf_transformed(const Distribution& f, const Distribution& g, const WeightFn& w,
                          const MonotoneMap& zeta, double beta, const QuadOpts& opts = {});

// CI^w_beta(f,g) = int w sqrt(f^beta g^beta); f = g recovers gwigf, and
// beta = 1 with w = one is the Bhattacharyya coefficient.
double cross_informational_energy(const Distribution& f, const Distribution& g, const WeightFn& w,
                                  double beta, const QuadOpts& opts = {});

// Catalogued closed forms for distribution pairs (exponential pair and
// Pareto pair with matching lower bound, weight x^m). The Pareto entry
// checks its convergence condition before use.
ClosedFormResult gwrigf_closed(const Distribution& f, const Distribution& g, const WeightFn& w,
                               double beta);

} // namespace wigf
