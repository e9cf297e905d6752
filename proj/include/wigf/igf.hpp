#pragma once

#include <optional>
#include <string>
#include <vector>

#include "wigf/dist.hpp"
#include "wigf/integrate.hpp"
#include "wigf/weights.hpp"

namespace wigf {

struct QuadOpts {
    double rel_tol = 1e-10;
    double abs_tol = 1e-12;
    int max_subdiv = 2000;
};

struct BoundsReport {
    double lower = 0.0;
    double center = 0.0;
    double upper = 0.0;
    bool satisfied = false;
};

struct ClosedFormResult {
    double value = 0.0;          // oracle value when the paper formula is flagged
    bool paper_flagged = false;
    std::string note;
};

// I_beta^w(X) = int w(x) f^beta(x) dx. The public entry point requires
// beta >= 1; gwigf_ext accepts any beta > 0 where the integral converges
// (escort and mixture identities need the extended domain).
double gwigf(const Distribution& d, const WeightFn& w, double beta, const QuadOpts& opts = {});
double gwigf_ext(const Distribution& d, const WeightFn& w, double beta, const QuadOpts& opts = {});

// Catalogued closed forms, validated against quadrature. Entries whose
// printed formula disagrees with the oracle carry paper_flagged = true and
// return the oracle value. Throws domain_error when no form is catalogued.
ClosedFormResult gwigf_closed(const Distribution& d, const WeightFn& w, double beta);

// The printed formula itself, for discrepancy reporting.
std::optional<double> gwigf_paper_formula(const Distribution& d, const WeightFn& w, double beta);

// Discrete variant: sum w_i p_i^beta over a probability vector.
double gwigf_discrete(const std::vector<double>& p, const std::vector<double>& w, double beta);

// k-th derivative in beta: int w f^beta (log f)^k.
double gwigf_derivative(const Distribution& d, const WeightFn& w, double beta, int k,
                        const QuadOpts& opts = {});

// Weighted Shannon entropy of order k: int w (-log f)^k f.
double weighted_entropy_k(const Distribution& d, const WeightFn& w, int k,
                          const QuadOpts& opts = {});

double weighted_extropy(const Distribution& d, const WeightFn& w, const QuadOpts& opts = {});

// E[(w log f)^2] - (E[w log f])^2.
double weighted_varentropy(const Distribution& d, const WeightFn& w, const QuadOpts& opts = {});

struct SeriesResult {
    double partial_sum = 0.0;
    double last_term = 0.0;
};

// Truncated expansion sum_{k<=K} (1-beta)^k/k! * H_k^w(X).
SeriesResult gwigf_series(const Distribution& d, const WeightFn& w, double beta, int truncation,
                          const QuadOpts& opts = {});

// Cauchy-Schwarz / Jensen sandwich: (I^{sqrt w}_{(b+1)/2})^2 <= I^w_b <= sqrt(I^{w^2}_{2b-1}).
BoundsReport bounds_cs(const Distribution& d, const WeightFn& w, double beta,
                       const QuadOpts& opts = {});

// Hazard-based bounds on I^w_{beta+1}.
BoundsReport bounds_hazard(const Distribution& d, const WeightFn& w, double beta,
                           const QuadOpts& opts = {});

struct MonotoneMap {
    std::string id;
    std::function<double(double)> fwd;
    std::function<double(double)> inv;
    std::function<double(double)> deriv; // derivative of fwd
    bool increasing = true;

    static MonotoneMap affine(double a, double b); // a > 0
    static MonotoneMap sqrt_map();
    static MonotoneMap reciprocal(); // decreasing
    static MonotoneMap shift(double b); // x + b (b may be negative)
    static MonotoneMap identity();
};

// Distribution of zeta(X), built from the change-of-variables density.
Distribution transformed_distribution(const Distribution& d, const MonotoneMap& zeta);

// I^w_beta(zeta(X)) evaluated on the base scale (decreasing maps use the
// absolute-value convention, which gives the density-based value).
double gwigf_transformed(const Distribution& d, const WeightFn& w, const MonotoneMap& zeta,
                         double beta, const QuadOpts& opts = {});

struct ConvolutionBoundReport {
    double value = 0.0;
    double bound = 0.0;
    bool satisfied = false;
};

// I^x_beta(X+Y) against I_b(X)I^y_b(Y) + I^x_b(X)I_b(Y); nested quadrature.
ConvolutionBoundReport convolution_gwigf_bound(const Distribution& x, const Distribution& y,
                                               double beta, const QuadOpts& opts = {});

struct OrderingReport {
    bool premises_hold = false;
    bool conclusion_holds = false;
    std::string detail;
};

// Checks w1 increasing, w1 >= w2, and dispersive order on a quantile grid,
// then asserts I^{w1}_b(X) >= I^{w2}_b(Y) across the beta grid.
OrderingReport ordering_check(const Distribution& x, const Distribution& y, const WeightFn& w1,
                              const WeightFn& w2, const std::vector<double>& beta_grid,
                              const QuadOpts& opts = {});

} // namespace wigf
