#pragma once

#include "wigf/dist.hpp"

namespace wigf {

struct FitResult {
    std::string model;            // "exp" | "gumbel2"
    Distribution fitted = Distribution::exponential(1.0);
    double log_likelihood = 0.0;
    int k = 0;                    // free parameters
    std::size_t n = 0;
};

struct CriteriaRow {
    double neg_log_l = 0.0;
    double aic = 0.0;
    double aicc = 0.0;
    double bic = 0.0;
};

// Exponential by reciprocal mean; Gumbel-II (inverse Weibull) by profile
// likelihood in the shape (rate profiled out), tolerance 1e-8.
FitResult fit_mle(const std::string& model, const Sample& s);

// AIC = 2k + 2(-lnL), AICc = AIC + 2k(k+1)/(n-k-1), BIC = k ln n + 2(-lnL).
CriteriaRow information_criteria(const FitResult& f);

struct GofRow {
    FitResult fit;
    CriteriaRow criteria;
};

// Fits each model and ranks ascending by AIC (ties: BIC, then model name).
std::vector<GofRow> gof_report(const Sample& s, const std::vector<std::string>& models);

// Built-in datasets: "bladder" (n=128) and "relief" (n=20).
Sample load_fixture(const std::string& name);

} // namespace wigf
