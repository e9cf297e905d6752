#pragma once

#include <cstdint>
#include <functional>

#include "wigf/dist.hpp"
#include "wigf/report.hpp"

namespace wigf {

// Gaussian-kernel density estimate. `bandwidth` <= 0 selects Silverman's
// rule at evaluation time.
struct KdeSpec {
    Sample sample;
    double bandwidth = 0.0;
    std::string kernel = "gauss"; // only kernel implemented

    double resolved_bandwidth() const;
};

double kde_pdf(const KdeSpec& spec, double x);

// int_t^inf of the estimate: mean of the per-point normal upper tails.
double kde_survival(const KdeSpec& spec, double t);

// Plug-in residual estimate int_t^{max+8b} x (f_hat/S_hat(t))^beta dx; the
// weight is fixed to x. Throws numeric_error when S_hat(t) <= 1e-10.
double np_residual_gwigf(const KdeSpec& spec, double beta, double t);

// 0.9 * min(sd, iqr/1.34) * n^{-1/5}; throws on zero spread or n < 2.
double silverman_bandwidth(const Sample& s);

struct ExperimentGrid {
    std::vector<double> betas;
    std::vector<double> ts;
    std::vector<std::size_t> ns;
    std::size_t replications = 250; // parametric Monte Carlo
    std::size_t bootstrap = 600;    // non-parametric bootstrap
    std::uint64_t seed = 42;
    Distribution generator = Distribution::exponential(0.5);
    double bandwidth = 0.0; // <= 0: Silverman per sample
    bool parallel = true;   // cells run in parallel; results bit-identical
};

// Per cell: draw one base sample, resample it with replacement B times,
// estimate each resample with np_residual_gwigf, report bias and MSE
// against truth(beta, t). Seeds are derived per cell and per resample from
// the master seed, so parallel and serial runs agree exactly.
ReportTable bootstrap_bias_mse(const ExperimentGrid& grid,
                               const std::function<double(double, double)>& truth);

double mle_rate_exponential(const Sample& s);

// lambda^b (b lambda t + 1) / (b lambda)^2 with the estimated rate plugged in.
double parametric_residual_gwigf_exp(double lambda_hat, double beta, double t);

// Per cell: R independent samples from the generator, each fitted by the
// exponential MLE and plugged into the closed form; bias/MSE against the
// generator-rate truth.
ReportTable monte_carlo_parametric(const ExperimentGrid& grid);

// splitmix64-style seed mixing used for per-cell derived seeds.
std::uint64_t mix_seed(std::uint64_t master, std::uint64_t a, std::uint64_t b, std::uint64_t c,
                       std::uint64_t d);

} // namespace wigf
