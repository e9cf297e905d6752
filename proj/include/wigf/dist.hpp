#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "wigf/errors.hpp"

namespace wigf {

struct Sample {
    std::vector<double> values; // sorted ascending
    std::string source;

    // Sorts, validates non-empty / finite / non-negative.
    static Sample ingest(std::vector<double> values, std::string source);

    std::size_t size() const { return values.size(); }
    double mean() const;
    double sd() const;
    double iqr() const;
    double min() const { return values.front(); }
    double max() const { return values.back(); }
};

namespace detail {

class Model {
public:
    virtual ~Model() = default;
    virtual double pdf(double x) const = 0;
    virtual double cdf(double x) const = 0;
    virtual double survival(double x) const { return 1.0 - cdf(x); }
    virtual double quantile(double u) const = 0; // u in (0,1)
    virtual double support_lo() const = 0;
    virtual double support_hi() const = 0;
    virtual std::string id() const = 0;
};

} // namespace detail

// Immutable probability model; cheap to copy, safe to share across threads.
class Distribution {
public:
    static Distribution uniform(double a, double b);
    static Distribution exponential(double lambda);
    static Distribution inverted_exponential(double lambda);
    static Distribution weibull(double shape, double scale);
    static Distribution pareto1(double shape, double lower_bound);
    static Distribution lomax(double shape); // pareto1(shape, 1) shifted by -1
    static Distribution gumbel2(double shape, double scale);
    static Distribution triangular_up();   // f(u) = 2u on (0,1)
    static Distribution triangular_down(); // f(u) = 2(1-u) on (0,1)

    // Wraps a non-negative integrable function as a density. If `normalizer`
    // is absent it is computed once by quadrature (1e-10 relative). CDF is
    // quadrature, quantile is bisection to 1e-10.
    static Distribution numeric(std::function<double(double)> density, double lo,
                                double hi, std::optional<double> normalizer = std::nullopt,
                                std::string id = "numeric");

    // Grammar: <id>:<key>=<val>[,<key>=<val>...], e.g. exp:lambda=0.5
    static Distribution parse(const std::string& spec);

    // Escape hatch for modules that define their own analytic models.
    static Distribution from_model(std::shared_ptr<const detail::Model> model, std::string id,
                                   std::vector<std::pair<std::string, double>> params = {}) {
        return Distribution(std::move(model), std::move(id), std::move(params));
    }

    double density(double x) const;
    double cdf(double x) const;
    double survival(double x) const;
    double hazard(double x) const; // throws domain_error when survival(x) == 0
    double quantile(double u) const;
    double support_lo() const;
    double support_hi() const;
    const std::string& id() const { return id_; }

    // Family name (id up to the first ':') and exact construction parameters.
    std::string family() const;
    double param(const std::string& key) const; // throws domain_error if absent
    const std::vector<std::pair<std::string, double>>& params() const { return params_; }

    // Inverse-CDF sampling; deterministic across platforms for a fixed seed.
    Sample sample(std::size_t n, std::uint64_t seed) const;

    // Sum of log densities; -infinity if any value falls outside the support.
    double log_likelihood(const Sample& s) const;

    const detail::Model& model() const { return *model_; }

private:
    Distribution(std::shared_ptr<const detail::Model> model, std::string id,
                 std::vector<std::pair<std::string, double>> params = {})
        : model_(std::move(model)), id_(std::move(id)), params_(std::move(params)) {}

    std::shared_ptr<const detail::Model> model_;
    std::string id_;
    std::vector<std::pair<std::string, double>> params_;
};

} // namespace wigf
