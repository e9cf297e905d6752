#include "wigf/dist.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include "wigf/integrate.hpp"

namespace wigf {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

Sample Sample::ingest(std::vector<double> values, std::string source) {
    if (values.empty()) throw domain_error("sample must be non-empty");
    for (double v : values) {
        if (!std::isfinite(v) || v < 0.0)
            throw domain_error("sample values must be finite and non-negative");
    }
    std::sort(values.begin(), values.end());
    return Sample{std::move(values), std::move(source)};
}

double Sample::mean() const {
    double s = 0.0;
    for (double v : values) s += v;
    return s / static_cast<double>(values.size());
}

double Sample::sd() const {
    const double m = mean();
    double ss = 0.0;
    for (double v : values) ss += (v - m) * (v - m);
    return std::sqrt(ss / static_cast<double>(values.size() - 1));
}

double Sample::iqr() const {
    auto q = [this](double p) {
        const double idx = p * static_cast<double>(values.size() - 1);
        const std::size_t lo = static_cast<std::size_t>(idx);
        const std::size_t hi = std::min(lo + 1, values.size() - 1);
        const double frac = idx - static_cast<double>(lo);
        return values[lo] * (1.0 - frac) + values[hi] * frac;
    };
    return q(0.75) - q(0.25);
}

namespace detail {
namespace {

class UniformModel final : public Model {
public:
    UniformModel(double a, double b) : a_(a), b_(b) {
        if (!(a < b)) throw domain_error("uniform requires a < b");
    }
    double pdf(double x) const override { return (x >= a_ && x <= b_) ? 1.0 / (b_ - a_) : 0.0; }
    double cdf(double x) const override {
        if (x <= a_) return 0.0;
        if (x >= b_) return 1.0;
        return (x - a_) / (b_ - a_);
    }
    double quantile(double u) const override { return a_ + u * (b_ - a_); }
    double support_lo() const override { return a_; }
    double support_hi() const override { return b_; }
    std::string id() const override { return "uniform"; }

private:
    double a_, b_;
};

class ExponentialModel final : public Model {
public:
    explicit ExponentialModel(double lambda) : lambda_(lambda) {
        if (!(lambda > 0.0)) throw domain_error("exponential requires lambda > 0");
    }
    double pdf(double x) const override { return x < 0.0 ? 0.0 : lambda_ * std::exp(-lambda_ * x); }
    double cdf(double x) const override { return x <= 0.0 ? 0.0 : -std::expm1(-lambda_ * x); }
    double survival(double x) const override { return x <= 0.0 ? 1.0 : std::exp(-lambda_ * x); }
    double quantile(double u) const override { return -std::log1p(-u) / lambda_; }
    double support_lo() const override { return 0.0; }
    double support_hi() const override { return kInf; }
    std::string id() const override { return "exp"; }

private:
    double lambda_;
};

class InvertedExponentialModel final : public Model {
public:
    explicit InvertedExponentialModel(double lambda) : lambda_(lambda) {
        if (!(lambda > 0.0)) throw domain_error("iexp requires lambda > 0");
    }
    double pdf(double x) const override {
        if (x <= 0.0) return 0.0;
        return std::exp(-1.0 / (lambda_ * x)) / (lambda_ * x * x);
    }
    double cdf(double x) const override { return x <= 0.0 ? 0.0 : std::exp(-1.0 / (lambda_ * x)); }
    double quantile(double u) const override { return -1.0 / (lambda_ * std::log(u)); }
    double support_lo() const override { return 0.0; }
    double support_hi() const override { return kInf; }
    std::string id() const override { return "iexp"; }

private:
    double lambda_;
};

class WeibullModel final : public Model {
public:
    WeibullModel(double shape, double scale) : shape_(shape), scale_(scale) {
        if (!(shape > 0.0) || !(scale > 0.0)) throw domain_error("weibull requires positive parameters");
    }
    double pdf(double x) const override {
        if (x < 0.0) return 0.0;
        if (x == 0.0) return shape_ == 1.0 ? 1.0 / scale_ : (shape_ < 1.0 ? kInf : 0.0);
        const double z = x / scale_;
        return (shape_ / scale_) * std::pow(z, shape_ - 1.0) * std::exp(-std::pow(z, shape_));
    }
    double cdf(double x) const override {
        return x <= 0.0 ? 0.0 : -std::expm1(-std::pow(x / scale_, shape_));
    }
    double survival(double x) const override {
        return x <= 0.0 ? 1.0 : std::exp(-std::pow(x / scale_, shape_));
    }
    double quantile(double u) const override {
        return scale_ * std::pow(-std::log1p(-u), 1.0 / shape_);
    }
    double support_lo() const override { return 0.0; }
    double support_hi() const override { return kInf; }
    std::string id() const override { return "weibull"; }

private:
    double shape_, scale_;
};

class Pareto1Model final : public Model {
public:
    Pareto1Model(double shape, double lower) : c_(shape), gamma_(lower) {
        if (!(shape > 0.0) || !(lower > 0.0)) throw domain_error("pareto1 requires positive parameters");
    }
    double pdf(double x) const override {
        if (x < gamma_) return 0.0;
        return c_ * std::pow(gamma_, c_) * std::pow(x, -c_ - 1.0);
    }
    double cdf(double x) const override { return x <= gamma_ ? 0.0 : 1.0 - std::pow(gamma_ / x, c_); }
    double survival(double x) const override { return x <= gamma_ ? 1.0 : std::pow(gamma_ / x, c_); }
    double quantile(double u) const override { return gamma_ * std::pow(1.0 - u, -1.0 / c_); }
    double support_lo() const override { return gamma_; }
    double support_hi() const override { return kInf; }
    std::string id() const override { return "pareto1"; }

private:
    double c_, gamma_;
};

// pareto1(c, 1) shifted down by 1
class LomaxModel final : public Model {
public:
    explicit LomaxModel(double shape) : c_(shape) {
        if (!(shape > 0.0)) throw domain_error("lomax requires c > 0");
    }
    double pdf(double x) const override { return x < 0.0 ? 0.0 : c_ * std::pow(1.0 + x, -c_ - 1.0); }
    double cdf(double x) const override { return x <= 0.0 ? 0.0 : 1.0 - std::pow(1.0 + x, -c_); }
    double survival(double x) const override { return x <= 0.0 ? 1.0 : std::pow(1.0 + x, -c_); }
    double quantile(double u) const override { return std::pow(1.0 - u, -1.0 / c_) - 1.0; }
    double support_lo() const override { return 0.0; }
    double support_hi() const override { return kInf; }
    std::string id() const override { return "lomax"; }

private:
    double c_;
};

// Inverse-Weibull form: f(x) = a*l*x^{-(a+1)} exp(-l x^{-a}), x > 0.
class Gumbel2Model final : public Model {
public:
    Gumbel2Model(double shape, double scale) : a_(shape), l_(scale) {
        if (!(shape > 0.0) || !(scale > 0.0)) throw domain_error("gumbel2 requires positive parameters");
    }
    double pdf(double x) const override {
        if (x <= 0.0) return 0.0;
        return a_ * l_ * std::pow(x, -a_ - 1.0) * std::exp(-l_ * std::pow(x, -a_));
    }
    double cdf(double x) const override { return x <= 0.0 ? 0.0 : std::exp(-l_ * std::pow(x, -a_)); }
    double quantile(double u) const override { return std::pow(-l_ / std::log(u), 1.0 / a_); }
    double support_lo() const override { return 0.0; }
    double support_hi() const override { return kInf; }
    std::string id() const override { return "gumbel2"; }

private:
    double a_, l_;
};

class TriangularUpModel final : public Model {
public:
    double pdf(double x) const override { return (x > 0.0 && x < 1.0) ? 2.0 * x : 0.0; }
    double cdf(double x) const override {
        if (x <= 0.0) return 0.0;
        if (x >= 1.0) return 1.0;
        return x * x;
    }
    double quantile(double u) const override { return std::sqrt(u); }
    double support_lo() const override { return 0.0; }
    double support_hi() const override { return 1.0; }
    std::string id() const override { return "triup"; }
};

class TriangularDownModel final : public Model {
public:
    double pdf(double x) const override { return (x > 0.0 && x < 1.0) ? 2.0 * (1.0 - x) : 0.0; }
    double cdf(double x) const override {
        if (x <= 0.0) return 0.0;
        if (x >= 1.0) return 1.0;
        return x * (2.0 - x);
    }
    double quantile(double u) const override { return 1.0 - std::sqrt(1.0 - u); }
    double support_lo() const override { return 0.0; }
    double support_hi() const override { return 1.0; }
    std::string id() const override { return "tridown"; }
};

class NumericModel final : public Model {
public:
    NumericModel(std::function<double(double)> density, double lo, double hi,
                 std::optional<double> normalizer, std::string id)
        : density_(std::move(density)), lo_(lo), hi_(hi), id_(std::move(id)) {
        if (!(lo < hi)) throw domain_error("numeric model requires lo < hi");
        if (normalizer) {
            norm_ = *normalizer;
        } else {
            QuadSpec q;
            q.integrand = density_;
            q.lo = lo_;
            q.hi = hi_;
            q.rel_tol = 1e-10;
            norm_ = integrate(q).value;
        }
        if (!(norm_ > 0.0) || !std::isfinite(norm_))
            throw divergence_error("numeric model normalizer is not finite and positive");
    }

    double pdf(double x) const override {
        if (x < lo_ || x > hi_) return 0.0;
        return density_(x) / norm_;
    }

    double cdf(double x) const override {
        if (x <= lo_) return 0.0;
        if (x >= hi_) return 1.0;
        QuadSpec q;
        q.integrand = density_;
        q.lo = lo_;
        q.hi = x;
        q.rel_tol = 1e-10;
        q.abs_tol = 1e-13 * norm_;
        return std::min(1.0, integrate(q).value / norm_);
    }

    double quantile(double u) const override {
        // bisection on the CDF; support may be semi-infinite
        double lo = lo_;
        double hi = hi_;
        if (std::isinf(hi)) {
            hi = std::max(1.0, lo_ + 1.0);
            while (cdf(hi) < u) {
                hi = lo_ + (hi - lo_) * 2.0;
                if (hi > 1e300) throw numeric_error("numeric quantile bracket failed");
            }
        }
        for (int i = 0; i < 200 && hi - lo > 1e-10 * std::max(1.0, std::abs(lo)); ++i) {
            const double mid = 0.5 * (lo + hi);
            (cdf(mid) < u ? lo : hi) = mid;
        }
        return 0.5 * (lo + hi);
    }

    double support_lo() const override { return lo_; }
    double support_hi() const override { return hi_; }
    std::string id() const override { return id_; }

private:
    std::function<double(double)> density_;
    double lo_, hi_;
    double norm_;
    std::string id_;
};

} // namespace
} // namespace detail

Distribution Distribution::uniform(double a, double b) {
    std::ostringstream os;
    os << "uniform:a=" << a << ",b=" << b;
    return Distribution(std::make_shared<detail::UniformModel>(a, b), os.str(), {{"a", a}, {"b", b}});
}

Distribution Distribution::exponential(double lambda) {
    std::ostringstream os;
    os << "exp:lambda=" << lambda;
    return Distribution(std::make_shared<detail::ExponentialModel>(lambda), os.str(),
                        {{"lambda", lambda}});
}

Distribution Distribution::inverted_exponential(double lambda) {
    std::ostringstream os;
    os << "iexp:lambda=" << lambda;
    return Distribution(std::make_shared<detail::InvertedExponentialModel>(lambda), os.str(),
                        {{"lambda", lambda}});
}

Distribution Distribution::weibull(double shape, double scale) {
    std::ostringstream os;
    os << "weibull:delta=" << shape << ",theta=" << scale;
    return Distribution(std::make_shared<detail::WeibullModel>(shape, scale), os.str(),
                        {{"delta", shape}, {"theta", scale}});
}

Distribution Distribution::pareto1(double shape, double lower_bound) {
    std::ostringstream os;
    os << "pareto1:c=" << shape << ",gamma=" << lower_bound;
    return Distribution(std::make_shared<detail::Pareto1Model>(shape, lower_bound), os.str(),
                        {{"c", shape}, {"gamma", lower_bound}});
}

Distribution Distribution::lomax(double shape) {
    std::ostringstream os;
    os << "lomax:c=" << shape;
    return Distribution(std::make_shared<detail::LomaxModel>(shape), os.str(), {{"c", shape}});
}

Distribution Distribution::gumbel2(double shape, double scale) {
    std::ostringstream os;
    os << "gumbel2:alpha=" << shape << ",lambda=" << scale;
    return Distribution(std::make_shared<detail::Gumbel2Model>(shape, scale), os.str(),
                        {{"alpha", shape}, {"lambda", scale}});
}

Distribution Distribution::triangular_up() {
    return Distribution(std::make_shared<detail::TriangularUpModel>(), "triup");
}

Distribution Distribution::triangular_down() {
    return Distribution(std::make_shared<detail::TriangularDownModel>(), "tridown");
}

Distribution Distribution::numeric(std::function<double(double)> density, double lo, double hi,
                                   std::optional<double> normalizer, std::string id) {
    auto model = std::make_shared<detail::NumericModel>(std::move(density), lo, hi, normalizer, id);
    return Distribution(std::move(model), std::move(id));
}

std::string Distribution::family() const {
    const auto colon = id_.find(':');
    return colon == std::string::npos ? id_ : id_.substr(0, colon);
}

double Distribution::param(const std::string& key) const {
    for (const auto& [k, v] : params_)
        if (k == key) return v;
    throw domain_error("model '" + id_ + "' has no parameter '" + key + "'");
}

double Distribution::density(double x) const {
    if (!std::isfinite(x)) throw domain_error("density requires finite x");
    if (x < support_lo() || x > support_hi()) return 0.0;
    return model_->pdf(x);
}

double Distribution::cdf(double x) const { return model_->cdf(x); }

double Distribution::survival(double x) const { return model_->survival(x); }

double Distribution::hazard(double x) const {
    const double s = survival(x);
    if (s <= 0.0) throw domain_error("hazard undefined where survival is zero");
    return density(x) / s;
}

double Distribution::quantile(double u) const {
    if (!(u > 0.0 && u < 1.0)) throw domain_error("quantile requires u in (0,1)");
    return model_->quantile(u);
}

double Distribution::support_lo() const { return model_->support_lo(); }
double Distribution::support_hi() const { return model_->support_hi(); }

Sample Distribution::sample(std::size_t n, std::uint64_t seed) const {
    if (n < 1) throw domain_error("sample requires n >= 1");
    std::mt19937_64 rng(seed);
    std::vector<double> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        // 53-bit uniform strictly inside (0,1); independent of library
        // distribution implementations for cross-platform determinism
        const double u = (static_cast<double>(rng() >> 11) + 0.5) * 0x1.0p-53;
        out.push_back(model_->quantile(u));
    }
    std::ostringstream os;
    os << id() << ";n=" << n << ";seed=" << seed;
    return Sample::ingest(std::move(out), os.str());
}

double Distribution::log_likelihood(const Sample& s) const {
    double total = 0.0;
    for (double x : s.values) {
        const double f = density(x);
        if (!(f > 0.0)) return -kInf;
        total += std::log(f);
    }
    return total;
}

namespace {

std::vector<std::pair<std::string, double>> parse_kv(const std::string& text) {
    std::vector<std::pair<std::string, double>> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const auto eq = item.find('=');
        if (eq == std::string::npos) throw domain_error("expected key=value in '" + item + "'");
        double val = 0.0;
        try {
            val = std::stod(item.substr(eq + 1));
        } catch (const std::exception&) {
            throw domain_error("bad numeric value in '" + item + "'");
        }
        out.emplace_back(item.substr(0, eq), val);
    }
    return out;
}

double require(const std::vector<std::pair<std::string, double>>& kv, const std::string& key) {
    for (const auto& [k, v] : kv)
        if (k == key) return v;
    throw domain_error("missing model parameter '" + key + "'");
}

} // namespace

Distribution Distribution::parse(const std::string& spec) {
    const auto colon = spec.find(':');
    const std::string head = colon == std::string::npos ? spec : spec.substr(0, colon);
    const auto kv = colon == std::string::npos
                        ? std::vector<std::pair<std::string, double>>{}
                        : parse_kv(spec.substr(colon + 1));

    if (head == "uniform") return uniform(require(kv, "a"), require(kv, "b"));
    if (head == "exp") return exponential(require(kv, "lambda"));
    if (head == "iexp") return inverted_exponential(require(kv, "lambda"));
    if (head == "weibull") return weibull(require(kv, "delta"), require(kv, "theta"));
    if (head == "pareto1") return pareto1(require(kv, "c"), require(kv, "gamma"));
    if (head == "lomax") return lomax(require(kv, "c"));
    if (head == "gumbel2") return gumbel2(require(kv, "alpha"), require(kv, "lambda"));
    if (head == "triup") return triangular_up();
    if (head == "tridown") return triangular_down();
    throw domain_error("unknown model id '" + head + "'");
}

} // namespace wigf
