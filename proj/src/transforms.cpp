#include "wigf/transforms.hpp"

#include <cmath>
#include <sstream>

namespace wigf {

namespace {

IdentityReport make_report(double lhs, double rhs, double tol) {
    IdentityReport r;
    r.lhs = lhs;
    r.rhs = rhs;
    r.gap = std::abs(lhs - rhs);
    r.tolerance = tol;
    r.passed = r.gap <= tol;
    return r;
}

std::string fmt(double v) {
    std::ostringstream os;
    os << v;
    return os.str();
}

} // namespace

Distribution escort(const Distribution& d, double alpha) {
    if (!(alpha > 0.0)) throw domain_error("escort order must be positive");
    if (alpha == 1.0) return d;
    const double lo = d.support_lo();
    const double hi = d.support_hi();
    auto density = [d, alpha](double x) {
        const double f = d.density(x);
        if (!(f > 0.0)) return 0.0;
        return std::pow(f, alpha);
    };
    return Distribution::numeric(density, lo, hi, std::nullopt,
                                 "escort(" + d.id() + ",a=" + fmt(alpha) + ")");
}

Distribution generalized_escort(const Distribution& f, const Distribution& g, double alpha) {
    if (alpha == 1.0) return f;
    const double lo = std::max(f.support_lo(), g.support_lo());
    const double hi = std::min(f.support_hi(), g.support_hi());
    if (!(lo < hi)) throw domain_error("supports do not overlap");
    auto density = [f, g, alpha](double x) {
        const double fd = f.density(x);
        if (!(fd > 0.0)) return 0.0;
        const double gd = g.density(x);
        if (!(gd > 0.0)) return 0.0;
        // log space: avoids NaN from tail underflow against overflow
        return std::exp(alpha * std::log(fd) + (1.0 - alpha) * std::log(gd));
    };
    return Distribution::numeric(density, lo, hi, std::nullopt,
                                 "gen-escort(" + f.id() + "," + g.id() + ",a=" + fmt(alpha) + ")");
}

Distribution mixture_r_gamma(const Distribution& f1, const Distribution& f2, double r,
                             double gamma) {
    if (!(r > 0.0 && r < 1.0)) throw domain_error("mixture weight r must be in (0,1)");
    if (!(gamma > 0.0)) throw domain_error("mixture order gamma must be positive");
    const double lo = std::min(f1.support_lo(), f2.support_lo());
    const double hi = std::max(f1.support_hi(), f2.support_hi());
    auto density = [f1, f2, r, gamma](double x) {
        const double d1 = f1.density(x);
        const double d2 = f2.density(x);
        const double s = r * (d1 > 0.0 ? std::pow(d1, gamma) : 0.0) +
                         (1.0 - r) * (d2 > 0.0 ? std::pow(d2, gamma) : 0.0);
        if (!(s > 0.0)) return 0.0;
        return std::pow(s, 1.0 / gamma);
    };
    // gamma = 1 is an ordinary mixture with unit normalizer by construction.
    std::optional<double> normalizer;
    if (gamma == 1.0) normalizer = 1.0;
    return Distribution::numeric(density, lo, hi, normalizer,
                                 "mixture(" + f1.id() + "," + f2.id() + ",r=" + fmt(r) +
                                     ",g=" + fmt(gamma) + ")");
}

Distribution equilibrium(const Distribution& d) {
    const double lo = d.support_lo();
    const double hi = d.support_hi();
    QuadSpec q;
    q.integrand = [d](double x) { return d.survival(x); };
    q.lo = lo;
    q.hi = hi;
    double mean = 0.0;
    try {
        mean = integrate(q).value;
    } catch (const divergence_error&) {
        throw divergence_error("equilibrium distribution needs a finite mean");
    }
    if (!std::isfinite(mean) || !(mean > 0.0))
        throw divergence_error("equilibrium distribution needs a finite positive mean");
    auto density = [d, mean](double x) { return d.survival(x) / mean; };
    return Distribution::numeric(density, lo, hi, 1.0, "equilibrium(" + d.id() + ")");
}

namespace {

class PhModel final : public detail::Model {
public:
    PhModel(Distribution base, double beta) : base_(std::move(base)), beta_(beta) {}

    double pdf(double x) const override {
        const double f = base_.density(x);
        if (!(f > 0.0)) return 0.0;
        const double s = base_.survival(x);
        if (!(s > 0.0)) return 0.0;
        return beta_ * f * std::pow(s, beta_ - 1.0);
    }
    double cdf(double x) const override { return 1.0 - survival(x); }
    double survival(double x) const override { return std::pow(base_.survival(x), beta_); }
    double quantile(double u) const override {
        return base_.quantile(1.0 - std::pow(1.0 - u, 1.0 / beta_));
    }
    double support_lo() const override { return base_.support_lo(); }
    double support_hi() const override { return base_.support_hi(); }
    std::string id() const override { return "ph(" + base_.id() + ")"; }

private:
    Distribution base_;
    double beta_;
};

} // namespace

Distribution ph(const Distribution& d, double beta) {
    if (!(beta > 0.0)) throw domain_error("proportional hazards order must be positive");
    if (beta == 1.0) return d;
    return Distribution::from_model(std::make_shared<PhModel>(d, beta),
                                    "ph(" + d.id() + ",b=" + fmt(beta) + ")",
                                    {{"beta", beta}});
}

IdentityReport verify_escort_igf(const Distribution& d, const WeightFn& w, double alpha,
                                 double beta, double tol) {
    const double lhs = gwigf_ext(escort(d, alpha), w, beta);
    const double rhs =
        gwigf_ext(d, w, alpha * beta) / std::pow(gwigf_ext(d, WeightFn::one(), alpha), beta);
    return make_report(lhs, rhs, tol);
}

IdentityReport verify_gen_escort_igf(const Distribution& f, const Distribution& g,
                                     const WeightFn& w, double alpha, double beta, double tol) {
    const WeightFn one = WeightFn::one();
    const double lhs = gwigf_ext(generalized_escort(f, g, alpha), w, beta);
    const double ibf = gwigf_ext(f, one, beta);
    const double ibg = gwigf_ext(g, one, beta);
    const double ra = gwrigf_ext(f, g, one, alpha);
    const double rw = gwrigf_ext(escort(f, beta), escort(g, beta), w, alpha);
    const double rhs =
        std::pow(ibf, alpha) * std::pow(ibg, 1.0 - alpha) * rw / std::pow(ra, beta);
    return make_report(lhs, rhs, tol);
}

namespace {

// Two-component mixture of the order-gamma escorts with weight built from
// I_gamma values: equals (r f1^g + (1-r) f2^g) / (r I_g(f1) + (1-r) I_g(f2)).
Distribution gamma_escort_mixture(const Distribution& f1, const Distribution& f2, double r,
                                  double gamma) {
    const WeightFn one = WeightFn::one();
    const double i1 = gwigf_ext(f1, one, gamma);
    const double i2 = gwigf_ext(f2, one, gamma);
    const double total = r * i1 + (1.0 - r) * i2;
    const double lo = std::min(f1.support_lo(), f2.support_lo());
    const double hi = std::max(f1.support_hi(), f2.support_hi());
    auto density = [f1, f2, r, gamma, total](double x) {
        const double d1 = f1.density(x);
        const double d2 = f2.density(x);
        const double s = r * (d1 > 0.0 ? std::pow(d1, gamma) : 0.0) +
                         (1.0 - r) * (d2 > 0.0 ? std::pow(d2, gamma) : 0.0);
        return s / total;
    };
    return Distribution::numeric(density, lo, hi, 1.0,
                                 "escort-mixture(" + f1.id() + "," + f2.id() + ")");
}

} // namespace

IdentityReport verify_mixture_igf(const Distribution& f1, const Distribution& f2, double r,
                                  double gamma, const WeightFn& w, double beta, double tol) {
    const double lhs = gwigf_ext(mixture_r_gamma(f1, f2, r, gamma), w, beta);
    const Distribution xg = gamma_escort_mixture(f1, f2, r, gamma);
    const double rhs = gwigf_ext(xg, w, beta / gamma) /
                       std::pow(gwigf_ext(xg, WeightFn::one(), 1.0 / gamma), beta);
    return make_report(lhs, rhs, tol);
}

IdentityReport verify_mixture_rigf(const Distribution& f1, const Distribution& f2, double r,
                                   double gamma, const WeightFn& w, double beta, int i,
                                   double tol) {
    if (i != 1 && i != 2) throw domain_error("component index must be 1 or 2");
    const Distribution& fi = (i == 1) ? f1 : f2;
    const double lhs = gwrigf_ext(mixture_r_gamma(f1, f2, r, gamma), fi, w, beta);
    const Distribution k = escort(gamma_escort_mixture(f1, f2, r, gamma), 1.0 / gamma);
    const double rhs = gwrigf_ext(k, fi, w, beta);
    return make_report(lhs, rhs, tol);
}

CrossEnergyReport verify_cross_energy_escort(const Distribution& f, const Distribution& g,
                                             const WeightFn& w, double alpha, double beta,
                                             double tol) {
    const WeightFn one = WeightFn::one();
    const double lhs =
        cross_informational_energy(escort(f, alpha), escort(g, alpha), w, beta);
    const double ia_f = gwigf_ext(f, one, alpha);
    const double ia_g = gwigf_ext(g, one, alpha);
    const double denom = std::sqrt(std::pow(ia_f * ia_g, beta));
    const double rhs = cross_informational_energy(f, g, w, alpha * beta) / denom;

    CrossEnergyReport r;
    static_cast<IdentityReport&>(r) = make_report(lhs, rhs, tol);
    r.bound =
        (gwigf_ext(f, w, alpha * beta) + gwigf_ext(g, w, alpha * beta)) / (2.0 * denom);
    r.bound_satisfied = lhs <= r.bound + tol;
    return r;
}

} // namespace wigf
