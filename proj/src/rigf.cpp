#include "wigf/rigf.hpp"

#include <cmath>

namespace wigf {

namespace {

void check_common_support(const Distribution& f, const Distribution& g) {
    for (int i = 1; i <= 64; ++i) {
        const double u = static_cast<double>(i) / 65.0;
        const double x = f.quantile(u);
        if (f.density(x) > 0.0 && !(g.density(x) > 0.0))
            throw domain_error("reference density vanishes inside the support of f (x = " +
                               std::to_string(x) + ")");
    }
}

// f^b g^{1-b} in log space: the direct product underflows f^b to 0 against an
// overflowing g^{1-b} (b > 1) and turns 0 * inf into NaN deep in the tails.
double density_power_product(double fd, double gd, double beta) {
    return std::exp(beta * std::log(fd) + (1.0 - beta) * std::log(gd));
}

double rigf_integrand(const Distribution& f, const Distribution& g, const WeightFn& w, double beta,
                      double x) {
    const double fd = f.density(x);
    if (!(fd > 0.0)) return 0.0;
    const double gd = g.density(x);
    if (!(gd > 0.0)) return 0.0;
    const double v = density_power_product(fd, gd, beta);
    if (v == 0.0) return 0.0;
    return w(x) * v;
}

QuadSpec common_spec(const Distribution& f, const Distribution& g,
                     std::function<double(double)> integrand, const QuadOpts& opts) {
    QuadSpec q;
    q.integrand = std::move(integrand);
    q.lo = std::max(f.support_lo(), g.support_lo());
    q.hi = std::min(f.support_hi(), g.support_hi());
    if (!(q.lo < q.hi)) throw domain_error("supports do not overlap");
    q.rel_tol = opts.rel_tol;
    q.abs_tol = opts.abs_tol;
    q.max_subdiv = opts.max_subdiv;
    return q;
}

} // namespace

double gwrigf_ext(const Distribution& f, const Distribution& g, const WeightFn& w, double beta,
                  const QuadOpts& opts) {
    check_common_support(f, g);
    return integrate(common_spec(
                         f, g, [&](double x) { return rigf_integrand(f, g, w, beta, x); }, opts))
        .value;
}

double gwrigf(const Distribution& f, const Distribution& g, const WeightFn& w, double beta,
              const QuadOpts& opts) {
    if (!(beta >= 1.0)) throw domain_error("gwrigf requires beta >= 1");
    return gwrigf_ext(f, g, w, beta, opts);
}

double gwrigf_derivative(const Distribution& f, const Distribution& g, const WeightFn& w,
                         double beta, int k, const QuadOpts& opts) {
    if (k < 1) throw domain_error("derivative order must be >= 1");
    check_common_support(f, g);
    return integrate(common_spec(
                         f, g,
                         [&](double x) {
                             const double base = rigf_integrand(f, g, w, beta, x);
                             if (base == 0.0) return 0.0;
                             const double lr = std::log(f.density(x) / g.density(x));
                             return base * std::pow(lr, k);
                         },
                         opts))
        .value;
}

double weighted_kl(const Distribution& f, const Distribution& g, const WeightFn& w,
                   const QuadOpts& opts) {
    check_common_support(f, g);
    return integrate(common_spec(
                         f, g,
                         [&](double x) {
                             const double fd = f.density(x);
                             if (!(fd > 0.0)) return 0.0;
                             const double gd = g.density(x);
                             if (!(gd > 0.0)) return 0.0;
                             return w(x) * fd * std::log(fd / gd);
                         },
                         opts))
        .value;
}

double weighted_j_divergence(const Distribution& f, const Distribution& g, const WeightFn& w,
                             const QuadOpts& opts) {
    return weighted_kl(f, g, w, opts) + weighted_kl(g, f, w, opts);
}

double gwrigf_transformed(const Distribution& f, const Distribution& g, const WeightFn& w,
                          const MonotoneMap& zeta, double beta, const QuadOpts& opts) {
    check_common_support(f, g);
    return integrate(common_spec(
                         f, g,
                         [&](double x) {
                             // Jacobian powers cancel: |z'|^{-b} |z'|^{-(1-b)} |z'| = 1,
                             // so only the weight moves to the new scale.
                             const double fd = f.density(x);
                             if (!(fd > 0.0)) return 0.0;
                             const double gd = g.density(x);
                             if (!(gd > 0.0)) return 0.0;
                             const double v = density_power_product(fd, gd, beta);
                             if (v == 0.0) return 0.0;
                             return w(zeta.fwd(x)) * v;
                         },
                         opts))
        .value;
}

double cross_informational_energy(const Distribution& f, const Distribution& g, const WeightFn& w,
                                  double beta, const QuadOpts& opts) {
    if (!(beta > 0.0)) throw domain_error("cross informational energy requires beta > 0");
    return integrate(common_spec(
                         f, g,
                         [&](double x) {
                             const double fd = f.density(x);
                             if (!(fd > 0.0)) return 0.0;
                             const double gd = g.density(x);
                             if (!(gd > 0.0)) return 0.0;
                             return w(x) * std::pow(fd * gd, 0.5 * beta);
                         },
                         opts))
        .value;
}

ClosedFormResult gwrigf_closed(const Distribution& f, const Distribution& g, const WeightFn& w,
                               double beta) {
    const std::string wk = w.kind_str();
    double m = 0.0;
    if (wk == "x") {
        m = 1.0;
    } else if (wk == "pow") {
        m = w.param();
    } else if (wk == "one") {
        m = 0.0;
    } else {
        throw domain_error("no pair closed form catalogued for weight " + w.id());
    }

    ClosedFormResult r;
    if (f.family() == "exp" && g.family() == "exp") {
        const double l1 = f.param("lambda"), l2 = g.param("lambda");
        const double denom = l1 * beta + l2 * (1.0 - beta);
        if (!(denom > 0.0)) throw divergence_error("exponential pair GWRIGF diverges");
        r.value = std::tgamma(m + 1.0) * std::pow(l1, beta) * std::pow(l2, 1.0 - beta) /
                  std::pow(denom, m + 1.0);
        return r;
    }
    if (f.family() == "pareto1" && g.family() == "pareto1") {
        if (f.param("gamma") != g.param("gamma"))
            throw domain_error("Pareto pair closed form needs a common lower bound");
        if (f.param("gamma") != 1.0)
            throw domain_error("Pareto pair closed form catalogued for lower bound 1");
        const double a1 = f.param("c"), a2 = g.param("c");
        if (!(m - (a1 + 1.0) * beta - (a2 + 1.0) * (1.0 - beta) + 1.0 < 0.0))
            throw divergence_error("Pareto pair GWRIGF diverges");
        r.value = std::pow(a1, beta) * std::pow(a2, 1.0 - beta) /
                  ((a1 + 1.0) * beta + (a2 + 1.0) * (1.0 - beta) - 1.0 - m);
        return r;
    }
    throw domain_error("no pair closed form catalogued for (" + f.family() + ", " + g.family() +
                       ")");
}

} // namespace wigf
