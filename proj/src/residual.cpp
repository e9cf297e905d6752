#include "wigf/residual.hpp"

#include <cmath>

namespace wigf {

namespace {

double validate_age(const Distribution& d, double t) {
    if (!std::isfinite(t)) throw domain_error("age t must be finite");
    const double lo = d.support_lo();
    if (t < lo) t = lo;
    if (d.survival(t) < 1e-12)
        throw domain_error("survival at t is (numerically) zero; residual model undefined");
    return t;
}

QuadSpec tail_spec(const Distribution& d, double t, std::function<double(double)> integrand,
                   const QuadOpts& opts) {
    QuadSpec q;
    q.integrand = std::move(integrand);
    q.lo = t;
    q.hi = d.support_hi();
    q.rel_tol = opts.rel_tol;
    q.abs_tol = opts.abs_tol;
    q.max_subdiv = opts.max_subdiv;
    return q;
}

} // namespace

double residual_gwigf(const Distribution& d, const WeightFn& w, double beta, double t,
                      const QuadOpts& opts) {
    if (!(beta > 0.0)) throw domain_error("residual gwigf requires beta > 0");
    t = validate_age(d, t);
    const double st = d.survival(t);
    return integrate(tail_spec(d, t,
                               [&d, &w, beta, st](double x) {
                                   const double f = d.density(x);
                                   if (!(f > 0.0)) return 0.0;
                                   const double v = std::pow(f / st, beta);
                                   if (v == 0.0) return 0.0;
                                   return w(x) * v;
                               },
                               opts))
        .value;
}

ClosedFormResult residual_gwigf_closed(const Distribution& d, double beta, double t) {
    ClosedFormResult r;
    if (d.family() == "exp") {
        const double l = d.param("lambda");
        if (t < 0.0) t = 0.0;
        r.value = std::pow(l, beta) * (beta * l * t + 1.0) / ((beta * l) * (beta * l));
        return r;
    }
    if (d.family() == "pareto1") {
        const double a = d.param("c");
        const double g = d.param("gamma");
        if (t < g) t = g;
        if (!(beta * (a + 1.0) > 2.0))
            throw divergence_error("Pareto residual GWIGF diverges");
        r.value = std::pow(a, beta) * std::pow(t, 2.0 - beta) / (beta * (a + 1.0) - 2.0);
        r.paper_flagged = true;
        r.note = "printed form subtracts the survival function from 1 and disagrees "
                 "with direct integration; derived form returned";
        return r;
    }
    throw domain_error("no residual closed form catalogued for " + d.family());
}

std::optional<double> residual_paper_formula(const Distribution& d, double beta, double t) {
    if (d.family() == "exp") {
        const double l = d.param("lambda");
        if (t < 0.0) t = 0.0;
        return std::pow(l, beta) * (beta * l * t + 1.0) / ((beta * l) * (beta * l));
    }
    if (d.family() == "pareto1") {
        const double a = d.param("c");
        const double g = d.param("gamma");
        if (t < g) t = g;
        // printed: (1/(a-1)) (a g^a / (1 - (g/t)^a))^b t^{1-a}
        const double denom = 1.0 - std::pow(g / t, a);
        if (!(denom > 0.0)) return std::nullopt;  // printed form blows up at t = gamma
        return (1.0 / (a - 1.0)) * std::pow(a * std::pow(g, a) / denom, beta) *
               std::pow(t, 1.0 - a);
    }
    return std::nullopt;
}

double residual_gwigf_exp_variant(double lambda, double beta, double t) {
    if (!(lambda > 0.0)) throw domain_error("rate must be positive");
    if (t < 0.0) t = 0.0;
    return beta * beta * std::pow(lambda, beta - 2.0) * (beta * lambda * t + 1.0);
}

namespace {

bool unit_pareto_pair(const Distribution& f, const Distribution& g) {
    return f.family() == "pareto1" && g.family() == "pareto1" &&
           std::abs(f.param("gamma") - 1.0) < 1e-12 && std::abs(g.param("gamma") - 1.0) < 1e-12;
}

} // namespace

ClosedFormResult residual_gwrigf_closed(const Distribution& f, const Distribution& g, double beta,
                                        double t) {
    if (!unit_pareto_pair(f, g))
        throw domain_error("residual pair closed form is catalogued for two Pareto models with "
                           "unit lower bound");
    const double c = f.param("c");
    const double gm = g.param("c");
    if (t < 1.0) t = 1.0;
    const double denom = beta * c + (1.0 - beta) * gm - 1.0;
    if (!(denom > 0.0)) throw divergence_error("Pareto residual pair integral diverges");
    ClosedFormResult r;
    r.value = std::pow(c, beta) * std::pow(gm, 1.0 - beta) * t / denom;
    r.paper_flagged = true;
    r.note = "printed denominator carries the wrong sign on the reference shape and fails the "
             "beta = 1 check E[X | X > t] = ct/(c-1); derived form returned";
    return r;
}

std::optional<double> residual_gwrigf_paper_formula(const Distribution& f, const Distribution& g,
                                                    double beta, double t) {
    if (!unit_pareto_pair(f, g)) return std::nullopt;
    const double c = f.param("c");
    const double gm = g.param("c");
    if (t < 1.0) t = 1.0;
    // printed: c^b gm^{1-b} t / (1 - gm + b c - b gm)
    const double denom = 1.0 - gm + beta * c - beta * gm;
    if (denom == 0.0) return std::nullopt;
    return std::pow(c, beta) * std::pow(gm, 1.0 - beta) * t / denom;
}

double residual_derivative_t(const Distribution& d, const WeightFn& w, double beta, double t,
                             const QuadOpts& opts) {
    t = validate_age(d, t);
    const double h = d.hazard(t);
    return -w(t) * std::pow(h, beta) + beta * h * residual_gwigf(d, w, beta, t, opts);
}

double cumulative_hazard(const Distribution& d, double x) {
    const double s = d.survival(x);
    if (!(s > 0.0)) throw domain_error("survival is zero; cumulative hazard infinite");
    return -std::log(s);
}

IdentityReport verify_hazard_expectation(const Distribution& d, const WeightFn& w, double beta,
                                         double tol) {
    QuadOpts opts;
    const double lhs = integrate(tail_spec(d, d.support_lo(),
                                           [&d, &w, beta](double x) {
                                               const double f = d.density(x);
                                               if (!(f > 0.0)) return 0.0;
                                               const double s = d.survival(x);
                                               if (!(s > 0.0)) return 0.0;
                                               return w(x) * std::pow(f, beta - 1.0) *
                                                      (-std::log(s)) * f;
                                           },
                                           opts))
                           .value;

    const Distribution xb = ph(d, beta);
    QuadOpts outer;
    outer.rel_tol = 1e-8;
    outer.abs_tol = 1e-11;
    const double rhs = (1.0 / beta) *
                       integrate(tail_spec(xb, xb.support_lo(),
                                           [&](double t) {
                                               const double f = xb.density(t);
                                               if (!(f > 0.0)) return 0.0;
                                               if (d.survival(t) < 1e-12) return 0.0;
                                               return f * residual_gwigf(d, w, beta, t);
                                           },
                                           outer))
                           .value;

    IdentityReport r;
    r.lhs = lhs;
    r.rhs = rhs;
    r.gap = std::abs(lhs - rhs);
    r.tolerance = tol;
    r.passed = r.gap <= tol;
    return r;
}

double mrl(const Distribution& d, double t, const QuadOpts& opts) {
    t = validate_age(d, t);
    const double st = d.survival(t);
    return integrate(tail_spec(d, t, [&d](double x) { return d.survival(x); }, opts)).value / st;
}

double weighted_mrl(const Distribution& d, const WeightFn& w, double t, double beta,
                    const QuadOpts& opts) {
    t = validate_age(d, t);
    const double st_b = std::pow(d.survival(t), beta);
    return integrate(tail_spec(d, t,
                               [&d, &w, beta](double x) {
                                   const double s = d.survival(x);
                                   if (!(s > 0.0)) return 0.0;
                                   return w(x) * std::pow(s, beta);
                               },
                               opts))
               .value /
           st_b;
}

IdentityReport verify_equilibrium_identity(const Distribution& d, const WeightFn& w, double beta,
                                           double t, double tol) {
    const double lhs = residual_gwigf(equilibrium(d), w, beta, t);
    const double rhs = weighted_mrl(d, w, t, beta) / std::pow(mrl(d, t), beta);
    IdentityReport r;
    r.lhs = lhs;
    r.rhs = rhs;
    r.gap = std::abs(lhs - rhs);
    r.tolerance = tol;
    r.passed = r.gap <= tol;
    return r;
}

ResidualBoundReport residual_bound(const Distribution& d, const WeightFn& w, double beta, double t,
                                   const QuadOpts& opts) {
    t = validate_age(d, t);
    ResidualBoundReport r;
    r.value = residual_gwigf(d, w, beta, t, opts);
    r.bound = (1.0 / beta) * w(t) * std::pow(d.hazard(t), beta - 1.0);

    // direction of t -> I(t) on the central 98% of the distribution
    bool can_increase = true, can_decrease = true;
    double prev = 0.0;
    for (int i = 0; i <= 20; ++i) {
        const double u = 0.01 + 0.98 * i / 20.0;
        const double ti = d.quantile(u);
        if (d.survival(ti) < 1e-12) break;
        const double v = residual_gwigf(d, w, beta, ti, opts);
        if (i > 0) {
            if (v < prev - 1e-10) can_increase = false;
            if (v > prev + 1e-10) can_decrease = false;
        }
        prev = v;
    }
    if (can_increase) {
        r.direction = "increasing";
        r.satisfied = r.value >= r.bound - 1e-9;
    } else if (can_decrease) {
        r.direction = "decreasing";
        r.satisfied = r.value <= r.bound + 1e-9;
    } else {
        r.direction = "none";
        r.satisfied = false;
    }
    return r;
}

ResidualOrderingReport residual_ordering_check(const Distribution& x, const Distribution& y,
                                               const WeightFn& w,
                                               const std::vector<double>& beta_grid,
                                               const std::vector<double>& t_grid,
                                               const QuadOpts& opts) {
    ResidualOrderingReport report;

    const int grid_n = 41;
    auto grid_point = [&x](int i) { return x.quantile(0.01 + 0.98 * i / (grid_n - 1.0)); };

    bool x_dfr = true, y_dfr = true;
    double prev_hx = 0.0, prev_hy = 0.0, prev_w = 0.0;
    for (int i = 0; i < grid_n; ++i) {
        const double xi = grid_point(i);
        if (y.survival(xi) < 1e-12 || x.survival(xi) < 1e-12) break;
        const double hx = x.hazard(xi);
        const double hy = y.hazard(xi);
        if (hy < hx - 1e-10) {
            report.detail = "hazard-rate order premise fails on grid";
            return report;
        }
        const double wx = w(xi);
        if (i > 0) {
            if (hx > prev_hx + 1e-10) x_dfr = false;
            if (hy > prev_hy + 1e-10) y_dfr = false;
            if (wx > prev_w + 1e-10) {
                report.detail = "weight is not decreasing on grid";
                return report;
            }
        }
        prev_hx = hx;
        prev_hy = hy;
        prev_w = wx;
    }
    if (!x_dfr && !y_dfr) {
        report.detail = "neither member has decreasing failure rate";
        return report;
    }
    report.premises_hold = true;

    report.conclusion_holds = true;
    for (double beta : beta_grid) {
        for (double t : t_grid) {
            const double ix = residual_gwigf(x, w, beta, t, opts);
            const double iy = residual_gwigf(y, w, beta, t, opts);
            if (ix > iy + 1e-9) {
                report.conclusion_holds = false;
                report.detail = "violated at beta=" + std::to_string(beta) +
                                ", t=" + std::to_string(t);
                return report;
            }
        }
    }
    return report;
}

double residual_gwrigf(const Distribution& f, const Distribution& g, const WeightFn& w,
                       double beta, double t, const QuadOpts& opts) {
    t = validate_age(f, t);
    if (g.survival(t) < 1e-12)
        throw domain_error("reference survival at t is (numerically) zero");
    const double sf = f.survival(t);
    const double sg = g.survival(t);
    QuadSpec q;
    q.integrand = [&f, &g, &w, beta, sf, sg](double x) {
        const double fd = f.density(x);
        if (!(fd > 0.0)) return 0.0;
        const double gd = g.density(x);
        if (!(gd > 0.0)) return 0.0;
        // log space: the direct power product turns tail underflow times
        // overflow into NaN for beta > 1
        const double v =
            std::exp(beta * std::log(fd / sf) + (1.0 - beta) * std::log(gd / sg));
        if (v == 0.0) return 0.0;
        return w(x) * v;
    };
    q.lo = t;
    q.hi = std::min(f.support_hi(), g.support_hi());
    q.rel_tol = opts.rel_tol;
    q.abs_tol = opts.abs_tol;
    q.max_subdiv = opts.max_subdiv;
    return integrate(q).value;
}

double residual_weighted_kl(const Distribution& f, const Distribution& g, const WeightFn& w,
                            double t, const QuadOpts& opts) {
    t = validate_age(f, t);
    if (g.survival(t) < 1e-12)
        throw domain_error("reference survival at t is (numerically) zero");
    const double sf = f.survival(t);
    const double sg = g.survival(t);
    QuadSpec q;
    q.integrand = [&f, &g, &w, sf, sg](double x) {
        const double fd = f.density(x);
        if (!(fd > 0.0)) return 0.0;
        const double gd = g.density(x);
        if (!(gd > 0.0)) return 0.0;
        const double rf = fd / sf;
        return w(x) * rf * std::log(rf / (gd / sg));
    };
    q.lo = t;
    q.hi = std::min(f.support_hi(), g.support_hi());
    q.rel_tol = opts.rel_tol;
    q.abs_tol = opts.abs_tol;
    q.max_subdiv = opts.max_subdiv;
    return integrate(q).value;
}

} // namespace wigf
