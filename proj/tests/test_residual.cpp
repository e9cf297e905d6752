#include <cmath>

#include "doctest.h"
#include "wigf/residual.hpp"

using namespace wigf;

namespace {
const Distribution e1 = Distribution::exponential(1.0);
const Distribution e2 = Distribution::exponential(2.0);
const WeightFn wx = WeightFn::identity();
} // namespace

TEST_CASE("residual generating function point values") {
    CHECK(residual_gwigf(e1, wx, 2.0, 1.0) == doctest::Approx(0.75).epsilon(1e-9));
    CHECK(residual_gwigf(e2, wx, 2.0, 0.0) == doctest::Approx(0.25).epsilon(1e-9));
    CHECK(residual_gwigf(e1, wx, 1.0, 2.0) == doctest::Approx(3.0).epsilon(1e-9));
    CHECK_THROWS_AS(residual_gwigf(Distribution::uniform(0.0, 1.0), wx, 2.0, 1.0), domain_error);
}

TEST_CASE("catalogued residual closed forms") {
    auto r = residual_gwigf_closed(e1, 2.0, 1.0);
    CHECK(r.value == doctest::Approx(0.75).epsilon(1e-9));
    CHECK_FALSE(r.paper_flagged);

    for (double beta : {1.0, 1.5, 2.0, 3.0})
        CHECK(residual_gwigf_closed(Distribution::exponential(0.5), beta, 0.0).value ==
              doctest::Approx(std::pow(0.5, beta - 2.0) / (beta * beta)).epsilon(1e-12));

    auto p = residual_gwigf_closed(Distribution::pareto1(3.0, 2.0), 1.0, 3.0);
    CHECK(p.value == doctest::Approx(4.5).epsilon(1e-9)); // E[X | X > t] = at/(a-1)
    CHECK(p.paper_flagged);
    CHECK(p.value ==
          doctest::Approx(residual_gwigf(Distribution::pareto1(3.0, 2.0), wx, 1.0, 3.0))
              .epsilon(1e-8));
}

TEST_CASE("printed residual formulas are detectably wrong where flagged") {
    // exponential entry: printed and catalogued forms coincide
    auto okay = residual_paper_formula(e1, 2.0, 1.0);
    REQUIRE(okay.has_value());
    CHECK(*okay == doctest::Approx(0.75).epsilon(1e-12));

    // Pareto entry: > 5% relative disagreement with quadrature
    const Distribution p = Distribution::pareto1(3.0, 2.0);
    auto printed = residual_paper_formula(p, 2.0, 3.0);
    REQUIRE(printed.has_value());
    const double oracle = residual_gwigf(p, wx, 2.0, 3.0);
    CHECK(std::abs(*printed - oracle) / oracle > 0.05);

    // exponential variant with the contradictory prefactor
    const double variant = residual_gwigf_exp_variant(1.0, 2.0, 1.0);
    CHECK(std::abs(variant - 0.75) / 0.75 > 0.05);
}

TEST_CASE("residual pair closed form (Pareto, unit lower bound)") {
    const Distribution f = Distribution::pareto1(3.0, 1.0);
    const Distribution g = Distribution::pareto1(2.0, 1.0);

    auto r = residual_gwrigf_closed(f, g, 2.0, 2.0);
    CHECK(r.paper_flagged);
    CHECK(r.value == doctest::Approx(residual_gwrigf(f, g, wx, 2.0, 2.0)).epsilon(1e-8));

    // linear in t, and the beta = 1 slice is the conditional mean ct/(c-1)
    CHECK(residual_gwrigf_closed(f, g, 2.0, 4.0).value == doctest::Approx(2.0 * r.value));
    CHECK(residual_gwrigf_closed(f, g, 1.0, 3.0).value == doctest::Approx(4.5).epsilon(1e-12));

    auto printed = residual_gwrigf_paper_formula(f, g, 2.0, 2.0);
    REQUIRE(printed.has_value());
    CHECK(std::abs(*printed - r.value) / r.value > 0.05);
}

TEST_CASE("derivative in the age parameter") {
    CHECK(residual_derivative_t(e1, wx, 2.0, 1.0) == doctest::Approx(0.5).epsilon(1e-8));
    CHECK(residual_derivative_t(Distribution::uniform(0.0, 1.0), WeightFn::one(), 1.0, 0.3) ==
          doctest::Approx(0.0).epsilon(1e-9));

    // central difference over random queries
    std::uint64_t s = 5;
    for (int i = 0; i < 8; ++i) {
        s = s * 6364136223846793005ULL + 1442695040888963407ULL;
        const double u = static_cast<double>(s >> 11) * 0x1p-53;
        const double t = 0.2 + u;
        const double beta = 1.0 + u;
        const double h = 1e-4;
        const double fd =
            (residual_gwigf(e1, wx, beta, t + h) - residual_gwigf(e1, wx, beta, t - h)) /
            (2.0 * h);
        CHECK(fd == doctest::Approx(residual_derivative_t(e1, wx, beta, t)).epsilon(1e-4));
    }
}

TEST_CASE("cumulative hazard") {
    CHECK(cumulative_hazard(e2, 3.0) == doctest::Approx(6.0).epsilon(1e-12));
    CHECK(cumulative_hazard(e1, 0.0) == doctest::Approx(0.0));
    CHECK(cumulative_hazard(Distribution::weibull(2.0, 1.0), 2.0) ==
          doctest::Approx(4.0).epsilon(1e-10));
    CHECK_THROWS_AS(cumulative_hazard(Distribution::uniform(0.0, 1.0), 1.0), domain_error);
}

TEST_CASE("hazard expectation identity") {
    auto r = verify_hazard_expectation(e1, WeightFn::one(), 2.0);
    CHECK(r.passed);
    CHECK(r.lhs == doctest::Approx(0.25).epsilon(1e-6));
    CHECK(r.rhs == doctest::Approx(0.25).epsilon(1e-6));

    CHECK(verify_hazard_expectation(e2, wx, 1.0).passed);
    CHECK(verify_hazard_expectation(Distribution::uniform(0.0, 1.0), WeightFn::one(), 2.0)
              .passed);
}

TEST_CASE("mean residual life, plain and weighted") {
    for (double t : {0.0, 0.5, 2.0})
        CHECK(mrl(Distribution::exponential(1.5), t) == doctest::Approx(1.0 / 1.5).epsilon(1e-9));
    CHECK(mrl(Distribution::uniform(0.0, 1.0), 0.0) == doctest::Approx(0.5).epsilon(1e-9));
    for (double beta : {1.0, 2.0, 3.0})
        for (double t : {0.0, 0.5, 1.5})
            CHECK(weighted_mrl(e1, wx, t, beta) ==
                  doctest::Approx((beta * t + 1.0) / (beta * beta)).epsilon(1e-9));
}

TEST_CASE("equilibrium residual identity") {
    auto r = verify_equilibrium_identity(e1, wx, 2.0, 1.0);
    CHECK(r.passed);
    CHECK(r.lhs == doctest::Approx(0.75).epsilon(1e-6));

    auto u = verify_equilibrium_identity(Distribution::uniform(0.0, 1.0), WeightFn::one(), 1.0,
                                         0.0);
    CHECK(u.passed);
    CHECK(u.lhs == doctest::Approx(1.0).epsilon(1e-6));

    CHECK(verify_equilibrium_identity(Distribution::weibull(2.0, 1.0), wx, 2.0, 0.5).passed);
}

TEST_CASE("monotone residual bound") {
    auto r = residual_bound(e1, wx, 2.0, 1.0);
    CHECK(r.value == doctest::Approx(0.75).epsilon(1e-8));
    CHECK(r.bound == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(r.direction == "increasing");
    CHECK(r.satisfied);

    for (double t : {0.2, 1.0, 2.5}) {
        auto b1 = residual_bound(Distribution::exponential(0.8), wx, 1.0, t);
        CHECK(b1.value == doctest::Approx(t + 1.0 / 0.8).epsilon(1e-8));
        CHECK(b1.bound == doctest::Approx(t).epsilon(1e-12));
        CHECK(b1.satisfied);
    }

    auto flat = residual_bound(e1, WeightFn::one(), 1.0, 0.7);
    CHECK(flat.value == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(flat.bound == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(flat.satisfied); // equality boundary
}

TEST_CASE("residual ordering under hazard-rate dominance") {
    auto r = residual_ordering_check(e1, e2, WeightFn::one(), {1.0, 2.0}, {0.1, 0.5, 1.0});
    CHECK(r.premises_hold);
    CHECK(r.conclusion_holds);

    auto self = residual_ordering_check(e1, e1, WeightFn::one(), {1.0, 2.0}, {0.5});
    CHECK(self.premises_hold);
    CHECK(self.conclusion_holds);

    auto inv = residual_ordering_check(e1, Distribution::exponential(3.0), WeightFn::reciprocal(),
                                       {1.0, 2.0}, {0.1, 1.0});
    CHECK(inv.premises_hold);
    CHECK(inv.conclusion_holds);
}

TEST_CASE("residual pair measures") {
    for (double t : {0.0, 0.5, 2.0})
        CHECK(residual_gwrigf(e1, e1, WeightFn::one(), 2.0, t) ==
              doctest::Approx(1.0).epsilon(1e-9));
    CHECK(residual_gwrigf(e2, e1, wx, 2.0, 0.0) == doctest::Approx(4.0 / 9.0).epsilon(1e-9));

    CHECK(residual_weighted_kl(e1, e1, wx, 0.7) == doctest::Approx(0.0).epsilon(1e-10));
    CHECK(residual_weighted_kl(e2, e1, WeightFn::one(), 0.0) ==
          doctest::Approx(weighted_kl(e2, e1, WeightFn::one())).epsilon(1e-8));
    // exponentials are memoryless: the residual divergence is age-free
    CHECK(residual_weighted_kl(e2, e1, WeightFn::one(), 1.0) ==
          doctest::Approx(std::log(2.0) - 0.5).epsilon(1e-8));

    // finite-difference of the residual pair function at beta = 1
    const double h = 1e-4, t = 0.5;
    const double fd = (residual_gwrigf(e2, e1, wx, 1.0 + h, t) -
                       residual_gwrigf(e2, e1, wx, 1.0 - h, t)) /
                      (2.0 * h);
    CHECK(fd == doctest::Approx(residual_weighted_kl(e2, e1, wx, t)).epsilon(1e-4));
}

TEST_CASE("conditional-hazard representation") {
    // b^b I(t) equals the conditional expectation of w(X) h^{b-1}(X) under the
    // proportional-hazards model, given survival past t
    const Distribution models[] = {e1, Distribution::weibull(2.0, 1.0)};
    for (const auto& d : models) {
        for (double beta : {1.5, 2.0}) {
            for (double t : {0.2, 0.8}) {
                const Distribution xb = ph(d, beta);
                const double sb = xb.survival(t);
                QuadSpec q;
                q.integrand = [&](double x) {
                    const double f = xb.density(x);
                    if (!(f > 0.0)) return 0.0;
                    return x * std::pow(xb.hazard(x), beta - 1.0) * f;
                };
                q.lo = t;
                q.hi = xb.support_hi();
                q.rel_tol = 1e-9;
                const double rhs = integrate(q).value / sb;
                CHECK(std::pow(beta, beta) * residual_gwigf(d, wx, beta, t) ==
                      doctest::Approx(rhs).epsilon(1e-6));
            }
        }
    }
}

TEST_CASE("residual pair transformation law") {
    // increasing map: square root, with the weight composed accordingly
    const MonotoneMap m = MonotoneMap::sqrt_map();
    const Distribution sf = transformed_distribution(e2, m);
    const Distribution sg = transformed_distribution(e1, m);
    for (double t : {0.4, 0.8}) {
        const double lhs = residual_gwrigf(sf, sg, wx, 2.0, t);
        const double rhs = residual_gwrigf(e2, e1, WeightFn::power(0.5), 2.0, t * t);
        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-7));
    }
    // affine map with a map-invariant weight
    const MonotoneMap a = MonotoneMap::affine(2.0, 0.0);
    const Distribution af = transformed_distribution(e2, a);
    const Distribution ag = transformed_distribution(e1, a);
    CHECK(residual_gwrigf(af, ag, WeightFn::one(), 1.5, 1.0) ==
          doctest::Approx(residual_gwrigf(e2, e1, WeightFn::one(), 1.5, 0.5)).epsilon(1e-7));
}

TEST_CASE("continuity and conditional-mean consistency") {
    double prev = residual_gwigf(e1, wx, 2.0, 0.1);
    for (int i = 1; i <= 40; ++i) {
        const double t = 0.1 + i * 0.05;
        const double v = residual_gwigf(e1, wx, 2.0, t);
        CHECK(std::abs(v - prev) < 0.2); // no jumps on a fine grid
        prev = v;
    }

    for (double t : {0.3, 1.2}) {
        const double direct =
            residual_gwigf(Distribution::weibull(2.0, 1.0), wx, 1.0, t);
        QuadSpec q;
        q.integrand = [&](double x) {
            return x * Distribution::weibull(2.0, 1.0).density(x);
        };
        q.lo = t;
        q.hi = std::numeric_limits<double>::infinity();
        const double conditional =
            integrate(q).value / Distribution::weibull(2.0, 1.0).survival(t);
        CHECK(direct == doctest::Approx(conditional).epsilon(1e-8));
    }
}
