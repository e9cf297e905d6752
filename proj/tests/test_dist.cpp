#include <cmath>
#include <vector>

#include "doctest.h"
#include "wigf/dist.hpp"
#include "wigf/gof.hpp"
#include "wigf/integrate.hpp"

using namespace wigf;

namespace {

std::vector<Distribution> catalogue() {
    return {
        Distribution::uniform(0.0, 1.0),
        Distribution::uniform(2.0, 5.0),
        Distribution::exponential(0.5),
        Distribution::exponential(2.0),
        Distribution::inverted_exponential(1.0),
        Distribution::weibull(2.0, 1.5),
        Distribution::pareto1(2.0, 1.0),
        Distribution::pareto1(3.0, 2.0),
        Distribution::lomax(3.0),
        Distribution::gumbel2(4.0, 6.0),
        Distribution::triangular_up(),
        Distribution::triangular_down(),
    };
}

} // namespace

TEST_CASE("density point values") {
    CHECK(Distribution::exponential(2.0).density(0.0) == doctest::Approx(2.0));
    CHECK(Distribution::uniform(0.0, 10.0).density(5.0) == doctest::Approx(0.1));
    CHECK(Distribution::pareto1(2.0, 1.0).density(2.0) == doctest::Approx(0.25));
    CHECK(Distribution::exponential(2.0).density(-1.0) == 0.0); // outside support
}

TEST_CASE("survival point values") {
    CHECK(Distribution::exponential(1.0).survival(0.0) == doctest::Approx(1.0));
    CHECK(Distribution::pareto1(2.0, 1.0).survival(2.0) == doctest::Approx(0.25));
    CHECK(Distribution::uniform(0.0, 10.0).survival(10.0) == doctest::Approx(0.0));
}

TEST_CASE("hazard point values and the dead-at-x error") {
    CHECK(Distribution::exponential(2.0).hazard(1.0) == doctest::Approx(2.0));
    CHECK(Distribution::uniform(0.0, 1.0).hazard(0.5) == doctest::Approx(2.0));
    CHECK(Distribution::weibull(1.0, 1.0).hazard(3.0) == doctest::Approx(1.0));
    CHECK_THROWS_AS(Distribution::uniform(0.0, 1.0).hazard(1.0), domain_error);
}

TEST_CASE("quantile point values") {
    CHECK(Distribution::exponential(1.0).quantile(0.5) == doctest::Approx(std::log(2.0)));
    CHECK(Distribution::uniform(0.0, 10.0).quantile(0.25) == doctest::Approx(2.5));
    CHECK(Distribution::pareto1(2.0, 1.0).quantile(0.75) == doctest::Approx(2.0));
    CHECK_THROWS_AS(Distribution::exponential(1.0).quantile(0.0), domain_error);
    CHECK_THROWS_AS(Distribution::exponential(1.0).quantile(1.5), domain_error);
}

TEST_CASE("sampling is deterministic and law-of-large-numbers sane") {
    const Sample a = Distribution::exponential(1.0).sample(5, 42);
    const Sample b = Distribution::exponential(1.0).sample(5, 42);
    CHECK(a.values == b.values);

    CHECK(Distribution::uniform(0.0, 1.0).sample(100000, 7).mean() ==
          doctest::Approx(0.5).epsilon(0.02));
    CHECK(Distribution::exponential(0.5).sample(100000, 7).mean() ==
          doctest::Approx(2.0).epsilon(0.025));
}

TEST_CASE("log likelihood") {
    const Sample relief = load_fixture("relief");
    CHECK(Distribution::exponential(0.5263).log_likelihood(relief) ==
          doctest::Approx(-32.8371).epsilon(1e-5));

    CHECK(Distribution::exponential(1.0).log_likelihood(Sample::ingest({1.0}, "t")) ==
          doctest::Approx(-1.0));
    CHECK(Distribution::uniform(0.0, 1.0).log_likelihood(Sample::ingest({0.2, 0.9}, "t")) ==
          doctest::Approx(0.0));
    CHECK(Distribution::exponential(1.0).log_likelihood(Sample::ingest({0.0}, "t")) ==
          doctest::Approx(0.0)); // f(0) = 1
    CHECK(std::isinf(Distribution::pareto1(2.0, 1.0).log_likelihood(Sample::ingest({0.5}, "t"))));
}

TEST_CASE("every model normalizes and inverts its CDF") {
    for (const auto& d : catalogue()) {
        QuadSpec q;
        q.integrand = [&d](double x) { return d.density(x); };
        q.lo = d.support_lo();
        q.hi = d.support_hi();
        q.rel_tol = 1e-10;
        CHECK(integrate(q).value == doctest::Approx(1.0).epsilon(1e-8));

        for (int i = 1; i < 50; ++i) {
            const double u = i / 50.0;
            const double x = d.quantile(u);
            CHECK(d.cdf(x) == doctest::Approx(u).epsilon(1e-9));
            CHECK(d.survival(x) == doctest::Approx(1.0 - u).epsilon(1e-9));
        }
    }
}

TEST_CASE("hazard equals density over survival on a grid") {
    for (const auto& d : catalogue()) {
        for (int i = 1; i < 20; ++i) {
            const double x = d.quantile(i / 20.0);
            CHECK(d.hazard(x) == doctest::Approx(d.density(x) / d.survival(x)).epsilon(1e-12));
        }
    }
}

TEST_CASE("empirical CDF of a big sample tracks the analytic CDF") {
    for (const auto& d : catalogue()) {
        const std::size_t n = 100000;
        const Sample s = d.sample(n, 99);
        double ks = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double F = d.cdf(s.values[i]);
            ks = std::max(ks, std::abs(F - static_cast<double>(i + 1) / n));
            ks = std::max(ks, std::abs(F - static_cast<double>(i) / n));
        }
        CHECK(ks < 0.01);
    }
}

TEST_CASE("spec-string parsing round-trips") {
    const Distribution d = Distribution::parse("pareto1:c=2,gamma=1");
    CHECK(d.family() == "pareto1");
    CHECK(d.param("c") == doctest::Approx(2.0));
    CHECK(d.density(2.0) == doctest::Approx(0.25));
    CHECK_THROWS_AS(Distribution::parse("nosuch:z=1"), domain_error);
    CHECK_THROWS_AS(Distribution::parse("uniform:a=3,b=1"), domain_error);
}

TEST_CASE("sample ingest validates") {
    CHECK_THROWS_AS(Sample::ingest({}, "t"), domain_error);
    CHECK_THROWS_AS(Sample::ingest({-1.0}, "t"), domain_error);
    CHECK_THROWS_AS(Sample::ingest({std::numeric_limits<double>::infinity()}, "t"), domain_error);
    const Sample s = Sample::ingest({3.0, 1.0, 2.0}, "t");
    CHECK(s.values == std::vector<double>{1.0, 2.0, 3.0});
    CHECK(s.min() == 1.0);
    CHECK(s.max() == 3.0);
}
