#include <cmath>

#include "doctest.h"
#include "wigf/estimate.hpp"
#include "wigf/gof.hpp"
#include "wigf/integrate.hpp"
#include "wigf/residual.hpp"

using namespace wigf;

namespace {

KdeSpec make_spec(std::vector<double> values, double bandwidth) {
    KdeSpec s;
    s.sample = Sample::ingest(std::move(values), "test");
    s.bandwidth = bandwidth;
    return s;
}

} // namespace

TEST_CASE("kernel density point values") {
    CHECK(kde_pdf(make_spec({0.0}, 1.0), 0.0) == doctest::Approx(0.398942).epsilon(1e-5));
    CHECK(kde_pdf(make_spec({1.0, 2.0, 3.0}, 1.0), 2.0) ==
          doctest::Approx(0.294295).epsilon(1e-5));

    // symmetric sample about 2
    const KdeSpec sym = make_spec({1.0, 2.0, 3.0}, 0.7);
    for (double d : {0.3, 0.8, 1.5})
        CHECK(kde_pdf(sym, 2.0 + d) == doctest::Approx(kde_pdf(sym, 2.0 - d)).epsilon(1e-12));
}

TEST_CASE("kernel survival") {
    CHECK(kde_survival(make_spec({0.0}, 1.0), 0.0) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(kde_survival(make_spec({1.0, 2.0, 3.0}, 1.0), 2.0) ==
          doctest::Approx(0.5).epsilon(1e-12));
    CHECK(kde_survival(make_spec({1.0, 2.0, 3.0}, 1.0), -40.0) ==
          doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("kernel estimate normalizes") {
    std::uint64_t s = 31;
    auto next = [&s]() {
        s = s * 6364136223846793005ULL + 1442695040888963407ULL;
        return static_cast<double>(s >> 11) * 0x1p-53;
    };
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<double> values;
        const int n = 5 + static_cast<int>(20.0 * next());
        for (int i = 0; i < n; ++i) values.push_back(5.0 * next());
        const KdeSpec spec = make_spec(std::move(values), 0.1 + next());
        QuadSpec q;
        q.integrand = [&spec](double x) { return kde_pdf(spec, x); };
        q.lo = spec.sample.min() - 10.0 * spec.bandwidth;
        q.hi = spec.sample.max() + 10.0 * spec.bandwidth;
        q.rel_tol = 1e-9;
        CHECK(integrate(q).value == doctest::Approx(1.0).epsilon(1e-6));
    }
}

TEST_CASE("plug-in residual estimator") {
    // small bandwidth at beta = 1, t = 0: essentially the sample mean
    CHECK(np_residual_gwigf(make_spec({1.0, 2.0, 3.0}, 0.1), 1.0, 0.0) ==
          doctest::Approx(2.0).epsilon(0.025));

    // consistency against the exponential closed form
    KdeSpec big;
    big.sample = Distribution::exponential(0.5).sample(10000, 7);
    const double truth = parametric_residual_gwigf_exp(0.5, 2.0, 0.5);
    CHECK(np_residual_gwigf(big, 2.0, 0.5) == doctest::Approx(truth).epsilon(0.05 / truth));

    // age far above all sample mass: vanishing estimated survival
    CHECK_THROWS_AS(np_residual_gwigf(make_spec({1.0, 2.0}, 0.1), 2.0, 10.0), numeric_error);
}

TEST_CASE("bandwidth rule") {
    CHECK_THROWS_AS(silverman_bandwidth(Sample::ingest({2.0, 2.0, 2.0}, "t")), domain_error);
    CHECK_THROWS_AS(silverman_bandwidth(Sample::ingest({1.0}, "t")), domain_error);

    const Sample s = Distribution::exponential(1.0).sample(100, 3);
    const double b = silverman_bandwidth(s);
    CHECK(b > 0.0);
    CHECK(b < 1.0);

    std::vector<double> scaled;
    for (double v : s.values) scaled.push_back(3.0 * v);
    CHECK(silverman_bandwidth(Sample::ingest(scaled, "t")) ==
          doctest::Approx(3.0 * b).epsilon(1e-12));
}

TEST_CASE("seed mixing is deterministic and argument-sensitive") {
    CHECK(mix_seed(42, 1, 2, 3, 4) == mix_seed(42, 1, 2, 3, 4));
    CHECK(mix_seed(42, 1, 2, 3, 4) != mix_seed(42, 1, 2, 3, 5));
    CHECK(mix_seed(42, 1, 2, 3, 4) != mix_seed(43, 1, 2, 3, 4));
}

TEST_CASE("bootstrap harness") {
    ExperimentGrid grid;
    grid.betas = {1.5, 2.0};
    grid.ts = {0.2, 0.5};
    grid.ns = {40};
    grid.bootstrap = 25;
    grid.seed = 42;
    auto truth = [](double beta, double t) {
        return parametric_residual_gwigf_exp(0.5, beta, t);
    };

    const ReportTable table = bootstrap_bias_mse(grid, truth);
    CHECK(table.rows.size() == 4);
    for (const auto& row : table.rows) {
        CHECK(row.valid);
        CHECK(row.mse >= row.bias * row.bias - 1e-12);
    }

    // parallel and serial runs are bit-identical
    ExperimentGrid serial = grid;
    serial.parallel = false;
    CHECK(bootstrap_bias_mse(serial, truth).to_csv() == table.to_csv());

    // B = 1 reports the base-sample estimate exactly
    ExperimentGrid single = grid;
    single.bootstrap = 1;
    single.betas = {2.0};
    single.ts = {0.5};
    const ReportTable one = bootstrap_bias_mse(single, truth);
    const Sample base = single.generator.sample(40, mix_seed(42, 0, 0, 0, ~0ULL));
    KdeSpec spec;
    spec.sample = base;
    spec.bandwidth = silverman_bandwidth(base);
    const double est = np_residual_gwigf(spec, 2.0, 0.5);
    CHECK(one.at(2.0, 0.5, 40).bias == doctest::Approx(est - truth(2.0, 0.5)).epsilon(1e-15));
}

TEST_CASE("exponential rate MLE") {
    CHECK(mle_rate_exponential(Sample::ingest({1.0, 2.0, 3.0}, "t")) == doctest::Approx(0.5));
    CHECK(mle_rate_exponential(load_fixture("relief")) ==
          doctest::Approx(0.5263).epsilon(2e-4));

    const Sample s = Distribution::exponential(1.0).sample(50, 9);
    std::vector<double> scaled;
    for (double v : s.values) scaled.push_back(4.0 * v);
    CHECK(mle_rate_exponential(Sample::ingest(scaled, "t")) ==
          doctest::Approx(mle_rate_exponential(s) / 4.0).epsilon(1e-12));
}

TEST_CASE("parametric plug-in closed form") {
    CHECK(parametric_residual_gwigf_exp(1.0, 2.0, 1.0) == doctest::Approx(0.75));
    CHECK(parametric_residual_gwigf_exp(0.8, 1.0, 0.0) == doctest::Approx(1.25));
    CHECK(parametric_residual_gwigf_exp(0.5, 1.2, 0.1) ==
          doctest::Approx(residual_gwigf(Distribution::exponential(0.5), WeightFn::identity(),
                                         1.2, 0.1))
              .epsilon(1e-9));
}

TEST_CASE("parametric Monte Carlo harness") {
    ExperimentGrid grid;
    grid.betas = {1.2, 2.5};
    grid.ts = {0.1, 0.9};
    grid.ns = {30, 100};
    grid.replications = 100;
    grid.seed = 42;

    const ReportTable table = monte_carlo_parametric(grid);
    CHECK(table.rows.size() == 8);
    for (const auto& row : table.rows) {
        CHECK(row.valid);
        CHECK(row.mse >= row.bias * row.bias - 1e-12);
        CHECK(std::abs(row.bias) < 0.2);
    }

    // single replication, fixed seed: fully deterministic
    ExperimentGrid tiny = grid;
    tiny.replications = 1;
    CHECK(monte_carlo_parametric(tiny).to_csv() == monte_carlo_parametric(tiny).to_csv());

    ExperimentGrid serial = grid;
    serial.parallel = false;
    CHECK(monte_carlo_parametric(serial).to_csv() == table.to_csv());
}

TEST_CASE("report table round trips") {
    ExperimentGrid grid;
    grid.betas = {1.5};
    grid.ts = {0.2};
    grid.ns = {30};
    grid.replications = 5;
    const ReportTable t = monte_carlo_parametric(grid);
    const std::string csv = t.to_csv();
    CHECK(csv.rfind("beta,t,n,bias,mse", 0) == 0);
    CHECK(t.to_json().find("\"bias\"") != std::string::npos);
    CHECK_THROWS_AS(t.at(9.0, 9.0, 9), domain_error);
}
