#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "wigf/estimate.hpp"
#include "wigf/gof.hpp"
#include "wigf/residual.hpp"

using nlohmann::json;
using namespace wigf;

namespace {

std::vector<double> parse_list(const std::string& s) {
    std::vector<double> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        try {
            out.push_back(std::stod(item));
        } catch (const std::exception&) {
            throw domain_error("bad numeric list element '" + item + "'");
        }
    }
    if (out.empty()) throw domain_error("empty numeric list");
    return out;
}

std::vector<std::size_t> parse_size_list(const std::string& s) {
    std::vector<std::size_t> out;
    for (double v : parse_list(s)) {
        if (v < 1 || v != static_cast<double>(static_cast<std::size_t>(v)))
            throw domain_error("sample sizes must be positive integers");
        out.push_back(static_cast<std::size_t>(v));
    }
    return out;
}

Sample ingest_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw io_error("cannot open input file: " + path);
    std::vector<double> values;
    std::string line;
    int row = 0;
    while (std::getline(in, line)) {
        ++row;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) {
            // trim
            const auto a = cell.find_first_not_of(" \t\r");
            if (a == std::string::npos) continue;
            const auto b = cell.find_last_not_of(" \t\r");
            cell = cell.substr(a, b - a + 1);
            if (row == 1 && cell == "value") continue; // optional header
            std::size_t pos = 0;
            double v = 0.0;
            try {
                v = std::stod(cell, &pos);
            } catch (const std::exception&) {
                pos = 0;
            }
            if (pos != cell.size())
                throw io_error("non-numeric value '" + cell + "' on row " +
                               std::to_string(row) + " of " + path);
            values.push_back(v);
        }
    }
    if (values.empty()) throw io_error("no values found in " + path);
    return Sample::ingest(std::move(values), path);
}

void emit(const std::string& body, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << body << '\n';
        return;
    }
    std::ofstream out(out_path);
    if (!out) throw io_error("cannot open output file: " + out_path);
    out << body << '\n';
    if (!out) throw io_error("failed writing output file: " + out_path);
}

json report_json(const ReportTable& table) { return json::parse(table.to_json()); }

struct Common {
    std::string out;
    std::string format = "json";
    double tol = 0.0; // 0: library defaults
    std::uint64_t seed = 42;

    QuadOpts quad() const {
        QuadOpts q;
        if (tol > 0.0) {
            q.rel_tol = tol;
            q.abs_tol = tol * 1e-2;
        }
        return q;
    }
    json config_base() const {
        json c;
        c["seed"] = seed;
        c["tol"] = tol > 0.0 ? tol : QuadOpts{}.rel_tol;
        c["format"] = format;
        return c;
    }
};

void add_common(CLI::App* app, Common& c) {
    app->add_option("--out", c.out, "output path (default stdout)");
    app->add_option("--format", c.format, "json|csv")->check(CLI::IsMember({"json", "csv"}));
    app->add_option("--tol", c.tol, "quadrature relative tolerance override");
    app->add_option("--seed", c.seed, "master seed");
}

int run(int argc, char** argv) {
    CLI::App app{"weighted information generating functions"};
    app.require_subcommand(1);

    Common common;

    // --- eval ---
    auto* eval = app.add_subcommand("eval", "plain GWIGF of one model");
    std::string e_model, e_weight = "one";
    double e_beta = 1.0;
    bool e_closed = false;
    eval->add_option("--model", e_model)->required();
    eval->add_option("--weight", e_weight);
    eval->add_option("--beta", e_beta)->required();
    eval->add_flag("--closed", e_closed, "use the closed-form catalogue");
    add_common(eval, common);

    // --- rigf ---
    auto* rigf_cmd = app.add_subcommand("rigf", "relative GWIGF and divergences");
    std::string r_f, r_g, r_weight = "one", r_measure = "rigf";
    double r_beta = 1.0;
    rigf_cmd->add_option("--model-f", r_f)->required();
    rigf_cmd->add_option("--model-g", r_g)->required();
    rigf_cmd->add_option("--weight", r_weight);
    rigf_cmd->add_option("--beta", r_beta);
    rigf_cmd->add_option("--measure", r_measure)
        ->check(CLI::IsMember({"rigf", "kl", "jdiv", "cie"}));
    add_common(rigf_cmd, common);

    // --- residual ---
    auto* res = app.add_subcommand("residual", "residual-lifetime measures");
    std::string s_model, s_model_g, s_weight = "x", s_measure = "igf";
    double s_beta = 1.0, s_t = 0.0;
    res->add_option("--model", s_model)->required();
    res->add_option("--model-g", s_model_g, "reference model for rigf/kl");
    res->add_option("--weight", s_weight);
    res->add_option("--beta", s_beta);
    res->add_option("--t", s_t)->required();
    res->add_option("--measure", s_measure)->check(CLI::IsMember({"igf", "rigf", "kl", "bound"}));
    add_common(res, common);

    // --- verify ---
    auto* ver = app.add_subcommand("verify", "numeric identity checks");
    std::string v_identity, v_f, v_g, v_weight = "one";
    double v_alpha = 2.0, v_beta = 2.0, v_r = 0.5, v_gamma = 1.0, v_tol = 1e-7;
    int v_i = 1;
    ver->add_option("--identity", v_identity)
        ->required()
        ->check(CLI::IsMember(
            {"escort-igf", "gen-escort", "mixture-igf", "mixture-rigf", "cross-energy"}));
    ver->add_option("--model-f", v_f)->required();
    ver->add_option("--model-g", v_g, "second model (pair identities)");
    ver->add_option("--weight", v_weight);
    ver->add_option("--alpha", v_alpha);
    ver->add_option("--beta", v_beta);
    ver->add_option("--r", v_r);
    ver->add_option("--gamma", v_gamma);
    ver->add_option("--i", v_i, "mixture component index");
    ver->add_option("--tol", v_tol, "identity gap tolerance");
    ver->add_option("--out", common.out);
    ver->add_option("--format", common.format);
    ver->add_option("--seed", common.seed);

    // --- estimate ---
    auto* est = app.add_subcommand("estimate", "kernel / MLE estimation on data");
    est->require_subcommand(1);
    std::string n_input, n_gen, n_betas = "1", n_ts = "0", n_bandwidth = "silverman";
    std::size_t n_bootstrap = 0, n_size = 100;
    auto* est_np = est->add_subcommand("np", "non-parametric residual estimate");
    est_np->add_option("--input", n_input, "CSV sample");
    est_np->add_option("--gen", n_gen, "generator model spec (instead of --input)");
    est_np->add_option("--n", n_size, "generated sample size");
    est_np->add_option("--beta", n_betas)->required();
    est_np->add_option("--t", n_ts)->required();
    est_np->add_option("--bandwidth", n_bandwidth, "numeric value or 'silverman'");
    est_np->add_option("--bootstrap", n_bootstrap, "bootstrap replicates (0: point estimate)");
    add_common(est_np, common);
    auto* est_mle = est->add_subcommand("mle", "exponential MLE plug-in estimate");
    est_mle->add_option("--input", n_input);
    est_mle->add_option("--gen", n_gen);
    est_mle->add_option("--n", n_size);
    est_mle->add_option("--beta", n_betas)->required();
    est_mle->add_option("--t", n_ts)->required();
    add_common(est_mle, common);

    // --- simulate ---
    auto* sim = app.add_subcommand("simulate", "Monte Carlo bias/MSE grids");
    sim->require_subcommand(1);
    std::string m_gen = "exp:lambda=0.5", m_betas = "1.2,1.7,2.5",
                m_ts = "0.1,0.2,0.5,0.7,0.9", m_ns = "30,50,70,100", m_bandwidth = "silverman";
    std::size_t m_bootstrap = 600, m_reps = 250;
    bool m_serial = false;
    auto* sim_np = sim->add_subcommand("np", "bootstrap kernel estimator grid");
    sim_np->add_option("--gen", m_gen);
    sim_np->add_option("--beta", m_betas);
    sim_np->add_option("--t", m_ts);
    sim_np->add_option("--n", m_ns);
    sim_np->add_option("--bootstrap", m_bootstrap);
    sim_np->add_option("--bandwidth", m_bandwidth);
    sim_np->add_flag("--serial", m_serial, "disable parallel cells");
    add_common(sim_np, common);
    auto* sim_mle = sim->add_subcommand("mle", "parametric estimator grid");
    sim_mle->add_option("--gen", m_gen);
    sim_mle->add_option("--beta", m_betas);
    sim_mle->add_option("--t", m_ts);
    sim_mle->add_option("--n", m_ns);
    sim_mle->add_option("--reps", m_reps);
    sim_mle->add_flag("--serial", m_serial);
    add_common(sim_mle, common);

    // --- gof ---
    auto* gof = app.add_subcommand("gof", "model fitting and information criteria");
    std::string g_input, g_fixture, g_models = "exp,gumbel2";
    gof->add_option("--input", g_input, "CSV sample");
    gof->add_option("--fixture", g_fixture, "bladder|relief (instead of --input)");
    gof->add_option("--models", g_models, "comma list: exp,gumbel2");
    add_common(gof, common);

    // --- datasets ---
    auto* data = app.add_subcommand("datasets", "emit a built-in dataset as CSV");
    std::string d_name;
    data->add_option("--name", d_name)->required()->check(CLI::IsMember({"bladder", "relief"}));
    data->add_option("--out", common.out);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    const QuadOpts quad = common.quad();
    json out;
    out["config"] = common.config_base();

    if (*eval) {
        const Distribution d = Distribution::parse(e_model);
        const WeightFn w = WeightFn::parse(e_weight);
        out["config"]["model"] = d.id();
        out["config"]["weight"] = w.id();
        out["config"]["beta"] = e_beta;
        if (e_closed) {
            const ClosedFormResult r = gwigf_closed(d, w, e_beta);
            out["value"] = r.value;
            out["paper_flagged"] = r.paper_flagged;
            if (!r.note.empty()) out["note"] = r.note;
        } else {
            out["value"] = gwigf(d, w, e_beta, quad);
        }
    } else if (*rigf_cmd) {
        const Distribution f = Distribution::parse(r_f);
        const Distribution g = Distribution::parse(r_g);
        const WeightFn w = WeightFn::parse(r_weight);
        out["config"]["model_f"] = f.id();
        out["config"]["model_g"] = g.id();
        out["config"]["weight"] = w.id();
        out["config"]["beta"] = r_beta;
        out["config"]["measure"] = r_measure;
        if (r_measure == "rigf")
            out["value"] = gwrigf(f, g, w, r_beta, quad);
        else if (r_measure == "kl")
            out["value"] = weighted_kl(f, g, w, quad);
        else if (r_measure == "jdiv")
            out["value"] = weighted_j_divergence(f, g, w, quad);
        else
            out["value"] = cross_informational_energy(f, g, w, r_beta, quad);
    } else if (*res) {
        const Distribution d = Distribution::parse(s_model);
        const WeightFn w = WeightFn::parse(s_weight);
        out["config"]["model"] = d.id();
        out["config"]["weight"] = w.id();
        out["config"]["beta"] = s_beta;
        out["config"]["t"] = s_t;
        out["config"]["measure"] = s_measure;
        if (s_measure == "igf") {
            out["value"] = residual_gwigf(d, w, s_beta, s_t, quad);
        } else if (s_measure == "bound") {
            const ResidualBoundReport r = residual_bound(d, w, s_beta, s_t, quad);
            out["value"] = r.value;
            out["bound"] = r.bound;
            out["direction"] = r.direction;
            out["satisfied"] = r.satisfied;
        } else {
            if (s_model_g.empty())
                throw domain_error("--model-g is required for measure " + s_measure);
            const Distribution g = Distribution::parse(s_model_g);
            out["config"]["model_g"] = g.id();
            out["value"] = s_measure == "rigf"
                               ? residual_gwrigf(d, g, w, s_beta, s_t, quad)
                               : residual_weighted_kl(d, g, w, s_t, quad);
        }
    } else if (*ver) {
        const Distribution f = Distribution::parse(v_f);
        const WeightFn w = WeightFn::parse(v_weight);
        out["config"]["identity"] = v_identity;
        out["config"]["model_f"] = f.id();
        out["config"]["weight"] = w.id();
        out["config"]["alpha"] = v_alpha;
        out["config"]["beta"] = v_beta;
        out["config"]["tol"] = v_tol;
        IdentityReport rep;
        if (v_identity == "escort-igf") {
            rep = verify_escort_igf(f, w, v_alpha, v_beta, v_tol);
        } else {
            if (v_g.empty()) throw domain_error("--model-g is required for " + v_identity);
            const Distribution g = Distribution::parse(v_g);
            out["config"]["model_g"] = g.id();
            if (v_identity == "gen-escort") {
                rep = verify_gen_escort_igf(f, g, w, v_alpha, v_beta, v_tol);
            } else if (v_identity == "mixture-igf") {
                rep = verify_mixture_igf(f, g, v_r, v_gamma, w, v_beta, v_tol);
            } else if (v_identity == "mixture-rigf") {
                rep = verify_mixture_rigf(f, g, v_r, v_gamma, w, v_beta, v_i, v_tol);
            } else {
                const CrossEnergyReport cr =
                    verify_cross_energy_escort(f, g, w, v_alpha, v_beta, v_tol);
                rep = cr;
                out["bound"] = cr.bound;
                out["bound_satisfied"] = cr.bound_satisfied;
            }
        }
        out["lhs"] = rep.lhs;
        out["rhs"] = rep.rhs;
        out["gap"] = rep.gap;
        out["passed"] = rep.passed;
        emit(out.dump(2), common.out);
        return rep.passed ? 0 : 1;
    } else if (est_np->parsed() || est_mle->parsed()) {
        Sample s = [&] {
            if (!n_input.empty()) return ingest_csv(n_input);
            if (n_gen.empty()) throw domain_error("one of --input or --gen is required");
            return Distribution::parse(n_gen).sample(n_size, common.seed);
        }();
        out["config"]["source"] = s.source;
        out["config"]["n"] = s.size();
        const std::vector<double> betas = parse_list(n_betas);
        const std::vector<double> ts = parse_list(n_ts);
        json results = json::array();
        if (est_np->parsed()) {
            KdeSpec spec;
            spec.sample = s;
            if (n_bandwidth != "silverman") spec.bandwidth = std::stod(n_bandwidth);
            out["config"]["bandwidth"] = spec.resolved_bandwidth();
            for (double beta : betas)
                for (double t : ts) {
                    json row;
                    row["beta"] = beta;
                    row["t"] = t;
                    const double point = np_residual_gwigf(spec, beta, t);
                    row["estimate"] = point;
                    if (n_bootstrap > 0) {
                        double sum = 0.0, sum_sq = 0.0;
                        for (std::size_t rep = 0; rep < n_bootstrap; ++rep) {
                            std::vector<double> values(s.size());
                            std::uint64_t state = mix_seed(common.seed, 0, 0, 0, rep);
                            for (auto& v : values) {
                                state += 0x9e3779b97f4a7c15ULL;
                                std::uint64_t z = state;
                                z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
                                z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
                                z ^= z >> 31;
                                auto idx = static_cast<std::size_t>(
                                    (static_cast<double>(z >> 11) + 0.5) * 0x1p-53 *
                                    static_cast<double>(s.size()));
                                if (idx >= s.size()) idx = s.size() - 1;
                                v = s.values[idx];
                            }
                            KdeSpec bs;
                            bs.sample = Sample::ingest(std::move(values), "bootstrap");
                            bs.bandwidth = spec.bandwidth;
                            const double est = np_residual_gwigf(bs, beta, t);
                            sum += est;
                            sum_sq += (est - point) * (est - point);
                        }
                        const double B = static_cast<double>(n_bootstrap);
                        row["bias"] = sum / B - point;
                        row["mse"] = sum_sq / B;
                    }
                    results.push_back(std::move(row));
                }
        } else {
            const double rate = mle_rate_exponential(s);
            out["config"]["lambda"] = rate;
            out["lambda"] = rate;
            for (double beta : betas)
                for (double t : ts) {
                    json row;
                    row["beta"] = beta;
                    row["t"] = t;
                    row["estimate"] = parametric_residual_gwigf_exp(rate, beta, t);
                    results.push_back(std::move(row));
                }
        }
        out["results"] = std::move(results);
    } else if (sim_np->parsed() || sim_mle->parsed()) {
        ExperimentGrid grid;
        grid.generator = Distribution::parse(m_gen);
        grid.betas = parse_list(m_betas);
        grid.ts = parse_list(m_ts);
        grid.ns = parse_size_list(m_ns);
        grid.bootstrap = m_bootstrap;
        grid.replications = m_reps;
        grid.seed = common.seed;
        grid.parallel = !m_serial;
        out["config"]["generator"] = grid.generator.id();
        out["config"]["parallel"] = grid.parallel;
        ReportTable table;
        if (sim_np->parsed()) {
            if (grid.generator.family() != "exp")
                throw domain_error("simulate np expects an exponential generator (truth "
                                   "comes from its closed form)");
            if (m_bandwidth != "silverman") grid.bandwidth = std::stod(m_bandwidth);
            const double rate = grid.generator.param("lambda");
            table = bootstrap_bias_mse(grid, [rate](double beta, double t) {
                return parametric_residual_gwigf_exp(rate, beta, t);
            });
        } else {
            table = monte_carlo_parametric(grid);
        }
        if (common.format == "csv") {
            emit(table.to_csv(), common.out);
            return 0;
        }
        out["results"] = report_json(table);
    } else if (*gof) {
        Sample s = [&] {
            if (!g_input.empty()) return ingest_csv(g_input);
            if (g_fixture.empty()) throw domain_error("one of --input or --fixture is required");
            return load_fixture(g_fixture);
        }();
        std::vector<std::string> models;
        std::stringstream ss(g_models);
        std::string item;
        while (std::getline(ss, item, ','))
            if (!item.empty()) models.push_back(item);
        out["config"]["source"] = s.source;
        out["config"]["n"] = s.size();
        out["config"]["models"] = models;
        json rows = json::array();
        for (const auto& r : gof_report(s, models)) {
            json row;
            row["model"] = r.fit.model;
            for (const auto& [key, value] : r.fit.fitted.params()) row[key] = value;
            row["neg_log_l"] = r.criteria.neg_log_l;
            row["aic"] = r.criteria.aic;
            row["aicc"] = r.criteria.aicc;
            row["bic"] = r.criteria.bic;
            rows.push_back(std::move(row));
        }
        out["results"] = std::move(rows);
    } else if (*data) {
        const Sample s = load_fixture(d_name);
        std::ostringstream body;
        body << "value";
        for (double v : s.values) body << '\n' << v;
        emit(body.str(), common.out);
        return 0;
    }

    emit(out.dump(2), common.out);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const io_error& e) {
        std::cerr << "I/O error: " << e.what() << '\n';
        return 4;
    } catch (const std::invalid_argument& e) {
        std::cerr << "argument error: " << e.what() << '\n';
        return 2;
    } catch (const numeric_error& e) {
        std::cerr << "numeric error: " << e.what() << '\n';
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    }
}
