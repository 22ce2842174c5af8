// Batch front door: parses run manifests, dispatches scheme runs,
// inequality-check ensembles, and uniqueness experiments, and writes all
// reports. Exit codes: 0 success, 1 invariant failure, 2 manifest error.

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "fracmhd/analysis.hpp"
#include "fracmhd/io.hpp"
#include "fracmhd/kernels.hpp"
#include "fracmhd/manifest.hpp"
#include "fracmhd/presets.hpp"
#include "fracmhd/spectral_ops.hpp"
#include "fracmhd/uniqueness.hpp"

using json = nlohmann::ordered_json;
using namespace fracmhd;

namespace {

struct CsvBuilder {
    std::ostringstream out;
    explicit CsvBuilder(const std::string& header) { out << header << "\n"; }
    template <class... Ts>
    void row(const Ts&... fields) {
        bool first = true;
        ((out << (first ? "" : ","), first = false, put(fields)), ...);
        out << "\n";
    }
    void put(double v) { out << format_double(v); }
    void put(int v) { out << v; }
    void put(const std::string& s) { out << s; }
    void put(const char* s) { out << s; }
    void put(bool b) { out << (b ? "true" : "false"); }
    std::string str() const { return out.str(); }
};

json config_json(const Manifest& m) {
    json j;
    j["command"] = m.command;
    j["seed"] = m.seed;
    for (const auto& [k, v] : m.entries)
        if (k != "command") j[k] = v;
    return j;
}

struct CommandResult {
    int exit_code = 0;
    json checks;
};

CommandResult do_run_scheme(const Manifest& m, const std::filesystem::path& outdir) {
    SchemeConfig cfg = scheme_config_from(m);
    Grid grid(cfg.d, cfg.n);
    DyadicPartition part = DyadicPartition::build(grid);
    Rng rng(m.seed);
    auto [u0, b0] = make_initial_data(m.get("initial_data", "taylor-green(0.05)"), grid, rng);
    if (m.has("initial_data_b")) b0 = make_initial_field(m.get("initial_data_b"), grid, rng);

    PicardRun run = run_picard(part, u0, b0, cfg);

    CsvBuilder norms_csv("iter,time,norm_name,value");
    CsvBuilder y_csv("iter,regime,norm_name,value,bound,holds");
    const std::string regime_name = cfg.regime == Regime::AlphaGE1 ? "ge1" : "lt1";
    std::vector<double> diffs;
    bool all_hold = true;

    // instantaneous regime norms along the final trajectory, thinned
    NormSpec inst_u, inst_b;
    if (cfg.regime == Regime::AlphaGE1) {
        inst_u = {1.0 + 0.5 * cfg.d - 2.0 * cfg.alpha, 2.0, 1.0, Flavor::Homogeneous, std::nullopt};
        inst_b = {1.0 + 0.5 * cfg.d - cfg.alpha, 2.0, 1.0, Flavor::Homogeneous, std::nullopt};
    } else {
        inst_u = {cfg.sigma, 2.0, kInf, Flavor::Inhomogeneous, std::nullopt};
        inst_b = inst_u;
    }
    const std::size_t stride = std::max<std::size_t>(1, run.final_state.u.samples() / 16);
    for (std::size_t i = 0; i < run.final_state.u.samples(); i += stride) {
        const double t = run.final_state.u.times[i];
        norms_csv.row(run.final_state.iteration_index, t, "u_inst_Besov",
                      besov_norm(part, run.final_state.u.states[i], inst_u));
        norms_csv.row(run.final_state.iteration_index, t, "b_inst_Besov",
                      besov_norm(part, run.final_state.b.states[i], inst_b));
    }

    for (const auto& rec : run.iterations) {
        for (const auto& [name, value] : rec.membership.norms) {
            norms_csv.row(rec.iterate, cfg.T, name, value);
            y_csv.row(rec.iterate, regime_name, name, value, rec.membership.bounds.at(name),
                      rec.membership.holds.at(name));
        }
        norms_csv.row(rec.iterate, cfg.T, "diff_u", rec.diff_u);
        norms_csv.row(rec.iterate, cfg.T, "diff_b", rec.diff_b);
        if (rec.iterate >= 2) diffs.push_back(std::max(rec.diff_u, rec.diff_b));
        all_hold = all_hold && rec.membership.all_hold;
    }
    write_text_atomic(outdir / "scheme_norms.csv", norms_csv.str());
    write_text_atomic(outdir / "y_membership.csv", y_csv.str());

    if (m.has("save_state")) {
        const std::filesystem::path prefix = outdir / m.get("save_state");
        std::filesystem::path pu = prefix, pb = prefix;
        pu += "_u";
        pb += "_b";
        save_vector_field(pu, run.final_state.u.states.back());
        save_vector_field(pb, run.final_state.b.states.back());
    }

    CommandResult res;
    const double ratio = fit_decay_ratio(diffs);
    res.checks["picard_decay_ratio"] = ratio;
    res.checks["M"] = run.iterations.front().membership.M;
    res.checks["C0"] = run.iterations.front().membership.C0;
    res.checks["y_membership_all_iterations"] = all_hold;
    const bool decay_ok = diffs.size() < 4 || (ratio > 0.0 && ratio < 0.9);
    res.checks["picard_decay_geometric"] = decay_ok;
    res.exit_code = (all_hold && decay_ok) ? 0 : 1;
    return res;
}

CommandResult do_check_inequalities(const Manifest& m, const std::filesystem::path& outdir) {
    const int d = int(m.get_int("d", 2));
    const int n = int(m.get_int("n", 64));
    const int count = int(m.get_int("count", 100));
    const double alpha = m.get_num("alpha", 0.6);
    Grid grid(d, n);
    DyadicPartition part = DyadicPartition::build(grid);
    Rng rng(m.seed);

    CsvBuilder csv("check,variant,j,n,lhs,rhs,ratio");
    CommandResult res;

    // partition of unity on dense radial samples
    {
        double worst = 0.0;
        const double rmax = mode_table(grid).max_radius;
        for (int i = 0; i < 10000; ++i) {
            const double r = rmax * double(i) / 9999.0;
            double s = part.phi(r);
            for (int j = 0; j <= part.j_max() + 2; ++j) s += part.psi(std::ldexp(r, -j));
            worst = std::max(worst, std::fabs(s - 1.0));
        }
        csv.row("partition_unity", "-", 0, n, worst, 1e-12, worst / 1e-12);
        res.checks["partition_unity_residual"] = worst;
        res.checks["partition_unity_ok"] = worst <= 1e-12;
    }

    // bernstein ensemble
    {
        bool ok = true;
        for (int j = 0; j <= part.j_max(); ++j) {
            for (int trial = 0; trial < count; ++trial) {
                Rng sub = rng.fork(std::uint64_t(1000 + j * count + trial));
                SpectralField f =
                    delta_j_wide(part, random_real_field(grid, sub), j, Flavor::Homogeneous);
                if (l2_norm(f) == 0.0) continue;
                BernsteinReport rep = bernstein_check(part, f, j, alpha, 2.0, 2.0);
                ok = ok && rep.upper.ratio >= rep.forced_min * (1.0 - 1e-10) &&
                     rep.upper.ratio <= rep.forced_max * (1.0 + 1e-10);
                if (trial < 3)
                    csv.row("bernstein", "upper", j, n, rep.upper.lhs, rep.upper.rhs_unit_constant,
                            rep.upper.ratio);
            }
        }
        res.checks["bernstein_in_interval"] = ok;
    }

    // triple-product bounds
    {
        const char* names[3] = {"A4", "A5", "A6"};
        const TripleVariant variants[3] = {TripleVariant::A4, TripleVariant::A5, TripleVariant::A6};
        json maxima;
        for (int v = 0; v < 3; ++v) {
            std::vector<RatioReport> reports;
            const int triples = std::max(1, count / 10);
            for (int trial = 0; trial < triples; ++trial) {
                Rng sub = rng.fork(std::uint64_t(2000 + v * triples + trial));
                VectorField F = random_solenoidal_field(grid, sub);
                VectorField G = random_solenoidal_field(grid, sub);
                VectorField H = random_solenoidal_field(grid, sub);
                for (int j = -1; j <= part.j_max(); ++j)
                    reports.push_back(triple_product_bound_check(part, F, G, H, j, variants[v]));
            }
            double ens_max = 0.0;
            for (const auto& rep : reports) ens_max = std::max(ens_max, rep.ratio);
            for (auto& rep : reports) rep.ensemble_max_ratio = ens_max;
            const int per_trial = part.j_max() + 2;
            for (int i = 0; i < per_trial && i < int(reports.size()); ++i)
                csv.row("triple_product", names[v], reports[std::size_t(i)].j, n,
                        reports[std::size_t(i)].lhs, reports[std::size_t(i)].rhs_unit_constant,
                        reports[std::size_t(i)].ratio);
            maxima[names[v]] = ens_max;
        }
        res.checks["triple_product_max_ratio"] = maxima;
    }

    // cancellation identity
    {
        double worst = 0.0;
        const int triples = std::max(1, count / 2);
        for (int trial = 0; trial < triples; ++trial) {
            Rng sub = rng.fork(std::uint64_t(3000 + trial));
            VectorField b = random_solenoidal_field(grid, sub);
            SpectralField f = random_real_field(grid, sub);
            SpectralField g = random_real_field(grid, sub);
            for (int j = -1; j <= part.j_max(); ++j) {
                const double raw = cancellation_check(part, b, f, g, j);
                const double rel = raw / cancellation_scale(part, b, f, g, j);
                worst = std::max(worst, rel);
                if (trial == 0) csv.row("cancellation", "-", j, n, raw, 1e-11, rel / 1e-11);
            }
        }
        res.checks["cancellation_max_normalized"] = worst;
        res.checks["cancellation_ok"] = worst <= 1e-11;
    }

    // product law at the critical indices
    {
        Rng sub = rng.fork(4000);
        RandomFieldOpts opts;
        opts.kmax = double(n) / 8.0;
        SpectralField f = random_real_field(grid, sub, opts);
        SpectralField g = random_real_field(grid, sub, opts);
        RatioReport rep = product_law_check(part, f, g, 0.5 * d, 0.5 * d, 2.0);
        csv.row("product_law", "-", 0, n, rep.lhs, rep.rhs_unit_constant, rep.ratio);
        res.checks["product_law_ratio"] = rep.ratio;
        res.checks["product_law_finite"] = std::isfinite(rep.ratio);
    }

    write_text_atomic(outdir / "checks.csv", csv.str());
    const bool pass = res.checks["partition_unity_ok"].get<bool>() &&
                      res.checks["bernstein_in_interval"].get<bool>() &&
                      res.checks["cancellation_ok"].get<bool>() &&
                      res.checks["product_law_finite"].get<bool>();
    res.exit_code = pass ? 0 : 1;
    return res;
}

CommandResult do_verify_uniqueness(const Manifest& m, const std::filesystem::path& outdir) {
    SchemeConfig cfg = scheme_config_from(m);
    Grid grid(cfg.d, cfg.n);
    DyadicPartition part = DyadicPartition::build(grid);
    Rng rng(m.seed);
    auto [u0, b0] = make_initial_data(m.get("initial_data", "taylor-green(0.05)"), grid, rng);
    if (m.has("initial_data_b")) b0 = make_initial_field(m.get("initial_data_b"), grid, rng);

    const double eps = m.get_num("epsilon", 0.0);
    VectorField u0_b = u0;
    if (eps != 0.0) {
        std::array<int, 3> mode{1, 0, 0};
        if (m.has("perturb_mode")) {
            std::istringstream in(m.get("perturb_mode"));
            std::string tok;
            int axis = 0;
            while (std::getline(in, tok, ',') && axis < 3) mode[std::size_t(axis++)] = std::stoi(tok);
        }
        u0_b = u0 + single_solenoidal_mode(grid, mode, eps);
        u0_b.solenoidal = true;
    }

    PicardRun r1 = run_picard(part, u0, b0, cfg);
    PicardRun r2 = run_picard(part, u0_b, b0, cfg);
    DifferencePair pair = make_difference_pair(r1.final_state, r2.final_state, cfg.regime);
    GronwallCertificate cert = gronwall_verify(part, pair, cfg);

    CsvBuilder csv("t,energy,Q1,Q2,Q3,Q4,Q5,coefficient,bound_ok");
    double q2_worst = 0.0;
    for (std::size_t i = 0; i < pair.tilde_u.samples(); ++i) {
        QTerms q = q_decomposition(pair, i);
        const double scale =
            q2_scale(pair.sol2.b.states[i], pair.tilde_u.states[i], pair.tilde_b.states[i]);
        q2_worst = std::max(q2_worst, std::fabs(q.q2) / scale);
        csv.row(cert.times[i], cert.energy[i], q.q1, q.q2, q.q3, q.q4, q.q5, cert.coefficient[i],
                cert.bound_satisfied);
    }
    write_text_atomic(outdir / "uniqueness.csv", csv.str());

    CommandResult res;
    res.checks["final_energy"] = cert.energy.back();
    res.checks["bound_ok"] = cert.bound_satisfied;
    res.checks["growth_factor_T"] = cert.growth_factor.back();
    res.checks["q2_max_normalized"] = q2_worst;
    res.checks["identical_data"] = (eps == 0.0);
    bool pass = cert.bound_satisfied && q2_worst <= 1e-11;
    if (eps == 0.0) pass = pass && cert.energy.back() <= 1e-20;
    res.exit_code = pass ? 0 : 1;
    return res;
}

CommandResult do_norms(const Manifest& m, const std::filesystem::path& outdir) {
    const int d = int(m.get_int("d", 2));
    const int n = int(m.get_int("n", 64));
    Grid grid(d, n);
    DyadicPartition part = DyadicPartition::build(grid);
    Rng rng(m.seed);
    VectorField u = make_initial_field(m.get("initial_data", "taylor-green(1.0)"), grid, rng);

    NormSpec spec;
    spec.s = m.get_num("s", 0.0);
    spec.p = m.get_num("p", 2.0);
    spec.q = m.get_num("q", 2.0);
    spec.flavor = m.get("flavor", "inhomogeneous") == "homogeneous" ? Flavor::Homogeneous
                                                                    : Flavor::Inhomogeneous;

    CsvBuilder csv("norm_name,value");
    csv.row("L2", l2_norm(u));
    const double besov = besov_norm(part, u, spec);
    csv.row("besov", besov);
    for (int c = 0; c < u.dim(); ++c) {
        csv.row("besov_c" + std::to_string(c), besov_norm(part, u[c], spec));
        csv.row("tail_c" + std::to_string(c), besov_tail_weight(part, u[c], spec));
    }
    if (m.has("r")) {
        NormSpec cl = spec;
        cl.r = m.get_num("r", 2.0);
        const double T = m.get_num("T", 1.0);
        FieldTrajectory traj;
        for (int i = 0; i <= 16; ++i) {
            traj.times.push_back(T * double(i) / 16.0);
            traj.states.push_back(u);
        }
        csv.row("chemin_lerner_constant_traj", chemin_lerner_norm(part, traj, cl));
    }
    write_text_atomic(outdir / "norms.csv", csv.str());

    CommandResult res;
    res.checks["besov"] = besov;
    res.exit_code = 0;
    return res;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"fracmhd: pseudo-spectral laboratory for non-resistive fractional MHD"};
    app.require_subcommand(1);

    std::string manifest_path;
    std::string output_dir;
    int threads = 0;

    const std::vector<std::string> commands = {"run-scheme", "check-inequalities",
                                               "verify-uniqueness", "norms"};
    std::map<std::string, CLI::App*> subs;
    for (const auto& name : commands) {
        CLI::App* sub = app.add_subcommand(name);
        sub->add_option("--manifest", manifest_path, "manifest file (key = value lines)")
            ->required();
        sub->add_option("--output", output_dir, "output directory (overrides manifest)");
        sub->add_option("--threads", threads, "worker thread cap (default: machine parallelism)");
        subs[name] = sub;
    }

    CLI11_PARSE(app, argc, argv);
    std::string command;
    for (const auto& [name, sub] : subs)
        if (sub->parsed()) command = name;

    std::string text;
    {
        std::ifstream in(manifest_path);
        if (!in) {
            std::cerr << "fracmhd: cannot open manifest '" << manifest_path << "'\n";
            return 2;
        }
        std::ostringstream ss;
        ss << in.rdbuf();
        text = ss.str();
    }

    ParseResult parsed = parse_manifest(text, command);
    if (!parsed.ok()) {
        for (const auto& e : parsed.errors) {
            if (e.line > 0)
                std::cerr << "fracmhd: manifest line " << e.line << ": " << e.message << "\n";
            else
                std::cerr << "fracmhd: manifest: " << e.message << "\n";
        }
        return 2;
    }
    Manifest m = *parsed.manifest;

    if (threads <= 0) threads = int(m.get_int("threads", 0));
    kernels::set_threads(threads);

    std::filesystem::path outdir = output_dir.empty() ? m.output_dir : output_dir;
    std::error_code ec;
    std::filesystem::create_directories(outdir, ec);

    const auto t0 = std::chrono::steady_clock::now();
    CommandResult result;
    try {
        if (command == "run-scheme")
            result = do_run_scheme(m, outdir);
        else if (command == "check-inequalities")
            result = do_check_inequalities(m, outdir);
        else if (command == "verify-uniqueness")
            result = do_verify_uniqueness(m, outdir);
        else
            result = do_norms(m, outdir);
    } catch (const std::invalid_argument& e) {
        std::cerr << "fracmhd: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "fracmhd: " << e.what() << "\n";
        return 1;
    }
    const double wall =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    json summary;
    summary["command"] = command;
    summary["config"] = config_json(m);
    summary["checks"] = result.checks;
    summary["pass"] = (result.exit_code == 0);
    summary["wall_time"] = wall;
    write_text_atomic(outdir / "summary.json", summary.dump(2) + "\n");

    std::cout << summary.dump(2) << "\n";
    return result.exit_code;
}
