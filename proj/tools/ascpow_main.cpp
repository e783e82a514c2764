// ascpow: circle-method toolkit for sums of ascending even powers.
//
// Subcommands map one-to-one onto library operations; this layer only parses
// flags, loads tables, and serializes reports (JSON by default, CSV where a
// table layout exists).

#include <chrono>
#include <complex>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "ascpow/dickman.hpp"
#include "ascpow/errors.hpp"
#include "ascpow/exponent_set.hpp"
#include "ascpow/holder.hpp"
#include "ascpow/kernels.hpp"
#include "ascpow/ledger.hpp"
#include "ascpow/partition.hpp"
#include "ascpow/repcount.hpp"
#include "ascpow/report.hpp"
#include "ascpow/singular.hpp"
#include "ascpow/version.hpp"

namespace {

using namespace ascpow;

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitUsage = 2;

struct GlobalOpts {
    std::string format = "json";
    std::uint64_t seed = 0;
    unsigned threads = 0; // 0 = hardware
    std::string table_dir;
};

unsigned effective_threads(const GlobalOpts& g) {
    if (g.threads > 0) return g.threads;
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
}

// "2,4,6" or "even:4..266"
ExponentSet parse_exponents(const std::string& spec) {
    if (spec.rfind("even:", 0) == 0) {
        auto range = spec.substr(5);
        auto dots = range.find("..");
        if (dots == std::string::npos) {
            throw ValidationError("exponent range must look like even:4..266");
        }
        int first = std::stoi(range.substr(0, dots));
        int last = std::stoi(range.substr(dots + 2));
        return ExponentSet::even_range(first, last);
    }
    std::vector<int> ks;
    std::stringstream ss(spec);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (!tok.empty()) ks.push_back(std::stoi(tok));
    }
    return ExponentSet(std::move(ks));
}

std::string resolve_table_path(const GlobalOpts& g, const std::string& path) {
    namespace fs = std::filesystem;
    if (fs::exists(path) || g.table_dir.empty() || fs::path(path).is_absolute()) return path;
    fs::path joined = fs::path(g.table_dir) / path;
    return fs::exists(joined) ? joined.string() : path;
}

Json complex_json(std::complex<double> z) {
    Json j;
    j["re"] = j15(z.real());
    j["im"] = j15(z.imag());
    return j;
}

std::string csv_num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.15g", v);
    return buf;
}

class Timer {
public:
    Timer() : start_(std::chrono::steady_clock::now()) {}
    double ms() const {
        auto d = std::chrono::steady_clock::now() - start_;
        return std::chrono::duration<double, std::milli>(d).count();
    }

private:
    std::chrono::steady_clock::time_point start_;
};

void emit(const Json& report) { std::cout << report.dump(2) << "\n"; }

// ---------------------------------------------------------------------------
// subcommands
// ---------------------------------------------------------------------------

int cmd_mu(const GlobalOpts& g, int s) {
    Timer timer;
    auto K = ExponentSet::even_range(2, 2 * s);
    BigRational mu = K.reciprocal_sum();
    Json params{{"s", s}};
    Json results;
    results["mu"] = j15(to_double(mu));
    results["numerator"] = boost::multiprecision::numerator(mu).str();
    results["denominator"] = boost::multiprecision::denominator(mu).str();
    results["terms"] = K.size();
    if (g.format == "csv") {
        std::cout << "s,mu\n" << s << ',' << csv_num(to_double(mu)) << "\n";
    } else {
        emit(run_report("mu", params, results, timer.ms()));
    }
    return kExitOk;
}

int cmd_tables(const GlobalOpts& g, const std::string& lambda_path, const std::string& nu_path,
               bool builtin) {
    Timer timer;
    Json results;
    std::string provenance;
    if (builtin || lambda_path.empty()) {
        const auto& t = LambdaTable::builtin_diagonal();
        results["lambda"] = {{"entries", t.size()}, {"provenance", t.provenance()}};
        provenance = t.provenance();
    } else {
        auto t = LambdaTable::load_csv_file(resolve_table_path(g, lambda_path));
        int k_min = t.entries().begin()->first.first;
        int k_max = t.entries().rbegin()->first.first;
        results["lambda"] = {{"entries", t.size()},
                             {"k_min", k_min},
                             {"k_max", k_max},
                             {"provenance", t.provenance()}};
        provenance = t.provenance();
    }
    if (!nu_path.empty()) {
        auto nu = NuTable::load_csv_file(resolve_table_path(g, nu_path));
        results["nu"] = {{"provenance", nu.provenance()}};
    }
    results["valid"] = true;
    emit(run_report("tables", Json::object(), results, timer.ms(), provenance));
    return kExitOk;
}

int cmd_weights(const GlobalOpts& g, const std::string& k_spec, const std::string& lambda_path,
                bool optimized, int budget) {
    Timer timer;
    auto K = parse_exponents(k_spec);
    HolderAssignment w;
    std::optional<PhiResult> phi_out;
    std::string provenance = "none";
    if (optimized) {
        auto table = lambda_path.empty()
                         ? LambdaTable::builtin_diagonal()
                         : LambdaTable::load_csv_file(resolve_table_path(g, lambda_path));
        provenance = table.provenance();
        auto [ww, pp] = optimize_weights(K, table, budget);
        w = ww;
        phi_out = pp;
    } else {
        w = ford_weights(K);
    }
    if (g.format == "csv") {
        std::cout << "k,a\n";
        for (const auto& [k, a] : w.weights) std::cout << k << ',' << csv_num(a) << "\n";
        return kExitOk;
    }
    Json results;
    Json weights;
    for (const auto& [k, a] : w.weights) weights[std::to_string(k)] = j15(a);
    results["weights"] = std::move(weights);
    results["constraint_residual"] = j15(w.constraint_residual());
    if (phi_out) results["phi"] = j15(phi_out->phi);
    emit(run_report("weights", Json{{"K", k_spec}, {"mode", optimized ? "optimized" : "ford"}},
                    results, timer.ms(), provenance));
    return kExitOk;
}

int cmd_phi(const GlobalOpts& g, const std::string& k_spec, const std::string& lambda_path,
            const std::string& mode, int budget) {
    Timer timer;
    auto K = parse_exponents(k_spec);
    auto table = lambda_path.empty()
                     ? LambdaTable::builtin_diagonal()
                     : LambdaTable::load_csv_file(resolve_table_path(g, lambda_path));
    HolderAssignment w;
    PhiResult r;
    if (mode == "optimized") {
        std::tie(w, r) = optimize_weights(K, table, budget);
    } else {
        w = ford_weights(K);
        r = phi(K, w, table);
    }
    Json results;
    results["phi"] = j15(r.phi);
    results["reciprocal_part"] = j15(r.reciprocal_part);
    Json terms;
    for (const auto& [k, v] : r.per_k_terms) terms[std::to_string(k)] = j15(v);
    results["per_k_terms"] = std::move(terms);
    Json weights;
    for (const auto& [k, a] : w.weights) weights[std::to_string(k)] = j15(a);
    results["weights"] = std::move(weights);
    emit(run_report("phi", Json{{"K", k_spec}, {"mode", mode}}, results, timer.ms(),
                    table.provenance()));
    return kExitOk;
}

int cmd_search(const GlobalOpts& g, const std::string& family, double tau,
               const std::string& predicate, const std::string& lambda_path, int two_s_min,
               int two_s_max, int n_min, int n_max, const std::string& mode) {
    Timer timer;
    auto table = lambda_path.empty()
                     ? LambdaTable::builtin_diagonal()
                     : LambdaTable::load_csv_file(resolve_table_path(g, lambda_path));
    ShapeFamily fam = family == "A" ? ShapeFamily::A : ShapeFamily::B;
    ConstraintPredicate pred =
        predicate == "minor" ? minor_arc_predicate() : replace_f4_predicate();
    SearchBounds bounds;
    bounds.two_s_min = two_s_min;
    bounds.two_s_max = two_s_max;
    bounds.n_min = n_min;
    bounds.n_max = n_max;
    auto res = search_min_s(fam, tau, pred, table, bounds,
                            mode == "optimized" ? WeightMode::Optimized : WeightMode::Ford);
    if (g.format == "csv") {
        std::cout << "tau,2s,n,phi1,phi2,feasible\n"
                  << csv_num(res.tau) << ',' << res.best_2s << ',' << res.best_n << ','
                  << csv_num(res.phi1) << ',' << csv_num(res.phi2) << ','
                  << (res.feasible ? "true" : "false") << "\n";
        return kExitOk;
    }
    Json results;
    results["tau"] = j15(res.tau);
    results["best_2s"] = res.best_2s;
    results["best_n"] = res.best_n;
    results["phi1"] = j15(res.phi1);
    results["phi2"] = j15(res.phi2);
    results["feasible"] = res.feasible;
    results["best_margin"] = j15(res.best_margin);
    emit(run_report("search",
                    Json{{"family", family},
                         {"tau", j15(tau)},
                         {"predicate", predicate},
                         {"two_s_min", two_s_min},
                         {"two_s_max", two_s_max},
                         {"weights", mode}},
                    results, timer.ms(), table.provenance()));
    return kExitOk;
}

int cmd_verify(const GlobalOpts& g, double tau, int s, double kappa, double gamma,
               double epsilon_slack, const std::string& lambda_path, const std::string& mode) {
    Timer timer;
    MethodParams params = paper_params();
    params.tau = tau;
    params.s = s;
    params.kappa = kappa;
    params.gamma = gamma;
    params.epsilon_slack = epsilon_slack;

    StagePhiMap phis;
    std::string provenance;
    if (lambda_path.empty()) {
        phis = paper_stage_phis();
        provenance = "stated-phi-values";
    } else {
        auto table = LambdaTable::load_csv_file(resolve_table_path(g, lambda_path));
        phis = resolve_stage_phis(paper_partitions(), table,
                                  mode == "optimized" ? WeightMode::Optimized : WeightMode::Ford);
        provenance = table.provenance();
    }
    auto reports = full_ledger(params, phis);
    bool pass = overall_pass(reports);

    if (g.format == "csv") {
        std::cout << "stage,achieved_exponent,required_bound,margin,pass\n";
        for (const auto& r : reports) {
            std::cout << r.name << ',' << csv_num(r.achieved) << ',' << csv_num(r.required)
                      << ',' << csv_num(r.margin) << ',' << (r.pass ? "true" : "false") << "\n";
        }
    } else {
        Json results;
        results["stages"] = to_json(reports);
        results["overall_pass"] = pass;
        emit(run_report("verify",
                        Json{{"tau", j15(tau)},
                             {"s", s},
                             {"kappa", j15(kappa)},
                             {"gamma", j15(gamma)},
                             {"epsilon_slack", j15(epsilon_slack)},
                             {"phi_source", provenance}},
                        results, timer.ms(), provenance));
    }
    return pass ? kExitOk : kExitCheckFailed;
}

int cmd_expsum(const GlobalOpts&, const std::string& label, const std::string& kind, unsigned k,
               std::uint64_t n, double gamma, std::optional<double> alpha,
               std::optional<std::int64_t> q, std::optional<std::int64_t> a, double beta) {
    Timer timer;
    Json params{{"kind", kind}, {"k", k}};
    Json results;
    auto arc_or_throw = [&]() {
        if (!q || !a) throw ValidationError("this kind needs --q and --a (and optional --beta)");
        return ArcPoint(*q, *a, beta);
    };
    if (kind == "S") {
        if (!q || !a) throw ValidationError("kind S needs --q and --a");
        auto v = complete_sum_S(k, static_cast<std::uint64_t>(*q), static_cast<std::uint64_t>(*a));
        params["q"] = *q;
        params["a"] = *a;
        results["value"] = complex_json(v);
        results["magnitude"] = j15(std::abs(v));
    } else if (kind == "f" || kind == "g") {
        params["n"] = n;
        SumResult r;
        if (alpha) {
            params["alpha"] = j15(*alpha);
            r = (kind == "f") ? exp_sum_f(k, n, *alpha) : exp_sum_g(k, n, gamma, *alpha);
        } else {
            ArcPoint arc = arc_or_throw();
            params["q"] = arc.q;
            params["a"] = arc.a;
            params["beta"] = j15(arc.beta);
            r = (kind == "f") ? exp_sum_f(k, n, arc) : exp_sum_g(k, n, gamma, arc);
        }
        if (kind == "g") params["gamma"] = j15(gamma);
        results["value"] = complex_json(r.value);
        results["terms"] = r.terms;
        results["empty_range"] = (r.terms == 0);
    } else if (kind == "w") {
        params["n"] = n;
        params["gamma"] = j15(gamma);
        params["beta"] = j15(beta);
        results["value"] = complex_json(w_approx(k, n, gamma, beta));
    } else if (kind == "W" || kind == "delta") {
        ArcPoint arc = arc_or_throw();
        params["n"] = n;
        params["gamma"] = j15(gamma);
        params["q"] = arc.q;
        params["a"] = arc.a;
        params["beta"] = j15(arc.beta);
        auto v = (kind == "W") ? W_approx(k, n, gamma, arc) : delta_k(k, n, gamma, arc);
        results["value"] = complex_json(v);
    } else {
        throw ValidationError("unknown --kind '" + kind + "' (expect S|f|g|w|W|delta)");
    }
    emit(run_report(label, params, results, timer.ms()));
    return kExitOk;
}

int cmd_smooth(const GlobalOpts& g, std::uint64_t X, std::uint64_t Y, bool list) {
    Timer timer;
    auto s = smooth_numbers(X, Y);
    if (g.format == "csv") {
        std::cout << "m\n";
        for (auto m : s.members) std::cout << m << "\n";
        return kExitOk;
    }
    Json results;
    results["count"] = s.members.size();
    results["density"] = j15(static_cast<double>(s.members.size()) / static_cast<double>(X));
    if (list) results["members"] = s.members;
    emit(run_report("smooth", Json{{"X", X}, {"Y", Y}}, results, timer.ms()));
    return kExitOk;
}

int cmd_rho(const GlobalOpts&, double u) {
    Timer timer;
    Json results;
    results["rho"] = j15(dickman_rho(u));
    emit(run_report("rho", Json{{"u", j15(u)}}, results, timer.ms()));
    return kExitOk;
}

int cmd_singular_series(const GlobalOpts& g, std::uint64_t n, std::uint64_t Z,
                        const std::string& k_spec) {
    Timer timer;
    auto K = parse_exponents(k_spec);
    auto r = singular_series(n, Z, K);
    if (g.format == "csv") {
        std::cout << "q,A\n";
        for (const auto& [q, a] : r.terms) std::cout << q << ',' << csv_num(a) << "\n";
        return kExitOk;
    }
    Json results;
    results["partial"] = j15(r.partial);
    results["omega"] = j15(r.omega_floor);
    if (r.tail_bound) {
        results["tail_bound"] = j15(*r.tail_bound);
    } else {
        results["tail_bound"] = nullptr;
        results["tail_note"] =
            "sum of reciprocal exponents <= 2: the q^{1-omega} tail estimate diverges";
    }
    Json terms;
    for (const auto& [q, a] : r.terms) terms[std::to_string(q)] = j15(a);
    results["terms"] = std::move(terms);
    emit(run_report("singular-series", Json{{"n", n}, {"Z", Z}, {"K", k_spec}}, results,
                    timer.ms()));
    return kExitOk;
}

int cmd_chi_p(const GlobalOpts& g, std::uint64_t n, std::uint64_t p, const std::string& k_spec,
              unsigned h_max) {
    Timer timer;
    auto K = parse_exponents(k_spec);
    auto r = chi_p(n, p, K, h_max);
    if (g.format == "csv") {
        std::cout << "p,chi\n" << p << ',' << csv_num(r.value) << "\n";
        return kExitOk;
    }
    Json results;
    results["chi_p"] = j15(r.value);
    results["truncation_estimate"] = j15(r.truncation_estimate);
    emit(run_report("chi-p", Json{{"n", n}, {"p", p}, {"K", k_spec}, {"h_max", h_max}}, results,
                    timer.ms()));
    return kExitOk;
}

int cmd_singular_integral(const GlobalOpts& g, std::uint64_t n, const std::string& k_spec,
                          double gamma, const std::string& mode, std::uint64_t samples) {
    Timer timer;
    auto K = parse_exponents(k_spec);
    IntegralMode m = IntegralMode::Auto;
    if (mode == "exact") m = IntegralMode::Exact;
    if (mode == "mc") m = IntegralMode::MonteCarlo;
    auto r = singular_integral(n, K, gamma, m, samples, g.seed);
    Json results;
    results["value"] = j15(r.value);
    results["infeasible"] = r.infeasible;
    if (r.monte_carlo) {
        results["monte_carlo"] = true;
        results["standard_error"] = j15(r.standard_error);
        results["ci95_half_width"] = j15(1.96 * r.standard_error);
        results["samples"] = r.samples;
    }
    emit(run_report("singular-integral",
                    Json{{"n", n},
                         {"K", k_spec},
                         {"gamma", j15(gamma)},
                         {"mode", mode},
                         {"seed", g.seed}},
                    results, timer.ms()));
    return kExitOk;
}

int cmd_count(const GlobalOpts&, std::uint64_t n, const std::string& k_spec, bool allow_zero,
              bool restricted, double gamma, const std::string& alg) {
    Timer timer;
    CountConfig cfg;
    cfg.K = parse_exponents(k_spec);
    cfg.allow_zero = allow_zero;
    cfg.restricted = restricted;
    cfg.gamma = gamma;
    Json results;
    if (alg == "both") {
        auto direct = count_representations(n, cfg, CountAlgorithm::Direct);
        auto mitm = count_representations(n, cfg, CountAlgorithm::MeetInMiddle);
        results["count"] = direct;
        results["count_direct"] = direct;
        results["count_mitm"] = mitm;
        results["agree"] = (direct == mitm);
    } else {
        CountAlgorithm a = CountAlgorithm::Auto;
        if (alg == "direct") a = CountAlgorithm::Direct;
        if (alg == "mitm") a = CountAlgorithm::MeetInMiddle;
        results["count"] = count_representations(n, cfg, a);
    }
    emit(run_report("count",
                    Json{{"n", n},
                         {"K", k_spec},
                         {"allow_zero", allow_zero},
                         {"restricted", restricted},
                         {"gamma", j15(gamma)},
                         {"alg", alg}},
                    results, timer.ms()));
    return kExitOk;
}

int cmd_density(const GlobalOpts& g, std::uint64_t N, const std::string& k_spec,
                bool allow_zero) {
    Timer timer;
    CountConfig cfg;
    cfg.K = parse_exponents(k_spec);
    cfg.allow_zero = allow_zero;
    auto rows = density_scan(N, cfg);
    if (g.format == "csv") {
        std::cout << "decade,upper,representable,fraction\n";
        for (const auto& r : rows) {
            std::cout << r.decade << ',' << r.upper << ',' << r.representable << ','
                      << csv_num(r.fraction) << "\n";
        }
        return kExitOk;
    }
    Json results = Json::array();
    for (const auto& r : rows) {
        results.push_back(Json{{"decade", r.decade},
                               {"upper", r.upper},
                               {"representable", r.representable},
                               {"fraction", j15(r.fraction)}});
    }
    emit(run_report("density", Json{{"N", N}, {"K", k_spec}, {"allow_zero", allow_zero}},
                    results, timer.ms()));
    return kExitOk;
}

int cmd_scan_minor(const GlobalOpts& g, std::uint64_t n, double tau, std::size_t samples) {
    Timer timer;
    auto r = minor_arc_scan(n, tau, samples, g.seed, effective_threads(g));
    Json results;
    results["kept"] = r.kept;
    results["rejected"] = r.rejected;
    results["max_ratio"] = j15(r.max_ratio);
    results["median"] = j15(r.median);
    results["q90"] = j15(r.q90);
    results["q99"] = j15(r.q99);
    results["envelope_exponent"] = j15(-tau / 2.0);
    emit(run_report("scan-minor",
                    Json{{"n", n}, {"tau", j15(tau)}, {"samples", samples}, {"seed", r.seed}},
                    results, timer.ms()));
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"circle-method toolkit: exponent tables, Hoelder weights, stage inequalities, "
                 "exponential sums, singular series, representation counts"};
    app.require_subcommand(1);

    GlobalOpts g;
    if (const char* dir = std::getenv("ASCPOW_TABLE_DIR")) g.table_dir = dir;
    app.add_option("--format", g.format, "Output format: json or csv")
        ->check(CLI::IsMember({"json", "csv"}))
        ->capture_default_str();
    app.add_option("--seed", g.seed, "Random seed for sampling subcommands")
        ->capture_default_str();
    app.add_option("--threads", g.threads, "Worker threads (0 = all cores)")
        ->capture_default_str();
    app.add_option("--table-dir", g.table_dir,
                   "Directory searched for relative table paths (env ASCPOW_TABLE_DIR)");

    // mu
    int mu_s = 133;
    auto* mu = app.add_subcommand("mu", "Reciprocal exponent sum over {2, 4, ..., 2s}");
    mu->add_option("--s", mu_s, "Number of even exponents")->capture_default_str();

    // tables
    std::string tb_lambda, tb_nu;
    bool tb_builtin = false;
    auto* tables = app.add_subcommand("tables", "Validate and summarize exponent tables");
    tables->add_option("--lambda", tb_lambda, "lambda table CSV (k,s,lambda)");
    tables->add_option("--nu", tb_nu, "nu table CSV (h,k,x,nu)");
    tables->add_flag("--builtin", tb_builtin, "Use the bundled diagonal table");

    // weights
    std::string w_k = "2,4,6", w_lambda;
    bool w_opt = false;
    int w_budget = 40;
    auto* weights = app.add_subcommand("weights", "Hoelder weights for an exponent set");
    weights->add_option("--K", w_k, "Exponents, e.g. 4,6,8 or even:6..52")->required();
    weights->add_option("--lambda", w_lambda, "lambda table CSV (needed with --optimized)");
    weights->add_flag("--optimized", w_opt, "Run the constrained descent from the seed");
    weights->add_option("--budget", w_budget, "Descent sweeps")->capture_default_str();

    // phi
    std::string p_k, p_lambda, p_mode = "ford";
    int p_budget = 40;
    auto* phi_cmd = app.add_subcommand("phi", "Mean-value exponent phi for an exponent set");
    phi_cmd->add_option("--K", p_k, "Exponents")->required();
    phi_cmd->add_option("--lambda", p_lambda, "lambda table CSV (default: bundled diagonal)");
    phi_cmd->add_option("--weights", p_mode, "ford or optimized")
        ->check(CLI::IsMember({"ford", "optimized"}))
        ->capture_default_str();
    phi_cmd->add_option("--budget", p_budget, "Descent sweeps")->capture_default_str();

    // search
    std::string s_family = "A", s_pred = "minor", s_lambda, s_mode = "ford";
    double s_tau = 0.3935;
    int s_2s_min = 4, s_2s_max = 0, s_n_min = 0, s_n_max = 0;
    auto* search = app.add_subcommand("search", "Minimal 2s satisfying a stage predicate");
    search->add_option("--family", s_family, "Partition family: A or B")
        ->check(CLI::IsMember({"A", "B"}))
        ->capture_default_str();
    search->add_option("--tau", s_tau, "Major-arc exponent")->capture_default_str();
    search->add_option("--predicate", s_pred, "minor or f4")
        ->check(CLI::IsMember({"minor", "f4"}))
        ->capture_default_str();
    search->add_option("--lambda", s_lambda, "lambda table CSV");
    search->add_option("--two-s-min", s_2s_min, "Smallest 2s scanned")->capture_default_str();
    search->add_option("--two-s-max", s_2s_max, "Largest 2s scanned")->required();
    search->add_option("--n-min", s_n_min, "Smallest split point");
    search->add_option("--n-max", s_n_max, "Largest split point");
    search->add_option("--weights", s_mode, "ford or optimized")
        ->check(CLI::IsMember({"ford", "optimized"}));

    // verify
    double v_tau = 0.3935, v_kappa = 0.25, v_gamma = 0.05, v_eps = 0.0;
    int v_s = 133;
    std::string v_lambda, v_mode = "ford";
    auto* verify = app.add_subcommand("verify", "Evaluate every stage inequality of the chain");
    verify->add_option("--tau", v_tau, "Major-arc exponent")->capture_default_str();
    verify->add_option("--s", v_s, "Number of even exponents")->capture_default_str();
    verify->add_option("--kappa", v_kappa, "Second-prune exponent")->capture_default_str();
    verify->add_option("--gamma", v_gamma, "Smoothness exponent")->capture_default_str();
    verify->add_option("--epsilon-slack", v_eps, "Slack subtracted from every margin")
        ->capture_default_str();
    verify->add_option("--lambda", v_lambda,
                       "Full lambda table CSV; recomputes the block phis instead of using the "
                       "stated values");
    verify->add_option("--weights", v_mode, "ford or optimized (with --lambda)")
        ->check(CLI::IsMember({"ford", "optimized"}));

    // expsum + gauss
    std::string e_kind = "f";
    unsigned e_k = 2;
    std::uint64_t e_n = 1'000'000;
    double e_gamma = 0.25, e_beta = 0.0;
    std::optional<double> e_alpha;
    std::optional<std::int64_t> e_q, e_a;
    auto* expsum = app.add_subcommand("expsum", "Exponential sums and approximants");
    expsum->add_option("--kind", e_kind, "S, f, g, w, W, or delta")
        ->check(CLI::IsMember({"S", "f", "g", "w", "W", "delta"}))
        ->capture_default_str();
    expsum->add_option("--k", e_k, "Exponent k")->required();
    expsum->add_option("--n", e_n, "Scale n")->capture_default_str();
    expsum->add_option("--gamma", e_gamma, "Smoothness exponent")->capture_default_str();
    expsum->add_option("--alpha", e_alpha, "Evaluation point (f/g)");
    expsum->add_option("--q", e_q, "Arc denominator");
    expsum->add_option("--a", e_a, "Arc numerator");
    expsum->add_option("--beta", e_beta, "Arc offset")->capture_default_str();

    unsigned ga_k = 2;
    std::int64_t ga_q = 1, ga_a = 1;
    auto* gauss = app.add_subcommand("gauss", "Complete sum S_k(q, a)");
    gauss->add_option("--k", ga_k, "Exponent")->required();
    gauss->add_option("--q", ga_q, "Modulus")->required();
    gauss->add_option("--a", ga_a, "Numerator, coprime to q")->required();

    // smooth
    std::uint64_t sm_x = 100, sm_y = 10;
    bool sm_list = false;
    auto* smooth = app.add_subcommand("smooth", "Y-smooth numbers up to X");
    smooth->add_option("--x", sm_x, "Upper bound X")->required();
    smooth->add_option("--y", sm_y, "Smoothness bound Y")->required();
    smooth->add_flag("--list", sm_list, "Include the members in the report");

    // rho
    double r_u = 2.0;
    auto* rho = app.add_subcommand("rho", "Dickman rho function");
    rho->add_option("--u", r_u, "Argument")->required();

    // singular-series
    std::uint64_t ss_n = 6, ss_z = 20;
    std::string ss_k = "2,4,6";
    auto* ss = app.add_subcommand("singular-series", "Truncated singular series");
    ss->add_option("--n", ss_n, "Target integer")->required();
    ss->add_option("--z", ss_z, "Truncation bound")->capture_default_str();
    ss->add_option("--K", ss_k, "Exponents")->capture_default_str();

    // chi-p
    std::uint64_t cp_n = 6, cp_p = 2;
    std::string cp_k = "2,4,6";
    unsigned cp_h = 3;
    auto* cp = app.add_subcommand("chi-p", "Truncated local factor chi_p");
    cp->add_option("--n", cp_n, "Target integer")->required();
    cp->add_option("--p", cp_p, "Prime")->required();
    cp->add_option("--K", cp_k, "Exponents")->capture_default_str();
    cp->add_option("--h-max", cp_h, "Prime-power truncation height")->capture_default_str();

    // singular-integral
    std::uint64_t si_n = 1000, si_samples = 200'000;
    std::string si_k = "2,4", si_mode = "auto";
    double si_gamma = 0.25;
    auto* si = app.add_subcommand("singular-integral", "Archimedean density I(n)");
    si->add_option("--n", si_n, "Target integer")->required();
    si->add_option("--K", si_k, "Exponents")->capture_default_str();
    si->add_option("--gamma", si_gamma, "Smoothness exponent")->capture_default_str();
    si->add_option("--mode", si_mode, "auto, exact, or mc")
        ->check(CLI::IsMember({"auto", "exact", "mc"}))
        ->capture_default_str();
    si->add_option("--samples", si_samples, "Monte Carlo samples")->capture_default_str();

    // count
    std::uint64_t c_n = 0;
    std::string c_k = "2,4,6", c_alg = "auto";
    bool c_zero = false, c_restricted = false;
    double c_gamma = 0.25;
    auto* count = app.add_subcommand("count", "Exact representation count");
    count->add_option("--n", c_n, "Target integer")->required();
    count->add_option("--K", c_k, "Exponents")->capture_default_str();
    count->add_flag("--allow-zero", c_zero, "Permit x = 0");
    count->add_flag("--restricted", c_restricted, "Dyadic/smooth ranges instead of full");
    count->add_option("--gamma", c_gamma, "Smoothness exponent (restricted mode)")
        ->capture_default_str();
    count->add_option("--alg", c_alg, "auto, direct, mitm, or both")
        ->check(CLI::IsMember({"auto", "direct", "mitm", "both"}))
        ->capture_default_str();

    // density
    std::uint64_t d_n = 100'000;
    std::string d_k = "2,4,6";
    bool d_zero = true;
    auto* density = app.add_subcommand("density", "Representable fraction per decade");
    density->add_option("--N", d_n, "Scan bound")->capture_default_str();
    density->add_option("--K", d_k, "Exponents")->capture_default_str();
    density->add_flag("--allow-zero,!--no-allow-zero", d_zero, "Permit x = 0")
        ->capture_default_str();

    // scan-minor
    std::uint64_t mn_n = 1'000'000;
    double mn_tau = 0.3935;
    std::size_t mn_samples = 10'000;
    auto* scan = app.add_subcommand("scan-minor", "Sample |f_2|/f_2(0) over the minor arcs");
    scan->add_option("--n", mn_n, "Scale n")->capture_default_str();
    scan->add_option("--tau", mn_tau, "Major-arc exponent")->capture_default_str();
    scan->add_option("--samples", mn_samples, "Sample count")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (mu->parsed()) return cmd_mu(g, mu_s);
        if (tables->parsed()) return cmd_tables(g, tb_lambda, tb_nu, tb_builtin);
        if (weights->parsed()) return cmd_weights(g, w_k, w_lambda, w_opt, w_budget);
        if (phi_cmd->parsed()) return cmd_phi(g, p_k, p_lambda, p_mode, p_budget);
        if (search->parsed()) {
            return cmd_search(g, s_family, s_tau, s_pred, s_lambda, s_2s_min, s_2s_max, s_n_min,
                              s_n_max, s_mode);
        }
        if (verify->parsed()) {
            return cmd_verify(g, v_tau, v_s, v_kappa, v_gamma, v_eps, v_lambda, v_mode);
        }
        if (expsum->parsed()) {
            return cmd_expsum(g, "expsum", e_kind, e_k, e_n, e_gamma, e_alpha, e_q, e_a, e_beta);
        }
        if (gauss->parsed()) {
            return cmd_expsum(g, "gauss", "S", ga_k, 1, 0.25, std::nullopt, ga_q, ga_a, 0.0);
        }
        if (smooth->parsed()) return cmd_smooth(g, sm_x, sm_y, sm_list);
        if (rho->parsed()) return cmd_rho(g, r_u);
        if (ss->parsed()) return cmd_singular_series(g, ss_n, ss_z, ss_k);
        if (cp->parsed()) return cmd_chi_p(g, cp_n, cp_p, cp_k, cp_h);
        if (si->parsed()) {
            return cmd_singular_integral(g, si_n, si_k, si_gamma, si_mode, si_samples);
        }
        if (count->parsed()) return cmd_count(g, c_n, c_k, c_zero, c_restricted, c_gamma, c_alg);
        if (density->parsed()) return cmd_density(g, d_n, d_k, d_zero);
        if (scan->parsed()) return cmd_scan_minor(g, mn_n, mn_tau, mn_samples);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
