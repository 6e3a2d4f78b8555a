// witnesskit: command-line front end for generating, classifying and sweeping
// linear maps on Hermitian matrices. All reports are JSON on stdout.

#include "witnesskit/errors.hpp"
#include "witnesskit/io.hpp"
#include "witnesskit/parallel.hpp"
#include "witnesskit/probe.hpp"
#include "witnesskit/sweep.hpp"
#include "witnesskit/witness.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

namespace wk = witnesskit;
using wk::io::json;

namespace {

enum ExitCode : int {
    kOk = 0,
    kBadInput = 2,
    kCounterexample = 3,
    kNotPreserver = 4,
    kUnclassified = 5,
    kIndefinite = 6,
    kZero = 7,
};

constexpr const char* kExitTable =
    "Exit codes:\n"
    "  0  success (classify: symmetry)\n"
    "  2  bad arguments, malformed input or violated precondition\n"
    "  3  classify: counterexample family (theta after a symmetry)\n"
    "  4  classify: not a preserver; sweep: a verdict contradicted the expected table\n"
    "  5  classify: preserver, unclassified\n"
    "  6  project: indefinite input\n"
    "  7  project: zero input\n";

struct Common {
    int n = 0;
    int k = 0;
    std::uint64_t seed = 0;
    int samples = 200;
    std::string tol_profile = "desk";
    std::string out;
};

void print(const json& j)
{
    std::cout << wk::io::dump(j);
}

std::string sidecar_path(const std::string& out)
{
    const std::string ext = ".json";
    if (out.size() > ext.size() && out.compare(out.size() - ext.size(), ext.size(), ext) == 0)
        return out.substr(0, out.size() - ext.size()) + ".symop.json";
    return out + ".symop.json";
}

// Full-rank state from a Haar rotation of a flat Dirichlet spectrum.
wk::HermitianOperator random_full_rank_state(int n, std::uint64_t seed)
{
    std::mt19937_64 rng(wk::derive_seed(seed, 0));
    std::exponential_distribution<double> expo(1.0);
    wk::RVector w(n);
    for (int i = 0; i < n; ++i) w(i) = expo(rng) + 1e-3;
    w /= w.sum();
    const wk::CMatrix u = wk::random_haar_unitary(n, wk::derive_seed(seed, 1));
    return wk::HermitianOperator(u * w.cast<wk::Complex>().asDiagonal() * u.adjoint());
}

// ---------------------------------------------------------------------------

struct GenArgs {
    Common c;
    std::string family;
    std::string unitary_path;
    bool k_given = false;
};

int cmd_gen(const GenArgs& a)
{
    const int n = a.c.n;
    wk::require(n >= 2, "--n must be >= 2");
    wk::require(!a.c.out.empty(), "--out is required");

    const bool theta_family = a.family == "theta" || a.family == "theta-u";
    int k = a.c.k;
    if (theta_family) {
        if (!a.k_given) {
            wk::require(n % 2 == 0, "theta families need even n");
            k = n / 2;
        }
        wk::require(k >= 1 && n == 2 * k, "theta families need n = 2k");
    }

    std::optional<wk::CMatrix> u;
    if (!a.unitary_path.empty()) {
        u = wk::io::complex_matrix_from_json(wk::io::read_json_file(a.unitary_path));
        if (u->rows() != n) throw wk::DimensionMismatch("--unitary dimension differs from --n");
    }
    auto make_u = [&] { return u ? *u : wk::random_haar_unitary(n, a.c.seed); };

    std::optional<wk::HermMap> map;
    std::optional<wk::SymmetryOp> generator;
    if (a.family == "ad-unitary" || a.family == "ad-antiunitary") {
        const auto kind = a.family == "ad-unitary" ? wk::SymmetryKind::unitary : wk::SymmetryKind::antiunitary;
        generator.emplace(kind, make_u());
        map = wk::ad_symmetry(*generator);
    } else if (a.family == "theta") {
        map = wk::theta(k);
    } else if (a.family == "theta-u") {
        generator.emplace(wk::SymmetryKind::unitary, make_u());
        map = wk::theta_u(*generator, k);
    } else if (a.family == "theta-u-antiunitary") {
        wk::require(n % 2 == 0 && (!a.k_given || n == 2 * k), "theta families need n = 2k");
        generator.emplace(wk::SymmetryKind::antiunitary, make_u());
        map = wk::theta_u(*generator, n / 2);
    } else if (a.family == "trace-to-state") {
        map = wk::trace_to_state(random_full_rank_state(n, a.c.seed));
    } else {
        throw wk::PreconditionError("unknown family '" + a.family + "'");
    }

    wk::io::write_json_file(a.c.out, wk::io::to_json(*map));
    json summary{{"format", "gen-v1"}, {"family", a.family}, {"n", n}, {"seed", a.c.seed}, {"map", a.c.out}};
    if (generator) {
        const std::string side = sidecar_path(a.c.out);
        wk::io::write_json_file(side, wk::io::to_json(*generator));
        summary["symmetry"] = side;
    }
    print(summary);
    return kOk;
}

// ---------------------------------------------------------------------------

struct ClassifyArgs {
    Common c;
    std::string map_path;
};

int cmd_classify(const ClassifyArgs& a)
{
    const wk::HermMap f = wk::io::hermmap_from_json(wk::io::read_json_file(a.map_path));
    wk::require(a.c.k >= 1 && a.c.k < f.dim(), "--k must satisfy 1 <= k < n");
    wk::ClassifyConfig cfg;
    cfg.tol = wk::tolerance_profile(a.c.tol_profile);
    cfg.samples = a.c.samples;
    cfg.seed = a.c.seed;
    wk::require(cfg.samples >= 1, "--samples must be >= 1");
    const wk::Classification cls = wk::classify(f, a.c.k, cfg);
    json report = wk::io::to_json(cls, f.dim(), a.c.k, a.c.seed);
    report["tol_profile"] = a.c.tol_profile;
    print(report);
    switch (cls.verdict) {
    case wk::Verdict::symmetry: return kOk;
    case wk::Verdict::counterexample_family: return kCounterexample;
    case wk::Verdict::not_preserver: return kNotPreserver;
    case wk::Verdict::preserver_unclassified: return kUnclassified;
    }
    return kUnclassified;
}

// ---------------------------------------------------------------------------

struct SweepArgs {
    Common c;
    std::string n_range = "2..6";
    std::string k_rule = "all";
    int trials = 10;
    int cap = wk::kDefaultDimensionCap;
    std::string format = "json";
};

std::pair<int, int> parse_range(const std::string& s)
{
    try {
        const auto dots = s.find("..");
        if (dots == std::string::npos) {
            const int v = std::stoi(s);
            return {v, v};
        }
        return {std::stoi(s.substr(0, dots)), std::stoi(s.substr(dots + 2))};
    } catch (const std::exception&) {
        throw wk::PreconditionError("--n range must look like 'lo..hi' or 'n'");
    }
}

int cmd_sweep(const SweepArgs& a)
{
    const auto [lo, hi] = parse_range(a.n_range);
    wk::require(lo <= hi, "--n range is empty");
    wk::KRule rule = wk::KRule::custom;
    std::vector<int> custom;
    if (a.k_rule == "all") {
        rule = wk::KRule::all;
    } else if (a.k_rule == "half") {
        rule = wk::KRule::half;
    } else {
        std::stringstream ss(a.k_rule);
        std::string item;
        while (std::getline(ss, item, ',')) {
            try {
                custom.push_back(std::stoi(item));
            } catch (const std::exception&) {
                throw wk::PreconditionError("--k must be 'all', 'half' or a comma-separated list");
            }
        }
    }
    wk::require(a.format == "json" || a.format == "csv", "--format must be json or csv");

    wk::SweepConfig cfg;
    cfg.grid = wk::make_grid(lo, hi, rule, custom);
    cfg.trials = a.trials;
    cfg.seed = a.c.seed;
    cfg.samples = a.c.samples;
    cfg.tol = wk::tolerance_profile(a.c.tol_profile);
    cfg.dimension_cap = a.cap;
    wk::require(lo >= 2 && hi <= a.cap, "--n range must lie within [2, cap]; raise --cap for larger n");
    wk::validate(cfg);

    const wk::SweepReport report = wk::witness_sweep(cfg);
    json full = wk::io::to_json(report, a.c.seed);
    if (!a.c.out.empty()) {
        if (a.format == "csv") {
            std::ofstream out(a.c.out);
            if (!out) throw wk::FormatError("cannot write '" + a.c.out + "'");
            out << wk::io::to_csv(report);
        } else {
            wk::io::write_json_file(a.c.out, full);
        }
    }
    full.erase("entries");
    full["entry_count"] = report.entries.size();
    print(full);
    return report.contradictions == 0 ? kOk : kNotPreserver;
}

// ---------------------------------------------------------------------------

struct CheckArgs {
    Common c;
    std::string candidate = "projections";
};

int cmd_check_witness(const CheckArgs& a)
{
    const int n = a.c.n;
    const int k = a.c.k;
    wk::require(n >= 2, "--n must be >= 2");
    wk::require(k >= 1 && k <= n, "--k must satisfy 1 <= k <= n");
    wk::require(a.c.samples >= 1, "--samples must be >= 1");
    wk::require(a.candidate == "projections" || a.candidate == "uniform-states",
                "--candidate must be projections or uniform-states");
    const bool uniform = a.candidate == "uniform-states";
    const wk::Tolerances tol = wk::tolerance_profile(a.c.tol_profile);

    int invariant = 0;
    double max_pi_error = 0.0;
    for (int i = 0; i < a.c.samples; ++i) {
        const std::uint64_t s = wk::derive_seed(a.c.seed, static_cast<std::uint64_t>(i));
        const wk::Projection p = wk::random_projection(n, k, s);
        const auto kind = i % 2 == 0 ? wk::SymmetryKind::unitary : wk::SymmetryKind::antiunitary;
        const wk::SymmetryOp sym(kind, wk::random_haar_unitary(n, wk::derive_seed(s, 1)));
        if (uniform) {
            const wk::DensityOperator rho = wk::uniform_state(p);
            const auto rank = wk::is_uniform_state(wk::DensityOperator(sym.apply(rho.op())), tol.projection);
            invariant += rank && *rank == k ? 1 : 0;
            const wk::DensityOperator pi = wk::pi_project(p.op());
            max_pi_error = std::max(max_pi_error, wk::distance(pi.op(), rho.op()));
        } else {
            const auto rank = wk::is_projection(sym.apply(p.op()), tol.projection);
            invariant += rank && *rank == k ? 1 : 0;
        }
    }
    const int span = wk::span_dimension(n, k, a.c.samples, a.c.seed);
    json report{{"format", "check-witness-v1"},
                {"candidate", a.candidate},
                {"n", n},
                {"k", k},
                {"seed", a.c.seed},
                {"samples", a.c.samples},
                {"invariance_pass_fraction", double(invariant) / a.c.samples},
                {"invariance", invariant == a.c.samples},
                {"span_dimension", span},
                {"span_target", n * n},
                {"candidate_by_span", span == n * n}};
    if (span != n * n) {
        report["note"] = k == n ? "not a candidate by span: the set is a single element"
                                : "not a candidate by span (or too few samples)";
    }
    if (uniform) {
        report["pi_max_error"] = max_pi_error;
        report["pi_match"] = max_pi_error < 1e-12;
    }
    print(report);
    return kOk;
}

// ---------------------------------------------------------------------------

json vector_to_json(const wk::CVector& v)
{
    std::vector<double> re(v.size());
    std::vector<double> im(v.size());
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        re[static_cast<std::size_t>(i)] = v(i).real();
        im[static_cast<std::size_t>(i)] = v(i).imag();
    }
    return json{{"re", re}, {"im", im}};
}

int cmd_decompose(const Common& c)
{
    wk::require(c.n >= 2, "--n must be >= 2");
    wk::require(c.k >= 1 && c.k < c.n, "--k must satisfy 1 <= k < n");
    const wk::CVector v = wk::random_unit_vector(c.n, c.seed);
    const auto terms = wk::rank_one_decomposition(v, c.k);
    wk::CMatrix sum = wk::CMatrix::Zero(c.n, c.n);
    json jterms = json::array();
    for (const auto& t : terms) {
        sum += t.coefficient * t.projection.matrix();
        jterms.push_back(json{{"coefficient", t.coefficient},
                              {"rank", t.projection.rank()},
                              {"projection", wk::io::to_json(t.projection.op())}});
    }
    const double err = (sum - v * v.adjoint()).norm();
    print(json{{"format", "decomposition-v1"},
               {"n", c.n},
               {"k", c.k},
               {"seed", c.seed},
               {"vector", vector_to_json(v)},
               {"terms", jterms},
               {"reconstruction_error", err}});
    return kOk;
}

// ---------------------------------------------------------------------------

int cmd_project(const std::string& path)
{
    const wk::HermitianOperator a = wk::io::hermitian_from_json(wk::io::read_json_file(path), &std::cerr);
    const wk::DensityOperator rho = wk::pi_project(a);
    const auto rank = wk::is_uniform_state(rho);
    print(json{{"format", "projection-v1"},
               {"n", a.dim()},
               {"state", wk::io::to_json(rho.op())},
               {"uniform_rank", rank ? json(*rank) : json(nullptr)}});
    return kOk;
}

// ---------------------------------------------------------------------------

struct ProbeArgs {
    Common c;
    int starts = 64;
    int steps = 2000;
};

int cmd_probe(const ProbeArgs& a)
{
    wk::ProbeConfig cfg;
    cfg.n = a.c.n;
    cfg.starts = a.starts;
    cfg.steps = a.steps;
    cfg.seed = a.c.seed;
    cfg.classify.tol = wk::tolerance_profile(a.c.tol_profile);
    cfg.classify.samples = a.c.samples;
    cfg.exec = wk::Execution::serial;
    const wk::ProbeReport report = wk::conjecture_probe(cfg);
    const json j = wk::io::to_json(report, a.c.seed);
    if (!a.c.out.empty()) wk::io::write_json_file(a.c.out, j);
    print(j);
    return kOk;
}

void add_common(CLI::App* app, Common& c, bool with_k)
{
    app->add_option("--n", c.n, "dimension")->required();
    if (with_k) app->add_option("--k", c.k, "projection rank");
    app->add_option("--seed", c.seed, "random seed")->capture_default_str();
    app->add_option("--samples", c.samples, "sample count")->capture_default_str();
    app->add_option("--tol-profile", c.tol_profile, "tolerance profile")
        ->check(CLI::IsMember({"desk", "strict"}))
        ->capture_default_str();
}

} // namespace

int main(int argc, char** argv)
{
    if (const char* env = std::getenv("WITNESSKIT_THREADS")) {
        try {
            wk::set_thread_limit(std::stoi(env));
        } catch (const std::exception&) {
            std::cerr << "ignoring WITNESSKIT_THREADS='" << env << "'\n";
        }
    }

    CLI::App app{"witnesskit: rank-k projection preservers and Wigner symmetries"};
    app.footer(kExitTable);
    app.require_subcommand(1);
    app.set_version_flag("--version", "witnesskit 1.0");

    GenArgs gen;
    auto* gen_cmd = app.add_subcommand("gen", "write a map of a given family as hermmap-v1");
    gen_cmd->add_option("family", gen.family, "ad-unitary|ad-antiunitary|theta|theta-u|theta-u-antiunitary|trace-to-state")
        ->required();
    add_common(gen_cmd, gen.c, true);
    gen_cmd->add_option("--out", gen.c.out, "output path")->required();
    gen_cmd->add_option("--unitary", gen.unitary_path, "complex-matrix JSON to use instead of a Haar sample");

    ClassifyArgs cls;
    auto* cls_cmd = app.add_subcommand("classify", "classify a hermmap-v1 file");
    cls_cmd->add_option("map", cls.map_path, "hermmap-v1 file")->required();
    cls_cmd->add_option("--k", cls.c.k, "projection rank")->required();
    cls_cmd->add_option("--seed", cls.c.seed, "random seed")->capture_default_str();
    cls_cmd->add_option("--samples", cls.c.samples, "preservation samples")->capture_default_str();
    cls_cmd->add_option("--tol-profile", cls.c.tol_profile, "tolerance profile")
        ->check(CLI::IsMember({"desk", "strict"}))
        ->capture_default_str();

    SweepArgs sweep;
    auto* sweep_cmd = app.add_subcommand("sweep", "classify generated maps over an (n, k) grid");
    sweep_cmd->add_option("--n", sweep.n_range, "dimension range lo..hi")->capture_default_str();
    sweep_cmd->add_option("--k", sweep.k_rule, "all|half|comma-separated list")->capture_default_str();
    sweep_cmd->add_option("--trials", sweep.trials, "maps per family and cell")->capture_default_str();
    sweep_cmd->add_option("--seed", sweep.c.seed, "random seed")->capture_default_str();
    sweep_cmd->add_option("--samples", sweep.c.samples, "preservation samples")->capture_default_str();
    sweep_cmd->add_option("--tol-profile", sweep.c.tol_profile, "tolerance profile")
        ->check(CLI::IsMember({"desk", "strict"}))
        ->capture_default_str();
    sweep_cmd->add_option("--cap", sweep.cap, "largest admissible n")->capture_default_str();
    sweep_cmd->add_option("--out", sweep.c.out, "write the full report here");
    sweep_cmd->add_option("--format", sweep.format, "json|csv for --out")->capture_default_str();

    CheckArgs check;
    auto* check_cmd = app.add_subcommand("check-witness", "check a symmetry-witness candidate set");
    check_cmd->add_option("--candidate", check.candidate, "projections|uniform-states")->capture_default_str();
    add_common(check_cmd, check.c, true);
    check_cmd->get_option("--k")->required();

    Common dec;
    auto* dec_cmd = app.add_subcommand("decompose", "write a random pure state over k+1 rank-k projections");
    dec_cmd->add_option("--n", dec.n, "dimension")->required();
    dec_cmd->add_option("--k", dec.k, "projection rank")->required();
    dec_cmd->add_option("--seed", dec.seed, "random seed")->capture_default_str();

    std::string op_path;
    auto* proj_cmd = app.add_subcommand("project", "map a semidefinite operator to |A| / tr|A|");
    proj_cmd->add_option("operator", op_path, "complex-matrix JSON")->required();

    ProbeArgs probe;
    auto* probe_cmd = app.add_subcommand("probe", "heuristic search for other P_{n/2} preservers");
    add_common(probe_cmd, probe.c, false);
    probe_cmd->add_option("--starts", probe.starts, "random starts")->capture_default_str();
    probe_cmd->add_option("--steps", probe.steps, "descent iterations per start")->capture_default_str();
    probe_cmd->add_option("--out", probe.c.out, "also write the report here");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kBadInput;
    }

    try {
        if (*gen_cmd) {
            gen.k_given = gen_cmd->count("--k") > 0;
            return cmd_gen(gen);
        }
        if (*cls_cmd) return cmd_classify(cls);
        if (*sweep_cmd) return cmd_sweep(sweep);
        if (*check_cmd) return cmd_check_witness(check);
        if (*dec_cmd) return cmd_decompose(dec);
        if (*proj_cmd) return cmd_project(op_path);
        if (*probe_cmd) return cmd_probe(probe);
    } catch (const wk::IndefiniteInput& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kIndefinite;
    } catch (const wk::ZeroInput& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kZero;
    } catch (const wk::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kBadInput;
    }
    return kBadInput;
}
