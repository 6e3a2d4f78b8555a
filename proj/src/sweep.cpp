#include "witnesskit/sweep.hpp"

#include "witnesskit/errors.hpp"

#include <chrono>
#include <string>

namespace witnesskit {

namespace {

// Structural predicates of preservers are checked at this tolerance.
constexpr double kStructureTol = 1e-10;
constexpr double kOrthogonalityTol = 1e-9;

struct Job {
    int n;
    int k;
    Family family;
    int trial;
};

bool is_theta_family(Family f)
{
    return f == Family::theta || f == Family::theta_u_unitary || f == Family::theta_u_antiunitary;
}

} // namespace

std::vector<SweepCell> make_grid(int n_lo, int n_hi, KRule rule, const std::vector<int>& custom_k)
{
    std::vector<SweepCell> grid;
    for (int n = n_lo; n <= n_hi; ++n) {
        switch (rule) {
        case KRule::all:
            for (int k = 1; k < n; ++k) grid.push_back({n, k});
            break;
        case KRule::half:
            if (n % 2 == 0) grid.push_back({n, n / 2});
            break;
        case KRule::custom:
            for (int k : custom_k) {
                if (k >= 1 && k < n) grid.push_back({n, k});
            }
            break;
        }
    }
    return grid;
}

void validate(const SweepConfig& cfg)
{
    require(!cfg.grid.empty(), "sweep grid is empty");
    require(cfg.trials >= 1, "trials must be >= 1");
    require(cfg.samples >= 1, "samples must be >= 1");
    require(cfg.orthogonality_samples >= 1, "orthogonality samples must be >= 1");
    for (const auto& c : cfg.grid) {
        require(c.n >= 2 && c.n <= cfg.dimension_cap,
                "sweep dimension " + std::to_string(c.n) + " outside [2, " + std::to_string(cfg.dimension_cap) + "]");
        require(c.k >= 1 && c.k < c.n, "sweep rank must satisfy 1 <= k < n");
    }
}

const char* to_string(Family f)
{
    switch (f) {
    case Family::ad_unitary: return "ad-unitary";
    case Family::ad_antiunitary: return "ad-antiunitary";
    case Family::theta: return "theta";
    case Family::theta_u_unitary: return "theta-u-unitary";
    case Family::theta_u_antiunitary: return "theta-u-antiunitary";
    }
    return "unknown";
}

std::vector<Family> families_for(int n, int k)
{
    std::vector<Family> out{Family::ad_unitary, Family::ad_antiunitary};
    if (n == 2 * k) {
        out.push_back(Family::theta);
        out.push_back(Family::theta_u_unitary);
        out.push_back(Family::theta_u_antiunitary);
    }
    return out;
}

Verdict expected_verdict(int n, int k, Family f)
{
    if (is_theta_family(f) && n == 2 * k && n >= 4) return Verdict::counterexample_family;
    return Verdict::symmetry;
}

std::uint64_t entry_seed(std::uint64_t seed, int n, int k, Family f, int trial)
{
    std::uint64_t s = derive_seed(seed, static_cast<std::uint64_t>(n));
    s = derive_seed(s, static_cast<std::uint64_t>(k));
    s = derive_seed(s, static_cast<std::uint64_t>(f));
    return derive_seed(s, static_cast<std::uint64_t>(trial));
}

GeneratedMap generate_map(int n, int k, Family f, std::uint64_t seed)
{
    const SymmetryKind kind = (f == Family::ad_antiunitary || f == Family::theta_u_antiunitary)
                                  ? SymmetryKind::antiunitary
                                  : SymmetryKind::unitary;
    switch (f) {
    case Family::ad_unitary:
    case Family::ad_antiunitary: {
        SymmetryOp s(kind, random_haar_unitary(n, seed));
        return {ad_symmetry(s), s};
    }
    case Family::theta:
    case Family::theta_u_unitary:
    case Family::theta_u_antiunitary: {
        require(n == 2 * k, "theta families need n = 2k");
        const CMatrix u = f == Family::theta ? CMatrix::Identity(n, n) : random_haar_unitary(n, seed);
        SymmetryOp s(kind, u);
        if (n > 2) return {theta_u(s, k), s};
        // theta(1) is conjugation by the antiunitary sigma_y K, so theta(1) after
        // ad(s) is ad(sigma_y conj(u)) with the flag flipped.
        CMatrix sigma_y(2, 2);
        sigma_y << 0.0, Complex(0.0, -1.0), Complex(0.0, 1.0), 0.0;
        const SymmetryKind flipped = kind == SymmetryKind::unitary ? SymmetryKind::antiunitary : SymmetryKind::unitary;
        return {theta_u(s, k), SymmetryOp(flipped, sigma_y * u.conjugate())};
    }
    }
    throw PreconditionError("unknown map family");
}

SweepReport witness_sweep(const SweepConfig& cfg)
{
    validate(cfg);
    using clock = std::chrono::steady_clock;
    const auto start = clock::now();

    std::vector<Job> jobs;
    for (const auto& c : cfg.grid) {
        for (Family f : families_for(c.n, c.k)) {
            const int count = f == Family::theta ? 1 : cfg.trials;
            for (int t = 0; t < count; ++t) jobs.push_back({c.n, c.k, f, t});
        }
    }

    SweepReport report;
    report.entries.resize(jobs.size());
    for_each_index(cfg.exec, jobs.size(), [&](std::size_t i) {
        const auto t0 = clock::now();
        const Job& job = jobs[i];
        SweepEntry& e = report.entries[i];
        e.n = job.n;
        e.k = job.k;
        e.family = job.family;
        e.trial = job.trial;
        e.seed = entry_seed(cfg.seed, job.n, job.k, job.family, job.trial);

        const GeneratedMap gen = generate_map(job.n, job.k, job.family, e.seed);
        ClassifyConfig ccfg;
        ccfg.tol = cfg.tol;
        ccfg.samples = cfg.samples;
        ccfg.seed = e.seed;
        ccfg.exec = Execution::serial;
        const Classification cls = classify(gen.map, job.k, ccfg);
        e.verdict = cls.verdict;
        e.residual = cls.residual;
        e.trace_preserving = is_trace_preserving(gen.map, kStructureTol);
        e.unital = is_unital(gen.map, kStructureTol);
        e.injective = is_injective(gen.map, kStructureTol);
        if (2 * job.k <= job.n) {
            const auto orth = preserves_orthogonality(gen.map, job.k, cfg.orthogonality_samples,
                                                      kOrthogonalityTol, e.seed, Execution::serial);
            e.orthogonality = orth.pass_fraction == 1.0 && orth.inverse_checked;
        }
        if (cls.symmetry) e.recovery_distance = compare_up_to_phase(*cls.symmetry, gen.expected_symmetry);

        const bool preserver = e.verdict == Verdict::symmetry || e.verdict == Verdict::counterexample_family;
        e.contradiction = e.verdict != expected_verdict(job.n, job.k, job.family);
        if (preserver && !(e.trace_preserving && e.unital && e.injective)) e.contradiction = true;
        if (e.orthogonality && !*e.orthogonality) e.contradiction = true;
        if (cls.symmetry && !(e.recovery_distance && *e.recovery_distance < cfg.tol.phase)) e.contradiction = true;
        e.elapsed_ms = std::chrono::duration<double, std::milli>(clock::now() - t0).count();
    });

    for (const auto& e : report.entries) report.contradictions += e.contradiction ? 1 : 0;
    report.total_ms = std::chrono::duration<double, std::milli>(clock::now() - start).count();
    return report;
}

} // namespace witnesskit
