#include "witnesskit/witness.hpp"

#include "witnesskit/errors.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>

namespace witnesskit {

namespace {

constexpr std::uint64_t kInverseStream = 0x1a2b3c4d5e6f7788ULL;

struct ImageCheck {
    bool pass = false;
    double idempotence_defect = 0.0;
    int rank_defect = 0;
};

ImageCheck check_image(const HermitianOperator& x, int k, double tol)
{
    ImageCheck c;
    c.idempotence_defect = (x.matrix() * x.matrix() - x.matrix()).norm();
    const RVector ev = eigenvalues(x);
    // Hysteresis: an eigenvalue above 1/2 counts toward the rank.
    const int counted = static_cast<int>((ev.array() > 0.5).count());
    c.rank_defect = std::abs(counted - k);
    const auto rank = is_projection(x, tol);
    c.pass = rank && *rank == k && c.idempotence_defect <= tol;
    return c;
}

HermitianOperator unit_matrix(int n, int r, int c)
{
    CMatrix e = CMatrix::Zero(n, n);
    e(r, c) = 1.0;
    return HermitianOperator(e);
}

} // namespace

Tolerances tolerance_profile(std::string_view name)
{
    if (name == "desk") return Tolerances{};
    if (name == "strict") return Tolerances{1e-10, 1e-10, 1e-10};
    throw PreconditionError("unknown tolerance profile '" + std::string(name) + "' (desk|strict)");
}

const char* to_string(Verdict v)
{
    switch (v) {
    case Verdict::symmetry: return "symmetry";
    case Verdict::counterexample_family: return "counterexample-family";
    case Verdict::preserver_unclassified: return "preserver-unclassified";
    case Verdict::not_preserver: return "not-preserver";
    }
    return "unknown";
}

// ---------------------------------------------------------------------------
// Preservation

PreservationReport preserves_projections(const HermMap& f, int k, int samples, double tol,
                                         std::uint64_t seed, Execution exec)
{
    const int n = f.dim();
    require(k >= 1 && k < n, "rank must satisfy 1 <= k < n");
    require(samples >= 1, "need at least one sample");
    require(tol > 0.0, "tolerance must be positive");

    std::optional<HermMap> inv;
    if (is_injective(f)) inv = inverse(f);

    // Slots [0, samples) hold forward checks, [samples, 2*samples) inverse checks.
    const std::size_t total = static_cast<std::size_t>(samples) * (inv ? 2 : 1);
    std::vector<ImageCheck> results(total);
    for_each_index(exec, total, [&](std::size_t i) {
        const bool backward = i >= static_cast<std::size_t>(samples);
        const std::size_t idx = backward ? i - samples : i;
        const std::uint64_t s = backward ? derive_seed(seed ^ kInverseStream, idx) : derive_seed(seed, idx);
        const Projection p = random_projection(n, k, s);
        results[i] = check_image(backward ? inv->apply(p.op()) : f.apply(p.op()), k, tol);
    });

    PreservationReport rep;
    rep.samples = samples;
    rep.checks = static_cast<int>(total);
    rep.inverse_checked = inv.has_value();
    int passed = 0;
    std::size_t worst = 0;
    for (std::size_t i = 0; i < total; ++i) {
        const auto& r = results[i];
        passed += r.pass ? 1 : 0;
        rep.max_rank_defect = std::max(rep.max_rank_defect, r.rank_defect);
        if (i == 0 || r.idempotence_defect > rep.max_idempotence_defect) {
            rep.max_idempotence_defect = r.idempotence_defect;
            worst = i;
        }
    }
    rep.pass_fraction = static_cast<double>(passed) / static_cast<double>(total);
    const bool backward = worst >= static_cast<std::size_t>(samples);
    const std::size_t idx = backward ? worst - samples : worst;
    rep.worst_input = random_projection(
        n, k, backward ? derive_seed(seed ^ kInverseStream, idx) : derive_seed(seed, idx));
    return rep;
}

OrthogonalityReport preserves_orthogonality(const HermMap& f, int k, int samples, double tol,
                                            std::uint64_t seed, Execution exec)
{
    const int n = f.dim();
    require(k >= 1 && 2 * k <= n, "orthogonality test needs 1 <= k and 2k <= n");
    require(samples >= 1, "need at least one sample");
    require(tol > 0.0, "tolerance must be positive");

    std::optional<HermMap> inv;
    if (is_injective(f)) inv = inverse(f);

    const std::size_t total = static_cast<std::size_t>(samples) * (inv ? 2 : 1);
    std::vector<double> norms(total);
    for_each_index(exec, total, [&](std::size_t i) {
        const bool backward = i >= static_cast<std::size_t>(samples);
        const std::size_t idx = backward ? i - samples : i;
        const std::uint64_t s = backward ? derive_seed(seed ^ kInverseStream, idx) : derive_seed(seed, idx);
        const auto [p, q] = random_orthogonal_pair(n, k, s);
        const HermMap& g = backward ? *inv : f;
        norms[i] = (g.apply(p.op()).matrix() * g.apply(q.op()).matrix()).norm();
    });

    OrthogonalityReport rep;
    rep.samples = samples;
    rep.checks = static_cast<int>(total);
    rep.inverse_checked = inv.has_value();
    int passed = 0;
    for (double v : norms) {
        passed += v < tol ? 1 : 0;
        rep.max_product_norm = std::max(rep.max_product_norm, v);
    }
    rep.pass_fraction = static_cast<double>(passed) / static_cast<double>(total);
    return rep;
}

// ---------------------------------------------------------------------------
// Symmetry extraction

std::optional<ExtractedSymmetry> extract_symmetry(const HermMap& f, double tol)
{
    require(tol > 0.0, "tolerance must be positive");
    const int n = f.dim();
    const Complex i1(0.0, 1.0);

    for (int j = 0; j < n; ++j) {
        const auto rank = is_projection(f.apply(unit_matrix(n, j, j)), tol);
        if (!rank || *rank != 1) return std::nullopt;
    }
    const CVector f1 = spectral_decompose(f.apply(unit_matrix(n, 0, 0))).vectors.col(0);

    CMatrix u(n, n);
    u.col(0) = f1;
    int unitary_votes = 0;
    int antiunitary_votes = 0;
    for (int j = 1; j < n; ++j) {
        CMatrix sym = CMatrix::Zero(n, n);
        sym(0, j) = 1.0;
        sym(j, 0) = 1.0;
        CMatrix asym = CMatrix::Zero(n, n);
        asym(0, j) = i1;
        asym(j, 0) = -i1;
        const CVector uj = f.apply(HermitianOperator(sym)).matrix() * f1;
        const CVector wj = f.apply(HermitianOperator(asym)).matrix() * f1;
        const double norm2 = uj.squaredNorm();
        if (norm2 < 0.25) return std::nullopt;
        // -i ||u_j||^2 for a unitary, +i ||u_j||^2 for an antiunitary.
        const double im = uj.dot(wj).imag() / norm2;
        if (im < -0.5) {
            ++unitary_votes;
        } else if (im > 0.5) {
            ++antiunitary_votes;
        } else {
            return std::nullopt;
        }
        u.col(j) = uj;
    }
    if (unitary_votes > 0 && antiunitary_votes > 0) return std::nullopt;
    const SymmetryKind kind = antiunitary_votes > 0 ? SymmetryKind::antiunitary : SymmetryKind::unitary;

    // Polar factor: nearest unitary to the assembled columns.
    Eigen::JacobiSVD<CMatrix> svd(u, Eigen::ComputeFullU | Eigen::ComputeFullV);
    if (svd.singularValues()(n - 1) < 0.5) return std::nullopt;
    CMatrix polar = svd.matrixU() * svd.matrixV().adjoint();

    std::optional<SymmetryOp> candidate;
    try {
        candidate.emplace(kind, std::move(polar));
    } catch (const PreconditionError&) {
        return std::nullopt;
    }
    const double residual = distance(ad_symmetry(*candidate), f);
    if (!(residual < tol)) return std::nullopt;
    return ExtractedSymmetry{*candidate, residual};
}

// ---------------------------------------------------------------------------
// Classification

Classification classify(const HermMap& f, int k, const ClassifyConfig& cfg)
{
    const int n = f.dim();
    require(k >= 1 && k < n, "rank must satisfy 1 <= k < n");

    Classification out;
    out.diagnostics = preserves_projections(f, k, cfg.samples, cfg.tol.projection, cfg.seed, cfg.exec);
    if (out.diagnostics.pass_fraction < 1.0) {
        out.verdict = Verdict::not_preserver;
        return out;
    }
    if (auto ex = extract_symmetry(f, cfg.tol.extraction)) {
        out.verdict = Verdict::symmetry;
        out.symmetry = ex->symmetry;
        out.residual = ex->residual;
        return out;
    }
    if (n == 2 * k) {
        // theta(k) is an involution, so theta(k) after theta_u(s, k) is ad(s).
        if (auto ex = extract_symmetry(compose(theta(k), f), cfg.tol.extraction)) {
            out.verdict = Verdict::counterexample_family;
            out.symmetry = ex->symmetry;
            out.residual = ex->residual;
            return out;
        }
    }
    out.verdict = Verdict::preserver_unclassified;
    const auto tight = preserves_projections(f, k, cfg.samples, cfg.tol.projection / 100.0, cfg.seed, cfg.exec);
    out.tightened_pass = tight.pass_fraction == 1.0;
    return out;
}

std::optional<double> compare_up_to_phase(const SymmetryOp& s1, const SymmetryOp& s2)
{
    if (s1.dim() != s2.dim()) throw DimensionMismatch("symmetries act on different dimensions");
    if (s1.kind() != s2.kind()) return std::nullopt;
    return distance(ad_symmetry(s1), ad_symmetry(s2));
}

int span_dimension(int n, int k, int samples, std::uint64_t seed)
{
    require(n >= 2, "dimension must be >= 2");
    require(k >= 1 && k <= n, "rank must satisfy 1 <= k <= n");
    require(samples >= 1, "need at least one sample");
    RMatrix cols(n * n, samples);
    for (int i = 0; i < samples; ++i)
        cols.col(i) = vectorize(random_projection(n, k, derive_seed(seed, static_cast<std::uint64_t>(i))).op());
    Eigen::JacobiSVD<RMatrix> svd(cols);
    const RVector& sv = svd.singularValues();
    const double cutoff = 1e-8 * sv(0);
    return static_cast<int>((sv.array() > cutoff).count());
}

// ---------------------------------------------------------------------------
// States

DensityOperator::DensityOperator(HermitianOperator op) : op_(std::move(op))
{
    const RVector ev = eigenvalues(op_);
    if (ev(ev.size() - 1) < -1e-10) throw PreconditionError("density operator has a negative eigenvalue");
    if (std::abs(op_.trace() - 1.0) > 1e-10) throw PreconditionError("density operator trace differs from 1");
}

DensityOperator maximally_mixed(int n)
{
    return DensityOperator((1.0 / n) * HermitianOperator::identity(n));
}

DensityOperator pi_project(const HermitianOperator& a, double tol)
{
    require(tol > 0.0, "tolerance must be positive");
    if (a.norm() < tol) throw ZeroInput("operator is zero within tolerance");
    const Spectrum s = spectral_decompose(a);
    const double top = s.values(0);
    const double bottom = s.values(s.values.size() - 1);
    if (top > tol && bottom < -tol) throw IndefiniteInput("operator has eigenvalues of both signs");
    const RVector mags = s.values.cwiseAbs();
    const CMatrix abs_a = s.vectors * mags.cast<Complex>().asDiagonal() * s.vectors.adjoint();
    return DensityOperator(HermitianOperator(abs_a / mags.sum()));
}

DensityOperator uniform_state(const Projection& p)
{
    return DensityOperator((1.0 / p.rank()) * p.op());
}

std::optional<int> is_uniform_state(const DensityOperator& r, double tol)
{
    require(tol > 0.0, "tolerance must be positive");
    const int n = r.dim();
    const RVector ev = eigenvalues(r.op());
    const int k = static_cast<int>((ev.array() > 0.5 / n).count());
    if (k == 0) return std::nullopt;
    for (int i = 0; i < n; ++i) {
        const double target = i < k ? 1.0 / k : 0.0;
        if (std::abs(ev(i) - target) > tol) return std::nullopt;
    }
    return k;
}

bool majorizes(std::span<const double> p, std::span<const double> q)
{
    auto check = [](std::span<const double> v) {
        require(!v.empty(), "probability vector must be non-empty");
        double sum = 0.0;
        for (double x : v) {
            require(x >= -1e-12, "probability vector has a negative entry");
            sum += x;
        }
        require(std::abs(sum - 1.0) <= 1e-10, "probability vector does not sum to 1");
    };
    check(p);
    check(q);
    require(p.size() == q.size(), "probability vectors differ in length");

    std::vector<double> ps(p.begin(), p.end());
    std::vector<double> qs(q.begin(), q.end());
    std::sort(ps.begin(), ps.end(), std::greater<>());
    std::sort(qs.begin(), qs.end(), std::greater<>());
    double sp = 0.0;
    double sq = 0.0;
    for (std::size_t i = 0; i < ps.size(); ++i) {
        sp += ps[i];
        sq += qs[i];
        if (sp < sq - 1e-12) return false;
    }
    return true;
}

bool uniform_minimality_check(int n, int k, int trials, std::uint64_t seed, Execution exec)
{
    require(n >= 2, "dimension must be >= 2");
    require(k >= 1 && k <= n, "rank must satisfy 1 <= k <= n");
    require(trials >= 1, "need at least one trial");

    std::vector<double> uniform(static_cast<std::size_t>(n), 0.0);
    std::fill(uniform.begin(), uniform.begin() + k, 1.0 / k);

    std::vector<char> ok(static_cast<std::size_t>(trials));
    for_each_index(exec, ok.size(), [&](std::size_t t) {
        const std::uint64_t s = derive_seed(seed, t);
        std::mt19937_64 rng(s);
        std::exponential_distribution<double> expo(1.0);
        RVector weights = RVector::Zero(n);
        for (int i = 0; i < k; ++i) weights(i) = expo(rng);
        weights /= weights.sum();
        const CMatrix u = random_haar_unitary(n, derive_seed(s, 1));
        const HermitianOperator rho(u * weights.cast<Complex>().asDiagonal() * u.adjoint());
        const RVector ev = eigenvalues(rho);
        std::vector<double> spectrum(ev.data(), ev.data() + ev.size());
        for (double& x : spectrum) x = std::max(x, 0.0);
        ok[t] = majorizes(spectrum, uniform) ? 1 : 0;
    });
    return std::all_of(ok.begin(), ok.end(), [](char c) { return c != 0; });
}

} // namespace witnesskit
