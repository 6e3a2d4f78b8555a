#include "witnesskit/probe.hpp"

#include "witnesskit/errors.hpp"

#include <cmath>
#include <random>

namespace witnesskit {

namespace {

constexpr double kStopPenalty = 1e-26;

// Orthogonal factor of QR(m) with diag(R) made positive.
RMatrix orthogonal_factor(const RMatrix& m)
{
    Eigen::HouseholderQR<RMatrix> qr(m);
    RMatrix q = qr.householderQ() * RMatrix::Identity(m.rows(), m.cols());
    const RMatrix& r = qr.matrixQR();
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
        if (r(j, j) < 0.0) q.col(j) = -q.col(j);
    }
    return q;
}

RMatrix gaussian(Eigen::Index rows, Eigen::Index cols, std::mt19937_64& rng)
{
    std::normal_distribution<double> normal(0.0, 1.0);
    RMatrix g(rows, cols);
    for (Eigen::Index c = 0; c < cols; ++c) {
        for (Eigen::Index r = 0; r < rows; ++r) g(r, c) = normal(rng);
    }
    return g;
}

// 1 (+) O on the coordinates, O acting on the traceless block.
RMatrix embed_traceless(const RMatrix& o)
{
    const Eigen::Index dim = o.rows() + 1;
    RMatrix m = RMatrix::Identity(dim, dim);
    m.bottomRightCorner(o.rows(), o.cols()) = o;
    return m;
}

struct Residuals {
    RVector r;
    RMatrix jac;
};

Residuals residuals(const RMatrix& l, const PenaltySample& sample, const HermBasis& basis, bool with_jacobian)
{
    const int n = sample.n;
    const int dim = n * n;
    const auto count = static_cast<int>(sample.coords.size());
    const int block = dim + 1;
    Residuals out;
    out.r.resize(count * block);
    if (with_jacobian) out.jac = RMatrix::Zero(count * block, dim * dim);
    const double rootn = std::sqrt(double(n));

    for (int i = 0; i < count; ++i) {
        const RVector& p = sample.coords[static_cast<std::size_t>(i)];
        const HermitianOperator x = devectorize(l * p);
        const CMatrix& xm = x.matrix();
        out.r.segment(i * block, dim) = vectorize(HermitianOperator(xm * xm - xm));
        out.r(i * block + dim) = x.trace() - sample.k;
        if (!with_jacobian) continue;
        // d(X^2 - X) along basis direction b_a is b_a X + X b_a - b_a; the Jacobian
        // column for L(a, b) scales it by p(b).
        RMatrix g(dim, dim);
        for (int a = 0; a < dim; ++a) {
            const CMatrix& ba = basis[a].matrix();
            g.col(a) = vectorize(HermitianOperator(ba * xm + xm * ba - ba));
        }
        for (int b = 0; b < dim; ++b) {
            out.jac.block(i * block, b * dim, dim, dim) = g * p(b);
            out.jac(i * block + dim, b * dim) = rootn * p(b);
        }
    }
    return out;
}

} // namespace

PenaltySample make_penalty_sample(int n, int k, int count, std::uint64_t seed)
{
    require(k >= 1 && k < n, "rank must satisfy 1 <= k < n");
    require(count >= 1, "penalty sample must be non-empty");
    PenaltySample s{n, k, {}};
    s.coords.reserve(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i)
        s.coords.push_back(vectorize(random_projection(n, k, derive_seed(seed, static_cast<std::uint64_t>(i))).op()));
    return s;
}

double preservation_penalty(const HermMap& l, const PenaltySample& sample)
{
    if (l.dim() != sample.n) throw DimensionMismatch("map and penalty sample dimensions differ");
    const HermBasis basis(sample.n);
    return residuals(l.matrix(), sample, basis, false).r.squaredNorm();
}

DescentResult minimize_penalty(const HermMap& start, const PenaltySample& sample, int max_steps)
{
    if (start.dim() != sample.n) throw DimensionMismatch("map and penalty sample dimensions differ");
    require(max_steps >= 0, "step count must be non-negative");
    const int dim = sample.n * sample.n;
    const HermBasis basis(sample.n);

    RMatrix l = start.matrix();
    Residuals cur = residuals(l, sample, basis, true);
    double cost = cur.r.squaredNorm();
    double mu = 1e-3;
    int it = 0;
    for (; it < max_steps && cost > kStopPenalty; ++it) {
        const RMatrix a = cur.jac.transpose() * cur.jac;
        const RVector g = cur.jac.transpose() * cur.r;
        bool accepted = false;
        while (!accepted && mu < 1e16) {
            RMatrix damped = a;
            damped.diagonal().array() += mu;
            const RVector delta = damped.ldlt().solve(-g);
            const RMatrix trial = l + Eigen::Map<const RMatrix>(delta.data(), dim, dim);
            const double trial_cost = residuals(trial, sample, basis, false).r.squaredNorm();
            if (trial_cost < cost) {
                l = trial;
                cost = trial_cost;
                mu = std::max(mu / 3.0, 1e-15);
                accepted = true;
            } else {
                mu *= 4.0;
            }
        }
        if (!accepted) break;
        cur = residuals(l, sample, basis, true);
    }
    return {HermMap(sample.n, l), cost, it};
}

const char* to_string(StartKind s)
{
    switch (s) {
    case StartKind::perturbed_symmetry: return "perturbed-symmetry";
    case StartKind::perturbed_theta_u: return "perturbed-theta-u";
    case StartKind::random_orthogonal: return "random-orthogonal";
    }
    return "unknown";
}

ProbeOutcome probe_from_start(const HermMap& start, const PenaltySample& sample, int steps,
                              const ClassifyConfig& cfg)
{
    ProbeOutcome out;
    out.initial_penalty = preservation_penalty(start, sample);
    const DescentResult res = minimize_penalty(start, sample, steps);
    out.penalty = res.penalty;
    out.iterations = res.iterations;
    out.converged = res.penalty < kProbeConvergence;
    if (out.converged) {
        out.verdict = classify(res.map, sample.k, cfg).verdict;
        out.injective = is_injective(res.map);
    }
    return out;
}

ProbeReport conjecture_probe(const ProbeConfig& cfg)
{
    require(cfg.n >= 4 && cfg.n % 2 == 0, "conjecture probe needs even n >= 4");
    require(cfg.starts >= 1, "need at least one start");
    require(cfg.steps >= 0, "step count must be non-negative");
    const int n = cfg.n;
    const int k = n / 2;
    const int dim = n * n;
    const int count = cfg.penalty_samples > 0 ? cfg.penalty_samples : 6 * dim;
    const PenaltySample sample = make_penalty_sample(n, k, count, derive_seed(cfg.seed, 0xfeed));

    ProbeReport report;
    report.n = n;
    report.k = k;
    report.outcomes.resize(static_cast<std::size_t>(cfg.starts));
    for_each_index(cfg.exec, report.outcomes.size(), [&](std::size_t i) {
        const std::uint64_t s = derive_seed(cfg.seed, i);
        std::mt19937_64 rng(s);
        const auto kind = static_cast<StartKind>(i % 3);
        const SymmetryKind flag = (i / 3) % 2 == 0 ? SymmetryKind::unitary : SymmetryKind::antiunitary;
        RMatrix base;
        switch (kind) {
        case StartKind::perturbed_symmetry:
            base = ad_symmetry(SymmetryOp(flag, random_haar_unitary(n, derive_seed(s, 1)))).matrix();
            break;
        case StartKind::perturbed_theta_u:
            base = theta_u(SymmetryOp(flag, random_haar_unitary(n, derive_seed(s, 1))), k).matrix();
            break;
        case StartKind::random_orthogonal:
            base = embed_traceless(orthogonal_factor(gaussian(dim - 1, dim - 1, rng)));
            break;
        }
        const RMatrix near_id =
            RMatrix::Identity(dim - 1, dim - 1) + cfg.perturbation * gaussian(dim - 1, dim - 1, rng);
        const RMatrix start = embed_traceless(orthogonal_factor(near_id)) * base;

        ClassifyConfig ccfg = cfg.classify;
        ccfg.exec = Execution::serial;
        ProbeOutcome o = probe_from_start(HermMap(n, start), sample, cfg.steps, ccfg);
        o.start = static_cast<int>(i);
        o.kind = kind;
        report.outcomes[i] = o;
    });

    for (const auto& o : report.outcomes) {
        if (!o.converged) continue;
        ++report.converged;
        ++report.verdict_counts[to_string(*o.verdict)];
        if (!*o.injective) {
            ++report.non_injective;
            continue;
        }
        if (*o.verdict != Verdict::symmetry && *o.verdict != Verdict::counterexample_family)
            report.unclassified_found = true;
    }
    return report;
}

} // namespace witnesskit
