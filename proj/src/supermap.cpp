#include "witnesskit/supermap.hpp"

#include "witnesskit/errors.hpp"

#include <cmath>

namespace witnesskit {

namespace {

int dim_from_coordinates(Eigen::Index size)
{
    const auto n = static_cast<int>(std::lround(std::sqrt(static_cast<double>(size))));
    if (n < 2 || static_cast<Eigen::Index>(n) * n != size)
        throw DimensionMismatch("coordinate vector length is not n^2 for any n >= 2");
    return n;
}

// Index of the (S_jk, A_jk) pair block for j < k.
int pair_offset(int n, int j, int k)
{
    // pairs before row j: sum_{r<j} (n-1-r)
    const int before = j * (n - 1) - j * (j - 1) / 2;
    return n + 2 * (before + (k - j - 1));
}

CVector to_complex(const RVector& x)
{
    const auto n = x.size() / 2;
    CVector v(n);
    for (Eigen::Index i = 0; i < n; ++i) v(i) = Complex(x(i), x(n + i));
    return v;
}

double sphere_objective(const HermMap& f, const RVector& x)
{
    CVector psi = to_complex(x);
    psi.normalize();
    return pure_image_min_eigenvalue(f, psi);
}

} // namespace

// ---------------------------------------------------------------------------
// Basis and coordinates

HermBasis::HermBasis(int n) : n_(n)
{
    require(n >= 2, "dimension must be >= 2");
    elements_.reserve(static_cast<std::size_t>(n) * n);
    elements_.push_back(HermitianOperator(CMatrix::Identity(n, n) / std::sqrt(double(n))));
    for (int l = 1; l < n; ++l) {
        CMatrix d = CMatrix::Zero(n, n);
        for (int m = 0; m < l; ++m) d(m, m) = 1.0;
        d(l, l) = -double(l);
        elements_.push_back(HermitianOperator(d / std::sqrt(double(l) * (l + 1))));
    }
    const Complex i1(0.0, 1.0);
    for (int j = 0; j < n; ++j) {
        for (int k = j + 1; k < n; ++k) {
            CMatrix s = CMatrix::Zero(n, n);
            s(j, k) = M_SQRT1_2;
            s(k, j) = M_SQRT1_2;
            CMatrix a = CMatrix::Zero(n, n);
            a(j, k) = i1 * M_SQRT1_2;
            a(k, j) = -i1 * M_SQRT1_2;
            elements_.push_back(HermitianOperator(s));
            elements_.push_back(HermitianOperator(a));
        }
    }
}

RVector vectorize(const HermitianOperator& a)
{
    const int n = a.dim();
    const CMatrix& m = a.matrix();
    RVector x(n * n);
    x(0) = m.trace().real() / std::sqrt(double(n));
    double prefix = 0.0;
    for (int l = 1; l < n; ++l) {
        prefix += m(l - 1, l - 1).real();
        x(l) = (prefix - l * m(l, l).real()) / std::sqrt(double(l) * (l + 1));
    }
    for (int j = 0; j < n; ++j) {
        for (int k = j + 1; k < n; ++k) {
            const int p = pair_offset(n, j, k);
            x(p) = M_SQRT2 * m(j, k).real();
            x(p + 1) = M_SQRT2 * m(j, k).imag();
        }
    }
    return x;
}

HermitianOperator devectorize(const RVector& x)
{
    const int n = dim_from_coordinates(x.size());
    CMatrix m = CMatrix::Zero(n, n);
    const double diag0 = x(0) / std::sqrt(double(n));
    for (int i = 0; i < n; ++i) m(i, i) = diag0;
    for (int l = 1; l < n; ++l) {
        const double c = x(l) / std::sqrt(double(l) * (l + 1));
        for (int i = 0; i < l; ++i) m(i, i) += c;
        m(l, l) -= l * c;
    }
    for (int j = 0; j < n; ++j) {
        for (int k = j + 1; k < n; ++k) {
            const int p = pair_offset(n, j, k);
            const Complex z = Complex(x(p), x(p + 1)) * M_SQRT1_2;
            m(j, k) = z;
            m(k, j) = std::conj(z);
        }
    }
    return HermitianOperator(m);
}

// ---------------------------------------------------------------------------
// HermMap

HermMap::HermMap(int n, RMatrix mat) : n_(n), mat_(std::move(mat))
{
    require(n >= 2, "dimension must be >= 2");
    if (mat_.rows() != n * n || mat_.cols() != n * n)
        throw DimensionMismatch("superoperator matrix must be n^2 x n^2");
}

HermMap HermMap::identity(int n)
{
    return HermMap(n, RMatrix::Identity(n * n, n * n));
}

HermitianOperator HermMap::apply(const HermitianOperator& a) const
{
    if (a.dim() != n_) throw DimensionMismatch("map and operator dimensions differ");
    return devectorize(mat_ * vectorize(a));
}

HermMap ad_symmetry(const SymmetryOp& s)
{
    return HermMap::from_action(s.dim(), [&](const HermitianOperator& b) { return s.apply(b); });
}

HermMap theta(int k)
{
    require(k >= 1, "theta needs k >= 1");
    const int n = 2 * k;
    return HermMap::from_action(n, [&](const HermitianOperator& a) {
        return (a.trace() / k) * HermitianOperator::identity(n) - a;
    });
}

HermMap theta_u(const SymmetryOp& s, int k)
{
    require(k >= 1, "theta needs k >= 1");
    if (s.dim() != 2 * k) throw DimensionMismatch("theta_u needs a symmetry on dimension 2k");
    return compose(theta(k), ad_symmetry(s));
}

HermMap trace_to_state(const HermitianOperator& state)
{
    const int n = state.dim();
    return HermMap::from_action(n, [&](const HermitianOperator& a) { return a.trace() * state; });
}

HermMap compose(const HermMap& f, const HermMap& g)
{
    if (f.dim() != g.dim()) throw DimensionMismatch("composed maps have different dimensions");
    return HermMap(f.dim(), f.matrix() * g.matrix());
}

HermMap inverse(const HermMap& f, double rel_tol)
{
    if (!is_injective(f, rel_tol)) throw SingularMap("superoperator is singular within tolerance");
    return HermMap(f.dim(), f.matrix().partialPivLu().inverse());
}

HermitianOperator apply(const HermMap& f, const HermitianOperator& a)
{
    return f.apply(a);
}

double distance(const HermMap& f, const HermMap& g)
{
    if (f.dim() != g.dim()) throw DimensionMismatch("maps have different dimensions");
    return (f.matrix() - g.matrix()).norm();
}

// ---------------------------------------------------------------------------
// Structural predicates

bool is_trace_preserving(const HermMap& f, double tol)
{
    require(tol > 0.0, "tolerance must be positive");
    // tr(f(b_j)) = sqrt(n) * row 0 entry; tr(b_j) = sqrt(n) * delta_0j.
    const double rootn = std::sqrt(double(f.dim()));
    const auto row = f.matrix().row(0);
    for (Eigen::Index j = 0; j < row.size(); ++j) {
        const double expected = j == 0 ? 1.0 : 0.0;
        if (std::abs(rootn * (row(j) - expected)) > tol) return false;
    }
    return true;
}

bool is_unital(const HermMap& f, double tol)
{
    require(tol > 0.0, "tolerance must be positive");
    const auto id = HermitianOperator::identity(f.dim());
    return distance(f.apply(id), id) < tol;
}

double condition_ratio(const HermMap& f)
{
    Eigen::JacobiSVD<RMatrix> svd(f.matrix());
    const RVector& sv = svd.singularValues();
    const double smax = sv(0);
    if (smax == 0.0) return 0.0;
    return sv(sv.size() - 1) / smax;
}

bool is_injective(const HermMap& f, double tol)
{
    require(tol > 0.0, "tolerance must be positive");
    return condition_ratio(f) > tol;
}

ChoiMatrix choi(const HermMap& f)
{
    const int n = f.dim();
    const Complex i1(0.0, 1.0);
    CMatrix j = CMatrix::Zero(n * n, n * n);
    for (int r = 0; r < n; ++r) {
        for (int c = 0; c < n; ++c) {
            // E_rc = H1 + i H2 with H1, H2 Hermitian.
            CMatrix e = CMatrix::Zero(n, n);
            e(r, c) = 1.0;
            const HermitianOperator h1((e + e.adjoint()) * 0.5);
            const HermitianOperator h2((e - e.adjoint()) * (-0.5 * i1));
            j.block(r * n, c * n, n, n) = f.apply(h1).matrix() + i1 * f.apply(h2).matrix();
        }
    }
    return {n, j};
}

double min_eigenvalue(const ChoiMatrix& j)
{
    Eigen::SelfAdjointEigenSolver<CMatrix> solver(j.mat, Eigen::EigenvaluesOnly);
    return solver.eigenvalues()(0);
}

bool is_completely_positive(const HermMap& f, double tol)
{
    require(tol > 0.0, "tolerance must be positive");
    return min_eigenvalue(choi(f)) >= -tol;
}

// ---------------------------------------------------------------------------
// Positivity heuristic

double pure_image_min_eigenvalue(const HermMap& f, const CVector& psi)
{
    const RVector ev = eigenvalues(f.apply(HermitianOperator::outer(psi)));
    return ev(ev.size() - 1);
}

PositivityVerdict is_positive_heuristic(const HermMap& f, const PositivityConfig& cfg)
{
    require(cfg.trials >= 1, "positivity heuristic needs at least one trial");
    require(cfg.refine_steps >= 0, "refinement steps must be non-negative");
    require(cfg.tol > 0.0, "tolerance must be positive");
    const int n = f.dim();

    std::vector<double> scores(static_cast<std::size_t>(cfg.trials));
    for_each_index(cfg.exec, scores.size(), [&](std::size_t t) {
        scores[t] = pure_image_min_eigenvalue(f, random_unit_vector(n, derive_seed(cfg.seed, t)));
    });
    std::size_t best = 0;
    for (std::size_t t = 1; t < scores.size(); ++t) {
        if (scores[t] < scores[best]) best = t;
    }

    const CVector start = random_unit_vector(n, derive_seed(cfg.seed, best));
    RVector x(2 * n);
    x << start.real(), start.imag();
    double value = scores[best];

    // Central differences, geometric step schedule, only improving steps accepted.
    constexpr double h = 1e-6;
    double step = 0.1;
    RVector grad(2 * n);
    for (int it = 0; it < cfg.refine_steps; ++it, step *= 0.98) {
        for (int p = 0; p < 2 * n; ++p) {
            RVector xp = x;
            RVector xm = x;
            xp(p) += h;
            xm(p) -= h;
            grad(p) = (sphere_objective(f, xp) - sphere_objective(f, xm)) / (2 * h);
        }
        // Tangential part only; radial moves do not change psi.
        grad -= x * (x.dot(grad) / x.squaredNorm());
        const double gnorm = grad.norm();
        if (gnorm < 1e-14) break;
        RVector trial = x - step * grad / gnorm;
        trial.normalize();
        const double v = sphere_objective(f, trial);
        if (v < value) {
            x = trial;
            value = v;
        }
    }

    CVector psi = to_complex(x);
    psi.normalize();
    // Report the value of the returned state itself so the certificate re-checks exactly.
    value = pure_image_min_eigenvalue(f, psi);
    if (value < -cfg.tol) return Violation{psi, value};
    return PositiveNoViolationFound{psi, value};
}

// ---------------------------------------------------------------------------

HermMap rank_complement_transform(const HermMap& f, int k)
{
    const int n = f.dim();
    require(k >= 1 && k < n, "rank must satisfy 1 <= k < n");
    const int m = n - k;
    const auto id = HermitianOperator::identity(n);
    const HermitianOperator shift = f.apply(id) - id;
    return HermMap::from_action(n, [&](const HermitianOperator& a) {
        return f.apply(a) - (a.trace() / m) * shift;
    });
}

bool reduction_map_identity_check()
{
    CMatrix sigma_y(2, 2);
    sigma_y << 0.0, Complex(0.0, -1.0), Complex(0.0, 1.0), 0.0;
    const HermMap reduction = theta(1);
    const HermMap conj = ad_symmetry(SymmetryOp(SymmetryKind::antiunitary, sigma_y));
    return distance(reduction, conj) < 1e-13;
}

} // namespace witnesskit
