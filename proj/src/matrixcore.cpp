#include "witnesskit/matrixcore.hpp"

#include "witnesskit/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <string>

namespace witnesskit {

namespace {

// Components below this magnitude are skipped when fixing eigenvector phases.
constexpr double kNegligibleComponent = 1e-8;
// Candidates whose Gram-Schmidt residual falls below this are treated as parallel.
constexpr double kParallelThreshold = 1e-6;

int first_significant(const CVector& v)
{
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        if (std::abs(v(i)) > kNegligibleComponent) return static_cast<int>(i);
    }
    return 0;
}

void fix_phase(Eigen::Ref<CVector> v)
{
    const Complex c = v(first_significant(v));
    const double mag = std::abs(c);
    if (mag > 0.0) v *= std::conj(c) / mag;
}

} // namespace

// ---------------------------------------------------------------------------
// HermitianOperator

HermitianOperator::HermitianOperator(const CMatrix& m)
{
    if (m.rows() != m.cols()) throw DimensionMismatch("Hermitian operator must be square");
    if (m.rows() < 2) throw PreconditionError("Hermitian operator dimension must be >= 2");
    m_ = (m + m.adjoint()) * 0.5;
}

HermitianOperator HermitianOperator::identity(int n)
{
    return HermitianOperator(CMatrix::Identity(n, n));
}

HermitianOperator HermitianOperator::zero(int n)
{
    return HermitianOperator(CMatrix::Zero(n, n));
}

HermitianOperator HermitianOperator::outer(const CVector& v)
{
    return HermitianOperator(v * v.adjoint());
}

HermitianOperator& HermitianOperator::operator+=(const HermitianOperator& rhs)
{
    if (rhs.dim() != dim()) throw DimensionMismatch("operator dimensions differ");
    m_ += rhs.m_;
    return *this;
}

HermitianOperator& HermitianOperator::operator-=(const HermitianOperator& rhs)
{
    if (rhs.dim() != dim()) throw DimensionMismatch("operator dimensions differ");
    m_ -= rhs.m_;
    return *this;
}

HermitianOperator& HermitianOperator::operator*=(double s)
{
    m_ *= s;
    return *this;
}

HermitianOperator operator+(HermitianOperator lhs, const HermitianOperator& rhs)
{
    return lhs += rhs;
}

HermitianOperator operator-(HermitianOperator lhs, const HermitianOperator& rhs)
{
    return lhs -= rhs;
}

HermitianOperator operator*(double s, HermitianOperator h)
{
    return h *= s;
}

double distance(const HermitianOperator& a, const HermitianOperator& b)
{
    if (a.dim() != b.dim()) throw DimensionMismatch("operator dimensions differ");
    return (a.matrix() - b.matrix()).norm();
}

// ---------------------------------------------------------------------------
// Projection

Projection Projection::from_operator(const HermitianOperator& op, double tol)
{
    const auto rank = is_projection(op, tol);
    if (!rank) throw PreconditionError("operator is not a projection of rank >= 1");
    const double defect = (op.matrix() * op.matrix() - op.matrix()).norm();
    if (defect > tol * std::sqrt(static_cast<double>(op.dim())))
        throw PreconditionError("operator is not idempotent within tolerance");
    return Projection(op, *rank);
}

Projection Projection::onto(const CMatrix& orthonormal_columns)
{
    if (orthonormal_columns.cols() < 1) throw PreconditionError("projection needs at least one column");
    return Projection(HermitianOperator(orthonormal_columns * orthonormal_columns.adjoint()),
                      static_cast<int>(orthonormal_columns.cols()));
}

// ---------------------------------------------------------------------------
// SymmetryOp

SymmetryOp::SymmetryOp(SymmetryKind kind, CMatrix u) : kind_(kind), u_(std::move(u))
{
    if (u_.rows() != u_.cols()) throw DimensionMismatch("symmetry matrix must be square");
    if (u_.rows() < 2) throw PreconditionError("symmetry dimension must be >= 2");
    const double defect = (u_.adjoint() * u_ - CMatrix::Identity(u_.rows(), u_.cols())).norm();
    if (!(defect <= kUnitaryTol))
        throw PreconditionError("symmetry matrix is not unitary (defect " + std::to_string(defect) + ")");
}

HermitianOperator SymmetryOp::apply(const HermitianOperator& a) const
{
    if (a.dim() != dim()) throw DimensionMismatch("symmetry and operator dimensions differ");
    if (kind_ == SymmetryKind::unitary) return HermitianOperator(u_ * a.matrix() * u_.adjoint());
    return HermitianOperator(u_ * a.matrix().transpose() * u_.adjoint());
}

const char* to_string(SymmetryKind kind)
{
    return kind == SymmetryKind::unitary ? "unitary" : "antiunitary";
}

// ---------------------------------------------------------------------------
// Spectra

HermitianOperator Spectrum::reconstruct() const
{
    return HermitianOperator(vectors * values.cast<Complex>().asDiagonal() * vectors.adjoint());
}

Spectrum spectral_decompose(const HermitianOperator& h)
{
    Eigen::SelfAdjointEigenSolver<CMatrix> solver(h.matrix());
    const int n = h.dim();
    CMatrix vecs = solver.eigenvectors();
    for (int i = 0; i < n; ++i) fix_phase(vecs.col(i));

    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    const RVector& ev = solver.eigenvalues();
    std::sort(order.begin(), order.end(), [&](int a, int b) { return ev(a) > ev(b); });

    // Tie groups: consecutive eigenvalues closer than a relative threshold.
    const double scale = std::max(1.0, ev.cwiseAbs().maxCoeff());
    const double tie = 1e-10 * scale;
    auto key_less = [&](int a, int b) {
        const int ia = first_significant(vecs.col(a));
        const int ib = first_significant(vecs.col(b));
        if (ia != ib) return ia < ib;
        return vecs(ia, a).real() > vecs(ib, b).real();
    };
    for (int start = 0; start < n;) {
        int end = start + 1;
        while (end < n && ev(order[end - 1]) - ev(order[end]) <= tie) ++end;
        std::stable_sort(order.begin() + start, order.begin() + end, key_less);
        start = end;
    }

    Spectrum out{RVector(n), CMatrix(n, n)};
    for (int i = 0; i < n; ++i) {
        out.values(i) = ev(order[i]);
        out.vectors.col(i) = vecs.col(order[i]);
    }
    return out;
}

RVector eigenvalues(const HermitianOperator& h)
{
    Eigen::SelfAdjointEigenSolver<CMatrix> solver(h.matrix(), Eigen::EigenvaluesOnly);
    return solver.eigenvalues().reverse();
}

std::optional<int> is_projection(const HermitianOperator& h, double tol)
{
    if (!(tol > 0.0)) throw PreconditionError("tolerance must be positive");
    const RVector ev = eigenvalues(h);
    int ones = 0;
    for (Eigen::Index i = 0; i < ev.size(); ++i) {
        const double x = ev(i);
        if (std::abs(x - 1.0) <= tol) {
            ++ones;
        } else if (std::abs(x) > tol) {
            return std::nullopt;
        }
    }
    if (ones == 0) return std::nullopt;
    return ones;
}

// ---------------------------------------------------------------------------
// Sampling

CMatrix random_haar_unitary(int n, std::uint64_t seed)
{
    require(n >= 2, "dimension must be >= 2");
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    CMatrix z(n, n);
    for (int c = 0; c < n; ++c) {
        for (int r = 0; r < n; ++r) {
            const double re = normal(rng);
            const double im = normal(rng);
            z(r, c) = Complex(re, im) * M_SQRT1_2;
        }
    }
    Eigen::HouseholderQR<CMatrix> qr(z);
    CMatrix q = qr.householderQ() * CMatrix::Identity(n, n);
    const CMatrix& r = qr.matrixQR();
    for (int j = 0; j < n; ++j) {
        const Complex d = r(j, j);
        const double mag = std::abs(d);
        if (mag > 0.0) q.col(j) *= d / mag;
    }
    return q;
}

CVector random_unit_vector(int n, std::uint64_t seed)
{
    return random_haar_unitary(n, seed).col(0);
}

HermitianOperator random_hermitian(int n, std::uint64_t seed)
{
    require(n >= 2, "dimension must be >= 2");
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    CMatrix g(n, n);
    for (int c = 0; c < n; ++c) {
        for (int r = 0; r < n; ++r) {
            const double re = normal(rng);
            const double im = normal(rng);
            g(r, c) = Complex(re, im);
        }
    }
    return HermitianOperator(g);
}

Projection random_projection(int n, int k, std::uint64_t seed)
{
    require(n >= 2, "dimension must be >= 2");
    require(k >= 1 && k <= n, "rank must satisfy 1 <= k <= n");
    if (k == n) return Projection::onto(CMatrix::Identity(n, n));
    const CMatrix u = random_haar_unitary(n, seed);
    return Projection::onto(u.leftCols(k));
}

std::pair<Projection, Projection> random_orthogonal_pair(int n, int k, std::uint64_t seed)
{
    require(n >= 2, "dimension must be >= 2");
    require(k >= 1 && 2 * k <= n, "orthogonal pair needs 1 <= k and 2k <= n");
    const CMatrix u = random_haar_unitary(n, seed);
    return {Projection::onto(u.leftCols(k)), Projection::onto(u.middleCols(k, k))};
}

Projection orthocomplement(const Projection& p)
{
    if (p.rank() == p.dim()) throw FullRankInput("orthocomplement of a full-rank projection is zero");
    const int n = p.dim();
    const HermitianOperator q(CMatrix::Identity(n, n) - p.matrix());
    return Projection::from_operator(q, 1e-6);
}

// ---------------------------------------------------------------------------
// Rank-one decomposition

std::vector<RankOneTerm> rank_one_decomposition(const CVector& v, int k)
{
    const int n = static_cast<int>(v.size());
    require(n >= 2, "dimension must be >= 2");
    require(k >= 1 && k < n, "rank must satisfy 1 <= k < n");
    require(std::abs(v.norm() - 1.0) <= 1e-10, "vector must have unit norm");

    std::vector<CVector> frame{v};
    for (int i = 0; i < n && static_cast<int>(frame.size()) < k + 1; ++i) {
        CVector w = CVector::Unit(n, i);
        // Two passes of classical Gram-Schmidt.
        for (int pass = 0; pass < 2; ++pass) {
            for (const auto& e : frame) w -= e * e.dot(w);
        }
        const double norm = w.norm();
        if (norm < kParallelThreshold) continue;
        frame.push_back(w / norm);
    }

    std::vector<RankOneTerm> terms;
    terms.reserve(k + 1);
    const double kinv = 1.0 / k;
    for (int omit = 0; omit <= k; ++omit) {
        CMatrix cols(n, k);
        int c = 0;
        for (int j = 0; j <= k; ++j) {
            if (j != omit) cols.col(c++) = frame[j];
        }
        terms.push_back({omit == 0 ? kinv - 1.0 : kinv, Projection::onto(cols)});
    }
    return terms;
}

} // namespace witnesskit
