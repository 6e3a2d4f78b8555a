#ifndef WITNESSKIT_MATRIXCORE_HPP
#define WITNESSKIT_MATRIXCORE_HPP

// Dense complex Hermitian linear algebra: the operator types, spectral
// decomposition, projection predicates, Haar sampling and the rank-one
// decomposition of a pure state over rank-k projections.

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace witnesskit {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RMatrix = Eigen::MatrixXd;
using RVector = Eigen::VectorXd;

/// Eigenvalue distance to {0,1} accepted by is_projection unless told otherwise.
inline constexpr double kProjectionTol = 1e-8;
/// Bound on ||u^dagger u - 1||_F for a matrix to be accepted as unitary.
inline constexpr double kUnitaryTol = 1e-12;

/// An n x n complex matrix equal to its conjugate transpose, n >= 2.
/// Construction symmetrizes the input as (M + M^dagger)/2, so the stored
/// entries are exactly Hermitian.
class HermitianOperator {
public:
    explicit HermitianOperator(const CMatrix& m);

    static HermitianOperator identity(int n);
    static HermitianOperator zero(int n);
    /// The rank-one operator v v^dagger.
    static HermitianOperator outer(const CVector& v);

    int dim() const { return static_cast<int>(m_.rows()); }
    const CMatrix& matrix() const { return m_; }
    Complex operator()(int row, int col) const { return m_(row, col); }

    double trace() const { return m_.trace().real(); }
    double norm() const { return m_.norm(); }

    HermitianOperator& operator+=(const HermitianOperator& rhs);
    HermitianOperator& operator-=(const HermitianOperator& rhs);
    HermitianOperator& operator*=(double s);

private:
    CMatrix m_;
};

HermitianOperator operator+(HermitianOperator lhs, const HermitianOperator& rhs);
HermitianOperator operator-(HermitianOperator lhs, const HermitianOperator& rhs);
HermitianOperator operator*(double s, HermitianOperator h);

/// Frobenius distance ||a - b||_F.
double distance(const HermitianOperator& a, const HermitianOperator& b);

/// A rank-k orthogonal projection, 1 <= k <= n.
class Projection {
public:
    /// Validates idempotence and eigenvalues in {0,1} within tol; throws PreconditionError otherwise.
    static Projection from_operator(const HermitianOperator& op, double tol = kProjectionTol);
    /// Projection onto the span of the given orthonormal columns.
    static Projection onto(const CMatrix& orthonormal_columns);

    const HermitianOperator& op() const { return op_; }
    const CMatrix& matrix() const { return op_.matrix(); }
    int rank() const { return rank_; }
    int dim() const { return op_.dim(); }

private:
    Projection(HermitianOperator op, int rank) : op_(std::move(op)), rank_(rank) {}

    HermitianOperator op_;
    int rank_;
};

enum class SymmetryKind { unitary, antiunitary };

/// A Wigner symmetry A -> u A u^dagger (unitary) or A -> u A^T u^dagger
/// (antiunitary u K, with K the complex conjugation in the computational basis).
class SymmetryOp {
public:
    /// Throws PreconditionError unless ||u^dagger u - 1||_F <= kUnitaryTol.
    SymmetryOp(SymmetryKind kind, CMatrix u);

    SymmetryKind kind() const { return kind_; }
    const CMatrix& u() const { return u_; }
    int dim() const { return static_cast<int>(u_.rows()); }

    HermitianOperator apply(const HermitianOperator& a) const;

private:
    SymmetryKind kind_;
    CMatrix u_;
};

const char* to_string(SymmetryKind kind);

/// Eigenpairs sorted by descending eigenvalue; column i of `vectors` belongs to values[i].
struct Spectrum {
    RVector values;
    CMatrix vectors;

    HermitianOperator reconstruct() const;
};

/// Hermitian eigendecomposition with deterministic ordering. Each eigenvector is
/// phase-fixed so its first non-negligible component is real and positive; ties
/// between equal eigenvalues are ordered by the index of that component, then by
/// its magnitude.
Spectrum spectral_decompose(const HermitianOperator& h);

/// Descending eigenvalues only.
RVector eigenvalues(const HermitianOperator& h);

/// Rank k if every eigenvalue lies within tol of {0,1} and k >= 1 of them are near 1.
std::optional<int> is_projection(const HermitianOperator& h, double tol = kProjectionTol);

/// Haar-distributed unitary from the QR factorization of a complex Ginibre
/// matrix, with the phases of diag(R) folded back into Q.
CMatrix random_haar_unitary(int n, std::uint64_t seed);

/// Haar-random unit vector (first column of a Haar unitary).
CVector random_unit_vector(int n, std::uint64_t seed);

/// Hermitian matrix with i.i.d. Gaussian entries (GUE up to scale).
HermitianOperator random_hermitian(int n, std::uint64_t seed);

/// U diag(1 x k, 0 x (n-k)) U^dagger with U Haar.
Projection random_projection(int n, int k, std::uint64_t seed);

/// Two rank-k projections with PQ = 0, taken from disjoint column blocks of one Haar unitary.
std::pair<Projection, Projection> random_orthogonal_pair(int n, int k, std::uint64_t seed);

/// 1 - P. Throws FullRankInput for rank n.
Projection orthocomplement(const Projection& p);

struct RankOneTerm {
    double coefficient;
    Projection projection;
};

/// Writes v v^dagger as a real combination of k+1 rank-k projections.
/// v is extended to an orthonormal set {v = e'_1, ..., e'_{k+1}} by Gram-Schmidt
/// against the computational basis; term i projects onto that set minus e'_i.
/// The first term (the one omitting v) has coefficient 1/k - 1, the others 1/k.
std::vector<RankOneTerm> rank_one_decomposition(const CVector& v, int k);

} // namespace witnesskit

#endif
