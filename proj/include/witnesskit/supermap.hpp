#ifndef WITNESSKIT_SUPERMAP_HPP
#define WITNESSKIT_SUPERMAP_HPP

// Linear maps on the real space of n x n Hermitian matrices, stored as real
// n^2 x n^2 matrices in the generalized Gell-Mann basis "ggm-v1":
//
//   b_0            = 1 / sqrt(n)
//   b_l            = (E_00 + ... + E_{l-1,l-1} - l E_ll) / sqrt(l(l+1)),   l = 1..n-1
//   then for each pair j < k in lexicographic order
//   S_jk           = (E_jk + E_kj) / sqrt(2)
//   A_jk           = i (E_jk - E_kj) / sqrt(2)
//
// The basis is orthonormal for <A,B> = tr(AB), so coordinates are real and
// vectorize() is an isometry from Frobenius norm to the Euclidean norm.

#include "witnesskit/matrixcore.hpp"
#include "witnesskit/parallel.hpp"

#include <cstdint>
#include <variant>
#include <vector>

namespace witnesskit {

inline constexpr const char* kBasisTag = "ggm-v1";
/// Relative singular-value threshold: injective iff sigma_min > tol * sigma_max.
inline constexpr double kInjectivityTol = 1e-10;

class HermBasis {
public:
    explicit HermBasis(int n);

    int dim() const { return n_; }
    int size() const { return static_cast<int>(elements_.size()); }
    const HermitianOperator& operator[](int i) const { return elements_[static_cast<std::size_t>(i)]; }
    const std::vector<HermitianOperator>& elements() const { return elements_; }

private:
    int n_;
    std::vector<HermitianOperator> elements_;
};

/// Coordinates of a in the ggm-v1 basis.
RVector vectorize(const HermitianOperator& a);
/// Inverse of vectorize; x must have n^2 entries for some n >= 2.
HermitianOperator devectorize(const RVector& x);

/// A real-linear map on Hermitian n x n matrices. Column j of matrix() holds the
/// coordinates of the image of basis element b_j, i.e. matrix()(i, j) = <b_i, f(b_j)>.
class HermMap {
public:
    HermMap(int n, RMatrix mat);

    /// Tabulates an arbitrary linear action on the basis.
    template <class Action>
    static HermMap from_action(int n, Action&& action)
    {
        const HermBasis basis(n);
        RMatrix mat(basis.size(), basis.size());
        for (int j = 0; j < basis.size(); ++j) mat.col(j) = vectorize(action(basis[j]));
        return HermMap(n, std::move(mat));
    }

    static HermMap identity(int n);

    int dim() const { return n_; }
    const RMatrix& matrix() const { return mat_; }

    HermitianOperator apply(const HermitianOperator& a) const;

private:
    int n_;
    RMatrix mat_;
};

/// A -> u A u^dagger or A -> u A^T u^dagger. Always an orthogonal matrix.
HermMap ad_symmetry(const SymmetryOp& s);

/// A -> tr(A)/k * 1 - A on dimension n = 2k.
HermMap theta(int k);

/// theta(k) after ad_symmetry(s); requires s.dim() == 2k.
HermMap theta_u(const SymmetryOp& s, int k);

/// A -> tr(A) * state.
HermMap trace_to_state(const HermitianOperator& state);

/// f after g.
HermMap compose(const HermMap& f, const HermMap& g);
/// Throws SingularMap when sigma_min <= rel_tol * sigma_max.
HermMap inverse(const HermMap& f, double rel_tol = kInjectivityTol);
HermitianOperator apply(const HermMap& f, const HermitianOperator& a);

/// Frobenius distance between superoperator matrices.
double distance(const HermMap& f, const HermMap& g);

bool is_trace_preserving(const HermMap& f, double tol);
bool is_unital(const HermMap& f, double tol);
bool is_injective(const HermMap& f, double tol = kInjectivityTol);

/// sigma_min / sigma_max of the superoperator matrix.
double condition_ratio(const HermMap& f);

/// J = sum_jk E_jk (x) f_C(E_jk), f_C the complexification f_C(A + iB) = f(A) + i f(B).
struct ChoiMatrix {
    int n;
    CMatrix mat;
};

ChoiMatrix choi(const HermMap& f);
double min_eigenvalue(const ChoiMatrix& j);
bool is_completely_positive(const HermMap& f, double tol);

struct PositivityConfig {
    int trials = 512;
    int refine_steps = 200;
    double tol = 1e-9;
    std::uint64_t seed = 0;
    Execution exec = Execution::parallel;
};

/// Best pure state found; its image had smallest eigenvalue lambda_min >= -tol.
struct PositiveNoViolationFound {
    CVector state;
    double lambda_min;
};

/// Certificate of non-positivity: lambda_min(f(state state^dagger)) = lambda_min < -tol.
struct Violation {
    CVector state;
    double lambda_min;
};

using PositivityVerdict = std::variant<PositiveNoViolationFound, Violation>;

/// Smallest eigenvalue of f(psi psi^dagger) for unit psi.
double pure_image_min_eigenvalue(const HermMap& f, const CVector& psi);

/// Samples Haar-random pure states, keeps the one whose image has the smallest
/// eigenvalue, then refines it by finite-difference descent on the unit sphere.
/// A Violation is a checkable certificate; PositiveNoViolationFound is only evidence.
PositivityVerdict is_positive_heuristic(const HermMap& f, const PositivityConfig& cfg = {});

/// B(A) = f(A) - tr(A)/m * (f(1) - 1) with m = n - k.
HermMap rank_complement_transform(const HermMap& f, int k);

/// theta(1) against ad_symmetry((antiunitary, sigma_y)) within 1e-13.
bool reduction_map_identity_check();

} // namespace witnesskit

#endif
