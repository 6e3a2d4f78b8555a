#ifndef WITNESSKIT_WITNESS_HPP
#define WITNESSKIT_WITNESS_HPP

// Sampled tests for "f maps P_k onto P_k", recovery of a Wigner symmetry from
// a superoperator, and the classification built on the two.

#include "witnesskit/matrixcore.hpp"
#include "witnesskit/parallel.hpp"
#include "witnesskit/supermap.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace witnesskit {

/// One set of thresholds used by classification. "desk" is the default,
/// "strict" divides every entry by 100.
struct Tolerances {
    double projection = 1e-8;
    double extraction = 1e-8;
    double phase = 1e-8;
};

Tolerances tolerance_profile(std::string_view name);

struct PreservationReport {
    int samples = 0;
    /// Total number of images checked (samples, doubled when the inverse was also checked).
    int checks = 0;
    double pass_fraction = 0.0;
    double max_idempotence_defect = 0.0;
    int max_rank_defect = 0;
    bool inverse_checked = false;
    /// Input whose image had the largest idempotence defect.
    std::optional<Projection> worst_input;
};

/// Checks that f(P) is a rank-k projection for `samples` Haar-random P in P_k.
/// When f is injective the inverse map is checked the same way on fresh samples.
/// An image passes when is_projection gives rank k at tol and ||X^2 - X||_F <= tol.
PreservationReport preserves_projections(const HermMap& f, int k, int samples, double tol,
                                         std::uint64_t seed = 0,
                                         Execution exec = Execution::parallel);

struct OrthogonalityReport {
    int samples = 0;
    int checks = 0;
    double pass_fraction = 0.0;
    double max_product_norm = 0.0;
    bool inverse_checked = false;
};

/// For sampled orthogonal pairs (P, Q) in P_k checks ||f(P) f(Q)||_F < tol, and the
/// same for the inverse when f is injective. Requires 2k <= n.
OrthogonalityReport preserves_orthogonality(const HermMap& f, int k, int samples, double tol,
                                            std::uint64_t seed = 0,
                                            Execution exec = Execution::parallel);

struct ExtractedSymmetry {
    SymmetryOp symmetry;
    /// ||ad_symmetry(symmetry) - f||_F.
    double residual;
};

/// Rebuilds u column by column from the images of E_jj, E_1j + E_j1 and
/// i(E_1j - E_j1), decides unitary versus antiunitary from the phase of the last
/// family, and accepts the candidate only if its conjugation map is within tol of f.
std::optional<ExtractedSymmetry> extract_symmetry(const HermMap& f, double tol);

enum class Verdict { symmetry, counterexample_family, preserver_unclassified, not_preserver };

const char* to_string(Verdict v);

struct ClassifyConfig {
    Tolerances tol;
    int samples = 200;
    std::uint64_t seed = 0;
    Execution exec = Execution::parallel;
};

struct Classification {
    Verdict verdict = Verdict::not_preserver;
    /// Set for symmetry and counterexample_family.
    std::optional<SymmetryOp> symmetry;
    std::optional<double> residual;
    PreservationReport diagnostics;
    /// For preserver_unclassified only: whether preservation still holds at tol / 100.
    std::optional<bool> tightened_pass;
};

/// Preservation test, then symmetry fit, then (for n = 2k) a symmetry fit of
/// theta(k) after f, which succeeds exactly for f = theta(k) after ad(s).
Classification classify(const HermMap& f, int k, const ClassifyConfig& cfg = {});

/// ||ad(s1) - ad(s2)||_F, which vanishes iff u1 and u2 agree up to a phase.
/// Empty when the flags differ.
std::optional<double> compare_up_to_phase(const SymmetryOp& s1, const SymmetryOp& s2);

/// Numerical rank (singular values above 1e-8 sigma_max) of the coordinates of
/// `samples` Haar-random elements of P_k. Accepts 1 <= k <= n.
int span_dimension(int n, int k, int samples, std::uint64_t seed);

/// Positive semidefinite, unit trace.
class DensityOperator {
public:
    /// Throws PreconditionError if an eigenvalue is below -1e-10 or |tr - 1| > 1e-10.
    explicit DensityOperator(HermitianOperator op);

    const HermitianOperator& op() const { return op_; }
    int dim() const { return op_.dim(); }

private:
    HermitianOperator op_;
};

DensityOperator maximally_mixed(int n);

/// |A| / tr|A| for nonzero semidefinite A (either sign).
/// Throws ZeroInput when ||A||_F < tol and IndefiniteInput when eigenvalues of
/// both signs exceed tol in magnitude.
DensityOperator pi_project(const HermitianOperator& a, double tol = 1e-10);

/// P / k.
DensityOperator uniform_state(const Projection& p);

/// k iff the spectrum is (1/k x k, 0 x (n-k)) within tol.
std::optional<int> is_uniform_state(const DensityOperator& r, double tol = 1e-10);

/// Partial sums of descending p dominate those of descending q. Both must be
/// probability vectors (non-negative within 1e-12, sum within 1e-10 of 1) of equal length.
bool majorizes(std::span<const double> p, std::span<const double> q);

/// Samples `trials` states of rank <= k (flat Dirichlet spectrum on k outcomes,
/// padded with zeros, Haar-rotated) and checks each spectrum majorizes u_k.
bool uniform_minimality_check(int n, int k, int trials, std::uint64_t seed,
                              Execution exec = Execution::parallel);

} // namespace witnesskit

#endif
