#ifndef WITNESSKIT_PROBE_HPP
#define WITNESSKIT_PROBE_HPP

// Heuristic search for P_{n/2} preservers outside the two known families.
// Minimizes
//
//   penalty(L) = sum_i ||L(P_i)^2 - L(P_i)||_F^2 + (tr L(P_i) - n/2)^2
//
// over a fixed sample of P_i in P_{n/2} with Levenberg-Marquardt, then
// classifies every minimizer whose penalty fell below the convergence
// threshold. The output is evidence, never a proof.

#include "witnesskit/witness.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace witnesskit {

inline constexpr double kProbeConvergence = 1e-10;

struct ProbeConfig {
    int n = 4;
    int starts = 64;
    int steps = 2000;
    /// Size of the fixed P_k sample in the penalty; 0 means 6 n^2. Smaller
    /// samples leave the penalty with non-preserving zeros.
    int penalty_samples = 0;
    /// Size of the random orthogonal perturbation applied to each start.
    double perturbation = 0.1;
    std::uint64_t seed = 0;
    ClassifyConfig classify;
    Execution exec = Execution::parallel;
};

/// The fixed sample defining the penalty, stored as ggm-v1 coordinates.
struct PenaltySample {
    int n;
    int k;
    std::vector<RVector> coords;
};

PenaltySample make_penalty_sample(int n, int k, int count, std::uint64_t seed);

double preservation_penalty(const HermMap& l, const PenaltySample& sample);

struct DescentResult {
    HermMap map;
    double penalty;
    int iterations;
};

/// Levenberg-Marquardt on the penalty residuals, at most max_steps iterations.
/// Stops early once the penalty is below 1e-26 or the damping saturates.
DescentResult minimize_penalty(const HermMap& start, const PenaltySample& sample, int max_steps);

enum class StartKind { perturbed_symmetry, perturbed_theta_u, random_orthogonal };

const char* to_string(StartKind s);

struct ProbeOutcome {
    int start = 0;
    StartKind kind = StartKind::perturbed_symmetry;
    double initial_penalty = 0.0;
    double penalty = 0.0;
    int iterations = 0;
    bool converged = false;
    /// Present only for converged minimizers.
    std::optional<Verdict> verdict;
    /// Present only for converged minimizers. A map onto P_{n/2} is bijective,
    /// so non-injective minimizers are sample fits outside the conjecture.
    std::optional<bool> injective;
};

struct ProbeReport {
    int n = 0;
    int k = 0;
    std::vector<ProbeOutcome> outcomes;
    int converged = 0;
    std::map<std::string, int> verdict_counts;
    /// Converged minimizers that are not injective.
    int non_injective = 0;
    /// An injective converged minimizer classified as neither a symmetry nor theta_u.
    bool unclassified_found = false;
};

/// Descends from one explicit start and classifies the result if it converged.
ProbeOutcome probe_from_start(const HermMap& start, const PenaltySample& sample, int steps,
                              const ClassifyConfig& cfg);

/// Rejects odd n and n < 4.
ProbeReport conjecture_probe(const ProbeConfig& cfg);

} // namespace witnesskit

#endif
