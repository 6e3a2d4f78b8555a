#ifndef WITNESSKIT_SWEEP_HPP
#define WITNESSKIT_SWEEP_HPP

#include "witnesskit/witness.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace witnesskit {

inline constexpr int kDefaultDimensionCap = 8;

struct SweepCell {
    int n;
    int k;
};

enum class KRule { all, half, custom };

/// Cells (n, k) for n in [n_lo, n_hi]. `half` keeps only even n with k = n/2;
/// `custom` keeps the listed k values that satisfy 1 <= k < n.
std::vector<SweepCell> make_grid(int n_lo, int n_hi, KRule rule, const std::vector<int>& custom_k = {});

struct SweepConfig {
    std::vector<SweepCell> grid;
    int trials = 10;
    std::uint64_t seed = 0;
    int samples = 200;
    int orthogonality_samples = 50;
    Tolerances tol;
    int dimension_cap = kDefaultDimensionCap;
    Execution exec = Execution::parallel;
};

/// Throws PreconditionError on an empty grid, cells outside 2 <= n <= cap,
/// 1 <= k < n, or non-positive trial/sample counts.
void validate(const SweepConfig& cfg);

enum class Family { ad_unitary, ad_antiunitary, theta, theta_u_unitary, theta_u_antiunitary };

const char* to_string(Family f);

/// Map families generated for a cell; the theta families only exist for n = 2k.
std::vector<Family> families_for(int n, int k);

/// Symmetry everywhere, except theta and theta_u at n = 2k >= 4 which must land in
/// the counterexample family.
Verdict expected_verdict(int n, int k, Family f);

struct SweepEntry {
    int n = 0;
    int k = 0;
    Family family = Family::ad_unitary;
    int trial = 0;
    std::uint64_t seed = 0;
    Verdict verdict = Verdict::not_preserver;
    std::optional<double> residual;
    /// Phase-free distance between the recovered and the expected symmetry.
    std::optional<double> recovery_distance;
    bool trace_preserving = false;
    bool unital = false;
    bool injective = false;
    /// Empty when 2k > n.
    std::optional<bool> orthogonality;
    bool contradiction = false;
    double elapsed_ms = 0.0;
};

struct SweepReport {
    std::vector<SweepEntry> entries;
    int contradictions = 0;
    double total_ms = 0.0;
};

/// Classifies every generated map of every cell. Each entry draws from its own
/// derived seed, so serial and parallel execution give identical entries
/// (apart from elapsed_ms).
SweepReport witness_sweep(const SweepConfig& cfg);

/// Seed of entry (n, k, family, trial) under base seed `seed`.
std::uint64_t entry_seed(std::uint64_t seed, int n, int k, Family f, int trial);

/// A generated map together with the symmetry classification should recover
/// from it: the generator itself for ad and for theta_u at n >= 4; at n = 2 the
/// map is theta(1) = ad(antiunitary, sigma_y) composed with the generator.
struct GeneratedMap {
    HermMap map;
    SymmetryOp expected_symmetry;
};

GeneratedMap generate_map(int n, int k, Family f, std::uint64_t seed);

} // namespace witnesskit

#endif
