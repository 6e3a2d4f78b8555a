#ifndef WITNESSKIT_IO_HPP
#define WITNESSKIT_IO_HPP

// JSON and CSV formats:
//   complex matrix   {"n": int, "re": [[...]], "im": [[...]]}, row-major
//   hermmap-v1       {"format": "hermmap-v1", "n": int, "basis": "ggm-v1", "matrix": [[...]]}
//                    with matrix[i][j] = <b_i, f(b_j)>
//   symmetry op      {"flag": "unitary"|"antiunitary", "n": int, "re": ..., "im": ...}
// Reports (classification, sweep, probe) carry a "format" field naming their version.

#include "witnesskit/probe.hpp"
#include "witnesskit/sweep.hpp"
#include "witnesskit/witness.hpp"

#include <json.hpp>

#include <cstdint>
#include <iosfwd>
#include <string>

namespace witnesskit::io {

using nlohmann::json;

inline constexpr const char* kHermMapFormat = "hermmap-v1";
inline constexpr const char* kClassificationFormat = "classification-v1";
inline constexpr const char* kSweepFormat = "sweep-v1";
inline constexpr const char* kProbeFormat = "probe-v1";

/// Loaders re-symmetrize Hermitian input; a correction larger than this is reported.
inline constexpr double kHermiticityWarning = 1e-10;

json complex_matrix_to_json(const CMatrix& m);
CMatrix complex_matrix_from_json(const json& j);

json to_json(const HermitianOperator& h);
/// Writes a warning to `warn` (if non-null) when ||M - (M + M^dagger)/2||_F exceeds kHermiticityWarning.
HermitianOperator hermitian_from_json(const json& j, std::ostream* warn = nullptr);

json to_json(const HermMap& f);
HermMap hermmap_from_json(const json& j);

json to_json(const SymmetryOp& s);
SymmetryOp symmetry_from_json(const json& j);

json to_json(const PreservationReport& r);
json to_json(const Classification& c, int n, int k, std::uint64_t seed);

/// Entries and per-(n, k, family, verdict) counters. Wall-clock data sits under
/// the top-level "timing" key only, so the rest is reproducible byte for byte.
json to_json(const SweepReport& r, std::uint64_t seed);
/// One row per (n, k, family, trial); no timing column.
std::string to_csv(const SweepReport& r);

json to_json(const ProbeReport& r, std::uint64_t seed);

json read_json_file(const std::string& path);
/// Pretty-printed with two-space indent and a trailing newline.
void write_json_file(const std::string& path, const json& j);
std::string dump(const json& j);

} // namespace witnesskit::io

#endif
