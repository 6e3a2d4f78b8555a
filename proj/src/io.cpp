#include "witnesskit/io.hpp"

#include "witnesskit/errors.hpp"

#include <fstream>
#include <map>
#include <ostream>
#include <sstream>
#include <tuple>

namespace witnesskit::io {

namespace {

std::vector<std::vector<double>> rows_of(const RMatrix& m)
{
    std::vector<std::vector<double>> rows(static_cast<std::size_t>(m.rows()));
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        rows[static_cast<std::size_t>(r)].resize(static_cast<std::size_t>(m.cols()));
        for (Eigen::Index c = 0; c < m.cols(); ++c) rows[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] = m(r, c);
    }
    return rows;
}

RMatrix real_matrix(const json& rows, int n, const char* field)
{
    if (!rows.is_array() || static_cast<int>(rows.size()) != n)
        throw FormatError(std::string("field '") + field + "' must have " + std::to_string(n) + " rows");
    RMatrix m(n, n);
    for (int r = 0; r < n; ++r) {
        const json& row = rows[static_cast<std::size_t>(r)];
        if (!row.is_array() || static_cast<int>(row.size()) != n)
            throw FormatError(std::string("field '") + field + "' row " + std::to_string(r) + " must have " +
                              std::to_string(n) + " entries");
        for (int c = 0; c < n; ++c) {
            const json& v = row[static_cast<std::size_t>(c)];
            if (!v.is_number()) throw FormatError(std::string("field '") + field + "' has a non-numeric entry");
            m(r, c) = v.get<double>();
        }
    }
    return m;
}

int read_dim(const json& j)
{
    if (!j.is_object() || !j.contains("n") || !j["n"].is_number_integer())
        throw FormatError("missing integer field 'n'");
    const int n = j["n"].get<int>();
    if (n < 2) throw FormatError("dimension 'n' must be >= 2");
    return n;
}

json optional_number(const std::optional<double>& v)
{
    return v ? json(*v) : json(nullptr);
}

} // namespace

json complex_matrix_to_json(const CMatrix& m)
{
    return json{{"n", m.rows()}, {"re", rows_of(m.real())}, {"im", rows_of(m.imag())}};
}

CMatrix complex_matrix_from_json(const json& j)
{
    const int n = read_dim(j);
    if (!j.contains("re") || !j.contains("im")) throw FormatError("complex matrix needs 're' and 'im'");
    const RMatrix re = real_matrix(j["re"], n, "re");
    const RMatrix im = real_matrix(j["im"], n, "im");
    CMatrix m(n, n);
    m.real() = re;
    m.imag() = im;
    return m;
}

json to_json(const HermitianOperator& h)
{
    return complex_matrix_to_json(h.matrix());
}

HermitianOperator hermitian_from_json(const json& j, std::ostream* warn)
{
    const CMatrix m = complex_matrix_from_json(j);
    HermitianOperator h(m);
    const double correction = (m - h.matrix()).norm();
    if (warn && correction > kHermiticityWarning)
        *warn << "warning: input was not Hermitian; symmetrized with correction " << correction << "\n";
    return h;
}

json to_json(const HermMap& f)
{
    return json{{"format", kHermMapFormat}, {"n", f.dim()}, {"basis", kBasisTag}, {"matrix", rows_of(f.matrix())}};
}

HermMap hermmap_from_json(const json& j)
{
    if (!j.is_object() || !j.contains("format") || j["format"] != kHermMapFormat)
        throw FormatError("expected format 'hermmap-v1'");
    if (!j.contains("basis") || j["basis"] != kBasisTag) throw FormatError("expected basis 'ggm-v1'");
    const int n = read_dim(j);
    if (!j.contains("matrix")) throw FormatError("missing field 'matrix'");
    return HermMap(n, real_matrix(j["matrix"], n * n, "matrix"));
}

json to_json(const SymmetryOp& s)
{
    json j = complex_matrix_to_json(s.u());
    j["flag"] = to_string(s.kind());
    return j;
}

SymmetryOp symmetry_from_json(const json& j)
{
    if (!j.is_object() || !j.contains("flag") || !j["flag"].is_string()) throw FormatError("missing field 'flag'");
    const auto flag = j["flag"].get<std::string>();
    SymmetryKind kind;
    if (flag == "unitary") {
        kind = SymmetryKind::unitary;
    } else if (flag == "antiunitary") {
        kind = SymmetryKind::antiunitary;
    } else {
        throw FormatError("flag must be 'unitary' or 'antiunitary'");
    }
    try {
        return SymmetryOp(kind, complex_matrix_from_json(j));
    } catch (const PreconditionError& e) {
        throw FormatError(e.what());
    }
}

json to_json(const PreservationReport& r)
{
    return json{{"samples", r.samples},
                {"checks", r.checks},
                {"pass_fraction", r.pass_fraction},
                {"max_idempotence_defect", r.max_idempotence_defect},
                {"max_rank_defect", r.max_rank_defect},
                {"inverse_checked", r.inverse_checked}};
}

json to_json(const Classification& c, int n, int k, std::uint64_t seed)
{
    json j{{"format", kClassificationFormat},
           {"n", n},
           {"k", k},
           {"seed", seed},
           {"verdict", to_string(c.verdict)},
           {"flag", c.symmetry ? json(to_string(c.symmetry->kind())) : json(nullptr)},
           {"residual", optional_number(c.residual)},
           {"diagnostics", to_json(c.diagnostics)}};
    j["symmetry"] = c.symmetry ? to_json(*c.symmetry) : json(nullptr);
    if (c.tightened_pass) j["tightened_pass"] = *c.tightened_pass;
    return j;
}

json to_json(const SweepReport& r, std::uint64_t seed)
{
    json entries = json::array();
    json timing = json::array();
    using Key = std::tuple<int, int, std::string>;
    std::map<Key, std::map<std::string, int>> counters;
    for (const auto& e : r.entries) {
        json row{{"n", e.n},
                 {"k", e.k},
                 {"family", to_string(e.family)},
                 {"trial", e.trial},
                 {"seed", e.seed},
                 {"verdict", to_string(e.verdict)},
                 {"residual", optional_number(e.residual)},
                 {"recovery_distance", optional_number(e.recovery_distance)},
                 {"trace_preserving", e.trace_preserving},
                 {"unital", e.unital},
                 {"injective", e.injective},
                 {"orthogonality", e.orthogonality ? json(*e.orthogonality) : json(nullptr)},
                 {"contradiction", e.contradiction}};
        entries.push_back(std::move(row));
        timing.push_back(e.elapsed_ms);
        ++counters[{e.n, e.k, to_string(e.family)}][to_string(e.verdict)];
    }
    json summary = json::array();
    for (const auto& [key, counts] : counters) {
        json c{{"n", std::get<0>(key)}, {"k", std::get<1>(key)}, {"family", std::get<2>(key)}};
        c["counts"] = counts;
        summary.push_back(std::move(c));
    }
    return json{{"format", kSweepFormat},
                {"seed", seed},
                {"entries", std::move(entries)},
                {"summary", std::move(summary)},
                {"contradictions", r.contradictions},
                {"timing", json{{"total_ms", r.total_ms}, {"entry_ms", std::move(timing)}}}};
}

std::string to_csv(const SweepReport& r)
{
    std::ostringstream os;
    os.precision(17);
    os << "n,k,family,trial,seed,verdict,residual,recovery_distance,trace_preserving,unital,injective,"
          "orthogonality,contradiction\n";
    auto opt = [&](const std::optional<double>& v) {
        if (v) os << *v;
    };
    for (const auto& e : r.entries) {
        os << e.n << ',' << e.k << ',' << to_string(e.family) << ',' << e.trial << ',' << e.seed << ','
           << to_string(e.verdict) << ',';
        opt(e.residual);
        os << ',';
        opt(e.recovery_distance);
        os << ',' << e.trace_preserving << ',' << e.unital << ',' << e.injective << ',';
        if (e.orthogonality) os << *e.orthogonality;
        os << ',' << e.contradiction << '\n';
    }
    return os.str();
}

json to_json(const ProbeReport& r, std::uint64_t seed)
{
    json outcomes = json::array();
    for (const auto& o : r.outcomes) {
        outcomes.push_back(json{{"start", o.start},
                                {"kind", to_string(o.kind)},
                                {"initial_penalty", o.initial_penalty},
                                {"penalty", o.penalty},
                                {"iterations", o.iterations},
                                {"converged", o.converged},
                                {"verdict", o.verdict ? json(to_string(*o.verdict)) : json(nullptr)},
                                {"injective", o.injective ? json(*o.injective) : json(nullptr)}});
    }
    return json{{"format", kProbeFormat},
                {"n", r.n},
                {"k", r.k},
                {"seed", seed},
                {"starts", r.outcomes.size()},
                {"converged", r.converged},
                {"verdict_counts", r.verdict_counts},
                {"non_injective", r.non_injective},
                {"unclassified_found", r.unclassified_found},
                {"outcomes", std::move(outcomes)}};
}

json read_json_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw FormatError("cannot open '" + path + "'");
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        throw FormatError("'" + path + "' is not valid JSON: " + e.what());
    }
}

std::string dump(const json& j)
{
    return j.dump(2) + "\n";
}

void write_json_file(const std::string& path, const json& j)
{
    std::ofstream out(path);
    if (!out) throw FormatError("cannot write '" + path + "'");
    out << dump(j);
}

} // namespace witnesskit::io
