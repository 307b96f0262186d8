#include "catflat/report.hpp"

#include <sstream>

#include <nlohmann/json.hpp>

namespace catflat {

namespace {

using nlohmann::ordered_json;

} // namespace

std::string verdict_json(const ComonVerdict& v) {
    ordered_json j;
    j["n"] = v.n;
    j["d"] = v.d;
    j["h"] = v.h;
    j["branch"] = to_string(v.branch);
    j["threshold"] = v.threshold;
    j["k"] = v.k;
    j["det_provenance"] = to_string(v.det_provenance);
    j["seed"] = v.seed;
    if (v.minor == MinorMode::random_rows_cols) j["minor_mode"] = "RandomRowsCols";
    j["elapsed_ms"] = v.elapsed_ms;
    return j.dump();
}

std::string verdict_human(const ComonVerdict& v) {
    std::ostringstream os;
    os << "Comon check for n = " << v.n << ", d = " << v.d << ", h = " << v.h << "\n";
    os << "Lowest rank for which the usual flattenings method does not work = " << v.threshold
       << "\n";
    switch (v.branch) {
        case ComonBranch::usual_flattenings:
            os << "Rank " << v.h << " is below that bound: the usual flattenings method applies.\n";
            break;
        case ComonBranch::holds_new_method:
            os << "The minor of order " << 2 * v.h - 1 << " of Cat_" << v.k
               << "(x0*F) has nonzero determinant: the conjecture holds for general forms of rank "
               << v.h << ".\n";
            break;
        case ComonBranch::even_degree_na:
            os << "The degree is even: the method does not apply.\n";
            break;
        case ComonBranch::growth_condition_na:
            os << "Growth condition fails (C(n+k,n) < 2*C(n+k-1,n)): the method does not apply.\n";
            break;
        case ComonBranch::minor_too_large_na:
            os << "Requested minor of order " << 2 * v.h - 1 << " exceeds the catalecticant size: "
               << "the method does not apply.\n";
            break;
        case ComonBranch::determinant_vanished_na:
            os << "The determinant vanishes: the method does not apply for rank " << v.h << ".\n";
            break;
    }
    os << "branch = " << to_string(v.branch) << ", det_provenance = " << to_string(v.det_provenance)
       << ", seed = " << v.seed << ", elapsed = " << v.elapsed_ms << " ms\n";
    return os.str();
}

std::string witness_json(const StrassenWitness& w, std::uint64_t seed) {
    ordered_json j;
    j["s"] = w.s;
    j["rank_f"] = w.rank_f;
    j["rank_g"] = w.rank_g;
    j["rank_sum"] = w.rank_sum;
    j["additivity_certified"] = w.additivity_certified;
    j["seed"] = seed;
    return j.dump();
}

std::string witness_human(const StrassenWitness& w, std::uint64_t seed) {
    std::ostringstream os;
    os << "Strassen additivity witness at catalecticant order s = " << w.s << "\n";
    os << "rank Cat_s(F) = " << w.rank_f << ", rank Cat_s(G) = " << w.rank_g
       << ", rank Cat_s(F+G) = " << w.rank_sum << "\n";
    if (w.additivity_certified)
        os << "Flattening ranks are additive and match the known ranks: additivity certified at "
              "this order.\n";
    else
        os << "Flattening ranks do not certify additivity at this order (lower bound only).\n";
    os << "seed = " << seed << "\n";
    return os.str();
}

std::string osculation_json(const OsculationReport& r) {
    ordered_json j;
    j["n"] = r.n;
    j["d"] = r.d;
    j["s"] = r.s;
    j["outcome"] = to_string(r.outcome);
    j["trials"] = r.trials;
    j["zero_trials"] = r.zero_trials;
    j["prime"] = r.prime;
    j["matrix_size"] = r.matrix_size;
    if (r.outcome == OsculationReport::Outcome::not_contained) j["witness_seed"] = r.witness_seed;
    j["seed"] = r.seed;
    j["elapsed_ms"] = r.elapsed_ms;
    return j.dump();
}

std::string osculation_human(const OsculationReport& r) {
    std::ostringstream os;
    os << "Osculating-containment test for n = " << r.n << ", d = " << r.d << ", s = " << r.s
       << " (det Cat_" << r.s << "(x0*F), a " << r.matrix_size << "x" << r.matrix_size
       << " determinant over F_" << r.prime << ")\n";
    if (r.outcome == OsculationReport::Outcome::contained_probabilistically)
        os << "All " << r.zero_trials << "/" << r.trials
           << " sampled determinants vanished: contained (probabilistic; confidence grows with "
              "trials and field size).\n";
    else
        os << "Nonzero determinant at trial " << r.zero_trials + 1
           << " (stream seed " << r.witness_seed << "): not contained (certified).\n";
    os << "seed = " << r.seed << ", elapsed = " << r.elapsed_ms << " ms\n";
    return os.str();
}

std::string matrix_json(const QMatrix& m) {
    ordered_json j;
    j["rows"] = m.rows();
    j["cols"] = m.cols();
    ordered_json rows = ordered_json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        ordered_json row = ordered_json::array();
        for (std::size_t k = 0; k < m.cols(); ++k) row.push_back(m(i, k).get_str());
        rows.push_back(std::move(row));
    }
    j["entries"] = std::move(rows);
    return j.dump();
}

std::string matrix_human(const QMatrix& m) {
    std::vector<std::string> cells(m.rows() * m.cols());
    std::size_t width = 1;
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t k = 0; k < m.cols(); ++k) {
            cells[i * m.cols() + k] = m(i, k).get_str();
            width = std::max(width, cells[i * m.cols() + k].size());
        }
    std::ostringstream os;
    for (std::size_t i = 0; i < m.rows(); ++i) {
        os << "[ ";
        for (std::size_t k = 0; k < m.cols(); ++k) {
            const std::string& s = cells[i * m.cols() + k];
            os << std::string(width - s.size(), ' ') << s << (k + 1 < m.cols() ? "  " : " ");
        }
        os << "]\n";
    }
    return os.str();
}

} // namespace catflat
