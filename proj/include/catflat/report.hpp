#ifndef CATFLAT_REPORT_HPP
#define CATFLAT_REPORT_HPP

#include <string>

#include "catflat/comon.hpp"
#include "catflat/hankel.hpp"
#include "catflat/matrix.hpp"
#include "catflat/osculate.hpp"
#include "catflat/strassen.hpp"

namespace catflat {

/*
 * Structured reports are single-line JSON records with a fixed key order, so
 * a run with an explicit seed replays byte for byte (the *_ms timing keys are
 * the only fields that vary between replays). Sweeps emit one record per
 * line in increasing n.
 */

std::string verdict_json(const ComonVerdict& v);
std::string verdict_human(const ComonVerdict& v);

std::string witness_json(const StrassenWitness& w, std::uint64_t seed);
std::string witness_human(const StrassenWitness& w, std::uint64_t seed);

std::string osculation_json(const OsculationReport& r);
std::string osculation_human(const OsculationReport& r);

std::string matrix_json(const QMatrix& m);
std::string matrix_human(const QMatrix& m);

} // namespace catflat

#endif
