#pragma once

#include <nlohmann/json.hpp>

#include "robba/frobcoh.hpp"
#include "robba/pi1.hpp"

namespace robba::json {

using nlohmann::json;

// Integers that fit in 64 bits are written as numbers, larger ones as strings.
json integer(const mpz_class& z);
json rational(const mpq_class& x);
mpq_class parse_rational(const json& j, const std::string& where);

json to_json(const TruncatedSeries& s);
json to_json(const FrobeniusLift& f);
json to_json(const SeriesMatrix& m);
json to_json(const QMatrix& m);
json to_json(const ScalarMatrix& m);
json to_json(const PhiNablaModule& m);
json to_json(const LogPhiNablaModule& m);
json to_json(const PhiNModule& v);
json to_json(const NilpotentLieData& d);
json to_json(const ValidationReport& r);
json to_json(const CohomologyReport& r);
json to_json(const ReductionVerdict& v);
json to_json(const NonsingularVerdict& v);

// Parsers throw InvalidInput naming the offending location.
TruncatedSeries series_from_json(const json& j, const std::string& where = "series");
FrobeniusLift frobenius_from_json(const json& j, const std::string& where = "frob");
SeriesMatrix series_matrix_from_json(const json& j, const std::string& where);
QMatrix rational_matrix_from_json(const json& j, const std::string& where);
PhiNablaModule module_from_json(const json& j);
LogPhiNablaModule log_module_from_json(const json& j);
PhiNModule phin_from_json(const json& j);
NilpotentLieData lie_from_json(const json& j);

enum class Kind { Module, LogModule, PhiN, Lie };
/// Decides the schema of an input object by its fields.
Kind detect_kind(const json& j);

}  // namespace robba::json
