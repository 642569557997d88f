#pragma once

#include <json.hpp>

#include "kummerlab/descent.hpp"
#include "kummerlab/kummer.hpp"

// JSON shapes used by the CLI and golden files. Schema version is carried
// in every top-level report as {"schema": "kummerlab/1"}.

namespace kummerlab {

inline constexpr const char* kSchema = "kummerlab/1";

class input_error : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

nlohmann::json to_json(const Integer& n);  // string when out of 53-bit range
nlohmann::json to_json(const Rational& q);
nlohmann::json to_json(const SquareClass& c);
nlohmann::json to_json(const CoordinatePair& p);
nlohmann::json to_json(const CohClass& c);  // array of squarefree representatives
nlohmann::json to_json(const BVector& b);
nlohmann::json to_json(const SelmerGroup& sel);
nlohmann::json to_json(const MazurRubinReport& rep);
nlohmann::json to_json(const TwoStructureResult& res);
nlohmann::json to_json(const AdmissibilityReport& rep, const TwoStructure& ts);
nlohmann::json to_json(const HypothesisReport& rep);
nlohmann::json to_json(const std::array<QuadricForm, 3>& forms);
nlohmann::json to_json(const SolubilityCertificate& cert);

Integer integer_from_json(const nlohmann::json& j, const char* field);
Rational rational_from_json(const nlohmann::json& j, const char* field);

// {"c": [c1, c2, c3], "d": int} ("d" optional, default 1)
EllipticCurveFull2 curve_from_json(const nlohmann::json& j);
// {"a": [6 ints], "b": [6 ints or "p/q" strings], "M": [5 primes]} (M optional)
KummerSpec kummer_spec_from_json(const nlohmann::json& j);

}  // namespace kummerlab
