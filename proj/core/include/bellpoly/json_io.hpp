#pragma once

#include <nlohmann/json.hpp>

#include "bellpoly/correlation.hpp"
#include "bellpoly/epr_table.hpp"
#include "bellpoly/fine.hpp"
#include "bellpoly/inequalities.hpp"
#include "bellpoly/labrecord.hpp"
#include "bellpoly/ldm.hpp"
#include "bellpoly/polytope.hpp"

namespace bellpoly::jsonio {

// Reports keep insertion order so seeded runs are byte-identical.
using Json = nlohmann::ordered_json;

/// {"n": ..., "S": [[i,j]...], "p": [...], "p_pair": [...]}.
Json to_json(const CorrelationVector& v);
Json to_json(const ExactCorrelationVector& v);  // entries as "num/den" strings

/// Accepts numbers or rational strings ("3/8") in "p"/"p_pair".
CorrelationVector correlation_vector_from_json(const Json& j);
ExactCorrelationVector exact_correlation_vector_from_json(const Json& j);

Json to_json(const ineq::InequalityReport& report);
Json to_json(const ineq::ExactInequalityReport& report);

Json to_json(const EprConditionalTable& table);
Json to_json(const ldm::ConditionalTable& table);  // undefined cells -> null

Json to_json(const polytope::MembershipVerdict& verdict);
Json to_json(const polytope::ExactMembershipVerdict& verdict);

Json to_json(const ldm::LdmModel& model);
ldm::LdmModel ldm_model_from_json(const Json& j);

Json to_json(const ldm::EnsembleStats& stats);
Json to_json(const ldm::ScreeningOffReport& report);
Json to_json(const ldm::ParameterIndependenceReport& report);
Json to_json(const ldm::DecompositionReport& report);

Json to_json(const fine::CoincidenceStats& stats);
Json to_json(const fine::LoopholeReport& report);

Json to_json(const labrecord::FrequencyVector& f);

}  // namespace bellpoly::jsonio
