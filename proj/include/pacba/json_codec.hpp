#pragma once

#include <string>
#include <string_view>

#include <json.hpp>

#include "pacba/catalog.hpp"
#include "pacba/domain.hpp"

namespace pacba {

using Json = nlohmann::json;

/// Human percent (3) to stored fraction (0.03).
double percent_to_fraction(double percent);

/// Stored fraction to human percent. Picks the shortest decimal whose
/// quotient by 100 reproduces `fraction` exactly, so any fraction produced
/// by percent_to_fraction survives a write/read cycle bit for bit.
double fraction_to_percent(double fraction);

/// Parses text as JSON; throws ParseError with the parser's message.
Json parse_json(std::string_view text);

/// Canonical text: two-space indent, sorted keys, trailing newline.
std::string dump_json(const Json& value);

Json to_json(const InputCostProfile& profile);
InputCostProfile cost_profile_from_json(const Json& j, std::string_view path);

Json to_json(const BenefitProfile& benefits);
BenefitProfile benefits_from_json(const Json& j, std::string_view path, InputScope default_scope);

Json to_json(const FarmScenario& scenario);
/// Throws ParseError naming the offending path. Defaults (discount rate,
/// horizon) are filled so the returned value is the complete effective input.
FarmScenario scenario_from_json(const Json& j);

Json to_json(const EvaluationResult& result);
EvaluationResult result_from_json(const Json& j);

Json to_json(const Catalog& catalog);
Catalog catalog_from_json(const Json& j);

Json to_json(const Violation& v);

}  // namespace pacba
