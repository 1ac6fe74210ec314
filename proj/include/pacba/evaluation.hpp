#pragma once

#include "pacba/catalog.hpp"
#include "pacba/domain.hpp"

namespace pacba {

/// Fills every unset option value from the catalog. Throws
/// UnresolvableOptionError naming the field the user has to supply.
TechnologyOption resolve_option(const Catalog& catalog, const FarmScenario& scenario, std::size_t option_index);

/// Scenario with crop yields/prices filled from catalog defaults and the
/// storage id cleared: the complete input an evaluation actually used.
FarmScenario effective_scenario(const FarmScenario& scenario, const Catalog& catalog);

/// Per-option and portfolio results.
///
/// Portfolio investment counts every main technology per option but each
/// distinct support technology once, scaled over the combined area of all
/// options that use it. Portfolio flows are the sum of option flows.
///
/// Throws ValidationError (including "no options") or UnresolvableOptionError.
EvaluationResult evaluate(const FarmScenario& scenario, const Catalog& catalog);

/// Deduplicated portfolio investment for already-resolved options with their
/// worked areas (one entry per option).
double portfolio_investment(std::span<const TechnologyOption> options, const FarmScenario& scenario);

}  // namespace pacba
