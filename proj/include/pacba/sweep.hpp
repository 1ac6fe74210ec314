#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pacba/catalog.hpp"
#include "pacba/domain.hpp"

namespace pacba {

struct SweepGrid {
    double from = 0.0;
    double to = 0.0;
    double step = 0.0;
};

struct SweepRow {
    double value = 0.0;
    double npv = 0.0;
    std::optional<double> bcr;
    std::optional<double> irr;
};

struct SweepResult {
    std::string parameter;
    std::vector<SweepRow> rows;  // grid order
    bool irr_constant = false;   // discount-rate sweeps leave IRR unchanged
    std::vector<std::string> warnings;
};

/// from, from + step, ... up to `to` (inclusive within rounding). Throws
/// ValidationError for step <= 0, from > to or an oversized grid.
std::vector<double> grid_points(const SweepGrid& grid);

/// Parameters, addressed by dotted path:
///   discount-rate
///   crops.<i|name>.area | yield | price
///   options.<i>.input-reduction | yield-increase | fuel-reduction | labour-reduction   (percent)
///   options.<i>.main-investment | recurring-cost
/// Throws ValidationError for an unknown path.
FarmScenario apply_parameter(const FarmScenario& scenario, const Catalog& catalog, std::string_view parameter,
                             double value);

/// Portfolio indicators at every grid point. Warns when NPV is not strictly
/// decreasing along a discount-rate sweep whose flows are all positive.
SweepResult sweep(const FarmScenario& scenario, const Catalog& catalog, std::string_view parameter,
                  const SweepGrid& grid);

}  // namespace pacba
