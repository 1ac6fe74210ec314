#pragma once

#include <optional>
#include <span>
#include <vector>

#include "pacba/domain.hpp"

// Pure functions over cash flows. Flows are end-of-year amounts for years
// 1..n; the investment is paid at year 0.
namespace pacba::finance {

/// Economies of scale: base × max(1, area / 50)^0.6. The catalog's base
/// investments are sized for a 50 ha farm and are never scaled down.
double scale_investment(double base_investment, double total_area);

inline constexpr double kScaleExponent = 0.6;

/// Per-hectare agronomic data of one crop as used in a calculation.
struct CropEconomics {
    double area = 0.0;   // ha
    double yield = 0.0;  // t/ha
    double price = 0.0;  // EUR/t
};

/// Annual benefit of one option on one crop.
///
/// `own` is the cost profile of the option's operation (fuel, labour).
/// `input_profiles` are the profiles whose inputs the option reduces: the
/// own operation for operation-specific benefits, or every seed/fertiliser/
/// pesticide operation of the scenario for all-inputs benefits.
AnnualBenefit annual_benefit(const CropEconomics& crop, const BenefitProfile& benefits, double recurring_cost,
                             const InputCostProfile& own, std::span<const InputCostProfile> input_profiles);

/// Physical input saved per year, one entry per affected profile.
std::vector<InputSaving> input_saved_quantity(const BenefitProfile& benefits,
                                              std::span<const InputCostProfile> input_profiles, double area);

/// `horizon_years` copies of the benefit's net flow.
std::vector<double> cash_flows(const AnnualBenefit& benefit, int horizon_years);

/// −I′ + Σ flows[t−1] / (1 + r)^t. Throws DomainError for r ≤ −1.
double npv(double scaled_investment, std::span<const double> flows, double discount_rate);

/// Rate r* with npv(I′, flows, r*) ≈ 0, or nullopt when npv keeps one sign
/// on (−0.999, 10].
std::optional<double> irr(double scaled_investment, std::span<const double> flows);

inline constexpr double kIrrLowerBound = -0.999;
inline constexpr double kIrrUpperBound = 10.0;
inline constexpr double kIrrScanStep = 0.01;
inline constexpr double kIrrIntervalWidth = 1e-12;

/// PV(positive flows) / (I′ + PV(|negative flows|)); nullopt when the
/// denominator is zero.
std::optional<double> bcr(double scaled_investment, std::span<const double> flows, double discount_rate);

/// Investment, flows and all three indicators for one cash-flow stream.
FinancialSummary summarize(double scaled_investment, const AnnualBenefit& annual, std::vector<double> flows,
                           double discount_rate, std::vector<InputSaving> input_saved);

}  // namespace pacba::finance
