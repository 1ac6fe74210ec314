#pragma once

#include <array>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "pacba/error.hpp"

namespace pacba {

enum class Region { NorthernEurope, CentralEurope, SouthSouthwesternEurope, SoutheastEurope };

enum class OperationKind {
    Seeding,
    Fertilization,
    SprayingFungicide,
    SprayingHerbicide,
    SprayingInsecticide,
    SprayingGrowthRegulator,
    MechanicalWeeding,
    Tillage,
    Liming,
    ManureApplication,
};

enum class MainTechnology {
    AutoSteer,
    SectionControl,
    VRSeeder,
    VRFertilizer,
    VRSprayer,
    VRLime,
    VRManure,
    InterRowHoeingCamera,
    InterRowHoeingGPS,
};

enum class SupportTechnology {
    NormalGPS,
    RTKGPS,
    CTF,
    Satellite,
    SurveyUAV,
    NSensor,
    YieldMap,
    SoilEC,
    SoilPH,
    SoilSampling,
};

/// Which inputs an option's input reduction applies to. Auto-steer and
/// section control reduce every seed, fertiliser and pesticide input on the
/// farm; every other technology only the input of its own operation.
enum class InputScope { OperationSpecific, AllInputs };

enum class InputCategory { None, Seed, Fertiliser, Pesticide, Lime, Manure };

// Canonical kebab-case text for every enumeration. The tables below are the
// single mapping used by all file formats and the HTTP API.
template <class E>
struct EnumText;

template <>
struct EnumText<Region> {
    static constexpr std::string_view type_name = "region";
    static constexpr std::array<std::pair<Region, std::string_view>, 4> entries{{
        {Region::NorthernEurope, "northern-europe"},
        {Region::CentralEurope, "central-europe"},
        {Region::SouthSouthwesternEurope, "south-southwestern-europe"},
        {Region::SoutheastEurope, "southeast-europe"},
    }};
};

template <>
struct EnumText<OperationKind> {
    static constexpr std::string_view type_name = "operation";
    static constexpr std::array<std::pair<OperationKind, std::string_view>, 10> entries{{
        {OperationKind::Seeding, "seeding"},
        {OperationKind::Fertilization, "fertilization"},
        {OperationKind::SprayingFungicide, "spraying-fungicide"},
        {OperationKind::SprayingHerbicide, "spraying-herbicide"},
        {OperationKind::SprayingInsecticide, "spraying-insecticide"},
        {OperationKind::SprayingGrowthRegulator, "spraying-growth-regulator"},
        {OperationKind::MechanicalWeeding, "mechanical-weeding"},
        {OperationKind::Tillage, "tillage"},
        {OperationKind::Liming, "liming"},
        {OperationKind::ManureApplication, "manure-application"},
    }};
};

template <>
struct EnumText<MainTechnology> {
    static constexpr std::string_view type_name = "main technology";
    static constexpr std::array<std::pair<MainTechnology, std::string_view>, 9> entries{{
        {MainTechnology::AutoSteer, "auto-steer"},
        {MainTechnology::SectionControl, "section-control"},
        {MainTechnology::VRSeeder, "vr-seeder"},
        {MainTechnology::VRFertilizer, "vr-fertilizer"},
        {MainTechnology::VRSprayer, "vr-sprayer"},
        {MainTechnology::VRLime, "vr-lime"},
        {MainTechnology::VRManure, "vr-manure"},
        {MainTechnology::InterRowHoeingCamera, "inter-row-hoeing-camera"},
        {MainTechnology::InterRowHoeingGPS, "inter-row-hoeing-gps"},
    }};
};

template <>
struct EnumText<SupportTechnology> {
    static constexpr std::string_view type_name = "support technology";
    static constexpr std::array<std::pair<SupportTechnology, std::string_view>, 10> entries{{
        {SupportTechnology::NormalGPS, "normal-gps"},
        {SupportTechnology::RTKGPS, "rtk-gps"},
        {SupportTechnology::CTF, "ctf"},
        {SupportTechnology::Satellite, "satellite"},
        {SupportTechnology::SurveyUAV, "survey-uav"},
        {SupportTechnology::NSensor, "n-sensor"},
        {SupportTechnology::YieldMap, "yield-map"},
        {SupportTechnology::SoilEC, "soil-ec"},
        {SupportTechnology::SoilPH, "soil-ph"},
        {SupportTechnology::SoilSampling, "soil-sampling"},
    }};
};

template <>
struct EnumText<InputScope> {
    static constexpr std::string_view type_name = "input scope";
    static constexpr std::array<std::pair<InputScope, std::string_view>, 2> entries{{
        {InputScope::OperationSpecific, "operation-specific"},
        {InputScope::AllInputs, "all-inputs"},
    }};
};

template <class E>
constexpr std::string_view to_string(E value) {
    for (const auto& [v, text] : EnumText<E>::entries) {
        if (v == value) return text;
    }
    return "?";
}

template <class E>
constexpr std::optional<E> try_parse(std::string_view text) {
    for (const auto& [v, t] : EnumText<E>::entries) {
        if (t == text) return v;
    }
    return std::nullopt;
}

template <class E>
E parse_enum(std::string_view text) {
    if (auto v = try_parse<E>(text)) return *v;
    throw ParseError("unknown " + std::string(EnumText<E>::type_name) + " '" + std::string(text) + "'");
}

template <class E>
constexpr auto all_values() {
    std::array<E, EnumText<E>::entries.size()> out{};
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = EnumText<E>::entries[i].first;
    return out;
}

using SupportSet = std::set<SupportTechnology>;

std::string to_string(const SupportSet& supports);  // "rtk-gps+ctf", "none" when empty

/// Operations a main technology can physically perform. Broader than the
/// catalog's compatibility table: combinations outside the catalog are
/// selectable with user-supplied benefits.
std::span<const OperationKind> operations_for(MainTechnology main);
InputScope scope_for(MainTechnology main);
InputCategory input_category(OperationKind op);
bool is_all_inputs_category(InputCategory category);

inline constexpr std::array<std::string_view, 5> kBuiltinCrops{"wheat", "maize", "sugar-beet", "canola", "potato"};
bool is_builtin_crop(std::string_view name);

inline constexpr double kReferenceAreaHa = 50.0;
inline constexpr double kDefaultDiscountRate = 0.04;
inline constexpr int kDefaultHorizonYears = 8;
inline constexpr int kMaxHorizonYears = 100;

struct Crop {
    std::string name;
    bool builtin = true;
    double default_yield = 0.0;  // t/ha
    double default_price = 0.0;  // EUR/t

    bool operator==(const Crop&) const = default;
};

/// Benefit percentages, stored as fractions in [0, 1].
struct BenefitProfile {
    double input_reduction = 0.0;
    double yield_increase = 0.0;
    double fuel_reduction = 0.0;
    double labour_reduction = 0.0;
    InputScope input_scope = InputScope::OperationSpecific;

    bool operator==(const BenefitProfile&) const = default;
};

/// Baseline economics of one operation on one crop. Rates are per pass.
struct InputCostProfile {
    OperationKind operation = OperationKind::Seeding;
    std::string input;          // e.g. "nitrogen fertiliser"; "none" for operations without inputs
    std::string unit = "kg";    // native unit of application_rate (kg or l)
    double input_price = 0.0;   // EUR per unit
    double application_rate = 0.0;
    double treatments_per_year = 0.0;
    double fuel_price = 0.0;        // EUR/l
    double fuel_consumption = 0.0;  // l/ha per pass
    double labour_cost = 0.0;       // EUR/h
    double labour_hours = 0.0;      // h/ha per pass

    bool operator==(const InputCostProfile&) const = default;
};

/// Field-by-field replacement of a catalog cost profile for one crop/operation.
struct CostOverride {
    std::string crop;
    OperationKind operation = OperationKind::Seeding;
    std::optional<double> input_price;
    std::optional<double> application_rate;
    std::optional<double> treatments_per_year;
    std::optional<double> fuel_price;
    std::optional<double> fuel_consumption;
    std::optional<double> labour_cost;
    std::optional<double> labour_hours;

    bool operator==(const CostOverride&) const = default;
};

InputCostProfile apply_override(InputCostProfile profile, const CostOverride& delta);

/// Base investment for the 50 ha reference size, split into the main
/// technology and one component per support technology.
struct InvestmentSplit {
    double main = 0.0;
    std::map<SupportTechnology, double> supports;

    double total() const;
    bool operator==(const InvestmentSplit&) const = default;
};

/// An option as the user selected it. Unset fields are filled from the catalog.
struct OptionSelection {
    MainTechnology main = MainTechnology::AutoSteer;
    SupportSet supports;
    OperationKind operation = OperationKind::Seeding;
    std::vector<std::string> crops;  // empty: every crop in the scenario
    std::optional<BenefitProfile> benefits;
    std::optional<double> main_investment;
    std::map<SupportTechnology, double> support_investments;
    std::optional<double> recurring_cost;

    bool operator==(const OptionSelection&) const = default;
};

enum class ValueSource { Catalog, User };

/// An option with every value resolved, as used by the finance engine.
struct TechnologyOption {
    MainTechnology main = MainTechnology::AutoSteer;
    SupportSet supports;
    OperationKind operation = OperationKind::Seeding;
    std::vector<std::string> crops;
    BenefitProfile benefits;
    InvestmentSplit investment;
    double recurring_cost = 0.0;  // EUR/yr
    ValueSource benefits_source = ValueSource::Catalog;
    std::string investment_provenance;  // catalog provenance tag, or "user"

    double base_investment() const { return investment.total(); }
    std::string label() const;
    bool operator==(const TechnologyOption&) const = default;
};

struct CropEntry {
    std::string crop;
    bool custom = false;
    double area = 0.0;             // ha
    std::optional<double> yield;   // t/ha; catalog default when unset
    std::optional<double> price;   // EUR/t; catalog default when unset
    std::vector<InputCostProfile> cost_profiles;  // custom crops only

    bool operator==(const CropEntry&) const = default;
};

struct FarmScenario {
    std::string id;
    Region region = Region::CentralEurope;
    std::vector<CropEntry> crops;
    std::vector<OperationKind> operations;  // selected operations; options' operations are always included
    std::vector<OptionSelection> options;
    double discount_rate = kDefaultDiscountRate;
    int horizon_years = kDefaultHorizonYears;
    std::vector<CostOverride> cost_overrides;

    /// Declared operations plus those of every option, in first-seen order.
    std::vector<OperationKind> effective_operations() const;
    const CropEntry* find_crop(std::string_view name) const;
    bool operator==(const FarmScenario&) const = default;
};

struct AnnualBenefit {
    double revenue_from_yield = 0.0;
    double input_saving = 0.0;
    double fuel_saving = 0.0;
    double labour_saving = 0.0;
    double recurring_cost = 0.0;

    /// R_t: yield revenue plus every saving.
    double annual_revenue() const { return revenue_from_yield + input_saving + fuel_saving + labour_saving; }
    /// C_t: recurring technology cost.
    double annual_cost_delta() const { return recurring_cost; }
    double net_flow() const { return annual_revenue() - recurring_cost; }

    AnnualBenefit& operator+=(const AnnualBenefit& other);
    bool operator==(const AnnualBenefit&) const = default;
};

struct InputSaving {
    std::string input;
    std::string unit;
    OperationKind operation = OperationKind::Seeding;
    double quantity = 0.0;  // unit per year
    double value = 0.0;     // EUR per year

    bool operator==(const InputSaving&) const = default;
};

struct FinancialSummary {
    double scaled_investment = 0.0;
    AnnualBenefit annual;
    std::vector<double> cash_flows;
    double npv = 0.0;
    std::optional<double> irr;
    std::optional<double> bcr;
    std::vector<InputSaving> input_saved;

    bool operator==(const FinancialSummary&) const = default;
};

struct OptionResult {
    TechnologyOption option;
    double area = 0.0;
    FinancialSummary summary;

    bool operator==(const OptionResult&) const = default;
};

/// A value the evaluation used that differs from, or is absent from, the
/// catalog defaults. Values are in display units (`unit`).
struct Deviation {
    std::string field;
    double value = 0.0;
    std::optional<double> catalog_default;
    std::string unit;

    bool operator==(const Deviation&) const = default;
};

struct ProvenanceFlag {
    std::string subject;
    std::string provenance;

    bool operator==(const ProvenanceFlag&) const = default;
};

struct EvaluationResult {
    FarmScenario scenario;  // effective input: defaults filled, id cleared
    std::string catalog_version;
    std::vector<OptionResult> options;
    FinancialSummary portfolio;
    std::vector<Deviation> deviations;
    std::vector<ProvenanceFlag> provenance;

    bool operator==(const EvaluationResult&) const = default;
};

std::vector<Violation> validate_scenario(const FarmScenario& scenario);

}  // namespace pacba
