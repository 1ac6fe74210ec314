#pragma once

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "pacba/domain.hpp"

namespace pacba {

/// One Table-1 style benefit combination. `operation` is unset for rows that
/// apply to every operation the compatibility table lists for the pair
/// (auto-steer and section control).
struct BenefitRow {
    std::string group;
    MainTechnology main = MainTechnology::AutoSteer;
    SupportSet supports;
    std::optional<OperationKind> operation;
    BenefitProfile benefits;

    bool operator==(const BenefitRow&) const = default;
};

struct CompatibilityEntry {
    OperationKind operation = OperationKind::Seeding;
    MainTechnology main = MainTechnology::AutoSteer;
    std::vector<SupportSet> support_sets;

    bool operator==(const CompatibilityEntry&) const = default;
};

struct CostProfileEntry {
    Region region = Region::CentralEurope;
    std::string crop;
    InputCostProfile profile;
    std::string provenance;

    bool operator==(const CostProfileEntry&) const = default;
};

struct InvestmentEntry {
    MainTechnology main = MainTechnology::AutoSteer;
    SupportSet supports;
    InvestmentSplit split;
    double recurring_cost = 0.0;
    std::string provenance;

    bool operator==(const InvestmentEntry&) const = default;
};

struct CropDefaults {
    Crop crop;
    std::string provenance;

    bool operator==(const CropDefaults&) const = default;
};

/// The static reference data: benefit combinations, technology/operation
/// compatibility, regional cost profiles, investments and crop defaults.
/// Immutable once loaded.
struct Catalog {
    std::string version;
    std::vector<CropDefaults> crops;
    std::vector<BenefitRow> benefits;
    std::vector<CompatibilityEntry> compatibility;
    std::vector<CostProfileEntry> cost_profiles;
    std::vector<InvestmentEntry> investments;

    bool operator==(const Catalog&) const = default;
};

struct Combination {
    MainTechnology main = MainTechnology::AutoSteer;
    SupportSet supports;

    bool operator==(const Combination&) const = default;
};

/// Parses and integrity-checks a catalog document.
/// Throws ParseError for malformed documents and IntegrityError otherwise.
Catalog load_catalog(std::string_view document);
Catalog load_catalog_file(const std::filesystem::path& path);
std::string serialize_catalog(const Catalog& catalog);

/// Every integrity rule the catalog breaks; empty for a valid catalog.
std::vector<Violation> check_integrity(const Catalog& catalog);

/// Exact-set lookup; throws NotFoundError when the combination has no row.
BenefitProfile default_benefits(const Catalog& catalog, MainTechnology main, const SupportSet& supports,
                                OperationKind operation);
std::optional<BenefitProfile> find_benefits(const Catalog& catalog, MainTechnology main, const SupportSet& supports,
                                            OperationKind operation);

std::vector<Combination> compatible_options(const Catalog& catalog, OperationKind operation);

const InvestmentEntry* find_investment(const Catalog& catalog, MainTechnology main, const SupportSet& supports);
const CropDefaults* find_crop_defaults(const Catalog& catalog, std::string_view crop);
const CostProfileEntry* find_cost_profile(const Catalog& catalog, Region region, std::string_view crop,
                                          OperationKind operation);

/// Effective profile for one crop/operation: the seed profile for builtin
/// crops or the scenario's own profile for custom crops, with every matching
/// override applied in order. Throws NotFoundError when none exists.
InputCostProfile cost_profile(const Catalog& catalog, Region region, const CropEntry& crop, OperationKind operation,
                              std::span<const CostOverride> overrides = {});

}  // namespace pacba
