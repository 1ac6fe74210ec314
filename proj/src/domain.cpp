#include "pacba/domain.hpp"

#include <algorithm>
#include <cmath>

namespace pacba {

std::string describe(const std::vector<Violation>& violations) {
    std::string out;
    for (const auto& v : violations) {
        if (!out.empty()) out += "; ";
        out += v.field + ": " + v.rule;
    }
    return out;
}

IntegrityError::IntegrityError(std::vector<Violation> violations)
    : Error("catalog integrity error: " + describe(violations)), violations_(std::move(violations)) {}

ValidationError::ValidationError(std::vector<Violation> violations)
    : Error("validation failed: " + describe(violations)), violations_(std::move(violations)) {}

std::string to_string(const SupportSet& supports) {
    if (supports.empty()) return "none";
    std::string out;
    for (auto s : supports) {
        if (!out.empty()) out += '+';
        out += to_string(s);
    }
    return out;
}

namespace {

using enum OperationKind;

constexpr std::array kAnyPass{Seeding,           Fertilization,           SprayingFungicide, SprayingHerbicide,
                              SprayingInsecticide, SprayingGrowthRegulator, MechanicalWeeding, Tillage,
                              Liming,            ManureApplication};
constexpr std::array kBoomOrSpreader{Seeding, Fertilization, SprayingFungicide, SprayingHerbicide, SprayingInsecticide,
                                     SprayingGrowthRegulator};
constexpr std::array kSpraying{SprayingFungicide, SprayingHerbicide, SprayingInsecticide, SprayingGrowthRegulator};
constexpr std::array kSeeding{Seeding};
constexpr std::array kFertilization{Fertilization};
constexpr std::array kLiming{Liming};
constexpr std::array kManure{ManureApplication};
constexpr std::array kWeeding{MechanicalWeeding};

bool finite_nonneg(double x) { return std::isfinite(x) && x >= 0.0; }
bool fraction(double x) { return std::isfinite(x) && x >= 0.0 && x <= 1.0; }

}  // namespace

std::span<const OperationKind> operations_for(MainTechnology main) {
    switch (main) {
        case MainTechnology::AutoSteer: return kAnyPass;
        case MainTechnology::SectionControl: return kBoomOrSpreader;
        case MainTechnology::VRSeeder: return kSeeding;
        case MainTechnology::VRFertilizer: return kFertilization;
        case MainTechnology::VRSprayer: return kSpraying;
        case MainTechnology::VRLime: return kLiming;
        case MainTechnology::VRManure: return kManure;
        case MainTechnology::InterRowHoeingCamera:
        case MainTechnology::InterRowHoeingGPS: return kWeeding;
    }
    return {};
}

InputScope scope_for(MainTechnology main) {
    return main == MainTechnology::AutoSteer || main == MainTechnology::SectionControl ? InputScope::AllInputs
                                                                                     : InputScope::OperationSpecific;
}

InputCategory input_category(OperationKind op) {
    switch (op) {
        case Seeding: return InputCategory::Seed;
        case Fertilization: return InputCategory::Fertiliser;
        case SprayingFungicide:
        case SprayingHerbicide:
        case SprayingInsecticide:
        case SprayingGrowthRegulator: return InputCategory::Pesticide;
        case Liming: return InputCategory::Lime;
        case ManureApplication: return InputCategory::Manure;
        case MechanicalWeeding:
        case Tillage: return InputCategory::None;
    }
    return InputCategory::None;
}

bool is_all_inputs_category(InputCategory category) {
    return category == InputCategory::Seed || category == InputCategory::Fertiliser ||
           category == InputCategory::Pesticide;
}

bool is_builtin_crop(std::string_view name) {
    return std::find(kBuiltinCrops.begin(), kBuiltinCrops.end(), name) != kBuiltinCrops.end();
}

InputCostProfile apply_override(InputCostProfile profile, const CostOverride& delta) {
    if (delta.input_price) profile.input_price = *delta.input_price;
    if (delta.application_rate) profile.application_rate = *delta.application_rate;
    if (delta.treatments_per_year) profile.treatments_per_year = *delta.treatments_per_year;
    if (delta.fuel_price) profile.fuel_price = *delta.fuel_price;
    if (delta.fuel_consumption) profile.fuel_consumption = *delta.fuel_consumption;
    if (delta.labour_cost) profile.labour_cost = *delta.labour_cost;
    if (delta.labour_hours) profile.labour_hours = *delta.labour_hours;
    return profile;
}

double InvestmentSplit::total() const {
    double sum = main;
    for (const auto& [support, cost] : supports) sum += cost;
    return sum;
}

std::string TechnologyOption::label() const {
    std::string out{to_string(main)};
    if (!supports.empty()) out += " [" + to_string(supports) + "]";
    out += " / ";
    out += to_string(operation);
    return out;
}

std::vector<OperationKind> FarmScenario::effective_operations() const {
    std::vector<OperationKind> ops;
    auto add = [&](OperationKind op) {
        if (std::find(ops.begin(), ops.end(), op) == ops.end()) ops.push_back(op);
    };
    for (auto op : operations) add(op);
    for (const auto& o : options) add(o.operation);
    return ops;
}

const CropEntry* FarmScenario::find_crop(std::string_view name) const {
    for (const auto& c : crops) {
        if (c.crop == name) return &c;
    }
    return nullptr;
}

AnnualBenefit& AnnualBenefit::operator+=(const AnnualBenefit& other) {
    revenue_from_yield += other.revenue_from_yield;
    input_saving += other.input_saving;
    fuel_saving += other.fuel_saving;
    labour_saving += other.labour_saving;
    recurring_cost += other.recurring_cost;
    return *this;
}

namespace {

void check_profile(const InputCostProfile& p, const std::string& path, std::vector<Violation>& out) {
    const std::pair<const char*, double> fields[] = {
        {"input_price", p.input_price},         {"application_rate", p.application_rate},
        {"treatments_per_year", p.treatments_per_year}, {"fuel_price", p.fuel_price},
        {"fuel_consumption", p.fuel_consumption}, {"labour_cost", p.labour_cost},
        {"labour_hours", p.labour_hours},
    };
    for (const auto& [name, value] : fields) {
        if (!finite_nonneg(value)) out.push_back({path + "." + name, "must be >= 0"});
    }
}

void check_benefits(const BenefitProfile& b, MainTechnology main, const std::string& path,
                    std::vector<Violation>& out) {
    const std::pair<const char*, double> fields[] = {
        {"input_reduction", b.input_reduction},
        {"yield_increase", b.yield_increase},
        {"fuel_reduction", b.fuel_reduction},
        {"labour_reduction", b.labour_reduction},
    };
    for (const auto& [name, value] : fields) {
        if (!fraction(value)) out.push_back({path + "." + name, "must be within [0, 100] percent"});
    }
    if (b.input_scope != scope_for(main)) {
        out.push_back({path + ".input_scope", "must be '" + std::string(to_string(scope_for(main))) + "' for " +
                                                  std::string(to_string(main))});
    }
}

}  // namespace

std::vector<Violation> validate_scenario(const FarmScenario& s) {
    std::vector<Violation> out;

    if (s.crops.empty()) out.push_back({"crops", "at least one crop with area > 0 is required"});
    for (std::size_t i = 0; i < s.crops.size(); ++i) {
        const auto& c = s.crops[i];
        const std::string path = "crops[" + std::to_string(i) + "]";
        if (c.crop.empty()) {
            out.push_back({path + ".crop", "must not be empty"});
        } else if (!c.custom && !is_builtin_crop(c.crop)) {
            out.push_back({path + ".crop", "unknown builtin crop '" + c.crop + "' (set custom for user-defined crops)"});
        }
        for (std::size_t j = 0; j < i; ++j) {
            if (s.crops[j].crop == c.crop) {
                out.push_back({path + ".crop", "duplicate crop '" + c.crop + "'"});
                break;
            }
        }
        if (!(std::isfinite(c.area) && c.area > 0.0)) out.push_back({path + ".area", "must be > 0"});
        if (c.yield && !(std::isfinite(*c.yield) && *c.yield > 0.0)) out.push_back({path + ".yield", "must be > 0"});
        if (c.price && !finite_nonneg(*c.price)) out.push_back({path + ".price", "must be >= 0"});
        if (c.custom) {
            if (!c.yield) out.push_back({path + ".yield", "required for a custom crop"});
            if (!c.price) out.push_back({path + ".price", "required for a custom crop"});
            if (c.cost_profiles.empty()) {
                out.push_back({path + ".cost_profiles", "a custom crop needs at least one cost profile"});
            }
        } else if (!c.cost_profiles.empty()) {
            out.push_back({path + ".cost_profiles", "only custom crops carry cost profiles; use cost_overrides"});
        }
        for (std::size_t k = 0; k < c.cost_profiles.size(); ++k) {
            check_profile(c.cost_profiles[k], path + ".cost_profiles[" + std::to_string(k) + "]", out);
        }
    }

    if (!(std::isfinite(s.discount_rate) && s.discount_rate > -1.0)) {
        out.push_back({"discount_rate", "must be > -1"});
    }
    if (s.horizon_years < 1 || s.horizon_years > kMaxHorizonYears) {
        out.push_back({"horizon_years", "must be within [1, " + std::to_string(kMaxHorizonYears) + "]"});
    }

    for (std::size_t i = 0; i < s.options.size(); ++i) {
        const auto& o = s.options[i];
        const std::string path = "options[" + std::to_string(i) + "]";
        auto ops = operations_for(o.main);
        if (std::find(ops.begin(), ops.end(), o.operation) == ops.end()) {
            out.push_back({path + ".operation", std::string(to_string(o.main)) + " cannot perform " +
                                                    std::string(to_string(o.operation))});
        }
        for (std::size_t j = 0; j < o.crops.size(); ++j) {
            if (!s.find_crop(o.crops[j])) {
                out.push_back({path + ".crops[" + std::to_string(j) + "]", "unknown crop '" + o.crops[j] + "'"});
            } else if (std::find(o.crops.begin(), o.crops.begin() + static_cast<std::ptrdiff_t>(j), o.crops[j]) !=
                       o.crops.begin() + static_cast<std::ptrdiff_t>(j)) {
                out.push_back({path + ".crops[" + std::to_string(j) + "]", "duplicate crop '" + o.crops[j] + "'"});
            }
        }
        if (o.benefits) check_benefits(*o.benefits, o.main, path + ".benefits", out);
        if (o.main_investment && !finite_nonneg(*o.main_investment)) {
            out.push_back({path + ".main_investment", "must be >= 0"});
        }
        for (const auto& [support, cost] : o.support_investments) {
            const std::string f = path + ".support_investments." + std::string(to_string(support));
            if (!o.supports.contains(support)) out.push_back({f, "support technology not part of the option"});
            if (!finite_nonneg(cost)) out.push_back({f, "must be >= 0"});
        }
        if (o.recurring_cost && !finite_nonneg(*o.recurring_cost)) {
            out.push_back({path + ".recurring_cost", "must be >= 0"});
        }
    }

    for (std::size_t i = 0; i < s.cost_overrides.size(); ++i) {
        const auto& d = s.cost_overrides[i];
        const std::string path = "cost_overrides[" + std::to_string(i) + "]";
        if (!s.find_crop(d.crop)) out.push_back({path + ".crop", "unknown crop '" + d.crop + "'"});
        const std::pair<const char*, const std::optional<double>*> fields[] = {
            {"input_price", &d.input_price},         {"application_rate", &d.application_rate},
            {"treatments_per_year", &d.treatments_per_year}, {"fuel_price", &d.fuel_price},
            {"fuel_consumption", &d.fuel_consumption}, {"labour_cost", &d.labour_cost},
            {"labour_hours", &d.labour_hours},
        };
        for (const auto& [name, value] : fields) {
            if (*value && !finite_nonneg(**value)) out.push_back({path + "." + name, "must be >= 0"});
        }
    }
    return out;
}

}  // namespace pacba
