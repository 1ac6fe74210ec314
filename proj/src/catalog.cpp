#include "pacba/catalog.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "pacba/json_codec.hpp"

namespace pacba {

namespace {

std::string describe_combination(MainTechnology main, const SupportSet& supports, std::optional<OperationKind> op) {
    std::string out = std::string(to_string(main)) + " [" + to_string(supports) + "]";
    out += " / ";
    out += op ? std::string(to_string(*op)) : std::string("any operation");
    return out;
}

bool nonneg(double x) { return std::isfinite(x) && x >= 0.0; }

bool listed_in_compatibility(const Catalog& c, MainTechnology main, const SupportSet& supports, OperationKind op) {
    for (const auto& e : c.compatibility) {
        if (e.operation != op || e.main != main) continue;
        if (std::find(e.support_sets.begin(), e.support_sets.end(), supports) != e.support_sets.end()) return true;
    }
    return false;
}

}  // namespace

std::vector<Violation> check_integrity(const Catalog& c) {
    std::vector<Violation> out;
    if (c.version.empty()) out.push_back({"version", "must not be empty"});

    for (std::size_t i = 0; i < c.crops.size(); ++i) {
        const auto& crop = c.crops[i].crop;
        const std::string path = "crops[" + std::to_string(i) + "]";
        if (crop.name.empty()) out.push_back({path + ".name", "must not be empty"});
        if (!(std::isfinite(crop.default_yield) && crop.default_yield > 0.0)) {
            out.push_back({path + ".default_yield", "must be > 0"});
        }
        if (!nonneg(crop.default_price)) out.push_back({path + ".default_price", "must be >= 0"});
        for (std::size_t j = 0; j < i; ++j) {
            if (c.crops[j].crop.name == crop.name) out.push_back({path + ".name", "duplicate crop '" + crop.name + "'"});
        }
    }

    for (std::size_t i = 0; i < c.benefits.size(); ++i) {
        const auto& row = c.benefits[i];
        const std::string path = "benefits[" + std::to_string(i) + "]";
        const std::pair<const char*, double> pct[] = {
            {"input_reduction", row.benefits.input_reduction},
            {"yield_increase", row.benefits.yield_increase},
            {"fuel_reduction", row.benefits.fuel_reduction},
            {"labour_reduction", row.benefits.labour_reduction},
        };
        for (const auto& [name, value] : pct) {
            if (!(std::isfinite(value) && value >= 0.0 && value <= 1.0)) {
                out.push_back({path + "." + name, "percentage outside [0, 100]"});
            }
        }
        if (row.benefits.input_scope != scope_for(row.main)) {
            out.push_back({path + ".input_scope", "must be '" + std::string(to_string(scope_for(row.main))) + "' for " +
                                                      std::string(to_string(row.main))});
        }
        if (row.operation) {
            auto ops = operations_for(row.main);
            if (std::find(ops.begin(), ops.end(), *row.operation) == ops.end()) {
                out.push_back({path + ".operation", std::string(to_string(row.main)) + " cannot perform " +
                                                        std::string(to_string(*row.operation))});
            }
        }
        for (std::size_t j = 0; j < i; ++j) {
            const auto& prev = c.benefits[j];
            if (prev.main == row.main && prev.supports == row.supports && prev.operation == row.operation) {
                out.push_back({path, "duplicate row " + describe_combination(row.main, row.supports, row.operation) +
                                         " (first at benefits[" + std::to_string(j) + "])"});
                break;
            }
        }
        if (!find_investment(c, row.main, row.supports)) {
            out.push_back({path, "no investment entry for " + describe_combination(row.main, row.supports, row.operation)});
        }
        bool reachable = false;
        for (const auto& e : c.compatibility) {
            if (row.operation && e.operation != *row.operation) continue;
            if (e.main == row.main &&
                std::find(e.support_sets.begin(), e.support_sets.end(), row.supports) != e.support_sets.end()) {
                reachable = true;
                break;
            }
        }
        if (!reachable) {
            out.push_back({path, "row " + describe_combination(row.main, row.supports, row.operation) +
                                     " is not listed in the compatibility table"});
        }
    }

    for (std::size_t i = 0; i < c.compatibility.size(); ++i) {
        const auto& e = c.compatibility[i];
        const std::string path = "compatibility[" + std::to_string(i) + "]";
        for (std::size_t k = 0; k < e.support_sets.size(); ++k) {
            if (!find_benefits(c, e.main, e.support_sets[k], e.operation)) {
                out.push_back({path + ".support_sets[" + std::to_string(k) + "]",
                               "no benefit row for " + describe_combination(e.main, e.support_sets[k], e.operation)});
            }
        }
    }

    for (std::size_t i = 0; i < c.cost_profiles.size(); ++i) {
        const auto& e = c.cost_profiles[i];
        const auto& p = e.profile;
        const std::string path = "cost_profiles[" + std::to_string(i) + "]";
        if (std::none_of(c.crops.begin(), c.crops.end(), [&](const auto& cd) { return cd.crop.name == e.crop; })) {
            out.push_back({path + ".crop", "unknown crop '" + e.crop + "'"});
        }
        const std::pair<const char*, double> fields[] = {
            {"input_price", p.input_price},         {"application_rate", p.application_rate},
            {"treatments_per_year", p.treatments_per_year}, {"fuel_price", p.fuel_price},
            {"fuel_consumption", p.fuel_consumption}, {"labour_cost", p.labour_cost},
            {"labour_hours", p.labour_hours},
        };
        for (const auto& [name, value] : fields) {
            if (!nonneg(value)) out.push_back({path + "." + name, "must be >= 0"});
        }
        for (std::size_t j = 0; j < i; ++j) {
            const auto& prev = c.cost_profiles[j];
            if (prev.region == e.region && prev.crop == e.crop && prev.profile.operation == p.operation) {
                out.push_back({path, "duplicate cost profile " + std::string(to_string(e.region)) + "/" + e.crop + "/" +
                                         std::string(to_string(p.operation))});
                break;
            }
        }
    }

    std::map<SupportTechnology, std::pair<double, std::size_t>> support_cost;
    for (std::size_t i = 0; i < c.investments.size(); ++i) {
        const auto& e = c.investments[i];
        const std::string path = "investments[" + std::to_string(i) + "]";
        if (!nonneg(e.split.main)) out.push_back({path + ".main_investment", "must be >= 0"});
        if (!nonneg(e.recurring_cost)) out.push_back({path + ".recurring_cost", "must be >= 0"});
        SupportSet priced;
        for (const auto& [s, cost] : e.split.supports) {
            const std::string f = path + ".support_investments." + std::string(to_string(s));
            priced.insert(s);
            if (!nonneg(cost)) out.push_back({f, "must be >= 0"});
            auto [it, inserted] = support_cost.emplace(s, std::make_pair(cost, i));
            if (!inserted && it->second.first != cost) {
                out.push_back({f, "differs from investments[" + std::to_string(it->second.second) +
                                      "]; a support technology has one base cost"});
            }
        }
        if (priced != e.supports) {
            out.push_back({path + ".support_investments", "must price exactly the entry's support technologies"});
        }
        for (std::size_t j = 0; j < i; ++j) {
            if (c.investments[j].main == e.main && c.investments[j].supports == e.supports) {
                out.push_back({path, "duplicate investment entry " + describe_combination(e.main, e.supports, std::nullopt)});
                break;
            }
        }
    }
    return out;
}

Catalog load_catalog(std::string_view document) {
    if (document.find_first_not_of(" \t\r\n") == std::string_view::npos) throw ParseError("empty catalog document");
    Catalog catalog = catalog_from_json(parse_json(document));
    auto violations = check_integrity(catalog);
    if (!violations.empty()) throw IntegrityError(std::move(violations));
    return catalog;
}

Catalog load_catalog_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw StorageError("cannot read catalog file '" + path.string() + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return load_catalog(buf.str());
}

std::string serialize_catalog(const Catalog& catalog) { return dump_json(to_json(catalog)); }

std::optional<BenefitProfile> find_benefits(const Catalog& c, MainTechnology main, const SupportSet& supports,
                                            OperationKind operation) {
    for (const auto& row : c.benefits) {
        if (row.main == main && row.supports == supports && row.operation == operation) return row.benefits;
    }
    for (const auto& row : c.benefits) {
        if (row.main == main && row.supports == supports && !row.operation &&
            listed_in_compatibility(c, main, supports, operation)) {
            return row.benefits;
        }
    }
    return std::nullopt;
}

BenefitProfile default_benefits(const Catalog& c, MainTechnology main, const SupportSet& supports,
                                OperationKind operation) {
    if (auto b = find_benefits(c, main, supports, operation)) return *b;
    throw NotFoundError("no default benefits for " + describe_combination(main, supports, operation));
}

std::vector<Combination> compatible_options(const Catalog& c, OperationKind operation) {
    std::vector<Combination> out;
    for (const auto& e : c.compatibility) {
        if (e.operation != operation) continue;
        for (const auto& s : e.support_sets) out.push_back({e.main, s});
    }
    return out;
}

const InvestmentEntry* find_investment(const Catalog& c, MainTechnology main, const SupportSet& supports) {
    for (const auto& e : c.investments) {
        if (e.main == main && e.supports == supports) return &e;
    }
    return nullptr;
}

const CropDefaults* find_crop_defaults(const Catalog& c, std::string_view crop) {
    for (const auto& e : c.crops) {
        if (e.crop.name == crop) return &e;
    }
    return nullptr;
}

const CostProfileEntry* find_cost_profile(const Catalog& c, Region region, std::string_view crop,
                                          OperationKind operation) {
    for (const auto& e : c.cost_profiles) {
        if (e.region == region && e.crop == crop && e.profile.operation == operation) return &e;
    }
    return nullptr;
}

InputCostProfile cost_profile(const Catalog& c, Region region, const CropEntry& crop, OperationKind operation,
                              std::span<const CostOverride> overrides) {
    InputCostProfile profile;
    if (crop.custom) {
        auto it = std::find_if(crop.cost_profiles.begin(), crop.cost_profiles.end(),
                               [&](const InputCostProfile& p) { return p.operation == operation; });
        if (it == crop.cost_profiles.end()) {
            throw NotFoundError("custom crop '" + crop.crop + "' has no cost profile for " +
                                std::string(to_string(operation)));
        }
        profile = *it;
    } else {
        const auto* entry = find_cost_profile(c, region, crop.crop, operation);
        if (!entry) {
            throw NotFoundError("no cost profile for " + std::string(to_string(region)) + "/" + crop.crop + "/" +
                                std::string(to_string(operation)));
        }
        profile = entry->profile;
    }
    for (const auto& d : overrides) {
        if (d.crop == crop.crop && d.operation == operation) profile = apply_override(std::move(profile), d);
    }
    return profile;
}

}  // namespace pacba
