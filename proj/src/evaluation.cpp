#include "pacba/evaluation.hpp"

#include <algorithm>
#include <set>

#include "pacba/finance.hpp"
#include "pacba/json_codec.hpp"

namespace pacba {

namespace {

std::string option_path(std::size_t i) { return "options[" + std::to_string(i) + "]"; }

double option_area(const TechnologyOption& option, const FarmScenario& scenario) {
    // Scenario order, so every area sum over the same crop set is bit-identical.
    double area = 0.0;
    for (const auto& c : scenario.crops) {
        if (std::find(option.crops.begin(), option.crops.end(), c.crop) != option.crops.end()) area += c.area;
    }
    return area;
}

double scaled_option_investment(const TechnologyOption& option, double area) {
    double total = finance::scale_investment(option.investment.main, area);
    for (const auto& [support, cost] : option.investment.supports) total += finance::scale_investment(cost, area);
    return total;
}

void merge_savings(std::vector<InputSaving>& into, const std::vector<InputSaving>& from) {
    for (const auto& s : from) {
        auto it = std::find_if(into.begin(), into.end(), [&](const InputSaving& x) {
            return x.operation == s.operation && x.input == s.input && x.unit == s.unit;
        });
        if (it == into.end()) {
            into.push_back(s);
        } else {
            it->quantity += s.quantity;
            it->value += s.value;
        }
    }
}

void add_flag(std::vector<ProvenanceFlag>& flags, std::string subject, const std::string& provenance) {
    if (provenance.empty() || provenance == "user") return;
    ProvenanceFlag flag{std::move(subject), provenance};
    if (std::find(flags.begin(), flags.end(), flag) == flags.end()) flags.push_back(std::move(flag));
}

void add_deviation(std::vector<Deviation>& out, std::string field, double value, std::optional<double> fallback,
                   std::string unit) {
    if (fallback && *fallback == value) return;
    out.push_back({std::move(field), value, fallback, std::move(unit)});
}

}  // namespace

FarmScenario effective_scenario(const FarmScenario& scenario, const Catalog& catalog) {
    FarmScenario out = scenario;
    out.id.clear();
    std::vector<Violation> missing;
    for (std::size_t i = 0; i < out.crops.size(); ++i) {
        auto& c = out.crops[i];
        if (c.custom) continue;
        const auto* defaults = find_crop_defaults(catalog, c.crop);
        const std::string path = "crops[" + std::to_string(i) + "]";
        if (!c.yield) {
            if (defaults) c.yield = defaults->crop.default_yield;
            else missing.push_back({path + ".yield", "no catalog default; a value is required"});
        }
        if (!c.price) {
            if (defaults) c.price = defaults->crop.default_price;
            else missing.push_back({path + ".price", "no catalog default; a value is required"});
        }
    }
    if (!missing.empty()) throw ValidationError(std::move(missing));
    return out;
}

TechnologyOption resolve_option(const Catalog& catalog, const FarmScenario& scenario, std::size_t option_index) {
    const OptionSelection& sel = scenario.options.at(option_index);
    const std::string path = option_path(option_index);

    TechnologyOption out;
    out.main = sel.main;
    out.supports = sel.supports;
    out.operation = sel.operation;
    if (sel.crops.empty()) {
        for (const auto& c : scenario.crops) out.crops.push_back(c.crop);
    } else {
        out.crops = sel.crops;
    }

    if (sel.benefits) {
        out.benefits = *sel.benefits;
        out.benefits_source = ValueSource::User;
    } else if (auto defaults = find_benefits(catalog, sel.main, sel.supports, sel.operation)) {
        out.benefits = *defaults;
        out.benefits_source = ValueSource::Catalog;
    } else {
        throw UnresolvableOptionError(path + ".benefits",
                                      std::string(to_string(sel.main)) + " [" + to_string(sel.supports) + "] / " +
                                          std::string(to_string(sel.operation)) +
                                          " has no catalog benefits; supply benefits");
    }

    const InvestmentEntry* entry = find_investment(catalog, sel.main, sel.supports);
    bool overridden = sel.main_investment.has_value() || !sel.support_investments.empty() || sel.recurring_cost.has_value();
    if (entry) {
        out.investment = entry->split;
        out.recurring_cost = entry->recurring_cost;
    } else {
        if (!sel.main_investment) {
            throw UnresolvableOptionError(path + ".main_investment",
                                          "combination has no catalog investment; supply main_investment");
        }
        for (auto s : sel.supports) {
            if (!sel.support_investments.contains(s)) {
                throw UnresolvableOptionError(path + ".support_investments." + std::string(to_string(s)),
                                              "combination has no catalog investment; supply every support cost");
            }
        }
    }
    if (sel.main_investment) out.investment.main = *sel.main_investment;
    for (const auto& [s, cost] : sel.support_investments) out.investment.supports[s] = cost;
    if (sel.recurring_cost) out.recurring_cost = *sel.recurring_cost;

    const bool fully_user = sel.main_investment && sel.support_investments.size() == sel.supports.size();
    if (!entry || fully_user) {
        out.investment_provenance = "user";
    } else if (overridden) {
        out.investment_provenance = entry->provenance.empty() ? "user" : entry->provenance + "+user";
    } else {
        out.investment_provenance = entry->provenance.empty() ? "catalog" : entry->provenance;
    }
    return out;
}

double portfolio_investment(std::span<const TechnologyOption> options, const FarmScenario& scenario) {
    double total = 0.0;
    std::map<SupportTechnology, std::pair<double, std::set<std::string>>> shared;
    for (const auto& option : options) {
        total += finance::scale_investment(option.investment.main, option_area(option, scenario));
        for (const auto& [support, cost] : option.investment.supports) {
            auto& [max_cost, crops] = shared[support];
            max_cost = std::max(max_cost, cost);
            crops.insert(option.crops.begin(), option.crops.end());
        }
    }
    for (const auto& [support, entry] : shared) {
        const auto& [cost, crops] = entry;
        double area = 0.0;
        // Sum in scenario order so the result does not depend on name ordering.
        for (const auto& c : scenario.crops) {
            if (crops.contains(c.crop)) area += c.area;
        }
        total += finance::scale_investment(cost, area);
    }
    return total;
}

EvaluationResult evaluate(const FarmScenario& input, const Catalog& catalog) {
    auto violations = validate_scenario(input);
    if (input.options.empty()) violations.push_back({"options", "at least one technology option is required"});
    if (!violations.empty()) throw ValidationError(std::move(violations));

    EvaluationResult result;
    result.scenario = effective_scenario(input, catalog);
    result.catalog_version = catalog.version;
    const FarmScenario& s = result.scenario;
    const auto operations = s.effective_operations();

    std::vector<TechnologyOption> resolved;
    for (std::size_t i = 0; i < s.options.size(); ++i) resolved.push_back(resolve_option(catalog, s, i));

    AnnualBenefit portfolio_annual;
    std::vector<double> portfolio_flows(static_cast<std::size_t>(s.horizon_years), 0.0);
    std::vector<InputSaving> portfolio_saved;

    for (std::size_t i = 0; i < resolved.size(); ++i) {
        const auto& option = resolved[i];
        AnnualBenefit annual;
        std::vector<InputSaving> saved;
        for (const auto& crop_name : option.crops) {
            const CropEntry& crop = *s.find_crop(crop_name);
            InputCostProfile own;
            try {
                own = cost_profile(catalog, s.region, crop, option.operation, s.cost_overrides);
            } catch (const NotFoundError& e) {
                throw UnresolvableOptionError(option_path(i) + ".crops", e.what());
            }
            std::vector<InputCostProfile> inputs;
            if (option.benefits.input_scope == InputScope::OperationSpecific) {
                if (input_category(option.operation) != InputCategory::None) inputs.push_back(own);
            } else {
                for (auto op : operations) {
                    if (!is_all_inputs_category(input_category(op))) continue;
                    try {
                        inputs.push_back(cost_profile(catalog, s.region, crop, op, s.cost_overrides));
                    } catch (const NotFoundError&) {
                        // The crop does not go through this operation.
                    }
                }
            }
            const finance::CropEconomics economics{crop.area, *crop.yield, *crop.price};
            annual += finance::annual_benefit(economics, option.benefits, 0.0, own, inputs);
            merge_savings(saved, finance::input_saved_quantity(option.benefits, inputs, crop.area));
        }
        annual.recurring_cost = option.recurring_cost;

        OptionResult out;
        out.option = option;
        out.area = option_area(option, s);
        auto flows = finance::cash_flows(annual, s.horizon_years);
        for (std::size_t t = 0; t < flows.size(); ++t) portfolio_flows[t] += flows[t];
        portfolio_annual += annual;
        merge_savings(portfolio_saved, saved);
        out.summary = finance::summarize(scaled_option_investment(option, out.area), annual, std::move(flows),
                                         s.discount_rate, std::move(saved));
        result.options.push_back(std::move(out));
    }

    result.portfolio = finance::summarize(portfolio_investment(resolved, s), portfolio_annual,
                                          std::move(portfolio_flows), s.discount_rate, std::move(portfolio_saved));

    // Assumptions: everything that departs from a catalog default, and every
    // placeholder value the figures rest on.
    auto& dev = result.deviations;
    add_deviation(dev, "discount_rate", s.discount_rate, kDefaultDiscountRate, "fraction");
    add_deviation(dev, "horizon_years", s.horizon_years, kDefaultHorizonYears, "years");
    for (std::size_t i = 0; i < s.crops.size(); ++i) {
        const auto& c = s.crops[i];
        const auto* defaults = c.custom ? nullptr : find_crop_defaults(catalog, c.crop);
        const std::string path = "crops[" + std::to_string(i) + "]";
        add_deviation(dev, path + ".yield", *c.yield,
                      defaults ? std::optional(defaults->crop.default_yield) : std::nullopt, "t/ha");
        add_deviation(dev, path + ".price", *c.price,
                      defaults ? std::optional(defaults->crop.default_price) : std::nullopt, "EUR/t");
        if (defaults && !input.crops[i].yield) add_flag(result.provenance, path + ".yield", defaults->provenance);
        if (defaults && !input.crops[i].price) add_flag(result.provenance, path + ".price", defaults->provenance);
    }
    for (std::size_t i = 0; i < resolved.size(); ++i) {
        const auto& o = resolved[i];
        const auto& sel = s.options[i];
        const std::string path = option_path(i);
        if (o.benefits_source == ValueSource::User) {
            auto d = find_benefits(catalog, o.main, o.supports, o.operation);
            auto pct = [](double f) { return fraction_to_percent(f); };
            auto def = [&](double BenefitProfile::*field) {
                return d ? std::optional(pct((*d).*field)) : std::nullopt;
            };
            add_deviation(dev, path + ".benefits.input_reduction", pct(o.benefits.input_reduction),
                          def(&BenefitProfile::input_reduction), "%");
            add_deviation(dev, path + ".benefits.yield_increase", pct(o.benefits.yield_increase),
                          def(&BenefitProfile::yield_increase), "%");
            add_deviation(dev, path + ".benefits.fuel_reduction", pct(o.benefits.fuel_reduction),
                          def(&BenefitProfile::fuel_reduction), "%");
            add_deviation(dev, path + ".benefits.labour_reduction", pct(o.benefits.labour_reduction),
                          def(&BenefitProfile::labour_reduction), "%");
        }
        const auto* entry = find_investment(catalog, o.main, o.supports);
        if (sel.main_investment) {
            add_deviation(dev, path + ".main_investment", *sel.main_investment,
                          entry ? std::optional(entry->split.main) : std::nullopt, "EUR");
        }
        for (const auto& [support, cost] : sel.support_investments) {
            std::optional<double> fallback;
            if (entry) {
                if (auto it = entry->split.supports.find(support); it != entry->split.supports.end()) fallback = it->second;
            }
            add_deviation(dev, path + ".support_investments." + std::string(to_string(support)), cost, fallback, "EUR");
        }
        if (sel.recurring_cost) {
            add_deviation(dev, path + ".recurring_cost", *sel.recurring_cost,
                          entry ? std::optional(entry->recurring_cost) : std::nullopt, "EUR/yr");
        }
        if (entry) add_flag(result.provenance, path + ".investment", o.investment_provenance);
    }
    for (std::size_t i = 0; i < s.cost_overrides.size(); ++i) {
        const auto& d = s.cost_overrides[i];
        const auto* crop = s.find_crop(d.crop);
        std::optional<InputCostProfile> base;
        if (crop && !crop->custom) {
            if (const auto* e = find_cost_profile(catalog, s.region, d.crop, d.operation)) base = e->profile;
        }
        const std::string path = "cost_overrides[" + std::to_string(i) + "]";
        const std::tuple<const char*, const std::optional<double>*, double InputCostProfile::*, const char*> fields[] = {
            {"input_price", &d.input_price, &InputCostProfile::input_price, "EUR/unit"},
            {"application_rate", &d.application_rate, &InputCostProfile::application_rate, "unit/ha"},
            {"treatments_per_year", &d.treatments_per_year, &InputCostProfile::treatments_per_year, "passes/yr"},
            {"fuel_price", &d.fuel_price, &InputCostProfile::fuel_price, "EUR/l"},
            {"fuel_consumption", &d.fuel_consumption, &InputCostProfile::fuel_consumption, "l/ha"},
            {"labour_cost", &d.labour_cost, &InputCostProfile::labour_cost, "EUR/h"},
            {"labour_hours", &d.labour_hours, &InputCostProfile::labour_hours, "h/ha"},
        };
        for (const auto& [name, value, member, unit] : fields) {
            if (!*value) continue;
            add_deviation(dev, path + "." + name, **value, base ? std::optional((*base).*member) : std::nullopt, unit);
        }
    }
    for (const auto& c : s.crops) {
        if (c.custom) continue;
        for (auto op : operations) {
            if (const auto* e = find_cost_profile(catalog, s.region, c.crop, op)) {
                add_flag(result.provenance,
                         "cost_profile " + std::string(to_string(s.region)) + "/" + c.crop + "/" +
                             std::string(to_string(op)),
                         e->provenance);
            }
        }
    }
    return result;
}

}  // namespace pacba
