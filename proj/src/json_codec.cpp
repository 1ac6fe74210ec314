#include "pacba/json_codec.hpp"

#include <charconv>
#include <limits>
#include <cmath>
#include <set>

namespace pacba {

double percent_to_fraction(double percent) { return percent / 100.0; }

double fraction_to_percent(double fraction) {
    const double scaled = fraction * 100.0;
    if (!std::isfinite(scaled)) return scaled;
    char buf[64];
    for (int precision = 1; precision <= 17; ++precision) {
        auto [end, ec] = std::to_chars(buf, buf + sizeof buf, scaled, std::chars_format::general, precision);
        if (ec != std::errc{}) break;
        double candidate = 0.0;
        std::from_chars(buf, end, candidate);
        if (candidate / 100.0 == fraction) return candidate;
    }
    return scaled;
}

Json parse_json(std::string_view text) {
    try {
        return Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw ParseError(std::string("malformed JSON: ") + e.what());
    }
}

std::string dump_json(const Json& value) { return value.dump(2) + "\n"; }

namespace {

std::string join(std::string_view path, std::string_view key) {
    if (path.empty()) return std::string(key);
    return std::string(path) + "." + std::string(key);
}

std::string index(std::string_view path, std::size_t i) { return std::string(path) + "[" + std::to_string(i) + "]"; }

[[noreturn]] void fail(std::string_view path, std::string_view what) {
    throw ParseError(std::string(path.empty() ? "document" : path) + ": " + std::string(what));
}

double as_number(const Json& j, std::string_view path) {
    if (!j.is_number()) fail(path, "expected a number");
    return j.get<double>();
}

std::string as_string(const Json& j, std::string_view path) {
    if (!j.is_string()) fail(path, "expected a string");
    return j.get<std::string>();
}

template <class E>
E as_enum(const Json& j, std::string_view path) {
    const auto text = as_string(j, path);
    if (auto v = try_parse<E>(text)) return *v;
    fail(path, "unknown " + std::string(EnumText<E>::type_name) + " '" + text + "'");
}

const Json& as_array(const Json& j, std::string_view path) {
    if (!j.is_array()) fail(path, "expected an array");
    return j;
}

/// Strict object access: every key must be consumed or explicitly ignored.
class ObjectReader {
public:
    ObjectReader(const Json& j, std::string path) : j_(j), path_(std::move(path)) {
        if (!j_.is_object()) fail(path_, "expected an object");
    }

    const Json* find(std::string_view key) {
        used_.insert(std::string(key));
        auto it = j_.find(std::string(key));
        if (it == j_.end() || it->is_null()) return nullptr;
        return &*it;
    }

    const Json& require(std::string_view key) {
        const Json* v = find(key);
        if (!v) fail(join(path_, key), "required field missing");
        return *v;
    }

    double number(std::string_view key) { return as_number(require(key), join(path_, key)); }

    std::optional<double> opt_number(std::string_view key) {
        const Json* v = find(key);
        if (!v) return std::nullopt;
        return as_number(*v, join(path_, key));
    }

    std::string string(std::string_view key) { return as_string(require(key), join(path_, key)); }

    std::string opt_string(std::string_view key, std::string fallback = {}) {
        const Json* v = find(key);
        return v ? as_string(*v, join(path_, key)) : fallback;
    }

    bool opt_bool(std::string_view key, bool fallback) {
        const Json* v = find(key);
        if (!v) return fallback;
        if (!v->is_boolean()) fail(join(path_, key), "expected a boolean");
        return v->get<bool>();
    }

    template <class E>
    E enumeration(std::string_view key) {
        return as_enum<E>(require(key), join(path_, key));
    }

    void ignore(std::string_view key) { used_.insert(std::string(key)); }

    std::string path(std::string_view key) const { return join(path_, key); }

    void finish() const {
        for (auto it = j_.begin(); it != j_.end(); ++it) {
            if (!used_.contains(it.key())) fail(join(path_, it.key()), "unknown field");
        }
    }

private:
    const Json& j_;
    std::string path_;
    std::set<std::string> used_;
};

Json supports_to_json(const SupportSet& supports) {
    Json out = Json::array();
    for (auto s : supports) out.push_back(std::string(to_string(s)));
    return out;
}

SupportSet supports_from_json(const Json* j, std::string_view path) {
    SupportSet out;
    if (!j) return out;
    as_array(*j, path);
    for (std::size_t i = 0; i < j->size(); ++i) {
        auto s = as_enum<SupportTechnology>((*j)[i], index(path, i));
        if (!out.insert(s).second) fail(index(path, i), "duplicate support technology");
    }
    return out;
}

Json support_costs_to_json(const std::map<SupportTechnology, double>& costs) {
    Json out = Json::object();
    for (const auto& [s, cost] : costs) out[std::string(to_string(s))] = cost;
    return out;
}

std::map<SupportTechnology, double> support_costs_from_json(const Json* j, std::string_view path) {
    std::map<SupportTechnology, double> out;
    if (!j) return out;
    if (!j->is_object()) fail(path, "expected an object");
    for (auto it = j->begin(); it != j->end(); ++it) {
        const auto key = join(path, it.key());
        auto s = try_parse<SupportTechnology>(it.key());
        if (!s) fail(key, "unknown support technology '" + it.key() + "'");
        out[*s] = as_number(it.value(), key);
    }
    return out;
}

Json opt_number_json(const std::optional<double>& v) { return v ? Json(*v) : Json(nullptr); }

Json to_json(const CostOverride& d) {
    Json j;
    j["crop"] = d.crop;
    j["operation"] = std::string(to_string(d.operation));
    auto put = [&](const char* key, const std::optional<double>& v) {
        if (v) j[key] = *v;
    };
    put("input_price", d.input_price);
    put("application_rate", d.application_rate);
    put("treatments_per_year", d.treatments_per_year);
    put("fuel_price", d.fuel_price);
    put("fuel_consumption", d.fuel_consumption);
    put("labour_cost", d.labour_cost);
    put("labour_hours", d.labour_hours);
    return j;
}

CostOverride cost_override_from_json(const Json& j, std::string path) {
    ObjectReader r(j, std::move(path));
    CostOverride d;
    d.crop = r.string("crop");
    d.operation = r.enumeration<OperationKind>("operation");
    d.input_price = r.opt_number("input_price");
    d.application_rate = r.opt_number("application_rate");
    d.treatments_per_year = r.opt_number("treatments_per_year");
    d.fuel_price = r.opt_number("fuel_price");
    d.fuel_consumption = r.opt_number("fuel_consumption");
    d.labour_cost = r.opt_number("labour_cost");
    d.labour_hours = r.opt_number("labour_hours");
    r.finish();
    return d;
}

Json to_json(const CropEntry& c) {
    Json j;
    j["crop"] = c.crop;
    j["custom"] = c.custom;
    j["area"] = c.area;
    if (c.yield) j["yield"] = *c.yield;
    if (c.price) j["price"] = *c.price;
    if (!c.cost_profiles.empty()) {
        Json profiles = Json::array();
        for (const auto& p : c.cost_profiles) profiles.push_back(to_json(p));
        j["cost_profiles"] = std::move(profiles);
    }
    return j;
}

CropEntry crop_from_json(const Json& j, std::string path) {
    ObjectReader r(j, path);
    CropEntry c;
    c.crop = r.string("crop");
    c.custom = r.opt_bool("custom", false);
    c.area = r.number("area");
    c.yield = r.opt_number("yield");
    c.price = r.opt_number("price");
    if (const Json* profiles = r.find("cost_profiles")) {
        const auto ppath = r.path("cost_profiles");
        as_array(*profiles, ppath);
        for (std::size_t i = 0; i < profiles->size(); ++i) {
            c.cost_profiles.push_back(cost_profile_from_json((*profiles)[i], index(ppath, i)));
        }
    }
    r.finish();
    return c;
}

Json to_json(const OptionSelection& o) {
    Json j;
    j["main"] = std::string(to_string(o.main));
    j["supports"] = supports_to_json(o.supports);
    j["operation"] = std::string(to_string(o.operation));
    if (!o.crops.empty()) j["crops"] = o.crops;
    if (o.benefits) j["benefits"] = to_json(*o.benefits);
    if (o.main_investment) j["main_investment"] = *o.main_investment;
    if (!o.support_investments.empty()) j["support_investments"] = support_costs_to_json(o.support_investments);
    if (o.recurring_cost) j["recurring_cost"] = *o.recurring_cost;
    return j;
}

OptionSelection option_from_json(const Json& j, std::string path) {
    ObjectReader r(j, path);
    OptionSelection o;
    o.main = r.enumeration<MainTechnology>("main");
    o.supports = supports_from_json(r.find("supports"), r.path("supports"));
    o.operation = r.enumeration<OperationKind>("operation");
    if (const Json* crops = r.find("crops")) {
        const auto cpath = r.path("crops");
        as_array(*crops, cpath);
        for (std::size_t i = 0; i < crops->size(); ++i) o.crops.push_back(as_string((*crops)[i], index(cpath, i)));
    }
    if (const Json* b = r.find("benefits")) o.benefits = benefits_from_json(*b, r.path("benefits"), scope_for(o.main));
    o.main_investment = r.opt_number("main_investment");
    o.support_investments = support_costs_from_json(r.find("support_investments"), r.path("support_investments"));
    o.recurring_cost = r.opt_number("recurring_cost");
    r.finish();
    return o;
}

Json to_json(const TechnologyOption& o) {
    Json j;
    j["label"] = o.label();
    j["main"] = std::string(to_string(o.main));
    j["supports"] = supports_to_json(o.supports);
    j["operation"] = std::string(to_string(o.operation));
    j["crops"] = o.crops;
    j["benefits"] = to_json(o.benefits);
    j["benefits_source"] = o.benefits_source == ValueSource::User ? "user" : "catalog";
    j["investment"] = Json{{"main", o.investment.main}, {"supports", support_costs_to_json(o.investment.supports)}};
    j["base_investment"] = o.base_investment();
    j["investment_provenance"] = o.investment_provenance;
    j["recurring_cost"] = o.recurring_cost;
    return j;
}

TechnologyOption technology_option_from_json(const Json& j, std::string path) {
    ObjectReader r(j, path);
    r.ignore("label");
    r.ignore("base_investment");
    TechnologyOption o;
    o.main = r.enumeration<MainTechnology>("main");
    o.supports = supports_from_json(r.find("supports"), r.path("supports"));
    o.operation = r.enumeration<OperationKind>("operation");
    const auto cpath = r.path("crops");
    const Json& crops = as_array(r.require("crops"), cpath);
    for (std::size_t i = 0; i < crops.size(); ++i) o.crops.push_back(as_string(crops[i], index(cpath, i)));
    o.benefits = benefits_from_json(r.require("benefits"), r.path("benefits"), scope_for(o.main));
    const auto source = r.string("benefits_source");
    if (source != "user" && source != "catalog") fail(r.path("benefits_source"), "expected 'user' or 'catalog'");
    o.benefits_source = source == "user" ? ValueSource::User : ValueSource::Catalog;
    ObjectReader inv(r.require("investment"), r.path("investment"));
    o.investment.main = inv.number("main");
    o.investment.supports = support_costs_from_json(inv.find("supports"), inv.path("supports"));
    inv.finish();
    o.investment_provenance = r.string("investment_provenance");
    o.recurring_cost = r.number("recurring_cost");
    r.finish();
    return o;
}

Json to_json(const AnnualBenefit& a) {
    return Json{
        {"revenue_from_yield", a.revenue_from_yield},
        {"input_saving", a.input_saving},
        {"fuel_saving", a.fuel_saving},
        {"labour_saving", a.labour_saving},
        {"recurring_cost", a.recurring_cost},
        {"annual_revenue", a.annual_revenue()},
        {"annual_cost_delta", a.annual_cost_delta()},
        {"net_flow", a.net_flow()},
    };
}

AnnualBenefit annual_from_json(const Json& j, std::string path) {
    ObjectReader r(j, std::move(path));
    AnnualBenefit a;
    a.revenue_from_yield = r.number("revenue_from_yield");
    a.input_saving = r.number("input_saving");
    a.fuel_saving = r.number("fuel_saving");
    a.labour_saving = r.number("labour_saving");
    a.recurring_cost = r.number("recurring_cost");
    r.ignore("annual_revenue");
    r.ignore("annual_cost_delta");
    r.ignore("net_flow");
    r.finish();
    return a;
}

Json to_json(const InputSaving& s) {
    return Json{{"input", s.input},
                {"unit", s.unit},
                {"operation", std::string(to_string(s.operation))},
                {"quantity", s.quantity},
                {"value", s.value}};
}

InputSaving input_saving_from_json(const Json& j, std::string path) {
    ObjectReader r(j, std::move(path));
    InputSaving s;
    s.input = r.string("input");
    s.unit = r.string("unit");
    s.operation = r.enumeration<OperationKind>("operation");
    s.quantity = r.number("quantity");
    s.value = r.number("value");
    r.finish();
    return s;
}

Json to_json(const FinancialSummary& f) {
    Json flows = Json::array();
    for (double v : f.cash_flows) flows.push_back(v);
    Json saved = Json::array();
    for (const auto& s : f.input_saved) saved.push_back(to_json(s));
    return Json{{"scaled_investment", f.scaled_investment},
                {"annual", to_json(f.annual)},
                {"cash_flows", std::move(flows)},
                {"npv", f.npv},
                {"irr", opt_number_json(f.irr)},
                {"bcr", opt_number_json(f.bcr)},
                {"input_saved", std::move(saved)}};
}

FinancialSummary summary_from_json(const Json& j, std::string path) {
    ObjectReader r(j, path);
    FinancialSummary f;
    f.scaled_investment = r.number("scaled_investment");
    f.annual = annual_from_json(r.require("annual"), r.path("annual"));
    const auto fpath = r.path("cash_flows");
    const Json& flows = as_array(r.require("cash_flows"), fpath);
    for (std::size_t i = 0; i < flows.size(); ++i) f.cash_flows.push_back(as_number(flows[i], index(fpath, i)));
    f.npv = r.number("npv");
    f.irr = r.opt_number("irr");
    f.bcr = r.opt_number("bcr");
    const auto spath = r.path("input_saved");
    const Json& saved = as_array(r.require("input_saved"), spath);
    for (std::size_t i = 0; i < saved.size(); ++i) f.input_saved.push_back(input_saving_from_json(saved[i], index(spath, i)));
    r.finish();
    return f;
}

template <class T, class F>
std::vector<T> array_of(ObjectReader& r, std::string_view key, F&& parse_item, bool required) {
    std::vector<T> out;
    const Json* arr = required ? &r.require(key) : r.find(key);
    if (!arr) return out;
    const auto path = r.path(key);
    as_array(*arr, path);
    for (std::size_t i = 0; i < arr->size(); ++i) out.push_back(parse_item((*arr)[i], index(path, i)));
    return out;
}

}  // namespace

Json to_json(const Violation& v) { return Json{{"field", v.field}, {"rule", v.rule}}; }

Json to_json(const InputCostProfile& p) {
    return Json{{"operation", std::string(to_string(p.operation))},
                {"input", p.input},
                {"unit", p.unit},
                {"input_price", p.input_price},
                {"application_rate", p.application_rate},
                {"treatments_per_year", p.treatments_per_year},
                {"fuel_price", p.fuel_price},
                {"fuel_consumption", p.fuel_consumption},
                {"labour_cost", p.labour_cost},
                {"labour_hours", p.labour_hours}};
}

InputCostProfile cost_profile_from_json(const Json& j, std::string_view path) {
    ObjectReader r(j, std::string(path));
    InputCostProfile p;
    p.operation = r.enumeration<OperationKind>("operation");
    p.input = r.string("input");
    p.unit = r.string("unit");
    p.input_price = r.number("input_price");
    p.application_rate = r.number("application_rate");
    p.treatments_per_year = r.number("treatments_per_year");
    p.fuel_price = r.number("fuel_price");
    p.fuel_consumption = r.number("fuel_consumption");
    p.labour_cost = r.number("labour_cost");
    p.labour_hours = r.number("labour_hours");
    r.finish();
    return p;
}

Json to_json(const BenefitProfile& b) {
    return Json{{"input_reduction", fraction_to_percent(b.input_reduction)},
                {"yield_increase", fraction_to_percent(b.yield_increase)},
                {"fuel_reduction", fraction_to_percent(b.fuel_reduction)},
                {"labour_reduction", fraction_to_percent(b.labour_reduction)},
                {"input_scope", std::string(to_string(b.input_scope))}};
}

BenefitProfile benefits_from_json(const Json& j, std::string_view path, InputScope default_scope) {
    ObjectReader r(j, std::string(path));
    BenefitProfile b;
    b.input_reduction = percent_to_fraction(r.opt_number("input_reduction").value_or(0.0));
    b.yield_increase = percent_to_fraction(r.opt_number("yield_increase").value_or(0.0));
    b.fuel_reduction = percent_to_fraction(r.opt_number("fuel_reduction").value_or(0.0));
    b.labour_reduction = percent_to_fraction(r.opt_number("labour_reduction").value_or(0.0));
    b.input_scope = default_scope;
    if (const Json* scope = r.find("input_scope")) b.input_scope = as_enum<InputScope>(*scope, r.path("input_scope"));
    r.finish();
    return b;
}

Json to_json(const FarmScenario& s) {
    Json j;
    if (!s.id.empty()) j["id"] = s.id;
    j["region"] = std::string(to_string(s.region));
    j["discount_rate"] = s.discount_rate;
    j["horizon_years"] = s.horizon_years;
    Json ops = Json::array();
    for (auto op : s.operations) ops.push_back(std::string(to_string(op)));
    j["operations"] = std::move(ops);
    Json crops = Json::array();
    for (const auto& c : s.crops) crops.push_back(to_json(c));
    j["crops"] = std::move(crops);
    Json options = Json::array();
    for (const auto& o : s.options) options.push_back(to_json(o));
    j["options"] = std::move(options);
    Json overrides = Json::array();
    for (const auto& d : s.cost_overrides) overrides.push_back(to_json(d));
    j["cost_overrides"] = std::move(overrides);
    return j;
}

FarmScenario scenario_from_json(const Json& j) {
    ObjectReader r(j, "");
    FarmScenario s;
    s.id = r.opt_string("id");
    s.region = r.enumeration<Region>("region");
    s.discount_rate = r.opt_number("discount_rate").value_or(kDefaultDiscountRate);
    if (const Json* h = r.find("horizon_years")) {
        if (!h->is_number_integer()) fail("horizon_years", "expected an integer");
        const auto years = h->get<long long>();
        if (years < std::numeric_limits<int>::min() || years > std::numeric_limits<int>::max()) {
            fail("horizon_years", "out of range");
        }
        s.horizon_years = static_cast<int>(years);
    }
    s.operations = array_of<OperationKind>(
        r, "operations", [](const Json& x, const std::string& p) { return as_enum<OperationKind>(x, p); }, false);
    s.crops = array_of<CropEntry>(r, "crops", crop_from_json, true);
    s.options = array_of<OptionSelection>(r, "options", option_from_json, false);
    s.cost_overrides = array_of<CostOverride>(r, "cost_overrides", cost_override_from_json, false);
    r.finish();
    return s;
}

Json to_json(const EvaluationResult& result) {
    Json options = Json::array();
    for (const auto& o : result.options) {
        options.push_back(Json{{"option", to_json(o.option)}, {"area", o.area}, {"summary", to_json(o.summary)}});
    }
    Json deviations = Json::array();
    for (const auto& d : result.deviations) {
        deviations.push_back(Json{{"field", d.field},
                                  {"value", d.value},
                                  {"catalog_default", opt_number_json(d.catalog_default)},
                                  {"unit", d.unit}});
    }
    Json provenance = Json::array();
    for (const auto& p : result.provenance) provenance.push_back(Json{{"subject", p.subject}, {"provenance", p.provenance}});
    return Json{{"catalog_version", result.catalog_version},
                {"scenario", to_json(result.scenario)},
                {"options", std::move(options)},
                {"portfolio", to_json(result.portfolio)},
                {"deviations", std::move(deviations)},
                {"provenance", std::move(provenance)}};
}

EvaluationResult result_from_json(const Json& j) {
    ObjectReader r(j, "");
    EvaluationResult result;
    result.catalog_version = r.string("catalog_version");
    result.scenario = scenario_from_json(r.require("scenario"));
    result.options = array_of<OptionResult>(
        r, "options",
        [](const Json& x, const std::string& p) {
            ObjectReader o(x, p);
            OptionResult out;
            out.option = technology_option_from_json(o.require("option"), o.path("option"));
            out.area = o.number("area");
            out.summary = summary_from_json(o.require("summary"), o.path("summary"));
            o.finish();
            return out;
        },
        true);
    result.portfolio = summary_from_json(r.require("portfolio"), "portfolio");
    result.deviations = array_of<Deviation>(
        r, "deviations",
        [](const Json& x, const std::string& p) {
            ObjectReader d(x, p);
            Deviation out;
            out.field = d.string("field");
            out.value = d.number("value");
            out.catalog_default = d.opt_number("catalog_default");
            out.unit = d.string("unit");
            d.finish();
            return out;
        },
        true);
    result.provenance = array_of<ProvenanceFlag>(
        r, "provenance",
        [](const Json& x, const std::string& p) {
            ObjectReader f(x, p);
            ProvenanceFlag out{f.string("subject"), f.string("provenance")};
            f.finish();
            return out;
        },
        true);
    r.finish();
    return result;
}

Json to_json(const Catalog& c) {
    Json crops = Json::array();
    for (const auto& e : c.crops) {
        crops.push_back(Json{{"name", e.crop.name},
                             {"default_yield", e.crop.default_yield},
                             {"default_price", e.crop.default_price},
                             {"provenance", e.provenance}});
    }
    Json benefits = Json::array();
    for (const auto& row : c.benefits) {
        Json b = to_json(row.benefits);
        b["group"] = row.group;
        b["main"] = std::string(to_string(row.main));
        b["supports"] = supports_to_json(row.supports);
        b["operation"] = row.operation ? Json(std::string(to_string(*row.operation))) : Json(nullptr);
        benefits.push_back(std::move(b));
    }
    Json compatibility = Json::array();
    for (const auto& e : c.compatibility) {
        Json sets = Json::array();
        for (const auto& s : e.support_sets) sets.push_back(supports_to_json(s));
        compatibility.push_back(Json{{"operation", std::string(to_string(e.operation))},
                                     {"main", std::string(to_string(e.main))},
                                     {"support_sets", std::move(sets)}});
    }
    Json profiles = Json::array();
    for (const auto& e : c.cost_profiles) {
        Json p = to_json(e.profile);
        p["region"] = std::string(to_string(e.region));
        p["crop"] = e.crop;
        p["provenance"] = e.provenance;
        profiles.push_back(std::move(p));
    }
    Json investments = Json::array();
    for (const auto& e : c.investments) {
        investments.push_back(Json{{"main", std::string(to_string(e.main))},
                                   {"supports", supports_to_json(e.supports)},
                                   {"main_investment", e.split.main},
                                   {"support_investments", support_costs_to_json(e.split.supports)},
                                   {"recurring_cost", e.recurring_cost},
                                   {"provenance", e.provenance}});
    }
    return Json{{"version", c.version},
                {"crops", std::move(crops)},
                {"benefits", std::move(benefits)},
                {"compatibility", std::move(compatibility)},
                {"cost_profiles", std::move(profiles)},
                {"investments", std::move(investments)}};
}

Catalog catalog_from_json(const Json& j) {
    ObjectReader r(j, "");
    Catalog c;
    c.version = r.string("version");
    c.crops = array_of<CropDefaults>(
        r, "crops",
        [](const Json& x, const std::string& p) {
            ObjectReader e(x, p);
            CropDefaults out;
            out.crop.name = e.string("name");
            out.crop.builtin = true;
            out.crop.default_yield = e.number("default_yield");
            out.crop.default_price = e.number("default_price");
            out.provenance = e.opt_string("provenance");
            e.finish();
            return out;
        },
        true);
    c.benefits = array_of<BenefitRow>(
        r, "benefits",
        [](const Json& x, const std::string& p) {
            ObjectReader e(x, p);
            BenefitRow row;
            row.group = e.opt_string("group");
            row.main = e.enumeration<MainTechnology>("main");
            row.supports = supports_from_json(e.find("supports"), e.path("supports"));
            if (const Json* op = e.find("operation")) row.operation = as_enum<OperationKind>(*op, e.path("operation"));
            // The percentages share the object with the row keys; parse them from a filtered copy.
            Json pct = Json::object();
            for (const char* key : {"input_reduction", "yield_increase", "fuel_reduction", "labour_reduction", "input_scope"}) {
                if (const Json* v = e.find(key)) pct[key] = *v;
            }
            if (!pct.contains("input_scope")) fail(e.path("input_scope"), "required field missing");
            row.benefits = benefits_from_json(pct, p, InputScope::OperationSpecific);
            e.finish();
            return row;
        },
        true);
    c.compatibility = array_of<CompatibilityEntry>(
        r, "compatibility",
        [](const Json& x, const std::string& p) {
            ObjectReader e(x, p);
            CompatibilityEntry out;
            out.operation = e.enumeration<OperationKind>("operation");
            out.main = e.enumeration<MainTechnology>("main");
            const auto spath = e.path("support_sets");
            const Json& sets = as_array(e.require("support_sets"), spath);
            for (std::size_t i = 0; i < sets.size(); ++i) out.support_sets.push_back(supports_from_json(&sets[i], index(spath, i)));
            e.finish();
            return out;
        },
        true);
    c.cost_profiles = array_of<CostProfileEntry>(
        r, "cost_profiles",
        [](const Json& x, const std::string& p) {
            if (!x.is_object()) fail(p, "expected an object");
            Json profile = x;
            CostProfileEntry out;
            auto take = [&](const char* key) -> Json {
                auto it = profile.find(key);
                if (it == profile.end()) fail(join(p, key), "required field missing");
                Json v = *it;
                profile.erase(it);
                return v;
            };
            out.region = as_enum<Region>(take("region"), join(p, "region"));
            out.crop = as_string(take("crop"), join(p, "crop"));
            if (profile.contains("provenance")) out.provenance = as_string(take("provenance"), join(p, "provenance"));
            out.profile = cost_profile_from_json(profile, p);
            return out;
        },
        true);
    c.investments = array_of<InvestmentEntry>(
        r, "investments",
        [](const Json& x, const std::string& p) {
            ObjectReader e(x, p);
            InvestmentEntry out;
            out.main = e.enumeration<MainTechnology>("main");
            out.supports = supports_from_json(e.find("supports"), e.path("supports"));
            out.split.main = e.number("main_investment");
            out.split.supports = support_costs_from_json(e.find("support_investments"), e.path("support_investments"));
            out.recurring_cost = e.opt_number("recurring_cost").value_or(0.0);
            out.provenance = e.opt_string("provenance");
            e.finish();
            return out;
        },
        true);
    r.finish();
    return c;
}

}  // namespace pacba
