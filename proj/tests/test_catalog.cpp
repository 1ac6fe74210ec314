#include <doctest.h>

#include <chrono>

#include "benefit_table.hpp"
#include "pacba/catalog.hpp"
#include "pacba/json_codec.hpp"
#include "support.hpp"

using namespace pacba;
using testing_support::seed_catalog;

namespace {

SupportSet parse_supports(std::string_view text) {
    SupportSet out;
    if (text == "none") return out;
    while (!text.empty()) {
        auto plus = text.find('+');
        out.insert(parse_enum<SupportTechnology>(text.substr(0, plus)));
        if (plus == std::string_view::npos) break;
        text.remove_prefix(plus + 1);
    }
    return out;
}

Json seed_json() { return parse_json(testing_support::read_file(testing_support::kSeedCatalog)); }

std::vector<Violation> violations_of(const Json& doc) {
    try {
        load_catalog(dump_json(doc));
    } catch (const IntegrityError& e) {
        return e.violations();
    }
    return {};
}

bool mentions(const std::vector<Violation>& v, std::string_view needle) {
    for (const auto& x : v) {
        if (x.field.find(needle) != std::string::npos || x.rule.find(needle) != std::string::npos) return true;
    }
    return false;
}

}  // namespace

TEST_SUITE("catalog") {

TEST_CASE("seed catalog reproduces every benefit row exactly") {
    const auto start = std::chrono::steady_clock::now();
    const Catalog& c = seed_catalog();
    REQUIRE(c.benefits.size() == benefit_table::kRows.size());
    for (std::size_t i = 0; i < benefit_table::kRows.size(); ++i) {
        const auto& want = benefit_table::kRows[i];
        const auto& got = c.benefits[i];
        CAPTURE(i);
        CHECK(to_string(got.main) == want.main);
        CHECK(got.supports == parse_supports(want.supports));
        if (want.operation.empty()) {
            CHECK_FALSE(got.operation.has_value());
        } else {
            REQUIRE(got.operation.has_value());
            CHECK(to_string(*got.operation) == want.operation);
        }
        CHECK(got.benefits.input_reduction == percent_to_fraction(want.input));
        CHECK(got.benefits.yield_increase == percent_to_fraction(want.yield));
        CHECK(got.benefits.fuel_reduction == percent_to_fraction(want.fuel));
        CHECK(got.benefits.labour_reduction == percent_to_fraction(want.labour));
        CHECK(got.benefits.input_scope == scope_for(got.main));
    }
    CHECK(std::chrono::steady_clock::now() - start < std::chrono::seconds(1));
}

TEST_CASE("spot checks") {
    const Catalog& c = seed_catalog();
    auto as = default_benefits(c, MainTechnology::AutoSteer, {SupportTechnology::NormalGPS}, OperationKind::Seeding);
    CHECK(fraction_to_percent(as.input_reduction) == 3.0);
    CHECK(as.yield_increase == 0.0);
    CHECK(fraction_to_percent(as.fuel_reduction) == 3.0);
    CHECK(fraction_to_percent(as.labour_reduction) == 1.0);
    CHECK(as.input_scope == InputScope::AllInputs);

    auto ins = default_benefits(c, MainTechnology::VRSprayer, {SupportTechnology::SurveyUAV},
                                OperationKind::SprayingInsecticide);
    CHECK(fraction_to_percent(ins.input_reduction) == 20.0);

    auto cam = default_benefits(c, MainTechnology::InterRowHoeingCamera, {}, OperationKind::MechanicalWeeding);
    CHECK(fraction_to_percent(cam.labour_reduction) == 50.0);
}

TEST_CASE("exact lookup returns nothing outside the table") {
    const Catalog& c = seed_catalog();
    CHECK_FALSE(find_benefits(c, MainTechnology::VRSprayer, {SupportTechnology::SoilEC}, OperationKind::SprayingFungicide));
    CHECK_FALSE(find_benefits(c, MainTechnology::VRSeeder, {SupportTechnology::Satellite}, OperationKind::Fertilization));
    CHECK_FALSE(find_benefits(c, MainTechnology::AutoSteer, {SupportTechnology::CTF}, OperationKind::Seeding));
    CHECK_THROWS_AS(default_benefits(c, MainTechnology::VRLime, {SupportTechnology::Satellite}, OperationKind::Liming),
                    NotFoundError);
}

TEST_CASE("guidance rows apply to every listed pass") {
    const Catalog& c = seed_catalog();
    for (auto op : {OperationKind::Seeding, OperationKind::Fertilization, OperationKind::SprayingHerbicide}) {
        CHECK(find_benefits(c, MainTechnology::SectionControl, {SupportTechnology::RTKGPS}, op).has_value());
        CHECK(find_benefits(c, MainTechnology::AutoSteer, {SupportTechnology::RTKGPS, SupportTechnology::CTF}, op)
                  .has_value());
    }
    CHECK_FALSE(find_benefits(c, MainTechnology::SectionControl, {SupportTechnology::RTKGPS}, OperationKind::Tillage));
}

TEST_CASE("compatible options per operation") {
    const Catalog& c = seed_catalog();
    auto weeding = compatible_options(c, OperationKind::MechanicalWeeding);
    REQUIRE(weeding.size() == 2);
    std::set<MainTechnology> mains{weeding[0].main, weeding[1].main};
    CHECK(mains == std::set{MainTechnology::InterRowHoeingGPS, MainTechnology::InterRowHoeingCamera});
    CHECK(weeding[0].supports.empty());

    for (auto op : all_values<OperationKind>()) {
        for (const auto& combo : compatible_options(c, op)) {
            CAPTURE(to_string(op));
            CHECK(find_benefits(c, combo.main, combo.supports, op).has_value());
            CHECK(find_investment(c, combo.main, combo.supports) != nullptr);
        }
    }
    // Every benefit row is reachable from at least one operation.
    for (const auto& row : c.benefits) {
        bool reachable = false;
        for (auto op : all_values<OperationKind>()) {
            for (const auto& combo : compatible_options(c, op)) {
                if (combo.main == row.main && combo.supports == row.supports &&
                    (!row.operation || *row.operation == op)) {
                    reachable = true;
                }
            }
        }
        CHECK(reachable);
    }
}

TEST_CASE("every value without a published source is marked placeholder") {
    const Catalog& c = seed_catalog();
    for (const auto& x : c.crops) CHECK(x.provenance == "placeholder");
    for (const auto& x : c.cost_profiles) CHECK(x.provenance == "placeholder");
    for (const auto& x : c.investments) CHECK(x.provenance == "placeholder");
    CHECK(c.cost_profiles.size() == 4 * 5 * 10);
}

TEST_CASE("catalog serialization round trip") {
    const Catalog& c = seed_catalog();
    const auto text = serialize_catalog(c);
    const Catalog again = load_catalog(text);
    CHECK(again == c);
    CHECK(serialize_catalog(again) == text);
}

TEST_CASE("integrity: duplicated row is named") {
    Json doc = seed_json();
    doc["benefits"].push_back(doc["benefits"][4]);
    auto v = violations_of(doc);
    REQUIRE_FALSE(v.empty());
    CHECK(mentions(v, "duplicate"));
    CHECK(mentions(v, "benefits[36]"));
}

TEST_CASE("integrity: percentage above 100 names the field") {
    Json doc = seed_json();
    doc["benefits"][7]["input_reduction"] = 150;
    auto v = violations_of(doc);
    REQUIRE(v.size() == 1);
    CHECK(v[0].field == "benefits[7].input_reduction");
}

TEST_CASE("integrity: missing investment and unknown crop") {
    Json doc = seed_json();
    doc["investments"].erase(0);
    CHECK_FALSE(violations_of(doc).empty());

    Json doc2 = seed_json();
    doc2["cost_profiles"][0]["crop"] = "rye";
    CHECK(mentions(violations_of(doc2), "rye"));
}

TEST_CASE("malformed documents are parse errors") {
    CHECK_THROWS_AS(load_catalog(""), ParseError);
    CHECK_THROWS_AS(load_catalog("{"), ParseError);
    CHECK_THROWS_AS(load_catalog("[]"), ParseError);
    Json doc = seed_json();
    doc["benefits"][0]["main"] = "jetpack";
    CHECK_THROWS_AS(load_catalog(dump_json(doc)), ParseError);
    Json doc2 = seed_json();
    doc2["surprise"] = 1;
    CHECK_THROWS_AS(load_catalog(dump_json(doc2)), ParseError);
    CHECK_THROWS_AS(load_catalog_file("/nonexistent/catalog.json"), StorageError);
}

TEST_CASE("cost profiles: regional lookup and overrides") {
    const Catalog& c = seed_catalog();
    CropEntry wheat{"wheat", false, 10.0, {}, {}, {}};
    const auto base = cost_profile(c, Region::NorthernEurope, wheat, OperationKind::Fertilization, {});
    CHECK(base.operation == OperationKind::Fertilization);
    CHECK(base.application_rate > 0.0);

    CostOverride d;
    d.crop = "wheat";
    d.operation = OperationKind::Fertilization;
    d.input_price = 2.0;
    const std::vector<CostOverride> overrides{d};
    const auto changed = cost_profile(c, Region::NorthernEurope, wheat, OperationKind::Fertilization, overrides);
    CHECK(changed.input_price == 2.0);
    CHECK(changed.application_rate == base.application_rate);
}

}
