#include <doctest.h>

#include <random>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "pacba/evaluation.hpp"
#include "pacba/finance.hpp"
#include "support.hpp"

using namespace pacba;
using testing_support::seed_catalog;

namespace {

bool close_rel(double a, double b, double rel) { return std::abs(a - b) <= rel * std::max(std::abs(a), std::abs(b)); }

const Deviation* find_deviation(const EvaluationResult& r, std::string_view field) {
    for (const auto& d : r.deviations) {
        if (d.field == field) return &d;
    }
    return nullptr;
}

}  // namespace

TEST_SUITE("evaluation") {

TEST_CASE("shared support technology is counted once") {
    const auto r = evaluate(fixtures::shared_rtk_scenario(), seed_catalog());
    REQUIRE(r.options.size() == 2);
    const auto* rtk = find_investment(seed_catalog(), MainTechnology::AutoSteer, {SupportTechnology::RTKGPS});
    REQUIRE(rtk);
    const double rtk_scaled =
        finance::scale_investment(rtk->split.supports.at(SupportTechnology::RTKGPS), fixtures::kSharedRtkArea);
    CHECK(r.options[0].area == fixtures::kSharedRtkArea);
    CHECK(r.portfolio.scaled_investment ==
          r.options[0].summary.scaled_investment + r.options[1].summary.scaled_investment - rtk_scaled);
    CHECK(r.portfolio.scaled_investment < r.options[0].summary.scaled_investment + r.options[1].summary.scaled_investment);
}

TEST_CASE("shared support across different crops scales over the union") {
    auto s = fixtures::shared_rtk_scenario();
    s.crops[1].area = 123.4;
    s.options[0].crops = {"wheat"};
    s.options[1].crops = {"maize"};
    const auto r = evaluate(s, seed_catalog());
    const auto& o0 = r.options[0].option;
    const auto& o1 = r.options[1].option;
    const double expected = finance::scale_investment(o0.investment.main, 200.0) +
                            finance::scale_investment(o1.investment.main, 123.4) +
                            finance::scale_investment(12000.0, 323.4);
    CHECK(o0.investment.supports.at(SupportTechnology::RTKGPS) == 12000.0);
    CHECK(close_rel(r.portfolio.scaled_investment, expected, 1e-12));
}

TEST_CASE("single option portfolio equals the option") {
    auto s = fixtures::shared_rtk_scenario();
    s.options.pop_back();
    const auto r = evaluate(s, seed_catalog());
    REQUIRE(r.options.size() == 1);
    const auto& o = r.options[0].summary;
    CHECK(r.portfolio.scaled_investment == o.scaled_investment);
    CHECK(r.portfolio.cash_flows == o.cash_flows);
    CHECK(r.portfolio.npv == o.npv);
    CHECK(r.portfolio.irr == o.irr);
    CHECK(r.portfolio.bcr == o.bcr);
    CHECK(r.portfolio.input_saved == o.input_saved);
}

TEST_CASE("portfolio flows are the sum of option flows") {
    const auto r = evaluate(testing_support::golden_scenario(), seed_catalog());
    for (std::size_t t = 0; t < r.portfolio.cash_flows.size(); ++t) {
        double sum = 0.0;
        for (const auto& o : r.options) sum += o.summary.cash_flows[t];
        CHECK(r.portfolio.cash_flows[t] == doctest::Approx(sum).epsilon(1e-13));
    }
    CHECK(r.portfolio.npv == doctest::Approx(static_cast<double>(oracle::npv(
                                                 r.portfolio.scaled_investment, r.portfolio.cash_flows,
                                                 r.scenario.discount_rate)))
                                 .epsilon(1e-12));
}

TEST_CASE("option benefit hand check") {
    FarmScenario s;
    s.region = Region::NorthernEurope;
    s.crops.push_back({"wheat", false, 100.0, 8.0, 210.0, {}});
    OptionSelection o;
    o.main = MainTechnology::VRFertilizer;
    o.supports = {SupportTechnology::NSensor, SupportTechnology::YieldMap};
    o.operation = OperationKind::Fertilization;
    s.options.push_back(o);
    const auto r = evaluate(s, seed_catalog());
    const auto p = cost_profile(seed_catalog(), Region::NorthernEurope, s.crops[0], OperationKind::Fertilization);
    const auto& a = r.options[0].summary.annual;
    CHECK(a.revenue_from_yield == doctest::Approx(100.0 * 8.0 * 210.0 * 0.03));
    CHECK(a.input_saving ==
          doctest::Approx(p.input_price * p.application_rate * p.treatments_per_year * 100.0 * 0.01));
    CHECK(a.fuel_saving == 0.0);
    CHECK(a.labour_saving == 0.0);
    const auto* inv = find_investment(seed_catalog(), o.main, o.supports);
    REQUIRE(inv);
    CHECK(a.recurring_cost == inv->recurring_cost);
    CHECK(r.options[0].summary.scaled_investment ==
          doctest::Approx(finance::scale_investment(inv->split.total(), 100.0)).epsilon(1e-14));
}

TEST_CASE("all-inputs scope covers seed, fertiliser and pesticide passes") {
    FarmScenario s;
    s.crops.push_back({"canola", false, 60.0, {}, {}, {}});
    s.operations = {OperationKind::Seeding, OperationKind::Fertilization, OperationKind::SprayingFungicide,
                    OperationKind::Tillage, OperationKind::Liming};
    OptionSelection o;
    o.main = MainTechnology::SectionControl;
    o.supports = {SupportTechnology::NormalGPS};
    o.operation = OperationKind::Seeding;
    s.options.push_back(o);
    const auto r = evaluate(s, seed_catalog());
    std::set<OperationKind> ops;
    for (const auto& x : r.portfolio.input_saved) ops.insert(x.operation);
    CHECK(ops == std::set{OperationKind::Seeding, OperationKind::Fertilization, OperationKind::SprayingFungicide});
}

TEST_CASE("physical and monetary input savings agree") {
    std::mt19937_64 rng(21);
    for (int i = 0; i < 300; ++i) {
        const auto r = evaluate(testing_support::random_scenario(rng, seed_catalog()), seed_catalog());
        auto check = [](const FinancialSummary& f) {
            double value = 0.0;
            for (const auto& x : f.input_saved) value += x.value;
            CHECK(close_rel(f.annual.input_saving, value, 1e-9));
        };
        for (const auto& o : r.options) check(o.summary);
        check(r.portfolio);
    }
}

TEST_CASE("missing catalog benefits name the field to supply") {
    FarmScenario s;
    s.crops.push_back({"wheat", false, 10.0, {}, {}, {}});
    OptionSelection o;
    o.main = MainTechnology::VRLime;
    o.supports = {SupportTechnology::Satellite};
    o.operation = OperationKind::Liming;
    s.options.push_back(o);
    try {
        evaluate(s, seed_catalog());
        FAIL("expected UnresolvableOptionError");
    } catch (const UnresolvableOptionError& e) {
        CHECK(e.field() == "options[0].benefits");
    }
    BenefitProfile b;
    b.input_reduction = 0.02;
    s.options[0].benefits = b;
    try {
        evaluate(s, seed_catalog());
        FAIL("expected UnresolvableOptionError");
    } catch (const UnresolvableOptionError& e) {
        CHECK(e.field().starts_with("options[0]."));
    }
    s.options[0].main_investment = 3000.0;
    s.options[0].support_investments[SupportTechnology::Satellite] = 1500.0;
    s.options[0].recurring_cost = 0.0;
    CHECK_NOTHROW(evaluate(s, seed_catalog()));
}

TEST_CASE("validation failures and empty option lists") {
    FarmScenario s;
    s.crops.push_back({"wheat", false, -1.0, {}, {}, {}});
    CHECK_THROWS_AS(evaluate(s, seed_catalog()), ValidationError);
    s.crops[0].area = 5.0;
    try {
        evaluate(s, seed_catalog());
        FAIL("expected ValidationError");
    } catch (const ValidationError& e) {
        REQUIRE(e.violations().size() == 1);
        CHECK(e.violations()[0].field == "options");
    }
}

TEST_CASE("effective input is echoed and deviations are listed") {
    auto s = testing_support::golden_scenario();
    s.id = "abc";
    const auto r = evaluate(s, seed_catalog());
    CHECK(r.scenario.id.empty());
    REQUIRE(r.scenario.crops[0].yield);
    CHECK(*r.scenario.crops[0].yield == find_crop_defaults(seed_catalog(), "wheat")->crop.default_yield);
    const auto* rate = find_deviation(r, "discount_rate");
    REQUIRE(rate);
    CHECK(rate->value == 0.05);
    const auto* pct = find_deviation(r, "options[2].benefits.input_reduction");
    REQUIRE(pct);
    CHECK(pct->value == 5.0);
    CHECK(pct->catalog_default == 4.0);
    CHECK(find_deviation(r, "crops[1].price"));
    CHECK_FALSE(find_deviation(r, "crops[0].price"));
    CHECK_FALSE(find_deviation(r, "horizon_years"));
    bool placeholder = false;
    for (const auto& f : r.provenance) placeholder = placeholder || f.provenance == "placeholder";
    CHECK(placeholder);
}

TEST_CASE("evaluation is deterministic") {
    const auto s = testing_support::golden_scenario();
    CHECK(evaluate(s, seed_catalog()) == evaluate(s, seed_catalog()));
}

TEST_CASE("custom crops use their own profiles") {
    FarmScenario s;
    CropEntry c;
    c.crop = "lentil";
    c.custom = true;
    c.area = 40.0;
    c.yield = 2.0;
    c.price = 600.0;
    InputCostProfile p;
    p.operation = OperationKind::Seeding;
    p.input = "seed";
    p.unit = "kg";
    p.input_price = 1.5;
    p.application_rate = 120.0;
    p.treatments_per_year = 1.0;
    c.cost_profiles.push_back(p);
    s.crops.push_back(c);
    OptionSelection o;
    o.main = MainTechnology::VRSeeder;
    o.supports = {SupportTechnology::Satellite};
    o.operation = OperationKind::Seeding;
    s.options.push_back(o);
    const auto r = evaluate(s, seed_catalog());
    REQUIRE(r.portfolio.input_saved.size() == 1);
    CHECK(r.portfolio.input_saved[0].quantity == doctest::Approx(120.0 * 40.0 * 0.03));
}

}
