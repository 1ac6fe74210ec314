#include "pacba/sweep.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>

#include "pacba/evaluation.hpp"
#include "pacba/json_codec.hpp"

namespace pacba {

namespace {

constexpr std::size_t kMaxGridPoints = 100000;

[[noreturn]] void invalid(std::string field, std::string rule) {
    throw ValidationError({Violation{std::move(field), std::move(rule)}});
}

std::vector<std::string_view> split(std::string_view path) {
    std::vector<std::string_view> parts;
    while (true) {
        auto dot = path.find('.');
        parts.push_back(path.substr(0, dot));
        if (dot == std::string_view::npos) break;
        path.remove_prefix(dot + 1);
    }
    return parts;
}

std::optional<std::size_t> index_of(std::string_view text) {
    std::size_t i = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), i);
    if (ec != std::errc{} || ptr != text.data() + text.size()) return std::nullopt;
    return i;
}

}  // namespace

std::vector<double> grid_points(const SweepGrid& g) {
    if (!std::isfinite(g.from) || !std::isfinite(g.to)) invalid("from", "bounds must be finite");
    if (!(std::isfinite(g.step) && g.step > 0.0)) invalid("step", "must be > 0");
    if (g.from > g.to) invalid("from", "must be <= to");
    // The small slack keeps `to` on the grid when (to - from) / step is an
    // integer up to floating-point error.
    const double span = (g.to - g.from) / g.step;
    if (span >= static_cast<double>(kMaxGridPoints)) {
        invalid("step", "grid exceeds " + std::to_string(kMaxGridPoints) + " points");
    }
    const auto n = static_cast<std::size_t>(std::floor(span + 1e-9)) + 1;
    std::vector<double> points(n);
    for (std::size_t i = 0; i < n; ++i) points[i] = g.from + static_cast<double>(i) * g.step;
    return points;
}

FarmScenario apply_parameter(const FarmScenario& scenario, const Catalog& catalog, std::string_view parameter,
                             double value) {
    FarmScenario s = scenario;
    const auto parts = split(parameter);
    const std::string field{parameter};

    if (parts.size() == 1 && parts[0] == "discount-rate") {
        s.discount_rate = value;
        return s;
    }

    if (parts.size() == 3 && parts[0] == "crops") {
        CropEntry* crop = nullptr;
        if (auto i = index_of(parts[1]); i && *i < s.crops.size()) {
            crop = &s.crops[*i];
        } else {
            for (auto& c : s.crops) {
                if (c.crop == parts[1]) crop = &c;
            }
        }
        if (!crop) invalid(field, "no such crop");
        if (parts[2] == "area") {
            crop->area = value;
        } else if (parts[2] == "yield") {
            crop->yield = value;
        } else if (parts[2] == "price") {
            crop->price = value;
        } else {
            invalid(field, "crop parameter must be area, yield or price");
        }
        return s;
    }

    if (parts.size() == 3 && parts[0] == "options") {
        auto i = index_of(parts[1]);
        if (!i || *i >= s.options.size()) invalid(field, "no such option");
        auto& o = s.options[*i];
        const std::string_view name = parts[2];
        if (name == "main-investment") {
            o.main_investment = value;
            return s;
        }
        if (name == "recurring-cost") {
            o.recurring_cost = value;
            return s;
        }
        double BenefitProfile::*member = nullptr;
        if (name == "input-reduction") member = &BenefitProfile::input_reduction;
        if (name == "yield-increase") member = &BenefitProfile::yield_increase;
        if (name == "fuel-reduction") member = &BenefitProfile::fuel_reduction;
        if (name == "labour-reduction") member = &BenefitProfile::labour_reduction;
        if (!member) invalid(field, "unknown option parameter");
        if (!o.benefits) {
            o.benefits = find_benefits(catalog, o.main, o.supports, o.operation);
            if (!o.benefits) {
                throw UnresolvableOptionError("options[" + std::to_string(*i) + "].benefits",
                                              "no catalog benefits for this option; supply them in the scenario");
            }
        }
        (*o.benefits).*member = percent_to_fraction(value);
        return s;
    }

    invalid(field, "unknown sweep parameter");
}

SweepResult sweep(const FarmScenario& scenario, const Catalog& catalog, std::string_view parameter,
                  const SweepGrid& grid) {
    SweepResult out;
    out.parameter = std::string(parameter);
    out.irr_constant = parameter == "discount-rate";
    bool all_positive = true;
    for (double x : grid_points(grid)) {
        const auto result = evaluate(apply_parameter(scenario, catalog, parameter, x), catalog);
        const auto& p = result.portfolio;
        all_positive = all_positive && std::all_of(p.cash_flows.begin(), p.cash_flows.end(),
                                                   [](double f) { return f > 0.0; });
        out.rows.push_back({x, p.npv, p.bcr, p.irr});
    }
    if (out.irr_constant && all_positive) {
        for (std::size_t i = 1; i < out.rows.size(); ++i) {
            if (!(out.rows[i].npv < out.rows[i - 1].npv)) {
                out.warnings.push_back("NPV does not decrease between discount rates " +
                                       std::to_string(out.rows[i - 1].value) + " and " +
                                       std::to_string(out.rows[i].value) + " although all flows are positive");
            }
        }
    }
    return out;
}

}  // namespace pacba
