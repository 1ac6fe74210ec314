#include "pacba/finance.hpp"

#include <algorithm>
#include <cmath>

namespace pacba::finance {

double scale_investment(double base_investment, double total_area) {
    if (!(total_area > 0.0) || !std::isfinite(total_area)) throw DomainError("total area must be > 0");
    if (!(base_investment >= 0.0)) throw DomainError("base investment must be >= 0");
    const double factor = std::max(1.0, total_area / kReferenceAreaHa);
    return base_investment * std::pow(factor, kScaleExponent);
}

AnnualBenefit annual_benefit(const CropEconomics& crop, const BenefitProfile& benefits, double recurring_cost,
                             const InputCostProfile& own, std::span<const InputCostProfile> input_profiles) {
    AnnualBenefit out;
    out.revenue_from_yield = crop.area * crop.yield * crop.price * benefits.yield_increase;
    for (const auto& p : input_profiles) {
        out.input_saving +=
            p.input_price * p.application_rate * p.treatments_per_year * crop.area * benefits.input_reduction;
    }
    out.fuel_saving = own.fuel_price * own.fuel_consumption * own.treatments_per_year * crop.area * benefits.fuel_reduction;
    out.labour_saving = own.labour_cost * own.labour_hours * own.treatments_per_year * crop.area * benefits.labour_reduction;
    out.recurring_cost = recurring_cost;
    return out;
}

std::vector<InputSaving> input_saved_quantity(const BenefitProfile& benefits,
                                              std::span<const InputCostProfile> input_profiles, double area) {
    std::vector<InputSaving> out;
    out.reserve(input_profiles.size());
    for (const auto& p : input_profiles) {
        InputSaving s;
        s.input = p.input;
        s.unit = p.unit;
        s.operation = p.operation;
        s.quantity = p.application_rate * p.treatments_per_year * area * benefits.input_reduction;
        s.value = s.quantity * p.input_price;
        out.push_back(std::move(s));
    }
    return out;
}

std::vector<double> cash_flows(const AnnualBenefit& benefit, int horizon_years) {
    if (horizon_years < 1) throw DomainError("horizon must be >= 1 year");
    return std::vector<double>(static_cast<std::size_t>(horizon_years), benefit.net_flow());
}

namespace {

void require_rate(double r) {
    if (!(r > -1.0) || !std::isfinite(r)) throw DomainError("discount rate must be > -1");
}

double npv_unchecked(double investment, std::span<const double> flows, double r) {
    const double base = 1.0 + r;
    double sum = -investment;
    for (std::size_t t = 0; t < flows.size(); ++t) {
        sum += flows[t] / std::pow(base, static_cast<double>(t + 1));
    }
    return sum;
}

int sign(double x) { return (x > 0.0) - (x < 0.0); }

}  // namespace

double npv(double scaled_investment, std::span<const double> flows, double discount_rate) {
    require_rate(discount_rate);
    return npv_unchecked(scaled_investment, flows, discount_rate);
}

std::optional<double> irr(double scaled_investment, std::span<const double> flows) {
    auto f = [&](double r) { return npv_unchecked(scaled_investment, flows, r); };

    // Coarse scan for the first sign change, then bisect inside it.
    const auto steps = static_cast<int>(std::ceil((kIrrUpperBound - kIrrLowerBound) / kIrrScanStep));
    double lo = kIrrLowerBound;
    double f_lo = f(lo);
    if (f_lo == 0.0) return lo;
    bool bracketed = false;
    double hi = lo;
    double f_hi = f_lo;
    for (int k = 1; k <= steps; ++k) {
        hi = std::min(kIrrLowerBound + k * kIrrScanStep, kIrrUpperBound);
        f_hi = f(hi);
        if (f_hi == 0.0) return hi;
        if (sign(f_hi) != sign(f_lo) && std::isfinite(f_lo) && std::isfinite(f_hi)) {
            bracketed = true;
            break;
        }
        lo = hi;
        f_lo = f_hi;
    }
    if (!bracketed) return std::nullopt;

    const double tolerance = 1e-9 * std::max(1.0, std::abs(scaled_investment));
    double mid = 0.5 * (lo + hi);
    double f_mid = f(mid);
    // Past the target width keep halving while the residual is still above
    // tolerance and the interval can shrink (steep npv near r = −1).
    while ((hi - lo > kIrrIntervalWidth || std::abs(f_mid) >= tolerance) && mid > lo && mid < hi) {
        if (f_mid == 0.0) return mid;
        if (sign(f_mid) == sign(f_lo)) {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
        mid = 0.5 * (lo + hi);
        f_mid = f(mid);
    }
    return mid;
}

std::optional<double> bcr(double scaled_investment, std::span<const double> flows, double discount_rate) {
    require_rate(discount_rate);
    const double base = 1.0 + discount_rate;
    double benefits = 0.0;
    double costs = scaled_investment;
    for (std::size_t t = 0; t < flows.size(); ++t) {
        const double pv = flows[t] / std::pow(base, static_cast<double>(t + 1));
        if (pv > 0.0) {
            benefits += pv;
        } else {
            costs -= pv;
        }
    }
    if (costs == 0.0) return std::nullopt;
    return benefits / costs;
}

FinancialSummary summarize(double scaled_investment, const AnnualBenefit& annual, std::vector<double> flows,
                           double discount_rate, std::vector<InputSaving> input_saved) {
    FinancialSummary s;
    s.scaled_investment = scaled_investment;
    s.annual = annual;
    s.npv = npv(scaled_investment, flows, discount_rate);
    s.irr = irr(scaled_investment, flows);
    s.bcr = bcr(scaled_investment, flows, discount_rate);
    s.cash_flows = std::move(flows);
    s.input_saved = std::move(input_saved);
    return s;
}

}  // namespace pacba::finance
