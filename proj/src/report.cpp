#include "pacba/report.hpp"

#include <charconv>
#include <cmath>

#include "pacba/json_codec.hpp"

namespace pacba {

namespace {

std::string fixed(double value, int decimals) {
    if (!std::isfinite(value)) return "n/a";
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::fixed, decimals);
    if (ec != std::errc{}) return "n/a";
    std::string out(buf, end);
    if (out.front() == '-' && out.find_first_not_of("-0.") == std::string::npos) out.erase(0, 1);
    return out;
}

std::string format_value(double value, const std::string& unit) {
    if (unit.starts_with("EUR")) return format_money(value);
    if (unit == "fraction") return format_ratio(value);
    return format_plain(value);
}

std::string percent(double fraction) { return format_plain(fraction_to_percent(fraction)) + "%"; }

Json indicators(const FinancialSummary& s) {
    return Json{{"scaled_investment", format_money(s.scaled_investment)},
                {"annual_net_flow", format_money(s.annual.net_flow())},
                {"npv", format_money(s.npv)},
                {"irr", format_ratio(s.irr)},
                {"bcr", format_ratio(s.bcr)}};
}

Json savings(const std::vector<InputSaving>& saved) {
    Json out = Json::array();
    for (const auto& s : saved) {
        out.push_back(Json{{"operation", std::string(to_string(s.operation))},
                           {"input", s.input},
                           {"quantity", format_quantity(s.quantity)},
                           {"unit", s.unit + "/yr"},
                           {"value", format_money(s.value)}});
    }
    return out;
}

Json build_summary(const EvaluationResult& r) {
    const auto& sc = r.scenario;
    Json crops = Json::array();
    for (const auto& c : sc.crops) {
        crops.push_back(Json{{"crop", c.crop},
                             {"area", format_plain(c.area)},
                             {"yield", c.yield ? format_plain(*c.yield) : "n/a"},
                             {"price", c.price ? format_money(*c.price) : "n/a"}});
    }

    Json options = Json::array();
    Json benefits = Json::array();
    for (const auto& o : r.options) {
        Json row = indicators(o.summary);
        row["label"] = o.option.label();
        row["area"] = format_plain(o.area);
        options.push_back(std::move(row));

        const auto& b = o.option.benefits;
        benefits.push_back(Json{{"option", o.option.label()},
                                {"source", o.option.benefits_source == ValueSource::User ? "user" : "catalog"},
                                {"input_scope", std::string(to_string(b.input_scope))},
                                {"input_reduction", percent(b.input_reduction)},
                                {"yield_increase", percent(b.yield_increase)},
                                {"fuel_reduction", percent(b.fuel_reduction)},
                                {"labour_reduction", percent(b.labour_reduction)}});
    }

    Json deviations = Json::array();
    for (const auto& d : r.deviations) {
        deviations.push_back(Json{{"field", d.field},
                                  {"value", format_value(d.value, d.unit)},
                                  {"catalog_default", d.catalog_default ? format_value(*d.catalog_default, d.unit) : "n/a"},
                                  {"unit", d.unit}});
    }
    Json provenance = Json::array();
    for (const auto& p : r.provenance) provenance.push_back(Json{{"subject", p.subject}, {"provenance", p.provenance}});

    return Json{{"scenario", Json{{"region", std::string(to_string(sc.region))},
                                  {"catalog_version", r.catalog_version},
                                  {"crops", std::move(crops)}}},
                {"options", std::move(options)},
                {"portfolio", indicators(r.portfolio)},
                {"input_savings", savings(r.portfolio.input_saved)},
                {"assumptions", Json{{"discount_rate", format_ratio(sc.discount_rate)},
                                     {"horizon_years", std::to_string(sc.horizon_years)},
                                     {"benefits", std::move(benefits)},
                                     {"deviations", std::move(deviations)},
                                     {"provenance", std::move(provenance)}}}};
}

std::string escape(std::string_view text) {
    std::string out;
    out.reserve(text.size());
    for (char c : text) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            case '\'': out += "&#39;"; break;
            default: out += c;
        }
    }
    return out;
}

struct Column {
    const char* key;
    const char* heading;
    bool numeric;
};

void table(std::string& out, const Json& rows, std::initializer_list<Column> columns) {
    out += "<table>\n<thead><tr>";
    for (const auto& c : columns) out += "<th>" + escape(c.heading) + "</th>";
    out += "</tr></thead>\n<tbody>\n";
    for (const auto& row : rows) {
        out += "<tr>";
        for (const auto& c : columns) {
            out += c.numeric ? "<td class=\"num\">" : "<td>";
            out += escape(row.at(c.key).get<std::string>()) + "</td>";
        }
        out += "</tr>\n";
    }
    if (rows.empty()) out += "<tr><td colspan=\"" + std::to_string(columns.size()) + "\">none</td></tr>\n";
    out += "</tbody>\n</table>\n";
}

constexpr std::string_view kStyle = R"(@page { size: A4; margin: 18mm; }
body { font-family: sans-serif; font-size: 10pt; color: #111; }
h1 { font-size: 16pt; }
h2 { font-size: 12pt; margin-top: 1.5em; }
table { border-collapse: collapse; width: 100%; margin: 0.5em 0; }
th, td { border: 1px solid #999; padding: 3px 6px; text-align: left; }
td.num { text-align: right; font-variant-numeric: tabular-nums; }
section.page { page-break-after: always; break-after: page; }
section.page:last-child { page-break-after: auto; break-after: auto; }
)";

std::string printable(const Json& summary, const std::optional<std::string>& generated_at) {
    const auto& sc = summary.at("scenario");
    const auto& as = summary.at("assumptions");
    std::string out;
    out += "<!DOCTYPE html>\n<html lang=\"en\">\n<head>\n<meta charset=\"utf-8\">\n";
    out += "<title>Precision agriculture cost-benefit report</title>\n<style>\n";
    out += kStyle;
    out += "</style>\n</head>\n<body>\n";

    out += "<section class=\"page\">\n<h1>Precision agriculture cost-benefit report</h1>\n<p>";
    if (generated_at) out += "Generated " + escape(*generated_at) + ". ";
    out += "Region " + escape(sc.at("region").get<std::string>()) + ", catalog " +
           escape(sc.at("catalog_version").get<std::string>()) + ".</p>\n";
    out += "<h2>Farm</h2>\n";
    table(out, sc.at("crops"),
          {{"crop", "Crop", false}, {"area", "Area (ha)", true}, {"yield", "Yield (t/ha)", true},
           {"price", "Price (EUR/t)", true}});

    out += "<h2>Technology options</h2>\n";
    table(out, summary.at("options"),
          {{"label", "Option", false},
           {"area", "Area (ha)", true},
           {"scaled_investment", "Investment (EUR)", true},
           {"annual_net_flow", "Annual net flow (EUR/yr)", true},
           {"npv", "NPV (EUR)", true},
           {"irr", "IRR", true},
           {"bcr", "BCR", true}});

    out += "<h2>Portfolio</h2>\n";
    table(out, Json::array({summary.at("portfolio")}),
          {{"scaled_investment", "Investment (EUR)", true},
           {"annual_net_flow", "Annual net flow (EUR/yr)", true},
           {"npv", "NPV (EUR)", true},
           {"irr", "IRR", true},
           {"bcr", "BCR", true}});

    out += "<h2>Input saved</h2>\n";
    table(out, summary.at("input_savings"),
          {{"operation", "Operation", false},
           {"input", "Input", false},
           {"quantity", "Quantity", true},
           {"unit", "Unit", false},
           {"value", "Value (EUR/yr)", true}});
    out += "</section>\n";

    out += "<section class=\"page\">\n<h2>Assumptions</h2>\n";
    out += "<p>Discount rate " + escape(as.at("discount_rate").get<std::string>()) + ", horizon " +
           escape(as.at("horizon_years").get<std::string>()) + " years.</p>\n";
    out += "<h2>Benefits used</h2>\n";
    table(out, as.at("benefits"),
          {{"option", "Option", false},
           {"source", "Source", false},
           {"input_scope", "Input scope", false},
           {"input_reduction", "Input reduction", true},
           {"yield_increase", "Yield increase", true},
           {"fuel_reduction", "Fuel reduction", true},
           {"labour_reduction", "Labour reduction", true}});
    out += "<h2>Values differing from catalog defaults</h2>\n";
    table(out, as.at("deviations"),
          {{"field", "Field", false}, {"value", "Value", true}, {"catalog_default", "Catalog default", true},
           {"unit", "Unit", false}});
    out += "<h2>Placeholder and default values</h2>\n";
    table(out, as.at("provenance"), {{"subject", "Value", false}, {"provenance", "Provenance", false}});
    out += "</section>\n</body>\n</html>\n";
    return out;
}

}  // namespace

std::string format_money(double value) { return fixed(value, 2); }
std::string format_ratio(double value) { return fixed(value, 4); }
std::string format_ratio(const std::optional<double>& value) { return value ? format_ratio(*value) : "n/a"; }
std::string format_quantity(double value) { return fixed(value, 2); }

std::string format_plain(double value) {
    if (!std::isfinite(value)) return "n/a";
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, value);
    return ec == std::errc{} ? std::string(buf, end) : "n/a";
}

std::string render_report(const EvaluationResult& result, ReportFormat format,
                          const std::optional<std::string>& generated_at) {
    Json summary = build_summary(result);
    if (format == ReportFormat::Printable) return printable(summary, generated_at);
    Json doc{{"evaluation", to_json(result)}, {"summary", std::move(summary)}};
    if (generated_at) doc["generated_at"] = *generated_at;
    return dump_json(doc);
}

EvaluationResult parse_structured_report(std::string_view document) {
    const Json j = parse_json(document);
    if (!j.is_object() || !j.contains("evaluation")) throw ParseError("report: missing 'evaluation'");
    return result_from_json(j.at("evaluation"));
}

}  // namespace pacba
