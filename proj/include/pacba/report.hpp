#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "pacba/domain.hpp"

namespace pacba {

enum class ReportFormat { Structured, Printable };

template <>
struct EnumText<ReportFormat> {
    static constexpr std::string_view type_name = "report format";
    static constexpr std::array<std::pair<ReportFormat, std::string_view>, 2> entries{{
        {ReportFormat::Structured, "structured"},
        {ReportFormat::Printable, "printable"},
    }};
};

// Display rounding, applied only here. Ties go to the even digit.
std::string format_money(double value);                  // 2 decimals
std::string format_ratio(double value);                  // 4 decimals
std::string format_ratio(const std::optional<double>& value);  // "n/a" when absent
std::string format_quantity(double value);               // 2 decimals
std::string format_plain(double value);                  // shortest round-trip text

/// Structured: JSON {"evaluation": <result>, "summary": <display strings>}.
/// Printable: a self-contained HTML document showing the same strings.
/// The output depends only on the arguments; `generated_at` is printed
/// verbatim when given.
std::string render_report(const EvaluationResult& result, ReportFormat format,
                          const std::optional<std::string>& generated_at = std::nullopt);

/// The evaluation embedded in a structured report.
EvaluationResult parse_structured_report(std::string_view document);

}  // namespace pacba
