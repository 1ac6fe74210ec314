#include "pacba/cli.hpp"

#include <CLI11.hpp>
#include <httplib.h>

#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "pacba/api.hpp"
#include "pacba/evaluation.hpp"
#include "pacba/json_codec.hpp"
#include "pacba/report.hpp"
#include "pacba/sweep.hpp"

#ifndef PACBA_DEFAULT_CATALOG
#define PACBA_DEFAULT_CATALOG "data/seed_catalog.json"
#endif

namespace pacba {

namespace {

struct IoFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string read_text(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoFailure("cannot read '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out || !(out << text) || !out.flush()) throw IoFailure("cannot write '" + path + "'");
}

FarmScenario read_scenario(const std::string& path) {
    FarmScenario s = scenario_from_json(parse_json(read_text(path)));
    if (auto v = validate_scenario(s); !v.empty()) throw ValidationError(std::move(v));
    return s;
}

std::string pad(const std::string& s, std::size_t width, bool right) {
    if (s.size() >= width) return s;
    return right ? std::string(width - s.size(), ' ') + s : s + std::string(width - s.size(), ' ');
}

std::string render_table(const std::vector<std::vector<std::string>>& rows) {
    std::vector<std::size_t> width;
    for (const auto& r : rows) {
        width.resize(std::max(width.size(), r.size()));
        for (std::size_t i = 0; i < r.size(); ++i) width[i] = std::max(width[i], r[i].size());
    }
    std::string out;
    for (std::size_t k = 0; k < rows.size(); ++k) {
        for (std::size_t i = 0; i < rows[k].size(); ++i) {
            if (i) out += "  ";
            out += pad(rows[k][i], width[i], i > 0);
        }
        while (!out.empty() && out.back() == ' ') out.pop_back();
        out += '\n';
        if (k == 0) {
            std::size_t total = 0;
            for (auto w : width) total += w;
            out += std::string(total + 2 * (width.size() - 1), '-') + '\n';
        }
    }
    return out;
}

std::string evaluation_table(const EvaluationResult& r) {
    std::vector<std::vector<std::string>> rows{{"option", "investment", "npv", "irr", "bcr"}};
    for (const auto& o : r.options) {
        rows.push_back({o.option.label(), format_money(o.summary.scaled_investment), format_money(o.summary.npv),
                        format_ratio(o.summary.irr), format_ratio(o.summary.bcr)});
    }
    const auto& p = r.portfolio;
    rows.push_back({"portfolio", format_money(p.scaled_investment), format_money(p.npv), format_ratio(p.irr),
                    format_ratio(p.bcr)});
    return render_table(rows);
}

std::string sweep_table(const SweepResult& s) {
    std::string out;
    const bool discount = s.irr_constant;
    if (discount && !s.rows.empty()) out += "irr " + format_ratio(s.rows.front().irr) + " (same at every discount rate)\n";
    std::vector<std::vector<std::string>> rows;
    if (discount) {
        rows.push_back({s.parameter, "npv", "bcr"});
    } else {
        rows.push_back({s.parameter, "npv", "bcr", "irr"});
    }
    for (const auto& r : s.rows) {
        std::vector<std::string> row{discount ? format_ratio(r.value) : format_plain(r.value), format_money(r.npv),
                                     format_ratio(r.bcr)};
        if (!discount) row.push_back(format_ratio(r.irr));
        rows.push_back(std::move(row));
    }
    return out + render_table(rows);
}

void print_violations(std::ostream& err, const std::vector<Violation>& violations) {
    for (const auto& v : violations) err << v.field << ": " << v.rule << '\n';
}

/// Runs one command body and maps failures onto the exit-code set.
template <class F>
int guarded(std::ostream& err, F&& body) {
    try {
        return body();
    } catch (const IoFailure& e) {
        err << "error: " << e.what() << '\n';
        return kExitIo;
    } catch (const StorageError& e) {
        err << "error: " << e.what() << '\n';
        return kExitIo;
    } catch (const ValidationError& e) {
        err << "validation failed:\n";
        print_violations(err, e.violations());
        return kExitInvalid;
    } catch (const IntegrityError& e) {
        err << "catalog integrity errors:\n";
        print_violations(err, e.violations());
        return kExitInvalid;
    } catch (const UnresolvableOptionError& e) {
        err << e.field() << ": " << e.what() << '\n';
        return kExitInvalid;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kExitInvalid;
    }
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Cost-benefit evaluation of precision agriculture technologies", "pacba"};
    app.require_subcommand(1);

    std::string catalog_path = PACBA_DEFAULT_CATALOG;
    auto add_catalog = [&](CLI::App* cmd) {
        cmd->add_option("--catalog", catalog_path, "Catalog file")->envname("PACBA_CATALOG");
    };

    // evaluate
    auto* eval_cmd = app.add_subcommand("evaluate", "Evaluate a scenario file");
    std::string scenario_path;
    std::string out_path;
    std::string format = "structured";
    std::string generated_at;
    eval_cmd->add_option("--scenario", scenario_path, "Scenario file")->required();
    add_catalog(eval_cmd);
    eval_cmd->add_option("--out", out_path, "Write the report here instead of stdout");
    eval_cmd->add_option("--format", format, "structured, printable or table")
        ->check(CLI::IsMember({"structured", "printable", "table"}));
    eval_cmd->add_option("--generated-at", generated_at, "Timestamp printed in the report");

    // sweep
    auto* sweep_cmd = app.add_subcommand("sweep", "Evaluate a scenario over a parameter grid");
    std::string param;
    SweepGrid grid;
    sweep_cmd->add_option("--scenario", scenario_path, "Scenario file")->required();
    add_catalog(sweep_cmd);
    sweep_cmd->add_option("--param", param, "Parameter path, e.g. discount-rate or options.0.input-reduction")
        ->required();
    sweep_cmd->add_option("--from", grid.from, "First grid value")->required();
    sweep_cmd->add_option("--to", grid.to, "Last grid value")->required();
    sweep_cmd->add_option("--step", grid.step, "Grid spacing")->required();

    // catalog validate
    auto* catalog_cmd = app.add_subcommand("catalog", "Catalog tools");
    catalog_cmd->require_subcommand(1);
    auto* validate_cmd = catalog_cmd->add_subcommand("validate", "Check a catalog file");
    std::string validate_path;
    validate_cmd->add_option("file", validate_path, "Catalog file")->required();

    // serve
    auto* serve_cmd = app.add_subcommand("serve", "Run the HTTP API");
    std::string host = "127.0.0.1";
    int port = 8080;
    std::string store_dir = "pacba-store";
    std::string origin;
    serve_cmd->add_option("--host", host, "Listen address")->envname("PACBA_HOST");
    serve_cmd->add_option("--port", port, "Listen port")->envname("PACBA_PORT");
    add_catalog(serve_cmd);
    serve_cmd->add_option("--store", store_dir, "Run-store directory")->envname("PACBA_STORE");
    serve_cmd->add_option("--allow-origin", origin, "CORS origin of the web UI")->envname("PACBA_ALLOW_ORIGIN");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kExitInvalid;
    }

    if (*eval_cmd) {
        return guarded(err, [&] {
            const Catalog catalog = load_catalog_file(catalog_path);
            const FarmScenario scenario = read_scenario(scenario_path);
            const EvaluationResult result = evaluate(scenario, catalog);
            std::string text;
            if (format == "table") {
                text = evaluation_table(result);
            } else {
                const auto stamp = generated_at.empty() ? std::nullopt : std::optional(generated_at);
                text = render_report(result, parse_enum<ReportFormat>(format), stamp);
            }
            if (out_path.empty()) {
                out << text;
            } else {
                write_text(out_path, text);
            }
            return kExitOk;
        });
    }

    if (*sweep_cmd) {
        return guarded(err, [&] {
            const Catalog catalog = load_catalog_file(catalog_path);
            const FarmScenario scenario = read_scenario(scenario_path);
            const SweepResult result = sweep(scenario, catalog, param, grid);
            out << sweep_table(result);
            for (const auto& w : result.warnings) err << "warning: " << w << '\n';
            return kExitOk;
        });
    }

    if (*validate_cmd) {
        return guarded(err, [&] {
            const Catalog catalog = load_catalog_file(validate_path);
            out << "catalog " << catalog.version << ": " << catalog.benefits.size() << " benefit rows, "
                << catalog.compatibility.size() << " compatibility entries, " << catalog.cost_profiles.size()
                << " cost profiles, " << catalog.investments.size() << " investments\n";
            return kExitOk;
        });
    }

    if (*serve_cmd) {
        return guarded(err, [&] {
            const Catalog catalog = load_catalog_file(catalog_path);
            RunStore store(store_dir);
            ApiService service(catalog, store, ApiConfig{origin});
            httplib::Server server;
            service.mount(server);
            if (!server.bind_to_port(host, port)) throw IoFailure("cannot listen on " + host + ":" + std::to_string(port));
            out << "listening on " << host << ":" << port << std::endl;
            server.listen_after_bind();
            return kExitOk;
        });
    }
    return kExitInvalid;
}

}  // namespace pacba
