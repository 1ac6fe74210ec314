#include "pacba/api.hpp"

#include <httplib.h>

#include <vector>

#include "pacba/evaluation.hpp"
#include "pacba/json_codec.hpp"
#include "pacba/report.hpp"

namespace pacba {

int http_status(ApiErrorCode code) {
    switch (code) {
        case ApiErrorCode::ValidationFailed:
        case ApiErrorCode::BadRequest:
        case ApiErrorCode::UnresolvableOption: return 400;
        case ApiErrorCode::ScenarioNotFound:
        case ApiErrorCode::RunNotFound:
        case ApiErrorCode::NotFound: return 404;
        case ApiErrorCode::MethodNotAllowed: return 405;
        case ApiErrorCode::StorageError:
        case ApiErrorCode::InternalError: return 500;
    }
    return 500;
}

namespace {

struct ApiFailure {
    ApiErrorCode code;
    std::string message;
    std::vector<Violation> details;
};

ApiResponse json_response(int status, const Json& body) { return {status, "application/json", dump_json(body), {}}; }

ApiResponse error_response(const ApiFailure& f) {
    Json details = Json::array();
    for (const auto& v : f.details) details.push_back(to_json(v));
    Json body{{"code", std::string(to_string(f.code))}, {"message", f.message}};
    if (!f.details.empty()) body["details"] = std::move(details);
    return json_response(http_status(f.code), body);
}

[[noreturn]] void fail(ApiErrorCode code, std::string message, std::vector<Violation> details = {}) {
    throw ApiFailure{code, std::move(message), std::move(details)};
}

std::vector<std::string> segments(std::string_view path) {
    std::vector<std::string> out;
    std::size_t pos = 0;
    while (pos < path.size()) {
        if (path[pos] == '/') {
            ++pos;
            continue;
        }
        auto next = path.find('/', pos);
        if (next == std::string_view::npos) next = path.size();
        out.emplace_back(path.substr(pos, next - pos));
        pos = next;
    }
    return out;
}

Json body_json(const ApiRequest& req) {
    if (req.body.empty()) fail(ApiErrorCode::BadRequest, "request body is empty");
    try {
        return parse_json(req.body);
    } catch (const ParseError& e) {
        fail(ApiErrorCode::BadRequest, e.what());
    }
}

FarmScenario scenario_body(const ApiRequest& req) {
    const Json j = body_json(req);
    FarmScenario s;
    try {
        s = scenario_from_json(j);
    } catch (const ParseError& e) {
        fail(ApiErrorCode::BadRequest, e.what());
    }
    if (auto v = validate_scenario(s); !v.empty()) fail(ApiErrorCode::ValidationFailed, describe(v), std::move(v));
    return s;
}

std::optional<std::string> query(const ApiRequest& req, const std::string& key) {
    auto it = req.query.find(key);
    if (it == req.query.end()) return std::nullopt;
    return it->second;
}

bool flag(const ApiRequest& req, const std::string& key) {
    auto v = query(req, key);
    if (!v) return false;
    if (*v == "true" || *v == "1" || v->empty()) return true;
    if (*v == "false" || *v == "0") return false;
    fail(ApiErrorCode::BadRequest, "query parameter '" + key + "' must be true or false");
}

ReportFormat report_format(const ApiRequest& req, const char* key) {
    auto v = query(req, key).value_or("structured");
    auto f = try_parse<ReportFormat>(v);
    if (!f) fail(ApiErrorCode::BadRequest, std::string(key) + " must be structured or printable");
    return *f;
}

ApiResponse report_response(const EvaluationResult& result, ReportFormat format,
                            const std::optional<std::string>& generated_at) {
    ApiResponse r;
    r.body = render_report(result, format, generated_at);
    if (format == ReportFormat::Printable) r.content_type = "text/html; charset=utf-8";
    return r;
}

template <class E>
Json enum_names() {
    Json out = Json::array();
    for (auto v : all_values<E>()) out.push_back(std::string(to_string(v)));
    return out;
}

Json meta(const Catalog& catalog) {
    Json crops = Json::array();
    for (const auto& c : catalog.crops) {
        crops.push_back(Json{{"name", c.crop.name},
                             {"default_yield", c.crop.default_yield},
                             {"default_price", c.crop.default_price},
                             {"provenance", c.provenance}});
    }
    return Json{{"catalog_version", catalog.version},
                {"regions", enum_names<Region>()},
                {"crops", std::move(crops)},
                {"operations", enum_names<OperationKind>()},
                {"main_technologies", enum_names<MainTechnology>()},
                {"support_technologies", enum_names<SupportTechnology>()},
                {"defaults", Json{{"discount_rate", kDefaultDiscountRate},
                                  {"horizon_years", kDefaultHorizonYears},
                                  {"reference_area", kReferenceAreaHa}}}};
}

Json technologies(const Catalog& catalog, OperationKind op) {
    Json options = Json::array();
    for (const auto& c : compatible_options(catalog, op)) {
        Json supports = Json::array();
        for (auto s : c.supports) supports.push_back(std::string(to_string(s)));
        Json o{{"main", std::string(to_string(c.main))}, {"supports", std::move(supports)}};
        auto b = find_benefits(catalog, c.main, c.supports, op);
        o["benefits"] = b ? to_json(*b) : Json(nullptr);
        if (const auto* inv = find_investment(catalog, c.main, c.supports)) {
            Json split{{"main", inv->split.main}, {"supports", Json::object()}};
            for (const auto& [s, cost] : inv->split.supports) split["supports"][std::string(to_string(s))] = cost;
            o["investment"] = std::move(split);
            o["recurring_cost"] = inv->recurring_cost;
            o["investment_provenance"] = inv->provenance;
        } else {
            o["investment"] = nullptr;
            o["recurring_cost"] = nullptr;
            o["investment_provenance"] = nullptr;
        }
        options.push_back(std::move(o));
    }
    return Json{{"operation", std::string(to_string(op))}, {"options", std::move(options)}};
}

Json summary_json(const RunSummary& s) {
    return Json{{"run_id", s.run_id},
                {"created_at", s.created_at},
                {"catalog_version", s.catalog_version},
                {"region", std::string(to_string(s.region))},
                {"crop_count", s.crop_count},
                {"option_count", s.option_count},
                {"total_area", s.total_area},
                {"npv", s.npv}};
}

Json opt_json(const std::optional<double>& v) { return v ? Json(*v) : Json(nullptr); }

Json comparison_json(const Comparison& c) {
    Json rows = Json::array();
    for (const auto& r : c.rows) {
        rows.push_back(Json{{"run_id", r.run_id},
                            {"catalog_version", r.catalog_version},
                            {"discount_rate", r.discount_rate},
                            {"npv", r.npv},
                            {"irr", opt_json(r.irr)},
                            {"bcr", opt_json(r.bcr)},
                            {"total_investment", r.total_investment},
                            {"input_saved_value", r.input_saved_value},
                            {"input_saved_by_unit", r.input_saved_by_unit}});
    }
    return Json{{"rows", std::move(rows)}, {"warnings", c.warnings}};
}

std::vector<std::string> run_ids_body(const ApiRequest& req) {
    const Json j = body_json(req);
    const Json* list = &j;
    if (j.is_object()) {
        if (!j.contains("run_ids")) fail(ApiErrorCode::BadRequest, "expected {\"run_ids\": [...]}");
        list = &j.at("run_ids");
    }
    if (!list->is_array() || list->empty()) fail(ApiErrorCode::BadRequest, "run_ids must be a non-empty array");
    std::vector<std::string> ids;
    for (const auto& id : *list) {
        if (!id.is_string()) fail(ApiErrorCode::BadRequest, "run_ids must contain strings");
        ids.push_back(id.get<std::string>());
    }
    return ids;
}

}  // namespace

ApiService::ApiService(const Catalog& catalog, RunStore& store, ApiConfig config)
    : catalog_(catalog), store_(store), config_(std::move(config)) {}

ApiResponse ApiService::handle(const ApiRequest& request) const {
    ApiResponse response;
    try {
        response = route(request);
    } catch (const ApiFailure& f) {
        response = error_response(f);
    } catch (const ValidationError& e) {
        response = error_response({ApiErrorCode::ValidationFailed, e.what(), e.violations()});
    } catch (const UnresolvableOptionError& e) {
        response = error_response({ApiErrorCode::UnresolvableOption, e.what(), {{e.field(), e.what()}}});
    } catch (const ParseError& e) {
        response = error_response({ApiErrorCode::BadRequest, e.what(), {}});
    } catch (const StorageError& e) {
        response = error_response({ApiErrorCode::StorageError, e.what(), {}});
    } catch (const std::exception& e) {
        response = error_response({ApiErrorCode::InternalError, e.what(), {}});
    }
    if (!config_.allowed_origin.empty()) {
        response.headers["Access-Control-Allow-Origin"] = config_.allowed_origin;
        response.headers["Vary"] = "Origin";
    }
    return response;
}

ApiResponse ApiService::route(const ApiRequest& req) const {
    const auto seg = segments(req.path);
    const std::string& m = req.method;
    if (seg.empty() || seg[0] != "v1") fail(ApiErrorCode::NotFound, "no route for " + req.path);

    if (m == "OPTIONS") {
        ApiResponse r{204, "text/plain", "", {}};
        r.headers["Access-Control-Allow-Methods"] = "GET, POST, PUT, DELETE, OPTIONS";
        r.headers["Access-Control-Allow-Headers"] = "Content-Type";
        r.headers["Access-Control-Max-Age"] = "600";
        return r;
    }

    auto method_not_allowed = [&]() -> ApiResponse {
        fail(ApiErrorCode::MethodNotAllowed, m + " not allowed on " + req.path);
    };

    // /v1/meta
    if (seg.size() == 2 && seg[1] == "meta") {
        if (m != "GET") return method_not_allowed();
        return json_response(200, meta(catalog_));
    }

    // /v1/technologies?operation=
    if (seg.size() == 2 && seg[1] == "technologies") {
        if (m != "GET") return method_not_allowed();
        auto op_text = query(req, "operation");
        if (!op_text) fail(ApiErrorCode::BadRequest, "query parameter 'operation' is required");
        auto op = try_parse<OperationKind>(*op_text);
        if (!op) {
            fail(ApiErrorCode::ValidationFailed, "unknown operation '" + *op_text + "'",
                 {{"operation", "unknown operation '" + *op_text + "'"}});
        }
        return json_response(200, technologies(catalog_, *op));
    }

    if (seg.size() >= 2 && seg[1] == "scenarios") {
        if (seg.size() == 2) {
            if (m != "POST") return method_not_allowed();
            FarmScenario s = scenario_body(req);
            s.id = store_.create_scenario(s);
            return json_response(201, to_json(s));
        }
        const std::string& id = seg[2];
        auto load = [&] {
            try {
                return store_.load_scenario(id);
            } catch (const NotFoundError& e) {
                fail(ApiErrorCode::ScenarioNotFound, e.what());
            }
        };
        if (seg.size() == 3) {
            if (m == "GET") return json_response(200, to_json(load()));
            if (m == "PUT") {
                FarmScenario s = scenario_body(req);
                if (!s.id.empty() && s.id != id) {
                    fail(ApiErrorCode::ValidationFailed, "body id differs from the path",
                         {{"id", "must match the scenario id in the path"}});
                }
                try {
                    store_.replace_scenario(id, s);
                } catch (const NotFoundError& e) {
                    fail(ApiErrorCode::ScenarioNotFound, e.what());
                }
                s.id = id;
                return json_response(200, to_json(s));
            }
            if (m == "DELETE") {
                try {
                    store_.delete_scenario(id);
                } catch (const NotFoundError& e) {
                    fail(ApiErrorCode::ScenarioNotFound, e.what());
                }
                return {204, "text/plain", "", {}};
            }
            return method_not_allowed();
        }
        if (seg.size() == 4 && seg[3] == "evaluate") {
            if (m != "POST") return method_not_allowed();
            const FarmScenario s = load();
            const bool save = flag(req, "save");
            const auto report = query(req, "report");
            const auto format = report ? std::optional(report_format(req, "report")) : std::nullopt;
            const EvaluationResult result = evaluate(s, catalog_);
            if (save) {
                const auto run_id = store_.save_run(s, result);
                const auto run = store_.load_run(run_id);
                if (format) {
                    auto r = report_response(result, *format, std::nullopt);
                    r.status = 201;
                    r.headers["Location"] = "/v1/runs/" + run_id;
                    return r;
                }
                auto r = json_response(
                    201, Json{{"run_id", run_id}, {"created_at", run.created_at}, {"result", to_json(result)}});
                r.headers["Location"] = "/v1/runs/" + run_id;
                return r;
            }
            if (format) return report_response(result, *format, std::nullopt);
            return json_response(200, to_json(result));
        }
        fail(ApiErrorCode::NotFound, "no route for " + req.path);
    }

    if (seg.size() >= 2 && seg[1] == "runs") {
        if (seg.size() == 2) {
            if (m != "GET") return method_not_allowed();
            Json runs = Json::array();
            for (const auto& s : store_.list_runs()) runs.push_back(summary_json(s));
            return json_response(200, Json{{"runs", std::move(runs)}});
        }
        if (seg.size() == 3 && seg[2] == "compare") {
            if (m != "POST") return method_not_allowed();
            const auto ids = run_ids_body(req);
            try {
                return json_response(200, comparison_json(store_.compare_runs(ids)));
            } catch (const NotFoundError& e) {
                fail(ApiErrorCode::RunNotFound, e.what());
            }
        }
        const std::string& id = seg[2];
        auto load = [&] {
            try {
                return store_.load_run(id);
            } catch (const NotFoundError& e) {
                fail(ApiErrorCode::RunNotFound, e.what());
            }
        };
        if (seg.size() == 3) {
            if (m == "GET") return {200, "application/json", serialize_run(load()), {}};
            if (m == "DELETE") {
                try {
                    store_.delete_run(id);
                } catch (const NotFoundError& e) {
                    fail(ApiErrorCode::RunNotFound, e.what());
                }
                return {204, "text/plain", "", {}};
            }
            return method_not_allowed();
        }
        if (seg.size() == 4 && seg[3] == "report") {
            if (m != "GET") return method_not_allowed();
            const auto format = report_format(req, "format");
            const SavedRun run = load();
            return report_response(run.result, format, run.created_at);
        }
    }

    fail(ApiErrorCode::NotFound, "no route for " + req.path);
}

void ApiService::mount(httplib::Server& server) const {
    auto handler = [this](const httplib::Request& in, httplib::Response& out) {
        ApiRequest req{in.method, in.path, {}, in.body};
        for (const auto& [key, value] : in.params) req.query.emplace(key, value);
        const ApiResponse res = handle(req);
        out.status = res.status;
        for (const auto& [key, value] : res.headers) out.set_header(key, value);
        if (!res.body.empty()) out.set_content(res.body, res.content_type);
    };
    server.Get(".*", handler);
    server.Post(".*", handler);
    server.Put(".*", handler);
    server.Delete(".*", handler);
    server.Options(".*", handler);
    server.Patch(".*", handler);
}

}  // namespace pacba
