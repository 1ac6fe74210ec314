#pragma once

#include <map>
#include <string>
#include <string_view>

#include "pacba/catalog.hpp"
#include "pacba/run_store.hpp"

namespace httplib {
class Server;
}

namespace pacba {

struct ApiRequest {
    std::string method;
    std::string path;
    std::map<std::string, std::string> query;
    std::string body;
};

struct ApiResponse {
    int status = 200;
    std::string content_type = "application/json";
    std::string body;
    std::map<std::string, std::string> headers;
};

/// Closed set of error codes carried by every error body.
enum class ApiErrorCode {
    ValidationFailed,
    BadRequest,
    ScenarioNotFound,
    RunNotFound,
    NotFound,
    UnresolvableOption,
    MethodNotAllowed,
    StorageError,
    InternalError,
};

template <>
struct EnumText<ApiErrorCode> {
    static constexpr std::string_view type_name = "error code";
    static constexpr std::array<std::pair<ApiErrorCode, std::string_view>, 9> entries{{
        {ApiErrorCode::ValidationFailed, "validation-failed"},
        {ApiErrorCode::BadRequest, "bad-request"},
        {ApiErrorCode::ScenarioNotFound, "scenario-not-found"},
        {ApiErrorCode::RunNotFound, "run-not-found"},
        {ApiErrorCode::NotFound, "not-found"},
        {ApiErrorCode::UnresolvableOption, "unresolvable-option"},
        {ApiErrorCode::MethodNotAllowed, "method-not-allowed"},
        {ApiErrorCode::StorageError, "storage-error"},
        {ApiErrorCode::InternalError, "internal-error"},
    }};
};

int http_status(ApiErrorCode code);

struct ApiConfig {
    std::string allowed_origin;  // CORS origin of the UI; empty disables CORS headers
};

/// The /v1 HTTP interface. `handle` is transport-independent; `mount`
/// registers it on an httplib server.
class ApiService {
public:
    ApiService(const Catalog& catalog, RunStore& store, ApiConfig config = {});

    ApiResponse handle(const ApiRequest& request) const;
    void mount(httplib::Server& server) const;

private:
    ApiResponse route(const ApiRequest& request) const;

    const Catalog& catalog_;
    RunStore& store_;
    ApiConfig config_;
};

}  // namespace pacba
