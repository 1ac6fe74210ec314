#pragma once

#include <filesystem>
#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pacba/domain.hpp"

namespace pacba {

struct SavedRun {
    std::string run_id;
    std::string created_at;  // ISO 8601, UTC
    FarmScenario scenario;
    std::string catalog_version;
    EvaluationResult result;

    bool operator==(const SavedRun&) const = default;
};

struct RunSummary {
    std::string run_id;
    std::string created_at;
    std::string catalog_version;
    Region region = Region::CentralEurope;
    std::size_t crop_count = 0;
    std::size_t option_count = 0;
    double total_area = 0.0;
    double npv = 0.0;

    bool operator==(const RunSummary&) const = default;
};

struct ComparisonRow {
    std::string run_id;
    std::string catalog_version;
    double discount_rate = 0.0;
    double npv = 0.0;
    std::optional<double> irr;
    std::optional<double> bcr;
    double total_investment = 0.0;
    double input_saved_value = 0.0;                 // EUR/yr
    std::map<std::string, double> input_saved_by_unit;  // unit -> quantity/yr
};

struct Comparison {
    std::vector<ComparisonRow> rows;  // request order
    std::vector<std::string> warnings;
};

/// Runs compared under different catalog versions are allowed; the
/// comparison carries a warning instead.
Comparison compare(std::span<const SavedRun> runs);

std::string new_uuid();
std::string utc_timestamp_now();

/// Directory-backed store of scenarios and evaluation runs.
///
/// Layout under the root directory:
///   runs/<uuid>.json        one document per saved run
///   scenarios/<uuid>.json   one document per stored scenario
///   index.json              run summaries, rebuilt from runs/ when stale
///
/// Every document is written to a temporary file and renamed into place, so
/// readers never observe a partial write. Writes are serialized by an
/// internal mutex (single writer); reads need no lock.
class RunStore {
public:
    using Clock = std::function<std::string()>;

    explicit RunStore(std::filesystem::path root, Clock clock = utc_timestamp_now);

    const std::filesystem::path& root() const noexcept { return root_; }

    std::string save_run(const FarmScenario& scenario, const EvaluationResult& result);
    SavedRun load_run(const std::string& run_id) const;
    std::vector<RunSummary> list_runs() const;
    Comparison compare_runs(std::span<const std::string> run_ids) const;
    void delete_run(const std::string& run_id);
    std::vector<RunSummary> rebuild_index();

    std::string create_scenario(FarmScenario scenario);
    FarmScenario load_scenario(const std::string& id) const;
    void replace_scenario(const std::string& id, FarmScenario scenario);
    void delete_scenario(const std::string& id);

private:
    std::filesystem::path run_path(const std::string& id) const;
    std::filesystem::path scenario_path(const std::string& id) const;
    std::vector<RunSummary> scan_runs() const;
    void write_index(const std::vector<RunSummary>& summaries);

    std::filesystem::path root_;
    Clock clock_;
    std::mutex write_mutex_;
};

std::string serialize_run(const SavedRun& run);
SavedRun parse_run(std::string_view document);

}  // namespace pacba
