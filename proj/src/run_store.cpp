#include "pacba/run_store.hpp"

#include <fcntl.h>
#include <unistd.h>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <random>
#include <set>
#include <sstream>
#include <tuple>

#include "pacba/json_codec.hpp"

namespace fs = std::filesystem;

namespace pacba {

std::string new_uuid() {
    thread_local std::mt19937_64 rng{[] {
        std::random_device rd;
        std::seed_seq seq{rd(), rd(), rd(), rd()};
        return std::mt19937_64(seq);
    }()};
    std::uniform_int_distribution<unsigned> byte(0, 255);
    unsigned char b[16];
    for (auto& x : b) x = static_cast<unsigned char>(byte(rng));
    b[6] = static_cast<unsigned char>((b[6] & 0x0F) | 0x40);  // version 4
    b[8] = static_cast<unsigned char>((b[8] & 0x3F) | 0x80);  // RFC 4122 variant
    char out[37];
    std::snprintf(out, sizeof out, "%02x%02x%02x%02x-%02x%02x-%02x%02x-%02x%02x-%02x%02x%02x%02x%02x%02x", b[0], b[1],
                  b[2], b[3], b[4], b[5], b[6], b[7], b[8], b[9], b[10], b[11], b[12], b[13], b[14], b[15]);
    return out;
}

std::string utc_timestamp_now() {
    const auto now = std::chrono::system_clock::now();
    const auto secs = std::chrono::system_clock::to_time_t(now);
    const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(now.time_since_epoch()).count() % 1000;
    std::tm tm{};
    gmtime_r(&secs, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%S", &tm);
    char out[40];
    std::snprintf(out, sizeof out, "%s.%03dZ", buf, static_cast<int>(ms));
    return out;
}

namespace {

bool safe_id(const std::string& id) {
    if (id.empty() || id.size() > 64) return false;
    return std::all_of(id.begin(), id.end(), [](char c) {
        return (c >= '0' && c <= '9') || (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '-' || c == '_';
    });
}

std::string read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw StorageError("cannot read '" + path.string() + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_atomic(const fs::path& target, const std::string& content) {
    const fs::path tmp = target.parent_path() / (".tmp-" + new_uuid());
    const int fd = ::open(tmp.c_str(), O_WRONLY | O_CREAT | O_TRUNC, 0644);
    if (fd < 0) throw StorageError("cannot create '" + tmp.string() + "'");
    std::size_t written = 0;
    while (written < content.size()) {
        const auto n = ::write(fd, content.data() + written, content.size() - written);
        if (n < 0) {
            ::close(fd);
            ::unlink(tmp.c_str());
            throw StorageError("write failed for '" + tmp.string() + "'");
        }
        written += static_cast<std::size_t>(n);
    }
    if (::fsync(fd) != 0 || ::close(fd) != 0) {
        ::unlink(tmp.c_str());
        throw StorageError("cannot flush '" + tmp.string() + "'");
    }
    std::error_code ec;
    fs::rename(tmp, target, ec);
    if (ec) {
        fs::remove(tmp, ec);
        throw StorageError("cannot move '" + tmp.string() + "' into place");
    }
}

RunSummary summarize_run(const SavedRun& run) {
    RunSummary s;
    s.run_id = run.run_id;
    s.created_at = run.created_at;
    s.catalog_version = run.catalog_version;
    s.region = run.scenario.region;
    s.crop_count = run.scenario.crops.size();
    s.option_count = run.scenario.options.size();
    for (const auto& c : run.scenario.crops) s.total_area += c.area;
    s.npv = run.result.portfolio.npv;
    return s;
}

Json to_json(const RunSummary& s) {
    return Json{{"run_id", s.run_id},
                {"created_at", s.created_at},
                {"catalog_version", s.catalog_version},
                {"region", std::string(to_string(s.region))},
                {"crop_count", s.crop_count},
                {"option_count", s.option_count},
                {"total_area", s.total_area},
                {"npv", s.npv}};
}

RunSummary summary_from_json(const Json& j) {
    RunSummary s;
    s.run_id = j.at("run_id").get<std::string>();
    s.created_at = j.at("created_at").get<std::string>();
    s.catalog_version = j.at("catalog_version").get<std::string>();
    s.region = parse_enum<Region>(j.at("region").get<std::string>());
    s.crop_count = j.at("crop_count").get<std::size_t>();
    s.option_count = j.at("option_count").get<std::size_t>();
    s.total_area = j.at("total_area").get<double>();
    s.npv = j.at("npv").get<double>();
    return s;
}

void sort_summaries(std::vector<RunSummary>& v) {
    std::sort(v.begin(), v.end(), [](const RunSummary& a, const RunSummary& b) {
        return std::tie(a.created_at, a.run_id) < std::tie(b.created_at, b.run_id);
    });
}

}  // namespace

std::string serialize_run(const SavedRun& run) {
    return dump_json(Json{{"run_id", run.run_id},
                          {"created_at", run.created_at},
                          {"catalog_version", run.catalog_version},
                          {"scenario", to_json(run.scenario)},
                          {"result", to_json(run.result)}});
}

SavedRun parse_run(std::string_view document) {
    const Json j = parse_json(document);
    if (!j.is_object()) throw ParseError("run document: expected an object");
    SavedRun run;
    try {
        run.run_id = j.at("run_id").get<std::string>();
        run.created_at = j.at("created_at").get<std::string>();
        run.catalog_version = j.at("catalog_version").get<std::string>();
    } catch (const Json::exception& e) {
        throw ParseError(std::string("run document: ") + e.what());
    }
    run.scenario = scenario_from_json(j.at("scenario"));
    run.result = result_from_json(j.at("result"));
    return run;
}

Comparison compare(std::span<const SavedRun> runs) {
    Comparison out;
    std::set<std::string> versions;
    for (const auto& run : runs) {
        ComparisonRow row;
        row.run_id = run.run_id;
        row.catalog_version = run.catalog_version;
        row.discount_rate = run.scenario.discount_rate;
        const auto& p = run.result.portfolio;
        row.npv = p.npv;
        row.irr = p.irr;
        row.bcr = p.bcr;
        row.total_investment = p.scaled_investment;
        for (const auto& s : p.input_saved) {
            row.input_saved_value += s.value;
            row.input_saved_by_unit[s.unit] += s.quantity;
        }
        versions.insert(run.catalog_version);
        out.rows.push_back(std::move(row));
    }
    if (versions.size() > 1) {
        std::string msg = "runs were evaluated under different catalog versions:";
        for (const auto& run : runs) msg += " " + run.run_id + "=" + run.catalog_version;
        out.warnings.push_back(std::move(msg));
    }
    return out;
}

RunStore::RunStore(fs::path root, Clock clock) : root_(std::move(root)), clock_(std::move(clock)) {
    std::error_code ec;
    fs::create_directories(root_ / "runs", ec);
    if (!ec) fs::create_directories(root_ / "scenarios", ec);
    if (ec) throw StorageError("cannot create store at '" + root_.string() + "': " + ec.message());
}

fs::path RunStore::run_path(const std::string& id) const { return root_ / "runs" / (id + ".json"); }
fs::path RunStore::scenario_path(const std::string& id) const { return root_ / "scenarios" / (id + ".json"); }

std::string RunStore::save_run(const FarmScenario& scenario, const EvaluationResult& result) {
    SavedRun run;
    run.run_id = new_uuid();
    run.created_at = clock_();
    run.scenario = scenario;
    run.catalog_version = result.catalog_version;
    run.result = result;

    std::lock_guard lock(write_mutex_);
    auto summaries = list_runs();
    summaries.push_back(summarize_run(run));
    sort_summaries(summaries);
    write_atomic(run_path(run.run_id), serialize_run(run));
    write_index(summaries);
    return run.run_id;
}

SavedRun RunStore::load_run(const std::string& run_id) const {
    if (!safe_id(run_id) || !fs::exists(run_path(run_id))) throw NotFoundError("run '" + run_id + "' not found");
    return parse_run(read_file(run_path(run_id)));
}

std::vector<RunSummary> RunStore::scan_runs() const {
    std::vector<RunSummary> out;
    std::error_code ec;
    for (const auto& entry : fs::directory_iterator(root_ / "runs", ec)) {
        if (entry.path().extension() != ".json" || entry.path().filename().string().starts_with(".")) continue;
        out.push_back(summarize_run(parse_run(read_file(entry.path()))));
    }
    if (ec) throw StorageError("cannot list runs: " + ec.message());
    sort_summaries(out);
    return out;
}

void RunStore::write_index(const std::vector<RunSummary>& summaries) {
    Json arr = Json::array();
    for (const auto& s : summaries) arr.push_back(to_json(s));
    write_atomic(root_ / "index.json", dump_json(Json{{"runs", std::move(arr)}}));
}

std::vector<RunSummary> RunStore::list_runs() const {
    std::set<std::string> on_disk;
    std::error_code ec;
    for (const auto& entry : fs::directory_iterator(root_ / "runs", ec)) {
        const auto name = entry.path().filename().string();
        if (entry.path().extension() == ".json" && !name.starts_with(".")) on_disk.insert(entry.path().stem().string());
    }
    if (ec) throw StorageError("cannot list runs: " + ec.message());

    const fs::path index = root_ / "index.json";
    if (fs::exists(index)) {
        try {
            std::vector<RunSummary> out;
            const Json doc = parse_json(read_file(index));
            for (const auto& j : doc.at("runs")) out.push_back(summary_from_json(j));
            std::set<std::string> indexed;
            for (const auto& s : out) indexed.insert(s.run_id);
            if (indexed == on_disk) {
                sort_summaries(out);
                return out;
            }
        } catch (const std::exception&) {
            // Stale or damaged index; fall through to a scan.
        }
    }
    return scan_runs();
}

std::vector<RunSummary> RunStore::rebuild_index() {
    std::lock_guard lock(write_mutex_);
    auto summaries = scan_runs();
    write_index(summaries);
    return summaries;
}

Comparison RunStore::compare_runs(std::span<const std::string> run_ids) const {
    std::vector<SavedRun> runs;
    runs.reserve(run_ids.size());
    for (const auto& id : run_ids) runs.push_back(load_run(id));
    return compare(runs);
}

void RunStore::delete_run(const std::string& run_id) {
    std::lock_guard lock(write_mutex_);
    if (!safe_id(run_id) || !fs::exists(run_path(run_id))) throw NotFoundError("run '" + run_id + "' not found");
    auto summaries = list_runs();
    std::erase_if(summaries, [&](const RunSummary& s) { return s.run_id == run_id; });
    std::error_code ec;
    fs::remove(run_path(run_id), ec);
    if (ec) throw StorageError("cannot delete run '" + run_id + "': " + ec.message());
    write_index(summaries);
}

std::string RunStore::create_scenario(FarmScenario scenario) {
    scenario.id = new_uuid();
    std::lock_guard lock(write_mutex_);
    write_atomic(scenario_path(scenario.id), dump_json(to_json(scenario)));
    return scenario.id;
}

FarmScenario RunStore::load_scenario(const std::string& id) const {
    if (!safe_id(id) || !fs::exists(scenario_path(id))) throw NotFoundError("scenario '" + id + "' not found");
    return scenario_from_json(parse_json(read_file(scenario_path(id))));
}

void RunStore::replace_scenario(const std::string& id, FarmScenario scenario) {
    scenario.id = id;
    std::lock_guard lock(write_mutex_);
    if (!safe_id(id) || !fs::exists(scenario_path(id))) throw NotFoundError("scenario '" + id + "' not found");
    const auto content = dump_json(to_json(scenario));
    if (read_file(scenario_path(id)) == content) return;
    write_atomic(scenario_path(id), content);
}

void RunStore::delete_scenario(const std::string& id) {
    std::lock_guard lock(write_mutex_);
    if (!safe_id(id) || !fs::exists(scenario_path(id))) throw NotFoundError("scenario '" + id + "' not found");
    std::error_code ec;
    fs::remove(scenario_path(id), ec);
    if (ec) throw StorageError("cannot delete scenario '" + id + "': " + ec.message());
}

}  // namespace pacba
