#include <doctest.h>

#include <random>
#include <thread>

#include "pacba/evaluation.hpp"
#include "pacba/run_store.hpp"
#include "support.hpp"

using namespace pacba;
using testing_support::seed_catalog;
using testing_support::TempDir;

namespace {

RunStore::Clock fixed_clock() {
    auto n = std::make_shared<int>(0);
    return [n] {
        char buf[32];
        std::snprintf(buf, sizeof buf, "2026-01-01T00:00:%02d.000Z", (*n)++ % 60);
        return std::string(buf);
    };
}

}  // namespace

TEST_SUITE("store") {

TEST_CASE("uuid and timestamp formats") {
    const auto id = new_uuid();
    CHECK(id.size() == 36);
    CHECK(id[14] == '4');
    CHECK(std::string("89ab").find(id[19]) != std::string::npos);
    CHECK(new_uuid() != id);
    const auto ts = utc_timestamp_now();
    CHECK(ts.size() == 24);
    CHECK(ts.back() == 'Z');
    CHECK(ts[10] == 'T');
}

TEST_CASE("saved runs load back equal and re-evaluate to the stored result") {
    TempDir dir;
    RunStore store(dir.path());
    std::mt19937_64 rng(31);
    for (int i = 0; i < 60; ++i) {
        const auto s = testing_support::random_scenario(rng, seed_catalog());
        const auto r = evaluate(s, seed_catalog());
        const auto id = store.save_run(s, r);
        const auto run = store.load_run(id);
        CHECK(run.run_id == id);
        CHECK(run.scenario == s);
        CHECK(run.result == r);
        CHECK(run.catalog_version == seed_catalog().version);
        CHECK(evaluate(run.scenario, seed_catalog()) == run.result);
    }
    CHECK(store.list_runs().size() == 60);
}

TEST_CASE("listing uses the index and recovers from a stale one") {
    TempDir dir;
    RunStore store(dir.path(), fixed_clock());
    const auto s = testing_support::golden_scenario();
    const auto r = evaluate(s, seed_catalog());
    const auto a = store.save_run(s, r);
    const auto b = store.save_run(s, r);
    auto runs = store.list_runs();
    REQUIRE(runs.size() == 2);
    CHECK(runs[0].run_id == a);
    CHECK(runs[1].run_id == b);
    CHECK(runs[0].npv == r.portfolio.npv);
    CHECK(runs[0].option_count == s.options.size());
    CHECK(runs[0].total_area == 200.0);

    // A current index is trusted; run files are not re-read.
    const auto run_a = testing_support::read_file(dir.path() / "runs" / (a + ".json"));
    testing_support::write_file(dir.path() / "runs" / (a + ".json"), "{");
    CHECK(store.list_runs() == runs);
    testing_support::write_file(dir.path() / "runs" / (a + ".json"), run_a);

    // A run file dropped in from outside and a damaged index.
    auto copied = store.load_run(a);
    copied.run_id = "copied";
    testing_support::write_file(dir.path() / "runs" / "copied.json", serialize_run(copied));
    CHECK(store.list_runs().size() == 3);
    testing_support::write_file(dir.path() / "index.json", "garbage");
    CHECK(store.list_runs().size() == 3);
    CHECK(store.rebuild_index().size() == 3);
    CHECK(testing_support::read_file(dir.path() / "index.json").find(a) != std::string::npos);
}

TEST_CASE("unknown and unsafe ids are not found") {
    TempDir dir;
    RunStore store(dir.path());
    CHECK_THROWS_AS(store.load_run("nope"), NotFoundError);
    CHECK_THROWS_AS(store.load_run("../index"), NotFoundError);
    CHECK_THROWS_AS(store.load_scenario("x/y"), NotFoundError);
    CHECK_THROWS_AS(store.delete_run("nope"), NotFoundError);
    CHECK_THROWS_AS(store.replace_scenario("nope", testing_support::golden_scenario()), NotFoundError);
}

TEST_CASE("delete removes the run from listings") {
    TempDir dir;
    RunStore store(dir.path());
    const auto s = testing_support::golden_scenario();
    const auto id = store.save_run(s, evaluate(s, seed_catalog()));
    store.delete_run(id);
    CHECK(store.list_runs().empty());
    CHECK_THROWS_AS(store.load_run(id), NotFoundError);
}

TEST_CASE("scenario CRUD and idempotent replace") {
    TempDir dir;
    RunStore store(dir.path());
    auto s = testing_support::golden_scenario();
    const auto id = store.create_scenario(s);
    auto loaded = store.load_scenario(id);
    CHECK(loaded.id == id);
    loaded.id.clear();
    CHECK(loaded == s);

    s.discount_rate = 0.07;
    store.replace_scenario(id, s);
    const auto path = dir.path() / "scenarios" / (id + ".json");
    const auto before = std::filesystem::last_write_time(path);
    const auto text = testing_support::read_file(path);
    store.replace_scenario(id, s);
    CHECK(testing_support::read_file(path) == text);
    CHECK(std::filesystem::last_write_time(path) == before);
    CHECK(store.load_scenario(id).discount_rate == 0.07);

    store.delete_scenario(id);
    CHECK_THROWS_AS(store.load_scenario(id), NotFoundError);
}

TEST_CASE("comparison keeps request order and warns on catalog versions") {
    TempDir dir;
    RunStore store(dir.path());
    auto s = testing_support::golden_scenario();
    auto r1 = evaluate(s, seed_catalog());
    s.discount_rate = 0.08;
    auto r2 = evaluate(s, seed_catalog());
    r2.catalog_version = "seed-0";
    const auto a = store.save_run(testing_support::golden_scenario(), r1);
    const auto b = store.save_run(s, r2);
    const std::vector<std::string> ids{b, a};
    const auto c = store.compare_runs(ids);
    REQUIRE(c.rows.size() == 2);
    CHECK(c.rows[0].run_id == b);
    CHECK(c.rows[0].discount_rate == 0.08);
    CHECK(c.rows[1].npv == r1.portfolio.npv);
    CHECK(c.rows[1].total_investment == r1.portfolio.scaled_investment);
    REQUIRE(c.warnings.size() == 1);
    CHECK(c.warnings[0].find("seed-0") != std::string::npos);

    const std::vector<std::string> same{a, a};
    CHECK(store.compare_runs(same).warnings.empty());
    const std::vector<std::string> missing{a, "missing"};
    CHECK_THROWS_AS(store.compare_runs(missing), NotFoundError);
}

TEST_CASE("concurrent saves are all recorded") {
    TempDir dir;
    RunStore store(dir.path());
    const auto s = testing_support::golden_scenario();
    const auto r = evaluate(s, seed_catalog());
    std::vector<std::thread> threads;
    for (int t = 0; t < 4; ++t) {
        threads.emplace_back([&] {
            for (int i = 0; i < 5; ++i) store.save_run(s, r);
        });
    }
    for (auto& t : threads) t.join();
    CHECK(store.list_runs().size() == 20);
    std::size_t leftovers = 0;
    for (const auto& e : std::filesystem::directory_iterator(dir.path() / "runs")) {
        leftovers += e.path().filename().string().starts_with(".tmp") ? 1 : 0;
    }
    CHECK(leftovers == 0);
}

}
