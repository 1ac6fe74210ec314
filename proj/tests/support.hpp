#pragma once

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>

#include "pacba/catalog.hpp"
#include "pacba/json_codec.hpp"

namespace testing_support {

inline const std::filesystem::path kSeedCatalog = PACBA_SEED_CATALOG;
inline const std::filesystem::path kFixtures = PACBA_FIXTURES_DIR;

inline std::string read_file(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

inline void write_file(const std::filesystem::path& p, const std::string& text) {
    std::ofstream out(p, std::ios::binary | std::ios::trunc);
    out << text;
}

inline const pacba::Catalog& seed_catalog() {
    static const pacba::Catalog catalog = pacba::load_catalog_file(kSeedCatalog);
    return catalog;
}

inline pacba::FarmScenario golden_scenario() {
    return pacba::scenario_from_json(pacba::parse_json(read_file(kFixtures / "golden_scenario.json")));
}

/// Fresh directory removed on destruction.
class TempDir {
public:
    TempDir() {
        static std::mt19937_64 rng{std::random_device{}()};
        path_ = std::filesystem::temp_directory_path() / ("pacba-test-" + std::to_string(rng()));
        std::filesystem::create_directories(path_);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;
    const std::filesystem::path& path() const { return path_; }

private:
    std::filesystem::path path_;
};

/// Random valid scenario over the seed catalog. Percentages are drawn in
/// tenths of a percent, the resolution of the UI.
inline pacba::FarmScenario random_scenario(std::mt19937_64& rng, const pacba::Catalog& catalog) {
    using namespace pacba;
    auto uniform = [&](double a, double b) { return std::uniform_real_distribution<double>(a, b)(rng); };
    auto pick = [&](std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng); };
    auto coin = [&] { return pick(2) == 0; };

    FarmScenario s;
    s.region = all_values<Region>()[pick(4)];
    s.discount_rate = std::round(uniform(0.0, 0.12) * 10000) / 10000;
    s.horizon_years = static_cast<int>(1 + pick(30));

    std::vector<std::string> crops(kBuiltinCrops.begin(), kBuiltinCrops.end());
    std::shuffle(crops.begin(), crops.end(), rng);
    crops.resize(1 + pick(3));
    for (const auto& name : crops) {
        CropEntry c;
        c.crop = name;
        c.area = coin() ? static_cast<double>(1 + pick(400)) : uniform(0.5, 800.0);
        if (coin()) c.yield = uniform(1.0, 80.0);
        if (coin()) c.price = uniform(10.0, 500.0);
        s.crops.push_back(c);
    }

    const std::size_t n_options = 1 + pick(4);
    while (s.options.size() < n_options) {
        const auto& entry = catalog.compatibility[pick(catalog.compatibility.size())];
        if (entry.support_sets.empty()) continue;
        OptionSelection o;
        o.main = entry.main;
        o.operation = entry.operation;
        o.supports = entry.support_sets[pick(entry.support_sets.size())];
        if (coin()) {
            std::vector<std::string> subset;
            for (const auto& c : s.crops) {
                if (coin()) subset.push_back(c.crop);
            }
            o.crops = subset;
        }
        if (pick(3) == 0) {
            BenefitProfile b;
            b.input_scope = scope_for(o.main);
            b.input_reduction = percent_to_fraction(static_cast<double>(pick(301)) / 10.0);
            b.yield_increase = percent_to_fraction(static_cast<double>(pick(101)) / 10.0);
            b.fuel_reduction = percent_to_fraction(static_cast<double>(pick(101)) / 10.0);
            b.labour_reduction = percent_to_fraction(static_cast<double>(pick(601)) / 10.0);
            o.benefits = b;
        }
        if (pick(4) == 0) o.main_investment = static_cast<double>(pick(40000));
        if (pick(4) == 0 && !o.supports.empty()) o.support_investments[*o.supports.begin()] = uniform(0, 20000);
        if (pick(4) == 0) o.recurring_cost = static_cast<double>(pick(500));
        s.options.push_back(o);
    }
    if (pick(3) == 0) {
        CostOverride d;
        d.crop = s.crops.front().crop;
        d.operation = s.options.front().operation;
        d.input_price = uniform(0.0, 5.0);
        s.cost_overrides.push_back(d);
    }
    return s;
}

}  // namespace testing_support
