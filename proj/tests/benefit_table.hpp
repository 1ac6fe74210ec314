#pragma once

// Default benefit combinations, transcribed row by row from the published
// table independently of the seed catalog. Percent units; a dash is 0.

#include <array>
#include <string_view>

namespace benefit_table {

struct Row {
    std::string_view main;
    std::string_view supports;   // '+'-joined, sorted as in the canonical text
    std::string_view operation;  // empty for rows that cover every compatible pass
    double input, yield, fuel, labour;
};

inline constexpr std::array<Row, 36> kRows{{
    {"auto-steer", "normal-gps", "", 3, 0, 3, 1},
    {"auto-steer", "rtk-gps", "", 3, 0, 3, 1},
    {"auto-steer", "rtk-gps+ctf", "", 3, 1, 5, 1},
    {"section-control", "normal-gps", "", 2, 0, 0, 0},
    {"section-control", "rtk-gps", "", 4, 0, 0, 0},
    {"vr-seeder", "satellite", "seeding", 3, 0, 0, 0},
    {"vr-seeder", "survey-uav", "seeding", 3, 0, 0, 0},
    {"vr-seeder", "yield-map", "seeding", 3, 0, 0, 0},
    {"vr-seeder", "soil-ec", "seeding", 3, 0, 0, 0},
    {"vr-fertilizer", "satellite", "fertilization", 0, 3, 0, 0},
    {"vr-fertilizer", "survey-uav", "fertilization", 0, 3, 0, 0},
    {"vr-fertilizer", "yield-map", "fertilization", 0, 3, 0, 0},
    {"vr-fertilizer", "soil-ec", "fertilization", 0, 3, 0, 0},
    {"vr-fertilizer", "n-sensor", "fertilization", 1, 0, 0, 0},
    {"vr-fertilizer", "n-sensor+yield-map", "fertilization", 1, 3, 0, 0},
    {"vr-fertilizer", "n-sensor+yield-map+soil-ec", "fertilization", 3, 3, 0, 0},
    {"vr-sprayer", "satellite", "spraying-fungicide", 15, 0, 0, 0},
    {"vr-sprayer", "n-sensor", "spraying-fungicide", 15, 0, 0, 0},
    {"vr-sprayer", "survey-uav", "spraying-insecticide", 20, 0, 0, 0},
    {"vr-sprayer", "satellite+yield-map+soil-ec", "spraying-insecticide", 15, 0, 0, 0},
    {"vr-sprayer", "satellite", "spraying-herbicide", 15, 0, 0, 0},
    {"vr-sprayer", "survey-uav", "spraying-herbicide", 15, 0, 0, 0},
    {"vr-sprayer", "survey-uav+yield-map", "spraying-herbicide", 20, 0, 0, 0},
    {"vr-sprayer", "satellite", "spraying-growth-regulator", 15, 0, 0, 0},
    {"vr-sprayer", "survey-uav", "spraying-growth-regulator", 20, 0, 0, 0},
    {"vr-lime", "satellite+yield-map+soil-ec", "liming", 2, 1, 0, 0},
    {"vr-lime", "survey-uav+yield-map+soil-ec", "liming", 2, 1, 0, 0},
    {"vr-lime", "n-sensor+yield-map+soil-ec", "liming", 2, 1, 0, 0},
    {"vr-manure", "satellite", "manure-application", 1, 0, 0, 0},
    {"vr-manure", "satellite+yield-map", "manure-application", 2, 0, 0, 0},
    {"vr-manure", "satellite+yield-map+soil-sampling", "manure-application", 3, 0, 0, 0},
    {"vr-manure", "survey-uav", "manure-application", 2, 0, 0, 0},
    {"vr-manure", "survey-uav+yield-map", "manure-application", 3, 0, 0, 0},
    {"vr-manure", "survey-uav+yield-map+soil-sampling", "manure-application", 4, 0, 0, 0},
    {"inter-row-hoeing-gps", "none", "mechanical-weeding", 0, 0, 0, 50},
    {"inter-row-hoeing-camera", "none", "mechanical-weeding", 0, 0, 0, 50},
}};

}  // namespace benefit_table
