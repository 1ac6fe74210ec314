#pragma once

#include "pacba/domain.hpp"

namespace fixtures {

/// Two guidance options sharing an RTK-GPS receiver on 379.6875 ha. At that
/// area the scale factor (379.6875 / 50)^0.6 is exactly 3.375, so every
/// scaled investment is an exact double and the deduplication identity can
/// be checked with ==.
inline pacba::FarmScenario shared_rtk_scenario() {
    using namespace pacba;
    FarmScenario s;
    s.region = Region::CentralEurope;
    s.crops.push_back({"wheat", false, 200.0, {}, {}, {}});
    s.crops.push_back({"maize", false, 179.6875, {}, {}, {}});
    OptionSelection steer;
    steer.main = MainTechnology::AutoSteer;
    steer.supports = {SupportTechnology::RTKGPS};
    steer.operation = OperationKind::Seeding;
    OptionSelection sections;
    sections.main = MainTechnology::SectionControl;
    sections.supports = {SupportTechnology::RTKGPS};
    sections.operation = OperationKind::SprayingHerbicide;
    s.options = {steer, sections};
    return s;
}

inline constexpr double kSharedRtkArea = 379.6875;
inline constexpr double kSharedRtkFactor = 3.375;

}  // namespace fixtures
