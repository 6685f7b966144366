#include "softcircuit/electromech/geometry.hpp"
#include "softcircuit/error.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <limits>

using namespace softcircuit;
using namespace softcircuit::electromech;

TEST(Geometry, ReferenceTraceVolume) {
    const auto g = reference::test_trace();
    EXPECT_NEAR(volume(g), 4.08e-8, 1e-20);
    EXPECT_DOUBLE_EQ(g.volume(), volume(g));
}

TEST(Geometry, ConductivityFromMeasuredResistance) {
    EXPECT_NEAR(conductivity_constant_volume(0.08, 1.3523, 4.08e-8), 1.16e5, 0.01e5);
}

TEST(Geometry, ReferenceTraceResistance) {
    const double r = resistance_of_trace(reference::test_trace(), reference::kSigmaDay0.value);
    // l / (sigma w t) evaluated by hand
    EXPECT_NEAR(r, 0.08 / (1.16e5 * 0.005 * 102e-6), 1e-12);
    EXPECT_NEAR(r, 1.352, 0.001);
}

TEST(Geometry, MeasureConductivityInvertsResistance) {
    const TraceGeometry g(0.03, 0.002, 50e-6);
    for (double sigma : {1e3, 5.5e4, 1.62e5, 3e7}) {
        const auto m = measure_conductivity(g, resistance_of_trace(g, sigma));
        EXPECT_NEAR(m.sigma_s_per_m / sigma, 1.0, 1e-12);
    }
}

TEST(Geometry, RejectsNonPhysicalDimensions) {
    const double nan = std::numeric_limits<double>::quiet_NaN();
    EXPECT_THROW(TraceGeometry(0.0, 0.005, 1e-4), ValidationError);
    EXPECT_THROW(TraceGeometry(0.08, -0.005, 1e-4), ValidationError);
    EXPECT_THROW(TraceGeometry(0.08, 0.005, nan), ValidationError);
    EXPECT_THROW((void)conductivity_constant_volume(0.08, 0.0, 4.08e-8), ValidationError);
    EXPECT_THROW((void)resistance_of_trace(reference::test_trace(), -1.0), ValidationError);
}

TEST(Stretch, LengthScalesWithStrain) {
    const StretchState s(reference::test_trace(), 0.5);
    EXPECT_DOUBLE_EQ(s.stretched_length_m(), 0.12);
    EXPECT_DOUBLE_EQ(s.strain(), 0.5);
    EXPECT_THROW(StretchState(reference::test_trace(), -0.1), ValidationError);
}

TEST(Stretch, ConstantVolumeResistanceGrowsQuadratically) {
    // R = l^2 / (sigma V): doubling the length quadruples R at fixed sigma.
    const auto g = reference::test_trace();
    const StretchState s(g, 1.0);
    const double r0 = resistance_of_trace(g, 1e5);
    const double r1 = s.stretched_length_m() * s.stretched_length_m() / (1e5 * g.volume());
    EXPECT_NEAR(conductivity_constant_volume(s.stretched_length_m(), r1, g.volume()), 1e5, 1e-6);
    EXPECT_NEAR(r1 / r0, 4.0, 1e-12);
}

TEST(Occupancy, AnchorsFromAgWeight) {
    EXPECT_NEAR(occupancy_from_ag_weight(0.75), 0.20, 1e-12);
    EXPECT_NEAR(occupancy_from_ag_weight(0.8918), 0.7672, 1e-12);
    EXPECT_EQ(occupancy_from_ag_weight(0.5), 0.0);
    EXPECT_EQ(occupancy_from_ag_weight(1.0), 1.0);
    EXPECT_THROW((void)occupancy_from_ag_weight(1.2), ValidationError);
    // The anchors bracket the square-lattice bond threshold.
    EXPECT_LT(occupancy_from_ag_weight(0.75), kSquareLatticeBondThreshold);
    EXPECT_GT(occupancy_from_ag_weight(0.8918), kSquareLatticeBondThreshold);
}

TEST(Reference, RangesAreOrdered) {
    EXPECT_LT(reference::kAgWpuFailureStrain.low, reference::kAgWpuFailureStrain.high);
    EXPECT_LT(reference::kAgWpuFailureStrain.high, reference::kBiphasicFailureStrain.low);
    EXPECT_LT(reference::kSigmaDay0.value, reference::kSigmaDay30Print.value);
    EXPECT_LT(reference::kSigmaDay30Print.value, reference::kSigmaDay30Vial.value);
}
