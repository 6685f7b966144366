#include "softcircuit/error.hpp"
#include "softcircuit/random.hpp"
#include "softcircuit/thermistor.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace softcircuit;
using namespace softcircuit::thermistor;

namespace {

double max_round_trip_error(const DividerConfig& divider) {
    const NtcParams ntc;
    std::vector<CalibrationPoint> pts;
    for (int t = 25; t <= 50; ++t) pts.push_back({double(adc_from_temperature(t, ntc, divider)), double(t)});
    const auto curve = fit_linear_calibration(pts);
    double worst = 0.0;
    for (int i = 0; i <= 2500; ++i) {
        const double t = 25.0 + 0.01 * i;
        worst = std::max(worst, std::abs(temperature_from_adc(double(adc_from_temperature(t, ntc, divider)), curve).temp_c - t));
    }
    return worst;
}

}  // namespace

TEST(Ntc, BetaModel) {
    const NtcParams p;
    EXPECT_NEAR(ntc_resistance(25.0, p), 10000.0, 1e-9);
    // 10000 * exp(3435 * (1/323.15 - 1/298.15))
    EXPECT_NEAR(ntc_resistance(50.0, p), 4101.19, 0.01);
    EXPECT_GT(ntc_resistance(0.0, p), ntc_resistance(10.0, p));
    EXPECT_THROW((void)ntc_resistance(-300.0, p), ValidationError);
}

TEST(Divider, EqualResistorsGiveHalfScale) {
    DividerConfig d;
    d.r_fixed_ohm = 10'000.0;
    EXPECT_DOUBLE_EQ(divider_ratio(25.0, {}, d), 0.5);
    EXPECT_EQ(adc_from_temperature(25.0, {}, d), 512);  // 511.5 rounds up
}

TEST(Divider, PositionSetsSlopeSign) {
    DividerConfig low;
    DividerConfig high;
    high.thermistor_position = Position::high_side;
    EXPECT_LT(adc_from_temperature(40.0, {}, low), adc_from_temperature(30.0, {}, low));
    EXPECT_GT(adc_from_temperature(40.0, {}, high), adc_from_temperature(30.0, {}, high));
    EXPECT_EQ(to_string(Position::high_side), "high-side");
}

TEST(Divider, CountsClampToFullScale) {
    DividerConfig d;
    d.adc_bits = 12;
    EXPECT_EQ(d.full_scale(), 4095);
    EXPECT_LE(adc_from_temperature(-40.0, {}, d), 4095);
    EXPECT_GE(adc_from_temperature(150.0, {}, d), 0);
    d.adc_bits = 4;
    EXPECT_THROW(d.validate(), ValidationError);
}

TEST(Calibration, ExactLineRecovered) {
    std::vector<CalibrationPoint> pts;
    for (int c = 400; c <= 700; c += 25) pts.push_back({double(c), 100.0 - 0.11 * c});
    const auto curve = fit_linear_calibration(pts);
    EXPECT_NEAR(curve.slope, -0.11, 1e-12);
    EXPECT_NEAR(curve.intercept, 100.0, 1e-9);
    EXPECT_NEAR(curve.residual_rms, 0.0, 1e-9);
    EXPECT_EQ(curve.fit_min_c, 100.0 - 0.11 * 700);
    EXPECT_EQ(curve.fit_max_c, 100.0 - 0.11 * 400);
}

TEST(Calibration, DegenerateInputsRejected) {
    EXPECT_THROW((void)fit_linear_calibration(std::vector<CalibrationPoint>{{500, 30}}), ValidationError);
    EXPECT_THROW((void)fit_linear_calibration(std::vector<CalibrationPoint>{{500, 30}, {500, 31}}), ValidationError);
}

TEST(Calibration, ExtrapolationFlagged) {
    std::vector<CalibrationPoint> pts{{600, 25}, {500, 40}};
    const auto curve = fit_linear_calibration(pts);
    EXPECT_FALSE(temperature_from_adc(550, curve).extrapolated);
    EXPECT_TRUE(temperature_from_adc(450, curve).extrapolated);
    EXPECT_NEAR(temperature_from_adc(450, curve).temp_c, 47.5, 1e-9);  // 40 + 50 * 0.15
}

TEST(Calibration, DefaultDividerRoundTripWithinHalfDegree) {
    EXPECT_LE(max_round_trip_error(DividerConfig{}), 0.5);
}

TEST(Calibration, EqualValueDividerIsTooCurvedForHalfDegree) {
    // Why the default fixed resistor is 4.7 kOhm rather than 10 kOhm.
    DividerConfig d;
    d.r_fixed_ohm = 10'000.0;
    EXPECT_GT(max_round_trip_error(d), 0.5);
}

TEST(Calibration, JitteredReplicatesStillWithinBound) {
    const NtcParams ntc;
    const DividerConfig div;
    Rng rng(12);
    std::vector<CalibrationPoint> pts;
    for (int rep = 0; rep < 5; ++rep) {
        for (int t = 25; t <= 50; ++t) pts.push_back({double(adc_from_temperature(t + 0.05 * rng.normal(), ntc, div)), double(t)});
    }
    const auto curve = fit_linear_calibration(pts);
    for (double t = 25.0; t <= 50.0; t += 0.05) {
        EXPECT_NEAR(temperature_from_adc(double(adc_from_temperature(t, ntc, div)), curve).temp_c, t, 0.5);
    }
}

TEST(MovingAverage, WindowBehaviour) {
    const std::vector<double> x{1, 2, 3, 4, 5, 6};
    EXPECT_EQ(moving_average(x, 1), x);
    EXPECT_EQ(moving_average(x, 3), (std::vector<double>{1, 1.5, 2, 3, 4, 5}));
    EXPECT_EQ(moving_average(x, 100).back(), 3.5);
    EXPECT_TRUE(moving_average(std::vector<double>{}, 60).empty());
    EXPECT_THROW((void)moving_average(x, 0), ValidationError);
}

TEST(MovingAverage, ConstantSignalUnchanged) {
    const std::vector<double> x(500, 31.25);
    for (double v : moving_average(x)) EXPECT_EQ(v, 31.25);
}
