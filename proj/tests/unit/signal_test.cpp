#include "oracles.hpp"

#include "softcircuit/biosignal/ecg.hpp"
#include "softcircuit/biosignal/envelope.hpp"
#include "softcircuit/error.hpp"
#include "softcircuit/random.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <limits>

using namespace softcircuit;
using namespace softcircuit::biosignal;

TEST(Recording, Validation) {
    EXPECT_NO_THROW((SignalRecording{{0.0, 1.0}}.validate()));
    EXPECT_THROW((SignalRecording{{0.0}, 0.0}.validate()), ValidationError);
    EXPECT_THROW((SignalRecording{{std::numeric_limits<double>::infinity()}}.validate()), ValidationError);
}

TEST(Envelope, ConstantMagnitude) {
    const std::vector<double> x{3, -3, 3, -3, 3, -3};
    for (double v : rms_envelope(x, 4).values) EXPECT_DOUBLE_EQ(v, 3.0);
}

TEST(Envelope, PartialWindowsAtStart) {
    const std::vector<double> x{3, 4, 0};
    const auto e = rms_envelope(x, 2);
    EXPECT_DOUBLE_EQ(e.values[0], 3.0);
    EXPECT_DOUBLE_EQ(e.values[1], std::sqrt(12.5));
    EXPECT_DOUBLE_EQ(e.values[2], std::sqrt(8.0));
    EXPECT_THROW((void)rms_envelope(x, 0), ValidationError);
}

TEST(Envelope, MatchesBruteForceExactly) {
    Rng rng(3);
    for (int i = 0; i < 200; ++i) {
        std::vector<double> x(1 + static_cast<std::size_t>(rng.uniform() * 600));
        for (auto& v : x) v = 50.0 * rng.normal();
        for (std::size_t w : {kFingerPoseEnvelopeWindow, kGripEnvelopeWindow, std::size_t{7}}) {
            ASSERT_EQ(rms_envelope(x, w).values, oracle::brute_rms(x, w));
        }
    }
}

namespace {

std::vector<double> beats_every(double rr_s, double fs, int count) {
    std::vector<double> times;
    for (int k = 0; k < count; ++k) times.push_back(0.5 + rr_s * k);
    return oracle::impulse_train(fs, 0.5 + rr_s * count + 0.5, times);
}

}  // namespace

TEST(Ecg, SixThirtyMillisecondTrainAt1kHz) {
    const auto f = detect_r_peaks({beats_every(0.63, 1000.0, 20), 1000.0});
    ASSERT_TRUE(f.has_value());
    ASSERT_EQ(f->rr_intervals_ms.size(), 19u);
    for (double rr : f->rr_intervals_ms) EXPECT_EQ(rr, 630.0);
    EXPECT_NEAR(f->heart_rate_bpm, 95.238095238, 1e-8);
    EXPECT_EQ(std::round(f->heart_rate_bpm), 95.0);
}

TEST(Ecg, AlternatingSpacingAt250Hz) {
    // 630 ms is 157.5 samples at 250 Hz.
    std::vector<double> x(3000, 0.0);
    std::size_t k = 100;
    for (int i = 0; k < x.size(); ++i) {
        x[k] = 1.0;
        k += i % 2 == 0 ? 157 : 158;
    }
    const auto f = detect_r_peaks({x, 250.0});
    ASSERT_TRUE(f.has_value());
    for (std::size_t i = 0; i < f->rr_intervals_ms.size(); ++i) {
        EXPECT_EQ(f->rr_intervals_ms[i], i % 2 == 0 ? 628.0 : 632.0);
    }
    EXPECT_NEAR(f->heart_rate_bpm, 60000.0 / 630.0, 1e-9);
}

TEST(Ecg, RefractoryRejectsEarlySpikes) {
    auto x = beats_every(0.8, 1000.0, 10);
    const auto clean = detect_r_peaks({x, 1000.0});
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i] == 1.0 && i + 150 < x.size()) x[i + 150] = 0.9;  // 150 ms after each beat
    }
    const auto spiky = detect_r_peaks({x, 1000.0});
    ASSERT_TRUE(clean && spiky);
    EXPECT_EQ(spiky->r_peak_indices, clean->r_peak_indices);
}

TEST(Ecg, SpikesBeyondRefractoryAreKept) {
    auto x = beats_every(0.8, 1000.0, 4);
    x[static_cast<std::size_t>((0.5 + 0.3) * 1000)] = 0.9;  // 300 ms after the first beat
    const auto f = detect_r_peaks({x, 1000.0});
    ASSERT_TRUE(f.has_value());
    EXPECT_EQ(f->r_peak_indices.size(), 5u);
}

TEST(Ecg, SmallPeaksBelowThresholdIgnored) {
    auto x = beats_every(1.0, 500.0, 6);
    x[static_cast<std::size_t>(1.0 * 500)] = 0.3;  // 0.3 < 0.6 of the local max
    const auto f = detect_r_peaks({x, 500.0});
    ASSERT_TRUE(f.has_value());
    EXPECT_EQ(f->r_peak_indices.size(), 6u);
}

TEST(Ecg, TooFewPeaks) {
    std::vector<double> x(2000, 0.0);
    EXPECT_FALSE(detect_r_peaks({x, 250.0}).has_value());
    x[500] = 1.0;
    EXPECT_FALSE(detect_r_peaks({x, 250.0}).has_value());
}

TEST(Ecg, HeartRateFromIntervals) {
    EXPECT_DOUBLE_EQ(heart_rate_from_rr({1000.0, 1000.0}), 60.0);
    EXPECT_DOUBLE_EQ(heart_rate_from_rr({500.0, 1500.0}), 60.0);
    EXPECT_THROW((void)heart_rate_from_rr({}), ValidationError);
}

TEST(Ecg, ConfigValidated) {
    PeakDetectorConfig c;
    c.threshold_fraction = 0.0;
    EXPECT_THROW((void)detect_r_peaks({std::vector<double>(100, 0.0), 250.0}, c), ValidationError);
}
