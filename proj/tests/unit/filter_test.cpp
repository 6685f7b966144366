#include "softcircuit/biosignal/filter.hpp"
#include "softcircuit/error.hpp"
#include "softcircuit/random.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

using namespace softcircuit;
using namespace softcircuit::biosignal;

namespace {

constexpr double kFs = 250.0;
const double kHalfPowerDb = -10.0 * std::log10(2.0);

double section_db(const Biquad& q, double f) { return 20.0 * std::log10(std::abs(q.response(f, kFs))); }

std::vector<double> sine(double f, double seconds) {
    std::vector<double> x(static_cast<std::size_t>(seconds * kFs));
    for (std::size_t k = 0; k < x.size(); ++k) x[k] = std::sin(2 * std::numbers::pi * f * double(k) / kFs);
    return x;
}

double tail_rms(const std::vector<double>& x) {
    double s = 0.0;
    for (std::size_t k = x.size() / 2; k < x.size(); ++k) s += x[k] * x[k];
    return std::sqrt(s / double(x.size() - x.size() / 2));
}

}  // namespace

TEST(Butterworth, CornersAtHalfPower) {
    EXPECT_NEAR(section_db(design_filter(FilterSpec::highpass(5.0), kFs).at(0), 5.0), kHalfPowerDb, 1e-9);
    EXPECT_NEAR(section_db(design_filter(FilterSpec::lowpass(55.0), kFs).at(0), 55.0), kHalfPowerDb, 1e-9);
    EXPECT_NEAR(section_db(design_filter(FilterSpec::highpass(2.0), kFs).at(0), 2.0), kHalfPowerDb, 1e-9);
    EXPECT_NEAR(section_db(design_filter(FilterSpec::lowpass(100.0), kFs).at(0), 100.0), kHalfPowerDb, 1e-9);
}

TEST(Butterworth, PassAndStopBands) {
    const auto lp = design_filter(FilterSpec::lowpass(20.0), kFs);
    const auto hp = design_filter(FilterSpec::highpass(20.0), kFs);
    EXPECT_NEAR(std::abs(cascade_response(lp, 0.0, kFs)), 1.0, 1e-12);
    EXPECT_NEAR(std::abs(cascade_response(hp, 0.0, kFs)), 0.0, 1e-12);
    EXPECT_NEAR(std::abs(cascade_response(hp, kFs / 2, kFs)), 1.0, 1e-12);
    // Bilinear Butterworth: |H|^2 = 1 / (1 + (tan(pi f / fs) / tan(pi fc / fs))^4).
    const auto warped = [](double f) { return std::tan(std::numbers::pi * f / kFs); };
    for (double f : {1.0, 10.0, 20.0, 40.0, 80.0, 120.0}) {
        const double ratio = warped(f) / warped(20.0);
        EXPECT_NEAR(magnitude_db(lp, f, kFs), -10.0 * std::log10(1.0 + std::pow(ratio, 4)), 1e-9) << f;
        EXPECT_NEAR(magnitude_db(hp, f, kFs), -10.0 * std::log10(1.0 + std::pow(ratio, -4)), 1e-9) << f;
    }
}

TEST(Bandpass, HighpassThenLowpass) {
    const auto bp = design_filter(FilterSpec::bandpass(kEcgBand), kFs);
    ASSERT_EQ(bp.size(), 2u);
    EXPECT_NEAR(section_db(bp[0], kEcgBand.low_hz), kHalfPowerDb, 1e-9);
    EXPECT_NEAR(section_db(bp[1], kEcgBand.high_hz), kHalfPowerDb, 1e-9);
    EXPECT_GT(magnitude_db(bp, 20.0, kFs), -1.0);
}

TEST(Notch, SixtyHertzRemoved) {
    const auto notch = design_filter(FilterSpec::notch(60.0), kFs);
    EXPECT_LE(magnitude_db(notch, 60.0, kFs), -40.0);
    EXPECT_GT(magnitude_db(notch, 30.0, kFs), -0.1);
    const auto y = apply_filter(notch, sine(60.0, 8.0));
    EXPECT_LE(20.0 * std::log10(tail_rms(y) / tail_rms(sine(60.0, 8.0))), -40.0);
}

TEST(Chain, EmgChainPassesMidBand) {
    const auto chain = design_chain(kEmgBand, kFs);
    ASSERT_EQ(chain.size(), 3u);
    const auto y = apply_filter(chain, sine(25.0, 8.0));
    EXPECT_NEAR(tail_rms(y) / tail_rms(sine(25.0, 8.0)), 1.0, 0.05);
}

TEST(Design, RejectsInvalidSpecs) {
    EXPECT_THROW((void)design_filter(FilterSpec::lowpass(125.0), kFs), ValidationError);
    EXPECT_THROW((void)design_filter(FilterSpec::highpass(0.0), kFs), ValidationError);
    EXPECT_THROW((void)design_filter(FilterSpec::bandpass(50.0, 10.0), kFs), ValidationError);
    EXPECT_THROW((void)design_filter(FilterSpec::notch(60.0, 0.0), kFs), ValidationError);
    EXPECT_THROW((void)design_filter(FilterSpec::lowpass(10.0), -1.0), ValidationError);
    auto fourth = FilterSpec::lowpass(10.0);
    fourth.order = 4;
    EXPECT_THROW((void)design_filter(fourth, kFs), ValidationError);
}

TEST(Design, RandomSpecsAreStable) {
    Rng rng(8);
    for (int i = 0; i < 2000; ++i) {
        const double fs = 20.0 + 5000.0 * rng.uniform();
        const double f = fs / 2 * (0.002 + 0.996 * rng.uniform());
        const auto spec = i % 3 == 0 ? FilterSpec::lowpass(f) : i % 3 == 1 ? FilterSpec::highpass(f) : FilterSpec::notch(f, 0.5 + 50 * rng.uniform());
        for (const auto& q : design_filter(spec, fs)) ASSERT_TRUE(q.is_stable()) << i;
    }
}

TEST(Apply, ImpulseResponseStartsWithB0AndDecays) {
    const auto lp = design_filter(FilterSpec::lowpass(10.0), kFs);
    std::vector<double> impulse(2000, 0.0);
    impulse[0] = 1.0;
    const auto h = apply_filter(lp, impulse);
    EXPECT_DOUBLE_EQ(h[0], lp[0].b0);
    EXPECT_LT(std::abs(h.back()), 1e-12);
    double dc = 0.0;
    for (double v : h) dc += v;
    EXPECT_NEAR(dc, 1.0, 1e-9);
}

TEST(Apply, EmptyCascadeIsIdentity) {
    const std::vector<double> x{1, -2, 3};
    EXPECT_EQ(apply_filter({}, x), x);
}
