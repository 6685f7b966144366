#pragma once

// NTC thermistor in a resistive divider read by a microcontroller ADC, plus
// the linear count-to-temperature calibration used over the body temperature
// range and the trailing moving average applied to the stream.

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

namespace softcircuit::thermistor {

inline constexpr double kZeroCelsiusK = 273.15;

struct NtcParams {
    double r25_ohm = 10'000.0;
    double beta_k = 3435.0;

    void validate() const;
    friend bool operator==(const NtcParams&, const NtcParams&) = default;
};

enum class Position { low_side, high_side };

[[nodiscard]] std::string_view to_string(Position position) noexcept;

struct DividerConfig {
    /// 4.7 kOhm keeps the 25-50 C response within ~0.2 C of a straight line
    /// for a 10 kOhm / B3435 part; an equal-value 10 kOhm resistor does not.
    double r_fixed_ohm = 4'700.0;
    double vcc_v = 3.3;
    int adc_bits = 10;
    /// low_side: thermistor between the ADC node and ground.
    Position thermistor_position = Position::low_side;

    void validate() const;
    [[nodiscard]] std::int64_t full_scale() const noexcept { return (std::int64_t{1} << adc_bits) - 1; }
    friend bool operator==(const DividerConfig&, const DividerConfig&) = default;
};

struct CalibrationCurve {
    double slope = 0.0;      // degC per count
    double intercept = 0.0;  // degC
    double fit_min_c = 25.0;
    double fit_max_c = 50.0;
    double residual_rms = 0.0;

    friend bool operator==(const CalibrationCurve&, const CalibrationCurve&) = default;
};

struct CalibrationPoint {
    double adc_count;
    double true_temp_c;
};

/// Beta model R = R25 * exp(B * (1/T - 1/298.15)).
[[nodiscard]] double ntc_resistance(double temp_c, const NtcParams& params);

/// Fraction of Vcc seen by the ADC.
[[nodiscard]] double divider_ratio(double temp_c, const NtcParams& ntc, const DividerConfig& divider);

/// round-half-up(ratio * (2^bits - 1)), clamped to the converter range.
[[nodiscard]] std::int64_t adc_from_temperature(double temp_c, const NtcParams& ntc,
                                                const DividerConfig& divider);

/// Ordinary least squares temp = slope * count + intercept. The fit range is
/// taken from the supplied temperatures. Throws ValidationError when fewer
/// than two distinct counts are given.
[[nodiscard]] CalibrationCurve fit_linear_calibration(std::span<const CalibrationPoint> points);

struct Reading {
    double temp_c;
    bool extrapolated;
};

[[nodiscard]] Reading temperature_from_adc(double count, const CalibrationCurve& curve) noexcept;

inline constexpr std::size_t kDefaultSmoothingWindow = 60;

/// Causal trailing mean; output[i] averages input[max(0, i - window + 1) .. i].
[[nodiscard]] std::vector<double> moving_average(std::span<const double> signal,
                                                 std::size_t window = kDefaultSmoothingWindow);

}  // namespace softcircuit::thermistor
