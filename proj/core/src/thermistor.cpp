#include "softcircuit/thermistor.hpp"

#include "softcircuit/error.hpp"

#include <algorithm>
#include <cmath>

namespace softcircuit::thermistor {

namespace {

bool positive_finite(double v) { return std::isfinite(v) && v > 0.0; }

}  // namespace

void NtcParams::validate() const {
    if (!positive_finite(r25_ohm)) throw ValidationError("r25_ohm must be > 0");
    if (!positive_finite(beta_k)) throw ValidationError("beta_k must be > 0");
}

std::string_view to_string(Position position) noexcept {
    return position == Position::low_side ? "low-side" : "high-side";
}

void DividerConfig::validate() const {
    if (!positive_finite(r_fixed_ohm)) throw ValidationError("r_fixed_ohm must be > 0");
    if (!positive_finite(vcc_v)) throw ValidationError("vcc_v must be > 0");
    if (adc_bits < 8 || adc_bits > 16) throw ValidationError("adc_bits must lie in [8, 16]");
}

double ntc_resistance(double temp_c, const NtcParams& params) {
    params.validate();
    if (!std::isfinite(temp_c) || temp_c <= -kZeroCelsiusK) {
        throw ValidationError("temperature must be above absolute zero");
    }
    const double t_k = temp_c + kZeroCelsiusK;
    return params.r25_ohm * std::exp(params.beta_k * (1.0 / t_k - 1.0 / (25.0 + kZeroCelsiusK)));
}

double divider_ratio(double temp_c, const NtcParams& ntc, const DividerConfig& divider) {
    divider.validate();
    const double r_ntc = ntc_resistance(temp_c, ntc);
    const double r_low = divider.thermistor_position == Position::low_side ? r_ntc : divider.r_fixed_ohm;
    return r_low / (r_ntc + divider.r_fixed_ohm);
}

std::int64_t adc_from_temperature(double temp_c, const NtcParams& ntc, const DividerConfig& divider) {
    const double scaled = divider_ratio(temp_c, ntc, divider) * static_cast<double>(divider.full_scale());
    const auto count = static_cast<std::int64_t>(std::floor(scaled + 0.5));
    return std::clamp<std::int64_t>(count, 0, divider.full_scale());
}

CalibrationCurve fit_linear_calibration(std::span<const CalibrationPoint> points) {
    if (points.size() < 2) throw ValidationError("calibration needs at least two points");
    const double n = static_cast<double>(points.size());
    double mean_x = 0.0;
    double mean_y = 0.0;
    for (const auto& p : points) {
        if (!std::isfinite(p.adc_count) || !std::isfinite(p.true_temp_c)) {
            throw ValidationError("calibration points must be finite");
        }
        mean_x += p.adc_count;
        mean_y += p.true_temp_c;
    }
    mean_x /= n;
    mean_y /= n;

    double sxx = 0.0;
    double sxy = 0.0;
    for (const auto& p : points) {
        sxx += (p.adc_count - mean_x) * (p.adc_count - mean_x);
        sxy += (p.adc_count - mean_x) * (p.true_temp_c - mean_y);
    }
    if (sxx == 0.0) throw ValidationError("degenerate fit: all ADC counts are identical");

    CalibrationCurve curve;
    curve.slope = sxy / sxx;
    curve.intercept = mean_y - curve.slope * mean_x;
    const auto [lo, hi] = std::minmax_element(
        points.begin(), points.end(),
        [](const auto& a, const auto& b) { return a.true_temp_c < b.true_temp_c; });
    curve.fit_min_c = lo->true_temp_c;
    curve.fit_max_c = hi->true_temp_c;

    double sse = 0.0;
    for (const auto& p : points) {
        const double r = p.true_temp_c - (curve.slope * p.adc_count + curve.intercept);
        sse += r * r;
    }
    curve.residual_rms = std::sqrt(sse / n);
    return curve;
}

Reading temperature_from_adc(double count, const CalibrationCurve& curve) noexcept {
    const double t = curve.slope * count + curve.intercept;
    return {t, t < curve.fit_min_c || t > curve.fit_max_c};
}

std::vector<double> moving_average(std::span<const double> signal, std::size_t window) {
    if (window < 1) throw ValidationError("window must be >= 1");
    std::vector<double> out(signal.size());
    for (std::size_t i = 0; i < signal.size(); ++i) {
        const std::size_t first = i + 1 >= window ? i + 1 - window : 0;
        double sum = 0.0;
        for (std::size_t j = first; j <= i; ++j) sum += signal[j];
        out[i] = sum / static_cast<double>(i - first + 1);
    }
    return out;
}

}  // namespace softcircuit::thermistor
