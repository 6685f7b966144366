#include "softcircuit/biosignal/filter.hpp"

#include "softcircuit/error.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace softcircuit::biosignal {

namespace {

void require_corner(double f_hz, double sample_rate_hz, const char* name) {
    if (!std::isfinite(f_hz) || f_hz <= 0.0 || f_hz >= 0.5 * sample_rate_hz) {
        throw ValidationError(std::string(name) + " must lie strictly between 0 and Nyquist");
    }
}

Biquad butterworth_section(double fc_hz, double sample_rate_hz, bool highpass) {
    const double k = std::tan(std::numbers::pi * fc_hz / sample_rate_hz);
    const double k2 = k * k;
    const double norm = 1.0 / (1.0 + std::numbers::sqrt2 * k + k2);
    Biquad s;
    if (highpass) {
        s.b0 = norm;
        s.b1 = -2.0 * norm;
        s.b2 = norm;
    } else {
        s.b0 = k2 * norm;
        s.b1 = 2.0 * k2 * norm;
        s.b2 = k2 * norm;
    }
    s.a1 = 2.0 * (k2 - 1.0) * norm;
    s.a2 = (1.0 - std::numbers::sqrt2 * k + k2) * norm;
    return s;
}

Biquad notch_section(double f0_hz, double sample_rate_hz, double q) {
    const double w0 = 2.0 * std::numbers::pi * f0_hz / sample_rate_hz;
    const double alpha = std::sin(w0) / (2.0 * q);
    const double a0 = 1.0 + alpha;
    const double c = -2.0 * std::cos(w0) / a0;
    return {.b0 = 1.0 / a0, .b1 = c, .b2 = 1.0 / a0, .a1 = c, .a2 = (1.0 - alpha) / a0};
}

}  // namespace

FilterSpec FilterSpec::notch(double f0_hz, double q) {
    return {.kind = FilterKind::notch, .f_low_hz = f0_hz, .notch_q = q};
}
FilterSpec FilterSpec::highpass(double fc_hz) {
    return {.kind = FilterKind::highpass, .f_low_hz = fc_hz};
}
FilterSpec FilterSpec::lowpass(double fc_hz) {
    return {.kind = FilterKind::lowpass, .f_high_hz = fc_hz};
}
FilterSpec FilterSpec::bandpass(double low_hz, double high_hz) {
    return {.kind = FilterKind::bandpass, .f_low_hz = low_hz, .f_high_hz = high_hz};
}

std::complex<double> Biquad::response(double freq_hz, double sample_rate_hz) const {
    const double w = 2.0 * std::numbers::pi * freq_hz / sample_rate_hz;
    const std::complex<double> z1 = std::polar(1.0, -w);
    const std::complex<double> z2 = z1 * z1;
    return (b0 + b1 * z1 + b2 * z2) / (1.0 + a1 * z1 + a2 * z2);
}

bool Biquad::is_stable() const noexcept {
    return std::abs(a2) < 1.0 && std::abs(a1) < 1.0 + a2;
}

SosCascade design_filter(const FilterSpec& spec, double sample_rate_hz) {
    if (!std::isfinite(sample_rate_hz) || sample_rate_hz <= 0.0) {
        throw ValidationError("sample rate must be > 0");
    }
    if (spec.order != 2) throw ValidationError("only second-order sections are supported");

    switch (spec.kind) {
    case FilterKind::notch:
        require_corner(spec.f_low_hz, sample_rate_hz, "notch frequency");
        if (!std::isfinite(spec.notch_q) || spec.notch_q <= 0.0) {
            throw ValidationError("notch Q must be > 0");
        }
        return {notch_section(spec.f_low_hz, sample_rate_hz, spec.notch_q)};
    case FilterKind::highpass:
        require_corner(spec.f_low_hz, sample_rate_hz, "highpass corner");
        return {butterworth_section(spec.f_low_hz, sample_rate_hz, true)};
    case FilterKind::lowpass:
        require_corner(spec.f_high_hz, sample_rate_hz, "lowpass corner");
        return {butterworth_section(spec.f_high_hz, sample_rate_hz, false)};
    case FilterKind::bandpass:
        require_corner(spec.f_low_hz, sample_rate_hz, "bandpass low corner");
        require_corner(spec.f_high_hz, sample_rate_hz, "bandpass high corner");
        if (spec.f_low_hz >= spec.f_high_hz) {
            throw ValidationError("bandpass needs f_low < f_high");
        }
        return {butterworth_section(spec.f_low_hz, sample_rate_hz, true),
                butterworth_section(spec.f_high_hz, sample_rate_hz, false)};
    }
    throw ValidationError("unknown filter kind");
}

std::complex<double> cascade_response(const SosCascade& sos, double freq_hz, double sample_rate_hz) {
    std::complex<double> h = 1.0;
    for (const auto& s : sos) h *= s.response(freq_hz, sample_rate_hz);
    return h;
}

double magnitude_db(const SosCascade& sos, double freq_hz, double sample_rate_hz) {
    return 20.0 * std::log10(std::abs(cascade_response(sos, freq_hz, sample_rate_hz)));
}

std::vector<double> apply_filter(const SosCascade& sos, std::span<const double> signal) {
    std::vector<double> y(signal.begin(), signal.end());
    for (const auto& s : sos) {
        double z1 = 0.0;
        double z2 = 0.0;
        for (double& v : y) {
            const double x = v;
            const double out = s.b0 * x + z1;
            z1 = s.b1 * x - s.a1 * out + z2;
            z2 = s.b2 * x - s.a2 * out;
            v = out;
        }
    }
    return y;
}

SosCascade design_chain(Band band, double sample_rate_hz, double notch_hz, double notch_q) {
    SosCascade chain = design_filter(FilterSpec::notch(notch_hz, notch_q), sample_rate_hz);
    for (const auto& s : design_filter(FilterSpec::bandpass(band), sample_rate_hz)) chain.push_back(s);
    return chain;
}

}  // namespace softcircuit::biosignal
