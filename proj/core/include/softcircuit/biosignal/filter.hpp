#pragma once

// Second-order IIR sections designed by the bilinear transform.

#include "softcircuit/biosignal/signal.hpp"

#include <complex>
#include <span>
#include <vector>

namespace softcircuit::biosignal {

enum class FilterKind { notch, highpass, lowpass, bandpass };

struct FilterSpec {
    FilterKind kind = FilterKind::bandpass;
    double f_low_hz = 0.0;   // highpass / bandpass corner, notch centre
    double f_high_hz = 0.0;  // lowpass / bandpass corner
    int order = 2;
    double notch_q = 30.0;

    [[nodiscard]] static FilterSpec notch(double f0_hz, double q = 30.0);
    [[nodiscard]] static FilterSpec highpass(double fc_hz);
    [[nodiscard]] static FilterSpec lowpass(double fc_hz);
    [[nodiscard]] static FilterSpec bandpass(double low_hz, double high_hz);
    [[nodiscard]] static FilterSpec bandpass(Band band) { return bandpass(band.low_hz, band.high_hz); }
};

/// y[n] = b0 x[n] + b1 x[n-1] + b2 x[n-2] - a1 y[n-1] - a2 y[n-2]
struct Biquad {
    double b0 = 1.0;
    double b1 = 0.0;
    double b2 = 0.0;
    double a1 = 0.0;
    double a2 = 0.0;

    [[nodiscard]] std::complex<double> response(double freq_hz, double sample_rate_hz) const;
    /// Both poles strictly inside the unit circle (Jury conditions).
    [[nodiscard]] bool is_stable() const noexcept;
};

using SosCascade = std::vector<Biquad>;

/// Butterworth sections use the analog prototype s^2 + sqrt(2) s + 1 with the
/// corner pre-warped so the -3.01 dB point lands exactly on the requested
/// frequency. A bandpass is a highpass at f_low followed by a lowpass at
/// f_high. The notch is the standard biquad with zeros on the unit circle at
/// f0 and bandwidth f0 / Q. Throws ValidationError for corners outside
/// (0, Nyquist).
[[nodiscard]] SosCascade design_filter(const FilterSpec& spec, double sample_rate_hz);

[[nodiscard]] std::complex<double> cascade_response(const SosCascade& sos, double freq_hz,
                                                    double sample_rate_hz);
[[nodiscard]] double magnitude_db(const SosCascade& sos, double freq_hz, double sample_rate_hz);

/// Causal transposed direct form II, zero initial state.
[[nodiscard]] std::vector<double> apply_filter(const SosCascade& sos, std::span<const double> signal);

/// Notch at 60 Hz followed by the band for the signal class.
[[nodiscard]] SosCascade design_chain(Band band, double sample_rate_hz, double notch_hz = 60.0,
                                      double notch_q = 30.0);

}  // namespace softcircuit::biosignal
