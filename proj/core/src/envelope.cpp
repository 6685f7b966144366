#include "softcircuit/biosignal/envelope.hpp"
#include "softcircuit/biosignal/signal.hpp"

#include "softcircuit/error.hpp"

#include <cmath>

namespace softcircuit::biosignal {

void SignalRecording::validate() const {
    if (!std::isfinite(sample_rate_hz) || sample_rate_hz <= 0.0) {
        throw ValidationError("sample_rate_hz must be > 0");
    }
    if (!std::isfinite(gain) || gain <= 0.0) throw ValidationError("gain must be > 0");
    for (double v : samples) {
        if (!std::isfinite(v)) throw ValidationError("signal contains a non-finite sample");
    }
}

RmsEnvelope rms_envelope(std::span<const double> signal, std::size_t window_samples) {
    if (window_samples < 1) throw ValidationError("window must be >= 1");
    RmsEnvelope env;
    env.window_samples = window_samples;
    env.values.resize(signal.size());
    for (std::size_t i = 0; i < signal.size(); ++i) {
        const std::size_t first = i + 1 >= window_samples ? i + 1 - window_samples : 0;
        double sum_sq = 0.0;
        for (std::size_t j = first; j <= i; ++j) sum_sq += signal[j] * signal[j];
        env.values[i] = std::sqrt(sum_sq / static_cast<double>(i - first + 1));
    }
    return env;
}

}  // namespace softcircuit::biosignal
