#include "softcircuit/biosignal/ecg.hpp"

#include "softcircuit/error.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace softcircuit::biosignal {

double heart_rate_from_rr(const std::vector<double>& rr_intervals_ms) {
    if (rr_intervals_ms.empty()) throw ValidationError("no RR intervals");
    const double mean = std::accumulate(rr_intervals_ms.begin(), rr_intervals_ms.end(), 0.0) /
                        static_cast<double>(rr_intervals_ms.size());
    return 60000.0 / mean;
}

std::optional<EcgFeatures> detect_r_peaks(const SignalRecording& ecg, const PeakDetectorConfig& config) {
    ecg.validate();
    if (!(config.threshold_fraction > 0.0 && config.threshold_fraction <= 1.0)) {
        throw ValidationError("threshold_fraction must lie in (0, 1]");
    }
    if (!(config.rolling_window_s > 0.0) || !(config.refractory_ms >= 0.0)) {
        throw ValidationError("window and refractory period must be positive");
    }

    const auto& x = ecg.samples;
    const std::size_t n = x.size();
    const double fs = ecg.sample_rate_hz;
    const auto half = static_cast<std::size_t>(std::llround(0.5 * config.rolling_window_s * fs));
    const double refractory_samples = config.refractory_ms * 1e-3 * fs;

    EcgFeatures features;
    for (std::size_t i = 0; i < n; ++i) {
        const bool rising = i == 0 || x[i] > x[i - 1];
        const bool falling = i + 1 == n || x[i] >= x[i + 1];
        if (!rising || !falling || x[i] <= 0.0) continue;

        const std::size_t lo = i >= half ? i - half : 0;
        const std::size_t hi = std::min(n - 1, i + half);
        const double local_max = *std::max_element(x.begin() + static_cast<std::ptrdiff_t>(lo),
                                                   x.begin() + static_cast<std::ptrdiff_t>(hi) + 1);
        if (x[i] < config.threshold_fraction * local_max) continue;

        if (!features.r_peak_indices.empty() &&
            static_cast<double>(i - features.r_peak_indices.back()) < refractory_samples) {
            continue;
        }
        features.r_peak_indices.push_back(i);
    }

    if (features.r_peak_indices.size() < 2) return std::nullopt;
    for (std::size_t k = 1; k < features.r_peak_indices.size(); ++k) {
        const auto gap = features.r_peak_indices[k] - features.r_peak_indices[k - 1];
        features.rr_intervals_ms.push_back(static_cast<double>(gap) * 1000.0 / fs);
    }
    features.heart_rate_bpm = heart_rate_from_rr(features.rr_intervals_ms);
    return features;
}

}  // namespace softcircuit::biosignal
