#pragma once

#include "softcircuit/biosignal/signal.hpp"

#include <cstddef>
#include <optional>
#include <vector>

namespace softcircuit::biosignal {

struct PeakDetectorConfig {
    /// Candidate must reach this fraction of the largest sample within +-1 s.
    double threshold_fraction = 0.6;
    double rolling_window_s = 2.0;
    double refractory_ms = 200.0;

    friend bool operator==(const PeakDetectorConfig&, const PeakDetectorConfig&) = default;
};

struct EcgFeatures {
    std::vector<std::size_t> r_peak_indices;
    std::vector<double> rr_intervals_ms;
    double heart_rate_bpm = 0.0;  // 60000 / mean RR
};

/// R-peak detection on a band-limited ECG: local maxima above an adaptive
/// threshold, with any candidate inside the refractory period of the last
/// accepted peak discarded. Returns nullopt ("insufficient beats") when fewer
/// than two peaks are found.
[[nodiscard]] std::optional<EcgFeatures> detect_r_peaks(const SignalRecording& ecg,
                                                        const PeakDetectorConfig& config = {});

[[nodiscard]] double heart_rate_from_rr(const std::vector<double>& rr_intervals_ms);

}  // namespace softcircuit::biosignal
