#pragma once

#include <vector>

namespace softcircuit::biosignal {

inline constexpr double kDefaultSampleRateHz = 250.0;
inline constexpr double kDefaultGain = 24.0;

/// Uniformly sampled biosignal.
struct SignalRecording {
    std::vector<double> samples;
    double sample_rate_hz = kDefaultSampleRateHz;
    double gain = kDefaultGain;

    /// Throws ValidationError unless the rate is positive and all samples finite.
    void validate() const;
};

/// Pass bands used for each signal class.
struct Band {
    double low_hz;
    double high_hz;

    friend bool operator==(const Band&, const Band&) = default;
};

inline constexpr Band kEcgBand{5.0, 55.0};
inline constexpr Band kEmgBand{2.0, 100.0};

inline constexpr std::size_t kFingerPoseEnvelopeWindow = 50;
inline constexpr std::size_t kGripEnvelopeWindow = 250;

}  // namespace softcircuit::biosignal
