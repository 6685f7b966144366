#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace softcircuit::biosignal {

struct RmsEnvelope {
    std::vector<double> values;
    std::size_t window_samples = 1;
};

/// Causal trailing-window RMS. The first window-1 outputs average over the
/// samples available so far.
[[nodiscard]] RmsEnvelope rms_envelope(std::span<const double> signal, std::size_t window_samples);

}  // namespace softcircuit::biosignal
