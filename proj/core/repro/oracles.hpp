#pragma once

// Reference computations used to check the library. Each one is written
// independently of the production code path it verifies: dense elimination
// instead of sparse Cholesky, explicit loops instead of windowed kernels,
// a full DP table instead of rolling rows.

#include "softcircuit/coldchain.hpp"
#include "softcircuit/electromech/percolation.hpp"
#include "softcircuit/random.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace softcircuit::oracle {

/// Dense Gaussian elimination with partial pivoting over every node of the
/// graph. Nodes that cannot reach a terminal are pinned to 0 V.
[[nodiscard]] std::optional<double> dense_conductance(const electromech::ResistorGraph& graph);

[[nodiscard]] std::vector<double> brute_moving_average(std::span<const double> x, std::size_t window);
[[nodiscard]] std::vector<double> brute_rms(std::span<const double> x, std::size_t window);

/// Full (n+1) x (m+1) DTW table.
[[nodiscard]] double dtw_table(std::span<const double> a, std::span<const double> b);

/// Walks a sample stream by hand: returns the epoch of the first sample at
/// which the contiguous hot run (temp_milli > threshold_milli) has lasted
/// latch_s, or nullopt.
[[nodiscard]] std::optional<std::int64_t> first_latch_epoch(
    std::span<const coldchain::TemperatureSample> samples, double threshold_c, std::int64_t latch_s);

/// Independent stream of seeds for sub-experiment `stream` of a run.
[[nodiscard]] std::uint64_t derive_seed(std::uint64_t run_seed, std::uint64_t stream, std::uint64_t index);

/// Impulse train: unit impulses at the given times (seconds), rounded to the
/// nearest sample.
[[nodiscard]] std::vector<double> impulse_train(double sample_rate_hz, double duration_s,
                                                std::span<const double> times_s);

struct GestureSet {
    std::vector<std::vector<double>> repetition_a;  // one envelope per gesture
    std::vector<std::vector<double>> repetition_b;
};

/// Four synthetic gestures, two repetitions each. Each repetition is a
/// Gaussian carrier modulated by the gesture's activation profile (random
/// shift and gain per repetition), with white noise at `snr_db`, passed
/// through the EMG filter chain and reduced to a decimated RMS envelope.
[[nodiscard]] GestureSet synthetic_gestures(Rng& rng, double snr_db = 20.0);

}  // namespace softcircuit::oracle
