#pragma once

// Nearest-template classification of RMS envelopes.

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace softcircuit::biosignal {

/// Dynamic time warping with local cost |a_i - b_j|, steps (1,0), (0,1),
/// (1,1) and both endpoints matched. `band` is an optional Sakoe-Chiba
/// half-width in samples (widened to cover the length difference).
///
/// DTW is symmetric and zero on identical inputs but is not a metric: the
/// triangle inequality does not hold in general.
[[nodiscard]] double dtw_distance(std::span<const double> a, std::span<const double> b,
                                  std::optional<std::size_t> band = std::nullopt);

/// Linear interpolation onto `length` evenly spaced points spanning the input.
[[nodiscard]] std::vector<double> resample_linear(std::span<const double> x, std::size_t length);

/// L2 distance after resampling the shorter sequence to the longer length.
[[nodiscard]] double euclidean_distance(std::span<const double> a, std::span<const double> b);

enum class Metric { dtw, euclidean };

[[nodiscard]] double distance(Metric metric, std::span<const double> a, std::span<const double> b);

struct LabeledSequence {
    std::string id;     // unique within a distance matrix
    std::string label;  // class
    std::vector<double> values;
};

/// Symmetric, non-negative, zero diagonal.
struct DistanceMatrix {
    std::vector<std::string> labels;
    Metric metric = Metric::dtw;
    std::vector<double> entries;  // row-major n x n

    [[nodiscard]] std::size_t size() const noexcept { return labels.size(); }
    [[nodiscard]] double at(std::size_t i, std::size_t j) const { return entries.at(i * size() + j); }
};

/// Pairwise distances between all sequences, labelled by id.
[[nodiscard]] DistanceMatrix distance_matrix(std::span<const LabeledSequence> sequences, Metric metric);

struct Classification {
    std::vector<std::string> labels;           // predicted class per query
    std::vector<std::size_t> nearest;          // index into references per query
    std::vector<double> nearest_distance;
    DistanceMatrix distances;                  // references first, then queries
};

/// Labels each query with the class of its nearest reference; ties go to the
/// lowest reference index.
[[nodiscard]] Classification classify_nearest(std::span<const LabeledSequence> queries,
                                              std::span<const LabeledSequence> references,
                                              Metric metric);

}  // namespace softcircuit::biosignal
