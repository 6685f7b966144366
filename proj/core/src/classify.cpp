#include "softcircuit/biosignal/classify.hpp"

#include "softcircuit/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

namespace softcircuit::biosignal {

double dtw_distance(std::span<const double> a, std::span<const double> b,
                    std::optional<std::size_t> band) {
    if (a.empty() || b.empty()) throw ValidationError("dtw needs non-empty sequences");
    const std::size_t n = a.size();
    const std::size_t m = b.size();
    const std::size_t diff = n > m ? n - m : m - n;
    const std::size_t width = band ? std::max(*band, diff) : std::max(n, m);
    constexpr double inf = std::numeric_limits<double>::infinity();

    std::vector<double> prev(m + 1, inf);
    std::vector<double> curr(m + 1, inf);
    prev[0] = 0.0;
    for (std::size_t i = 1; i <= n; ++i) {
        std::fill(curr.begin(), curr.end(), inf);
        const std::size_t j_lo = i > width ? i - width : 1;
        const std::size_t j_hi = std::min(m, i + width);
        for (std::size_t j = std::max<std::size_t>(j_lo, 1); j <= j_hi; ++j) {
            const double cost = std::abs(a[i - 1] - b[j - 1]);
            curr[j] = cost + std::min({prev[j], curr[j - 1], prev[j - 1]});
        }
        std::swap(prev, curr);
    }
    return prev[m];
}

std::vector<double> resample_linear(std::span<const double> x, std::size_t length) {
    if (x.empty() || length == 0) throw ValidationError("cannot resample an empty sequence");
    if (length == x.size()) return {x.begin(), x.end()};
    std::vector<double> out(length);
    if (x.size() == 1 || length == 1) {
        std::fill(out.begin(), out.end(), x.front());
        return out;
    }
    const double scale = static_cast<double>(x.size() - 1) / static_cast<double>(length - 1);
    for (std::size_t i = 0; i < length; ++i) {
        const double pos = static_cast<double>(i) * scale;
        const auto k = std::min(static_cast<std::size_t>(pos), x.size() - 2);
        const double frac = pos - static_cast<double>(k);
        out[i] = x[k] + frac * (x[k + 1] - x[k]);
    }
    return out;
}

double euclidean_distance(std::span<const double> a, std::span<const double> b) {
    if (a.empty() || b.empty()) throw ValidationError("euclidean distance needs non-empty sequences");
    const std::size_t len = std::max(a.size(), b.size());
    const auto ra = resample_linear(a, len);
    const auto rb = resample_linear(b, len);
    double sum = 0.0;
    for (std::size_t i = 0; i < len; ++i) sum += (ra[i] - rb[i]) * (ra[i] - rb[i]);
    return std::sqrt(sum);
}

double distance(Metric metric, std::span<const double> a, std::span<const double> b) {
    return metric == Metric::dtw ? dtw_distance(a, b) : euclidean_distance(a, b);
}

DistanceMatrix distance_matrix(std::span<const LabeledSequence> sequences, Metric metric) {
    DistanceMatrix dm;
    dm.metric = metric;
    std::set<std::string> seen;
    for (const auto& s : sequences) {
        if (!seen.insert(s.id).second) throw ValidationError("duplicate sequence id '" + s.id + "'");
        dm.labels.push_back(s.id);
    }
    const std::size_t n = sequences.size();
    dm.entries.assign(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const double d = distance(metric, sequences[i].values, sequences[j].values);
            dm.entries[i * n + j] = d;
            dm.entries[j * n + i] = d;
        }
    }
    return dm;
}

Classification classify_nearest(std::span<const LabeledSequence> queries,
                                std::span<const LabeledSequence> references, Metric metric) {
    if (references.empty()) throw ValidationError("reference set is empty");

    std::vector<LabeledSequence> all(references.begin(), references.end());
    all.insert(all.end(), queries.begin(), queries.end());

    Classification result;
    result.distances = distance_matrix(all, metric);
    const std::size_t r = references.size();
    for (std::size_t q = 0; q < queries.size(); ++q) {
        std::size_t best = 0;
        for (std::size_t k = 1; k < r; ++k) {
            if (result.distances.at(r + q, k) < result.distances.at(r + q, best)) best = k;
        }
        result.nearest.push_back(best);
        result.nearest_distance.push_back(result.distances.at(r + q, best));
        result.labels.push_back(references[best].label);
    }
    return result;
}

}  // namespace softcircuit::biosignal
