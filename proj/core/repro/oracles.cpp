#include "oracles.hpp"

#include "softcircuit/biosignal/envelope.hpp"
#include "softcircuit/biosignal/filter.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>

namespace softcircuit::oracle {

std::optional<double> dense_conductance(const electromech::ResistorGraph& graph) {
    const std::size_t n = graph.node_count;
    std::vector<int> kind(n, 0);  // 0 interior, 1 source, 2 sink
    for (auto s : graph.source) kind[s] = 1;
    for (auto t : graph.sink) kind[t] = 2;

    std::vector<std::vector<std::size_t>> adj(n);
    for (const auto& e : graph.edges) {
        adj[e.a].push_back(e.b);
        adj[e.b].push_back(e.a);
    }
    auto reach = [&](int from_kind) {
        std::vector<char> seen(n, 0);
        std::queue<std::size_t> q;
        for (std::size_t i = 0; i < n; ++i) {
            if (kind[i] == from_kind) {
                seen[i] = 1;
                q.push(i);
            }
        }
        while (!q.empty()) {
            const auto u = q.front();
            q.pop();
            for (auto v : adj[u]) {
                if (!seen[v]) {
                    seen[v] = 1;
                    q.push(v);
                }
            }
        }
        return seen;
    };
    const auto from_source = reach(1);
    bool connected = false;
    for (std::size_t i = 0; i < n; ++i) connected |= kind[i] == 2 && from_source[i];
    if (!connected) return std::nullopt;
    const auto from_sink = reach(2);

    // A x = b over all nodes.
    std::vector<std::vector<double>> a(n, std::vector<double>(n, 0.0));
    std::vector<double> b(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        if (kind[i] != 0 || (!from_source[i] && !from_sink[i])) {
            a[i][i] = 1.0;
            b[i] = kind[i] == 1 ? 1.0 : 0.0;
        }
    }
    for (const auto& e : graph.edges) {
        for (auto [u, v] : {std::pair{e.a, e.b}, std::pair{e.b, e.a}}) {
            if (kind[u] != 0 || (!from_source[u] && !from_sink[u])) continue;
            a[u][u] += e.conductance;
            a[u][v] -= e.conductance;
        }
    }
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        for (std::size_t r = col + 1; r < n; ++r) {
            if (std::abs(a[r][col]) > std::abs(a[pivot][col])) pivot = r;
        }
        std::swap(a[col], a[pivot]);
        std::swap(b[col], b[pivot]);
        for (std::size_t r = col + 1; r < n; ++r) {
            const double f = a[r][col] / a[col][col];
            if (f == 0.0) continue;
            for (std::size_t c = col; c < n; ++c) a[r][c] -= f * a[col][c];
            b[r] -= f * b[col];
        }
    }
    std::vector<double> v(n, 0.0);
    for (std::size_t i = n; i-- > 0;) {
        double s = b[i];
        for (std::size_t c = i + 1; c < n; ++c) s -= a[i][c] * v[c];
        v[i] = s / a[i][i];
    }

    double current = 0.0;
    for (const auto& e : graph.edges) {
        if (kind[e.a] == 1 && kind[e.b] != 1) current += e.conductance * (v[e.a] - v[e.b]);
        if (kind[e.b] == 1 && kind[e.a] != 1) current += e.conductance * (v[e.b] - v[e.a]);
    }
    return current;
}

std::vector<double> brute_moving_average(std::span<const double> x, std::size_t window) {
    std::vector<double> out;
    for (std::size_t i = 0; i < x.size(); ++i) {
        double sum = 0.0;
        std::size_t count = 0;
        for (std::size_t j = (i + 1 > window ? i + 1 - window : 0); j <= i; ++j, ++count) sum += x[j];
        out.push_back(sum / static_cast<double>(count));
    }
    return out;
}

std::vector<double> brute_rms(std::span<const double> x, std::size_t window) {
    std::vector<double> out;
    for (std::size_t i = 0; i < x.size(); ++i) {
        double sum = 0.0;
        std::size_t count = 0;
        for (std::size_t j = (i + 1 > window ? i + 1 - window : 0); j <= i; ++j, ++count) {
            sum += x[j] * x[j];
        }
        out.push_back(std::sqrt(sum / static_cast<double>(count)));
    }
    return out;
}

double dtw_table(std::span<const double> a, std::span<const double> b) {
    const double inf = std::numeric_limits<double>::infinity();
    std::vector<std::vector<double>> d(a.size() + 1, std::vector<double>(b.size() + 1, inf));
    d[0][0] = 0.0;
    for (std::size_t i = 1; i <= a.size(); ++i) {
        for (std::size_t j = 1; j <= b.size(); ++j) {
            d[i][j] = std::abs(a[i - 1] - b[j - 1]) +
                      std::min({d[i - 1][j - 1], d[i - 1][j], d[i][j - 1]});
        }
    }
    return d[a.size()][b.size()];
}

std::optional<std::int64_t> first_latch_epoch(std::span<const coldchain::TemperatureSample> samples,
                                              double threshold_c, std::int64_t latch_s) {
    const auto threshold_milli = static_cast<std::int64_t>(std::floor(threshold_c * 1000.0 + 1e-9));
    std::optional<std::int64_t> run_start;
    for (const auto& s : samples) {
        const auto milli = std::llround(s.temp_c * 1000.0);
        if (milli > threshold_milli) {
            if (!run_start) run_start = s.epoch_s;
            if (s.epoch_s - *run_start >= latch_s) return s.epoch_s;
        } else {
            run_start.reset();
        }
    }
    return std::nullopt;
}

std::uint64_t derive_seed(std::uint64_t run_seed, std::uint64_t stream, std::uint64_t index) {
    // splitmix64 finalizer over a combined key
    std::uint64_t z = run_seed * 0x9E3779B97F4A7C15ULL + stream * 0xBF58476D1CE4E5B9ULL + index + 1;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

std::vector<double> impulse_train(double sample_rate_hz, double duration_s, std::span<const double> times_s) {
    const auto n = static_cast<std::size_t>(std::llround(duration_s * sample_rate_hz));
    std::vector<double> x(n, 0.0);
    for (double t : times_s) {
        const auto k = static_cast<std::size_t>(std::llround(t * sample_rate_hz));
        if (k < n) x[k] = 1.0;
    }
    return x;
}

namespace {

constexpr double kGestureRateHz = 250.0;
constexpr double kGestureDurationS = 2.0;
constexpr std::size_t kDecimation = 5;

double bump(double t, double centre, double width) {
    const double u = (t - centre) / width;
    return std::exp(-0.5 * u * u);
}

// Distinct activation patterns: DTW absorbs timing differences, so the
// gestures differ in burst count and level rather than in timing alone.
double activation(int gesture, double t) {
    switch (gesture) {
    case 0: return 1.0 * bump(t, 0.9, 0.15);                              // single strong burst
    case 1: return 0.4 * std::clamp((t - 0.3) / 0.2, 0.0, 1.0) *          // long weak hold
                   std::clamp((1.7 - t) / 0.2, 0.0, 1.0);
    case 2: return 0.8 * (bump(t, 0.55, 0.1) + bump(t, 1.35, 0.1));       // double burst
    default: return 0.6 * (bump(t, 0.4, 0.07) + bump(t, 0.95, 0.07) +     // triple tap
                           bump(t, 1.5, 0.07));
    }
}

std::vector<double> repetition(int gesture, Rng& rng, double snr_db) {
    const auto n = static_cast<std::size_t>(kGestureRateHz * kGestureDurationS);
    const double shift = 0.1 * (2.0 * rng.uniform() - 1.0);
    const double gain = 0.9 + 0.2 * rng.uniform();

    std::vector<double> clean(n);
    double power = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        const double t = static_cast<double>(k) / kGestureRateHz;
        clean[k] = gain * activation(gesture, t - shift) * rng.normal();
        power += clean[k] * clean[k];
    }
    power /= static_cast<double>(n);
    const double noise_sd = std::sqrt(power / std::pow(10.0, snr_db / 10.0));
    for (auto& v : clean) v += noise_sd * rng.normal();

    const auto chain = biosignal::design_chain(biosignal::kEmgBand, kGestureRateHz);
    const auto filtered = biosignal::apply_filter(chain, clean);
    const auto env = biosignal::rms_envelope(filtered, biosignal::kFingerPoseEnvelopeWindow);
    std::vector<double> out;
    for (std::size_t k = 0; k < env.values.size(); k += kDecimation) out.push_back(env.values[k]);
    return out;
}

}  // namespace

GestureSet synthetic_gestures(Rng& rng, double snr_db) {
    GestureSet set;
    for (int g = 0; g < 4; ++g) set.repetition_a.push_back(repetition(g, rng, snr_db));
    for (int g = 0; g < 4; ++g) set.repetition_b.push_back(repetition(g, rng, snr_db));
    return set;
}

}  // namespace softcircuit::oracle
