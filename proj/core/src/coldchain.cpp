#include "softcircuit/coldchain.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

namespace softcircuit::coldchain {

void ColdChainConfig::validate() const {
    if (!std::isfinite(threshold_c)) throw ValidationError("threshold_c must be finite");
    if (latch_duration_s <= 0) throw ValidationError("latch_duration_s must be > 0");
    if (max_gap_s <= 0) throw ValidationError("max_gap_s must be > 0");
}

std::string_view to_string(Status status) noexcept {
    return status == Status::safe ? "SAFE" : "UNSAFE";
}

std::int64_t to_milli_c(double temp_c) {
    if (!std::isfinite(temp_c) || std::abs(temp_c) > 1e12) {
        throw ValidationError("temperature must be finite");
    }
    return std::llround(temp_c * 1000.0);
}

void apply(ColdChainState& state, const TemperatureSample& sample, const ColdChainConfig& config) {
    if (sample.epoch_s < 0) throw ValidationError("epoch_s must be non-negative");
    if (state.last_sample && sample.epoch_s <= state.last_sample->epoch_s) {
        throw ValidationError("epoch " + std::to_string(sample.epoch_s) +
                              " does not follow " + std::to_string(state.last_sample->epoch_s));
    }
    const TemperatureSample stored{sample.epoch_s,
                                   static_cast<double>(to_milli_c(sample.temp_c)) / 1000.0};
    // Allocate up front so the push_back below cannot throw after the state
    // has been modified. Growth stays geometric.
    if (state.history.size() == state.history.capacity()) {
        state.history.reserve(std::max<std::size_t>(16, 2 * state.history.capacity()));
    }

    if (state.status == Status::safe) {
        if (stored.temp_c > config.threshold_c) {
            // A hot sample after a gap longer than max_gap_s still extends the
            // running excursion: the product is assumed to have stayed warm.
            const std::int64_t start = state.excursion_start.value_or(stored.epoch_s);
            if (stored.epoch_s - start >= config.latch_duration_s) {
                state.status = Status::unsafe_latched;
                state.latched_at = stored.epoch_s;
                state.excursion_start.reset();
            } else {
                state.excursion_start = start;
            }
        } else {
            // Any sample at or below threshold ends the excursion, with or
            // without a preceding gap.
            state.excursion_start.reset();
        }
    }
    state.last_sample = stored;
    state.history.push_back(stored);
}

ColdChainState update(ColdChainState state, const TemperatureSample& sample,
                      const ColdChainConfig& config) {
    apply(state, sample, config);
    return state;
}

LedOutputs led_outputs(const ColdChainState& state) noexcept {
    const bool safe = state.status == Status::safe;
    return {.green = safe, .red = !safe};
}

TraceResult run_trace(ColdChainState initial, std::span<const TemperatureSample> samples,
                      const ColdChainConfig& config) {
    config.validate();
    TraceResult result{std::move(initial), {}};
    result.timeline.reserve(samples.size());
    for (std::size_t i = 0; i < samples.size(); ++i) {
        try {
            apply(result.state, samples[i], config);
        } catch (const ValidationError& e) {
            throw SampleError(i, e.what());
        }
        result.timeline.push_back(result.state.status);
    }
    return result;
}

TraceResult run_trace(std::span<const TemperatureSample> samples, const ColdChainConfig& config) {
    return run_trace(ColdChainState{}, samples, config);
}

}  // namespace softcircuit::coldchain
