#pragma once

// Smart-label cold-chain monitor.
//
// The label stays SAFE (green LED) while the product is kept cold. Once the
// temperature has been strictly above the threshold for a contiguous
// `latch_duration_s`, the label latches UNSAFE (red LED) and never returns to
// SAFE, even after the product is cooled again.
//
// Temperatures are stored quantized to integer milli-degrees so the telemetry
// round trip is exact.

#include "softcircuit/error.hpp"

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace softcircuit::coldchain {

struct TemperatureSample {
    std::int64_t epoch_s = 0;
    double temp_c = 0.0;

    friend bool operator==(const TemperatureSample&, const TemperatureSample&) = default;
};

struct ColdChainConfig {
    double threshold_c = 5.0;
    std::int64_t latch_duration_s = 3600;
    std::int64_t max_gap_s = 600;

    void validate() const;

    friend bool operator==(const ColdChainConfig&, const ColdChainConfig&) = default;
};

enum class Status { safe, unsafe_latched };

[[nodiscard]] std::string_view to_string(Status status) noexcept;

struct ColdChainState {
    Status status = Status::safe;
    /// Epoch of the first sample of the ongoing above-threshold run (SAFE only).
    std::optional<std::int64_t> excursion_start;
    std::optional<TemperatureSample> last_sample;
    /// Epoch of the sample that tripped the latch, when known.
    std::optional<std::int64_t> latched_at;
    std::vector<TemperatureSample> history;
};

struct LedOutputs {
    bool green = false;
    bool red = false;

    friend bool operator==(const LedOutputs&, const LedOutputs&) = default;
};

/// Temperature rounded to the nearest milli-degree. Throws for non-finite input.
[[nodiscard]] std::int64_t to_milli_c(double temp_c);

/// Applies one sample in place. Strong guarantee: on a non-increasing epoch or
/// non-finite temperature it throws ValidationError and leaves `state` as is.
void apply(ColdChainState& state, const TemperatureSample& sample, const ColdChainConfig& config);

[[nodiscard]] ColdChainState update(ColdChainState state, const TemperatureSample& sample,
                                    const ColdChainConfig& config);

[[nodiscard]] LedOutputs led_outputs(const ColdChainState& state) noexcept;

/// Sample rejected by run_trace; `index` is its 0-based position in the input.
class SampleError : public ValidationError {
public:
    SampleError(std::size_t index, const std::string& what)
        : ValidationError("sample " + std::to_string(index) + ": " + what), index_(index) {}

    [[nodiscard]] std::size_t index() const noexcept { return index_; }

private:
    std::size_t index_;
};

struct TraceResult {
    ColdChainState state;
    std::vector<Status> timeline;  // status after each input sample
};

[[nodiscard]] TraceResult run_trace(std::span<const TemperatureSample> samples,
                                    const ColdChainConfig& config);
[[nodiscard]] TraceResult run_trace(ColdChainState initial, std::span<const TemperatureSample> samples,
                                    const ColdChainConfig& config);

// Telemetry read-out. UTF-8, '\n'-terminated lines:
//
//   SMARTLABEL v1
//   status=SAFE            (or status=UNSAFE)
//   <epoch_s>,<temp_milli_c>
//   ...
inline constexpr std::string_view kTelemetryMagic = "SMARTLABEL v1";

[[nodiscard]] std::string encode_telemetry(const ColdChainState& state);

/// Rebuilds status and history. The transient fields (excursion start, last
/// sample, latch epoch) are re-derived from the history under `config`.
/// Throws ParseError carrying the 1-based line number.
[[nodiscard]] ColdChainState decode_telemetry(std::string_view payload,
                                              const ColdChainConfig& config = {});

/// One history record, `<epoch_s>,<temp_milli_c>` without the newline.
[[nodiscard]] std::string format_record(const TemperatureSample& sample);
[[nodiscard]] TemperatureSample parse_record(std::string_view line, std::size_t line_number);

/// Append-only on-device history. Each record is written as one complete line
/// and flushed before append() returns, so a crash loses at most the line
/// being written.
class HistoryLog {
public:
    explicit HistoryLog(const std::filesystem::path& path);

    void append(const TemperatureSample& sample);

    [[nodiscard]] const std::filesystem::path& path() const noexcept { return path_; }

private:
    std::filesystem::path path_;
    std::ofstream out_;
    std::optional<std::int64_t> last_epoch_;
};

/// Reads a history log. A trailing line without '\n' (torn write) is ignored.
[[nodiscard]] std::vector<TemperatureSample> read_history_log(const std::filesystem::path& path);

}  // namespace softcircuit::coldchain
