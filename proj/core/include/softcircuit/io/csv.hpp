#pragma once

// Plain numeric CSV with a single header row and '\n' line endings.
// Doubles are written in shortest round-trip form, so write-then-read is
// lossless.

#include "softcircuit/biosignal/signal.hpp"
#include "softcircuit/coldchain.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace softcircuit::io {

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;
};

[[nodiscard]] std::string format_double(double value);

/// Throws ParseError (1-based line) on ragged rows or non-numeric fields.
[[nodiscard]] CsvTable parse_csv(std::string_view text);
[[nodiscard]] std::string to_csv(const CsvTable& table);

[[nodiscard]] std::string read_text_file(const std::filesystem::path& path);
/// Writes atomically enough for our purposes: truncate, write, check.
void write_text_file(const std::filesystem::path& path, std::string_view content);

[[nodiscard]] CsvTable read_csv(const std::filesystem::path& path);
void write_csv(const std::filesystem::path& path, const CsvTable& table);

/// Relative drift allowed in elapsed time before a series counts as
/// non-uniformly sampled.
inline constexpr double kUniformityTolerance = 1e-6;

/// `t_s,value` series. Timestamps must increase strictly and satisfy
/// |(t_k - t_0) * fs - k| <= 1e-6 * k. Without `sample_rate_hz` the rate is
/// inferred from the overall span.
[[nodiscard]] biosignal::SignalRecording parse_signal_csv(std::string_view text,
                                                          std::optional<double> sample_rate_hz = {});
[[nodiscard]] biosignal::SignalRecording read_signal_csv(const std::filesystem::path& path,
                                                         std::optional<double> sample_rate_hz = {});
[[nodiscard]] CsvTable signal_table(const biosignal::SignalRecording& signal);

/// `epoch_s,temp_c` series with strictly increasing integer epochs.
[[nodiscard]] std::vector<coldchain::TemperatureSample> parse_temperature_csv(std::string_view text);
[[nodiscard]] std::vector<coldchain::TemperatureSample> read_temperature_csv(
    const std::filesystem::path& path);

}  // namespace softcircuit::io
