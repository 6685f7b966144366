#pragma once

// Run configuration: one JSON document with a block per module. Every block
// and key is optional; omitted values take the documented defaults. Unknown
// keys are rejected.

#include "softcircuit/biosignal/ecg.hpp"
#include "softcircuit/biosignal/signal.hpp"
#include "softcircuit/coldchain.hpp"
#include "softcircuit/electromech/percolation.hpp"
#include "softcircuit/error.hpp"
#include "softcircuit/thermistor.hpp"

#include <nlohmann/json.hpp>

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace softcircuit::io {

/// Schema violation; `pointer()` is the JSON pointer of the offending value.
class ConfigError : public ValidationError {
public:
    ConfigError(const std::string& pointer, const std::string& what)
        : ValidationError((pointer.empty() ? std::string("/") : pointer) + ": " + what),
          pointer_(pointer) {}

    [[nodiscard]] const std::string& pointer() const noexcept { return pointer_; }

private:
    std::string pointer_;
};

enum class InkKind { ag_wpu, biphasic };

struct StrainGridSpec {
    double stop = 10.0;
    double step = 0.005;

    friend bool operator==(const StrainGridSpec&, const StrainGridSpec&) = default;
};

struct ElectromechConfig {
    std::size_t rows = 32;
    std::size_t cols = 32;
    /// Exactly one of these drives the occupancy; occupancy wins when set.
    std::optional<double> occupancy;
    double ag_wt_fraction = 0.8918;
    InkKind ink = InkKind::ag_wpu;
    electromech::DamageModelParams damage = electromech::DamageModelParams::ag_wpu();
    std::vector<std::uint64_t> seeds;
    StrainGridSpec strain_grid;
    double failure_threshold = electromech::kDefaultFailureThreshold;

    ElectromechConfig();
    [[nodiscard]] double effective_occupancy() const;
    friend bool operator==(const ElectromechConfig&, const ElectromechConfig&) = default;
};

struct ThermistorConfig {
    thermistor::NtcParams ntc;
    thermistor::DividerConfig divider;
    std::size_t smoothing_window = thermistor::kDefaultSmoothingWindow;

    friend bool operator==(const ThermistorConfig&, const ThermistorConfig&) = default;
};

struct BiosignalConfig {
    double sample_rate_hz = biosignal::kDefaultSampleRateHz;
    double gain = biosignal::kDefaultGain;
    double notch_hz = 60.0;
    double notch_q = 30.0;
    biosignal::Band ecg_band = biosignal::kEcgBand;
    biosignal::Band emg_band = biosignal::kEmgBand;
    std::size_t envelope_window = biosignal::kFingerPoseEnvelopeWindow;
    biosignal::PeakDetectorConfig peaks;

    friend bool operator==(const BiosignalConfig&, const BiosignalConfig&) = default;
};

struct RecycleConfig {
    double wpu_solid_fraction = 0.40;

    friend bool operator==(const RecycleConfig&, const RecycleConfig&) = default;
};

struct RunConfig {
    std::uint64_t seed = 1;
    std::filesystem::path out_dir = "out";
    ElectromechConfig electromech;
    coldchain::ColdChainConfig coldchain;
    ThermistorConfig thermistor;
    BiosignalConfig biosignal;
    RecycleConfig recycle;

    friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

inline constexpr const char* kSeedEnvVar = "SOFTCIRCUIT_SEED";

/// Throws ConfigError on schema violations.
[[nodiscard]] RunConfig config_from_json(const nlohmann::json& doc);
[[nodiscard]] nlohmann::json config_to_json(const RunConfig& config);

/// Throws IoError for an unreadable file, ConfigError for bad JSON or schema.
[[nodiscard]] RunConfig parse_config(const std::filesystem::path& path);

/// Applies SOFTCIRCUIT_SEED when set. Throws ConfigError for a bad value.
void apply_seed_override(RunConfig& config);

}  // namespace softcircuit::io
