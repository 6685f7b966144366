#include "softcircuit/io/config.hpp"

#include "softcircuit/io/csv.hpp"

#include <cerrno>
#include <charconv>
#include <cstdlib>
#include <initializer_list>
#include <numeric>
#include <set>
#include <type_traits>

namespace softcircuit::io {

using nlohmann::json;

namespace {

// Parsed text yields number_unsigned for non-negative literals, but documents
// built in code may hold the same value as a signed integer.
bool non_negative_integer(const nlohmann::json& v) {
    return v.is_number_unsigned() || (v.is_number_integer() && v.get<std::int64_t>() >= 0);
}

/// Reads one JSON object, tracking which keys were consumed.
class Block {
public:
    Block(const json& value, std::string pointer) : value_(value), pointer_(std::move(pointer)) {
        if (!value_.is_object()) throw ConfigError(pointer_, "expected an object");
    }

    void allow_only(std::initializer_list<const char*> keys) const {
        const std::set<std::string> allowed(keys.begin(), keys.end());
        for (const auto& [key, _] : value_.items()) {
            if (!allowed.contains(key)) throw ConfigError(child(key), "unknown key '" + key + "'");
        }
    }

    [[nodiscard]] bool has(const char* key) const { return value_.contains(key); }
    [[nodiscard]] std::string child(const std::string& key) const { return pointer_ + "/" + key; }
    [[nodiscard]] const json& at(const char* key) const { return value_.at(key); }

    void read(const char* key, double& out) const {
        if (!has(key)) return;
        const auto& v = at(key);
        if (!v.is_number()) throw ConfigError(child(key), "expected a number");
        out = v.get<double>();
    }

    template <typename Int>
        requires std::is_integral_v<Int>
    void read(const char* key, Int& out) const {
        if (!has(key)) return;
        const auto& v = at(key);
        if (!v.is_number_integer()) throw ConfigError(child(key), "expected an integer");
        if constexpr (std::is_unsigned_v<Int>) {
            if (!non_negative_integer(v)) throw ConfigError(child(key), "expected a non-negative integer");
            out = static_cast<Int>(v.get<std::uint64_t>());
        } else {
            out = static_cast<Int>(v.get<std::int64_t>());
        }
    }

    void read(const char* key, std::string& out) const {
        if (!has(key)) return;
        const auto& v = at(key);
        if (!v.is_string()) throw ConfigError(child(key), "expected a string");
        out = v.get<std::string>();
    }

    void read(const char* key, biosignal::Band& out) const {
        if (!has(key)) return;
        const auto& v = at(key);
        if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number()) {
            throw ConfigError(child(key), "expected [low_hz, high_hz]");
        }
        out = {v[0].get<double>(), v[1].get<double>()};
    }

    [[nodiscard]] const std::string& pointer() const noexcept { return pointer_; }

private:
    const json& value_;
    std::string pointer_;
};

/// Runs a module validator, re-labelling its error with the block pointer.
template <typename F>
void validated(const std::string& pointer, F&& check) {
    try {
        check();
    } catch (const ConfigError&) {
        throw;
    } catch (const ValidationError& e) {
        throw ConfigError(pointer, e.what());
    }
}

electromech::DamageModelParams preset(InkKind ink) {
    return ink == InkKind::ag_wpu ? electromech::DamageModelParams::ag_wpu()
                                  : electromech::DamageModelParams::biphasic();
}

ElectromechConfig parse_electromech(const json& j) {
    const Block b(j, "/electromech");
    b.allow_only({"rows", "cols", "occupancy", "ag_wt_fraction", "ink", "damage", "seeds",
                  "strain_grid", "failure_threshold"});
    ElectromechConfig c;
    b.read("rows", c.rows);
    b.read("cols", c.cols);
    if (b.has("occupancy") && b.has("ag_wt_fraction")) {
        throw ConfigError(b.pointer(), "give either occupancy or ag_wt_fraction, not both");
    }
    if (b.has("occupancy")) {
        double p = 0.0;
        b.read("occupancy", p);
        c.occupancy = p;
    }
    b.read("ag_wt_fraction", c.ag_wt_fraction);

    std::string ink = "ag_wpu";
    b.read("ink", ink);
    if (ink == "ag_wpu") {
        c.ink = InkKind::ag_wpu;
    } else if (ink == "biphasic") {
        c.ink = InkKind::biphasic;
    } else {
        throw ConfigError(b.child("ink"), "expected \"ag_wpu\" or \"biphasic\"");
    }
    c.damage = preset(c.ink);
    if (b.has("damage")) {
        const Block d(b.at("damage"), b.child("damage"));
        d.allow_only({"break_strain_median", "break_strain_shape", "lm_bridge_fraction",
                      "lm_break_strain_median", "lm_break_strain_shape"});
        d.read("break_strain_median", c.damage.break_strain_median);
        d.read("break_strain_shape", c.damage.break_strain_shape);
        d.read("lm_bridge_fraction", c.damage.lm_bridge_fraction);
        d.read("lm_break_strain_median", c.damage.lm_break_strain_median);
        d.read("lm_break_strain_shape", c.damage.lm_break_strain_shape);
        validated(d.pointer(), [&] { c.damage.validate(); });
    }

    if (b.has("seeds")) {
        const auto& s = b.at("seeds");
        if (!s.is_array() || s.empty()) throw ConfigError(b.child("seeds"), "expected a non-empty array");
        c.seeds.clear();
        for (std::size_t i = 0; i < s.size(); ++i) {
            if (!non_negative_integer(s[i])) {
                throw ConfigError(b.child("seeds") + "/" + std::to_string(i),
                                  "expected a non-negative integer");
            }
            c.seeds.push_back(s[i].get<std::uint64_t>());
        }
    }
    if (b.has("strain_grid")) {
        const Block g(b.at("strain_grid"), b.child("strain_grid"));
        g.allow_only({"stop", "step"});
        g.read("stop", c.strain_grid.stop);
        g.read("step", c.strain_grid.step);
    }
    b.read("failure_threshold", c.failure_threshold);

    validated(b.pointer(), [&] {
        if (c.rows < 2 || c.cols < 2) throw ValidationError("lattice must be at least 2x2");
        if (c.rows > 512 || c.cols > 512) throw ValidationError("lattice larger than 512x512");
        const double p = c.effective_occupancy();
        if (!(p >= 0.0 && p <= 1.0)) throw ValidationError("occupancy must lie in [0, 1]");
        if (!(c.strain_grid.step > 0.0) || !(c.strain_grid.stop > 0.0)) {
            throw ValidationError("strain_grid stop and step must be > 0");
        }
        if (c.strain_grid.stop / c.strain_grid.step > 1e6) throw ValidationError("strain grid too fine");
        if (!(c.failure_threshold > 1.0)) throw ValidationError("failure_threshold must exceed 1");
    });
    return c;
}

coldchain::ColdChainConfig parse_coldchain(const json& j) {
    const Block b(j, "/coldchain");
    b.allow_only({"threshold_c", "latch_duration_s", "max_gap_s"});
    coldchain::ColdChainConfig c;
    b.read("threshold_c", c.threshold_c);
    b.read("latch_duration_s", c.latch_duration_s);
    b.read("max_gap_s", c.max_gap_s);
    validated(b.pointer(), [&] { c.validate(); });
    return c;
}

ThermistorConfig parse_thermistor(const json& j) {
    const Block b(j, "/thermistor");
    b.allow_only({"r25_ohm", "beta_k", "r_fixed_ohm", "vcc_v", "adc_bits", "thermistor_position",
                  "smoothing_window"});
    ThermistorConfig c;
    b.read("r25_ohm", c.ntc.r25_ohm);
    b.read("beta_k", c.ntc.beta_k);
    b.read("r_fixed_ohm", c.divider.r_fixed_ohm);
    b.read("vcc_v", c.divider.vcc_v);
    b.read("adc_bits", c.divider.adc_bits);
    std::string position(thermistor::to_string(c.divider.thermistor_position));
    b.read("thermistor_position", position);
    if (position == "low-side") {
        c.divider.thermistor_position = thermistor::Position::low_side;
    } else if (position == "high-side") {
        c.divider.thermistor_position = thermistor::Position::high_side;
    } else {
        throw ConfigError(b.child("thermistor_position"), "expected \"low-side\" or \"high-side\"");
    }
    b.read("smoothing_window", c.smoothing_window);
    validated(b.pointer(), [&] {
        c.ntc.validate();
        c.divider.validate();
        if (c.smoothing_window < 1) throw ValidationError("smoothing_window must be >= 1");
    });
    return c;
}

BiosignalConfig parse_biosignal(const json& j) {
    const Block b(j, "/biosignal");
    b.allow_only({"sample_rate_hz", "gain", "notch_hz", "notch_q", "ecg_band", "emg_band",
                  "envelope_window", "peaks"});
    BiosignalConfig c;
    b.read("sample_rate_hz", c.sample_rate_hz);
    b.read("gain", c.gain);
    b.read("notch_hz", c.notch_hz);
    b.read("notch_q", c.notch_q);
    b.read("ecg_band", c.ecg_band);
    b.read("emg_band", c.emg_band);
    b.read("envelope_window", c.envelope_window);
    if (b.has("peaks")) {
        const Block p(b.at("peaks"), b.child("peaks"));
        p.allow_only({"threshold_fraction", "rolling_window_s", "refractory_ms"});
        p.read("threshold_fraction", c.peaks.threshold_fraction);
        p.read("rolling_window_s", c.peaks.rolling_window_s);
        p.read("refractory_ms", c.peaks.refractory_ms);
    }
    validated(b.pointer(), [&] {
        if (!(c.sample_rate_hz > 0.0)) throw ValidationError("sample_rate_hz must be > 0");
        if (!(c.gain > 0.0)) throw ValidationError("gain must be > 0");
        const double nyquist = 0.5 * c.sample_rate_hz;
        for (const auto& band : {c.ecg_band, c.emg_band}) {
            if (!(band.low_hz > 0.0 && band.low_hz < band.high_hz && band.high_hz < nyquist)) {
                throw ValidationError("bands need 0 < low < high < Nyquist");
            }
        }
        if (!(c.notch_hz > 0.0 && c.notch_hz < nyquist)) {
            throw ValidationError("notch_hz must lie below Nyquist");
        }
        if (!(c.notch_q > 0.0)) throw ValidationError("notch_q must be > 0");
        if (c.envelope_window < 1) throw ValidationError("envelope_window must be >= 1");
        if (!(c.peaks.threshold_fraction > 0.0 && c.peaks.threshold_fraction <= 1.0)) {
            throw ValidationError("peaks.threshold_fraction must lie in (0, 1]");
        }
        if (!(c.peaks.rolling_window_s > 0.0) || !(c.peaks.refractory_ms >= 0.0)) {
            throw ValidationError("peaks windows must be positive");
        }
    });
    return c;
}

RecycleConfig parse_recycle(const json& j) {
    const Block b(j, "/recycle");
    b.allow_only({"wpu_solid_fraction"});
    RecycleConfig c;
    b.read("wpu_solid_fraction", c.wpu_solid_fraction);
    validated(b.pointer(), [&] {
        if (!(c.wpu_solid_fraction >= 0.0 && c.wpu_solid_fraction <= 1.0)) {
            throw ValidationError("wpu_solid_fraction must lie in [0, 1]");
        }
    });
    return c;
}

}  // namespace

ElectromechConfig::ElectromechConfig() : seeds(20) {
    std::iota(seeds.begin(), seeds.end(), std::uint64_t{1});
}

double ElectromechConfig::effective_occupancy() const {
    return occupancy ? *occupancy : electromech::occupancy_from_ag_weight(ag_wt_fraction);
}

RunConfig config_from_json(const json& doc) {
    const Block root(doc, "");
    root.allow_only({"seed", "out_dir", "electromech", "coldchain", "thermistor", "biosignal", "recycle"});
    RunConfig c;
    root.read("seed", c.seed);
    std::string out_dir = c.out_dir.string();
    root.read("out_dir", out_dir);
    c.out_dir = out_dir;
    if (root.has("electromech")) c.electromech = parse_electromech(root.at("electromech"));
    if (root.has("coldchain")) c.coldchain = parse_coldchain(root.at("coldchain"));
    if (root.has("thermistor")) c.thermistor = parse_thermistor(root.at("thermistor"));
    if (root.has("biosignal")) c.biosignal = parse_biosignal(root.at("biosignal"));
    if (root.has("recycle")) c.recycle = parse_recycle(root.at("recycle"));
    return c;
}

json config_to_json(const RunConfig& c) {
    const auto& e = c.electromech;
    json em = {
        {"rows", e.rows},
        {"cols", e.cols},
        {"ink", e.ink == InkKind::ag_wpu ? "ag_wpu" : "biphasic"},
        {"damage",
         {{"break_strain_median", e.damage.break_strain_median},
          {"break_strain_shape", e.damage.break_strain_shape},
          {"lm_bridge_fraction", e.damage.lm_bridge_fraction},
          {"lm_break_strain_median", e.damage.lm_break_strain_median},
          {"lm_break_strain_shape", e.damage.lm_break_strain_shape}}},
        {"seeds", e.seeds},
        {"strain_grid", {{"stop", e.strain_grid.stop}, {"step", e.strain_grid.step}}},
        {"failure_threshold", e.failure_threshold},
    };
    if (e.occupancy) {
        em["occupancy"] = *e.occupancy;
    } else {
        em["ag_wt_fraction"] = e.ag_wt_fraction;
    }

    const auto& t = c.thermistor;
    const auto& b = c.biosignal;
    return {
        {"seed", c.seed},
        {"out_dir", c.out_dir.string()},
        {"electromech", em},
        {"coldchain",
         {{"threshold_c", c.coldchain.threshold_c},
          {"latch_duration_s", c.coldchain.latch_duration_s},
          {"max_gap_s", c.coldchain.max_gap_s}}},
        {"thermistor",
         {{"r25_ohm", t.ntc.r25_ohm},
          {"beta_k", t.ntc.beta_k},
          {"r_fixed_ohm", t.divider.r_fixed_ohm},
          {"vcc_v", t.divider.vcc_v},
          {"adc_bits", t.divider.adc_bits},
          {"thermistor_position", std::string(thermistor::to_string(t.divider.thermistor_position))},
          {"smoothing_window", t.smoothing_window}}},
        {"biosignal",
         {{"sample_rate_hz", b.sample_rate_hz},
          {"gain", b.gain},
          {"notch_hz", b.notch_hz},
          {"notch_q", b.notch_q},
          {"ecg_band", {b.ecg_band.low_hz, b.ecg_band.high_hz}},
          {"emg_band", {b.emg_band.low_hz, b.emg_band.high_hz}},
          {"envelope_window", b.envelope_window},
          {"peaks",
           {{"threshold_fraction", b.peaks.threshold_fraction},
            {"rolling_window_s", b.peaks.rolling_window_s},
            {"refractory_ms", b.peaks.refractory_ms}}}}},
        {"recycle", {{"wpu_solid_fraction", c.recycle.wpu_solid_fraction}}},
    };
}

RunConfig parse_config(const std::filesystem::path& path) {
    const std::string text = read_text_file(path);
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError("", std::string("invalid JSON: ") + e.what());
    }
    return config_from_json(doc);
}

void apply_seed_override(RunConfig& config) {
    const char* value = std::getenv(kSeedEnvVar);
    if (value == nullptr || *value == '\0') return;
    std::uint64_t seed = 0;
    const std::string_view text(value);
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), seed);
    if (ec != std::errc{} || ptr != text.data() + text.size()) {
        throw ConfigError("/seed", std::string(kSeedEnvVar) + " is not an unsigned integer");
    }
    config.seed = seed;
}

}  // namespace softcircuit::io
