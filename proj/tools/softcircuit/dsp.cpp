#include "commands.hpp"

#include "softcircuit/biosignal/classify.hpp"
#include "softcircuit/biosignal/ecg.hpp"
#include "softcircuit/biosignal/envelope.hpp"
#include "softcircuit/biosignal/filter.hpp"
#include "softcircuit/error.hpp"
#include "softcircuit/io/csv.hpp"

#include <fmt/core.h>
#include <nlohmann/json.hpp>

namespace softcircuit::cli {
namespace {

namespace bio = biosignal;

bio::Band band_for(const io::BiosignalConfig& cfg, const std::string& name) {
    if (name == "ecg") return cfg.ecg_band;
    if (name == "emg") return cfg.emg_band;
    throw ValidationError("unknown band '" + name + "' (expected ecg or emg)");
}

bio::SignalRecording load(const std::string& path, const io::BiosignalConfig& cfg, bool infer_rate) {
    auto rec = io::read_signal_csv(path, infer_rate ? std::nullopt : std::optional<double>(cfg.sample_rate_hz));
    rec.gain = cfg.gain;
    return rec;
}

void write_series(const std::filesystem::path& path, std::span<const double> values, double fs) {
    io::CsvTable t{{"t_s", "value"}, {}};
    for (std::size_t k = 0; k < values.size(); ++k) t.rows.push_back({static_cast<double>(k) / fs, values[k]});
    io::write_csv(path, t);
}

/// "label=path" pairs; ids are label plus a running index.
std::vector<bio::LabeledSequence> sequences(const std::vector<std::string>& specs, const std::string& tag,
                                            const io::BiosignalConfig& cfg) {
    std::vector<bio::LabeledSequence> out;
    for (const auto& spec : specs) {
        const auto eq = spec.find('=');
        if (eq == std::string::npos || eq == 0) throw ValidationError("expected label=path, got '" + spec + "'");
        const auto label = spec.substr(0, eq);
        out.push_back({tag + std::to_string(out.size()) + ":" + label, label, load(spec.substr(eq + 1), cfg, true).samples});
    }
    return out;
}

}  // namespace

void add_dsp(CLI::App& app, Runner& selected) {
    auto* cmd = app.add_subcommand("dsp", "Biosignal filtering, envelopes, ECG features and DTW classification");
    cmd->require_subcommand(1);

    struct FilterOpts {
        std::string signal;
        std::string band = "ecg";
        bool infer_rate = false;
    };
    auto fo = std::make_shared<FilterOpts>();
    auto* filter = cmd->add_subcommand("filter", "60 Hz notch + Butterworth band (writes filtered.csv)");
    filter->add_option("--signal", fo->signal, "Signal CSV (t_s,value)")->required();
    filter->add_option("--band", fo->band, "ecg or emg")->check(CLI::IsMember({"ecg", "emg"}));
    filter->add_flag("--infer-rate", fo->infer_rate, "Take the sample rate from the timestamps");
    filter->callback([&selected, fo] {
        selected = [fo](const Context& ctx) {
            const auto& cfg = ctx.config.biosignal;
            const auto rec = load(fo->signal, cfg, fo->infer_rate);
            const auto band = band_for(cfg, fo->band);
            const auto chain = bio::design_chain(band, rec.sample_rate_hz, cfg.notch_hz, cfg.notch_q);
            const auto out = bio::apply_filter(chain, rec.samples);
            const auto path = ctx.out_path("filtered.csv");
            write_series(path, out, rec.sample_rate_hz);
            fmt::print("sections           {} ({:g} Hz notch, {:g}-{:g} Hz band at {:g} Hz)\n", chain.size(),
                       cfg.notch_hz, band.low_hz, band.high_hz, rec.sample_rate_hz);
            fmt::print("wrote              {}\n", path.string());
            return 0;
        };
    });

    struct EnvOpts {
        std::string signal;
        std::optional<std::size_t> window;
        bool infer_rate = false;
    };
    auto eo = std::make_shared<EnvOpts>();
    auto* env = cmd->add_subcommand("envelope", "Sliding RMS envelope (writes envelope.csv)");
    env->add_option("--signal", eo->signal, "Signal CSV (t_s,value)")->required();
    env->add_option("--window", eo->window, "Window in samples (default from config)")->check(CLI::PositiveNumber);
    env->add_flag("--infer-rate", eo->infer_rate, "Take the sample rate from the timestamps");
    env->callback([&selected, eo] {
        selected = [eo](const Context& ctx) {
            const auto& cfg = ctx.config.biosignal;
            const auto rec = load(eo->signal, cfg, eo->infer_rate);
            const auto e = bio::rms_envelope(rec.samples, eo->window.value_or(cfg.envelope_window));
            const auto path = ctx.out_path("envelope.csv");
            write_series(path, e.values, rec.sample_rate_hz);
            fmt::print("window             {} samples\n", e.window_samples);
            fmt::print("wrote              {}\n", path.string());
            return 0;
        };
    });

    struct EcgOpts {
        std::string signal;
        bool filter = false;
        bool infer_rate = false;
    };
    auto ko = std::make_shared<EcgOpts>();
    auto* ecg = cmd->add_subcommand("ecg", "R peaks, RR intervals and heart rate (writes ecg_features.json)");
    ecg->add_option("--signal", ko->signal, "ECG CSV (t_s,value)")->required();
    ecg->add_flag("--filter", ko->filter, "Apply the ECG filter chain first");
    ecg->add_flag("--infer-rate", ko->infer_rate, "Take the sample rate from the timestamps");
    ecg->callback([&selected, ko] {
        selected = [ko](const Context& ctx) {
            const auto& cfg = ctx.config.biosignal;
            auto rec = load(ko->signal, cfg, ko->infer_rate);
            if (ko->filter) {
                rec.samples = bio::apply_filter(
                    bio::design_chain(cfg.ecg_band, rec.sample_rate_hz, cfg.notch_hz, cfg.notch_q), rec.samples);
            }
            const auto features = bio::detect_r_peaks(rec, cfg.peaks);
            if (!features) throw ValidationError("fewer than two R peaks found");
            nlohmann::json j{{"r_peak_indices", features->r_peak_indices},
                             {"rr_intervals_ms", features->rr_intervals_ms},
                             {"heart_rate_bpm", features->heart_rate_bpm}};
            const auto path = ctx.out_path("ecg_features.json");
            io::write_text_file(path, j.dump(2) + "\n");
            fmt::print("r peaks            {}\n", features->r_peak_indices.size());
            fmt::print("heart rate         {:.2f} bpm\n", features->heart_rate_bpm);
            fmt::print("wrote              {}\n", path.string());
            return 0;
        };
    });

    struct ClassifyOpts {
        std::vector<std::string> references;
        std::vector<std::string> queries;
        std::string metric = "dtw";
    };
    auto co = std::make_shared<ClassifyOpts>();
    auto* cls = cmd->add_subcommand("classify", "Nearest-reference labels by DTW or Euclidean distance "
                                                "(writes distance_matrix.csv)");
    cls->add_option("--reference", co->references, "label=path of a reference envelope CSV")->required();
    cls->add_option("--query", co->queries, "label=path of a query envelope CSV")->required();
    cls->add_option("--metric", co->metric, "dtw or euclidean")->check(CLI::IsMember({"dtw", "euclidean"}));
    cls->callback([&selected, co] {
        selected = [co](const Context& ctx) {
            const auto& cfg = ctx.config.biosignal;
            const auto metric = co->metric == "dtw" ? bio::Metric::dtw : bio::Metric::euclidean;
            const auto refs = sequences(co->references, "r", cfg);
            const auto queries = sequences(co->queries, "q", cfg);
            const auto result = bio::classify_nearest(queries, refs, metric);

            auto all = refs;
            all.insert(all.end(), queries.begin(), queries.end());
            const auto m = bio::distance_matrix(all, metric);
            std::string csv = "id";
            for (const auto& l : m.labels) csv += "," + l;
            csv += "\n";
            for (std::size_t i = 0; i < m.size(); ++i) {
                csv += m.labels[i];
                for (std::size_t j = 0; j < m.size(); ++j) csv += "," + io::format_double(m.at(i, j));
                csv += "\n";
            }
            const auto path = ctx.out_path("distance_matrix.csv");
            io::write_text_file(path, csv);

            fmt::print("{:<20} {:<20} {:>12}\n", "query", "nearest", "distance");
            for (std::size_t q = 0; q < queries.size(); ++q) {
                fmt::print("{:<20} {:<20} {:>12.4f}\n", queries[q].id, refs[result.nearest[q]].id,
                           result.nearest_distance[q]);
            }
            fmt::print("wrote              {}\n", path.string());
            return 0;
        };
    });
}

}  // namespace softcircuit::cli
