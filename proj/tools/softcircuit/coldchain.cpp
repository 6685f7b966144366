#include "commands.hpp"

#include "softcircuit/coldchain.hpp"
#include "softcircuit/io/csv.hpp"

#include <fmt/core.h>
#include <nlohmann/json.hpp>

namespace softcircuit::cli {
namespace {

namespace cc = coldchain;

nlohmann::json state_json(const cc::ColdChainState& s) {
    nlohmann::json j{{"status", std::string(cc::to_string(s.status))}, {"samples", s.history.size()}};
    j["excursion_start"] = s.excursion_start ? nlohmann::json(*s.excursion_start) : nlohmann::json();
    j["latched_at"] = s.latched_at ? nlohmann::json(*s.latched_at) : nlohmann::json();
    if (s.last_sample) j["last_sample"] = {{"epoch_s", s.last_sample->epoch_s}, {"temp_c", s.last_sample->temp_c}};
    const auto led = cc::led_outputs(s);
    j["led"] = {{"green", led.green}, {"red", led.red}};
    return j;
}

void print_state(const cc::ColdChainState& s) {
    const auto led = cc::led_outputs(s);
    fmt::print("status             {}\n", cc::to_string(s.status));
    fmt::print("leds               green={} red={}\n", led.green ? "on" : "off", led.red ? "on" : "off");
    if (s.latched_at) fmt::print("latched at         {} s\n", *s.latched_at);
    fmt::print("samples            {}\n", s.history.size());
}

}  // namespace

void add_coldchain(CLI::App& app, Runner& selected) {
    auto* cmd = app.add_subcommand("coldchain", "Latched temperature-excursion label");
    cmd->require_subcommand(1);

    struct RunOpts {
        std::string samples;
        std::string log;
    };
    auto run_opts = std::make_shared<RunOpts>();
    auto* run = cmd->add_subcommand("run", "Feed a temperature CSV (epoch_s,temp_c) through the label");
    run->add_option("--samples", run_opts->samples, "Temperature CSV")->required();
    run->add_option("--log", run_opts->log, "Append accepted samples to this history log");
    run->callback([&selected, run_opts] {
        selected = [run_opts](const Context& ctx) {
            const auto& config = ctx.config.coldchain;
            const auto samples = io::read_temperature_csv(run_opts->samples);
            cc::ColdChainState initial;
            if (!run_opts->log.empty() && std::filesystem::exists(run_opts->log)) {
                // Resume from the persisted history so the latch survives restarts.
                initial = cc::run_trace(cc::read_history_log(run_opts->log), config).state;
            }
            const auto result = cc::run_trace(initial, samples, config);
            if (!run_opts->log.empty()) {
                cc::HistoryLog log(run_opts->log);
                for (const auto& s : samples) log.append(s);
            }

            io::CsvTable timeline{{"epoch_s", "temp_c", "latched"}, {}};
            for (std::size_t i = 0; i < samples.size(); ++i) {
                timeline.rows.push_back({static_cast<double>(samples[i].epoch_s),
                                         static_cast<double>(cc::to_milli_c(samples[i].temp_c)) / 1000.0,
                                         result.timeline[i] == cc::Status::unsafe_latched ? 1.0 : 0.0});
            }
            const auto timeline_path = ctx.out_path("coldchain_timeline.csv");
            io::write_csv(timeline_path, timeline);
            const auto telemetry_path = ctx.out_path("telemetry.txt");
            io::write_text_file(telemetry_path, cc::encode_telemetry(result.state));

            print_state(result.state);
            fmt::print("wrote              {}, {}\n", timeline_path.string(), telemetry_path.string());
            return 0;
        };
    });

    auto payload = std::make_shared<std::string>();
    auto* decode = cmd->add_subcommand("decode", "Decode a telemetry payload read from a label");
    decode->add_option("--payload", *payload, "Telemetry file")->required();
    decode->callback([&selected, payload] {
        selected = [payload](const Context& ctx) {
            const auto state = cc::decode_telemetry(io::read_text_file(*payload), ctx.config.coldchain);
            fmt::print("{}\n", state_json(state).dump(2));
            return 0;
        };
    });
}

}  // namespace softcircuit::cli
