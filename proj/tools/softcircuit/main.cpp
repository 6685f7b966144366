#include "commands.hpp"

#include "softcircuit/error.hpp"

#include <fmt/core.h>

#include <cstdio>
#include <optional>

namespace softcircuit::cli {

std::filesystem::path Context::out_path(const std::string& file) const {
    std::error_code ec;
    std::filesystem::create_directories(config.out_dir, ec);
    if (ec) throw IoError("cannot create " + config.out_dir.string() + ": " + ec.message());
    return config.out_dir / file;
}

}  // namespace softcircuit::cli

namespace {

enum Exit : int { kOk = 0, kUsage = 1, kValidation = 2, kIo = 3 };

int run(int argc, char** argv) {
    using namespace softcircuit;

    CLI::App app{"Printable soft-circuit toolkit: strain networks, cold-chain labels, "
                 "thermistor calibration, biosignal DSP and ink recycling ledgers."};
    app.name("softcircuit");
    app.require_subcommand(1);
    app.fallthrough();

    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::string out_dir;
    app.add_option("-c,--config", config_path, "JSON run configuration");
    app.add_option("-s,--seed", seed, "Global seed (overrides config and SOFTCIRCUIT_SEED)");
    app.add_option("-o,--out", out_dir, "Directory for output files");

    cli::Runner selected;
    cli::add_trace(app, selected);
    cli::add_coldchain(app, selected);
    cli::add_thermistor(app, selected);
    cli::add_dsp(app, selected);
    cli::add_recycle(app, selected);
    cli::add_repro(app, selected);

    auto* config_cmd = app.add_subcommand("config", "Print the resolved configuration as JSON");
    config_cmd->callback([&] {
        selected = [](const cli::Context& ctx) {
            fmt::print("{}\n", io::config_to_json(ctx.config).dump(2));
            return 0;
        };
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        // Help and version requests are successful runs.
        return code == 0 ? kOk : kUsage;
    }

    cli::Context ctx;
    if (!config_path.empty()) ctx.config = io::parse_config(config_path);
    io::apply_seed_override(ctx.config);
    if (seed) ctx.config.seed = *seed;
    if (!out_dir.empty()) ctx.config.out_dir = out_dir;
    return selected ? selected(ctx) : kUsage;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const softcircuit::ValidationError& e) {
        fmt::print(stderr, "error: {}\n", e.what());
        return kValidation;
    } catch (const softcircuit::IoError& e) {
        fmt::print(stderr, "error: {}\n", e.what());
        return kIo;
    } catch (const std::exception& e) {
        fmt::print(stderr, "internal error: {}\n", e.what());
        return kValidation;
    }
}
