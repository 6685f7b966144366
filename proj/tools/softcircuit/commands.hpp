#pragma once

#include "softcircuit/io/config.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <functional>
#include <string>

namespace softcircuit::cli {

/// Resolved run settings: config file, then SOFTCIRCUIT_SEED, then flags.
struct Context {
    io::RunConfig config;

    /// Creates the output directory on first use.
    [[nodiscard]] std::filesystem::path out_path(const std::string& file) const;
};

/// The subcommand picked by the parser. Returns the process exit code.
using Runner = std::function<int(const Context&)>;

void add_trace(CLI::App& app, Runner& selected);
void add_coldchain(CLI::App& app, Runner& selected);
void add_thermistor(CLI::App& app, Runner& selected);
void add_dsp(CLI::App& app, Runner& selected);
void add_recycle(CLI::App& app, Runner& selected);
void add_repro(CLI::App& app, Runner& selected);

}  // namespace softcircuit::cli
