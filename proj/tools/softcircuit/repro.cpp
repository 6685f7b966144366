#include "commands.hpp"

#include "repro.hpp"

#include <fmt/core.h>

namespace softcircuit::cli {

void add_repro(CLI::App& app, Runner& selected) {
    auto* cmd = app.add_subcommand("repro", "Run the acceptance suite and write its artifacts to --out");
    cmd->callback([&selected] {
        selected = [](const Context& ctx) {
            const auto out = ctx.out_path("");
            fmt::print("seed {}, artifacts in {}\n", ctx.config.seed, ctx.config.out_dir.string());
            const auto report = repro::run_suite(ctx.config.seed, out, [](const repro::CriterionResult& r) {
                fmt::print("{}\n", repro::format_line(r));
                std::fflush(stdout);
            });
            const auto passed = std::count_if(report.results.begin(), report.results.end(),
                                              [](const auto& r) { return r.passed; });
            fmt::print("{}/{} criteria passed\n", passed, report.results.size());
            return report.all_passed() ? 0 : 2;
        };
    });
}

}  // namespace softcircuit::cli
