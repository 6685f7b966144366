// Runs every acceptance criterion and prints one PASS/FAIL line each.
// Usage: softcircuit_acceptance [out_dir] [seed]

#include "repro.hpp"

#include <cstdio>
#include <cstdlib>
#include <string>

int main(int argc, char** argv) {
    using namespace softcircuit::repro;
    const std::filesystem::path out = argc > 1 ? argv[1] : "acceptance_out";
    const std::uint64_t seed = argc > 2 ? std::strtoull(argv[2], nullptr, 10) : 1;

    try {
        const auto report = run_suite(seed, out, [](const CriterionResult& r) {
            std::printf("%s\n", format_line(r).c_str());
            std::fflush(stdout);
        });
        std::size_t passed = 0;
        for (const auto& r : report.results) passed += r.passed;
        std::printf("%zu/%zu criteria passed\n", passed, report.results.size());
        return report.all_passed() ? EXIT_SUCCESS : EXIT_FAILURE;
    } catch (const std::exception& e) {
        std::printf("FAIL  acceptance suite aborted: %s\n", e.what());
        return EXIT_FAILURE;
    }
}
