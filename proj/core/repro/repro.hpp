#pragma once

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <string>
#include <utility>
#include <vector>

namespace softcircuit::repro {

struct Artifact {
    std::string name;  // file name relative to the output directory
    std::string content;
};

struct CriterionResult {
    int id = 0;
    std::string name;
    bool passed = false;
    std::string detail;  // deterministic for a given seed
    std::chrono::duration<double> elapsed{};
    std::chrono::duration<double> budget{};
    std::vector<Artifact> artifacts;
};

struct Criterion {
    int id;
    std::string name;
    std::chrono::duration<double> budget;
    std::function<CriterionResult(std::uint64_t seed)> check;
};

/// Criteria 1-14. Reproducibility (15) is checked by `run_suite`.
[[nodiscard]] const std::vector<Criterion>& criteria();

/// Runs one criterion, timing it and failing it when it overruns its budget.
[[nodiscard]] CriterionResult run_criterion(const Criterion& criterion, std::uint64_t seed);

struct SuiteReport {
    std::vector<CriterionResult> results;  // ordered by id, 15 last
    [[nodiscard]] bool all_passed() const noexcept;
};

using ProgressFn = std::function<void(const CriterionResult&)>;

/// Runs the whole suite and writes every artifact plus `acceptance.csv` to
/// `out_dir`. The second pass for criterion 15 goes to a scratch directory
/// that is removed afterwards.
[[nodiscard]] SuiteReport run_suite(std::uint64_t seed, const std::filesystem::path& out_dir,
                                    const ProgressFn& progress = {});

/// "PASS  3  wash ledger  recovered 8.89 g ..." style line, timing included.
[[nodiscard]] std::string format_line(const CriterionResult& result);

/// CSV of id, name, result and detail. Timings are left out so the file is
/// byte-identical across runs.
[[nodiscard]] std::string report_csv(const std::vector<CriterionResult>& results);

}  // namespace softcircuit::repro
