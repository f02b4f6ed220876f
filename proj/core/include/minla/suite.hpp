#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "minla/instance.hpp"

namespace minla {

/// Outcome of one acceptance experiment.
struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    std::string detail;
    double seconds = 0.0;
    std::string table;                  // CSV with header, may be empty
    std::vector<RevealTrace> witnesses;  // traces behind a failure
};

struct Criterion {
    int id = 0;
    std::string_view name;
    CriterionResult (*run)() = nullptr;
};

// Pinned protocol parameters.
inline constexpr std::uint64_t kSuiteSeed = 0x5eed'2024'0001ULL;
inline constexpr std::size_t kDetTracesPerModel = 500;
inline constexpr std::size_t kRandTracesPerSize = 20;
inline constexpr std::uint64_t kRandTrials = 10'000;
inline constexpr std::uint64_t kFrequencyTrials = 100'000;
inline constexpr std::size_t kFrequencyTraces = 5;
inline constexpr std::size_t kOracleTracesSmall = 200;
inline constexpr std::size_t kOracleTracesSeven = 20;
inline constexpr std::size_t kPartitionsPerModel = 50;
inline constexpr std::size_t kTreeSamples = 1'000;
inline constexpr std::uint64_t kAlgebraInstances = 10'000;
inline constexpr double kDuelCostGrowth = 2.5;
inline constexpr double kDuelRatioGrowth = 1.5;

/// The eleven acceptance experiments, in id order.
std::span<const Criterion> acceptance_criteria();

CriterionResult run_criterion(const Criterion& criterion);

/// "PASS  3 rand-cliques-bound  (12.1 s)  detail".
std::string format_result(const CriterionResult& result);

/// Writes summary.json, one criterion_<id>.csv per table and
/// witness_<id>_<k>.trace per failure witness.
void write_suite_artifacts(const std::filesystem::path& dir, std::span<const CriterionResult> results);

}  // namespace minla
