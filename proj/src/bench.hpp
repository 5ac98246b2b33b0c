#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "common.hpp"

namespace cdsp::bench {

enum class Linearity { Linear, Nonlinear, Unclassified };

const char* to_string(Linearity l);

struct BenchPair {
    std::string pair_id;  // zero-padded four-digit index
    Sample sample;
    Direction ground_truth = Direction::XtoY;
    double weight = 1.0;
    Linearity linearity = Linearity::Unclassified;
    std::size_t original_n = 0;
    bool subsampled = false;
};

struct SkipRecord {
    std::string pair_id;
    std::string reason;
};

struct IngestOptions {
    std::size_t cap = 2000;  // seeded uniform subsample above this row count
    bool use_cap = true;
    std::uint64_t seed = 1;
};

// Reads whitespace-delimited pair files named pair<id>.txt from data_dir,
// using a metadata file whose lines are
//   <id> <cause first col> <cause last col> <effect first col> <effect last col> <weight>.
// Pairs whose cause or effect spans more than one column, or whose files have
// anything but two columns, are skipped with a reason.
std::vector<BenchPair> ingest_pairs(const std::string& data_dir,
                                    const std::string& meta_file,
                                    const IngestOptions& options,
                                    std::vector<SkipRecord>* skips = nullptr);

// Applies the linear-vs-spline BIC classifier in the ground-truth direction.
// Fit failures leave a pair Unclassified.
void classify_linearity(std::vector<BenchPair>& pairs);

struct PairOutcome {
    std::string pair_id;
    bool failed = false;
    Verdict cdsp_direction = Verdict::Inconclusive;
    double p_cdsp = 0.0;
    bool cdsp_correct = false;  // inconclusive counts as incorrect
    Direction lingam_direction = Direction::XtoY;
    double lingam_rate = 0.0;
    bool lingam_correct = false;
    Linearity linearity = Linearity::Unclassified;
    double weight = 1.0;
    bool subsampled = false;
    std::vector<double> boot_index_y;  // per-pair histogram data
    std::vector<double> boot_index_x;
};

struct StratumMetrics {
    int decisions = 0;
    int correct = 0;
    double tdr = 0.0;
    double fdr = 0.0;
    // Weight-scored variants (pair weights from the metadata file); reported
    // only on request, never the primary metric.
    double weight_total = 0.0;
    double weight_correct = 0.0;
    double weighted_tdr = 0.0;
    double weighted_fdr = 0.0;
};

struct SupportBin {
    int cdsp_count = 0;
    int cdsp_wrong = 0;
    int lingam_count = 0;
    int lingam_wrong = 0;
};

struct BenchReport {
    std::vector<PairOutcome> per_pair;
    StratumMetrics cdsp;
    StratumMetrics lingam;
    // contingency[cdsp correct][lingam correct]
    std::array<std::array<int, 2>, 2> contingency{};
    // indexed by core::SupportCategory order: no/little .. very strong
    std::array<SupportBin, 5> fdr_by_support{};
    int excluded = 0;
    bool linear_only = false;
    bool capped = false;
};

struct BenchParams {
    double alpha = 0.05;
    int n_boot_outer = 100;
    int n_boot_inner = 100;
    int lingam_n_boot = 100;
    bool linear_only = false;
};

BenchReport run_benchmark(const std::vector<BenchPair>& pairs,
                          const BenchParams& params, std::uint64_t seed);

// Aggregates recomputed from the per-pair rows; run_benchmark uses this and
// callers may use it to cross-check reports.
void recompute_metrics(BenchReport& report);

}  // namespace cdsp::bench
