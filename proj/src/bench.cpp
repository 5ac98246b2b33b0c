#include "bench.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cdsp_core.hpp"
#include "lingam.hpp"
#include "parallel.hpp"
#include "regress.hpp"
#include "rng.hpp"

namespace cdsp::bench {

namespace {
constexpr std::uint64_t kSubsampleTag = 0x5b5a3e10;
}

const char* to_string(Linearity l) {
    switch (l) {
        case Linearity::Linear: return "linear";
        case Linearity::Nonlinear: return "nonlinear";
        default: return "unclassified";
    }
}

namespace {

std::string normalize_id(const std::string& raw) {
    std::string digits = raw;
    if (digits.rfind("pair", 0) == 0) digits = digits.substr(4);
    if (digits.empty() || digits.size() > 4 ||
        digits.find_first_not_of("0123456789") != std::string::npos)
        throw InputError("metadata: bad pair id '" + raw + "'");
    return std::string(4 - digits.size(), '0') + digits;
}

struct MetaLine {
    std::string pair_id;
    int cause_first, cause_last, effect_first, effect_last;
    double weight;
};

std::vector<MetaLine> parse_meta(const std::string& meta_file) {
    std::ifstream in(meta_file);
    if (!in) throw InputError("cannot open metadata file: " + meta_file);
    std::vector<MetaLine> lines;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::istringstream ss(line);
        std::string id;
        if (!(ss >> id)) continue;  // blank line
        MetaLine m;
        m.pair_id = normalize_id(id);
        if (!(ss >> m.cause_first >> m.cause_last >> m.effect_first >>
              m.effect_last >> m.weight))
            throw InputError("metadata line " + std::to_string(lineno) +
                             ": expected 5 numeric fields after the pair id");
        lines.push_back(m);
    }
    return lines;
}

// Two-column whitespace-delimited numeric file.
std::vector<std::array<double, 2>> parse_pair_file(const std::string& path,
                                                   std::string* skip_reason) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open pair file: " + path);
    std::vector<std::array<double, 2>> rows;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::istringstream ss(line);
        std::vector<double> vals;
        std::string tok;
        while (ss >> tok) {
            try {
                std::size_t pos = 0;
                const double v = std::stod(tok, &pos);
                if (pos != tok.size()) throw InputError("");
                vals.push_back(v);
            } catch (...) {
                throw InputError(path + ": line " + std::to_string(lineno) +
                                 ": malformed numeric token '" + tok + "'");
            }
        }
        if (vals.empty()) continue;
        if (vals.size() != 2) {
            if (skip_reason) *skip_reason = "multivariate";
            return {};
        }
        rows.push_back({vals[0], vals[1]});
    }
    return rows;
}

}  // namespace

std::vector<BenchPair> ingest_pairs(const std::string& data_dir,
                                    const std::string& meta_file,
                                    const IngestOptions& options,
                                    std::vector<SkipRecord>* skips) {
    const auto meta = parse_meta(meta_file);
    std::vector<BenchPair> pairs;

    for (const MetaLine& m : meta) {
        auto skip = [&](const std::string& reason) {
            if (skips) skips->push_back({m.pair_id, reason});
            std::fprintf(stderr, "cdsp: skipping pair %s: %s\n", m.pair_id.c_str(),
                         reason.c_str());
        };
        if (m.cause_first != m.cause_last || m.effect_first != m.effect_last) {
            skip("multivariate");
            continue;
        }
        if (!((m.cause_first == 1 && m.effect_first == 2) ||
              (m.cause_first == 2 && m.effect_first == 1))) {
            skip("columns are not 1-vs-1");
            continue;
        }

        const std::string path =
            (std::filesystem::path(data_dir) / ("pair" + m.pair_id + ".txt")).string();
        std::string reason;
        const auto rows = parse_pair_file(path, &reason);
        if (rows.empty()) {
            skip(reason.empty() ? "empty file" : reason);
            continue;
        }

        BenchPair p;
        p.pair_id = m.pair_id;
        p.weight = m.weight;
        p.ground_truth = m.cause_first == 1 ? Direction::XtoY : Direction::YtoX;
        p.original_n = rows.size();

        std::vector<std::size_t> keep(rows.size());
        for (std::size_t i = 0; i < rows.size(); ++i) keep[i] = i;
        if (options.use_cap && rows.size() > options.cap) {
            // seeded partial Fisher-Yates, order restored afterwards
            Rng rng(substream(options.seed, kSubsampleTag,
                              std::stoull(p.pair_id)));
            for (std::size_t i = 0; i < options.cap; ++i) {
                const std::size_t j = i + rng.index(rows.size() - i);
                std::swap(keep[i], keep[j]);
            }
            keep.resize(options.cap);
            std::sort(keep.begin(), keep.end());
            p.subsampled = true;
        }

        p.sample.xs.reserve(keep.size());
        p.sample.ys.reserve(keep.size());
        for (std::size_t idx : keep) {
            p.sample.xs.push_back(rows[idx][0]);
            p.sample.ys.push_back(rows[idx][1]);
        }
        try {
            validate_sample(p.sample);
        } catch (const InputError& e) {
            skip(e.what());
            continue;
        }
        pairs.push_back(std::move(p));
    }
    return pairs;
}

void classify_linearity(std::vector<BenchPair>& pairs) {
    for (BenchPair& p : pairs) {
        try {
            Sample oriented = p.sample;
            if (p.ground_truth == Direction::YtoX)
                std::swap(oriented.xs, oriented.ys);
            const auto cmp = regress::bic_linear_vs_spline(oriented);
            p.linearity = cmp.verdict == regress::ModelClass::Linear
                              ? Linearity::Linear
                              : Linearity::Nonlinear;
        } catch (const std::exception& e) {
            p.linearity = Linearity::Unclassified;
            std::fprintf(stderr, "cdsp: pair %s unclassified: %s\n",
                         p.pair_id.c_str(), e.what());
        }
    }
}

void recompute_metrics(BenchReport& report) {
    report.cdsp = {};
    report.lingam = {};
    report.contingency = {};
    report.fdr_by_support = {};
    report.excluded = 0;
    report.capped = false;

    for (const PairOutcome& o : report.per_pair) {
        if (o.failed) {
            ++report.excluded;
            continue;
        }
        if (o.subsampled) report.capped = true;
        ++report.cdsp.decisions;
        ++report.lingam.decisions;
        report.cdsp.weight_total += o.weight;
        report.lingam.weight_total += o.weight;
        if (o.cdsp_correct) {
            ++report.cdsp.correct;
            report.cdsp.weight_correct += o.weight;
        }
        if (o.lingam_correct) {
            ++report.lingam.correct;
            report.lingam.weight_correct += o.weight;
        }
        ++report.contingency[o.cdsp_correct ? 0 : 1][o.lingam_correct ? 0 : 1];

        const auto cdsp_bin =
            static_cast<std::size_t>(core::support_category(o.p_cdsp));
        ++report.fdr_by_support[cdsp_bin].cdsp_count;
        if (!o.cdsp_correct) ++report.fdr_by_support[cdsp_bin].cdsp_wrong;

        const auto lingam_bin =
            static_cast<std::size_t>(core::support_category(o.lingam_rate));
        ++report.fdr_by_support[lingam_bin].lingam_count;
        if (!o.lingam_correct) ++report.fdr_by_support[lingam_bin].lingam_wrong;
    }

    auto finish = [](StratumMetrics& m) {
        if (m.decisions > 0) {
            m.tdr = static_cast<double>(m.correct) / m.decisions;
            m.fdr = 1.0 - m.tdr;
        }
        if (m.weight_total > 0.0) {
            m.weighted_tdr = m.weight_correct / m.weight_total;
            m.weighted_fdr = 1.0 - m.weighted_tdr;
        }
    };
    finish(report.cdsp);
    finish(report.lingam);
}

BenchReport run_benchmark(const std::vector<BenchPair>& pairs,
                          const BenchParams& params, std::uint64_t seed) {
    if (pairs.empty()) throw InputError("run_benchmark: no pairs");

    std::vector<const BenchPair*> selected;
    for (const BenchPair& p : pairs)
        if (!params.linear_only || p.linearity == Linearity::Linear)
            selected.push_back(&p);
    if (selected.empty())
        throw InputError("run_benchmark: no pairs in the requested stratum");

    BenchReport report;
    report.linear_only = params.linear_only;
    report.per_pair.resize(selected.size());

    parallel_for(selected.size(), [&](std::size_t i) {
        const BenchPair& p = *selected[i];
        PairOutcome& o = report.per_pair[i];
        o.pair_id = p.pair_id;
        o.linearity = p.linearity;
        o.weight = p.weight;
        o.subsampled = p.subsampled;
        try {
            const std::uint64_t pair_seed =
                substream(seed, 0xbe4c9a11, std::stoull(p.pair_id));
            const core::CdspResult cdsp = core::cdsp_support_probability(
                p.sample, params.alpha, params.n_boot_outer, params.n_boot_inner,
                pair_seed);
            const lingam::LingamResult lg = lingam::lingam_bootstrap_rate(
                p.sample, params.lingam_n_boot, pair_seed);

            o.cdsp_direction = cdsp.direction;
            o.p_cdsp = cdsp.p_cdsp;
            o.cdsp_correct =
                (cdsp.direction == Verdict::XtoY && p.ground_truth == Direction::XtoY) ||
                (cdsp.direction == Verdict::YtoX && p.ground_truth == Direction::YtoX);
            o.lingam_direction = lg.direction;
            o.lingam_rate = lg.bootstrap_rate;
            o.lingam_correct = lg.direction == p.ground_truth;
            o.boot_index_y = cdsp.boot_index_y;
            o.boot_index_x = cdsp.boot_index_x;
        } catch (const std::exception& e) {
            o.failed = true;
            std::fprintf(stderr, "cdsp: pair %s failed: %s\n", p.pair_id.c_str(),
                         e.what());
        }
    });

    recompute_metrics(report);
    return report;
}

}  // namespace cdsp::bench
