#include "cdsp/cdsp.h"

#include <json.hpp>

#include <exception>
#include <filesystem>
#include <sstream>
#include <string>

#include "bench.hpp"
#include "cdsp_core.hpp"
#include "common.hpp"
#include "io.hpp"
#include "lingam.hpp"
#include "simlab.hpp"

using json = nlohmann::ordered_json;

struct cdsp_result {
    std::string json_text;
    std::string csv_text;
    std::string aux_csv_text;
};

namespace {

thread_local std::string g_last_error;

cdsp_status fail(cdsp_status code, const char* what) {
    g_last_error = what;
    return code;
}

template <typename Fn>
cdsp_status guarded(Fn&& fn) {
    try {
        fn();
        return CDSP_OK;
    } catch (const cdsp::InputError& e) {
        return fail(CDSP_ERR_INPUT, e.what());
    } catch (const cdsp::DegenerateError& e) {
        return fail(CDSP_ERR_DEGENERATE, e.what());
    } catch (const std::exception& e) {
        return fail(CDSP_ERR_NUMERIC, e.what());
    } catch (...) {
        return fail(CDSP_ERR_NUMERIC, "unknown failure");
    }
}

void require(bool ok, const char* what) {
    if (!ok) throw cdsp::InputError(what);
}

void validate_config(const cdsp_config* cfg) {
    require(cfg != nullptr, "config is null");
    require(cfg->alpha > 0.0 && cfg->alpha < 1.0, "alpha must lie in (0,1)");
    require(cfg->n_boot_outer >= 50, "n_boot_outer must be >= 50");
    require(cfg->n_boot_inner >= 50, "n_boot_inner must be >= 50");
}

json config_json(const cdsp_config& cfg) {
    return json{{"alpha", cfg.alpha},
                {"n_boot_outer", cfg.n_boot_outer},
                {"n_boot_inner", cfg.n_boot_inner},
                {"seed", cfg.seed},
                {"subsample_cap", cfg.subsample_cap},
                {"with_lingam", cfg.with_lingam != 0},
                {"linear_only", cfg.linear_only != 0},
                {"weighted", cfg.weighted != 0}};
}

json estimates_json(const cdsp::core::DirectionalEstimates& e) {
    return json{{"theta_hat", e.theta_hat},
                {"sigma_hat", e.sigma_hat},
                {"c_hat_over_n", e.c_hat_over_n},
                {"index_hat", e.index_hat}};
}

cdsp_result* make_result(std::string j, std::string csv = "", std::string aux = "") {
    auto* r = new cdsp_result;
    r->json_text = std::move(j);
    r->csv_text = std::move(csv);
    r->aux_csv_text = std::move(aux);
    return r;
}

cdsp_status infer_impl(const cdsp::Sample& sample, const cdsp_config* cfg,
                       cdsp_result** out) {
    return guarded([&] {
        validate_config(cfg);
        require(out != nullptr, "output pointer is null");

        const cdsp::core::CdspResult res = cdsp::core::cdsp_support_probability(
            sample, cfg->alpha, cfg->n_boot_outer, cfg->n_boot_inner, cfg->seed);

        json doc;
        doc["command"] = "infer";
        doc["config"] = config_json(*cfg);
        doc["n"] = sample.n();
        doc["direction"] = cdsp::to_string(res.direction);
        doc["p_cdsp"] = res.p_cdsp;
        doc["support_category"] =
            cdsp::core::to_string(cdsp::core::support_category(res.p_cdsp));
        doc["index_x"] = res.estimates_ytox.index_hat;
        doc["index_y"] = res.estimates_xtoy.index_hat;
        doc["reject_y"] = res.reject_y;
        doc["reject_x"] = res.reject_x;
        doc["estimates"] = {{"x_to_y_test", estimates_json(res.estimates_xtoy)},
                            {"y_to_x_test", estimates_json(res.estimates_ytox)}};
        if (cfg->with_lingam) {
            const auto lg = cdsp::lingam::lingam_bootstrap_rate(
                sample, cfg->n_boot_inner, cfg->seed);
            doc["lingam"] = {{"direction", cdsp::to_string(lg.direction)},
                             {"dep_xtoy", lg.dep_xtoy},
                             {"dep_ytox", lg.dep_ytox},
                             {"bootstrap_rate", lg.bootstrap_rate}};
        }

        std::ostringstream csv;
        csv << "direction,p_cdsp,support_category,index_x,index_y,reject_y,reject_x\n"
            << cdsp::to_string(res.direction) << ',' << cdsp::io::format_double(res.p_cdsp)
            << ',' << cdsp::core::to_string(cdsp::core::support_category(res.p_cdsp))
            << ',' << cdsp::io::format_double(res.estimates_ytox.index_hat) << ','
            << cdsp::io::format_double(res.estimates_xtoy.index_hat) << ','
            << (res.reject_y ? 1 : 0) << ',' << (res.reject_x ? 1 : 0) << '\n';

        std::ostringstream aux;
        aux << "replicate,index_y,index_x\n";
        for (std::size_t b = 0; b < res.boot_index_y.size(); ++b)
            aux << b << ',' << cdsp::io::format_double(res.boot_index_y[b]) << ','
                << cdsp::io::format_double(res.boot_index_x[b]) << '\n';

        *out = make_result(doc.dump(2) + "\n", csv.str(), aux.str());
    });
}

cdsp_status lingam_impl(const cdsp::Sample& sample, const cdsp_config* cfg,
                        cdsp_result** out) {
    return guarded([&] {
        validate_config(cfg);
        require(out != nullptr, "output pointer is null");
        const auto lg = cdsp::lingam::lingam_bootstrap_rate(
            sample, cfg->n_boot_inner, cfg->seed);
        json doc;
        doc["command"] = "lingam";
        doc["config"] = config_json(*cfg);
        doc["n"] = sample.n();
        doc["direction"] = cdsp::to_string(lg.direction);
        doc["dep_xtoy"] = lg.dep_xtoy;
        doc["dep_ytox"] = lg.dep_ytox;
        doc["bootstrap_rate"] = lg.bootstrap_rate;
        *out = make_result(doc.dump(2) + "\n");
    });
}

json oracle_json(const cdsp::simlab::OracleQuantities& oq) {
    return json{{"theta_xtoy", oq.theta_xtoy}, {"theta_ytox", oq.theta_ytox},
                {"sigma_xtoy", oq.sigma_xtoy}, {"sigma_ytox", oq.sigma_ytox},
                {"i_x", oq.i_x},               {"i_y", oq.i_y},
                {"n_mc", oq.n_mc},             {"asymmetry_holds", oq.asymmetry_holds()}};
}

}  // namespace

extern "C" {

void cdsp_config_default(cdsp_config* cfg) {
    if (!cfg) return;
    cfg->alpha = 0.05;
    cfg->n_boot_outer = 100;
    cfg->n_boot_inner = 100;
    cfg->seed = 1;
    cfg->subsample_cap = 2000;
    cfg->with_lingam = 0;
    cfg->linear_only = 0;
    cfg->weighted = 0;
}

cdsp_status cdsp_infer(const double* xs, const double* ys, size_t n,
                       const cdsp_config* cfg, cdsp_result** out) {
    cdsp::Sample s;
    const cdsp_status st = guarded([&] {
        require(xs && ys, "data pointers are null");
        s = cdsp::Sample{{xs, xs + n}, {ys, ys + n}};
        cdsp::validate_sample(s);
    });
    if (st != CDSP_OK) return st;
    return infer_impl(s, cfg, out);
}

cdsp_status cdsp_infer_file(const char* path, const cdsp_config* cfg,
                            cdsp_result** out) {
    cdsp::Sample s;
    const cdsp_status st = guarded([&] {
        require(path != nullptr, "path is null");
        s = cdsp::io::read_two_column_file(path);
    });
    if (st != CDSP_OK) return st;
    return infer_impl(s, cfg, out);
}

cdsp_status cdsp_lingam(const double* xs, const double* ys, size_t n,
                        const cdsp_config* cfg, cdsp_result** out) {
    cdsp::Sample s;
    const cdsp_status st = guarded([&] {
        require(xs && ys, "data pointers are null");
        s = cdsp::Sample{{xs, xs + n}, {ys, ys + n}};
        cdsp::validate_sample(s);
    });
    if (st != CDSP_OK) return st;
    return lingam_impl(s, cfg, out);
}

cdsp_status cdsp_lingam_file(const char* path, const cdsp_config* cfg,
                             cdsp_result** out) {
    cdsp::Sample s;
    const cdsp_status st = guarded([&] {
        require(path != nullptr, "path is null");
        s = cdsp::io::read_two_column_file(path);
    });
    if (st != CDSP_OK) return st;
    return lingam_impl(s, cfg, out);
}

cdsp_status cdsp_simulate(const char* scenario, const cdsp_config* cfg,
                          cdsp_result** out) {
    return guarded([&] {
        validate_config(cfg);
        require(scenario != nullptr, "scenario is null");
        require(out != nullptr, "output pointer is null");

        cdsp::simlab::SimScenario sc;
        if (auto preset = cdsp::simlab::preset_scenario(scenario)) {
            sc = *preset;
            sc.seed = cfg->seed;
        } else if (std::filesystem::exists(scenario)) {
            sc = cdsp::simlab::parse_scenario_file(scenario);
        } else {
            std::string msg = "unknown scenario preset or file: ";
            msg += scenario;
            msg += " (presets:";
            for (const auto& p : cdsp::simlab::preset_names()) msg += " " + p;
            msg += ")";
            throw cdsp::InputError(msg);
        }

        cdsp::simlab::CdspConfig cc{cfg->alpha, cfg->n_boot_inner};
        cdsp::simlab::OracleConfig oc;
        oc.n_mc = std::max<std::size_t>(20000, 10 * sc.n);
        oc.m_reps = std::max(sc.m_reps, 20);
        const auto report = cdsp::simlab::run_accuracy_experiment(sc, cc, oc);

        json doc;
        doc["command"] = "simulate";
        doc["config"] = config_json(*cfg);
        doc["scenario"] = {
            {"degree_d", sc.degree_d},       {"shift_a", sc.shift_a},
            {"slope_beta", sc.slope_beta},   {"cause_rate", sc.cause.rate},
            {"cause_lower", sc.cause.lower}, {"cause_upper", sc.cause.upper},
            {"noise_weights", sc.noise.weights}, {"noise_means", sc.noise.means},
            {"noise_sds", sc.noise.sds},     {"n", sc.n},
            {"m_reps", sc.m_reps},           {"seed", sc.seed}};
        doc["oracle"] = oracle_json(report.oracle);
        doc["asymmetry_holds"] = report.asymmetry_holds;
        doc["cdsp_accuracy"] = report.cdsp_accuracy;
        doc["lingam_accuracy"] = report.lingam_accuracy;
        doc["failures"] = report.failures;

        std::ostringstream csv;
        csv << "rep,failed,cdsp_direction,lingam_direction,i_hat_x,i_hat_y,"
               "t_xtoy,t_ytox,reject_y,reject_x\n";
        std::ostringstream aux;
        aux << "rep,i_hat_y,i_hat_x\n";
        for (const auto& r : report.per_rep) {
            csv << r.rep_index << ',' << (r.failed ? 1 : 0) << ','
                << cdsp::to_string(r.cdsp_direction) << ','
                << cdsp::to_string(r.lingam_direction) << ','
                << cdsp::io::format_double(r.i_hat_x) << ','
                << cdsp::io::format_double(r.i_hat_y) << ','
                << cdsp::io::format_double(r.t_xtoy) << ','
                << cdsp::io::format_double(r.t_ytox) << ','
                << (r.reject_y ? 1 : 0) << ',' << (r.reject_x ? 1 : 0) << '\n';
            if (!r.failed)
                aux << r.rep_index << ',' << cdsp::io::format_double(r.i_hat_y)
                    << ',' << cdsp::io::format_double(r.i_hat_x) << '\n';
        }

        *out = make_result(doc.dump(2) + "\n", csv.str(), aux.str());
    });
}

cdsp_status cdsp_bench(const char* data_dir, const char* meta_file,
                       const cdsp_config* cfg, cdsp_result** out) {
    return guarded([&] {
        validate_config(cfg);
        require(data_dir && meta_file, "data_dir or meta_file is null");
        require(out != nullptr, "output pointer is null");

        cdsp::bench::IngestOptions opts;
        opts.cap = cfg->subsample_cap > 0
                       ? static_cast<std::size_t>(cfg->subsample_cap)
                       : 0;
        opts.use_cap = cfg->subsample_cap > 0;
        opts.seed = cfg->seed;
        std::vector<cdsp::bench::SkipRecord> skips;
        auto pairs = cdsp::bench::ingest_pairs(data_dir, meta_file, opts, &skips);
        require(!pairs.empty(), "no usable pairs found");
        cdsp::bench::classify_linearity(pairs);

        cdsp::bench::BenchParams params;
        params.alpha = cfg->alpha;
        params.n_boot_outer = cfg->n_boot_outer;
        params.n_boot_inner = cfg->n_boot_inner;
        params.lingam_n_boot = cfg->n_boot_outer;
        params.linear_only = cfg->linear_only != 0;
        const auto report = cdsp::bench::run_benchmark(pairs, params, cfg->seed);

        // Linear-subset stratum derived from the same per-pair rows.
        cdsp::bench::BenchReport linear_view;
        linear_view.linear_only = true;
        for (const auto& o : report.per_pair)
            if (o.linearity == cdsp::bench::Linearity::Linear)
                linear_view.per_pair.push_back(o);
        if (!linear_view.per_pair.empty())
            cdsp::bench::recompute_metrics(linear_view);

        auto metrics_json = [&cfg](const cdsp::bench::BenchReport& r) {
            json support = json::array();
            static const char* kBinNames[5] = {"no_little", "weak", "moderate",
                                               "strong", "very_strong"};
            for (std::size_t b = 0; b < 5; ++b) {
                const auto& bin = r.fdr_by_support[b];
                support.push_back(
                    {{"category", kBinNames[b]},
                     {"cdsp_count", bin.cdsp_count},
                     {"cdsp_wrong", bin.cdsp_wrong},
                     {"cdsp_fdr", bin.cdsp_count > 0
                                      ? static_cast<double>(bin.cdsp_wrong) / bin.cdsp_count
                                      : 0.0},
                     {"lingam_count", bin.lingam_count},
                     {"lingam_wrong", bin.lingam_wrong},
                     {"lingam_fdr", bin.lingam_count > 0
                                        ? static_cast<double>(bin.lingam_wrong) /
                                              bin.lingam_count
                                        : 0.0}});
            }
            json cdsp_m{{"tdr", r.cdsp.tdr}, {"fdr", r.cdsp.fdr}, {"correct", r.cdsp.correct}};
            json lingam_m{
                {"tdr", r.lingam.tdr}, {"fdr", r.lingam.fdr}, {"correct", r.lingam.correct}};
            if (cfg->weighted) {
                cdsp_m["weighted_tdr"] = r.cdsp.weighted_tdr;
                cdsp_m["weighted_fdr"] = r.cdsp.weighted_fdr;
                lingam_m["weighted_tdr"] = r.lingam.weighted_tdr;
                lingam_m["weighted_fdr"] = r.lingam.weighted_fdr;
            }
            return json{
                {"decisions", r.cdsp.decisions},
                {"cdsp", cdsp_m},
                {"lingam", lingam_m},
                {"contingency",
                 {{"cdsp_right_lingam_right", r.contingency[0][0]},
                  {"cdsp_right_lingam_wrong", r.contingency[0][1]},
                  {"cdsp_wrong_lingam_right", r.contingency[1][0]},
                  {"cdsp_wrong_lingam_wrong", r.contingency[1][1]}}},
                {"fdr_by_support", support},
                {"excluded", r.excluded}};
        };

        json doc;
        doc["command"] = "bench";
        doc["config"] = config_json(*cfg);
        doc["capped"] = report.capped;
        doc["skipped_pairs"] = json::array();
        for (const auto& sk : skips)
            doc["skipped_pairs"].push_back({{"pair_id", sk.pair_id}, {"reason", sk.reason}});
        doc["overall"] = metrics_json(report);
        if (!linear_view.per_pair.empty())
            doc["linear_subset"] = metrics_json(linear_view);

        std::ostringstream csv;
        csv << "pair_id,failed,cdsp_direction,p_cdsp,cdsp_correct,"
               "lingam_direction,lingam_rate,lingam_correct,linearity,weight,"
               "subsampled\n";
        std::ostringstream aux;
        aux << "pair_id,replicate,index_y,index_x\n";
        for (const auto& o : report.per_pair) {
            csv << o.pair_id << ',' << (o.failed ? 1 : 0) << ','
                << cdsp::to_string(o.cdsp_direction) << ','
                << cdsp::io::format_double(o.p_cdsp) << ',' << (o.cdsp_correct ? 1 : 0)
                << ',' << cdsp::to_string(o.lingam_direction) << ','
                << cdsp::io::format_double(o.lingam_rate) << ','
                << (o.lingam_correct ? 1 : 0) << ','
                << cdsp::bench::to_string(o.linearity) << ','
                << cdsp::io::format_double(o.weight) << ',' << (o.subsampled ? 1 : 0)
                << '\n';
            for (std::size_t b = 0; b < o.boot_index_y.size(); ++b)
                aux << o.pair_id << ',' << b << ','
                    << cdsp::io::format_double(o.boot_index_y[b]) << ','
                    << cdsp::io::format_double(o.boot_index_x[b]) << '\n';
        }

        *out = make_result(doc.dump(2) + "\n", csv.str(), aux.str());
    });
}

const char* cdsp_result_json(const cdsp_result* result) {
    return result ? result->json_text.c_str() : nullptr;
}

const char* cdsp_result_csv(const cdsp_result* result) {
    return result && !result->csv_text.empty() ? result->csv_text.c_str() : nullptr;
}

const char* cdsp_result_aux_csv(const cdsp_result* result) {
    return result && !result->aux_csv_text.empty() ? result->aux_csv_text.c_str()
                                                   : nullptr;
}

void cdsp_result_free(cdsp_result* result) { delete result; }

const char* cdsp_last_error(void) { return g_last_error.c_str(); }

const char* cdsp_version(void) { return "cdsp 0.1.0"; }

}  // extern "C"
