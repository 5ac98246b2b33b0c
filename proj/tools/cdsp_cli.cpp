// Command-line front end for the CDSP shared library.
//
// Subcommands: infer, lingam, simulate, bench. All output goes through the C
// API's serialized reports; the CLI only parses flags, routes files, and maps
// cdsp_status onto exit codes (0 ok, 2 input, 3 degenerate, 4 numeric).
#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>

#include "cdsp/cdsp.h"

namespace {

int exit_code_for(cdsp_status st) { return static_cast<int>(st); }

bool write_text(const std::string& path, const char* text) {
    if (!text) return true;
    std::ofstream out(path);
    if (!out) {
        std::fprintf(stderr, "cdsp: cannot write %s\n", path.c_str());
        return false;
    }
    out << text;
    return true;
}

// Emits the JSON report to stdout (or --out), and the optional CSV tables to
// <out>.csv / <out>_hist.csv when --out is given, otherwise keeps stdout JSON
// only unless --format csv selects the tabular view.
int emit(cdsp_result* res, const std::string& format, const std::string& out) {
    const char* json = cdsp_result_json(res);
    const char* csv = cdsp_result_csv(res);
    const char* aux = cdsp_result_aux_csv(res);
    bool ok = true;
    if (out.empty()) {
        if (format == "csv" && csv)
            std::fputs(csv, stdout);
        else
            std::fputs(json, stdout);
    } else {
        ok = write_text(out, format == "csv" && csv ? csv : json);
        if (ok && csv && format != "csv") ok = write_text(out + ".csv", csv);
        if (ok && aux) ok = write_text(out + "_hist.csv", aux);
    }
    cdsp_result_free(res);
    return ok ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"CDSP: bivariate causal direction by detectability indices"};
    app.require_subcommand(1);
    // flags > config file > built-in defaults
    app.set_config("--config", "", "read defaults from an INI/TOML file");

    cdsp_config cfg;
    cdsp_config_default(&cfg);
    std::string format = "json";
    std::string out_path;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--alpha", cfg.alpha, "significance level in (0,1)")
            ->check(CLI::Range(1e-6, 1.0 - 1e-6));
        sub->add_option("--boot-outer", cfg.n_boot_outer,
                        "outer bootstrap replicates (>=50)");
        sub->add_option("--boot-inner", cfg.n_boot_inner,
                        "inner/null bootstrap replicates (>=50)");
        sub->add_option("--seed", cfg.seed, "RNG seed");
        sub->add_option("--format", format, "json or csv")
            ->check(CLI::IsMember({"json", "csv"}));
        sub->add_option("--out", out_path,
                        "write report here (plus .csv/_hist.csv side files)");
    };

    std::string data_file;
    auto* infer = app.add_subcommand("infer", "causal direction for one pair");
    infer->add_option("file", data_file, "two-column numeric file")->required();
    infer->add_flag("--with-lingam", cfg.with_lingam, "also run the baseline");
    add_common(infer);

    auto* lingam = app.add_subcommand("lingam", "LiNGAM baseline only");
    lingam->add_option("file", data_file, "two-column numeric file")->required();
    add_common(lingam);

    std::string scenario;
    auto* simulate = app.add_subcommand("simulate", "synthetic accuracy experiment");
    simulate
        ->add_option("scenario", scenario,
                     "preset name (paper-d1 .. paper-d3) or scenario file")
        ->required();
    add_common(simulate);

    std::string bench_dir, bench_meta;
    bool no_cap = false;
    auto* bench = app.add_subcommand("bench", "cause-effect pair benchmark");
    bench->add_option("--data-dir", bench_dir, "directory of pair<id>.txt files");
    bench->add_option("--meta", bench_meta, "pair metadata file");
    bench->add_option("--cap", cfg.subsample_cap, "row cap per pair (default 2000)");
    bench->add_flag("--no-cap", no_cap, "disable the row cap");
    bench->add_flag("--linear-only", cfg.linear_only,
                    "score only the linear stratum");
    bench->add_flag("--weighted", cfg.weighted,
                    "also report weight-scored TDR/FDR");
    add_common(bench);

    CLI11_PARSE(app, argc, argv);

    cdsp_result* res = nullptr;
    cdsp_status st = CDSP_OK;

    if (infer->parsed()) {
        st = cdsp_infer_file(data_file.c_str(), &cfg, &res);
    } else if (lingam->parsed()) {
        st = cdsp_lingam_file(data_file.c_str(), &cfg, &res);
    } else if (simulate->parsed()) {
        st = cdsp_simulate(scenario.c_str(), &cfg, &res);
    } else if (bench->parsed()) {
        if (no_cap) cfg.subsample_cap = 0;
        if (bench_dir.empty()) {
            if (const char* env = std::getenv("CDSP_BENCH_DIR")) bench_dir = env;
        }
        if (bench_dir.empty()) {
            std::fprintf(stderr,
                         "cdsp: bench needs --data-dir or CDSP_BENCH_DIR\n");
            return 2;
        }
        if (bench_meta.empty()) bench_meta = bench_dir + "/pairmeta.txt";
        if (!std::ifstream(bench_meta)) {
            std::fprintf(stderr,
                         "cdsp: metadata file %s not found.\n"
                         "Download the cause-effect pair files and pairmeta.txt "
                         "into one directory and point --data-dir (or "
                         "CDSP_BENCH_DIR) at it; the bundled tests/fixtures/"
                         "benchpairs directory is a 5-pair stand-in.\n",
                         bench_meta.c_str());
            return 2;
        }
        st = cdsp_bench(bench_dir.c_str(), bench_meta.c_str(), &cfg, &res);
    }

    if (st != CDSP_OK) {
        std::fprintf(stderr, "cdsp: %s\n", cdsp_last_error());
        return exit_code_for(st);
    }
    return emit(res, format, out_path);
}
