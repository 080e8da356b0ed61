// fnls-lab: batch experiment runner.  Links only the shared C API.
#include <CLI11.hpp>

#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <string>

#include "fnlslab.h"

int main(int argc, char** argv) {
    CLI::App app{"fractional NLS laboratory"};
    app.require_subcommand(1);

    std::string out_dir;
    int threads = 0;
    app.add_option("--out-dir", out_dir, "output directory override");
    app.add_option("--threads", threads,
                   "worker threads (0 = config / FNLS_LAB_THREADS / 1)");

    std::string config_path;
    std::uint64_t seed_override = 0;
    bool has_seed = false;
    CLI::App* run = app.add_subcommand("run", "run a config-file experiment");
    run->fallthrough();
    run->add_option("config", config_path, "experiment config file")
        ->required();
    auto* seed_opt = run->add_option("--seed-override", seed_override,
                                     "replace the config seed");
    run->callback([&] { has_seed = seed_opt->count() > 0; });

    std::string filter;
    std::string report_path;
    CLI::App* verify =
        app.add_subcommand("verify", "run the built-in property suite");
    verify->fallthrough();
    verify->add_option("--filter", filter,
                       "restrict to one module (grid, propagator, ...)");
    verify->add_option("--report", report_path, "write the JSON report here");

    CLI11_PARSE(app, argc, argv);

    if (run->parsed()) {
        int status = 0;
        fnls_status rc = fnls_run_config(
            config_path.c_str(), out_dir.empty() ? nullptr : out_dir.c_str(),
            threads, seed_override, has_seed ? 1 : 0, &status);
        if (rc != FNLS_OK) {
            std::fprintf(stderr,
                         "{\"error\":{\"code\":%d,\"message\":\"%s\"}}\n",
                         static_cast<int>(rc), fnls_last_error());
            return 2;
        }
        return status;
    }

    int failures = 0;
    fnls_status rc = fnls_verify(filter.empty() ? nullptr : filter.c_str(),
                                 threads,
                                 report_path.empty() ? nullptr
                                                     : report_path.c_str(),
                                 &failures);
    if (rc != FNLS_OK) {
        std::fprintf(stderr, "{\"error\":{\"code\":%d,\"message\":\"%s\"}}\n",
                     static_cast<int>(rc), fnls_last_error());
        return 2;
    }
    if (failures > 0) {
        std::fprintf(stderr, "verify: %d check(s) failed\n", failures);
        return 1;
    }
    std::printf("verify: all checks passed\n");
    return 0;
}
