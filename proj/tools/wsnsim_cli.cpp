// wsnsim command-line driver. Talks to the simulation core exclusively
// through the C API in wsnsim.h; machine-readable output goes to stdout,
// diagnostics to stderr.

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "wsnsim.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitConfig = 2;
constexpr int kExitIo = 3;

int exit_code_for(wsnsim_status status) {
    switch (status) {
        case WSNSIM_OK:
            return kExitOk;
        case WSNSIM_CONFIG_ERROR:
            return kExitConfig;
        case WSNSIM_IO_ERROR:
            return kExitIo;
        default:
            return kExitFailure;
    }
}

int bail(wsnsim_status status) {
    std::fprintf(stderr, "wsnsim: %s\n", wsnsim_last_error());
    return exit_code_for(status);
}

struct CommonOpts {
    std::string config_path;
    std::string out_dir = ".";
    std::vector<std::string> overrides;
    std::uint64_t seed = 0;
    bool seed_set = false;
    bool strict_radius = false;
};

void add_common(CLI::App* cmd, CommonOpts& opts) {
    cmd->add_option("--config", opts.config_path, "JSON config file (defaults when omitted)");
    cmd->add_option("--out", opts.out_dir, "output directory")->capture_default_str();
    cmd->add_option("--override", opts.overrides,
                    "config override as dotted key=value, repeatable");
    cmd->add_option("--seed", opts.seed, "seed override")->each([&](const std::string&) {
        opts.seed_set = true;
    });
    cmd->add_flag("--strict-radius", opts.strict_radius,
                  "orphan nodes with no cluster head within r_cluster");
}

// Builds a config handle from the common options. On failure prints the
// diagnostic and returns the status; *out stays null.
wsnsim_status make_config(const CommonOpts& opts, wsnsim_config** out) {
    wsnsim_status st = opts.config_path.empty() ? wsnsim_config_default(out)
                                                : wsnsim_config_load(opts.config_path.c_str(), out);
    if (st != WSNSIM_OK) {
        std::fprintf(stderr, "wsnsim: %s\n", wsnsim_last_error());
        return st;
    }
    for (const std::string& kv : opts.overrides) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos) {
            std::fprintf(stderr, "wsnsim: override '%s' is not key=value\n", kv.c_str());
            st = WSNSIM_CONFIG_ERROR;
        } else {
            st = wsnsim_config_set(*out, kv.substr(0, eq).c_str(), kv.substr(eq + 1).c_str());
            if (st != WSNSIM_OK) std::fprintf(stderr, "wsnsim: %s\n", wsnsim_last_error());
        }
        if (st != WSNSIM_OK) {
            wsnsim_config_free(*out);
            *out = nullptr;
            return st;
        }
    }
    if (opts.seed_set) wsnsim_config_set_seed(*out, opts.seed);
    if (opts.strict_radius) wsnsim_config_set_strict_radius(*out, 1);
    return WSNSIM_OK;
}

bool ensure_out_dir(const std::string& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) {
        std::fprintf(stderr, "wsnsim: cannot create output directory %s: %s\n", dir.c_str(),
                     ec.message().c_str());
        return false;
    }
    return true;
}

std::string join(const std::string& dir, const char* name) {
    return (std::filesystem::path(dir) / name).string();
}

int cmd_run(const CommonOpts& opts, const std::string& model_in, const std::string& model_out) {
    wsnsim_config* cfg = nullptr;
    wsnsim_status st = make_config(opts, &cfg);
    if (st != WSNSIM_OK) return exit_code_for(st);
    if (!ensure_out_dir(opts.out_dir)) {
        wsnsim_config_free(cfg);
        return kExitIo;
    }

    wsnsim_result* result = nullptr;
    st = wsnsim_run(cfg, model_in.empty() ? nullptr : model_in.c_str(),
                    model_out.empty() ? nullptr : model_out.c_str(), &result);
    wsnsim_config_free(cfg);
    if (st != WSNSIM_OK) return bail(st);

    st = wsnsim_result_write_rounds_csv(result, join(opts.out_dir, "rounds.csv").c_str());
    if (st == WSNSIM_OK) {
        st = wsnsim_result_write_summary_json(result, join(opts.out_dir, "summary.json").c_str());
    }
    if (st != WSNSIM_OK) {
        wsnsim_result_free(result);
        return bail(st);
    }

    char* summary = nullptr;
    wsnsim_result_summary_json(result, &summary);
    std::fputs(summary, stdout);
    wsnsim_string_free(summary);
    wsnsim_result_free(result);
    return kExitOk;
}

int cmd_compare(const CommonOpts& opts, bool self_baseline) {
    wsnsim_config* cfg = nullptr;
    wsnsim_status st = make_config(opts, &cfg);
    if (st != WSNSIM_OK) return exit_code_for(st);
    if (!ensure_out_dir(opts.out_dir)) {
        wsnsim_config_free(cfg);
        return kExitIo;
    }

    wsnsim_result* proposed = nullptr;
    wsnsim_result* baseline = nullptr;
    st = wsnsim_run(cfg, nullptr, nullptr, &proposed);
    if (st == WSNSIM_OK) {
        st = self_baseline ? wsnsim_run(cfg, nullptr, nullptr, &baseline)
                           : wsnsim_run_baseline(cfg, &baseline);
    }
    wsnsim_config_free(cfg);
    if (st != WSNSIM_OK) {
        wsnsim_result_free(proposed);
        wsnsim_result_free(baseline);
        return bail(st);
    }

    char* report = nullptr;
    st = wsnsim_result_write_summary_json(proposed,
                                          join(opts.out_dir, "summary_proposed.json").c_str());
    if (st == WSNSIM_OK) {
        st = wsnsim_result_write_summary_json(
            baseline, join(opts.out_dir, "summary_baseline.json").c_str());
    }
    if (st == WSNSIM_OK) {
        st = wsnsim_compare(proposed, baseline, join(opts.out_dir, "comparison.json").c_str(),
                            &report);
    }
    wsnsim_result_free(proposed);
    wsnsim_result_free(baseline);
    if (st != WSNSIM_OK) return bail(st);

    std::fputs(report, stdout);
    wsnsim_string_free(report);
    return kExitOk;
}

int cmd_check(bool grad, std::uint64_t seed, int count) {
    char* report = nullptr;
    const wsnsim_status st = grad ? wsnsim_gradcheck(seed, count, &report)
                                  : wsnsim_mstcheck(seed, count, &report);
    if (report != nullptr) {
        std::fputs(report, stdout);
        wsnsim_string_free(report);
    }
    if (st == WSNSIM_OK) return kExitOk;
    std::fprintf(stderr, "wsnsim: %s\n", wsnsim_last_error());
    return st == WSNSIM_CHECK_FAILED ? kExitFailure : exit_code_for(st);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"wsnsim: round-based wireless sensor network simulator"};
    app.require_subcommand(1);

    CommonOpts run_opts;
    std::string model_in, model_out;
    CLI::App* run = app.add_subcommand("run", "run a simulation, write rounds.csv/summary.json");
    add_common(run, run_opts);
    run->add_option("--model-in", model_in, "load a pretrained fusion model (JSON)");
    run->add_option("--model-out", model_out, "save the fusion model that was used");

    CommonOpts cmp_opts;
    bool self_baseline = false;
    CLI::App* cmp = app.add_subcommand(
        "compare", "run proposed and direct-transmission baseline with the same seed");
    add_common(cmp, cmp_opts);
    cmp->add_flag("--self-baseline", self_baseline,
                  "debug: compare the proposed model against itself (all deltas zero)");

    std::uint64_t grad_seed = 1;
    int grad_nets = 50;
    CLI::App* grad = app.add_subcommand("gradcheck",
                                        "finite-difference check of the backprop gradients");
    grad->add_option("--seed", grad_seed)->capture_default_str();
    grad->add_option("--nets", grad_nets, "number of random nets")->capture_default_str();

    std::uint64_t mst_seed = 1;
    int mst_clusters = 200;
    CLI::App* mst = app.add_subcommand("mstcheck",
                                       "Prim vs exhaustive-enumeration spanning-tree check");
    mst->add_option("--seed", mst_seed)->capture_default_str();
    mst->add_option("--clusters", mst_clusters, "number of random clusters")
        ->capture_default_str();

    CLI11_PARSE(app, argc, argv);

    if (run->parsed()) return cmd_run(run_opts, model_in, model_out);
    if (cmp->parsed()) return cmd_compare(cmp_opts, self_baseline);
    if (grad->parsed()) return cmd_check(true, grad_seed, grad_nets);
    return cmd_check(false, mst_seed, mst_clusters);
}
