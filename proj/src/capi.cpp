#include "wsnsim.h"

#include <cstring>
#include <fstream>
#include <string>

#include "wsnsim/config.hpp"
#include "wsnsim/errors.hpp"
#include "wsnsim/metrics.hpp"
#include "wsnsim/sim.hpp"
#include "wsnsim/verify.hpp"

using wsnsim::ConfigError;
using wsnsim::IoError;

// Opaque handle bodies. The config keeps the resolved JSON document so
// overrides can be applied before validation happens at run time.
struct wsnsim_config {
    nlohmann::ordered_json resolved;
};

struct wsnsim_result {
    wsnsim::RunResult run;
};

namespace {

thread_local std::string g_last_error;

wsnsim_status fail(wsnsim_status code, const std::string& message) {
    g_last_error = message;
    return code;
}

template <typename Fn>
wsnsim_status guarded(Fn&& fn) {
    try {
        return fn();
    } catch (const ConfigError& e) {
        return fail(WSNSIM_CONFIG_ERROR, e.what());
    } catch (const IoError& e) {
        return fail(WSNSIM_IO_ERROR, e.what());
    } catch (const std::exception& e) {
        return fail(WSNSIM_ERROR, e.what());
    }
}

char* dup_string(const std::string& s) {
    char* out = new char[s.size() + 1];
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

wsnsim_status require(bool ok, const char* what) {
    return ok ? WSNSIM_OK : fail(WSNSIM_ERROR, std::string("null argument: ") + what);
}

}  // namespace

extern "C" {

const char* wsnsim_version(void) {
    return "1.0.0";
}

const char* wsnsim_last_error(void) {
    return g_last_error.c_str();
}

void wsnsim_string_free(char* s) {
    delete[] s;
}

wsnsim_status wsnsim_config_default(wsnsim_config** out) {
    if (auto st = require(out != nullptr, "out"); st != WSNSIM_OK) return st;
    return guarded([&] {
        *out = new wsnsim_config{wsnsim::default_config_json()};
        return WSNSIM_OK;
    });
}

wsnsim_status wsnsim_config_load(const char* path, wsnsim_config** out) {
    if (auto st = require(path && out, "path/out"); st != WSNSIM_OK) return st;
    return guarded([&]() -> wsnsim_status {
        std::ifstream in(path, std::ios::binary);
        if (!in) throw ConfigError(std::string("cannot open config file: ") + path);
        nlohmann::json doc;
        try {
            in >> doc;
        } catch (const nlohmann::json::exception& e) {
            throw ConfigError(std::string("config parse error in ") + path + ": " + e.what());
        }
        *out = new wsnsim_config{wsnsim::merge_config_json(doc)};
        return WSNSIM_OK;
    });
}

wsnsim_status wsnsim_config_set(wsnsim_config* cfg, const char* dotted_key, const char* value) {
    if (auto st = require(cfg && dotted_key && value, "cfg/key/value"); st != WSNSIM_OK) {
        return st;
    }
    return guarded([&] {
        wsnsim::apply_override(cfg->resolved, dotted_key, value);
        return WSNSIM_OK;
    });
}

wsnsim_status wsnsim_config_set_seed(wsnsim_config* cfg, uint64_t seed) {
    if (auto st = require(cfg != nullptr, "cfg"); st != WSNSIM_OK) return st;
    cfg->resolved["seed"] = seed;
    return WSNSIM_OK;
}

wsnsim_status wsnsim_config_set_strict_radius(wsnsim_config* cfg, int strict) {
    if (auto st = require(cfg != nullptr, "cfg"); st != WSNSIM_OK) return st;
    cfg->resolved["strict_radius"] = strict != 0;
    return WSNSIM_OK;
}

wsnsim_status wsnsim_config_dump(const wsnsim_config* cfg, char** json_out) {
    if (auto st = require(cfg && json_out, "cfg/json_out"); st != WSNSIM_OK) return st;
    return guarded([&] {
        *json_out = dup_string(cfg->resolved.dump(2) + "\n");
        return WSNSIM_OK;
    });
}

void wsnsim_config_free(wsnsim_config* cfg) {
    delete cfg;
}

wsnsim_status wsnsim_run(const wsnsim_config* cfg, const char* model_in, const char* model_out,
                         wsnsim_result** out) {
    if (auto st = require(cfg && out, "cfg/out"); st != WSNSIM_OK) return st;
    return guarded([&] {
        const wsnsim::SimConfig sim_cfg = wsnsim::parse_config(cfg->resolved);
        wsnsim::Mlp loaded;
        const wsnsim::Mlp* pretrained = nullptr;
        if (model_in != nullptr) {
            loaded = wsnsim::load_mlp(model_in);
            pretrained = &loaded;
        }
        wsnsim::Mlp used;
        wsnsim::RunResult run = wsnsim::run_simulation(sim_cfg, pretrained, &used);
        if (model_out != nullptr) wsnsim::save_mlp(used, model_out);
        *out = new wsnsim_result{std::move(run)};
        return WSNSIM_OK;
    });
}

wsnsim_status wsnsim_run_baseline(const wsnsim_config* cfg, wsnsim_result** out) {
    if (auto st = require(cfg && out, "cfg/out"); st != WSNSIM_OK) return st;
    return guarded([&] {
        const wsnsim::SimConfig sim_cfg = wsnsim::parse_config(cfg->resolved);
        *out = new wsnsim_result{wsnsim::run_baseline(sim_cfg)};
        return WSNSIM_OK;
    });
}

void wsnsim_result_free(wsnsim_result* result) {
    delete result;
}

wsnsim_status wsnsim_result_write_rounds_csv(const wsnsim_result* result, const char* path) {
    if (auto st = require(result && path, "result/path"); st != WSNSIM_OK) return st;
    return guarded([&] {
        wsnsim::write_rounds_csv(result->run.metrics, path);
        return WSNSIM_OK;
    });
}

wsnsim_status wsnsim_result_write_summary_json(const wsnsim_result* result, const char* path) {
    if (auto st = require(result && path, "result/path"); st != WSNSIM_OK) return st;
    return guarded([&] {
        wsnsim::write_summary_json(result->run.summary, path);
        return WSNSIM_OK;
    });
}

wsnsim_status wsnsim_result_summary_json(const wsnsim_result* result, char** json_out) {
    if (auto st = require(result && json_out, "result/json_out"); st != WSNSIM_OK) return st;
    return guarded([&] {
        *json_out = dup_string(wsnsim::summary_to_json(result->run.summary).dump(2) + "\n");
        return WSNSIM_OK;
    });
}

wsnsim_status wsnsim_compare(const wsnsim_result* proposed, const wsnsim_result* baseline,
                             const char* path, char** json_out) {
    if (auto st = require(proposed && baseline, "proposed/baseline"); st != WSNSIM_OK) {
        return st;
    }
    return guarded([&] {
        const wsnsim::ComparisonReport report = wsnsim::compare_runs(
            proposed->run.summary, baseline->run.summary, proposed->run.config.rounds,
            baseline->run.config.rounds);
        if (path != nullptr) wsnsim::write_comparison_json(report, path);
        if (json_out != nullptr) {
            *json_out = dup_string(wsnsim::comparison_to_json(report).dump(2) + "\n");
        }
        return WSNSIM_OK;
    });
}

wsnsim_status wsnsim_gradcheck(uint64_t seed, int net_count, char** report_json) {
    return guarded([&] {
        const wsnsim::GradCheckReport report = wsnsim::run_gradient_check(seed, net_count);
        if (report_json != nullptr) {
            *report_json = dup_string(wsnsim::gradcheck_report_json(report));
        }
        if (!report.pass) {
            return fail(WSNSIM_CHECK_FAILED,
                        "gradient check failed: max relative error " +
                            std::to_string(report.max_rel_err));
        }
        return WSNSIM_OK;
    });
}

wsnsim_status wsnsim_mstcheck(uint64_t seed, int cluster_count, char** report_json) {
    return guarded([&] {
        const wsnsim::MstCheckReport report = wsnsim::run_mst_check(seed, cluster_count);
        if (report_json != nullptr) {
            *report_json = dup_string(wsnsim::mstcheck_report_json(report));
        }
        if (!report.pass) {
            return fail(WSNSIM_CHECK_FAILED, "mst check failed: max gap " +
                                                 std::to_string(report.max_abs_gap));
        }
        return WSNSIM_OK;
    });
}

}  // extern "C"
