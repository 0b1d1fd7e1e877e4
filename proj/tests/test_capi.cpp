#include <doctest.h>

#include <cstring>
#include <filesystem>
#include <string>

#include <nlohmann/json.hpp>

#include "wsnsim.h"

namespace {

struct ConfigHandle {
    wsnsim_config* ptr = nullptr;
    ~ConfigHandle() { wsnsim_config_free(ptr); }
};

struct ResultHandle {
    wsnsim_result* ptr = nullptr;
    ~ResultHandle() { wsnsim_result_free(ptr); }
};

// Small, fast configuration for API-level smoke tests.
void shrink(wsnsim_config* cfg) {
    wsnsim_config_set(cfg, "n_sensors", "10");
    wsnsim_config_set(cfg, "n_relays", "2");
    wsnsim_config_set(cfg, "rounds", "4");
    wsnsim_config_set(cfg, "bpnn.epochs", "40");
    wsnsim_config_set(cfg, "bpnn.train_samples", "16");
}

}  // namespace

TEST_CASE("version and error strings exist") {
    CHECK(wsnsim_version() != nullptr);
    CHECK(wsnsim_last_error() != nullptr);
}

TEST_CASE("config lifecycle over the C API") {
    ConfigHandle cfg;
    REQUIRE(wsnsim_config_default(&cfg.ptr) == WSNSIM_OK);

    char* dump = nullptr;
    REQUIRE(wsnsim_config_dump(cfg.ptr, &dump) == WSNSIM_OK);
    const auto doc = nlohmann::json::parse(dump);
    wsnsim_string_free(dump);
    CHECK(doc["n_sensors"] == 90);

    CHECK(wsnsim_config_set(cfg.ptr, "rounds", "12") == WSNSIM_OK);
    CHECK(wsnsim_config_set_seed(cfg.ptr, 77) == WSNSIM_OK);
    CHECK(wsnsim_config_set_strict_radius(cfg.ptr, 1) == WSNSIM_OK);

    CHECK(wsnsim_config_set(cfg.ptr, "nonsense.key", "1") == WSNSIM_CONFIG_ERROR);
    CHECK(std::string(wsnsim_last_error()).find("nonsense.key") != std::string::npos);

    CHECK(wsnsim_config_load("/no/such/file.json", &cfg.ptr) == WSNSIM_CONFIG_ERROR);
}

TEST_CASE("run, outputs and comparison over the C API") {
    const auto dir = std::filesystem::temp_directory_path() / "wsnsim_capi_test";
    std::filesystem::create_directories(dir);

    ConfigHandle cfg;
    REQUIRE(wsnsim_config_default(&cfg.ptr) == WSNSIM_OK);
    shrink(cfg.ptr);

    ResultHandle result;
    REQUIRE(wsnsim_run(cfg.ptr, nullptr, nullptr, &result.ptr) == WSNSIM_OK);

    const std::string csv = (dir / "rounds.csv").string();
    const std::string summary = (dir / "summary.json").string();
    CHECK(wsnsim_result_write_rounds_csv(result.ptr, csv.c_str()) == WSNSIM_OK);
    CHECK(wsnsim_result_write_summary_json(result.ptr, summary.c_str()) == WSNSIM_OK);
    CHECK(std::filesystem::file_size(csv) > 0);

    char* text = nullptr;
    REQUIRE(wsnsim_result_summary_json(result.ptr, &text) == WSNSIM_OK);
    const auto doc = nlohmann::json::parse(text);
    wsnsim_string_free(text);
    CHECK(doc["final_dead"].is_number());
    CHECK(doc.size() == 8);

    // invalid target path surfaces as an I/O error
    CHECK(wsnsim_result_write_rounds_csv(result.ptr, "/no/such/dir/rounds.csv") ==
          WSNSIM_IO_ERROR);

    // baseline + comparison
    ResultHandle baseline;
    REQUIRE(wsnsim_run_baseline(cfg.ptr, &baseline.ptr) == WSNSIM_OK);
    char* cmp = nullptr;
    REQUIRE(wsnsim_compare(result.ptr, baseline.ptr, nullptr, &cmp) == WSNSIM_OK);
    const auto cmp_doc = nlohmann::json::parse(cmp);
    wsnsim_string_free(cmp);
    CHECK(cmp_doc["node_count"] == 12);

    // model save/load round trip through the run entry point
    const std::string model = (dir / "model.json").string();
    ResultHandle with_model;
    REQUIRE(wsnsim_run(cfg.ptr, nullptr, model.c_str(), &with_model.ptr) == WSNSIM_OK);
    ResultHandle reloaded;
    REQUIRE(wsnsim_run(cfg.ptr, model.c_str(), nullptr, &reloaded.ptr) == WSNSIM_OK);

    char* a = nullptr;
    char* b = nullptr;
    wsnsim_result_summary_json(with_model.ptr, &a);
    wsnsim_result_summary_json(reloaded.ptr, &b);
    CHECK(std::strcmp(a, b) == 0);  // frozen net => identical run
    wsnsim_string_free(a);
    wsnsim_string_free(b);

    std::filesystem::remove_all(dir);
}

TEST_CASE("config validation surfaces at run time") {
    ConfigHandle cfg;
    REQUIRE(wsnsim_config_default(&cfg.ptr) == WSNSIM_OK);
    CHECK(wsnsim_config_set(cfg.ptr, "ch_percentile", "2.0") == WSNSIM_OK);
    ResultHandle result;
    CHECK(wsnsim_run(cfg.ptr, nullptr, nullptr, &result.ptr) == WSNSIM_CONFIG_ERROR);
}

TEST_CASE("verification harnesses over the C API") {
    char* report = nullptr;
    CHECK(wsnsim_gradcheck(3, 5, &report) == WSNSIM_OK);
    const auto grad = nlohmann::json::parse(report);
    wsnsim_string_free(report);
    CHECK(grad["pass"] == true);
    CHECK(grad["max_rel_err"].get<double>() < 1e-4);

    report = nullptr;
    CHECK(wsnsim_mstcheck(3, 25, &report) == WSNSIM_OK);
    const auto mst = nlohmann::json::parse(report);
    wsnsim_string_free(report);
    CHECK(mst["pass"] == true);
    CHECK(mst["clusters_checked"] == 25);
}
