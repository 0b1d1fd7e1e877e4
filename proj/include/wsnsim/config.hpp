#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "wsnsim/clustering.hpp"
#include "wsnsim/energy.hpp"
#include "wsnsim/geometry.hpp"

namespace wsnsim {

struct BpnnConfig {
    int input_width_cap = 16;
    std::vector<int> hidden_sizes{8};
    double eta = 0.01;
    int epochs = 2000;
    int train_samples = 256;
};

// Synthetic scalar field the sensors observe: a seasonal sine plus a fixed
// spatial gradient, strictly positive over the default deployment.
struct SensingConfig {
    double amplitude = 0.2;
    double period = 50.0;
    double noise_sigma = 0.02;
    double offset = 1.0;
    double grad_x = 2e-4;
    double grad_y = 2e-4;
};

struct LatencyConfig {
    double per_hop_ms = 1.0;
    double per_meter_ms = 0.02;
};

// Per-link Bernoulli loss: p = min(1, base + coeff * distance_m).
struct LossConfig {
    double base = 0.0003;
    double coeff = 1e-6;
};

struct SimConfig {
    int n_sensors = 90;
    int n_relays = 10;
    double sensor_energy_j = 1.0;
    double relay_energy_j = 2.0;
    Point bs_position{250.0, 500.0};
    double field_width = 500.0;
    double field_height = 500.0;
    int rounds = 100;
    double r_cluster = 75.0;
    double ch_percentile = 0.95;
    int r_replenish = 0;  // 0 disables periodic energy replenishment
    bool strict_radius = false;
    std::int64_t control_bits = 0;
    EnergyForm energy_form = EnergyForm::Eq1;
    std::uint64_t seed = 1;

    RadioParams radio;
    BpnnConfig bpnn;
    SensingConfig sensing;
    LatencyConfig latency;
    LossConfig loss;
    TrapezoidSet trapezoids;

    // Stable hash of the resolved JSON document this config came from.
    std::string digest;

    int node_count() const { return n_sensors + n_relays; }
};

// The full default configuration as a JSON document (every known key).
nlohmann::ordered_json default_config_json();

// Overlays `doc` onto the defaults; unknown keys raise ConfigError.
nlohmann::ordered_json merge_config_json(const nlohmann::json& doc);

// Applies one dotted-key override (e.g. "radio.e_fs=1e-11") onto a resolved
// document. The key must already exist; the value text is parsed as JSON.
void apply_override(nlohmann::ordered_json& resolved, const std::string& dotted_key,
                    const std::string& value_text);

// Validates a resolved document and builds the native config (computing
// the digest as a side effect).
SimConfig parse_config(const nlohmann::ordered_json& resolved);

// Reads a config file, merges it over the defaults and validates.
SimConfig load_config(const std::string& path);

// FNV-1a over the canonical dump, rendered as 16 hex digits.
std::string config_digest(const nlohmann::ordered_json& resolved);

}  // namespace wsnsim
