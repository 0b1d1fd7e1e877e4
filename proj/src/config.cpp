#include "wsnsim/config.hpp"

#include <fstream>
#include <sstream>

#include "wsnsim/errors.hpp"
#include "wsnsim/rng.hpp"

namespace wsnsim {

namespace {

nlohmann::ordered_json trapezoid_json(const TrapezoidParams& p) {
    return nlohmann::ordered_json::array({p.a, p.b, p.c, p.d});
}

TrapezoidParams trapezoid_from(const nlohmann::json& arr, const char* name) {
    if (!arr.is_array() || arr.size() != 4) {
        throw ConfigError(std::string("trapezoid.") + name + " must be an array of 4 numbers");
    }
    TrapezoidParams p{arr[0].get<double>(), arr[1].get<double>(), arr[2].get<double>(),
                      arr[3].get<double>()};
    if (!(p.a <= p.b && p.b <= p.c && p.c <= p.d)) {
        throw ConfigError(std::string("trapezoid.") + name + " breakpoints must be ordered");
    }
    return p;
}

Point point_from(const nlohmann::json& arr, const char* name) {
    if (!arr.is_array() || arr.size() != 2) {
        throw ConfigError(std::string(name) + " must be an array [x, y]");
    }
    return {arr[0].get<double>(), arr[1].get<double>()};
}

// Recursively overlays src onto dst; rejects keys the defaults don't know.
void overlay(nlohmann::ordered_json& dst, const nlohmann::json& src, const std::string& prefix) {
    if (!src.is_object()) throw ConfigError("config document must be a JSON object");
    for (const auto& [key, value] : src.items()) {
        const std::string path = prefix.empty() ? key : prefix + "." + key;
        if (!dst.contains(key)) throw ConfigError("unknown config key '" + path + "'");
        if (dst[key].is_object() && value.is_object()) {
            overlay(dst[key], value, path);
        } else if (dst[key].is_object() != value.is_object()) {
            throw ConfigError("config key '" + path + "' has the wrong structure");
        } else {
            dst[key] = value;
        }
    }
}

template <typename T>
T get_field(const nlohmann::ordered_json& doc, const char* key) {
    try {
        return doc.at(key).get<T>();
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("config key '") + key + "': " + e.what());
    }
}

}  // namespace

nlohmann::ordered_json default_config_json() {
    const SimConfig d;
    nlohmann::ordered_json doc;
    doc["n_sensors"] = d.n_sensors;
    doc["n_relays"] = d.n_relays;
    doc["sensor_energy_j"] = d.sensor_energy_j;
    doc["relay_energy_j"] = d.relay_energy_j;
    doc["bs_position"] = {d.bs_position.x, d.bs_position.y};
    doc["field_size"] = {d.field_width, d.field_height};
    doc["rounds"] = d.rounds;
    doc["r_cluster"] = d.r_cluster;
    doc["ch_percentile"] = d.ch_percentile;
    doc["r_replenish"] = d.r_replenish;
    doc["strict_radius"] = d.strict_radius;
    doc["control_bits"] = d.control_bits;
    doc["energy_form"] = "eq1";
    doc["seed"] = d.seed;
    doc["radio"] = {{"e_elec", d.radio.e_elec}, {"e_fs", d.radio.e_fs},
                    {"e_mp", d.radio.e_mp},     {"e_cpu", d.radio.e_cpu},
                    {"p_idle", d.radio.p_idle}, {"t_idle", d.radio.t_idle},
                    {"d0", 0.0},                {"packet_bits", d.radio.packet_bits}};
    doc["bpnn"] = {{"input_width_cap", d.bpnn.input_width_cap},
                   {"hidden_sizes", d.bpnn.hidden_sizes},
                   {"eta", d.bpnn.eta},
                   {"epochs", d.bpnn.epochs},
                   {"train_samples", d.bpnn.train_samples}};
    doc["sensing"] = {{"amplitude", d.sensing.amplitude}, {"period", d.sensing.period},
                      {"noise_sigma", d.sensing.noise_sigma}, {"offset", d.sensing.offset},
                      {"grad_x", d.sensing.grad_x},           {"grad_y", d.sensing.grad_y}};
    doc["latency"] = {{"per_hop_ms", d.latency.per_hop_ms},
                      {"per_meter_ms", d.latency.per_meter_ms}};
    doc["loss_model"] = {{"base", d.loss.base}, {"coeff", d.loss.coeff}};
    doc["trapezoid"] = {{"low", trapezoid_json(d.trapezoids.low)},
                        {"medium", trapezoid_json(d.trapezoids.medium)},
                        {"high", trapezoid_json(d.trapezoids.high)}};
    return doc;
}

nlohmann::ordered_json merge_config_json(const nlohmann::json& doc) {
    nlohmann::ordered_json resolved = default_config_json();
    overlay(resolved, doc, "");
    return resolved;
}

void apply_override(nlohmann::ordered_json& resolved, const std::string& dotted_key,
                    const std::string& value_text) {
    nlohmann::ordered_json* node = &resolved;
    std::istringstream keys(dotted_key);
    std::string part;
    std::vector<std::string> parts;
    while (std::getline(keys, part, '.')) parts.push_back(part);
    if (parts.empty()) throw ConfigError("empty override key");

    for (std::size_t i = 0; i + 1 < parts.size(); ++i) {
        if (!node->contains(parts[i]) || !(*node)[parts[i]].is_object()) {
            throw ConfigError("unknown config key '" + dotted_key + "'");
        }
        node = &(*node)[parts[i]];
    }
    const std::string& leaf = parts.back();
    if (!node->contains(leaf)) throw ConfigError("unknown config key '" + dotted_key + "'");
    if ((*node)[leaf].is_object()) {
        throw ConfigError("override key '" + dotted_key + "' addresses a section, not a value");
    }

    nlohmann::ordered_json value;
    try {
        value = nlohmann::ordered_json::parse(value_text);
    } catch (const nlohmann::json::exception&) {
        value = value_text;  // bare strings like eq24 need no quotes
    }
    (*node)[leaf] = value;
}

std::string config_digest(const nlohmann::ordered_json& resolved) {
    const std::uint64_t h = fnv1a64(resolved.dump());
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

SimConfig parse_config(const nlohmann::ordered_json& resolved) {
    SimConfig cfg;
    cfg.n_sensors = get_field<int>(resolved, "n_sensors");
    cfg.n_relays = get_field<int>(resolved, "n_relays");
    cfg.sensor_energy_j = get_field<double>(resolved, "sensor_energy_j");
    cfg.relay_energy_j = get_field<double>(resolved, "relay_energy_j");
    cfg.bs_position = point_from(resolved.at("bs_position"), "bs_position");
    const auto field = resolved.at("field_size");
    if (!field.is_array() || field.size() != 2) {
        throw ConfigError("field_size must be an array [width, height]");
    }
    cfg.field_width = field[0].get<double>();
    cfg.field_height = field[1].get<double>();
    cfg.rounds = get_field<int>(resolved, "rounds");
    cfg.r_cluster = get_field<double>(resolved, "r_cluster");
    cfg.ch_percentile = get_field<double>(resolved, "ch_percentile");
    cfg.r_replenish = get_field<int>(resolved, "r_replenish");
    cfg.strict_radius = get_field<bool>(resolved, "strict_radius");
    cfg.control_bits = get_field<std::int64_t>(resolved, "control_bits");
    const auto form = get_field<std::string>(resolved, "energy_form");
    if (form == "eq1") {
        cfg.energy_form = EnergyForm::Eq1;
    } else if (form == "eq24") {
        cfg.energy_form = EnergyForm::Eq24;
    } else {
        throw ConfigError("energy_form must be 'eq1' or 'eq24'");
    }
    cfg.seed = get_field<std::uint64_t>(resolved, "seed");

    const auto& radio = resolved.at("radio");
    cfg.radio.e_elec = get_field<double>(radio, "e_elec");
    cfg.radio.e_fs = get_field<double>(radio, "e_fs");
    cfg.radio.e_mp = get_field<double>(radio, "e_mp");
    cfg.radio.e_cpu = get_field<double>(radio, "e_cpu");
    cfg.radio.p_idle = get_field<double>(radio, "p_idle");
    cfg.radio.t_idle = get_field<double>(radio, "t_idle");
    cfg.radio.d0 = get_field<double>(radio, "d0");
    cfg.radio.packet_bits = get_field<std::int64_t>(radio, "packet_bits");
    cfg.radio.finalize();

    const auto& bpnn = resolved.at("bpnn");
    cfg.bpnn.input_width_cap = get_field<int>(bpnn, "input_width_cap");
    cfg.bpnn.hidden_sizes = get_field<std::vector<int>>(bpnn, "hidden_sizes");
    cfg.bpnn.eta = get_field<double>(bpnn, "eta");
    cfg.bpnn.epochs = get_field<int>(bpnn, "epochs");
    cfg.bpnn.train_samples = get_field<int>(bpnn, "train_samples");

    const auto& sensing = resolved.at("sensing");
    cfg.sensing.amplitude = get_field<double>(sensing, "amplitude");
    cfg.sensing.period = get_field<double>(sensing, "period");
    cfg.sensing.noise_sigma = get_field<double>(sensing, "noise_sigma");
    cfg.sensing.offset = get_field<double>(sensing, "offset");
    cfg.sensing.grad_x = get_field<double>(sensing, "grad_x");
    cfg.sensing.grad_y = get_field<double>(sensing, "grad_y");

    const auto& latency = resolved.at("latency");
    cfg.latency.per_hop_ms = get_field<double>(latency, "per_hop_ms");
    cfg.latency.per_meter_ms = get_field<double>(latency, "per_meter_ms");

    const auto& loss = resolved.at("loss_model");
    cfg.loss.base = get_field<double>(loss, "base");
    cfg.loss.coeff = get_field<double>(loss, "coeff");

    const auto& trap = resolved.at("trapezoid");
    cfg.trapezoids.low = trapezoid_from(trap.at("low"), "low");
    cfg.trapezoids.medium = trapezoid_from(trap.at("medium"), "medium");
    cfg.trapezoids.high = trapezoid_from(trap.at("high"), "high");

    if (cfg.n_sensors < 0 || cfg.n_relays < 0 || cfg.node_count() < 1) {
        throw ConfigError("need at least one node");
    }
    if (cfg.sensor_energy_j <= 0 || cfg.relay_energy_j <= 0) {
        throw ConfigError("initial energies must be positive");
    }
    if (cfg.field_width <= 0 || cfg.field_height <= 0) {
        throw ConfigError("field_size must have positive area");
    }
    if (cfg.rounds < 0) throw ConfigError("rounds must be >= 0");
    if (cfg.r_cluster <= 0) throw ConfigError("r_cluster must be positive");
    if (!(cfg.ch_percentile > 0 && cfg.ch_percentile < 1)) {
        throw ConfigError("ch_percentile must lie in (0,1)");
    }
    if (cfg.r_replenish < 0) throw ConfigError("r_replenish must be >= 0 (0 disables)");
    if (cfg.control_bits < 0) throw ConfigError("control_bits must be >= 0");
    if (cfg.bpnn.input_width_cap < 1) throw ConfigError("bpnn.input_width_cap must be >= 1");
    if (cfg.bpnn.hidden_sizes.empty()) throw ConfigError("bpnn needs at least one hidden layer");
    for (int h : cfg.bpnn.hidden_sizes) {
        if (h < 1) throw ConfigError("bpnn hidden sizes must be >= 1");
    }
    if (cfg.bpnn.eta <= 0) throw ConfigError("bpnn.eta must be positive");
    if (cfg.bpnn.epochs < 1) throw ConfigError("bpnn.epochs must be >= 1");
    if (cfg.bpnn.train_samples < 1) throw ConfigError("bpnn.train_samples must be >= 1");
    if (cfg.sensing.period <= 0) throw ConfigError("sensing.period must be positive");
    if (cfg.sensing.noise_sigma < 0) throw ConfigError("sensing.noise_sigma must be >= 0");
    if (cfg.latency.per_hop_ms < 0 || cfg.latency.per_meter_ms < 0) {
        throw ConfigError("latency parameters must be >= 0");
    }
    if (cfg.loss.base < 0 || cfg.loss.coeff < 0) {
        throw ConfigError("loss_model parameters must be >= 0");
    }

    cfg.digest = config_digest(resolved);
    return cfg;
}

SimConfig load_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open config file: " + path);
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError("config parse error in " + path + ": " + e.what());
    }
    return parse_config(merge_config_json(doc));
}

}  // namespace wsnsim
