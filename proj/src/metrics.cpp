#include "wsnsim/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "wsnsim/errors.hpp"

namespace wsnsim {

namespace {

constexpr char kCsvHeader[] =
    "round,dead_cum,alive_cum,latency_ms,packet_loss_pct,fused_quality_pct,"
    "energy_consumed_j,ch_count";

std::string fmt6(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

nlohmann::ordered_json delta_json(const MetricDelta& d) {
    return {{"proposed", d.proposed},
            {"baseline", d.baseline},
            {"abs_delta", d.abs_delta},
            {"pct_delta", d.pct_delta}};
}

MetricDelta cost_delta(double proposed, double baseline) {
    MetricDelta d;
    d.proposed = proposed;
    d.baseline = baseline;
    d.abs_delta = baseline - proposed;
    d.pct_delta = baseline != 0.0 ? 100.0 * d.abs_delta / std::abs(baseline) : 0.0;
    return d;
}

MetricDelta benefit_delta(double proposed, double baseline) {
    MetricDelta d;
    d.proposed = proposed;
    d.baseline = baseline;
    d.abs_delta = proposed - baseline;
    d.pct_delta = baseline != 0.0 ? 100.0 * d.abs_delta / std::abs(baseline) : 0.0;
    return d;
}

}  // namespace

double fused_quality(double fd, double truth) {
    if (!std::isfinite(truth)) throw DomainError("fused_quality: non-finite truth");
    const double rel = std::abs(fd - truth) / std::max(std::abs(truth), 1e-9);
    return std::clamp(100.0 * std::max(0.0, 1.0 - rel), 0.0, 100.0);
}

std::string rounds_to_csv(std::span<const RoundMetrics> metrics) {
    std::string out(kCsvHeader);
    out += '\n';
    for (const RoundMetrics& m : metrics) {
        out += std::to_string(m.round);
        out += ',';
        out += std::to_string(m.dead_cum);
        out += ',';
        out += std::to_string(m.alive_cum);
        out += ',';
        out += fmt6(m.latency_ms);
        out += ',';
        out += fmt6(m.packet_loss_pct);
        out += ',';
        out += fmt6(m.fused_quality_pct);
        out += ',';
        out += fmt6(m.energy_consumed_j);
        out += ',';
        out += std::to_string(m.ch_count);
        out += '\n';
    }
    return out;
}

void write_rounds_csv(std::span<const RoundMetrics> metrics, const std::string& path) {
    if (path.empty()) throw IoError("write_rounds_csv: empty path");
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open for writing: " + path);
    out << rounds_to_csv(metrics);
    if (!out) throw IoError("failed writing: " + path);
}

std::vector<RoundMetrics> parse_rounds_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line) || line != kCsvHeader) {
        throw IoError("rounds CSV: missing or unexpected header");
    }
    std::vector<RoundMetrics> metrics;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream row(line);
        std::string cell;
        std::vector<std::string> cells;
        while (std::getline(row, cell, ',')) cells.push_back(cell);
        if (cells.size() != 8) throw IoError("rounds CSV: malformed row '" + line + "'");
        RoundMetrics m;
        m.round = std::stoi(cells[0]);
        m.dead_cum = std::stoi(cells[1]);
        m.alive_cum = std::stoi(cells[2]);
        m.latency_ms = std::stod(cells[3]);
        m.packet_loss_pct = std::stod(cells[4]);
        m.fused_quality_pct = std::stod(cells[5]);
        m.energy_consumed_j = std::stod(cells[6]);
        m.ch_count = std::stoi(cells[7]);
        metrics.push_back(m);
    }
    return metrics;
}

std::vector<RoundMetrics> read_rounds_csv(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_rounds_csv(buf.str());
}

nlohmann::ordered_json summary_to_json(const RunSummary& summary) {
    nlohmann::ordered_json doc;
    doc["final_dead"] = summary.final_dead;
    doc["final_alive"] = summary.final_alive;
    doc["mean_latency_ms"] = summary.mean_latency_ms;
    doc["mean_packet_loss_pct"] = summary.mean_packet_loss_pct;
    doc["mean_fused_quality_pct"] = summary.mean_fused_quality_pct;
    doc["total_energy_j"] = summary.total_energy_j;
    if (summary.first_death_round) {
        doc["first_death_round"] = *summary.first_death_round;
    } else {
        doc["first_death_round"] = nullptr;
    }
    doc["config_digest"] = summary.config_digest;
    return doc;
}

RunSummary summary_from_json(const nlohmann::json& doc) {
    RunSummary s;
    try {
        s.final_dead = doc.at("final_dead").get<int>();
        s.final_alive = doc.at("final_alive").get<int>();
        s.mean_latency_ms = doc.at("mean_latency_ms").get<double>();
        s.mean_packet_loss_pct = doc.at("mean_packet_loss_pct").get<double>();
        s.mean_fused_quality_pct = doc.at("mean_fused_quality_pct").get<double>();
        s.total_energy_j = doc.at("total_energy_j").get<double>();
        if (!doc.at("first_death_round").is_null()) {
            s.first_death_round = doc.at("first_death_round").get<int>();
        }
        s.config_digest = doc.at("config_digest").get<std::string>();
    } catch (const nlohmann::json::exception& e) {
        throw IoError(std::string("summary JSON: ") + e.what());
    }
    return s;
}

void write_summary_json(const RunSummary& summary, const std::string& path) {
    if (path.empty()) throw IoError("write_summary_json: empty path");
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open for writing: " + path);
    out << summary_to_json(summary).dump(2) << '\n';
    if (!out) throw IoError("failed writing: " + path);
}

ComparisonReport compare_runs(const RunSummary& proposed, const RunSummary& baseline,
                              int rounds_proposed, int rounds_baseline) {
    const int n_proposed = proposed.final_dead + proposed.final_alive;
    const int n_baseline = baseline.final_dead + baseline.final_alive;
    if (n_proposed != n_baseline) {
        throw DomainError("compare_runs: node counts differ");
    }
    if (rounds_proposed != rounds_baseline) {
        throw DomainError("compare_runs: round counts differ");
    }
    ComparisonReport report;
    report.node_count = n_proposed;
    report.rounds = rounds_proposed;
    report.total_energy_j = cost_delta(proposed.total_energy_j, baseline.total_energy_j);
    report.mean_latency_ms = cost_delta(proposed.mean_latency_ms, baseline.mean_latency_ms);
    report.final_alive = benefit_delta(proposed.final_alive, baseline.final_alive);
    // A run with no death counts as surviving one round past the horizon.
    const double no_death = rounds_proposed + 1;
    report.first_death_round =
        benefit_delta(proposed.first_death_round.value_or(static_cast<int>(no_death)),
                      baseline.first_death_round.value_or(static_cast<int>(no_death)));
    report.proposed_first_death = proposed.first_death_round;
    report.baseline_first_death = baseline.first_death_round;
    return report;
}

nlohmann::ordered_json comparison_to_json(const ComparisonReport& report) {
    nlohmann::ordered_json doc;
    doc["node_count"] = report.node_count;
    doc["rounds"] = report.rounds;
    doc["total_energy_j"] = delta_json(report.total_energy_j);
    doc["mean_latency_ms"] = delta_json(report.mean_latency_ms);
    doc["final_alive"] = delta_json(report.final_alive);
    doc["first_death_round"] = delta_json(report.first_death_round);
    if (report.proposed_first_death) {
        doc["proposed_first_death"] = *report.proposed_first_death;
    } else {
        doc["proposed_first_death"] = nullptr;
    }
    if (report.baseline_first_death) {
        doc["baseline_first_death"] = *report.baseline_first_death;
    } else {
        doc["baseline_first_death"] = nullptr;
    }
    return doc;
}

void write_comparison_json(const ComparisonReport& report, const std::string& path) {
    if (path.empty()) throw IoError("write_comparison_json: empty path");
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open for writing: " + path);
    out << comparison_to_json(report).dump(2) << '\n';
    if (!out) throw IoError("failed writing: " + path);
}

}  // namespace wsnsim
