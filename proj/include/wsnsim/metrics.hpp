#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace wsnsim {

// One simulation round's observable outcomes. The audit_* fields carry the
// two independent energy accountings for conservation checks; they are not
// serialized.
struct RoundMetrics {
    int round = 0;
    int dead_cum = 0;
    int alive_cum = 0;
    double latency_ms = 0.0;
    double packet_loss_pct = 0.0;
    double fused_quality_pct = 0.0;
    double energy_consumed_j = 0.0;
    int ch_count = 0;

    double audit_node_side_j = 0.0;    // sum of per-node decrements
    double audit_composition_j = 0.0;  // rebuilt from the aggregate energy formulas
};

struct RunSummary {
    int final_dead = 0;
    int final_alive = 0;
    double mean_latency_ms = 0.0;
    double mean_packet_loss_pct = 0.0;
    double mean_fused_quality_pct = 0.0;
    double total_energy_j = 0.0;
    std::optional<int> first_death_round;
    std::string config_digest;
};

// Percentage closeness of a fused value to ground truth: clipped relative
// absolute error. 100 means exact, 0 means off by the truth's own scale.
double fused_quality(double fd, double truth);

// CSV with a fixed 8-column header, floats at 6 significant digits, LF
// line endings. Parsing the file back and re-serializing is byte-stable.
void write_rounds_csv(std::span<const RoundMetrics> metrics, const std::string& path);
std::string rounds_to_csv(std::span<const RoundMetrics> metrics);
std::vector<RoundMetrics> parse_rounds_csv(const std::string& text);
std::vector<RoundMetrics> read_rounds_csv(const std::string& path);

// Flat JSON object, fixed key order, deterministic bytes.
void write_summary_json(const RunSummary& summary, const std::string& path);
nlohmann::ordered_json summary_to_json(const RunSummary& summary);
RunSummary summary_from_json(const nlohmann::json& doc);

// Side-by-side deltas of a proposed run against a baseline run over the
// same population and round count. Percent deltas are baseline-relative
// and oriented so that positive means the proposed run improved.
struct MetricDelta {
    double proposed = 0.0;
    double baseline = 0.0;
    double abs_delta = 0.0;  // improvement in the metric's own unit
    double pct_delta = 0.0;  // 100 * abs_delta / |baseline|
};

struct ComparisonReport {
    int node_count = 0;
    int rounds = 0;
    MetricDelta total_energy_j;      // cost: baseline - proposed
    MetricDelta mean_latency_ms;     // cost: baseline - proposed
    MetricDelta final_alive;         // benefit: proposed - baseline
    MetricDelta first_death_round;   // benefit; no-death counts as rounds+1
    std::optional<int> proposed_first_death;
    std::optional<int> baseline_first_death;
};

ComparisonReport compare_runs(const RunSummary& proposed, const RunSummary& baseline,
                              int rounds_proposed, int rounds_baseline);
nlohmann::ordered_json comparison_to_json(const ComparisonReport& report);
void write_comparison_json(const ComparisonReport& report, const std::string& path);

}  // namespace wsnsim
