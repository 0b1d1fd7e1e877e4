#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "wsnsim/errors.hpp"
#include "wsnsim/metrics.hpp"
#include "wsnsim/rng.hpp"

using namespace wsnsim;

namespace {

std::vector<RoundMetrics> sample_metrics(int rounds) {
    Rng rng(5, "metrics-sample");
    std::vector<RoundMetrics> out;
    for (int r = 1; r <= rounds; ++r) {
        RoundMetrics m;
        m.round = r;
        m.dead_cum = r / 10;
        m.alive_cum = 100 - m.dead_cum;
        m.latency_ms = rng.uniform(5.0, 80.0);
        m.packet_loss_pct = rng.uniform(0.0, 2.0);
        m.fused_quality_pct = rng.uniform(90.0, 100.0);
        m.energy_consumed_j = rng.uniform(0.0, 0.5);
        m.ch_count = static_cast<int>(rng.uniform_int(1, 9));
        out.push_back(m);
    }
    return out;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

}  // namespace

TEST_CASE("fused_quality") {
    CHECK(fused_quality(1.23, 1.23) == 100.0);
    CHECK(fused_quality(0.0, 1.0) == 0.0);
    CHECK(fused_quality(0.95, 1.0) == doctest::Approx(95.0).epsilon(1e-12));
    CHECK(fused_quality(123.0, 1.0) == 0.0);  // clipped, never negative

    Rng rng(9, "quality-range");
    for (int i = 0; i < 500; ++i) {
        const double q = fused_quality(rng.uniform(-10.0, 10.0), rng.uniform(-5.0, 5.0));
        CHECK(q >= 0.0);
        CHECK(q <= 100.0);
    }
}

TEST_CASE("rounds CSV shape and round trip") {
    const auto dir = std::filesystem::temp_directory_path();
    const std::string path = (dir / "wsnsim_test_rounds.csv").string();

    write_rounds_csv({}, path);
    CHECK(slurp(path) ==
          "round,dead_cum,alive_cum,latency_ms,packet_loss_pct,fused_quality_pct,"
          "energy_consumed_j,ch_count\n");

    const auto metrics = sample_metrics(100);
    write_rounds_csv(metrics, path);
    const std::string text = slurp(path);
    CHECK(std::count(text.begin(), text.end(), '\n') == 101);
    CHECK(text.find("\r") == std::string::npos);

    // parse -> re-serialize is byte-identical
    const auto parsed = parse_rounds_csv(text);
    REQUIRE(parsed.size() == metrics.size());
    CHECK(rounds_to_csv(parsed) == text);

    std::filesystem::remove(path);
    CHECK_THROWS_AS(write_rounds_csv(metrics, "/no/such/dir/rounds.csv"), IoError);
    CHECK_THROWS_AS(parse_rounds_csv("bogus header\n"), IoError);
}

TEST_CASE("summary JSON key order and round trip") {
    RunSummary s;
    s.final_dead = 6;
    s.final_alive = 94;
    s.mean_latency_ms = 25.5;
    s.mean_packet_loss_pct = 0.05;
    s.mean_fused_quality_pct = 98.6;
    s.total_energy_j = 2.25;
    s.first_death_round = 61;
    s.config_digest = "0123456789abcdef";

    const auto doc = summary_to_json(s);
    const std::vector<std::string> expected_keys{
        "final_dead",          "final_alive",   "mean_latency_ms",
        "mean_packet_loss_pct", "mean_fused_quality_pct", "total_energy_j",
        "first_death_round",   "config_digest"};
    std::vector<std::string> keys;
    for (const auto& [k, _] : doc.items()) keys.push_back(k);
    CHECK(keys == expected_keys);

    const RunSummary back = summary_from_json(doc);
    CHECK(back.final_dead == s.final_dead);
    CHECK(back.mean_latency_ms == s.mean_latency_ms);
    CHECK(back.first_death_round == s.first_death_round);
    CHECK(back.config_digest == s.config_digest);

    // deterministic serialization
    CHECK(summary_to_json(s).dump(2) == summary_to_json(s).dump(2));

    s.first_death_round.reset();
    CHECK(summary_to_json(s)["first_death_round"].is_null());
}

TEST_CASE("compare_runs") {
    RunSummary a;
    a.final_dead = 0;
    a.final_alive = 100;
    a.mean_latency_ms = 20.0;
    a.total_energy_j = 1.0;
    RunSummary b = a;

    const ComparisonReport same = compare_runs(a, b, 100, 100);
    CHECK(same.total_energy_j.abs_delta == 0.0);
    CHECK(same.total_energy_j.pct_delta == 0.0);
    CHECK(same.final_alive.abs_delta == 0.0);
    CHECK(same.first_death_round.abs_delta == 0.0);

    b.total_energy_j = 2.0;
    b.final_dead = 40;
    b.final_alive = 60;
    b.first_death_round = 9;
    const ComparisonReport cmp = compare_runs(a, b, 100, 100);
    CHECK(cmp.total_energy_j.pct_delta == doctest::Approx(50.0));  // halved the cost
    CHECK(cmp.final_alive.abs_delta == doctest::Approx(40.0));
    CHECK(cmp.first_death_round.proposed == 101.0);  // no death in the proposed run
    CHECK(cmp.first_death_round.abs_delta == doctest::Approx(92.0));

    // percent deltas flip sign when the arguments swap
    const ComparisonReport rev = compare_runs(b, a, 100, 100);
    CHECK(rev.total_energy_j.pct_delta < 0.0);
    CHECK(rev.final_alive.pct_delta < 0.0);

    RunSummary other = a;
    other.final_alive = 50;
    other.final_dead = 0;
    CHECK_THROWS_AS(compare_runs(a, other, 100, 100), DomainError);
    CHECK_THROWS_AS(compare_runs(a, b, 100, 50), DomainError);

    const auto doc = comparison_to_json(cmp);
    CHECK(doc["total_energy_j"]["pct_delta"].get<double>() == doctest::Approx(50.0));
    CHECK(doc["baseline_first_death"].get<int>() == 9);
    CHECK(doc["proposed_first_death"].is_null());
}
