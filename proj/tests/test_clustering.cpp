#include <doctest.h>

#include <cmath>
#include <set>
#include <vector>

#include "wsnsim/clustering.hpp"
#include "wsnsim/errors.hpp"
#include "wsnsim/rng.hpp"

using namespace wsnsim;

namespace {

std::vector<Point> random_layout(Rng& rng, int n, double side) {
    std::vector<Point> pts(n);
    for (auto& p : pts) p = {rng.uniform(0.0, side), rng.uniform(0.0, side)};
    return pts;
}

}  // namespace

TEST_CASE("local_density_centrality") {
    CHECK(local_density_centrality(std::vector<Point>{{1, 1}}, 5.0) == std::vector<int>{0});

    const double r = 7.0;
    const std::vector<Point> line{{0, 0}, {r, 0}, {2 * r, 0}};
    CHECK(local_density_centrality(line, r) == std::vector<int>{1, 2, 1});

    const std::vector<Point> stacked(6, Point{3.0, 4.0});
    CHECK(local_density_centrality(stacked, 0.5) == std::vector<int>(6, 5));

    CHECK_THROWS_AS(local_density_centrality(line, 0.0), ConfigError);
}

TEST_CASE("neighbor_sets boundary inclusion") {
    const std::vector<Point> pair{{0, 0}, {5, 0}};
    const auto at = neighbor_sets(pair, 5.0);
    CHECK(at[0] == std::vector<int>{1});
    CHECK(at[1] == std::vector<int>{0});

    const auto beyond = neighbor_sets(pair, 5.0 - 1e-9);
    CHECK(beyond[0].empty());
    CHECK(beyond[1].empty());
}

TEST_CASE("neighbor sets sizes match centrality on random layouts") {
    Rng rng(11, "clustering-cross");
    for (int trial = 0; trial < 200; ++trial) {
        const auto pts = random_layout(rng, 20, 100.0);
        const double r = rng.uniform(5.0, 60.0);
        const auto counts = local_density_centrality(pts, r);
        const auto sets = neighbor_sets(pts, r);
        for (std::size_t i = 0; i < pts.size(); ++i) {
            CHECK(static_cast<int>(sets[i].size()) == counts[i]);
            for (int j : sets[i]) {  // symmetry
                CHECK(std::find(sets[j].begin(), sets[j].end(), static_cast<int>(i)) !=
                      sets[j].end());
            }
        }
    }
}

TEST_CASE("convergence_metric") {
    const double r = 4.0;
    const std::vector<Point> pts{{0, 0}, {1, 0}, {3, 0}, {100, 100}};
    const auto sets = neighbor_sets(pts, r);
    const auto theta = convergence_metric(pts, sets, r);

    CHECK(theta[3] == 0.0);                                // isolated
    CHECK(theta[0] == doctest::Approx(0.5).epsilon(1e-12));  // neighbors at 1 and 3

    const std::vector<Point> edge{{0, 0}, {r, 0}};
    const auto edge_sets = neighbor_sets(edge, r);
    const auto edge_theta = convergence_metric(edge, edge_sets, r);
    CHECK(edge_theta[0] == doctest::Approx(0.0).epsilon(1e-12));

    for (double t : theta) {
        CHECK(t >= 0.0);
        CHECK(t <= 1.0);
    }
}

TEST_CASE("normalize_scores") {
    const std::vector<double> energies{2.0, 1.0};
    const std::vector<double> dists{0.0, 10.0};
    const std::vector<int> cents{3, 1};
    const std::vector<double> thetas{0.5, 0.2};
    const auto scores = normalize_scores(energies, dists, cents, thetas);
    CHECK(scores[0].e_norm == 1.0);
    CHECK(scores[0].d_norm == 1.0);
    CHECK(scores[0].c_norm == 1.0);
    CHECK(scores[0].theta_norm == 1.0);
    CHECK(scores[1].d_norm == 0.0);  // farthest from BS

    const std::vector<double> flat{1.5, 1.5, 1.5};
    const std::vector<double> d3{1, 2, 3};
    const std::vector<int> c3{0, 0, 0};
    const std::vector<double> t3{0, 0, 0};
    const auto flat_scores = normalize_scores(flat, d3, c3, t3);
    for (const auto& s : flat_scores) {
        CHECK(s.e_norm == 1.0);
        CHECK(s.c_norm == 0.0);  // zero maximum guard
        CHECK(s.theta_norm == 0.0);
    }

    CHECK_THROWS_AS(normalize_scores({}, {}, {}, {}), StateError);
}

TEST_CASE("ch_probability") {
    CHECK(ch_probability({0, 1, 1, 1, 1, 0}) == 1.0);
    CHECK(ch_probability({0, 0.8, 0.6, 0.4, 0.2, 0}) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(ch_probability({0, 0, 0, 0, 0, 0}) == 0.0);
    CHECK_THROWS_AS(ch_probability({0, 1.2, 0, 0, 0, 0}), DomainError);

    // bit-exact contract against the same expression
    NodeScore s{7, 0.31, 0.77, 0.11, 0.93, 0};
    CHECK(ch_probability(s) == (s.e_norm + s.d_norm + s.c_norm + s.theta_norm) / 4.0);
}

TEST_CASE("select_cluster_heads") {
    std::vector<NodeScore> scores(100);
    for (int i = 0; i < 100; ++i) {
        scores[i].node_id = i;
        scores[i].p_ch = i / 100.0;
    }
    const auto top = select_cluster_heads(scores, 0.95);
    CHECK(top == std::vector<int>{95, 96, 97, 98, 99});

    std::vector<NodeScore> tied(10);
    for (int i = 0; i < 10; ++i) {
        tied[i].node_id = i;
        tied[i].p_ch = 0.4;
    }
    CHECK(select_cluster_heads(tied, 0.95) == std::vector<int>{0});

    std::vector<NodeScore> one(1);
    one[0].node_id = 42;
    one[0].p_ch = 0.1;
    CHECK(select_cluster_heads(one, 0.95) == std::vector<int>{42});

    CHECK_THROWS_AS(select_cluster_heads({}, 0.95), StateError);
    CHECK_THROWS_AS(select_cluster_heads(scores, 1.0), ConfigError);
}

TEST_CASE("scale invariance of selection") {
    Rng rng(21, "clustering-scale");
    for (int trial = 0; trial < 100; ++trial) {
        const int n = 30;
        std::vector<double> energies(n), dists(n), thetas(n);
        std::vector<int> cents(n);
        for (int i = 0; i < n; ++i) {
            energies[i] = rng.uniform(0.1, 2.0);
            dists[i] = rng.uniform(0.0, 500.0);
            cents[i] = static_cast<int>(rng.uniform_int(0, 10));
            thetas[i] = rng.uniform(0.0, 1.0);
        }
        auto base = normalize_scores(energies, dists, cents, thetas);
        for (auto& s : base) s.p_ch = ch_probability(s);
        const auto picked = select_cluster_heads(base, 0.9);

        for (double lambda : {0.5, 2.0, 3.7, 1e6}) {
            std::vector<double> scaled = energies;
            for (double& e : scaled) e *= lambda;
            auto alt = normalize_scores(scaled, dists, cents, thetas);
            for (auto& s : alt) s.p_ch = ch_probability(s);
            CHECK(select_cluster_heads(alt, 0.9) == picked);
        }
    }
}

TEST_CASE("assign_members") {
    const std::vector<Point> pts{{0, 0}, {2, 0}, {1, 0}, {10, 10}};
    const std::vector<int> chs{0, 1};
    const auto layout = assign_members(pts, chs, 50.0, false);
    CHECK(layout.assignment.at(2) == 0);  // equidistant, lower ch id wins
    CHECK(layout.assignment.at(3) == 1);
    CHECK(layout.orphan_ids.empty());

    const std::vector<int> lone{0};
    const auto all_in = assign_members(pts, lone, 50.0, false);
    CHECK(all_in.assignment.size() == 3);

    // strict mode orphans anything beyond r_cluster
    const auto strict = assign_members(pts, lone, 2.0, true);
    CHECK(strict.assignment.count(3) == 0);
    CHECK(strict.orphan_ids == std::vector<int>{3});

    CHECK_THROWS_AS(assign_members(pts, {}, 1.0, false), StateError);
}

TEST_CASE("assignment partitions the population") {
    Rng rng(33, "clustering-partition");
    for (int trial = 0; trial < 50; ++trial) {
        const auto pts = random_layout(rng, 40, 200.0);
        const std::vector<int> chs{0, 5, 11};
        const bool strict = trial % 2 == 0;
        const auto layout = assign_members(pts, chs, 60.0, strict);
        std::set<int> seen(layout.ch_ids.begin(), layout.ch_ids.end());
        for (const auto& [member, ch] : layout.assignment) {
            CHECK(!seen.contains(member));  // a CH is never assigned
            CHECK(seen.contains(ch));
            seen.insert(member);
        }
        for (int orphan : layout.orphan_ids) {
            CHECK(!seen.contains(orphan));
            seen.insert(orphan);
        }
        CHECK(seen.size() == pts.size());
    }
}

TEST_CASE("trapezoid_membership") {
    const TrapezoidParams p{0.2, 0.4, 0.6, 0.8};
    CHECK(trapezoid_membership(0.5, p) == 1.0);
    CHECK(trapezoid_membership(0.2, p) == 0.0);
    CHECK(trapezoid_membership(0.3, p) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(trapezoid_membership(0.0, p) == 0.0);
    CHECK(trapezoid_membership(1.0, p) == 0.0);

    // degenerate breakpoints act as steps, resolved from the plateau side
    const TrapezoidParams step{0.5, 0.5, 1.0, 1.0};
    CHECK(trapezoid_membership(0.5, step) == 1.0);
    CHECK(trapezoid_membership(1.0, step) == 1.0);
    CHECK(trapezoid_membership(0.49, step) == 0.0);

    CHECK_THROWS_AS(trapezoid_membership(0.5, TrapezoidParams{0.8, 0.4, 0.6, 0.9}), ConfigError);

    // continuity for strictly ordered breakpoints
    double prev = trapezoid_membership(0.0, p);
    for (int i = 1; i <= 1000; ++i) {
        const double x = i / 1000.0;
        const double cur = trapezoid_membership(x, p);
        CHECK(cur >= 0.0);
        CHECK(cur <= 1.0);
        CHECK(std::abs(cur - prev) < 0.01);
        prev = cur;
    }
}

TEST_CASE("fuzzy_grade labels the plateaus") {
    const TrapezoidSet set;
    CHECK(std::string(fuzzy_grade(0.1, set)) == "low");
    CHECK(std::string(fuzzy_grade(0.5, set)) == "medium");
    CHECK(std::string(fuzzy_grade(0.95, set)) == "high");
}
