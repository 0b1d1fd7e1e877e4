#include <doctest.h>

#include <cmath>

#include "wsnsim/energy.hpp"
#include "wsnsim/errors.hpp"
#include "wsnsim/rng.hpp"

using namespace wsnsim;

namespace {

RadioParams table_params() {
    RadioParams p;  // defaults carry the standard parameter set
    p.finalize();
    return p;
}

// Variant with the crossover pushed past 100 m so the free-space branch
// covers the hand-derived d=100 example.
RadioParams far_crossover_params() {
    RadioParams p;
    p.d0 = 200.0;
    p.finalize();
    return p;
}

}  // namespace

TEST_CASE("tx_energy hand values") {
    const RadioParams p = table_params();
    CHECK(tx_energy(1000, 0.0, p) == doctest::Approx(5.0e-5).epsilon(1e-12));
    CHECK(tx_energy(0, 3.0, p) == 0.0);

    // free-space branch: 5e-5 + 1000 * 10e-12 * 100^2
    const RadioParams far = far_crossover_params();
    CHECK(tx_energy(1000, 100.0, far) == doctest::Approx(1.5e-4).epsilon(1e-12));

    CHECK_THROWS_AS(tx_energy(-1, 0.0, p), DomainError);
    CHECK_THROWS_AS(tx_energy(10, -0.5, p), DomainError);
}

TEST_CASE("tx_energy branches meet at the crossover") {
    const RadioParams p = table_params();
    CHECK(p.d0 == doctest::Approx(87.7058).epsilon(1e-4));

    // the two printed branch formulas evaluated at d0 itself
    const double fs = 1000.0 * p.e_elec + 1000.0 * p.e_fs * p.d0 * p.d0;
    const double mp = 1000.0 * p.e_elec + 1000.0 * p.e_mp * std::pow(p.d0, 4);
    CHECK(std::abs(fs - mp) / fs < 1e-12);

    // shrinking the probe shrinks the gap linearly
    const double at = tx_energy(1000, p.d0, p);
    const double eps = 1e-11 * p.d0;
    const double gap = std::abs(tx_energy(1000, p.d0 - eps, p) - tx_energy(1000, p.d0 + eps, p));
    CHECK(gap / at < 1e-9);
}

TEST_CASE("tx_energy monotonicity") {
    const RadioParams p = table_params();
    Rng rng(99, "energy-mono");
    for (int i = 0; i < 200; ++i) {
        const double d1 = rng.uniform(0.0, 300.0);
        const double d2 = d1 + rng.uniform(0.0, 50.0);
        CHECK(tx_energy(1000, d2, p) >= tx_energy(1000, d1, p));
        const auto bits = static_cast<std::int64_t>(rng.uniform_int(1, 5000));
        CHECK(tx_energy(bits + 1, d1, p) > tx_energy(bits, d1, p));
    }
}

TEST_CASE("rx_energy") {
    const RadioParams p = table_params();
    CHECK(rx_energy(1000, p) == doctest::Approx(5.0e-5).epsilon(1e-12));
    CHECK(rx_energy(0, p) == 0.0);
    CHECK(rx_energy(2000, p) == doctest::Approx(1.0e-4).epsilon(1e-12));
    CHECK_THROWS_AS(rx_energy(-5, p), DomainError);
}

TEST_CASE("proc_energy") {
    const RadioParams p = table_params();
    CHECK(proc_energy(0, p) == 0.0);
    CHECK(proc_energy(1000, p) == doctest::Approx(5.0e-6).epsilon(1e-12));
    CHECK(proc_energy(2000, p) == doctest::Approx(2.0 * proc_energy(1000, p)).epsilon(1e-15));
    CHECK_THROWS_AS(proc_energy(-1, p), DomainError);
}

TEST_CASE("idle_energy") {
    RadioParams p = table_params();
    CHECK(idle_energy(p) == 0.0);  // idle disabled by default
    p.p_idle = 1e-6;
    p.t_idle = 1.0;
    CHECK(idle_energy(p) == doctest::Approx(1e-6).epsilon(1e-15));
    p.t_idle = 0.0;
    CHECK(idle_energy(p) == 0.0);
}

TEST_CASE("member_round_energy") {
    const RadioParams far = far_crossover_params();
    const EnergyBreakdown at_ch = member_round_energy(0.0, 0, far);
    CHECK(at_ch.tx == doctest::Approx(5e-5).epsilon(1e-12));
    CHECK(at_ch.rx == 0.0);
    CHECK(at_ch.total == at_ch.tx + at_ch.rx + at_ch.proc + at_ch.idle);

    const EnergyBreakdown far_member = member_round_energy(100.0, 0, far);
    CHECK(far_member.tx == doctest::Approx(1.5e-4).epsilon(1e-12));

    const EnergyBreakdown with_control = member_round_energy(100.0, 100, far);
    CHECK(with_control.rx == doctest::Approx(5e-6).epsilon(1e-12));
    CHECK(with_control.total - far_member.total == doctest::Approx(5e-6).epsilon(1e-9));
}

TEST_CASE("ch_round_energy") {
    const RadioParams p = table_params();
    const EnergyBreakdown lone = ch_round_energy(0, 0, 0.0, p);
    CHECK(lone.rx == 0.0);
    CHECK(lone.tx == doctest::Approx(5e-5).epsilon(1e-12));

    const EnergyBreakdown three = ch_round_energy(3, 0, 0.0, p);
    CHECK(three.rx == doctest::Approx(1.5e-4).epsilon(1e-12));

    const EnergyBreakdown agg1 = ch_round_energy(2, 2000, 0.0, p);
    const EnergyBreakdown agg2 = ch_round_energy(2, 4000, 0.0, p);
    CHECK(agg2.proc == doctest::Approx(2.0 * agg1.proc).epsilon(1e-15));
    CHECK_THROWS_AS(ch_round_energy(-1, 0, 0.0, p), DomainError);
}

TEST_CASE("energy breakdown additivity is exact") {
    Rng rng(3, "energy-add");
    for (int i = 0; i < 100; ++i) {
        const double tx = rng.uniform(0.0, 1.0);
        const double rx = rng.uniform(0.0, 1.0);
        const double proc = rng.uniform(0.0, 1.0);
        const double idle = rng.uniform(0.0, 1.0);
        const EnergyBreakdown b = make_breakdown(tx, rx, proc, idle);
        CHECK(b.total == tx + rx + proc + idle);
    }
}

TEST_CASE("mst_edge_tx_energy forms") {
    const RadioParams p = table_params();
    CHECK(mst_edge_tx_energy(1000, 0.0, p, EnergyForm::Eq1) ==
          doctest::Approx(5e-5).epsilon(1e-12));
    CHECK(mst_edge_tx_energy(1000, 0.0, p, EnergyForm::Eq24) ==
          doctest::Approx(5e-5).epsilon(1e-12));

    // normalized form at d == d0: 5e-5 + 1000 * 10e-12 * 1
    CHECK(mst_edge_tx_energy(1000, p.d0, p, EnergyForm::Eq24) ==
          doctest::Approx(5.001e-5).epsilon(1e-12));

    // the two forms agree at d0 only when d0 is 1 m
    RadioParams unit = table_params();
    unit.d0 = 1.0;
    CHECK(mst_edge_tx_energy(1000, unit.d0, unit, EnergyForm::Eq1) ==
          doctest::Approx(mst_edge_tx_energy(1000, unit.d0, unit, EnergyForm::Eq24))
              .epsilon(1e-15));
    CHECK(mst_edge_tx_energy(1000, p.d0, p, EnergyForm::Eq1) !=
          doctest::Approx(mst_edge_tx_energy(1000, p.d0, p, EnergyForm::Eq24)).epsilon(1e-6));
}

TEST_CASE("cluster_transmission_energy") {
    const RadioParams p = table_params();
    CHECK(cluster_transmission_energy({}, {}, p) == 0.0);

    const double edges1[] = {0.0};
    const std::int64_t recv1[] = {1};
    CHECK(cluster_transmission_energy(edges1, recv1, p) ==
          doctest::Approx(1.0e-4).epsilon(1e-12));

    const double edges3[] = {10.0, 10.0, 10.0};
    const std::int64_t recv3[] = {1, 1, 1};
    const double edges_single[] = {10.0};
    const std::int64_t recv_single[] = {1};
    CHECK(cluster_transmission_energy(edges3, recv3, p) ==
          doctest::Approx(3.0 * cluster_transmission_energy(edges_single, recv_single, p))
              .epsilon(1e-12));
}

TEST_CASE("ch_to_bs_energy") {
    const RadioParams p = table_params();
    const Point bs{250.0, 500.0};
    CHECK(ch_to_bs_energy(bs, bs, p) == doctest::Approx(1.0e-4).epsilon(1e-12));

    const Point ch{250.0, 400.0};
    CHECK(euclidean_distance(ch, bs) == doctest::Approx(100.0).epsilon(1e-15));
    // d=100 exceeds the default crossover, so the raw form takes the
    // multipath branch; the normalized form follows its printed formula.
    const double expect_eq1 = 1000 * p.e_elec + 1000 * p.e_mp * 1e8 + 1000 * p.e_elec;
    CHECK(ch_to_bs_energy(ch, bs, p, EnergyForm::Eq1) ==
          doctest::Approx(expect_eq1).epsilon(1e-12));
    const double ratio = 100.0 / p.d0;
    const double expect_eq24 = 1000 * p.e_elec + 1000 * p.e_fs * ratio * ratio + 1000 * p.e_elec;
    CHECK(ch_to_bs_energy(ch, bs, p, EnergyForm::Eq24) ==
          doctest::Approx(expect_eq24).epsilon(1e-12));

    // translation invariance
    const Point shift{13.5, -2.25};
    const Point ch2{ch.x + shift.x, ch.y + shift.y};
    const Point bs2{bs.x + shift.x, bs.y + shift.y};
    CHECK(ch_to_bs_energy(ch2, bs2, p) == doctest::Approx(ch_to_bs_energy(ch, bs, p)));
}

TEST_CASE("round_energy") {
    CHECK(round_energy(0.0, 0.0) == 0.0);
    CHECK(round_energy(1e-4, 5e-5) == doctest::Approx(1.5e-4).epsilon(1e-15));
    CHECK_THROWS_AS(round_energy(-1.0, 0.0), DomainError);
}

TEST_CASE("radio params validation") {
    RadioParams p;
    p.e_fs = 0.0;
    CHECK_THROWS_AS(p.finalize(), ConfigError);

    RadioParams pinned;
    pinned.d0 = 42.0;
    pinned.finalize();
    CHECK(pinned.d0 == 42.0);

    RadioParams derived;
    derived.finalize();
    CHECK(derived.d0 == doctest::Approx(std::sqrt(derived.e_fs / derived.e_mp)).epsilon(1e-15));
}
