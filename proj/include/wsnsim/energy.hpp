#pragma once

#include <cstdint>
#include <span>

#include "wsnsim/geometry.hpp"

namespace wsnsim {

// First-order radio model constants plus processing/idle extensions.
struct RadioParams {
    double e_elec = 50e-9;       // J/bit, TX/RX electronics
    double e_fs = 10e-12;        // J/bit/m^2, free-space amplifier
    double e_mp = 1.3e-15;       // J/bit/m^4, multipath amplifier
    double e_cpu = 5e-9;         // J/bit, processing
    double p_idle = 0.0;         // W, idle listening power
    double t_idle = 1.0;         // s, idle time per round
    double d0 = 0.0;             // m, crossover distance; 0 = derive from e_fs/e_mp
    std::int64_t packet_bits = 1000;  // L, data packet size

    // Fills d0 from sqrt(e_fs/e_mp) when unset and validates ranges.
    void finalize();
};

// Which printed form the amplifier term of an intra-cluster / CH-to-BS
// transmission uses. Raw d^2/d^4 is the default; the normalized (d/d0)^2
// variant reproduces the alternative printed formula verbatim.
enum class EnergyForm {
    Eq1,   // L*E_elec + L*E_fs*d^2 (d <= d0) | L*E_mp*d^4 (d > d0)
    Eq24,  // L*E_elec + L*E_fs*(d/d0)^2
};

// One node's energy spend for a round, split by activity.
struct EnergyBreakdown {
    double tx = 0.0;
    double rx = 0.0;
    double proc = 0.0;
    double idle = 0.0;
    double total = 0.0;
};

EnergyBreakdown make_breakdown(double tx, double rx, double proc, double idle);

// Transmission energy for `bits` over `distance`, two-branch path loss.
double tx_energy(std::int64_t bits, double distance, const RadioParams& params);

// Reception energy; distance independent.
double rx_energy(std::int64_t bits, const RadioParams& params);

// Linear processing energy.
double proc_energy(std::int64_t bits, const RadioParams& params);

// Idle listening energy for one round.
double idle_energy(const RadioParams& params);

// Member node: one data packet to its CH plus optional control reception.
EnergyBreakdown member_round_energy(double dist_to_ch, std::int64_t control_bits,
                                    const RadioParams& params);

// Cluster head: reception from members, aggregation, transmission to the BS.
EnergyBreakdown ch_round_energy(std::int64_t member_count, std::int64_t agg_bits,
                                double dist_to_bs, const RadioParams& params);

// Energy to push one packet across a single tree edge.
double mst_edge_tx_energy(std::int64_t bits, double d_ij, const RadioParams& params,
                          EnergyForm form = EnergyForm::Eq1);

// Whole-cluster transmission energy: every edge sends one packet, every
// receiving node pays reception per packet heard.
double cluster_transmission_energy(std::span<const double> edge_distances,
                                   std::span<const std::int64_t> receiver_counts,
                                   const RadioParams& params,
                                   EnergyForm form = EnergyForm::Eq1);

// CH uplink: TX over the CH-BS distance plus the BS-side reception term.
double ch_to_bs_energy(const Point& ch_pos, const Point& bs_pos, const RadioParams& params,
                       EnergyForm form = EnergyForm::Eq1);

// Round total: intra-cluster plus CH-to-BS.
double round_energy(double intra, double ch_bs);

}  // namespace wsnsim
