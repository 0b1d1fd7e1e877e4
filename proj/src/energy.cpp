#include "wsnsim/energy.hpp"

#include <cmath>

#include "wsnsim/errors.hpp"

namespace wsnsim {

void RadioParams::finalize() {
    if (e_elec <= 0 || e_fs <= 0 || e_mp <= 0 || e_cpu <= 0) {
        throw ConfigError("radio energy constants must be strictly positive");
    }
    if (p_idle < 0 || t_idle < 0) {
        throw ConfigError("idle power/time must be non-negative");
    }
    if (packet_bits <= 0) {
        throw ConfigError("packet_bits must be strictly positive");
    }
    if (d0 == 0.0) {
        d0 = std::sqrt(e_fs / e_mp);
    }
    if (d0 <= 0) {
        throw ConfigError("crossover distance d0 must be strictly positive");
    }
}

EnergyBreakdown make_breakdown(double tx, double rx, double proc, double idle) {
    EnergyBreakdown b;
    b.tx = tx;
    b.rx = rx;
    b.proc = proc;
    b.idle = idle;
    b.total = tx + rx + proc + idle;
    return b;
}

double tx_energy(std::int64_t bits, double distance, const RadioParams& params) {
    if (bits < 0) throw DomainError("tx_energy: negative bit count");
    if (distance < 0) throw DomainError("tx_energy: negative distance");
    const double l = static_cast<double>(bits);
    if (distance <= params.d0) {
        return l * params.e_elec + l * params.e_fs * distance * distance;
    }
    const double d2 = distance * distance;
    return l * params.e_elec + l * params.e_mp * d2 * d2;
}

double rx_energy(std::int64_t bits, const RadioParams& params) {
    if (bits < 0) throw DomainError("rx_energy: negative bit count");
    return static_cast<double>(bits) * params.e_elec;
}

double proc_energy(std::int64_t bits, const RadioParams& params) {
    if (bits < 0) throw DomainError("proc_energy: negative bit count");
    return static_cast<double>(bits) * params.e_cpu;
}

double idle_energy(const RadioParams& params) {
    return params.p_idle * params.t_idle;
}

EnergyBreakdown member_round_energy(double dist_to_ch, std::int64_t control_bits,
                                    const RadioParams& params) {
    const double tx = tx_energy(params.packet_bits, dist_to_ch, params);
    const double rx = rx_energy(control_bits, params);
    return make_breakdown(tx, rx, 0.0, idle_energy(params));
}

EnergyBreakdown ch_round_energy(std::int64_t member_count, std::int64_t agg_bits,
                                double dist_to_bs, const RadioParams& params) {
    if (member_count < 0) throw DomainError("ch_round_energy: negative member count");
    const double rx = static_cast<double>(member_count) * rx_energy(params.packet_bits, params);
    const double proc = proc_energy(agg_bits, params);
    const double tx = tx_energy(params.packet_bits, dist_to_bs, params);
    return make_breakdown(tx, rx, proc, idle_energy(params));
}

double mst_edge_tx_energy(std::int64_t bits, double d_ij, const RadioParams& params,
                          EnergyForm form) {
    if (form == EnergyForm::Eq1) {
        return tx_energy(bits, d_ij, params);
    }
    if (bits < 0) throw DomainError("mst_edge_tx_energy: negative bit count");
    if (d_ij < 0) throw DomainError("mst_edge_tx_energy: negative distance");
    const double l = static_cast<double>(bits);
    const double ratio = d_ij / params.d0;
    return l * params.e_elec + l * params.e_fs * ratio * ratio;
}

double cluster_transmission_energy(std::span<const double> edge_distances,
                                   std::span<const std::int64_t> receiver_counts,
                                   const RadioParams& params, EnergyForm form) {
    double total = 0.0;
    for (double d : edge_distances) {
        total += mst_edge_tx_energy(params.packet_bits, d, params, form);
    }
    for (std::int64_t count : receiver_counts) {
        if (count < 0) throw DomainError("cluster_transmission_energy: negative receiver count");
        total += static_cast<double>(count) * rx_energy(params.packet_bits, params);
    }
    return total;
}

double ch_to_bs_energy(const Point& ch_pos, const Point& bs_pos, const RadioParams& params,
                       EnergyForm form) {
    const double d = euclidean_distance(ch_pos, bs_pos);
    return mst_edge_tx_energy(params.packet_bits, d, params, form) +
           rx_energy(params.packet_bits, params);
}

double round_energy(double intra, double ch_bs) {
    if (intra < 0 || ch_bs < 0) throw DomainError("round_energy: negative component");
    return intra + ch_bs;
}

}  // namespace wsnsim
