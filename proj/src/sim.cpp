#include "wsnsim/sim.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <numeric>

#include "wsnsim/energy.hpp"
#include "wsnsim/errors.hpp"

namespace wsnsim {

namespace {

std::vector<int> alive_ids(const std::vector<NodeState>& nodes) {
    std::vector<int> ids;
    for (const NodeState& n : nodes) {
        if (n.alive) ids.push_back(n.id);
    }
    return ids;
}

RoundMetrics all_dead_metrics(int round, int n) {
    RoundMetrics m;
    m.round = round;
    m.dead_cum = n;
    m.alive_cum = 0;
    return m;
}

RunSummary summarize(const std::vector<RoundMetrics>& metrics, int node_count,
                     const std::string& digest) {
    RunSummary s;
    s.config_digest = digest;
    s.final_alive = node_count;
    if (metrics.empty()) return s;
    s.final_dead = metrics.back().dead_cum;
    s.final_alive = metrics.back().alive_cum;
    double lat = 0, loss = 0, qual = 0, energy = 0;
    for (const RoundMetrics& m : metrics) {
        lat += m.latency_ms;
        loss += m.packet_loss_pct;
        qual += m.fused_quality_pct;
        energy += m.energy_consumed_j;
        if (!s.first_death_round && m.dead_cum > 0) s.first_death_round = m.round;
    }
    const double n = static_cast<double>(metrics.size());
    s.mean_latency_ms = lat / n;
    s.mean_packet_loss_pct = loss / n;
    s.mean_fused_quality_pct = qual / n;
    s.total_energy_j = energy;
    return s;
}

// Builds the per-round cluster layout over the alive population.
ClusterLayout cluster_alive(const std::vector<NodeState>& nodes, const std::vector<int>& alive,
                            const SimConfig& cfg) {
    std::vector<Point> pos(alive.size());
    std::vector<double> energies(alive.size());
    std::vector<double> dists(alive.size());
    for (std::size_t i = 0; i < alive.size(); ++i) {
        const NodeState& n = nodes[alive[i]];
        pos[i] = n.position;
        energies[i] = n.energy;
        dists[i] = euclidean_distance(n.position, cfg.bs_position);
    }
    const auto centralities = local_density_centrality(pos, cfg.r_cluster);
    const auto neighbors = neighbor_sets(pos, cfg.r_cluster);
    const auto thetas = convergence_metric(pos, neighbors, cfg.r_cluster);
    auto scores = normalize_scores(energies, dists, centralities, thetas);
    for (NodeScore& s : scores) s.p_ch = ch_probability(s);
    const auto ch_subset = select_cluster_heads(scores, cfg.ch_percentile);

    // select/assign work in alive-subset indices; alive ids are ascending,
    // so subset-index tie-breaks coincide with node-id tie-breaks.
    std::vector<int> ch_ids;
    for (int idx : ch_subset) ch_ids.push_back(alive[idx]);
    ClusterLayout sub = assign_members(pos, ch_subset, cfg.r_cluster, cfg.strict_radius);
    ClusterLayout layout;
    layout.ch_ids = ch_ids;
    for (const auto& [member, ch] : sub.assignment) {
        layout.assignment.emplace(alive[member], alive[ch]);
    }
    for (int orphan : sub.orphan_ids) layout.orphan_ids.push_back(alive[orphan]);
    return layout;
}

}  // namespace

double FieldModel::truth(const Point& p, double round) const {
    return params.offset +
           params.amplitude * std::sin(2.0 * std::numbers::pi * round / params.period) +
           params.grad_x * p.x + params.grad_y * p.y;
}

double sense(const FieldModel& field, const NodeState& node, int round, Rng& noise) {
    if (!node.alive) throw StateError("sense: node is dead");
    return field.truth(node.position, round) + noise.normal(field.params.noise_sigma);
}

std::vector<NodeState> generate_topology(const SimConfig& cfg) {
    if (cfg.field_width <= 0 || cfg.field_height <= 0) {
        throw ConfigError("generate_topology: zero-area field");
    }
    Rng rng(cfg.seed, "placement");
    std::vector<NodeState> nodes;
    nodes.reserve(cfg.node_count());
    for (int i = 0; i < cfg.node_count(); ++i) {
        NodeState n;
        n.id = i;
        n.kind = i < cfg.n_sensors ? NodeKind::Sensor : NodeKind::Relay;
        n.position = {rng.uniform(0.0, cfg.field_width), rng.uniform(0.0, cfg.field_height)};
        n.energy = n.kind == NodeKind::Sensor ? cfg.sensor_energy_j : cfg.relay_energy_j;
        n.alive = true;
        nodes.push_back(n);
    }
    return nodes;
}

double latency_of_round(int max_tree_depth, double max_ch_bs_dist, const LatencyConfig& lat) {
    return max_tree_depth * lat.per_hop_ms + lat.per_hop_ms +
           lat.per_meter_ms * max_ch_bs_dist;
}

double packet_loss_of_round(long long transmissions, long long losses) {
    if (losses < 0 || transmissions < losses) {
        throw StateError("packet_loss_of_round: losses exceed transmissions");
    }
    if (transmissions == 0) return 0.0;
    return 100.0 * static_cast<double>(losses) / static_cast<double>(transmissions);
}

RoundMetrics run_round(std::vector<NodeState>& nodes, const SimConfig& cfg, const Mlp* net,
                       int round, SimStreams& streams) {
    const int n = static_cast<int>(nodes.size());
    const std::vector<int> alive = alive_ids(nodes);
    if (alive.empty()) return all_dead_metrics(round, n);

    const RadioParams& radio = cfg.radio;
    const EnergyForm form = cfg.energy_form;
    const std::int64_t packet = radio.packet_bits;
    const FieldModel field{cfg.sensing};

    // (1) clustering
    const ClusterLayout layout = cluster_alive(nodes, alive, cfg);
    std::map<int, std::vector<int>> members;  // ch id -> member ids, ascending
    for (int ch : layout.ch_ids) members[ch];
    for (const auto& [member, ch] : layout.assignment) members[ch].push_back(member);

    // (2) per-cluster MSTs
    std::map<int, ClusterTree> trees;
    int max_depth = 0;
    for (const auto& [ch, ms] : members) {
        std::vector<IndexedPoint> pts{{ch, nodes[ch].position}};
        for (int m : ms) pts.push_back({m, nodes[m].position});
        ClusterTree tree = build_mst(pts, ch);
        max_depth = std::max(max_depth, tree.depth);
        trees.emplace(ch, std::move(tree));
    }

    // (3) sensing; every alive sensor reads once, in id order
    std::map<int, double> readings;
    for (int id : alive) {
        if (nodes[id].kind == NodeKind::Sensor) {
            readings[id] = sense(field, nodes[id], round, streams.sensing);
        }
    }

    std::vector<EnergyBreakdown> spent(n);
    auto charge = [&](int id, double tx, double rx, double proc) {
        spent[id].tx += tx;
        spent[id].rx += rx;
        spent[id].proc += proc;
    };
    const double idle = idle_energy(radio);
    for (int id : alive) spent[id].idle += idle;

    long long sends = 0;
    long long losses = 0;

    // (4) intra-cluster transmission, leaf to root, with per-link loss
    // draws; a failed link drops the subtree's readings but the energy is
    // spent either way. Clusters are processed in ascending CH id.
    std::map<int, std::vector<std::pair<int, double>>> buffers;  // node -> (source, value)
    for (int id : alive) {
        if (auto it = readings.find(id); it != readings.end()) {
            buffers[id].emplace_back(id, it->second);
        }
    }
    std::map<int, std::int64_t> ch_packets_received;
    double audit_intra = 0.0;
    for (const auto& [ch, tree] : trees) {
        std::vector<double> edge_dists;
        std::map<int, std::int64_t> recv_counts;
        for (const Transmission& t : transmission_schedule(tree)) {
            charge(t.sender, mst_edge_tx_energy(packet, t.distance, radio, form), 0.0, 0.0);
            charge(t.receiver, 0.0, rx_energy(packet, radio), 0.0);
            ++sends;
            edge_dists.push_back(t.distance);
            ++recv_counts[t.receiver];
            const double p = std::min(1.0, cfg.loss.base + cfg.loss.coeff * t.distance);
            if (streams.loss.bernoulli(p)) {
                ++losses;
                buffers[t.sender].clear();
            } else {
                if (t.receiver == ch) ++ch_packets_received[ch];
                auto& dst = buffers[t.receiver];
                auto& src = buffers[t.sender];
                dst.insert(dst.end(), src.begin(), src.end());
                src.clear();
            }
        }
        std::vector<std::int64_t> counts;
        for (const auto& [_, c] : recv_counts) counts.push_back(c);
        audit_intra += cluster_transmission_energy(edge_dists, counts, radio, form);
    }

    // (5) fusion at each CH; (6) CH -> BS uplink
    double quality_sum = 0.0;
    int quality_count = 0;
    double max_ch_bs = 0.0;
    double audit_ch_bs_tx = 0.0;
    double audit_proc = 0.0;
    for (int ch : layout.ch_ids) {
        auto& buf = buffers[ch];
        std::sort(buf.begin(), buf.end());
        if (net != nullptr && !buf.empty()) {
            std::vector<double> values;
            values.reserve(buf.size());
            for (const auto& [_, v] : buf) values.push_back(v);
            const double fd = fuse(*net, values);
            quality_sum += fused_quality(fd, field.truth(nodes[ch].position, round));
            ++quality_count;
        }
        const double agg_proc = proc_energy(ch_packets_received[ch] * packet, radio);
        const double d_bs = euclidean_distance(nodes[ch].position, cfg.bs_position);
        const double tx_bs = mst_edge_tx_energy(packet, d_bs, radio, form);
        charge(ch, tx_bs, 0.0, agg_proc);
        audit_proc += agg_proc;
        audit_ch_bs_tx += tx_bs;
        max_ch_bs = std::max(max_ch_bs, d_bs);
        ++sends;
        const double p = std::min(1.0, cfg.loss.base + cfg.loss.coeff * d_bs);
        if (streams.loss.bernoulli(p)) ++losses;
    }

    // control traffic: assigned members hear one control packet per round
    double audit_control = 0.0;
    if (cfg.control_bits > 0) {
        for (const auto& [member, _] : layout.assignment) {
            const double rx = rx_energy(cfg.control_bits, radio);
            charge(member, 0.0, rx, 0.0);
            audit_control += rx;
        }
    }

    // (7) decrement; (8) clamp and mark deaths
    double node_side = 0.0;
    double consumed = 0.0;
    for (int id : alive) {
        EnergyBreakdown& b = spent[id];
        b.total = b.tx + b.rx + b.proc + b.idle;
        node_side += b.total;
        consumed += b.total;
        nodes[id].energy -= b.total;
        if (nodes[id].energy <= 0.0) {
            nodes[id].energy = 0.0;
            nodes[id].alive = false;
        }
    }

    // (9) replenish
    if (cfg.r_replenish > 0 && round % cfg.r_replenish == 0) {
        for (NodeState& node : nodes) {
            node.energy =
                node.kind == NodeKind::Sensor ? cfg.sensor_energy_j : cfg.relay_energy_j;
            node.alive = true;
        }
    }

    // (10) metrics
    RoundMetrics m;
    m.round = round;
    m.alive_cum = static_cast<int>(alive_ids(nodes).size());
    m.dead_cum = n - m.alive_cum;
    m.latency_ms = latency_of_round(max_depth, max_ch_bs, cfg.latency);
    m.packet_loss_pct = packet_loss_of_round(sends, losses);
    m.fused_quality_pct = quality_count > 0 ? quality_sum / quality_count : 0.0;
    m.energy_consumed_j = consumed;
    m.ch_count = static_cast<int>(layout.ch_ids.size());
    m.audit_node_side_j = node_side;
    m.audit_composition_j = round_energy(audit_intra, audit_ch_bs_tx) + audit_proc +
                            audit_control + idle * static_cast<double>(alive.size());
    return m;
}

Mlp train_fusion_net(const SimConfig& cfg, const std::vector<NodeState>& initial_nodes) {
    // Input width: the widest round-1 cluster, capped.
    int width = 1;
    const std::vector<int> alive = alive_ids(initial_nodes);
    if (!alive.empty()) {
        const ClusterLayout layout = cluster_alive(initial_nodes, alive, cfg);
        std::map<int, int> sizes;
        for (int ch : layout.ch_ids) sizes[ch] = 1;
        for (const auto& [_, ch] : layout.assignment) ++sizes[ch];
        for (const auto& [_, s] : sizes) width = std::max(width, s);
    }
    width = std::min(width, cfg.bpnn.input_width_cap);

    // Synthetic supervision: noisy readings at positions scattered around a
    // hypothetical CH, target = the field's true value at that CH.
    const FieldModel field{cfg.sensing};
    Rng rng(cfg.seed, "fusion-train");
    TrainBatch batch;
    for (int s = 0; s < cfg.bpnn.train_samples; ++s) {
        const double phase = rng.uniform(0.0, cfg.sensing.period);
        const Point ch{rng.uniform(0.0, cfg.field_width), rng.uniform(0.0, cfg.field_height)};
        const int k = static_cast<int>(rng.uniform_int(1, width));
        std::vector<double> values;
        for (int i = 0; i < k; ++i) {
            const double ang = rng.uniform(0.0, 2.0 * std::numbers::pi);
            const double rad = cfg.r_cluster * std::sqrt(rng.uniform());
            Point p{ch.x + rad * std::cos(ang), ch.y + rad * std::sin(ang)};
            p.x = std::clamp(p.x, 0.0, cfg.field_width);
            p.y = std::clamp(p.y, 0.0, cfg.field_height);
            values.push_back(field.truth(p, phase) + rng.normal(cfg.sensing.noise_sigma));
        }
        const double mean =
            std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(k);
        values.resize(width, mean);
        batch.inputs.push_back(std::move(values));
        batch.targets.push_back(field.truth(ch, phase));
    }

    std::vector<int> sizes{width};
    sizes.insert(sizes.end(), cfg.bpnn.hidden_sizes.begin(), cfg.bpnn.hidden_sizes.end());
    sizes.push_back(1);
    Mlp net = init_weights(sizes, cfg.seed);
    return train(std::move(net), batch, cfg.bpnn.eta, cfg.bpnn.epochs).net;
}

RunResult run_simulation(const SimConfig& cfg, const Mlp* pretrained, Mlp* trained_out) {
    RunResult result;
    result.config = cfg;
    std::vector<NodeState> nodes = generate_topology(cfg);

    Mlp trained;
    const Mlp* net = pretrained;
    if (net == nullptr) {
        trained = train_fusion_net(cfg, nodes);
        net = &trained;
    }
    if (trained_out != nullptr) *trained_out = *net;

    SimStreams streams{Rng(cfg.seed, "sensing"), Rng(cfg.seed, "link-loss")};
    result.metrics.reserve(cfg.rounds);
    for (int round = 1; round <= cfg.rounds; ++round) {
        result.metrics.push_back(run_round(nodes, cfg, net, round, streams));
    }
    result.summary = summarize(result.metrics, cfg.node_count(), cfg.digest);
    return result;
}

RunResult run_baseline(const SimConfig& cfg) {
    RunResult result;
    result.config = cfg;
    std::vector<NodeState> nodes = generate_topology(cfg);
    SimStreams streams{Rng(cfg.seed, "sensing"), Rng(cfg.seed, "link-loss")};
    const FieldModel field{cfg.sensing};
    const RadioParams& radio = cfg.radio;
    const double idle = idle_energy(radio);

    for (int round = 1; round <= cfg.rounds; ++round) {
        const int n = static_cast<int>(nodes.size());
        const std::vector<int> alive = alive_ids(nodes);
        if (alive.empty()) {
            result.metrics.push_back(all_dead_metrics(round, n));
            continue;
        }
        RoundMetrics m;
        m.round = round;
        long long sends = 0, losses = 0;
        double max_d = 0.0, quality_sum = 0.0, consumed = 0.0, audit_tx = 0.0;
        int senders = 0;
        for (int id : alive) {
            double cost = idle;
            if (nodes[id].kind == NodeKind::Sensor) {
                const double reading = sense(field, nodes[id], round, streams.sensing);
                const double d = euclidean_distance(nodes[id].position, cfg.bs_position);
                const double tx = tx_energy(radio.packet_bits, d, radio);
                cost += tx;
                audit_tx += tx;
                ++sends;
                ++senders;
                max_d = std::max(max_d, d);
                const double p = std::min(1.0, cfg.loss.base + cfg.loss.coeff * d);
                if (streams.loss.bernoulli(p)) ++losses;
                quality_sum += fused_quality(reading, field.truth(nodes[id].position, round));
            }
            consumed += cost;
            nodes[id].energy -= cost;
            if (nodes[id].energy <= 0.0) {
                nodes[id].energy = 0.0;
                nodes[id].alive = false;
            }
        }
        if (cfg.r_replenish > 0 && round % cfg.r_replenish == 0) {
            for (NodeState& node : nodes) {
                node.energy =
                    node.kind == NodeKind::Sensor ? cfg.sensor_energy_j : cfg.relay_energy_j;
                node.alive = true;
            }
        }
        m.alive_cum = static_cast<int>(alive_ids(nodes).size());
        m.dead_cum = n - m.alive_cum;
        m.latency_ms = latency_of_round(0, max_d, cfg.latency);
        m.packet_loss_pct = packet_loss_of_round(sends, losses);
        m.fused_quality_pct = senders > 0 ? quality_sum / senders : 0.0;
        m.energy_consumed_j = consumed;
        m.audit_node_side_j = consumed;
        m.audit_composition_j = audit_tx + idle * static_cast<double>(alive.size());
        result.metrics.push_back(m);
    }
    result.summary = summarize(result.metrics, cfg.node_count(), cfg.digest);
    return result;
}

}  // namespace wsnsim
