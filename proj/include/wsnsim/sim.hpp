#pragma once

#include <vector>

#include "wsnsim/bpnn.hpp"
#include "wsnsim/clustering.hpp"
#include "wsnsim/config.hpp"
#include "wsnsim/metrics.hpp"
#include "wsnsim/mst.hpp"
#include "wsnsim/rng.hpp"

namespace wsnsim {

enum class NodeKind { Sensor, Relay };

struct NodeState {
    int id = 0;
    NodeKind kind = NodeKind::Sensor;
    Point position;
    double energy = 0.0;
    bool alive = false;
};

// Ground-truth scalar field; sensors observe it plus Gaussian noise.
struct FieldModel {
    SensingConfig params;

    double truth(const Point& p, double round) const;
};

double sense(const FieldModel& field, const NodeState& node, int round, Rng& noise);

// Named random substreams for one run. Placement and weight-init streams
// are consumed before the round loop; these two feed the rounds.
struct SimStreams {
    Rng sensing;
    Rng loss;
};

struct RunResult {
    std::vector<RoundMetrics> metrics;
    RunSummary summary;
    SimConfig config;  // resolved configuration the run used
};

// Places n_sensors + n_relays nodes uniformly at random (sensors first,
// ids 0..N-1) with their initial energies.
std::vector<NodeState> generate_topology(const SimConfig& cfg);

// Hop-count latency model: deepest intra-cluster relay chain plus the
// CH-to-BS hop, plus a propagation term on the longest CH-to-BS distance.
double latency_of_round(int max_tree_depth, double max_ch_bs_dist, const LatencyConfig& lat);

// Loss percentage bookkeeping.
double packet_loss_of_round(long long transmissions, long long losses);

// Executes one full round in place: clustering, routing, sensing,
// transmission with loss draws, fusion, energy decrement, death/replenish
// bookkeeping. `net` may be null only when no fusion can occur.
RoundMetrics run_round(std::vector<NodeState>& nodes, const SimConfig& cfg, const Mlp* net,
                       int round, SimStreams& streams);

// Trains the fusion net on a synthetic pre-simulation dataset drawn from
// the field model (input width = round-1 max cluster size, capped).
Mlp train_fusion_net(const SimConfig& cfg, const std::vector<NodeState>& initial_nodes);

// Full run: topology, training (or a preloaded net), `rounds` rounds.
// When `trained_out` is non-null it receives the fusion net the run used.
RunResult run_simulation(const SimConfig& cfg, const Mlp* pretrained = nullptr,
                         Mlp* trained_out = nullptr);

// Direct-transmission baseline: every alive sensor sends its reading
// straight to the BS each round; no clustering, no fusion; relays idle.
RunResult run_baseline(const SimConfig& cfg);

}  // namespace wsnsim
