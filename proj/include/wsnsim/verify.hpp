#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "wsnsim/mst.hpp"

namespace wsnsim {

// Self-check harnesses behind the CLI's gradcheck/mstcheck subcommands.
// Both compare the product-path implementation against an independent
// oracle: central finite differences for the gradients, exhaustive
// spanning-tree enumeration for the MST weights.

struct GradCheckReport {
    int nets_checked = 0;
    double max_rel_err = 0.0;
    int worst_net = -1;
    int worst_layer = -1;
    int worst_index = -1;
    bool pass = false;
};

struct MstCheckReport {
    int clusters_checked = 0;
    double max_abs_gap = 0.0;
    int worst_cluster = -1;
    std::vector<IndexedPoint> worst_nodes;
    bool pass = false;
};

// Checks analytic backprop gradients of random small nets against central
// finite differences (h = 1e-5) of the half squared error. Pass threshold:
// relative error < 1e-4, or absolute error < 1e-7 near zero. Setting
// `inject_bug` perturbs one analytic gradient entry; it exists so tests
// can prove the harness actually detects broken gradients.
GradCheckReport run_gradient_check(std::uint64_t seed, int net_count, bool inject_bug = false);

// Compares Prim's total weight against the exhaustive enumeration minimum
// on random clusters of 4-8 nodes in a 100 x 100 field (|gap| <= 1e-9).
MstCheckReport run_mst_check(std::uint64_t seed, int cluster_count);

// Minimum spanning-tree weight by backtracking over all edge subsets.
// Deliberately shares no code with build_mst.
double min_spanning_weight_by_enumeration(std::span<const IndexedPoint> nodes);

std::string gradcheck_report_json(const GradCheckReport& report);
std::string mstcheck_report_json(const MstCheckReport& report);

}  // namespace wsnsim
