#pragma once

#include <unordered_map>
#include <vector>

#include "oos/case.hpp"
#include "oos/ybus.hpp"

namespace oos {

enum class Side { S, A };

/// Generator grouping plus the bus assignment it induces. S is the leading
/// (accelerating) cluster, A the lagging one.
struct ClusterPartition {
    std::vector<int> s_gens;  // generator bus ids
    std::vector<int> a_gens;
    std::unordered_map<int, Side> bus_side;  // every network bus -> side
    double m_s = 0.0;
    double m_a = 0.0;

    [[nodiscard]] Side side_of_bus(int bus_id) const;
    [[nodiscard]] bool gen_in_s(int gen_bus) const;
};

/// Directed separating line, reference direction S -> A.
struct CutsetLine {
    int from = 0;  // S-side bus
    int to = 0;    // A-side bus
};

struct Cutset {
    std::vector<CutsetLine> lines;
};

/// A cutset line resolved against the case branch list: branch index plus
/// whether the branch's stored from-end is the S side.
struct ResolvedCutLine {
    int branch = -1;
    bool from_is_s = true;
};

/// Builds the partition induced by removing the cutset lines: buses reachable
/// from the cut lines' from-ends form side S, the rest side A. Generators are
/// assigned by their terminal bus. Throws NotASeparatorError when the lines do
/// not separate the graph consistently with their declared direction.
ClusterPartition induce_partition(const NetworkCase& net, const Cutset& cut);

/// Validates that `cut` separates `part`: every cut line crosses S->A and no
/// other in-service branch crosses sides. Returns the resolved branch indices.
std::vector<ResolvedCutLine> validate_separator(const NetworkCase& net,
                                                const ClusterPartition& part,
                                                const Cutset& cut);

/// Resolves cut lines against the branch list without the separator check.
std::vector<ResolvedCutLine> resolve_cut_lines(const NetworkCase& net,
                                               const ClusterPartition& part,
                                               const Cutset& cut);

/// Inertia-weighted cluster means of a per-generator quantity.
struct ClusterMeans {
    double s = 0.0;
    double a = 0.0;
    [[nodiscard]] double diff() const { return s - a; }
};

ClusterMeans cluster_means(const NetworkCase& net, const ClusterPartition& part,
                           const double* per_gen_values);

void fill_cluster_inertias(const NetworkCase& net, ClusterPartition& part);

}  // namespace oos
