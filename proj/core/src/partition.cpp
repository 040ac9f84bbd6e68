#include "oos/partition.hpp"

#include <algorithm>
#include <queue>

#include "oos/errors.hpp"

namespace oos {

Side ClusterPartition::side_of_bus(int bus_id) const {
    auto it = bus_side.find(bus_id);
    if (it == bus_side.end()) throw UnknownBusError(bus_id);
    return it->second;
}

bool ClusterPartition::gen_in_s(int gen_bus) const {
    return std::find(s_gens.begin(), s_gens.end(), gen_bus) != s_gens.end();
}

void fill_cluster_inertias(const NetworkCase& net, ClusterPartition& part) {
    part.m_s = 0.0;
    part.m_a = 0.0;
    for (const auto& g : net.generators) {
        if (part.gen_in_s(g.bus)) part.m_s += g.inertia;
        else part.m_a += g.inertia;
    }
    if (part.m_s <= 0.0 || part.m_a <= 0.0)
        throw ValidationError("both clusters need positive inertia");
}

namespace {

bool matches(const BranchRecord& br, const CutsetLine& ln) {
    return (br.from == ln.from && br.to == ln.to) ||
           (br.from == ln.to && br.to == ln.from);
}

int find_branch(const NetworkCase& net, const CutsetLine& ln) {
    for (int i = 0; i < net.n_branches(); ++i)
        if (matches(net.branches[i], ln)) return i;
    throw ValidationError("cutset line " + std::to_string(ln.from) + "-" +
                          std::to_string(ln.to) + " matches no branch");
}

}  // namespace

ClusterPartition induce_partition(const NetworkCase& net, const Cutset& cut) {
    if (cut.lines.empty()) throw ValidationError("empty cutset");
    BusIndex index(net);

    std::vector<bool> is_cut(net.n_branches(), false);
    for (const auto& ln : cut.lines) is_cut[static_cast<size_t>(find_branch(net, ln))] = true;

    // Adjacency without the cut lines.
    std::vector<std::vector<int>> adj(index.size());
    for (int i = 0; i < net.n_branches(); ++i) {
        if (is_cut[static_cast<size_t>(i)]) continue;
        const auto& br = net.branches[static_cast<size_t>(i)];
        adj[static_cast<size_t>(index.row(br.from))].push_back(index.row(br.to));
        adj[static_cast<size_t>(index.row(br.to))].push_back(index.row(br.from));
    }

    // Side S = everything reachable from the declared from-ends.
    std::vector<char> in_s(index.size(), 0);
    std::queue<int> q;
    for (const auto& ln : cut.lines) {
        const int r = index.row(ln.from);
        if (!in_s[static_cast<size_t>(r)]) {
            in_s[static_cast<size_t>(r)] = 1;
            q.push(r);
        }
    }
    while (!q.empty()) {
        const int u = q.front();
        q.pop();
        for (int v : adj[static_cast<size_t>(u)]) {
            if (!in_s[static_cast<size_t>(v)]) {
                in_s[static_cast<size_t>(v)] = 1;
                q.push(v);
            }
        }
    }

    ClusterPartition part;
    for (int r = 0; r < index.size(); ++r)
        part.bus_side[index.ids()[static_cast<size_t>(r)]] =
            in_s[static_cast<size_t>(r)] ? Side::S : Side::A;

    for (const auto& ln : cut.lines) {
        if (part.bus_side.at(ln.to) == Side::S)
            throw NotASeparatorError("cut line " + std::to_string(ln.from) + "-" +
                                     std::to_string(ln.to) +
                                     " does not cross: both ends reachable from side S");
    }

    for (const auto& g : net.generators) {
        if (part.bus_side.at(g.bus) == Side::S) part.s_gens.push_back(g.bus);
        else part.a_gens.push_back(g.bus);
    }
    if (part.s_gens.empty() || part.a_gens.empty())
        throw NotASeparatorError("cutset leaves all generators on one side");
    fill_cluster_inertias(net, part);
    return part;
}

std::vector<ResolvedCutLine> resolve_cut_lines(const NetworkCase& net,
                                               const ClusterPartition& part,
                                               const Cutset& cut) {
    std::vector<ResolvedCutLine> out;
    out.reserve(cut.lines.size());
    for (const auto& ln : cut.lines) {
        ResolvedCutLine rc;
        rc.branch = find_branch(net, ln);
        const auto& br = net.branches[static_cast<size_t>(rc.branch)];
        rc.from_is_s = part.side_of_bus(br.from) == Side::S;
        out.push_back(rc);
    }
    return out;
}

std::vector<ResolvedCutLine> validate_separator(const NetworkCase& net,
                                                const ClusterPartition& part,
                                                const Cutset& cut) {
    for (const auto& b : net.buses)
        if (!part.bus_side.count(b.id))
            throw NotASeparatorError("bus " + std::to_string(b.id) +
                                     " has no side assignment");

    auto resolved = resolve_cut_lines(net, part, cut);
    std::vector<bool> is_cut(net.n_branches(), false);
    for (const auto& rc : resolved) {
        is_cut[static_cast<size_t>(rc.branch)] = true;
        const auto& br = net.branches[static_cast<size_t>(rc.branch)];
        if (part.side_of_bus(br.from) == part.side_of_bus(br.to))
            throw NotASeparatorError("cut line " + std::to_string(br.from) + "-" +
                                     std::to_string(br.to) + " does not cross the partition");
    }
    for (int i = 0; i < net.n_branches(); ++i) {
        if (is_cut[static_cast<size_t>(i)]) continue;
        const auto& br = net.branches[static_cast<size_t>(i)];
        if (part.side_of_bus(br.from) != part.side_of_bus(br.to))
            throw NotASeparatorError("branch " + std::to_string(br.from) + "-" +
                                     std::to_string(br.to) +
                                     " crosses the partition but is not in the cutset");
    }
    // Generators must sit on their declared side.
    for (const auto& g : net.generators) {
        const bool in_s = part.gen_in_s(g.bus);
        if ((part.side_of_bus(g.bus) == Side::S) != in_s)
            throw NotASeparatorError("generator at bus " + std::to_string(g.bus) +
                                     " is assigned to the wrong side");
    }
    return resolved;
}

ClusterMeans cluster_means(const NetworkCase& net, const ClusterPartition& part,
                           const double* per_gen_values) {
    ClusterMeans cm;
    double ms = 0.0, ma = 0.0;
    for (int i = 0; i < net.n_gens(); ++i) {
        const auto& g = net.generators[static_cast<size_t>(i)];
        if (part.gen_in_s(g.bus)) {
            cm.s += g.inertia * per_gen_values[i];
            ms += g.inertia;
        } else {
            cm.a += g.inertia * per_gen_values[i];
            ma += g.inertia;
        }
    }
    if (ms <= 0.0 || ma <= 0.0) throw ValidationError("empty cluster");
    cm.s /= ms;
    cm.a /= ma;
    return cm;
}

}  // namespace oos
