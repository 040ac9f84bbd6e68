#include "oos/ybus.hpp"

#include <numeric>

#include "oos/errors.hpp"

namespace oos {

const char* stage_name(Stage s) {
    switch (s) {
        case Stage::PreFault: return "pre-fault";
        case Stage::OnFault: return "on-fault";
        case Stage::PostFault: return "post-fault";
    }
    return "?";
}

BranchStamp branch_stamp(const BranchRecord& br, const BusIndex& index) {
    BranchStamp st;
    st.from_row = index.row(br.from);
    st.to_row = index.row(br.to);
    const Complex ys = 1.0 / Complex(br.r, br.x);
    const Complex ysh(0.0, br.b / 2.0);
    const double a = br.tap != 0.0 ? br.tap : 1.0;
    st.yff = (ys + ysh) / (a * a);
    st.yft = -ys / a;
    st.ytf = -ys / a;
    st.ytt = ys + ysh;
    return st;
}

namespace {

// Union-find over dense rows.
class DisjointSet {
public:
    explicit DisjointSet(int n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
    int find(int i) {
        while (parent_[i] != i) i = parent_[i] = parent_[parent_[i]];
        return i;
    }
    void unite(int a, int b) { parent_[find(a)] = find(b); }

private:
    std::vector<int> parent_;
};

}  // namespace

AdmittanceSystem build_admittance(const NetworkCase& net, Stage stage,
                                  std::optional<FaultSpec> fault,
                                  const std::vector<std::pair<int, int>>& tripped) {
    AdmittanceSystem sys;
    sys.stage = stage;
    sys.index = BusIndex(net);
    const int n = sys.index.size();
    sys.ybus = Eigen::MatrixXcd::Zero(n, n);

    auto is_tripped = [&](const BranchRecord& br) {
        if (stage != Stage::PostFault) return false;
        for (const auto& [f, t] : tripped)
            if ((br.from == f && br.to == t) || (br.from == t && br.to == f)) return true;
        return false;
    };

    sys.stamps.reserve(net.branches.size());
    for (const auto& br : net.branches) {
        BranchStamp st = branch_stamp(br, sys.index);
        st.in_service = !is_tripped(br);
        if (st.in_service) {
            sys.ybus(st.from_row, st.from_row) += st.yff;
            sys.ybus(st.from_row, st.to_row) += st.yft;
            sys.ybus(st.to_row, st.from_row) += st.ytf;
            sys.ybus(st.to_row, st.to_row) += st.ytt;
        }
        sys.stamps.push_back(st);
    }
    for (const auto& b : net.buses) {
        const int r = sys.index.row(b.id);
        sys.ybus(r, r) += Complex(b.gs, b.bs);
    }
    if (stage == Stage::OnFault) {
        if (!fault) throw ValidationError("on-fault stage needs a FaultSpec");
        sys.ybus(sys.index.row(fault->bus), sys.index.row(fault->bus)) +=
            Complex(fault->admittance, 0.0);
    }

    // All generators must share one connected component; the COI reference is
    // undefined across islands.
    DisjointSet ds(n);
    for (const auto& st : sys.stamps)
        if (st.in_service) ds.unite(st.from_row, st.to_row);
    int gen_comp = -1;
    for (const auto& g : net.generators) {
        const int c = ds.find(sys.index.row(g.bus));
        if (gen_comp == -1) gen_comp = c;
        else if (c != gen_comp)
            throw IslandedGeneratorsError(
                std::string("generators split across islands in ") + stage_name(stage) +
                " topology");
    }
    return sys;
}

}  // namespace oos
