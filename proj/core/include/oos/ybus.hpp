#pragma once

#include <complex>
#include <optional>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "oos/case.hpp"

namespace oos {

using Complex = std::complex<double>;

enum class Stage { PreFault, OnFault, PostFault };

[[nodiscard]] const char* stage_name(Stage s);

/// Three-phase bus fault modelled as a large shunt admittance at the bus.
struct FaultSpec {
    int bus = 0;
    double admittance = 1e7;  // [pu]
};

/// 2x2 admittance stamp of one branch, in dense-row coordinates.
/// I_from = yff*V_from + yft*V_to;  I_to = ytf*V_from + ytt*V_to.
struct BranchStamp {
    int from_row = -1;
    int to_row = -1;
    Complex yff, yft, ytf, ytt;
    bool in_service = true;
};

struct AdmittanceSystem {
    Eigen::MatrixXcd ybus;  // network buses only; loads and generator branches excluded
    Stage stage = Stage::PreFault;
    BusIndex index;
    std::vector<BranchStamp> stamps;  // aligned with NetworkCase::branches
};

[[nodiscard]] BranchStamp branch_stamp(const BranchRecord& br, const BusIndex& index);

/// Assembles the bus admittance matrix for the requested stage.
/// OnFault adds the fault shunt; PostFault drops every branch in `tripped`
/// (given as (from,to) bus pairs). Rejects cases where the generators do not
/// share one connected component.
AdmittanceSystem build_admittance(const NetworkCase& net, Stage stage,
                                  std::optional<FaultSpec> fault = std::nullopt,
                                  const std::vector<std::pair<int, int>>& tripped = {});

}  // namespace oos
