#pragma once

#include <Eigen/Dense>

#include "oos/case.hpp"
#include "oos/netsolve.hpp"
#include "oos/ybus.hpp"

namespace oos {

/// Element-wise operating point of the (post-fault) stable equilibrium.
/// All angles are COI-frame, unwrapped continuations start from these values.
struct SteadyBaseline {
    Eigen::VectorXd delta_gen;      // rotor angles at the SEP [rad]
    Eigen::VectorXcd emf;           // E^s = |E'| angle delta
    Eigen::VectorXcd v_bus;
    Eigen::VectorXd p_gen;
    Eigen::VectorXd p_branch_fwd, p_branch_rev;
    Eigen::VectorXd p_load;
    Eigen::VectorXd sigma_gen, sigma_branch, sigma_load;
    double p_coi = 0.0;  // residual COI power (nonzero only for unbalanced dispatch)
    LoadStates load_states;

    [[nodiscard]] bool valid() const { return delta_gen.size() > 0; }
};

/// Finds the equilibrium of the swing equations on the given topology: rotor
/// angles such that P_mi - P_ei - (M_i/M_T) P_COI = 0 with fixed |E'|, in the
/// COI gauge (sum M_i delta_i = 0). Newton iteration with finite-difference
/// Jacobian; throws PowerFlowDivergedError on failure.
SteadyBaseline solve_steady_state(const NetworkCase& net, const AdmittanceSystem& adm,
                                  const Eigen::VectorXd* initial_delta = nullptr,
                                  double threshold_override = -1.0);

}  // namespace oos
