#pragma once

#include <vector>

#include <Eigen/Dense>
#include <Eigen/LU>

#include "oos/case.hpp"
#include "oos/ybus.hpp"

namespace oos {

/// Per constant-power load: has the low-voltage conversion latched?
using LoadStates = std::vector<std::uint8_t>;

struct ElementPowers {
    Eigen::VectorXcd v;           // bus voltages
    Eigen::VectorXd p_gen;        // electrical power at the internal EMF node
    Eigen::VectorXd sigma_gen;    // delta_i - arg(V_terminal), principal value
    Eigen::VectorXd p_branch_fwd; // power into the branch at the from end
    Eigen::VectorXd p_branch_rev; // power into the branch at the to end
    Eigen::VectorXd sigma_branch; // arg(V_from) - arg(V_to), principal value
    Eigen::VectorXd p_load;       // consumed active power
    Eigen::VectorXd sigma_load;   // arg(V_bus), principal value
};

/// Algebraic network solver for one topology stage. Generator internal nodes
/// are folded in behind x'd; constant-impedance loads sit in the factored
/// matrix, constant-power loads are iterated as current injections and latch
/// to an equivalent impedance below their voltage threshold (with hysteresis).
class NetSolver {
public:
    NetSolver(const NetworkCase& net, const AdmittanceSystem& adm,
              double threshold_override = -1.0);

    [[nodiscard]] int n_buses() const { return n_; }
    [[nodiscard]] int n_gens() const { return m_; }

    [[nodiscard]] Eigen::VectorXcd emf_from_angles(const Eigen::VectorXd& delta) const;

    /// Solves the network for fixed internal EMFs. `states` carries the
    /// constant-power conversion latches; pass nullptr for all-unconverted.
    /// `warm` optionally seeds the constant-power iteration.
    Eigen::VectorXcd solve(const Eigen::VectorXcd& emf, const LoadStates* states = nullptr,
                           const Eigen::VectorXcd* warm = nullptr) const;

    /// Applies the threshold/hysteresis rule; returns true when any latch flipped.
    bool update_load_states(const Eigen::VectorXcd& v, LoadStates& states) const;

    [[nodiscard]] LoadStates initial_load_states() const;

    [[nodiscard]] ElementPowers powers(const Eigen::VectorXcd& v,
                                       const Eigen::VectorXcd& emf,
                                       const LoadStates* states = nullptr) const;

    /// Effective load admittance seen at each bus (impedance loads plus any
    /// converted constant-power loads), used by the network reduction.
    [[nodiscard]] Eigen::VectorXcd load_admittance_diag(const LoadStates* states,
                                                        const Eigen::VectorXcd* v_cp) const;

    /// Y_LL with generator branch stamps, excluding load admittances.
    [[nodiscard]] const Eigen::MatrixXcd& y_ll_aug() const { return y_ll_aug_; }
    [[nodiscard]] const AdmittanceSystem& admittance() const { return *adm_; }
    [[nodiscard]] const NetworkCase& network() const { return *net_; }

    static constexpr double kHysteresis = 0.05;  // [pu]
    static constexpr int kMaxIterations = 50;
    static constexpr double kTolerance = 1e-10;  // max |dV| between sweeps

private:
    struct LoadEntry {
        int row;
        Complex y_imp;     // admittance when behaving as impedance
        Complex s;         // scheduled power for constant-power behaviour
        Complex y_conv;    // impedance latched at the threshold voltage
        double threshold;
        bool constant_power;
    };

    void refactor(const LoadStates& states) const;

    const NetworkCase* net_;
    const AdmittanceSystem* adm_;
    int n_ = 0, m_ = 0;
    Eigen::MatrixXcd y_ll_aug_;
    std::vector<LoadEntry> loads_;
    std::vector<int> gen_row_;      // terminal bus row per generator
    Eigen::VectorXcd gen_y_;        // 1/(j x'd)
    mutable Eigen::PartialPivLU<Eigen::MatrixXcd> lu_;
    mutable LoadStates factored_states_;
};

/// One-shot solve per the module contract: rotor angles in, voltages and
/// element powers out.
ElementPowers network_solve(const Eigen::VectorXd& delta, const NetworkCase& net,
                            const AdmittanceSystem& adm, LoadStates* states = nullptr);

}  // namespace oos
