#include "oos/netsolve.hpp"

#include <algorithm>
#include <cmath>

#include "oos/errors.hpp"

namespace oos {

NetSolver::NetSolver(const NetworkCase& net, const AdmittanceSystem& adm,
                     double threshold_override)
    : net_(&net), adm_(&adm), n_(adm.index.size()), m_(net.n_gens()) {
    y_ll_aug_ = adm.ybus;
    gen_row_.resize(static_cast<size_t>(m_));
    gen_y_.resize(m_);
    for (int i = 0; i < m_; ++i) {
        const auto& g = net.generators[static_cast<size_t>(i)];
        const int r = adm.index.row(g.bus);
        gen_row_[static_cast<size_t>(i)] = r;
        gen_y_(i) = 1.0 / Complex(0.0, g.xd_prime);
        y_ll_aug_(r, r) += gen_y_(i);
    }
    loads_.reserve(net.loads.size());
    for (const auto& l : net.loads) {
        LoadEntry e;
        e.row = adm.index.row(l.bus);
        e.y_imp = Complex(l.p, -l.q);  // (P - jQ) / V_ref^2 with V_ref = 1
        e.s = Complex(l.p, l.q);
        e.threshold = threshold_override > 0.0 ? threshold_override : l.v_threshold;
        const double vt2 = e.threshold > 0.0 ? e.threshold * e.threshold : 1.0;
        e.y_conv = Complex(l.p, -l.q) / vt2;
        e.constant_power = l.model == LoadModel::ConstantPower;
        loads_.push_back(e);
    }
    refactor(initial_load_states());
}

LoadStates NetSolver::initial_load_states() const {
    return LoadStates(loads_.size(), 0);
}

void NetSolver::refactor(const LoadStates& states) const {
    Eigen::MatrixXcd a = y_ll_aug_;
    for (size_t i = 0; i < loads_.size(); ++i) {
        const auto& e = loads_[i];
        if (!e.constant_power) a(e.row, e.row) += e.y_imp;
        else if (states[i]) a(e.row, e.row) += e.y_conv;
    }
    lu_.compute(a);
    factored_states_ = states;
}

Eigen::VectorXcd NetSolver::emf_from_angles(const Eigen::VectorXd& delta) const {
    Eigen::VectorXcd e(m_);
    for (int i = 0; i < m_; ++i)
        e(i) = std::polar(net_->generators[static_cast<size_t>(i)].emf, delta(i));
    return e;
}

Eigen::VectorXcd NetSolver::solve(const Eigen::VectorXcd& emf, const LoadStates* states,
                                  const Eigen::VectorXcd* warm) const {
    const LoadStates& st = states ? *states : factored_states_;
    if (states && factored_states_ != st) refactor(st);

    Eigen::VectorXcd rhs0 = Eigen::VectorXcd::Zero(n_);
    for (int i = 0; i < m_; ++i) rhs0(gen_row_[static_cast<size_t>(i)]) += gen_y_(i) * emf(i);

    bool any_cp = false;
    for (size_t i = 0; i < loads_.size(); ++i)
        if (loads_[i].constant_power && !st[i]) any_cp = true;

    Eigen::VectorXcd v = lu_.solve(rhs0);
    if (!any_cp) return v;

    if (warm && warm->size() == n_) v = *warm;
    for (int it = 0; it < kMaxIterations; ++it) {
        Eigen::VectorXcd rhs = rhs0;
        for (size_t i = 0; i < loads_.size(); ++i) {
            const auto& e = loads_[i];
            if (!e.constant_power || st[i]) continue;
            const Complex vb = v(e.row);
            const double vm = std::abs(vb);
            // Guard against the fixed point blowing up through a voltage dip;
            // below the threshold the latched impedance applies anyway.
            const double vm_eff = std::max(vm, 0.5 * e.threshold);
            const Complex vb_eff = vm > 0.0 ? vb * (vm_eff / vm) : Complex(vm_eff, 0.0);
            rhs(e.row) -= std::conj(e.s / vb_eff);
        }
        Eigen::VectorXcd v_next = lu_.solve(rhs);
        const double dv = (v_next - v).cwiseAbs().maxCoeff();
        v = v_next;
        if (dv < kTolerance) return v;
    }
    std::vector<int> worst;
    for (size_t i = 0; i < loads_.size(); ++i)
        if (loads_[i].constant_power && !st[i])
            worst.push_back(net_->loads[i].bus);
    throw NetworkSolveDivergedError("constant-power network solve did not converge", worst);
}

bool NetSolver::update_load_states(const Eigen::VectorXcd& v, LoadStates& states) const {
    bool changed = false;
    for (size_t i = 0; i < loads_.size(); ++i) {
        const auto& e = loads_[i];
        if (!e.constant_power || e.threshold <= 0.0) continue;
        const double vm = std::abs(v(e.row));
        if (!states[i] && vm < e.threshold) {
            states[i] = 1;
            changed = true;
        } else if (states[i] && vm > e.threshold + kHysteresis) {
            states[i] = 0;
            changed = true;
        }
    }
    return changed;
}

ElementPowers NetSolver::powers(const Eigen::VectorXcd& v, const Eigen::VectorXcd& emf,
                                const LoadStates* states) const {
    const LoadStates& st = states ? *states : factored_states_;
    ElementPowers out;
    out.v = v;
    out.p_gen.resize(m_);
    out.sigma_gen.resize(m_);
    for (int i = 0; i < m_; ++i) {
        const Complex vt = v(gen_row_[static_cast<size_t>(i)]);
        const Complex ig = (emf(i) - vt) * gen_y_(i);
        out.p_gen(i) = (emf(i) * std::conj(ig)).real();
        out.sigma_gen(i) = std::arg(emf(i)) - std::arg(vt);
    }
    const int nb = net_->n_branches();
    out.p_branch_fwd.setZero(nb);
    out.p_branch_rev.setZero(nb);
    out.sigma_branch.resize(nb);
    for (int i = 0; i < nb; ++i) {
        const auto& stp = adm_->stamps[static_cast<size_t>(i)];
        out.sigma_branch(i) = std::arg(v(stp.from_row)) - std::arg(v(stp.to_row));
        if (!stp.in_service) continue;
        const Complex vf = v(stp.from_row), vt = v(stp.to_row);
        out.p_branch_fwd(i) = (vf * std::conj(stp.yff * vf + stp.yft * vt)).real();
        out.p_branch_rev(i) = (vt * std::conj(stp.ytf * vf + stp.ytt * vt)).real();
    }
    const int nl = net_->n_loads();
    out.p_load.resize(nl);
    out.sigma_load.resize(nl);
    for (int i = 0; i < nl; ++i) {
        const auto& e = loads_[static_cast<size_t>(i)];
        const Complex vb = v(e.row);
        out.sigma_load(i) = std::arg(vb);
        if (!e.constant_power)
            out.p_load(i) = e.y_imp.real() * std::norm(vb);
        else if (st[static_cast<size_t>(i)])
            out.p_load(i) = e.y_conv.real() * std::norm(vb);
        else
            out.p_load(i) = e.s.real();
    }
    return out;
}

Eigen::VectorXcd NetSolver::load_admittance_diag(const LoadStates* states,
                                                 const Eigen::VectorXcd* v_cp) const {
    const LoadStates& st = states ? *states : factored_states_;
    Eigen::VectorXcd yl = Eigen::VectorXcd::Zero(n_);
    for (size_t i = 0; i < loads_.size(); ++i) {
        const auto& e = loads_[i];
        if (!e.constant_power) {
            yl(e.row) += e.y_imp;
        } else if (st[i]) {
            yl(e.row) += e.y_conv;
        } else {
            // Linearize at the given operating voltage.
            double vm2 = 1.0;
            if (v_cp && v_cp->size() == n_) vm2 = std::norm((*v_cp)(e.row));
            yl(e.row) += std::conj(e.s) / vm2;
        }
    }
    return yl;
}

ElementPowers network_solve(const Eigen::VectorXd& delta, const NetworkCase& net,
                            const AdmittanceSystem& adm, LoadStates* states) {
    NetSolver solver(net, adm);
    LoadStates st = states ? *states : solver.initial_load_states();
    const Eigen::VectorXcd emf = solver.emf_from_angles(delta);
    Eigen::VectorXcd v = solver.solve(emf, &st);
    if (solver.update_load_states(v, st)) v = solver.solve(emf, &st, &v);
    if (states) *states = st;
    return solver.powers(v, emf, &st);
}

}  // namespace oos
