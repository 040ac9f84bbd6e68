#pragma once

#include <string>
#include <unordered_map>
#include <vector>

namespace oos {

struct BusRecord {
    int id = 0;
    double gs = 0.0;  // shunt conductance [pu]
    double bs = 0.0;  // shunt susceptance [pu]
};

struct BranchRecord {
    int from = 0;
    int to = 0;
    double r = 0.0;    // series resistance [pu]
    double x = 0.0;    // series reactance [pu]
    double b = 0.0;    // total line charging susceptance [pu]
    double tap = 0.0;  // off-nominal ratio on the from side; 0 means plain line
};

struct GenRecord {
    int bus = 0;
    double inertia = 0.0;   // M_i = 2H/omega_s [s^2/pu on system base]
    double xd_prime = 0.0;  // transient reactance [pu]
    double p_mech = 0.0;    // mechanical power [pu]
    double emf = 0.0;       // internal EMF magnitude |E'| [pu]
    double damping = 0.0;   // optional damping coefficient [pu·s/rad]
};

enum class LoadModel { ConstantImpedance, ConstantPower };

struct LoadRecord {
    int bus = 0;
    double p = 0.0;  // active power at 1 pu voltage [pu]
    double q = 0.0;  // reactive power at 1 pu voltage [pu]
    LoadModel model = LoadModel::ConstantImpedance;
    double v_threshold = 0.7;  // low-voltage conversion threshold [pu]
};

/// Static grid description. All quantities per-unit on base_mva.
struct NetworkCase {
    double base_mva = 100.0;
    std::vector<BusRecord> buses;
    std::vector<BranchRecord> branches;
    std::vector<GenRecord> generators;
    std::vector<LoadRecord> loads;

    [[nodiscard]] int n_buses() const { return static_cast<int>(buses.size()); }
    [[nodiscard]] int n_branches() const { return static_cast<int>(branches.size()); }
    [[nodiscard]] int n_gens() const { return static_cast<int>(generators.size()); }
    [[nodiscard]] int n_loads() const { return static_cast<int>(loads.size()); }

    [[nodiscard]] double total_inertia() const;

    /// Checks the structural invariants; throws ValidationError on the first violation.
    void validate() const;
};

/// Bus-id -> dense row lookup shared by every matrix built from a case.
class BusIndex {
public:
    BusIndex() = default;
    explicit BusIndex(const NetworkCase& net);

    [[nodiscard]] int row(int bus_id) const;  // throws UnknownBusError
    [[nodiscard]] bool contains(int bus_id) const { return map_.count(bus_id) > 0; }
    [[nodiscard]] int size() const { return static_cast<int>(ids_.size()); }
    [[nodiscard]] const std::vector<int>& ids() const { return ids_; }

private:
    std::vector<int> ids_;
    std::unordered_map<int, int> map_;
};

NetworkCase load_case(const std::string& path);
NetworkCase parse_case(const std::string& json_text);
std::string case_to_json(const NetworkCase& net);
void save_case(const NetworkCase& net, const std::string& path);

/// FNV-1a over the canonical JSON form; ties trajectories to the case they came from.
std::string case_hash(const NetworkCase& net);

}  // namespace oos
