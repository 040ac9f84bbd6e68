#include "oos/case.hpp"

#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "oos/errors.hpp"

namespace oos {

using nlohmann::json;

double NetworkCase::total_inertia() const {
    double m = 0.0;
    for (const auto& g : generators) m += g.inertia;
    return m;
}

void NetworkCase::validate() const {
    if (base_mva <= 0.0) throw ValidationError("base_mva must be positive");
    if (buses.empty()) throw ValidationError("case has no buses");
    BusIndex index(*this);
    for (const auto& br : branches) {
        if (!index.contains(br.from)) throw UnknownBusError(br.from);
        if (!index.contains(br.to)) throw UnknownBusError(br.to);
        if (br.x <= 0.0)
            throw ValidationError("branch " + std::to_string(br.from) + "-" +
                                  std::to_string(br.to) + " needs x > 0");
    }
    if (generators.size() < 2)
        throw ValidationError("two-machine equivalencing needs at least 2 generators");
    for (const auto& g : generators) {
        if (!index.contains(g.bus)) throw UnknownBusError(g.bus);
        if (g.inertia <= 0.0)
            throw ValidationError("generator at bus " + std::to_string(g.bus) +
                                  " needs inertia > 0");
        if (g.xd_prime <= 0.0)
            throw ValidationError("generator at bus " + std::to_string(g.bus) +
                                  " needs xd_prime > 0");
        if (g.emf <= 0.0)
            throw ValidationError("generator at bus " + std::to_string(g.bus) +
                                  " needs |E'| > 0");
    }
    for (const auto& l : loads) {
        if (!index.contains(l.bus)) throw UnknownBusError(l.bus);
        if (l.v_threshold < 0.0)
            throw ValidationError("load at bus " + std::to_string(l.bus) +
                                  " needs v_threshold >= 0");
    }
}

BusIndex::BusIndex(const NetworkCase& net) {
    ids_.reserve(net.buses.size());
    for (const auto& b : net.buses) {
        if (map_.count(b.id))
            throw ValidationError("duplicate bus id " + std::to_string(b.id));
        map_[b.id] = static_cast<int>(ids_.size());
        ids_.push_back(b.id);
    }
}

int BusIndex::row(int bus_id) const {
    auto it = map_.find(bus_id);
    if (it == map_.end()) throw UnknownBusError(bus_id);
    return it->second;
}

namespace {

json case_json(const NetworkCase& net) {
    json j;
    j["base_mva"] = net.base_mva;
    j["buses"] = json::array();
    for (const auto& b : net.buses)
        j["buses"].push_back({{"id", b.id}, {"gs", b.gs}, {"bs", b.bs}});
    j["branches"] = json::array();
    for (const auto& br : net.branches)
        j["branches"].push_back({{"from", br.from},
                                 {"to", br.to},
                                 {"r", br.r},
                                 {"x", br.x},
                                 {"b", br.b},
                                 {"tap", br.tap}});
    j["generators"] = json::array();
    for (const auto& g : net.generators)
        j["generators"].push_back({{"bus", g.bus},
                                   {"inertia", g.inertia},
                                   {"xd_prime", g.xd_prime},
                                   {"p_mech", g.p_mech},
                                   {"emf", g.emf},
                                   {"damping", g.damping}});
    j["loads"] = json::array();
    for (const auto& l : net.loads)
        j["loads"].push_back(
            {{"bus", l.bus},
             {"p", l.p},
             {"q", l.q},
             {"model", l.model == LoadModel::ConstantPower ? "constant-power"
                                                           : "constant-impedance"},
             {"v_threshold", l.v_threshold}});
    return j;
}

}  // namespace

NetworkCase parse_case(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::exception& e) {
        throw IoError(std::string("bad case JSON: ") + e.what());
    }
    NetworkCase net;
    try {
        net.base_mva = j.at("base_mva").get<double>();
        for (const auto& jb : j.at("buses")) {
            BusRecord b;
            b.id = jb.at("id").get<int>();
            b.gs = jb.value("gs", 0.0);
            b.bs = jb.value("bs", 0.0);
            net.buses.push_back(b);
        }
        for (const auto& jb : j.at("branches")) {
            BranchRecord br;
            br.from = jb.at("from").get<int>();
            br.to = jb.at("to").get<int>();
            br.r = jb.value("r", 0.0);
            br.x = jb.at("x").get<double>();
            br.b = jb.value("b", 0.0);
            br.tap = jb.value("tap", 0.0);
            net.branches.push_back(br);
        }
        for (const auto& jg : j.at("generators")) {
            GenRecord g;
            g.bus = jg.at("bus").get<int>();
            g.inertia = jg.at("inertia").get<double>();
            g.xd_prime = jg.at("xd_prime").get<double>();
            g.p_mech = jg.at("p_mech").get<double>();
            g.emf = jg.at("emf").get<double>();
            g.damping = jg.value("damping", 0.0);
            net.generators.push_back(g);
        }
        for (const auto& jl : j.value("loads", json::array())) {
            LoadRecord l;
            l.bus = jl.at("bus").get<int>();
            l.p = jl.at("p").get<double>();
            l.q = jl.value("q", 0.0);
            const std::string model = jl.value("model", "constant-impedance");
            if (model == "constant-power")
                l.model = LoadModel::ConstantPower;
            else if (model == "constant-impedance")
                l.model = LoadModel::ConstantImpedance;
            else
                throw IoError("unknown load model '" + model + "'");
            l.v_threshold = jl.value("v_threshold", 0.7);
            net.loads.push_back(l);
        }
    } catch (const json::exception& e) {
        throw IoError(std::string("bad case JSON: ") + e.what());
    }
    net.validate();
    return net;
}

NetworkCase load_case(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open case file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_case(ss.str());
}

std::string case_to_json(const NetworkCase& net) { return case_json(net).dump(2) + "\n"; }

void save_case(const NetworkCase& net, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write case file: " + path);
    out << case_to_json(net);
}

std::string case_hash(const NetworkCase& net) {
    const std::string text = case_to_json(net);
    // FNV-1a, 64-bit
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : text) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return std::string(buf);
}

}  // namespace oos
