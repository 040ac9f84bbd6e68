#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace oos {

class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

class ValidationError : public Error {
public:
    using Error::Error;
};

class UnknownBusError : public Error {
public:
    explicit UnknownBusError(int bus_id)
        : Error("unknown bus id " + std::to_string(bus_id)), bus_id(bus_id) {}
    int bus_id;
};

class IslandedGeneratorsError : public Error {
public:
    using Error::Error;
};

class PowerFlowDivergedError : public Error {
public:
    PowerFlowDivergedError(int iterations, double max_mismatch)
        : Error("steady-state solve diverged after " + std::to_string(iterations) +
                " iterations, max mismatch " + std::to_string(max_mismatch) + " pu"),
          iterations(iterations), max_mismatch(max_mismatch) {}
    int iterations;
    double max_mismatch;
};

class NoPostFaultSepError : public Error {
public:
    using Error::Error;
};

class SingularReductionError : public Error {
public:
    using Error::Error;
};

class NotASeparatorError : public Error {
public:
    using Error::Error;
};

class NetworkSolveDivergedError : public Error {
public:
    NetworkSolveDivergedError(std::string what, std::vector<int> buses)
        : Error(std::move(what)), offending_buses(std::move(buses)) {}
    std::vector<int> offending_buses;
};

class NoBaselineError : public Error {
public:
    using Error::Error;
};

class InsufficientSwingError : public Error {
public:
    using Error::Error;
};

class CaseHashMismatchError : public Error {
public:
    using Error::Error;
};

class IoError : public Error {
public:
    using Error::Error;
};

}  // namespace oos
