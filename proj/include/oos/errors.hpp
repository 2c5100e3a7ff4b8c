#pragma once

#include <stdexcept>
#include <string>

namespace oos {

// No phasing orbit satisfies both the altitude and time-of-flight
// constraints; the corresponding network arc must be omitted.
class NoFeasibleTransfer : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ScenarioError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ModelBuildError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Configured solver command cannot be executed at all.
class BackendUnavailable : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Solver ran but produced output we cannot interpret; carries the
// captured text.
class ProtocolError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InstanceTooLarge : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class PlanningInfeasible : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class StateCorruption : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace oos
