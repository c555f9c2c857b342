#pragma once

#include <stdexcept>
#include <string>

namespace vizlocal {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Bad argument/parameter combination (generator params, palette limits, ...).
struct ParameterError : Error {
    using Error::Error;
};

// Malformed input text; messages carry a line number where applicable.
struct FormatError : Error {
    using Error::Error;
};

// A color assignment would clash with an incident edge.
struct ConflictError : Error {
    int edge = -1;
    int clashing_edge = -1;
    int color = 0;
    ConflictError(const std::string& msg, int e, int clash, int c)
        : Error(msg), edge(e), clashing_edge(clash), color(c) {}
};

// Operation applied to an object in the wrong state.
struct StateError : Error {
    using Error::Error;
};

// Fan no longer matches the coloring it was built against.
struct StaleFanError : Error {
    using Error::Error;
};

// Caller broke an API precondition.
struct UsageError : Error {
    using Error::Error;
};

// Input violates a structural claim; signals an upstream bug.
struct StructureError : Error {
    using Error::Error;
};

// Input data rejected (e.g. non-bipartite graph for the bipartite engine).
struct InputError : Error {
    using Error::Error;
};

// A runtime self-check (properness audit, invariant probe) failed.
struct VerificationError : Error {
    using Error::Error;
};

}  // namespace vizlocal
