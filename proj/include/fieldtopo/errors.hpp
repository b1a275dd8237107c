#pragma once

#include <stdexcept>
#include <string>

namespace fieldtopo {

// Mesh or field file could not be parsed.
struct ParseError : std::runtime_error {
    explicit ParseError(const std::string& msg) : std::runtime_error(msg) {}
};

// Connectivity violates the manifold / orientation requirements.
struct NonManifoldError : std::runtime_error {
    explicit NonManifoldError(const std::string& msg) : std::runtime_error(msg) {}
};

// A field file does not match the mesh it is paired with.
struct FieldMismatchError : std::runtime_error {
    explicit FieldMismatchError(const std::string& msg) : std::runtime_error(msg) {}
};

// Operation requires a topological disk.
struct NotADiskError : std::runtime_error {
    explicit NotADiskError(const std::string& msg) : std::runtime_error(msg) {}
};

// Prescribed singularity targets violate the index budget.
struct InfeasibleTargetsError : std::runtime_error {
    explicit InfeasibleTargetsError(const std::string& msg) : std::runtime_error(msg) {}
};

// A value that must be a multiple of 1/n landed too far from one.
// Signals a degenerate mesh or broken frames rather than a field property.
struct SnapError : std::runtime_error {
    explicit SnapError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace fieldtopo
