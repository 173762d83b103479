#pragma once

#include <stdexcept>
#include <string>

namespace watlas {

/// A series or adaptive quadrature failed to reach its tolerance
/// within the configured budget.
class ConvergenceError : public std::runtime_error {
public:
    explicit ConvergenceError(const std::string& what) : std::runtime_error(what) {}
};

/// A requested allocation would exceed the configured memory cap.
class ResourceError : public std::runtime_error {
public:
    explicit ResourceError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace watlas
