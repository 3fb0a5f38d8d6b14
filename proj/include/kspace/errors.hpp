#pragma once

#include <stdexcept>
#include <string>

namespace kspace {

/// A caller violated an operation's precondition (point outside the disk,
/// malformed measure, self-map that leaves the disk, ...).
class DomainError : public std::invalid_argument {
public:
    explicit DomainError(const std::string& what) : std::invalid_argument(what) {}
};

/// An iterative limit (grid doubling, radial sweep) failed to stabilize.
class NonConvergence : public std::runtime_error {
public:
    explicit NonConvergence(const std::string& what) : std::runtime_error(what) {}
};

/// A guard that cannot trip when preconditions hold.
class InternalError : public std::logic_error {
public:
    explicit InternalError(const std::string& what) : std::logic_error(what) {}
};

}  // namespace kspace
