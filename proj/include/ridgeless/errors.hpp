#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ridgeless {

/// Dimension must be an odd positive integer.
class invalid_dimension_error : public std::invalid_argument {
public:
    explicit invalid_dimension_error(int d)
        : std::invalid_argument("dimension must be odd and >= 1, got " + std::to_string(d)),
          dimension(d) {}
    int dimension;
};

/// Two design points closer than the duplicate threshold.
class duplicate_point_error : public std::runtime_error {
public:
    duplicate_point_error(std::size_t a, std::size_t b, double dist)
        : std::runtime_error("duplicate points: indices " + std::to_string(a) + " and " +
                             std::to_string(b) + " at distance " + std::to_string(dist)),
          i(a), j(b), distance(dist) {}
    std::size_t i;
    std::size_t j;
    double distance;
};

/// Gram solve failed even after the jitter escalation.
class ill_conditioned_error : public std::runtime_error {
public:
    explicit ill_conditioned_error(double cond)
        : std::runtime_error("Gram factorization failed after jitter escalation"
                             " (condition estimate " + std::to_string(cond) + ")"),
          condition_estimate(cond) {}
    double condition_estimate;
};

/// A convergent quadrature failed to stabilize within the refinement cap.
class quadrature_error : public std::runtime_error {
public:
    explicit quadrature_error(const std::string& what_arg) : std::runtime_error(what_arg) {}
};

/// Grid function violates the negligible-edge requirement.
class grid_truncation_error : public std::runtime_error {
public:
    grid_truncation_error(double edge, double bound)
        : std::runtime_error("grid edge magnitude " + std::to_string(edge) +
                             " exceeds bound " + std::to_string(bound)),
          edge_magnitude(edge), allowed(bound) {}
    double edge_magnitude;
    double allowed;
};

/// Bad user-facing input (CLI flags, config keys, parameter ranges).
class usage_error : public std::invalid_argument {
public:
    explicit usage_error(const std::string& what_arg) : std::invalid_argument(what_arg) {}
};

} // namespace ridgeless
