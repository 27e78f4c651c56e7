#pragma once

#include <stdexcept>

namespace gridlab {

// Base class for everything thrown by this library.
struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A vertex, row index or grid dimension lies outside the declared grid.
struct bounds_error : error {
    using error::error;
};

// An edge joins a vertex to itself.
struct loop_edge_error : error {
    using error::error;
};

// Operands live on different grid dimensions (or a matrix has the wrong shape).
struct dimension_mismatch : error {
    using error::error;
};

// The diagonal part is not stratified along the requested axis.
struct not_stratified : error {
    using error::error;
};

// An operation restricted to diagonal edges met a horizontal or vertical one.
struct non_diagonal_edge : error {
    using error::error;
};

// The operation needs at least one edge.
struct empty_graph_error : error {
    using error::error;
};

// A matrix expected to be symmetric is not.
struct not_symmetric : error {
    using error::error;
};

// An enumeration would exceed the configured subset budget.
struct budget_exceeded : error {
    using error::error;
};

// Malformed JSON or table text.
struct parse_error : error {
    using error::error;
};

}  // namespace gridlab
