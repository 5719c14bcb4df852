#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace cyclefire {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed graph or basis document.
class ParseError : public Error {
public:
    using Error::Error;
};

/// A graph violating one of the structural requirements (connected, simple).
class GraphError : public Error {
public:
    enum class Kind { vertex_out_of_range, self_loop, duplicate_edge, disconnected, bad_root, bad_rotation };

    GraphError(Kind kind, const std::string& what) : Error(what), kind_(kind) {}
    Kind kind() const noexcept { return kind_; }

private:
    Kind kind_;
};

class DimensionError : public Error {
public:
    using Error::Error;
};

/// A chip configuration that is not effective or has the wrong length.
class ConfigurationError : public Error {
public:
    using Error::Error;
};

class SingularMatrixError : public Error {
public:
    SingularMatrixError() : Error("singular matrix: det = 0") {}
};

/// Raised when a list of vectors is not linearly independent; `index` is the
/// first vector lying in the span of its predecessors.
class DependentVectorsError : public Error {
public:
    explicit DependentVectorsError(std::size_t index)
        : Error("vector " + std::to_string(index) + " is linearly dependent on the preceding vectors"),
          index_(index) {}
    std::size_t index() const noexcept { return index_; }

private:
    std::size_t index_;
};

class InvalidSpanningTreeError : public Error {
public:
    using Error::Error;
};

class NotPlanarError : public Error {
public:
    using Error::Error;
};

class NotMMatrixError : public Error {
public:
    using Error::Error;
};

/// Stabilization exceeded its firing cap.
class NotAvalancheFiniteError : public Error {
public:
    using Error::Error;
};

} // namespace cyclefire
