#pragma once

#include <stdexcept>
#include <string>

namespace gsp {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Structurally invalid graph: bad vertex index, self-loop, duplicate edge,
/// nonpositive weight.
class GraphError : public Error {
public:
    using Error::Error;
};

/// The graph failed the connectivity requirement. Callers that sample random
/// graphs catch this and resample.
class DisconnectedError : public GraphError {
public:
    using GraphError::GraphError;
};

/// Vector length does not match the graph or operator dimensions.
class DimensionError : public Error {
public:
    using Error::Error;
};

/// Dense eigendecomposition requested above the configured size guard.
class SizeGuardError : public Error {
public:
    using Error::Error;
};

/// A node broke the message-passing protocol: sent to a non-neighbor, or its
/// inbox is missing a neighbor's round value (desync).
class ProtocolError : public Error {
public:
    using Error::Error;
};

/// Invalid run or experiment configuration.
class ConfigError : public Error {
public:
    using Error::Error;
};

/// File could not be opened, read, or parsed.
class IoError : public Error {
public:
    using Error::Error;
};

} // namespace gsp
