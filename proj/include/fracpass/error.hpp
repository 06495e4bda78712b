#pragma once

#include <stdexcept>
#include <string>

namespace fracpass {

/// Base of every error raised by the library. Each subclass maps to one
/// process exit code in the CLI.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
public:
    using Error::Error;
};

/// Caller broke a documented precondition.
class ContractError : public Error {
public:
    using Error::Error;
};

/// Inconsistent or empty inputs to an aggregation.
class UsageError : public Error {
public:
    using Error::Error;
};

/// Non-finite or degenerate data.
class DataError : public Error {
public:
    using Error::Error;
};

/// Least-squares problem without a unique solution.
class RankError : public Error {
public:
    using Error::Error;
};

/// Invalid run configuration.
class ConfigError : public Error {
public:
    using Error::Error;
};

/// Circulant embedding produced a significantly negative eigenvalue.
class EmbeddingError : public Error {
public:
    EmbeddingError(double hurst, std::size_t steps, double min_eigenvalue)
        : Error("circulant embedding failed for H=" + std::to_string(hurst) +
                ", N=" + std::to_string(steps) +
                " (min eigenvalue " + std::to_string(min_eigenvalue) + ")"),
          hurst_(hurst), steps_(steps) {}

    [[nodiscard]] double hurst() const noexcept { return hurst_; }
    [[nodiscard]] std::size_t steps() const noexcept { return steps_; }

private:
    double hurst_;
    std::size_t steps_;
};

/// The Cholesky oracle could not factor its covariance matrix.
class OracleError : public Error {
public:
    using Error::Error;
};

/// Diffusion coefficient dropped below its ellipticity floor.
class EllipticityError : public Error {
public:
    using Error::Error;
};

/// Euler integration produced a non-finite state.
class PropagationError : public Error {
public:
    PropagationError(const std::string& what, std::size_t step)
        : Error(what + " at step " + std::to_string(step)), step_(step) {}

    [[nodiscard]] std::size_t step() const noexcept { return step_; }

private:
    std::size_t step_;
};

}  // namespace fracpass
