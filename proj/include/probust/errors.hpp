#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace probust {

/// Base for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Invalid argument: vertex out of range, probability outside [0,1], mismatched edge spaces.
class DomainError : public Error {
public:
    using Error::Error;
};

/// An operation was called outside its documented precondition.
class PreconditionError : public Error {
public:
    using Error::Error;
};

/// A model returned a conditional probability outside [0,1].
class ModelContractError : public Error {
public:
    using Error::Error;
};

/// A conditional probability fell below the requested robustness floor.
class RobustnessViolation : public Error {
public:
    RobustnessViolation(std::size_t edge, std::string history_hex, double conditional, double base)
        : Error("robustness violation at edge " + std::to_string(edge) + ": conditional " +
                std::to_string(conditional) + " < base " + std::to_string(base) +
                " given history " + history_hex),
          edge_(edge),
          history_(std::move(history_hex)),
          conditional_(conditional),
          base_(base) {}
    /// No particular edge: the base exceeds the model's declared floor. edge() is 0.
    RobustnessViolation(double floor, double base)
        : Error("base " + std::to_string(base) + " exceeds the model's declared floor " + std::to_string(floor)),
          edge_(0),
          conditional_(floor),
          base_(base) {}

    std::size_t edge() const noexcept { return edge_; }
    const std::string& history() const noexcept { return history_; }
    double conditional() const noexcept { return conditional_; }
    double base() const noexcept { return base_; }

private:
    std::size_t edge_;
    std::string history_;
    double conditional_;
    double base_;
};

/// Input exceeds the hard size cap of an exact algorithm.
class UnsupportedScale : public Error {
public:
    UnsupportedScale(const std::string& what, std::size_t requested, std::size_t limit)
        : Error(what + ": size " + std::to_string(requested) + " exceeds cap " + std::to_string(limit)),
          requested_(requested),
          limit_(limit) {}

    std::size_t requested() const noexcept { return requested_; }
    std::size_t limit() const noexcept { return limit_; }

private:
    std::size_t requested_;
    std::size_t limit_;
};

/// Rejection sampler ran out of attempts.
class SamplingFailure : public Error {
public:
    SamplingFailure(const std::string& what, std::uint64_t attempts)
        : Error(what + " (after " + std::to_string(attempts) + " attempts)"), attempts_(attempts) {}

    std::uint64_t attempts() const noexcept { return attempts_; }

private:
    std::uint64_t attempts_;
};

/// A property that must be monotone is not (declared or refuted).
class NonMonotoneProperty : public Error {
public:
    using Error::Error;
};

/// A coupled sample had the property on the ER layer but not on the union.
class PairedViolation : public Error {
public:
    using Error::Error;
};

}  // namespace probust
