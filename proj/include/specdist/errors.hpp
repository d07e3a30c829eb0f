#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace specdist {

// Invalid arguments are reported with std::invalid_argument throughout; the
// types below cover the failure modes that callers may want to tell apart.

/// Input is valid but exceeds what an exhaustive routine supports.
class UnsupportedSize : public std::length_error {
public:
    using std::length_error::length_error;
};

/// A value to be inverted lies outside the image of every monotone piece.
class NoPreimage : public std::domain_error {
public:
    NoPreimage(std::size_t index, double value)
        : std::domain_error("no preimage for value " + std::to_string(value) +
                            " at grid index " + std::to_string(index)),
          index_(index), value_(value) {}

    std::size_t index() const noexcept { return index_; }
    double value() const noexcept { return value_; }

private:
    std::size_t index_;
    double value_;
};

/// Cholesky factorization failed.
class NotPositiveDefinite : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A structural guarantee (e.g. the displacement-path property of two
/// equal-cardinality partitions) did not hold; the inputs broke an invariant.
class LemmaViolation : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// Internal consistency failure that indicates a bug rather than bad input.
class InternalError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

}  // namespace specdist
