// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace qfp {

/// Base class for all toolkit errors.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed input: bad grids, mismatched spaces, invalid parameters.
class InputError : public Error {
public:
    using Error::Error;
};

/// A computation produced NaN/Inf or otherwise left the representable range.
class NumericError : public Error {
public:
    using Error::Error;
};

/// The requested operation is not available for this object (e.g. a space
/// without a sampler).
class UnsupportedError : public Error {
public:
    using Error::Error;
};

/// An orbit left the space (non-finite coordinates). Distinct from a
/// threshold-exceeded probe verdict: NaN poisoning is never a mathematical
/// statement about the map.
class DivergenceError : public Error {
public:
    DivergenceError(const std::string& msg, std::size_t step)
        : Error(msg), step_(step) {}

    std::size_t step() const { return step_; }

private:
    std::size_t step_;
};

/// A consistency check that can only fail through an implementation bug.
class InternalError : public Error {
public:
    using Error::Error;
};

} // namespace qfp
