#ifndef WVPA_ERRORS_HPP_
#define WVPA_ERRORS_HPP_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace wvpa {

/// Base class of every error thrown by this library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Malformed input: unparsable text, invalid structures, unknown names.
class InputError : public Error {
public:
    using Error::Error;
};

/// A tagged word whose parentheses do not balance. `position()` is the
/// 1-based index of the first offending letter (an unmatched return, or the
/// first call that is never closed); 0 when the word itself is empty context.
class NotWellMatched : public InputError {
public:
    NotWellMatched(const std::string& what, std::size_t position)
        : InputError(what), position_(position) {}
    std::size_t position() const { return position_; }

private:
    std::size_t position_;
};

class UnknownLetter : public InputError {
public:
    using InputError::InputError;
};

class ValidationError : public InputError {
public:
    using InputError::InputError;
};

/// Numeric kernel failures.
class LinalgError : public Error {
public:
    using Error::Error;
};

class ZeroMatrix : public LinalgError {
public:
    using LinalgError::LinalgError;
};

class NotRankOne : public LinalgError {
public:
    NotRankOne(const std::string& what, int rank) : LinalgError(what), rank_(rank) {}
    int rank() const { return rank_; }

private:
    int rank_;
};

class InsufficientTerms : public LinalgError {
public:
    using LinalgError::LinalgError;
};

/// Failures of the synthesis pipeline. The CLI maps these to exit code 3.
class SynthesisError : public Error {
public:
    using Error::Error;
};

/// No spanning row with a nonzero function value exists (or the rows with
/// nonzero values do not span the block).
class NoNonzeroBasis : public SynthesisError {
public:
    using SynthesisError::SynthesisError;
};

/// A least-squares solve left a residual above tolerance: the target row is
/// not in the span of the basis rows. Usually means the truncation was too
/// small or the rank was misjudged.
class NotInSpan : public SynthesisError {
public:
    NotInSpan(const std::string& what, double residual)
        : SynthesisError(what), residual_(residual) {}
    double residual() const { return residual_; }

private:
    double residual_;
};

/// Rank did not settle before the truncation limit.
class NotStabilized : public SynthesisError {
public:
    using SynthesisError::SynthesisError;
};

/// The row space could not be turned into a state-space representation of
/// the requested size.
class RepresentationError : public SynthesisError {
public:
    using SynthesisError::SynthesisError;
};

}  // namespace wvpa

#endif  // WVPA_ERRORS_HPP_
