#pragma once

#include <stdexcept>
#include <string>

namespace gazegraph {

/// Base class for every error raised by this library. The CLI maps these to
/// exit code 2 (data/validation errors), as opposed to usage errors (1).
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A fixation lies outside the bounds of its scene.
class BoundsError : public Error {
public:
    using Error::Error;
};

/// Malformed input text (missing header, non-numeric field, bad JSON).
class ParseError : public Error {
public:
    using Error::Error;
};

/// Structurally valid input that violates a documented invariant.
class ValidationError : public Error {
public:
    using Error::Error;
};

/// Arguments that break an operation's contract (mixed image ids, level
/// mismatch, missing scene, ...).
class InputError : public Error {
public:
    using Error::Error;
};

/// Graph lookup with a node key that is not part of the graph.
class UnknownNodeError : public Error {
public:
    using Error::Error;
};

/// Scanpath term or graph node with no entry in the owning scene.
class UnknownObjectError : public Error {
public:
    using Error::Error;
};

/// Every fixation of an observer was discarded; carries the observer id so
/// callers can decide to skip that observer.
class EmptyScanpathError : public Error {
public:
    EmptyScanpathError(std::string observer, const std::string& what)
        : Error(what), observer_id(std::move(observer)) {}
    std::string observer_id;
};

/// A scanpath with fewer than two terms cannot be scored.
class DegenerateScanpathError : public Error {
public:
    using Error::Error;
};

/// A cohort group has no usable subject left.
class EmptyGroupError : public Error {
public:
    using Error::Error;
};

/// A subject produced no scoreable image at all.
class UnclassifiableError : public Error {
public:
    using Error::Error;
};

} // namespace gazegraph
