#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace kunz {

// Base class for every error the engine raises on purpose.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Operands live in different ambient rings (wrong variable count, wrong prime,
// or an out-of-range variable index).
class AmbientMismatch : public Error {
public:
    explicit AmbientMismatch(const std::string& msg) : Error("ambient mismatch: " + msg) {}
};

// A step or enumeration budget ran out.  Never silent: callers either surface
// this or convert it into a not-decided verdict.
class BudgetExceeded : public Error {
public:
    explicit BudgetExceeded(const std::string& msg) : Error("budget exceeded: " + msg) {}
};

// A candidate ring map does not kill a source relation.
class NotWellDefined : public Error {
public:
    NotWellDefined(const std::string& msg, std::size_t relation_index)
        : Error("map not well defined: " + msg), relation_index(relation_index) {}
    std::size_t relation_index;
};

// A computation needed a finite-dimensional algebra or module and got an
// infinite staircase.
class NotArtinian : public Error {
public:
    explicit NotArtinian(const std::string& msg) : Error("not artinian: " + msg) {}
};

// The square of a lifting problem does not commute.
class IncompatibleBase : public Error {
public:
    explicit IncompatibleBase(const std::string& msg) : Error("incompatible base: " + msg) {}
};

// The differential criterion and the Frobenius criterion disagreed on a
// finitely presented input.  Both sides are exact algorithms, so this is an
// engine bug by definition; it halts the run with full witness dumps.
class KunzViolation : public Error {
public:
    explicit KunzViolation(const std::string& msg) : Error("kunz violation: " + msg) {}
};

// A built-in self-check failed (e.g. an emitted basis flunks the Buchberger
// criterion).  Also an engine bug by definition.
class InternalError : public Error {
public:
    explicit InternalError(const std::string& msg) : Error("internal error: " + msg) {}
};

} // namespace kunz
