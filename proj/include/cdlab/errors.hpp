#pragma once

#include <stdexcept>
#include <string>

namespace cdlab {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// A closed-form expression was evaluated outside its real domain
/// (e.g. c < 2*sqrt(1-a) makes the u-exponents complex).
class DiscriminantNegative : public Error {
public:
    explicit DiscriminantNegative(const std::string& what) : Error(what) {}
};

/// Argument outside the domain of a formula (e.g. f^{-1} at c' <= 2*sqrt(a)).
class DomainError : public Error {
public:
    explicit DomainError(const std::string& what) : Error(what) {}
};

/// The asserted inclusion c_** in (c*, 2) failed; inputs are inconsistent.
class InvalidInterval : public Error {
public:
    explicit InvalidInterval(const std::string& what) : Error(what) {}
};

/// Newton Jacobian singular beyond the retry budget.
class IllConditioned : public Error {
public:
    explicit IllConditioned(const std::string& what) : Error(what) {}
};

/// Truncated wave domain does not contain the front / resolve the decay.
class DomainTooSmall : public Error {
public:
    explicit DomainTooSmall(const std::string& what) : Error(what) {}
};

/// Wave existence flipped more than once across the bisection bracket.
class PredicateNonMonotone : public Error {
public:
    explicit PredicateNonMonotone(const std::string& what) : Error(what) {}
};

/// Initial-data support violates the required margin inside the domain.
class SupportOutOfDomain : public Error {
public:
    explicit SupportOutOfDomain(const std::string& what) : Error(what) {}
};

/// A field sample exceeded the blow-up guard; the scheme went unstable.
class Blowup : public Error {
public:
    explicit Blowup(const std::string& what) : Error(what) {}
};

/// Too few samples in a fitting window.
class InsufficientData : public Error {
public:
    explicit InsufficientData(const std::string& what) : Error(what) {}
};

/// Fitting window shorter than the required sample count.
class WindowTooShort : public Error {
public:
    explicit WindowTooShort(const std::string& what) : Error(what) {}
};

/// Sub/super-solution parameter bundle violates the admissibility conditions.
class SpecInvalid : public Error {
public:
    explicit SpecInvalid(const std::string& what) : Error(what) {}
};

/// No parameter choice with the required margin exists.
class Infeasible : public Error {
public:
    explicit Infeasible(const std::string& what) : Error(what) {}
};

/// A level set never crosses the requested threshold.
class NoFront : public Error {
public:
    explicit NoFront(const std::string& what) : Error(what) {}
};

/// Run directory does not exist or has no manifest.
class UnknownRun : public Error {
public:
    explicit UnknownRun(const std::string& what) : Error(what) {}
};

} // namespace cdlab
