#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ssn {

// Base of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class OverflowError : public Error {
public:
    using Error::Error;
};

class NonCoprime : public Error {
public:
    using Error::Error;
};

class NotTorusKnot : public Error {
public:
    using Error::Error;
};

// q = 1 hosts are classified by classify_unknot_surgery instead.
class UnknotHost : public Error {
public:
    using Error::Error;
};

class DegenerateInput : public Error {
public:
    using Error::Error;
};

class DegenerateSlope : public Error {
public:
    using Error::Error;
};

class TooManyFibers : public Error {
public:
    using Error::Error;
};

class UnsupportedFamily : public Error {
public:
    using Error::Error;
};

class InvalidFiber : public Error {
public:
    using Error::Error;
};

class DomainError : public Error {
public:
    using Error::Error;
};

class CatalogError : public Error {
public:
    using Error::Error;
};

class VertexAbsent : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    using Error::Error;
};

class SeiferterNotValid : public Error {
public:
    explicit SeiferterNotValid(const std::string& what, std::size_t step = npos)
        : Error(what), step_(step) {}

    // Index into the twist script, or npos for a single twist.
    std::size_t step() const noexcept { return step_; }

    static constexpr std::size_t npos = static_cast<std::size_t>(-1);

private:
    std::size_t step_;
};

// A proved arithmetic statement failed on concrete input. Always an
// implementation bug; carries the offending parameters in what().
class LemmaViolation : public Error {
public:
    using Error::Error;
};

}  // namespace ssn
