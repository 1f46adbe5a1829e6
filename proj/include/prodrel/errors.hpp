#pragma once

#include <stdexcept>
#include <string>

namespace prodrel {

// Malformed input: bad file, dimension mismatch, unknown name.
class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A desk-scale guard was exceeded.
class CapacityError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// An argument violates a documented precondition.
class PreconditionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A claimed certificate (section, witness) does not check out.
class CertificateError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Parameters outside the range where the construction is defined.
class ValidityError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace prodrel
