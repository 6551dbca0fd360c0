#pragma once

#include <stdexcept>
#include <string>

namespace cubelab {

// Exit-code categories used by the CLI: domain errors exit 2, resource
// limits exit 3, numerical failures exit 4.
struct DomainError : std::runtime_error {
    explicit DomainError(const std::string& msg) : std::runtime_error(msg) {}
};

struct ResourceLimit : std::runtime_error {
    explicit ResourceLimit(const std::string& msg) : std::runtime_error(msg) {}
};

struct NumericalFailure : std::runtime_error {
    explicit NumericalFailure(const std::string& msg) : std::runtime_error(msg) {}
};

struct SingularSection : DomainError {
    explicit SingularSection(const std::string& msg) : DomainError(msg) {}
};

struct SectionDegenerates : DomainError {
    explicit SectionDegenerates(const std::string& msg) : DomainError(msg) {}
};

struct BadPrime : DomainError {
    explicit BadPrime(const std::string& msg) : DomainError(msg) {}
};

struct DataUnavailable : DomainError {
    explicit DataUnavailable(const std::string& msg) : DomainError(msg) {}
};

struct DataInconsistent : std::runtime_error {
    explicit DataInconsistent(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace cubelab
