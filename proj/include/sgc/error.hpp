#pragma once

#include <stdexcept>
#include <string>

namespace sgc {

/// Precondition or parameter-range violation.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// A zero deadline: the link would need unbounded bandwidth.
class InfiniteBandwidthError : public DomainError {
public:
    InfiniteBandwidthError() : DomainError("zero deadline requires infinite bandwidth") {}
};

/// No grid cell reaches the requested quality threshold.
class UnachievableThresholdError : public DomainError {
public:
    explicit UnachievableThresholdError(double epsilon)
        : DomainError("quality threshold " + std::to_string(epsilon) + " is unachievable on this surface"),
          epsilon_(epsilon) {}

    double epsilon() const noexcept { return epsilon_; }

private:
    double epsilon_;
};

/// Malformed input document; `where` names the offending field or location.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& where, const std::string& what)
        : std::runtime_error(where + ": " + what), where_(where) {}

    const std::string& where() const noexcept { return where_; }

private:
    std::string where_;
};

/// Well-formed input whose contents break an invariant.
class ValidationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace sgc
