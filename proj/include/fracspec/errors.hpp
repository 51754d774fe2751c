#pragma once

#include <stdexcept>
#include <string>

namespace fracspec {

/// Argument outside the mathematical domain of an operation.
class domain_error : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Gamma-type evaluation at a non-positive integer.
class pole_error : public domain_error {
public:
    using domain_error::domain_error;
};

/// Result exceeds the representable double range.
class overflow_error : public std::overflow_error {
public:
    using std::overflow_error::overflow_error;
};

/// An iterative procedure hit its term or step cap.
class convergence_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Time stepping produced values beyond the stability guard.
class instability_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

namespace detail {

[[noreturn]] inline void throw_domain(const std::string& where, const std::string& what)
{
    throw domain_error(where + ": " + what);
}

}  // namespace detail
}  // namespace fracspec
