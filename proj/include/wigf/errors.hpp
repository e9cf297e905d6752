#pragma once

#include <stdexcept>
#include <string>

namespace wigf {

// Bad argument or evaluation outside the mathematical domain.
class domain_error : public std::invalid_argument {
public:
    explicit domain_error(const std::string& msg) : std::invalid_argument(msg) {}
};

// Numerical failure (NaN from an integrand, iteration limit, ...).
class numeric_error : public std::runtime_error {
public:
    explicit numeric_error(const std::string& msg) : std::runtime_error(msg) {}
};

// An integral that fails to converge within budget is reported as divergent
// rather than returned as a huge number.
class divergence_error : public numeric_error {
public:
    explicit divergence_error(const std::string& msg) : numeric_error(msg) {}
};

class io_error : public std::runtime_error {
public:
    explicit io_error(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace wigf
