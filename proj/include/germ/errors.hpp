#ifndef GERM_ERRORS_HPP
#define GERM_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace germ {

// Base of every error thrown by the library.
class germ_error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// Violated operation precondition (e.g. compose with g(0) != 0).
class precondition_error : public germ_error {
  public:
    using germ_error::germ_error;
};

class variable_mismatch : public precondition_error {
  public:
    variable_mismatch() : precondition_error("series variable tags differ") {}
};

// Exact arithmetic cannot represent a required value (irrational root, root of
// unity outside Q(i), ...). Callers fall back to floating point.
class not_representable : public germ_error {
  public:
    using germ_error::germ_error;
};

// Floating point decision could not be made reliably at the configured tolerance.
class precision_error : public germ_error {
  public:
    using germ_error::germ_error;
};

// Malformed external input (JSON, rational literal, ...).
class parse_error : public germ_error {
  public:
    using germ_error::germ_error;
};

} // namespace germ

#endif
