#ifndef CJS_ERRORS_HPP
#define CJS_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace cjs {

// Malformed or inconsistent input (CLI exit code 2).
class input_error : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Input is valid but outside what the algorithms support (CLI exit code 3).
class scope_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Operation called outside its mathematical domain.
class domain_error : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

class unsupported_operation : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

// Strict transform vanished or a chart became meaningless.
class degenerate_input : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace cjs

#endif
