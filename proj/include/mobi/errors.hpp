#pragma once

#include <stdexcept>
#include <string>

namespace mobi {

// Exit-code taxonomy for the CLI: parse 3, precondition 2, cap 4.
// Axiom failures are reported, not thrown.

struct parse_error : std::runtime_error {
    explicit parse_error(const std::string& what) : std::runtime_error(what) {}
};

struct eval_error : std::runtime_error {
    explicit eval_error(const std::string& what) : std::runtime_error(what) {}
};

struct overflow_error : eval_error {
    explicit overflow_error(const std::string& what) : eval_error(what) {}
};

// Result of an operation left the carrier.
struct closure_error : eval_error {
    explicit closure_error(const std::string& what) : eval_error(what) {}
};

struct precondition_error : std::runtime_error {
    explicit precondition_error(const std::string& what) : std::runtime_error(what) {}
};

struct no_inverse_error : precondition_error {
    explicit no_inverse_error(const std::string& what) : precondition_error(what) {}
};

struct unsolvable_error : precondition_error {
    explicit unsolvable_error(const std::string& what) : precondition_error(what) {}
};

struct cap_exceeded_error : std::runtime_error {
    explicit cap_exceeded_error(const std::string& what) : std::runtime_error(what) {}
};

} // namespace mobi
