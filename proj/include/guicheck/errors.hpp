#pragma once

#include <stdexcept>
#include <string>

namespace guicheck {

// Raised for malformed inputs and violated preconditions; the message names
// the violated constraint (e.g. "undeclared variable y").
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace guicheck
