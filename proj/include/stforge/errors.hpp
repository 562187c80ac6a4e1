#pragma once

#include <stdexcept>
#include <string>

namespace stforge {

// Error classes map to distinct CLI exit codes (see cli.hpp).
class validation_error : public std::invalid_argument {
public:
    explicit validation_error(const std::string& what) : std::invalid_argument(what) {}
};

class overflow_error : public std::overflow_error {
public:
    explicit overflow_error(const std::string& what) : std::overflow_error(what) {}
};

class io_error : public std::runtime_error {
public:
    explicit io_error(const std::string& what) : std::runtime_error(what) {}
};

} // namespace stforge
