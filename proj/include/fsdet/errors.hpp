#pragma once

#include <stdexcept>
#include <string>

namespace fsdet {

/// Invalid experiment or pipeline configuration.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Malformed input file (bad syntax). Message carries file and position.
class ParseError : public std::runtime_error {
public:
    explicit ParseError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Structurally valid input whose cross-references do not resolve.
class IntegrityError : public std::runtime_error {
public:
    explicit IntegrityError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace fsdet
