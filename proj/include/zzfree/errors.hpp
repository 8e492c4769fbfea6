#pragma once

#include <stdexcept>
#include <string>

namespace zzfree {

/// Bad input file or command configuration (CLI exit code 1).
struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

/// A numerical precondition does not hold (CLI exit code 2).
struct DomainError : std::runtime_error {
    explicit DomainError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace zzfree
