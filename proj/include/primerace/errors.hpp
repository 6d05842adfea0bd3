#pragma once

#include <stdexcept>
#include <string>

namespace primerace {

// Input outside the supported desk-scale envelope (CLI exit code 4).
class EnvelopeError : public std::runtime_error {
public:
    explicit EnvelopeError(const std::string& what) : std::runtime_error(what) {}
};

// Malformed or inconsistent data: bad files, count mismatches, precision
// shortfalls (CLI exit code 3).
class DataError : public std::runtime_error {
public:
    explicit DataError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace primerace
