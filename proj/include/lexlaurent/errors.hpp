#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace lexlaurent {

// Base class for every error thrown by this library.
class error : public std::runtime_error {
public:
    explicit error(const std::string& msg) : std::runtime_error(msg) {}
};

// Operands live in lattices of different rank.
class rank_error : public error {
public:
    explicit rank_error(const std::string& msg) : error(msg) {}
};

// A bad argument: invariant violation, unusable input, out-of-domain request.
class argument_error : public error {
public:
    explicit argument_error(const std::string& msg) : error(msg) {}
};

// The stored truncation window cannot answer the question that was asked.
class insufficient_precision : public error {
public:
    explicit insufficient_precision(const std::string& msg) : error(msg) {}
};

// Newton lifting was started at a root that is not simple.
class non_simple_root : public error {
public:
    explicit non_simple_root(const std::string& msg) : error(msg) {}
};

// Division of rational functions by zero.
class zero_denominator : public error {
public:
    explicit zero_denominator(const std::string& msg) : error(msg) {}
};

// Expression text that does not parse; carries the byte offset of the fault.
class parse_error : public error {
public:
    parse_error(const std::string& msg, std::size_t offset)
        : error(msg + " (at byte " + std::to_string(offset) + ")"), offset_(offset) {}

    std::size_t offset() const { return offset_; }

private:
    std::size_t offset_;
};

} // namespace lexlaurent
