#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace dynlab {

// Every failure the library reports carries the module that raised it and a
// short machine-readable kind, so the CLI can emit a structured error object.
class Error : public std::runtime_error {
public:
    Error(std::string module, std::string kind, const std::string& message)
        : std::runtime_error(message), module_(std::move(module)), kind_(std::move(kind)) {}

    const std::string& module() const noexcept { return module_; }
    const std::string& kind() const noexcept { return kind_; }

private:
    std::string module_;
    std::string kind_;
};

// Precondition or domain violation (composite p, zero inverse, bad shape, ...).
class DomainError : public Error {
public:
    DomainError(std::string module, const std::string& message)
        : Error(std::move(module), "domain", message) {}
};

// Input document could not be parsed or does not match its schema.
class ParseError : public Error {
public:
    ParseError(std::string module, const std::string& message)
        : Error(std::move(module), "parse", message) {}
};

// Brute-force enumeration would visit more candidates than the guard allows.
class GuardExceeded : public Error {
public:
    GuardExceeded(std::string module, const std::string& message, std::uint64_t candidates, int n)
        : Error(std::move(module), "guard", message), candidates_(candidates), n_(n) {}

    std::uint64_t candidates() const noexcept { return candidates_; }
    int n() const noexcept { return n_; }

private:
    std::uint64_t candidates_;
    int n_;
};

// Berlekamp-Massey saw too few terms to certify the recurrence order.
class OrderNotConfirmed : public Error {
public:
    OrderNotConfirmed(const std::string& message, int tentative_order)
        : Error("zeta", "order_not_confirmed", message), tentative_order_(tentative_order) {}

    int tentative_order() const noexcept { return tentative_order_; }

private:
    int tentative_order_;
};

// A bilinear form that had to be nondegenerate was not.
class DegenerateForm : public Error {
public:
    DegenerateForm(std::string module, const std::string& message)
        : Error(std::move(module), "degenerate", message) {}
};

} // namespace dynlab
