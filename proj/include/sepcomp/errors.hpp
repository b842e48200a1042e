#pragma once

#include <stdexcept>
#include <string>

namespace sepcomp {

/// Violated precondition or malformed input. The CLI maps this to exit code 1.
class ContractError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class ParseError : public ContractError {
public:
    using ContractError::ContractError;
};

/// Argument outside the domain where a bound formula is defined.
class DomainError : public ContractError {
public:
    using ContractError::ContractError;
};

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace sepcomp
