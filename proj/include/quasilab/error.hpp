#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace quasilab {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Line and column are 1-based; column 0 means "whole line".
class ParseError : public Error {
 public:
  ParseError(const std::string& msg, int line, int column);
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

class BudgetExceeded : public Error {
 public:
  BudgetExceeded(std::string cap, std::uint64_t limit);
  const std::string& cap() const { return cap_; }
  std::uint64_t limit() const { return limit_; }

 private:
  std::string cap_;
  std::uint64_t limit_;
};

class PreconditionError : public Error {
 public:
  using Error::Error;
};

}  // namespace quasilab
