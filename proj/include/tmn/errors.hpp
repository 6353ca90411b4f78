#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace tmn {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// chain lifecycle
class AlreadyComplete : public Error {
 public:
  AlreadyComplete() : Error("chain is already complete") {}
};

class EmptyChain : public Error {
 public:
  EmptyChain() : Error("chain has no steps") {}
};

class NotComplete : public Error {
 public:
  NotComplete() : Error("chain is not complete") {}
};

// text metrics
class EmptyQuestion : public Error {
 public:
  EmptyQuestion() : Error("question has no essential words") {}
};

// calculator
class ParseError : public Error {
 public:
  ParseError(std::size_t position, const std::string& reason)
      : Error("parse error at " + std::to_string(position) + ": " + reason),
        position_(position),
        reason_(reason) {}

  std::size_t position() const { return position_; }
  const std::string& reason() const { return reason_; }

 private:
  std::size_t position_;
  std::string reason_;
};

class UnitMismatch : public Error {
 public:
  using Error::Error;
};

class IncomparableOperands : public Error {
 public:
  using Error::Error;
};

// hints
class NoGoldAnswer : public Error {
 public:
  NoGoldAnswer() : Error("question has no gold answer") {}
};

// model services
class ServiceUnavailable : public Error {
 public:
  using Error::Error;
};

// search
class NoChainFound : public Error {
 public:
  NoChainFound() : Error("no complete chain found within budget") {}
};

// io / config
class BadRecord : public Error {
 public:
  BadRecord(std::size_t line, const std::string& reason)
      : Error("line " + std::to_string(line) + ": " + reason), line_(line) {}

  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace tmn
