#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ltlfo {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Spec-file and formula errors.

class SyntaxError : public Error {
 public:
  SyntaxError(std::size_t line, std::size_t col, const std::string& msg);
  std::size_t line() const { return line_; }
  std::size_t col() const { return col_; }

 private:
  std::size_t line_;
  std::size_t col_;
};

class SortError : public Error {
 public:
  SortError(std::string site, std::string expected, std::string found);
  const std::string& site() const { return site_; }
  const std::string& expected() const { return expected_; }
  const std::string& found() const { return found_; }

 private:
  std::string site_;
  std::string expected_;
  std::string found_;
};

class FreeVariableError : public Error {
 public:
  explicit FreeVariableError(std::string name);
  const std::string& name() const { return name_; }

 private:
  std::string name_;
};

// Evaluation errors.

class UnboundVariable : public Error {
 public:
  explicit UnboundVariable(const std::string& name)
      : Error("unbound variable '" + name + "'"), name_(name) {}
  const std::string& name() const { return name_; }

 private:
  std::string name_;
};

class BuiltinFailure : public Error {
 public:
  BuiltinFailure(const std::string& id, const std::string& args)
      : Error("builtin '" + id + "' failed on " + args) {}
};

class MissingEnv : public Error {
 public:
  explicit MissingEnv(const std::string& name)
      : Error("environment set '" + name + "' missing from event"),
        name_(name) {}
  const std::string& name() const { return name_; }

 private:
  std::string name_;
};

// Trace ingestion errors. All carry the 1-based line of the offending event.

class TraceError : public Error {
 public:
  TraceError(std::size_t line, const std::string& msg)
      : Error("line " + std::to_string(line) + ": " + msg), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

class TraceParseError : public TraceError {
 public:
  using TraceError::TraceError;
};

class UnknownPredicate : public TraceError {
 public:
  UnknownPredicate(const std::string& name, std::size_t line)
      : TraceError(line, "unknown predicate '" + name + "'"), name_(name) {}
  const std::string& name() const { return name_; }

 private:
  std::string name_;
};

class SortMismatch : public TraceError {
 public:
  using TraceError::TraceError;
};

// Automaton and monitor errors.

class CapacityError : public Error {
 public:
  CapacityError(std::size_t closure_size, std::size_t cap)
      : Error("closure has " + std::to_string(closure_size) +
              " elements, exceeding the cap of " + std::to_string(cap)) {}
};

class InternalInvariantViolation : public Error {
 public:
  using Error::Error;
};

}  // namespace ltlfo
