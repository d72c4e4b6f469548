#pragma once

#include <stdexcept>
#include <string>

namespace simscore {

/// Process exit codes shared by the CLI and the error hierarchy.
enum class ExitCode : int {
  kOk = 0,
  kValidation = 2,
  kUndefinedMetric = 3,
  kIo = 4,
};

class Error : public std::runtime_error {
 public:
  Error(const std::string& what, ExitCode code) : std::runtime_error(what), code_(code) {}
  ExitCode code() const noexcept { return code_; }
  virtual const char* kind() const noexcept { return "error"; }

 private:
  ExitCode code_;
};

class ValidationError : public Error {
 public:
  explicit ValidationError(const std::string& what) : Error(what, ExitCode::kValidation) {}
  const char* kind() const noexcept override { return "validation"; }
};

class ArgumentError : public Error {
 public:
  explicit ArgumentError(const std::string& what) : Error(what, ExitCode::kValidation) {}
  const char* kind() const noexcept override { return "argument"; }
};

// Missing files, unreadable paths, failed writes.
class IoError : public Error {
 public:
  explicit IoError(const std::string& what) : Error(what, ExitCode::kIo) {}
  const char* kind() const noexcept override { return "io"; }
};

class LoadError : public Error {
 public:
  LoadError(const std::string& what, std::string id) : Error(what, ExitCode::kIo), id_(std::move(id)) {}
  const std::string& id() const noexcept { return id_; }
  const char* kind() const noexcept override { return "load"; }

 private:
  std::string id_;
};

class UndefinedMetricError : public Error {
 public:
  explicit UndefinedMetricError(const std::string& what) : Error(what, ExitCode::kUndefinedMetric) {}
  const char* kind() const noexcept override { return "undefined_metric"; }
};

class InstabilityError : public Error {
 public:
  explicit InstabilityError(const std::string& what) : Error(what, ExitCode::kUndefinedMetric) {}
  const char* kind() const noexcept override { return "instability"; }
};

class JoinError : public Error {
 public:
  explicit JoinError(const std::string& what) : Error(what, ExitCode::kValidation) {}
  const char* kind() const noexcept override { return "join"; }
};

class ParseFailure : public Error {
 public:
  ParseFailure(const std::string& what, std::string fragment_id)
      : Error(what, ExitCode::kValidation), fragment_id_(std::move(fragment_id)) {}
  const std::string& fragment_id() const noexcept { return fragment_id_; }
  const char* kind() const noexcept override { return "parse_failure"; }

 private:
  std::string fragment_id_;
};

class CapacityError : public Error {
 public:
  CapacityError(const std::string& what, std::size_t nodes) : Error(what, ExitCode::kValidation), nodes_(nodes) {}
  std::size_t nodes() const noexcept { return nodes_; }
  const char* kind() const noexcept override { return "capacity"; }

 private:
  std::size_t nodes_;
};

}  // namespace simscore
