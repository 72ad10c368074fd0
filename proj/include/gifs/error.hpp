#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace gifs {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
  virtual const char* kind() const noexcept { return "error"; }
};

/// A precondition on an argument was violated.
class ArgumentError : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "argument"; }
};

/// An iteration hit its cap before the certified bound met the tolerance.
class NotConvergedError : public Error {
 public:
  NotConvergedError(const std::string& what, double last_bound)
      : Error(what), last_bound_(last_bound) {}
  double last_bound() const noexcept { return last_bound_; }
  const char* kind() const noexcept override { return "not_converged"; }

 private:
  double last_bound_;
};

/// An enumeration or depth search exceeded its configured cap.
class CapExceededError : public Error {
 public:
  CapExceededError(const std::string& what, std::size_t count, double best_bound)
      : Error(what), count_(count), best_bound_(best_bound) {}
  std::size_t count() const noexcept { return count_; }
  double best_bound() const noexcept { return best_bound_; }
  const char* kind() const noexcept override { return "cap_exceeded"; }

 private:
  std::size_t count_;
  double best_bound_;
};

/// A word leaves the tree; position is the 1-based index of the first bad symbol.
class PrefixError : public Error {
 public:
  PrefixError(const std::string& what, std::size_t position)
      : Error(what), position_(position) {}
  std::size_t position() const noexcept { return position_; }
  const char* kind() const noexcept override { return "prefix"; }

 private:
  std::size_t position_;
};

/// No certificate is available for the requested operation.
class CertificationError : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "certification"; }
};

/// A spec document failed validation; path is a JSON pointer to the offending node.
class SpecError : public Error {
 public:
  SpecError(const std::string& what, std::string path)
      : Error(path + ": " + what), path_(std::move(path)) {}
  const std::string& path() const noexcept { return path_; }
  const char* kind() const noexcept override { return "spec"; }

 private:
  std::string path_;
};

}  // namespace gifs
