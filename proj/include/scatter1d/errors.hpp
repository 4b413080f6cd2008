#pragma once

#include <stdexcept>
#include <string>

namespace scatter1d {

// A discretization was too coarse to resolve what was asked of it
// (phase unwrapping ambiguity, eigenvalue bracket holding two roots, ...).
class ResolutionError : public std::runtime_error {
 public:
  explicit ResolutionError(const std::string& what) : std::runtime_error(what) {}
};

// Two supposedly equivalent computations disagree beyond tolerance.
class ConsistencyError : public std::runtime_error {
 public:
  explicit ConsistencyError(const std::string& what) : std::runtime_error(what) {}
};

// File could not be read or written.
class IoError : public std::runtime_error {
 public:
  explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace scatter1d
