#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <stdexcept>
#include <string>

namespace swaploc {

using NodeId = std::int32_t;

inline constexpr NodeId kNoNode = -1;
inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

// Relative tolerance used for every objective comparison in the library.
inline constexpr double kRelTol = 1e-9;

/// Base class for all errors raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid input: bad ids, violated preconditions, malformed files.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// The graph has a node that cannot be reached from another.
class DisconnectedGraph : public Error {
 public:
  DisconnectedGraph(NodeId from, NodeId to)
      : Error("graph is disconnected: node " + std::to_string(to) +
              " is unreachable from node " + std::to_string(from)),
        from_(from),
        to_(to) {}

  NodeId from() const { return from_; }
  NodeId to() const { return to_; }

 private:
  NodeId from_;
  NodeId to_;
};

/// Exhaustive search refused because the candidate count exceeds the cap.
class OracleCapExceeded : public Error {
 public:
  using Error::Error;
};

/// Wire-protocol failure: unreachable peer, malformed or illegal message.
class ProtocolError : public Error {
 public:
  using Error::Error;
};

/// True when `a` and `b` agree to kRelTol relative to `scale` (or exactly when
/// the scale is zero).
inline bool nearly_equal(double a, double b, double scale) {
  return std::abs(a - b) <= kRelTol * std::max(std::abs(scale), 1e-300);
}

/// Improvement threshold on an objective of magnitude `objective`.
inline double improvement_epsilon(double objective) {
  return kRelTol * std::max(std::abs(objective), 1.0);
}

using Rng = std::mt19937_64;

/// splitmix64 finalizer; derives independent child seeds from a base seed.
inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream) {
  std::uint64_t z = base + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Uniform real in [0, 1) built from the raw engine output, so sampled values
/// do not depend on the standard library's distribution implementation.
inline double uniform01(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

/// Uniform integer in [0, bound) by rejection; bound must be positive.
inline std::uint64_t uniform_index(Rng& rng, std::uint64_t bound) {
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t r;
  do {
    r = rng();
  } while (r >= limit);
  return r % bound;
}

}  // namespace swaploc
