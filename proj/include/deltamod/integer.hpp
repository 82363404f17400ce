#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace deltamod {

using Integer = boost::multiprecision::cpp_int;

inline Integer abs(const Integer& x) { return x < 0 ? Integer(-x) : x; }

inline std::optional<std::int64_t> to_int64(const Integer& x) {
  if (x > std::numeric_limits<std::int64_t>::max() ||
      x < std::numeric_limits<std::int64_t>::min()) {
    return std::nullopt;
  }
  return static_cast<std::int64_t>(x);
}

inline std::string to_string(const Integer& x) { return x.str(); }

/// Arithmetic policy shared by all exact operations.
///
/// With arbitrary precision on (the default) every operation is exact for any
/// input size; machine-word fast paths fall back to big integers on overflow.
/// With it off, inputs whose entries exceed `entry_bound` in absolute value are
/// rejected with MagnitudeError, and a fast-path overflow is reported the same
/// way instead of silently widening.
struct ArithmeticPolicy {
  bool arbitrary_precision = true;
  Integer entry_bound = Integer(1) << 62;
};

ArithmeticPolicy arithmetic_policy();
void set_arithmetic_policy(const ArithmeticPolicy& policy);

}  // namespace deltamod
