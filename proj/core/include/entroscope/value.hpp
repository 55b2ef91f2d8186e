#pragma once

#include <optional>
#include <span>
#include <string>

#include "entroscope/integer.hpp"

namespace entroscope {

/// A value in R+ u {inf}: exact zero, a positive real with an absolute error
/// bound, or infinity. Closed-form values additionally remember their
/// symbolic shape (log m, or an integer count) so they can be rendered and
/// combined exactly.
class EntropyValue {
 public:
  enum class Kind { Zero, Finite, Infinity };

  static EntropyValue zero() { return EntropyValue(); }
  static EntropyValue infinity();
  // value > 0 required; err >= 0.
  static EntropyValue finite(double value, double err);
  // log m for m >= 1 (m == 1 gives Zero), tagged exact.
  static EntropyValue log_of(const Int& m);
  // n >= 0 (n == 0 gives Zero), tagged exact.
  static EntropyValue count(long n);

  Kind kind() const { return kind_; }
  bool is_zero() const { return kind_ == Kind::Zero; }
  bool is_finite() const { return kind_ == Kind::Finite; }
  bool is_infinite() const { return kind_ == Kind::Infinity; }
  double value() const { return value_; }
  double err() const { return err_; }
  bool is_exact() const { return kind_ != Kind::Finite || log_arg_ || count_; }
  const std::optional<Int>& log_arg() const { return log_arg_; }
  const std::optional<long>& count_value() const { return count_; }

  // k * value, k >= 1.
  EntropyValue scaled(unsigned k) const;

  // "0 (exact)", "log 3 (exact)", "2 (exact)", "0.4812118251", "inf".
  std::string render() const;

 private:
  Kind kind_ = Kind::Zero;
  double value_ = 0.0;
  double err_ = 0.0;
  std::optional<Int> log_arg_;
  std::optional<long> count_;
};

// Err-aware equality: exact variants must agree; finite values must lie
// within err_a + err_b + slack of each other.
bool approx_equal(const EntropyValue& a, const EntropyValue& b, double slack = 1e-12);

// a <= b up to the combined error.
bool approx_leq(const EntropyValue& a, const EntropyValue& b, double slack = 1e-12);

enum class CombineOp { Sum, Sup };

// Sum adds values and errors (x + inf = inf); Sup takes the largest value
// with the max error. The empty list combines to Zero.
EntropyValue combine(std::span<const EntropyValue> values, CombineOp op);
EntropyValue operator+(const EntropyValue& a, const EntropyValue& b);

// Least binary value above v: Zero stays Zero, everything else is Infinity.
EntropyValue binary_hull(const EntropyValue& v);

}  // namespace entroscope
