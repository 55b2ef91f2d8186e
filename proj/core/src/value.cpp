#include "entroscope/value.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <cstdio>

#include "entroscope/errors.hpp"

namespace entroscope {

namespace {

double log_int(const Int& m) {
  long exp = 0;
  double mant = mpz_get_d_2exp(&exp, m.get_mpz_t());
  return std::log(mant) + static_cast<double>(exp) * std::log(2.0);
}

double exact_err(double v) { return 4 * DBL_EPSILON * std::max(1.0, std::fabs(v)); }

}  // namespace

EntropyValue EntropyValue::infinity() {
  EntropyValue v;
  v.kind_ = Kind::Infinity;
  v.value_ = HUGE_VAL;
  return v;
}

EntropyValue EntropyValue::finite(double value, double err) {
  if (!(value > 0)) throw DomainError("finite entropy values must be positive");
  if (!(err >= 0)) throw DomainError("error bound must be nonnegative");
  EntropyValue v;
  v.kind_ = Kind::Finite;
  v.value_ = value;
  v.err_ = err;
  return v;
}

EntropyValue EntropyValue::log_of(const Int& m) {
  if (m < 1) throw DomainError("log_of requires m >= 1");
  if (m == 1) return zero();
  double val = log_int(m);
  EntropyValue v = finite(val, exact_err(val));
  v.log_arg_ = m;
  return v;
}

EntropyValue EntropyValue::count(long n) {
  if (n < 0) throw DomainError("count must be nonnegative");
  if (n == 0) return zero();
  EntropyValue v = finite(static_cast<double>(n), 0.0);
  v.count_ = n;
  return v;
}

EntropyValue EntropyValue::scaled(unsigned k) const {
  if (k == 0) throw DomainError("scale factor must be positive");
  switch (kind_) {
    case Kind::Zero: return zero();
    case Kind::Infinity: return infinity();
    case Kind::Finite: break;
  }
  if (log_arg_) {
    Int m;
    mpz_pow_ui(m.get_mpz_t(), log_arg_->get_mpz_t(), k);
    return log_of(m);
  }
  if (count_) return count(*count_ * static_cast<long>(k));
  return finite(value_ * k, err_ * k + exact_err(value_ * k));
}

std::string EntropyValue::render() const {
  switch (kind_) {
    case Kind::Zero: return "0 (exact)";
    case Kind::Infinity: return "inf";
    case Kind::Finite: break;
  }
  if (log_arg_) return "log " + log_arg_->get_str() + " (exact)";
  if (count_) return std::to_string(*count_) + " (exact)";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", value_);
  return buf;
}

bool approx_equal(const EntropyValue& a, const EntropyValue& b, double slack) {
  if (a.is_infinite() || b.is_infinite()) return a.is_infinite() && b.is_infinite();
  double tol = a.err() + b.err() + slack;
  return std::fabs(a.value() - b.value()) <= tol;
}

bool approx_leq(const EntropyValue& a, const EntropyValue& b, double slack) {
  if (b.is_infinite()) return true;
  if (a.is_infinite()) return false;
  return a.value() <= b.value() + a.err() + b.err() + slack;
}

EntropyValue operator+(const EntropyValue& a, const EntropyValue& b) {
  if (a.is_infinite() || b.is_infinite()) return EntropyValue::infinity();
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  if (a.log_arg() && b.log_arg()) return EntropyValue::log_of(*a.log_arg() * *b.log_arg());
  if (a.count_value() && b.count_value()) return EntropyValue::count(*a.count_value() + *b.count_value());
  double v = a.value() + b.value();
  return EntropyValue::finite(v, a.err() + b.err() + exact_err(v));
}

EntropyValue combine(std::span<const EntropyValue> values, CombineOp op) {
  EntropyValue acc = EntropyValue::zero();
  if (op == CombineOp::Sum) {
    for (const auto& v : values) acc = acc + v;
    return acc;
  }
  double max_err = 0.0;
  for (const auto& v : values) {
    if (v.is_infinite()) return EntropyValue::infinity();
    max_err = std::max(max_err, v.err());
    if (v.is_finite() && (acc.is_zero() || v.value() > acc.value())) acc = v;
  }
  if (acc.is_zero() || acc.is_exact()) return acc;
  return EntropyValue::finite(acc.value(), max_err);
}

EntropyValue binary_hull(const EntropyValue& v) {
  return v.is_zero() ? EntropyValue::zero() : EntropyValue::infinity();
}

}  // namespace entroscope
