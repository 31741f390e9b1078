#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <stdexcept>
#include <string>
#include <vector>

namespace valcone {

/// Error thrown on domain precondition failures (bad inputs, invalid
/// instances, violated operation preconditions).  CLI maps it to exit 1.
class domain_error : public std::runtime_error {
 public:
  explicit domain_error(const std::string& what) : std::runtime_error(what) {}
};

using BigInt = boost::multiprecision::cpp_int;
using BigRat = boost::multiprecision::cpp_rational;

/// Exact rational number, always kept in reduced form.
///
/// The value space of the library is the nonnegative rationals (plus
/// infinity, see XRat), but Rat itself is signed: the LP kernel and the
/// B^- algebra need negative coefficients.
class Rat {
 public:
  Rat() : v_(0) {}
  Rat(long long n) : v_(n) {}  // NOLINT: implicit by design
  Rat(long long num, long long den);
  explicit Rat(BigRat v) : v_(std::move(v)) {}

  static Rat parse(const std::string& text);

  BigInt num() const { return boost::multiprecision::numerator(v_); }
  BigInt den() const { return boost::multiprecision::denominator(v_); }

  bool is_zero() const { return v_.is_zero(); }
  bool is_negative() const { return v_ < 0; }
  bool is_integer() const { return den() == 1; }

  std::string str() const;

  Rat operator-() const { return Rat(BigRat(-v_)); }
  Rat& operator+=(const Rat& o) { v_ += o.v_; return *this; }
  Rat& operator-=(const Rat& o) { v_ -= o.v_; return *this; }
  Rat& operator*=(const Rat& o) { v_ *= o.v_; return *this; }
  Rat& operator/=(const Rat& o);

  friend Rat operator+(Rat a, const Rat& b) { return a += b; }
  friend Rat operator-(Rat a, const Rat& b) { return a -= b; }
  friend Rat operator*(Rat a, const Rat& b) { return a *= b; }
  friend Rat operator/(Rat a, const Rat& b) { return a /= b; }

  friend bool operator==(const Rat& a, const Rat& b) { return a.v_ == b.v_; }
  friend bool operator!=(const Rat& a, const Rat& b) { return a.v_ != b.v_; }
  friend bool operator<(const Rat& a, const Rat& b) { return a.v_ < b.v_; }
  friend bool operator<=(const Rat& a, const Rat& b) { return a.v_ <= b.v_; }
  friend bool operator>(const Rat& a, const Rat& b) { return a.v_ > b.v_; }
  friend bool operator>=(const Rat& a, const Rat& b) { return a.v_ >= b.v_; }

  double approx() const { return static_cast<double>(v_); }

 private:
  BigRat v_;
};

/// Element of the extended half-line: a nonnegative rational or infinity.
/// Multiplication uses the strictness convention 0 * inf = 0.
class XRat {
 public:
  XRat() : inf_(false), v_(0) {}
  XRat(Rat v);  // NOLINT: implicit by design; rejects negative values
  static XRat infinity() { XRat x; x.inf_ = true; return x; }
  static XRat parse(const std::string& text);

  bool is_infinite() const { return inf_; }
  bool is_zero() const { return !inf_ && v_.is_zero(); }
  /// Finite value; throws on infinity.
  const Rat& finite() const;

  std::string str() const { return inf_ ? "inf" : v_.str(); }

  friend XRat operator+(const XRat& a, const XRat& b);
  friend XRat operator*(const XRat& a, const XRat& b);
  friend bool operator==(const XRat& a, const XRat& b);
  friend bool operator!=(const XRat& a, const XRat& b) { return !(a == b); }
  friend bool operator<(const XRat& a, const XRat& b);
  friend bool operator<=(const XRat& a, const XRat& b);
  friend bool operator>(const XRat& a, const XRat& b) { return b < a; }
  friend bool operator>=(const XRat& a, const XRat& b) { return b <= a; }

 private:
  bool inf_;
  Rat v_;
};

/// s is way below t in the extended half-line iff s = 0 or s < t.
bool way_below(const XRat& s, const XRat& t);

/// Mixing coefficient, a rational in [0, 1].
class UnitRat {
 public:
  explicit UnitRat(Rat v);
  UnitRat(long long num, long long den) : UnitRat(Rat(num, den)) {}

  const Rat& value() const { return v_; }
  Rat complement() const { return Rat(1) - v_; }
  bool is_zero() const { return v_.is_zero(); }
  bool is_one() const { return v_ == Rat(1); }

 private:
  Rat v_;
};

/// The coefficient grid used by the law checkers and schedules:
/// {0, 1/4, 1/3, 1/2, 2/3, 3/4, 1}.
const std::vector<Rat>& coefficient_grid();

}  // namespace valcone
