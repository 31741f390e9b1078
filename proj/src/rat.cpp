#include "valcone/rat.hpp"

namespace valcone {

Rat::Rat(long long num, long long den) {
  if (den == 0) throw domain_error("rational with zero denominator");
  v_ = BigRat(BigInt(num), BigInt(den));
}

Rat& Rat::operator/=(const Rat& o) {
  if (o.is_zero()) throw domain_error("division by zero");
  v_ /= o.v_;
  return *this;
}

Rat Rat::parse(const std::string& text) {
  auto bad = [&] { return domain_error("cannot parse rational: '" + text + "'"); };
  if (text.empty()) throw bad();
  std::size_t slash = text.find('/');
  try {
    if (slash == std::string::npos) return Rat(BigRat(BigInt(text)));
    BigInt num(text.substr(0, slash));
    BigInt den(text.substr(slash + 1));
    if (den <= 0) throw bad();
    return Rat(BigRat(num, den));
  } catch (const std::exception&) {
    throw bad();
  }
}

std::string Rat::str() const {
  std::string s = num().str();
  if (!is_integer()) s += "/" + den().str();
  return s;
}

XRat::XRat(Rat v) : inf_(false), v_(std::move(v)) {
  if (v_.is_negative()) throw domain_error("XRat value must be nonnegative: " + v_.str());
}

XRat XRat::parse(const std::string& text) {
  if (text == "inf") return infinity();
  return XRat(Rat::parse(text));
}

const Rat& XRat::finite() const {
  if (inf_) throw domain_error("expected a finite value, got inf");
  return v_;
}

XRat operator+(const XRat& a, const XRat& b) {
  if (a.inf_ || b.inf_) return XRat::infinity();
  return XRat(a.v_ + b.v_);
}

XRat operator*(const XRat& a, const XRat& b) {
  if (a.is_zero() || b.is_zero()) return XRat();  // 0 * inf = 0
  if (a.inf_ || b.inf_) return XRat::infinity();
  return XRat(a.v_ * b.v_);
}

bool operator==(const XRat& a, const XRat& b) {
  if (a.inf_ != b.inf_) return false;
  return a.inf_ || a.v_ == b.v_;
}

bool operator<(const XRat& a, const XRat& b) {
  if (a.inf_) return false;
  if (b.inf_) return true;
  return a.v_ < b.v_;
}

bool operator<=(const XRat& a, const XRat& b) { return a == b || a < b; }

bool way_below(const XRat& s, const XRat& t) { return s.is_zero() || s < t; }

UnitRat::UnitRat(Rat v) : v_(std::move(v)) {
  if (v_.is_negative() || v_ > Rat(1))
    throw domain_error("mixing coefficient out of [0,1]: " + v_.str());
}

const std::vector<Rat>& coefficient_grid() {
  static const std::vector<Rat> grid = {
      Rat(0), Rat(1, 4), Rat(1, 3), Rat(1, 2), Rat(2, 3), Rat(3, 4), Rat(1)};
  return grid;
}

}  // namespace valcone
