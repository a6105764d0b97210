#pragma once

#include <charconv>
#include <cstdint>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace tymod {

using Int = long long;

// Bad user input (groups, matrices, preconditions). CLI exit code 1.
struct validation_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A broken internal invariant (sigma^2 != id and friends). CLI exit code 2.
struct internal_error : std::logic_error {
  using std::logic_error::logic_error;
};

/// The scalar e^{2 pi i q}, stored as the reduced fraction q = num/den with
/// 0 <= q < 1. All arithmetic is mod 1; this is the only scalar type of the
/// engine (every value of chi, psi, xi, nu here is a root of unity).
class Phase {
public:
  constexpr Phase() = default;

  Phase(Int num, Int den) {
    if (den == 0) throw validation_error("phase with zero denominator");
    if (den < 0) {
      num = -num;
      den = -den;
    }
    num %= den;
    if (num < 0) num += den;
    const Int g = std::gcd(num, den);
    num_ = num / g;
    den_ = den / g;
  }

  Int num() const { return num_; }
  Int den() const { return den_; }
  bool is_zero() const { return num_ == 0; }

  friend Phase operator+(const Phase& a, const Phase& b) {
    const Int g = std::gcd(a.den_, b.den_);
    const Int bd = b.den_ / g;
    return Phase(a.num_ * bd + b.num_ * (a.den_ / g), a.den_ * bd);
  }
  friend Phase operator-(const Phase& a, const Phase& b) { return a + (-b); }
  Phase operator-() const { return Phase(den_ - num_, den_); }
  Phase& operator+=(const Phase& o) { return *this = *this + o; }
  Phase& operator-=(const Phase& o) { return *this = *this - o; }

  /// n * q mod 1.
  Phase times(Int n) const {
    n %= den_;
    if (n < 0) n += den_;
    return Phase(n * num_, den_);
  }

  /// One of the two solutions p of p + p = *this.
  Phase half() const { return Phase(num_, 2 * den_); }

  bool operator==(const Phase&) const = default;
  // Order by rational value; used for lexicographically-least canonical picks.
  bool operator<(const Phase& o) const { return num_ * o.den_ < o.num_ * den_; }

  double value() const { return static_cast<double>(num_) / static_cast<double>(den_); }

  std::string str() const {
    if (num_ == 0) return "0";
    return std::to_string(num_) + "/" + std::to_string(den_);
  }

  static std::optional<Phase> parse(std::string_view s) {
    bool neg = false;
    if (!s.empty() && (s.front() == '+' || s.front() == '-')) {
      neg = s.front() == '-';
      s.remove_prefix(1);
    }
    if (s.empty()) return std::nullopt;
    Int num = 0, den = 1;
    const char* end = s.data() + s.size();
    auto r = std::from_chars(s.data(), end, num);
    if (r.ec != std::errc()) return std::nullopt;
    if (r.ptr != end) {
      if (*r.ptr != '/') return std::nullopt;
      auto r2 = std::from_chars(r.ptr + 1, end, den);
      if (r2.ec != std::errc() || r2.ptr != end || den <= 0) return std::nullopt;
    }
    return Phase(neg ? -num : num, den);
  }

private:
  Int num_ = 0;
  Int den_ = 1;
};

}  // namespace tymod
