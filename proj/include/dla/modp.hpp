#pragma once

#include <cmath>
#include <cstdint>
#include <string>

#include "dla/errors.hpp"
#include "dla/pauli.hpp"

namespace dla {

/*
 * Prime field Z/(2^61 - 1). Closures with fractional edge weights explode in
 * exact rational arithmetic, so they run over a fixed large prime instead.
 * Every finite double is the dyadic rational m * 2^e and maps exactly to
 * m * 2^e mod p, hence a modular dimension is the rank of an integer matrix
 * reduced mod p: it never exceeds the rational dimension, and reaching a
 * proven upper bound (the multi-angle dimension) certifies equality.
 */
struct Fp {
  static constexpr std::uint64_t kP = (1ull << 61) - 1;

  std::uint64_t v = 0;

  Fp() = default;
  explicit Fp(std::uint64_t x) : v(x % kP) {}

  static Fp from_int(long long x) {
    long long r = x % static_cast<long long>(kP);
    if (r < 0) r += static_cast<long long>(kP);
    return Fp(static_cast<std::uint64_t>(r));
  }

  friend Fp operator+(Fp a, Fp b) {
    std::uint64_t s = a.v + b.v;
    if (s >= kP) s -= kP;
    Fp r;
    r.v = s;
    return r;
  }
  friend Fp operator-(Fp a, Fp b) {
    std::uint64_t s = a.v + kP - b.v;
    if (s >= kP) s -= kP;
    Fp r;
    r.v = s;
    return r;
  }
  // 2^61 = 1 (mod p), so the high 67 bits of a 128-bit product fold back in
  // with a single shift and add.
  friend Fp operator*(Fp a, Fp b) {
    unsigned __int128 p = static_cast<unsigned __int128>(a.v) * b.v;
    std::uint64_t s = static_cast<std::uint64_t>(p & kP) + static_cast<std::uint64_t>(p >> 61);
    if (s >= kP) s -= kP;
    Fp r;
    r.v = s;
    return r;
  }
  Fp pow(std::uint64_t e) const {
    Fp base = *this, acc;
    acc.v = 1;
    while (e) {
      if (e & 1) acc = acc * base;
      base = base * base;
      e >>= 1;
    }
    return acc;
  }
  Fp inv() const {
    if (v == 0) throw std::domain_error("division by zero mod p");
    return pow(kP - 2);
  }
  friend Fp operator/(Fp a, Fp b) { return a * b.inv(); }
  Fp operator-() const {
    Fp r;
    r.v = v ? kP - v : 0;
    return r;
  }
  Fp& operator+=(Fp o) { return *this = *this + o; }
  Fp& operator-=(Fp o) { return *this = *this - o; }
  Fp& operator*=(Fp o) { return *this = *this * o; }
  Fp& operator/=(Fp o) { return *this = *this / o; }
  friend bool operator==(Fp a, Fp b) { return a.v == b.v; }
  friend bool operator!=(Fp a, Fp b) { return a.v != b.v; }
};

template <>
struct ScalarTraits<Fp> {
  static bool negligible(const Fp& x) { return x.v == 0; }
  static Fp from_double(double d) {
    if (!std::isfinite(d)) throw PreconditionError("coefficient is not finite");
    int exp;
    double m = std::frexp(d, &exp);
    // m * 2^53 is an exactly representable integer for every finite double.
    auto mant = static_cast<long long>(std::ldexp(m, 53));
    Fp r = Fp::from_int(mant);
    Fp two(2);
    int shift = exp - 53;
    if (shift >= 0) return r * two.pow(static_cast<std::uint64_t>(shift));
    return r * two.pow(static_cast<std::uint64_t>(-shift)).inv();
  }
  static double to_double(const Fp& x) { return static_cast<double>(x.v); }
  static Fp one() {
    Fp r;
    r.v = 1;
    return r;
  }
  static std::string str(const Fp& x) { return std::to_string(x.v); }
};

}  // namespace dla
