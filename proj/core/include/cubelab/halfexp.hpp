#pragma once

#include <cstdint>
#include <map>
#include <string>

#include "cubelab/bigint.hpp"
#include "cubelab/errors.hpp"

namespace cubelab {

// Exact value r * sqrt(u) with r rational and u squarefree positive.
// Closed under multiplication; addition requires matching radicals (which is
// an invariant of all half-exponent quantities indexed by a fixed n).
class HalfExp {
  public:
    HalfExp() : r_(0), u_(1) {}
    explicit HalfExp(const Rational& r) : r_(r), u_(1) {}
    explicit HalfExp(const Int& v) : r_(v), u_(1) {}

    // r * sqrt(u_raw) with u_raw any positive integer (square part absorbed)
    static HalfExp of_sqrt(const Rational& r, int64_t u_raw);
    // value / n^{half_power/2}, exact
    static HalfExp scaled_power(const Int& value, int64_t n, int half_power);

    const Rational& rational_part() const { return r_; }
    int64_t radical() const { return u_; }
    bool is_zero() const { return r_ == 0; }
    bool is_rational() const { return u_ == 1; }

    HalfExp operator+(const HalfExp& o) const;
    HalfExp operator-(const HalfExp& o) const;
    HalfExp operator*(const HalfExp& o) const;
    HalfExp operator-() const;
    HalfExp abs() const;
    Rational square() const { return r_ * r_ * u_; }
    bool operator==(const HalfExp& o) const = default;

    double to_double() const;
    std::string to_string() const;

  private:
    Rational r_;
    int64_t u_;
};

// Finite sum of r_u * sqrt(u) terms: the exact closure needed when values
// with different radicals are accumulated (e.g. interval sums of b_c(n)).
class SqrtCombo {
  public:
    SqrtCombo() = default;
    explicit SqrtCombo(const HalfExp& h) { *this += h; }

    SqrtCombo& operator+=(const HalfExp& h);
    SqrtCombo& operator+=(const SqrtCombo& o);
    SqrtCombo operator*(const SqrtCombo& o) const;
    bool is_zero() const { return terms_.empty(); }
    const std::map<int64_t, Rational>& terms() const { return terms_; }

    double to_double() const;

  private:
    std::map<int64_t, Rational> terms_;
};

}  // namespace cubelab
