#pragma once

#include <string>
#include <vector>

#include "cubelab/bigint.hpp"

namespace cubelab {

// Univariate integer polynomial, coefficients lowest degree first.
class IntPolynomial {
  public:
    IntPolynomial() = default;
    explicit IntPolynomial(std::vector<Int> coeffs) : c_(std::move(coeffs)) { trim(); }
    static IntPolynomial constant(const Int& v) { return IntPolynomial({v}); }
    static IntPolynomial x() { return IntPolynomial({Int(0), Int(1)}); }

    int degree() const { return int(c_.size()) - 1; }  // -1 for zero
    bool is_zero() const { return c_.empty(); }
    const std::vector<Int>& coeffs() const { return c_; }
    Int coeff(int k) const { return k >= 0 && k < int(c_.size()) ? c_[k] : Int(0); }
    Int leading() const { return c_.empty() ? Int(0) : c_.back(); }

    IntPolynomial operator+(const IntPolynomial& o) const;
    IntPolynomial operator-(const IntPolynomial& o) const;
    IntPolynomial operator*(const IntPolynomial& o) const;
    IntPolynomial operator-() const;
    bool operator==(const IntPolynomial& o) const = default;

    IntPolynomial derivative() const;
    Int eval(const Int& x) const;
    Rational eval(const Rational& x) const;

    Int content() const;                // gcd of coefficients (0 for zero poly)
    IntPolynomial primitive_part() const;
    IntPolynomial reversed() const;     // t^deg * P(1/t)

    // Exact division; throws if the division is not exact.
    IntPolynomial divide_exact(const IntPolynomial& d) const;
    bool divisible_by(const IntPolynomial& d) const;

    std::string to_string(const std::string& var = "t") const;

  private:
    void trim() {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }
    std::vector<Int> c_;
};

IntPolynomial poly_gcd_z(const IntPolynomial& a, const IntPolynomial& b);

// Factorization over Z: content (with sign) and irreducible primitive factors
// with positive leading coefficient, sorted, with multiplicities.
struct ZFactorization {
    Int content;
    std::vector<std::pair<IntPolynomial, int>> factors;
    IntPolynomial reconstruct() const;
};

ZFactorization factor_over_z(const IntPolynomial& f);

}  // namespace cubelab
