#pragma once

#include <complex>
#include <optional>
#include <span>
#include <vector>

#include "cubelab/bigint.hpp"
#include "cubelab/errors.hpp"

namespace cubelab {

// Element of Z[zeta_n] in the power basis 1, z, ..., z^{phi(n)-1}, reduced
// canonically modulo the n-th cyclotomic polynomial.  Coefficients are
// 128-bit with overflow checks; every operation stays exact.
class CyclotomicElement {
  public:
    explicit CyclotomicElement(int n);                    // zero
    CyclotomicElement(int n, const Int& value);           // rational integer
    static CyclotomicElement zeta_power(int n, int64_t e);
    // Reduce sum_k h[k] * z^k with 0 <= k < n.
    static CyclotomicElement from_exponent_histogram(int n, std::span<const i128> h);

    int conductor() const { return n_; }
    int degree() const { return int(coeffs_.size()); }
    const std::vector<i128>& coeffs() const { return coeffs_; }

    CyclotomicElement& operator+=(const CyclotomicElement& o);
    CyclotomicElement& operator-=(const CyclotomicElement& o);
    CyclotomicElement operator+(const CyclotomicElement& o) const;
    CyclotomicElement operator-(const CyclotomicElement& o) const;
    CyclotomicElement operator*(const CyclotomicElement& o) const;
    CyclotomicElement operator-() const;
    bool operator==(const CyclotomicElement& o) const = default;

    // Galois action z -> z^t for t coprime to n; conjugate() is t = n-1.
    CyclotomicElement galois(int64_t t) const;
    CyclotomicElement conjugate() const;

    bool is_zero() const;
    // The integer value iff all non-constant coefficients vanish.
    std::optional<Int> as_rational_integer() const;

    std::complex<long double> eval_complex() const;

  private:
    int n_;
    std::vector<i128> coeffs_;
};

inline std::optional<Int> cyclotomic_is_rational(const CyclotomicElement& x) {
    return x.as_rational_integer();
}

// phi(n)-degree cyclotomic polynomial coefficients (int64; exact for the
// conductors used here), lowest degree first.
const std::vector<int64_t>& cyclotomic_polynomial(int n);

}  // namespace cubelab
