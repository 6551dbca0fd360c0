#pragma once

#include <cstdint>
#include <memory>
#include <mutex>
#include <unordered_map>
#include <vector>

#include "cubelab/cyclotomic.hpp"
#include "cubelab/forms.hpp"
#include "cubelab/halfexp.hpp"

namespace cubelab {

// S_c(n) together with its normalization S~_c(n) = n^{-(m+1)/2} S_c(n).
struct ExpSumValue {
    int64_t n = 1;
    Int value = 1;
    HalfExp normalized{Rational(1)};
};

// rho / E / E~ data of the hypersurface {F=0} or a section {F=0, c.x=0}
// over F_q.  E = rho - (q^{m-1}-1)/(q-1), E_c = rho_c - (q^{m-2}-1)/(q-1).
struct CountErrors {
    int64_t q = 0;
    Int rho = 0;
    Int rho_c = 0;
    Int E = 0;
    Int E_c = 0;
    HalfExp E_tilde;
    HalfExp E_c_tilde;
};

// g(a, c; n) = sum_{x mod n} zeta_n^{a x^3 + c x}, lazily filled per modulus;
// concurrent initialization is guarded and idempotent.  Tables for small n
// can round-trip through the disk cache.
class GTable {
  public:
    explicit GTable(int64_t n);

    int64_t modulus() const { return n_; }
    const CyclotomicElement& get(int64_t a, int64_t c);
    // exponent histogram of a x^3 + c x (length n), for fast products
    std::vector<int64_t> histogram(int64_t a, int64_t c) const;

    // versioned binary snapshot of all n^2 entries (small n only)
    std::vector<uint8_t> serialize();
    static std::unique_ptr<GTable> deserialize(const std::vector<uint8_t>& bytes);

  private:
    int64_t n_;
    std::mutex mu_;
    std::unordered_map<uint64_t, std::unique_ptr<CyclotomicElement>> entries_;
};

GTable& gtable(int64_t n);

struct ExpSumOptions {
    int64_t prime_power_bound = 2048;
    bool parallel = true;
};

// Exact S_c(p^l) via the diagonal product decomposition
// sum_{a in units} prod_i g(a F_i, c_i; q), certified to reduce to a
// rational integer.
ExpSumValue expsum_prime_power(const DiagonalCubicForm& F, const CVector& c, int64_t p,
                               int l, const ExpSumOptions& opts = {});

// Multiplicative assembly over the prime-power factors of n.
ExpSumValue expsum(const DiagonalCubicForm& F, const CVector& c, int64_t n,
                   const ExpSumOptions& opts = {});

// Fast exact path: S_c(p) from the Hooley point-count relation
// (S_c(p) = p^2 E_c(p) - p E(p) for p not dividing c, S_0(p) otherwise),
// and S_c(p^l) = 0 at good primes for l >= 2.  Falls back to
// expsum_prime_power at bad primes.  delta_def is disc_delta(F, c,
// kDefinition); callers batch it per c.
Int expsum_prime_power_via_counts(const DiagonalCubicForm& F, const CVector& c,
                                  int64_t p, int l, const Int& delta_def,
                                  const ExpSumOptions& opts = {});

// Exact projective counts (all arithmetic in integer histograms).
CountErrors count_hypersurface(const DiagonalCubicForm& F, int64_t p, int r);
CountErrors count_section(const DiagonalCubicForm& F, const CVector& c, int64_t p,
                          int r);

// Affine count over F_q^{m} of {F = 0, c.x = 0}; pivot index selectable for
// the pivot-independence property.
Int section_affine_count(const DiagonalCubicForm& F, const CVector& c, int64_t p,
                         int r, int pivot = -1);

}  // namespace cubelab
