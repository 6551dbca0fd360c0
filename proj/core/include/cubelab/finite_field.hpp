#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "cubelab/errors.hpp"

namespace cubelab {

// F_{p^r} with elements encoded as integers in [0, q): the element with
// polynomial coordinates (d_0, ..., d_{r-1}) is sum d_i p^i.  The modulus is
// the first monic irreducible of degree r in that encoding order, so field
// construction is reproducible without Conway tables.  Multiplication goes
// through discrete log tables.
class FiniteField {
  public:
    FiniteField(int64_t p, int r);

    int64_t p() const { return p_; }
    int r() const { return r_; }
    int64_t q() const { return q_; }
    const std::vector<int64_t>& modulus() const { return modulus_; }
    int64_t generator() const { return exp_[1]; }

    int64_t add(int64_t a, int64_t b) const;
    int64_t sub(int64_t a, int64_t b) const;
    int64_t neg(int64_t a) const;
    int64_t mul(int64_t a, int64_t b) const {
        if (a == 0 || b == 0) return 0;
        return exp_[idx(log_[a] + log_[b])];
    }
    int64_t inv(int64_t a) const;
    int64_t pow(int64_t a, int64_t e) const;
    int64_t cube(int64_t a) const {
        if (a == 0) return 0;
        return exp_[idx(3 * log_[a])];
    }
    int64_t frobenius(int64_t a) const { return pow(a, p_); }
    // scalar c in [0,p) times a
    int64_t scalar_mul(int64_t c, int64_t a) const;
    int64_t from_int(int64_t c) const;  // image of integer c (mod p)
    int64_t trace(int64_t a) const;     // absolute trace to F_p, in [0,p)

    // u = cube_rep(class) * lambda^3; classes index a set of coset
    // representatives of F_q^* / (F_q^*)^3 (size 1 or 3).
    struct CubeDecomp {
        int cls;
        int64_t lambda;
    };
    CubeDecomp cube_decompose(int64_t u) const;
    const std::vector<int64_t>& cube_reps() const { return cube_reps_; }

    // Distinct roots in F_q of a3 x^3 + a2 x^2 + a1 x + a0; the identically
    // zero polynomial has q roots.  Direct scan for q <= 4096, gcd with
    // x^q - x via repeated squaring above.
    int64_t cubic_root_count(int64_t a3, int64_t a2, int64_t a1, int64_t a0) const;

  private:
    int64_t idx(int64_t e) const {
        e %= (q_ - 1);
        return e;
    }
    int64_t p_, q_;
    int r_;
    std::vector<int64_t> modulus_;  // monic, length r+1, coefficients in [0,p)
    std::vector<int64_t> exp_;      // exp_[k] = g^k, k in [0, q-1)
    std::vector<int64_t> log_;      // log_[a] for a != 0
    std::vector<int64_t> trace_;
    std::vector<int64_t> cube_reps_;
    std::vector<int8_t> cube_class_;   // class of each unit (by log mod 3), or 0
    std::vector<int64_t> cube_lambda_; // lambda for each unit
};

// Shared, cached field instances.
const FiniteField& finite_field(int64_t p, int r);

}  // namespace cubelab
