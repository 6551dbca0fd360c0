#pragma once

#include <cstdint>
#include <optional>
#include <tuple>
#include <vector>

#include "cubelab/bigint.hpp"
#include "cubelab/errors.hpp"

namespace cubelab {

// Prime factorization of a nonzero integer: primes strictly increasing,
// product of p^e (times sign) equals value.
struct FactoredInt {
    Int value;
    std::vector<std::pair<Int, int>> factors;

    Int reconstruct() const;
};

// Trial division to 10^6, then deterministic Miller-Rabin plus Brent's
// variant of Pollard rho.  n == 0 is a domain error.
FactoredInt factorize(const Int& n);

bool is_prime(const Int& n);

// rad(n), sq(n) = prod_{v_p>=2} p^{v_p}, cub(n) = prod_{v_p>=3} p^{v_p}.
struct MultParts {
    Int rad, sq, cub;
};
MultParts mult_parts(const Int& n);

// All positive divisors, ascending.
std::vector<Int> divisors(const FactoredInt& f);

int omega(const FactoredInt& f);  // number of distinct primes
int mobius(const FactoredInt& f); // 0 if not square-free

// Square-free kernel with sign: n = squarefree_part(n) * (square).
Int squarefree_part(const Int& n);

// Small-integer helpers (sieve-backed, for n fitting in int64).
int64_t euler_phi(int64_t n);
int mobius64(int64_t n);
int64_t squarefree_part64(int64_t n);
bool is_prime64(int64_t n);
std::vector<int64_t> primes_up_to(int64_t n);
std::vector<int64_t> prime_powers_up_to(int64_t n); // q = p^l <= n, ascending

// Prime-power split of n: list of (p, l, p^l).
std::vector<std::tuple<int64_t, int, int64_t>> prime_power_split(int64_t n);

}  // namespace cubelab
