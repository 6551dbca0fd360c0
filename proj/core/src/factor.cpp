#include "cubelab/factor.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>

namespace cubelab {

namespace {

constexpr int64_t kTrialBound = 1'000'000;

const std::vector<int64_t>& small_primes() {
    static std::vector<int64_t> primes = [] {
        std::vector<bool> sieve(kTrialBound + 1, true);
        std::vector<int64_t> ps;
        for (int64_t i = 2; i <= kTrialBound; ++i) {
            if (!sieve[i]) continue;
            ps.push_back(i);
            for (int64_t j = i * i; j <= kTrialBound; j += i) sieve[j] = false;
        }
        return ps;
    }();
    return primes;
}

Int mulmod(const Int& a, const Int& b, const Int& m) { return (a * b) % m; }

Int powmod(Int b, Int e, const Int& m) {
    Int r = 1;
    b %= m;
    while (e > 0) {
        if (boost::multiprecision::bit_test(e, 0)) r = mulmod(r, b, m);
        b = mulmod(b, b, m);
        e >>= 1;
    }
    return r;
}

bool miller_rabin_witness(const Int& n, const Int& a) {
    Int d = n - 1;
    unsigned s = 0;
    while (!boost::multiprecision::bit_test(d, 0)) {
        d >>= 1;
        ++s;
    }
    Int x = powmod(a % n, d, n);
    if (x == 1 || x == n - 1) return false;
    for (unsigned i = 1; i < s; ++i) {
        x = mulmod(x, x, n);
        if (x == n - 1) return false;
    }
    return true;  // composite
}

Int pollard_brent(const Int& n, uint64_t seed) {
    // Brent cycle detection on x -> x^2 + c mod n.
    Int c = 1 + Int(seed % 255);
    Int x = 2 + Int(seed % 97), y = x, d = 1, q = 1, ys = y;
    const int m = 64;
    int64_t r = 1;
    while (d == 1) {
        x = y;
        for (int64_t i = 0; i < r; ++i) y = (mulmod(y, y, n) + c) % n;
        int64_t k = 0;
        while (k < r && d == 1) {
            ys = y;
            int64_t lim = std::min<int64_t>(m, r - k);
            for (int64_t i = 0; i < lim; ++i) {
                y = (mulmod(y, y, n) + c) % n;
                Int diff = x > y ? x - y : y - x;
                q = mulmod(q, diff, n);
            }
            d = boost::multiprecision::gcd(q, n);
            k += m;
        }
        r *= 2;
    }
    if (d == n) {
        // backtrack
        do {
            ys = (mulmod(ys, ys, n) + c) % n;
            Int diff = x > ys ? x - ys : ys - x;
            d = boost::multiprecision::gcd(diff, n);
        } while (d == 1);
    }
    return d;
}

void factor_rec(Int n, std::map<Int, int>& out, uint64_t seed) {
    if (n == 1) return;
    if (is_prime(n)) {
        out[n]++;
        return;
    }
    Int d = n;
    while (d == n) {
        d = pollard_brent(n, seed);
        ++seed;
    }
    factor_rec(d, out, seed);
    factor_rec(n / d, out, seed + 1);
}

}  // namespace

bool is_prime(const Int& n) {
    if (n < 2) return false;
    for (int64_t p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        if (n == p) return true;
        if (n % p == 0) return false;
    }
    // Deterministic for n < 3.3e24 with this base set; a strong
    // probabilistic certificate beyond that (inputs here stay far below).
    for (int64_t a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        if (miller_rabin_witness(n, Int(a))) return false;
    }
    return true;
}

Int FactoredInt::reconstruct() const {
    Int v = value < 0 ? Int(-1) : Int(1);
    for (const auto& [p, e] : factors) v *= pow_int(p, unsigned(e));
    return v;
}

FactoredInt factorize(const Int& n) {
    if (n == 0) throw DomainError("factorize: n = 0");
    FactoredInt out;
    out.value = n;
    Int m = boost::multiprecision::abs(n);
    std::map<Int, int> fs;
    for (int64_t p : small_primes()) {
        if (Int(p) * p > m) break;
        while (m % p == 0) {
            fs[Int(p)]++;
            m /= p;
        }
        if (m == 1) break;
    }
    if (m > 1) {
        if (m <= Int(kTrialBound) * kTrialBound || is_prime(m)) {
            if (is_prime(m)) {
                fs[m]++;
            } else {
                factor_rec(m, fs, 0x9e3779b9ull);
            }
        } else {
            factor_rec(m, fs, 0x9e3779b9ull);
        }
    }
    out.factors.assign(fs.begin(), fs.end());
    return out;
}

MultParts mult_parts(const Int& n) {
    if (n < 1) throw DomainError("mult_parts: n must be positive");
    MultParts mp{1, 1, 1};
    if (n == 1) return mp;
    for (const auto& [p, e] : factorize(n).factors) {
        mp.rad *= p;
        if (e >= 2) mp.sq *= pow_int(p, unsigned(e));
        if (e >= 3) mp.cub *= pow_int(p, unsigned(e));
    }
    return mp;
}

std::vector<Int> divisors(const FactoredInt& f) {
    std::vector<Int> ds{1};
    for (const auto& [p, e] : f.factors) {
        std::size_t base = ds.size();
        Int pk = 1;
        for (int k = 1; k <= e; ++k) {
            pk *= p;
            for (std::size_t i = 0; i < base; ++i) ds.push_back(ds[i] * pk);
        }
    }
    std::sort(ds.begin(), ds.end());
    return ds;
}

int omega(const FactoredInt& f) { return int(f.factors.size()); }

int mobius(const FactoredInt& f) {
    for (const auto& [p, e] : f.factors)
        if (e >= 2) return 0;
    return f.factors.size() % 2 == 0 ? 1 : -1;
}

Int squarefree_part(const Int& n) {
    if (n == 0) return 0;
    Int r = n < 0 ? Int(-1) : Int(1);
    for (const auto& [p, e] : factorize(n).factors)
        if (e % 2 == 1) r *= p;
    return r;
}

int64_t euler_phi(int64_t n) {
    int64_t result = n, m = n;
    for (int64_t p = 2; p * p <= m; ++p) {
        if (m % p == 0) {
            result -= result / p;
            while (m % p == 0) m /= p;
        }
    }
    if (m > 1) result -= result / m;
    return result;
}

int mobius64(int64_t n) { return mobius(factorize(Int(n))); }

int64_t squarefree_part64(int64_t n) { return to_i64(squarefree_part(Int(n))); }

bool is_prime64(int64_t n) { return is_prime(Int(n)); }

std::vector<int64_t> primes_up_to(int64_t n) {
    std::vector<bool> sieve(std::max<int64_t>(n + 1, 2), true);
    std::vector<int64_t> ps;
    for (int64_t i = 2; i <= n; ++i) {
        if (!sieve[i]) continue;
        ps.push_back(i);
        for (int64_t j = i * i; j <= n; j += i) sieve[j] = false;
    }
    return ps;
}

std::vector<int64_t> prime_powers_up_to(int64_t n) {
    std::vector<int64_t> qs;
    for (int64_t p : primes_up_to(n))
        for (int64_t q = p; q <= n; q *= p) {
            qs.push_back(q);
            if (q > n / p) break;
        }
    std::sort(qs.begin(), qs.end());
    return qs;
}

std::vector<std::tuple<int64_t, int, int64_t>> prime_power_split(int64_t n) {
    if (n <= 0) throw DomainError("prime_power_split: n must be positive");
    std::vector<std::tuple<int64_t, int, int64_t>> out;
    for (const auto& [p, e] : factorize(Int(n)).factors) {
        int64_t pp = 1, p64 = to_i64(p);
        for (int k = 0; k < e; ++k) pp *= p64;
        out.emplace_back(p64, e, pp);
    }
    return out;
}

}  // namespace cubelab
