#include "cubelab/finite_field.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>

#include "cubelab/factor.hpp"

namespace cubelab {

namespace {

using Poly = std::vector<int64_t>;  // over F_p, lowest degree first

int64_t mod_inverse(int64_t a, int64_t p) {
    int64_t t = 0, newt = 1, r = p, newr = a % p;
    while (newr != 0) {
        int64_t qu = r / newr;
        std::swap(t -= qu * newt, newt);
        std::swap(r -= qu * newr, newr);
    }
    return t < 0 ? t + p : t;
}

void trim(Poly& f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
}

Poly poly_mul_mod(const Poly& a, const Poly& b, const Poly& f, int64_t p) {
    if (a.empty() || b.empty()) return {};
    Poly c(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (!a[i]) continue;
        for (std::size_t j = 0; j < b.size(); ++j)
            c[i + j] = (c[i + j] + a[i] * b[j]) % p;
    }
    // reduce mod monic f
    int d = int(f.size()) - 1;
    for (int i = int(c.size()) - 1; i >= d; --i) {
        int64_t t = c[i];
        if (!t) continue;
        c[i] = 0;
        for (int j = 0; j < d; ++j) c[i - d + j] = ((c[i - d + j] - t * f[j]) % p + p) % p;
    }
    c.resize(d);
    trim(c);
    return c;
}

Poly poly_pow_mod(Poly base, Int e, const Poly& f, int64_t p) {
    Poly r{1};
    while (e > 0) {
        if (boost::multiprecision::bit_test(e, 0)) r = poly_mul_mod(r, base, f, p);
        base = poly_mul_mod(base, base, f, p);
        e >>= 1;
    }
    return r;
}

Poly poly_gcd(Poly a, Poly b, int64_t p) {
    trim(a);
    trim(b);
    while (!b.empty()) {
        // a mod b
        int64_t lead_inv = mod_inverse(b.back(), p);
        while (a.size() >= b.size() && !a.empty()) {
            int64_t t = a.back() * lead_inv % p;
            std::size_t shift = a.size() - b.size();
            for (std::size_t j = 0; j < b.size(); ++j)
                a[shift + j] = ((a[shift + j] - t * b[j]) % p + p) % p;
            trim(a);
        }
        std::swap(a, b);
    }
    return a;
}

bool is_irreducible(const Poly& f, int64_t p) {
    int r = int(f.size()) - 1;
    Poly x{0, 1};
    // x^{p^r} == x mod f
    Poly xq = x;
    for (int i = 0; i < r; ++i) xq = poly_pow_mod(xq, Int(p), f, p);
    Poly diff = xq;
    diff.resize(std::max<std::size_t>(diff.size(), 2), 0);
    diff[1] = ((diff[1] - 1) % p + p) % p;
    trim(diff);
    if (!diff.empty()) return false;
    for (const auto& [pr, e] : factorize(Int(r)).factors) {
        int ell = int(pr);
        (void)e;
        Poly xs = x;
        for (int i = 0; i < r / ell; ++i) xs = poly_pow_mod(xs, Int(p), f, p);
        Poly d = xs;
        d.resize(std::max<std::size_t>(d.size(), 2), 0);
        d[1] = ((d[1] - 1) % p + p) % p;
        trim(d);
        Poly g = poly_gcd(f, d, p);
        if (g.size() != 1) return false;
    }
    return true;
}

}  // namespace

FiniteField::FiniteField(int64_t p, int r) : p_(p), r_(r) {
    if (r < 1 || p < 2 || !is_prime64(p)) throw DomainError("finite field: bad p^r");
    q_ = 1;
    for (int i = 0; i < r; ++i) {
        if (q_ > (int64_t(1) << 22) / p) throw ResourceLimit("finite field too large for log tables");
        q_ *= p;
    }

    // First monic irreducible of degree r in encoding order.
    if (r == 1) {
        modulus_ = {0, 1};  // x (unused; elements are residues mod p)
    } else {
        int64_t enc = 0;
        for (;; ++enc) {
            if (enc >= q_) throw DomainError("no irreducible found (impossible)");
            Poly f(r + 1, 0);
            int64_t t = enc;
            for (int i = 0; i < r; ++i) {
                f[i] = t % p;
                t /= p;
            }
            f[r] = 1;
            if (is_irreducible(f, p)) {
                modulus_ = f;
                break;
            }
        }
    }

    // Generator: smallest encoded unit whose order is q-1.
    auto fs = factorize(Int(q_ - 1)).factors;
    auto decode = [&](int64_t a) {
        Poly v;
        while (a) {
            v.push_back(a % p);
            a /= p;
        }
        return v;
    };
    auto encode = [&](const Poly& v) {
        int64_t a = 0;
        for (int i = int(v.size()) - 1; i >= 0; --i) a = a * p + v[i];
        return a;
    };
    const Poly& f = modulus_;
    auto elem_pow = [&](int64_t a, Int e) {
        if (r_ == 1) {
            return to_i64(boost::multiprecision::powm(Int(a), e, Int(p)));
        }
        return encode(poly_pow_mod(decode(a), e, f, p));
    };
    int64_t g = 0;
    for (int64_t cand = 2; cand < q_; ++cand) {
        bool ok = true;
        for (const auto& [pr, e] : fs) {
            (void)e;
            if (elem_pow(cand, Int(q_ - 1) / pr) == 1) {
                ok = false;
                break;
            }
        }
        if (ok) {
            g = cand;
            break;
        }
    }
    if (g == 0) throw DomainError("no generator found (impossible)");

    exp_.assign(q_ - 1, 0);
    log_.assign(q_, -1);
    exp_[0] = 1;
    log_[1] = 0;
    if (r_ == 1) {
        for (int64_t k = 1; k < q_ - 1; ++k) {
            exp_[k] = exp_[k - 1] * g % p;
            log_[exp_[k]] = k;
        }
    } else {
        Poly gp = decode(g), acc{1};
        for (int64_t k = 1; k < q_ - 1; ++k) {
            acc = poly_mul_mod(acc, gp, f, p);
            exp_[k] = encode(acc);
            log_[exp_[k]] = k;
        }
    }

    trace_.assign(q_, 0);
    for (int64_t a = 1; a < q_; ++a) {
        int64_t s = 0, x = a;
        for (int i = 0; i < r_; ++i) {
            s = add(s, x);
            x = frobenius(x);
        }
        if (s >= p_) throw DataInconsistent("trace landed outside F_p");
        trace_[a] = s;
    }

    cube_class_.assign(q_, 0);
    cube_lambda_.assign(q_, 0);
    if ((q_ - 1) % 3 == 0) {
        cube_reps_ = {1, exp_[1], exp_[2]};
        for (int64_t a = 1; a < q_; ++a) {
            int64_t L = log_[a];
            int cls = int(L % 3);
            cube_class_[a] = int8_t(cls);
            cube_lambda_[a] = exp_[(L - cls) / 3];
        }
    } else {
        cube_reps_ = {1};
        int64_t inv3 = mod_inverse(3 % (q_ - 1), q_ - 1);
        for (int64_t a = 1; a < q_; ++a) {
            cube_class_[a] = 0;
            cube_lambda_[a] = exp_[(log_[a] * i128(inv3)) % (q_ - 1)];
        }
    }
}

int64_t FiniteField::add(int64_t a, int64_t b) const {
    if (r_ == 1) {
        int64_t s = a + b;
        return s >= p_ ? s - p_ : s;
    }
    int64_t out = 0, mul = 1;
    for (int i = 0; i < r_; ++i) {
        int64_t d = a % p_ + b % p_;
        if (d >= p_) d -= p_;
        out += d * mul;
        mul *= p_;
        a /= p_;
        b /= p_;
    }
    return out;
}

int64_t FiniteField::neg(int64_t a) const {
    if (r_ == 1) return a == 0 ? 0 : p_ - a;
    int64_t out = 0, mul = 1;
    for (int i = 0; i < r_; ++i) {
        int64_t d = a % p_;
        out += (d == 0 ? 0 : p_ - d) * mul;
        mul *= p_;
        a /= p_;
    }
    return out;
}

int64_t FiniteField::sub(int64_t a, int64_t b) const { return add(a, neg(b)); }

int64_t FiniteField::inv(int64_t a) const {
    if (a == 0) throw DomainError("field inverse of zero");
    int64_t L = log_[a];
    return exp_[L == 0 ? 0 : q_ - 1 - L];
}

int64_t FiniteField::pow(int64_t a, int64_t e) const {
    if (a == 0) {
        if (e == 0) return 1;
        if (e < 0) throw DomainError("field pow: 0^negative");
        return 0;
    }
    i128 L = i128(log_[a]) * e % (q_ - 1);
    if (L < 0) L += q_ - 1;
    return exp_[int64_t(L)];
}

int64_t FiniteField::scalar_mul(int64_t c, int64_t a) const {
    c %= p_;
    if (c < 0) c += p_;
    if (c == 0 || a == 0) return 0;
    if (r_ == 1) return c * a % p_;
    int64_t out = 0, mul = 1, x = a;
    for (int i = 0; i < r_; ++i) {
        out += (c * (x % p_) % p_) * mul;
        mul *= p_;
        x /= p_;
    }
    return out;
}

int64_t FiniteField::from_int(int64_t c) const {
    c %= p_;
    return c < 0 ? c + p_ : c;
}

int64_t FiniteField::trace(int64_t a) const { return trace_[a]; }

FiniteField::CubeDecomp FiniteField::cube_decompose(int64_t u) const {
    if (u == 0) throw DomainError("cube_decompose: zero");
    return {int(cube_class_[u]), cube_lambda_[u]};
}

int64_t FiniteField::cubic_root_count(int64_t a3, int64_t a2, int64_t a1,
                                      int64_t a0) const {
    if (a3 == 0 && a2 == 0 && a1 == 0)
        return a0 == 0 ? q_ : 0;
    if (q_ <= 4096) {
        int64_t cnt = 0;
        for (int64_t x = 0; x < q_; ++x) {
            int64_t v = add(mul(a3, cube(x)), add(mul(a2, mul(x, x)), add(mul(a1, x), a0)));
            if (v == 0) ++cnt;
        }
        return cnt;
    }
    // gcd(x^q - x, f) over F_q; its degree is the number of distinct roots.
    std::vector<int64_t> f;
    if (a3 != 0) f = {a0, a1, a2, a3};
    else if (a2 != 0) f = {a0, a1, a2};
    else f = {a0, a1};
    auto fq_trim = [&](std::vector<int64_t>& v) {
        while (!v.empty() && v.back() == 0) v.pop_back();
    };
    auto fq_mulmod = [&](const std::vector<int64_t>& x, const std::vector<int64_t>& y,
                         const std::vector<int64_t>& mod) {
        std::vector<int64_t> c(x.size() + y.size() - 1, 0);
        for (std::size_t i = 0; i < x.size(); ++i) {
            if (!x[i]) continue;
            for (std::size_t j = 0; j < y.size(); ++j)
                c[i + j] = add(c[i + j], mul(x[i], y[j]));
        }
        int d = int(mod.size()) - 1;
        int64_t lead_inv = inv(mod.back());
        for (int i = int(c.size()) - 1; i >= d; --i) {
            int64_t t = mul(c[i], lead_inv);
            if (!t) continue;
            for (int j = 0; j <= d; ++j) c[i - d + j] = sub(c[i - d + j], mul(t, mod[j]));
        }
        c.resize(d);
        fq_trim(c);
        return c;
    };
    // x^q mod f by square-and-multiply on the exponent q
    std::vector<int64_t> result{1}, base{0, 1};
    if (f.size() == 2) {
        // linear: exactly one root
        return 1;
    }
    int64_t e = q_;
    while (e) {
        if (e & 1) result = fq_mulmod(result, base, f);
        base = fq_mulmod(base, base, f);
        e >>= 1;
    }
    // result - x
    std::vector<int64_t> diff = result;
    if (diff.size() < 2) diff.resize(2, 0);
    diff[1] = sub(diff[1], 1);
    fq_trim(diff);
    // gcd(f, diff)
    std::vector<int64_t> A = f, B = diff;
    fq_trim(A);
    while (!B.empty()) {
        int64_t lead_inv = inv(B.back());
        while (A.size() >= B.size() && !A.empty()) {
            int64_t t = mul(A.back(), lead_inv);
            std::size_t shift = A.size() - B.size();
            for (std::size_t j = 0; j < B.size(); ++j)
                A[shift + j] = sub(A[shift + j], mul(t, B[j]));
            fq_trim(A);
        }
        std::swap(A, B);
    }
    return A.empty() ? 0 : int64_t(A.size()) - 1;
}

const FiniteField& finite_field(int64_t p, int r) {
    static std::mutex mu;
    static std::map<std::pair<int64_t, int>, std::unique_ptr<FiniteField>> cache;
    std::lock_guard<std::mutex> lk(mu);
    auto key = std::make_pair(p, r);
    auto it = cache.find(key);
    if (it == cache.end())
        it = cache.emplace(key, std::make_unique<FiniteField>(p, r)).first;
    return *it->second;
}

}  // namespace cubelab
