#include "cubelab/intpoly.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "cubelab/errors.hpp"
#include "cubelab/factor.hpp"

namespace cubelab {

IntPolynomial IntPolynomial::operator+(const IntPolynomial& o) const {
    std::vector<Int> r(std::max(c_.size(), o.c_.size()), 0);
    for (std::size_t i = 0; i < c_.size(); ++i) r[i] += c_[i];
    for (std::size_t i = 0; i < o.c_.size(); ++i) r[i] += o.c_[i];
    return IntPolynomial(std::move(r));
}

IntPolynomial IntPolynomial::operator-(const IntPolynomial& o) const {
    std::vector<Int> r(std::max(c_.size(), o.c_.size()), 0);
    for (std::size_t i = 0; i < c_.size(); ++i) r[i] += c_[i];
    for (std::size_t i = 0; i < o.c_.size(); ++i) r[i] -= o.c_[i];
    return IntPolynomial(std::move(r));
}

IntPolynomial IntPolynomial::operator*(const IntPolynomial& o) const {
    if (is_zero() || o.is_zero()) return {};
    std::vector<Int> r(c_.size() + o.c_.size() - 1, 0);
    for (std::size_t i = 0; i < c_.size(); ++i) {
        if (c_[i] == 0) continue;
        for (std::size_t j = 0; j < o.c_.size(); ++j) r[i + j] += c_[i] * o.c_[j];
    }
    return IntPolynomial(std::move(r));
}

IntPolynomial IntPolynomial::operator-() const {
    std::vector<Int> r = c_;
    for (auto& v : r) v = -v;
    return IntPolynomial(std::move(r));
}

IntPolynomial IntPolynomial::derivative() const {
    if (c_.size() <= 1) return {};
    std::vector<Int> r(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i) r[i - 1] = c_[i] * int(i);
    return IntPolynomial(std::move(r));
}

Int IntPolynomial::eval(const Int& x) const {
    Int v = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) v = v * x + *it;
    return v;
}

Rational IntPolynomial::eval(const Rational& x) const {
    Rational v = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) v = v * x + Rational(*it);
    return v;
}

Int IntPolynomial::content() const {
    Int g = 0;
    for (const auto& v : c_) g = boost::multiprecision::gcd(g, v);
    return g;
}

IntPolynomial IntPolynomial::primitive_part() const {
    Int g = content();
    if (g == 0) return {};
    if (leading() < 0) g = -g;
    std::vector<Int> r = c_;
    for (auto& v : r) v /= g;
    return IntPolynomial(std::move(r));
}

IntPolynomial IntPolynomial::reversed() const {
    std::vector<Int> r(c_.rbegin(), c_.rend());
    return IntPolynomial(std::move(r));
}

IntPolynomial IntPolynomial::divide_exact(const IntPolynomial& d) const {
    if (d.is_zero()) throw DomainError("polynomial division by zero");
    std::vector<Int> rem = c_;
    if (int(rem.size()) < int(d.c_.size())) {
        if (is_zero()) return {};
        throw DomainError("polynomial division not exact");
    }
    std::vector<Int> quot(rem.size() - d.c_.size() + 1, 0);
    for (int i = int(quot.size()) - 1; i >= 0; --i) {
        Int top = rem[i + d.c_.size() - 1];
        if (top % d.leading() != 0) throw DomainError("polynomial division not exact");
        Int q = top / d.leading();
        quot[i] = q;
        if (q == 0) continue;
        for (std::size_t j = 0; j < d.c_.size(); ++j) rem[i + j] -= q * d.c_[j];
    }
    for (const auto& v : rem)
        if (v != 0) throw DomainError("polynomial division not exact");
    return IntPolynomial(std::move(quot));
}

bool IntPolynomial::divisible_by(const IntPolynomial& d) const {
    try {
        (void)divide_exact(d);
        return true;
    } catch (const DomainError&) {
        return false;
    }
}

std::string IntPolynomial::to_string(const std::string& var) const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int k = degree(); k >= 0; --k) {
        const Int& v = c_[k];
        if (v == 0) continue;
        if (!first) os << (v > 0 ? " + " : " - ");
        else if (v < 0) os << "-";
        Int a = boost::multiprecision::abs(v);
        if (a != 1 || k == 0) os << a.str();
        if (k >= 1) {
            if (a != 1) os << "*";
            os << var;
            if (k > 1) os << "^" << k;
        }
        first = false;
    }
    return os.str();
}

IntPolynomial poly_gcd_z(const IntPolynomial& a, const IntPolynomial& b) {
    // primitive PRS
    IntPolynomial f = a.primitive_part(), g = b.primitive_part();
    if (f.is_zero()) return g;
    if (g.is_zero()) return f;
    if (f.degree() < g.degree()) std::swap(f, g);
    while (!g.is_zero()) {
        // pseudo-remainder of f by g
        IntPolynomial r = f;
        Int lg = g.leading();
        while (!r.is_zero() && r.degree() >= g.degree()) {
            int shift = r.degree() - g.degree();
            Int lr = r.leading();
            std::vector<Int> sc(shift + 1, 0);
            sc[shift] = lr;
            IntPolynomial scale(std::move(sc));
            std::vector<Int> rl = r.coeffs();
            for (auto& v : rl) v *= lg;
            r = IntPolynomial(std::move(rl)) - scale * g;
        }
        f = g;
        g = r.primitive_part();
    }
    return f.primitive_part();
}

// ---------------------------------------------------------------------------
// Zassenhaus factorization: factor mod p, Hensel lift, subset recombination.
// ---------------------------------------------------------------------------

namespace {

using ModP = std::vector<int64_t>;  // over F_p, lowest degree first, trimmed

void mp_trim(ModP& f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
}

int64_t mp_inv(int64_t a, int64_t p) {
    int64_t t = 0, nt = 1, r = p, nr = ((a % p) + p) % p;
    while (nr) {
        int64_t q = r / nr;
        std::swap(t -= q * nt, nt);
        std::swap(r -= q * nr, nr);
    }
    return t < 0 ? t + p : t;
}

ModP mp_mul(const ModP& a, const ModP& b, int64_t p) {
    if (a.empty() || b.empty()) return {};
    ModP c(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (!a[i]) continue;
        for (std::size_t j = 0; j < b.size(); ++j)
            c[i + j] = (c[i + j] + i128(a[i]) * b[j]) % p;
    }
    mp_trim(c);
    return c;
}

// a mod f (f monic not required)
ModP mp_rem(ModP a, const ModP& f, int64_t p) {
    int64_t li = mp_inv(f.back(), p);
    while (a.size() >= f.size() && !a.empty()) {
        int64_t t = a.back() * i128(li) % p;
        std::size_t shift = a.size() - f.size();
        for (std::size_t j = 0; j < f.size(); ++j)
            a[shift + j] = ((a[shift + j] - i128(t) * f[j]) % p + p) % p;
        mp_trim(a);
    }
    return a;
}

ModP mp_gcd(ModP a, ModP b, int64_t p) {
    mp_trim(a);
    mp_trim(b);
    while (!b.empty()) {
        ModP r = mp_rem(a, b, p);
        a = b;
        b = r;
    }
    if (!a.empty()) {
        int64_t li = mp_inv(a.back(), p);
        for (auto& v : a) v = v * i128(li) % p;
    }
    return a;
}

ModP mp_powmod(ModP base, Int e, const ModP& f, int64_t p) {
    ModP r{1};
    base = mp_rem(std::move(base), f, p);
    while (e > 0) {
        if (boost::multiprecision::bit_test(e, 0)) r = mp_rem(mp_mul(r, base, p), f, p);
        base = mp_rem(mp_mul(base, base, p), f, p);
        e >>= 1;
    }
    return r;
}

ModP mp_sub(ModP a, const ModP& b, int64_t p) {
    if (a.size() < b.size()) a.resize(b.size(), 0);
    for (std::size_t i = 0; i < b.size(); ++i) a[i] = ((a[i] - b[i]) % p + p) % p;
    mp_trim(a);
    return a;
}

ModP mp_divexact(const ModP& a, const ModP& b, int64_t p) {
    // a / b, remainder known zero
    ModP rem = a, q(a.size() - b.size() + 1, 0);
    int64_t li = mp_inv(b.back(), p);
    for (int i = int(q.size()) - 1; i >= 0; --i) {
        if (rem.size() < b.size() + i) continue;
        int64_t t = rem[i + b.size() - 1] * i128(li) % p;
        q[i] = t;
        if (!t) continue;
        for (std::size_t j = 0; j < b.size(); ++j)
            rem[i + j] = ((rem[i + j] - i128(t) * b[j]) % p + p) % p;
    }
    mp_trim(q);
    return q;
}

// deterministic LCG for equal-degree splitting
struct Lcg {
    uint64_t s = 0x2545F4914F6CDD1Dull;
    uint64_t next() {
        s = s * 6364136223846793005ull + 1442695040888963407ull;
        return s >> 11;
    }
};

void equal_degree_factor(const ModP& f, int d, int64_t p, std::vector<ModP>& out, Lcg& rng) {
    int n = int(f.size()) - 1;
    if (n == d) {
        out.push_back(f);
        return;
    }
    // Cantor-Zassenhaus, p odd
    Int exponent = (pow_int(Int(p), unsigned(d)) - 1) / 2;
    while (true) {
        ModP r(n, 0);
        for (auto& v : r) v = int64_t(rng.next() % uint64_t(p));
        mp_trim(r);
        if (r.size() <= 1) continue;
        ModP g = mp_gcd(f, r, p);
        if (g.size() > 1 && int(g.size()) - 1 < n) {
            equal_degree_factor(g, d, p, out, rng);
            equal_degree_factor(mp_divexact(f, g, p), d, p, out, rng);
            return;
        }
        ModP h = mp_powmod(r, exponent, f, p);
        // h - 1
        if (h.empty()) h = {p - 1};
        else h[0] = (h[0] + p - 1) % p;
        mp_trim(h);
        g = mp_gcd(f, h, p);
        if (g.size() > 1 && int(g.size()) - 1 < n) {
            equal_degree_factor(g, d, p, out, rng);
            equal_degree_factor(mp_divexact(f, g, p), d, p, out, rng);
            return;
        }
    }
}

std::vector<ModP> factor_mod_p(ModP f, int64_t p) {
    // f squarefree mod p, monic after normalization
    int64_t li = mp_inv(f.back(), p);
    for (auto& v : f) v = v * i128(li) % p;
    std::vector<ModP> out;
    Lcg rng;
    ModP h{0, 1};  // x
    int d = 0;
    while (int(f.size()) - 1 >= 2 * (d + 1)) {
        ++d;
        h = mp_powmod(h, Int(p), f, p);
        ModP hx = mp_sub(h, ModP{0, 1}, p);
        ModP g = mp_gcd(f, hx, p);
        if (g.size() > 1) {
            equal_degree_factor(g, d, p, out, rng);
            f = mp_divexact(f, g, p);
            h = mp_rem(h, f, p);
        }
    }
    if (f.size() > 1) out.push_back(f);
    return out;
}

// ---- Hensel lifting over Z/p^k ----

using Zk = std::vector<Int>;  // coefficients mod m, in [0, m)

void zk_trim(Zk& f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
}

Zk zk_mul(const Zk& a, const Zk& b, const Int& m) {
    if (a.empty() || b.empty()) return {};
    Zk c(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
    }
    for (auto& v : c) v %= m;
    for (auto& v : c)
        if (v < 0) v += m;
    zk_trim(c);
    return c;
}

Zk zk_add(Zk a, const Zk& b, const Int& m) {
    if (a.size() < b.size()) a.resize(b.size(), 0);
    for (std::size_t i = 0; i < b.size(); ++i) a[i] = (a[i] + b[i]) % m;
    zk_trim(a);
    return a;
}

Zk zk_sub(Zk a, const Zk& b, const Int& m) {
    if (a.size() < b.size()) a.resize(b.size(), 0);
    for (std::size_t i = 0; i < b.size(); ++i) a[i] = ((a[i] - b[i]) % m + m) % m;
    zk_trim(a);
    return a;
}

// divide by monic d: returns (q, r)
std::pair<Zk, Zk> zk_quorem_monic(Zk a, const Zk& d, const Int& m) {
    if (a.size() < d.size()) return {Zk{}, a};
    Zk q(a.size() - d.size() + 1, 0);
    for (int i = int(q.size()) - 1; i >= 0; --i) {
        if (a.size() < d.size() + i) continue;
        Int t = a[i + d.size() - 1] % m;
        q[i] = t;
        if (t == 0) continue;
        for (std::size_t j = 0; j < d.size(); ++j)
            a[i + j] = ((a[i + j] - t * d[j]) % m + m) % m;
    }
    zk_trim(a);
    zk_trim(q);
    return {q, a};
}

// One quadratic Hensel step: f = g*h mod m, s*g + t*h = 1 mod m, g, h monic.
// Returns lifted (g, h, s, t) valid mod m^2.  (von zur Gathen & Gerhard 15.10)
void hensel_step(const Zk& f, Zk& g, Zk& h, Zk& s, Zk& t, const Int& m) {
    Int m2 = m * m;
    Zk e = zk_sub(f, zk_mul(g, h, m2), m2);
    auto [q, r] = zk_quorem_monic(zk_mul(s, e, m2), h, m2);
    Zk gstar = zk_add(zk_add(g, zk_mul(t, e, m2), m2), zk_mul(q, g, m2), m2);
    Zk hstar = zk_add(h, r, m2);
    Zk b = zk_sub(zk_add(zk_mul(s, gstar, m2), zk_mul(t, hstar, m2), m2), Zk{1}, m2);
    auto [c, d] = zk_quorem_monic(zk_mul(s, b, m2), hstar, m2);
    Zk sstar = zk_sub(s, d, m2);
    Zk tstar = zk_sub(zk_sub(t, zk_mul(t, b, m2), m2), zk_mul(c, gstar, m2), m2);
    g = gstar;
    h = hstar;
    s = sstar;
    t = tstar;
}

ModP mp_from_zk(const Zk& a, int64_t p) {
    ModP r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = int64_t(a[i] % p);
    mp_trim(r);
    return r;
}

Zk zk_from_mp(const ModP& a) {
    Zk r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i];
    return r;
}

// Extended Euclid over F_p: s*a + t*b = 1 (a, b coprime)
void mp_bezout(const ModP& a, const ModP& b, int64_t p, ModP& s, ModP& t) {
    ModP r0 = a, r1 = b, s0{1}, s1{}, t0{}, t1{1};
    while (!r1.empty()) {
        // quotient of r0 by r1
        ModP rem = r0, q;
        int64_t li = mp_inv(r1.back(), p);
        if (rem.size() >= r1.size()) {
            q.assign(rem.size() - r1.size() + 1, 0);
            for (int i = int(q.size()) - 1; i >= 0; --i) {
                if (rem.size() < r1.size() + i) continue;
                int64_t c = rem[i + r1.size() - 1] * i128(li) % p;
                q[i] = c;
                if (!c) continue;
                for (std::size_t j = 0; j < r1.size(); ++j)
                    rem[i + j] = ((rem[i + j] - i128(c) * r1[j]) % p + p) % p;
            }
            mp_trim(rem);
            mp_trim(q);
        }
        ModP s2 = mp_sub(s0, mp_mul(q, s1, p), p);
        ModP t2 = mp_sub(t0, mp_mul(q, t1, p), p);
        r0 = r1;
        r1 = rem;
        s0 = s1;
        s1 = s2;
        t0 = t1;
        t1 = t2;
    }
    int64_t li = mp_inv(r0.empty() ? 1 : r0[0], p);
    for (auto& v : s0) v = v * i128(li) % p;
    for (auto& v : t0) v = v * i128(li) % p;
    s = s0;
    t = t0;
}

// Lift the factorization f = prod(factors) (monic, mod p) to mod p^k with
// p^k >= bound, by a factor tree.
void hensel_tree(const Zk& f, std::vector<ModP> factors, int64_t p, const Int& bound,
                 std::vector<Zk>& out) {
    if (factors.size() == 1) {
        // f itself is the lift
        out.push_back(f);
        return;
    }
    std::size_t half = factors.size() / 2;
    std::vector<ModP> left(factors.begin(), factors.begin() + half);
    std::vector<ModP> right(factors.begin() + half, factors.end());
    ModP u{1}, v{1};
    for (const auto& g : left) u = mp_mul(u, g, p);
    for (const auto& g : right) v = mp_mul(v, g, p);
    ModP s, t;
    mp_bezout(u, v, p, s, t);
    Zk G = zk_from_mp(u), H = zk_from_mp(v), S = zk_from_mp(s), T = zk_from_mp(t);
    Int m = p;
    while (m < bound) {
        hensel_step(f, G, H, S, T, m);
        m *= m;
        // keep f reduced mod m^... f passed already mod big modulus; fine
    }
    hensel_tree(G, left, p, bound, out);
    hensel_tree(H, right, p, bound, out);
}

IntPolynomial zk_to_signed(const Zk& a, const Int& m) {
    std::vector<Int> r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        Int v = a[i] % m;
        if (v < 0) v += m;
        if (2 * v > m) v -= m;
        r[i] = v;
    }
    return IntPolynomial(std::move(r));
}

// Factor a monic squarefree integer polynomial.
std::vector<IntPolynomial> zassenhaus_monic_squarefree(const IntPolynomial& f) {
    int n = f.degree();
    if (n <= 1) return {f};
    // choose odd prime with squarefree reduction
    int64_t p = 0;
    for (int64_t cand : primes_up_to(10000)) {
        if (cand == 2) continue;
        ModP fp(n + 1);
        for (int i = 0; i <= n; ++i) fp[i] = int64_t(((f.coeff(i) % cand) + cand) % cand);
        mp_trim(fp);
        if (int(fp.size()) - 1 != n) continue;  // p divides leading coeff (impossible, monic)
        // squarefree mod p?
        ModP d(n, 0);
        for (int i = 1; i <= n; ++i) d[i - 1] = int64_t(i) % cand * fp[i] % cand;
        mp_trim(d);
        if (d.empty()) continue;
        if (mp_gcd(fp, d, cand).size() == 1) {
            p = cand;
            break;
        }
    }
    if (p == 0) throw DomainError("no suitable prime for factorization");

    ModP fp(n + 1);
    for (int i = 0; i <= n; ++i) fp[i] = int64_t(((f.coeff(i) % p) + p) % p);
    std::vector<ModP> modular = factor_mod_p(fp, p);
    if (modular.size() == 1) return {f};

    // Landau-Mignotte style bound on factor coefficients
    Rational norm2sq = 0;
    for (const auto& c : f.coeffs()) norm2sq += Rational(c * c);
    Int norm2 = isqrt(boost::multiprecision::numerator(norm2sq)) + 1;
    Int bound = (pow_int(Int(2), unsigned(n + 1)) * norm2 + 1) * 2;

    Int m = p;
    while (m < bound) m *= m;  // modulus reached by the lifting tree
    Zk F(f.coeffs().size());
    for (std::size_t i = 0; i < F.size(); ++i) {
        F[i] = f.coeff(int(i)) % m;
        if (F[i] < 0) F[i] += m;
    }
    std::vector<Zk> lifted;
    hensel_tree(F, modular, p, bound, lifted);

    // subset recombination, smallest subsets first
    std::vector<Zk> pool = lifted;
    std::vector<IntPolynomial> out;
    IntPolynomial rest = f;
    bool progressed = true;
    while (pool.size() > 0 && progressed) {
        progressed = false;
        std::size_t s = pool.size();
        for (std::size_t size = 1; size <= s && !progressed; ++size) {
            // iterate subsets of given size
            std::vector<std::size_t> idx(size);
            for (std::size_t i = 0; i < size; ++i) idx[i] = i;
            while (true) {
                Zk prod{1};
                for (std::size_t i : idx) prod = zk_mul(prod, pool[i], m);
                IntPolynomial cand = zk_to_signed(prod, m);
                if (!cand.is_zero() && rest.divisible_by(cand)) {
                    out.push_back(cand);
                    rest = rest.divide_exact(cand);
                    std::vector<Zk> np;
                    for (std::size_t i = 0, j = 0; i < pool.size(); ++i) {
                        if (j < idx.size() && idx[j] == i) {
                            ++j;
                            continue;
                        }
                        np.push_back(pool[i]);
                    }
                    pool = np;
                    progressed = true;
                    break;
                }
                // next subset
                int i = int(size) - 1;
                while (i >= 0 && idx[i] == pool.size() - size + i) --i;
                if (i < 0) break;
                ++idx[i];
                for (std::size_t j = i + 1; j < size; ++j) idx[j] = idx[j - 1] + 1;
            }
        }
        if (rest.degree() == 0) break;
    }
    if (rest.degree() > 0) out.push_back(rest);
    return out;
}

}  // namespace

IntPolynomial ZFactorization::reconstruct() const {
    IntPolynomial r = IntPolynomial::constant(content);
    for (const auto& [f, e] : factors)
        for (int i = 0; i < e; ++i) r = r * f;
    return r;
}

ZFactorization factor_over_z(const IntPolynomial& f_in) {
    ZFactorization out;
    if (f_in.is_zero()) {
        out.content = 0;
        return out;
    }
    Int cont = f_in.content();
    if (f_in.leading() < 0) cont = -cont;
    out.content = cont;
    IntPolynomial f = f_in.primitive_part();

    // strip powers of x
    int val = 0;
    while (!f.is_zero() && f.coeff(0) == 0) {
        f = f.divide_exact(IntPolynomial::x());
        ++val;
    }
    if (val > 0) out.factors.emplace_back(IntPolynomial::x(), val);
    if (f.degree() == 0) return out;

    // Squarefree kernel f / gcd(f, f') holds each distinct irreducible once;
    // multiplicities then come from repeated exact division.
    IntPolynomial kernel = f.divide_exact(poly_gcd_z(f, f.derivative())).primitive_part();

    std::vector<IntPolynomial> irreducibles;
    Int lc = kernel.leading();
    if (lc == 1) {
        irreducibles = zassenhaus_monic_squarefree(kernel);
    } else {
        // G(x) = lc^{d-1} * kernel(x/lc) is monic with integer coefficients
        int d = kernel.degree();
        std::vector<Int> gc(d + 1);
        for (int i = 0; i < d; ++i) gc[i] = kernel.coeff(i) * pow_int(lc, unsigned(d - 1 - i));
        gc[d] = 1;
        for (auto& irr : zassenhaus_monic_squarefree(IntPolynomial(std::move(gc)))) {
            // undo the substitution: h(x) -> primitive part of h(lc * x)
            std::vector<Int> hc(irr.coeffs());
            Int pw = 1;
            for (std::size_t i = 0; i < hc.size(); ++i) {
                hc[i] *= pw;
                pw *= lc;
            }
            irreducibles.push_back(IntPolynomial(std::move(hc)).primitive_part());
        }
    }

    for (const auto& irr : irreducibles) {
        int mult = 0;
        while (f.degree() >= irr.degree() && f.divisible_by(irr)) {
            f = f.divide_exact(irr);
            ++mult;
        }
        if (mult > 0) out.factors.emplace_back(irr, mult);
    }
    if (f.degree() != 0)
        throw DataInconsistent("polynomial factorization left a nontrivial cofactor");
    std::sort(out.factors.begin(), out.factors.end(), [](const auto& a, const auto& b) {
        if (a.first.degree() != b.first.degree()) return a.first.degree() < b.first.degree();
        return a.first.coeffs() < b.first.coeffs();
    });
    return out;
}

}  // namespace cubelab
