#include "cubelab/cyclotomic.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>

#include "cubelab/factor.hpp"

namespace cubelab {

namespace {

inline i128 checked_mul(i128 a, i128 b) {
    i128 r;
    if (__builtin_mul_overflow(a, b, &r))
        throw NumericalFailure("cyclotomic coefficient overflow (mul)");
    return r;
}

inline i128 checked_add(i128 a, i128 b) {
    i128 r;
    if (__builtin_add_overflow(a, b, &r))
        throw NumericalFailure("cyclotomic coefficient overflow (add)");
    return r;
}

// Per-conductor data: Phi_n and reduction rows x^k mod Phi_n for
// k in [phi, max(n, 2*phi)).  Computed once and shared.
struct CycloContext {
    int n;
    int phi;
    std::vector<int64_t> poly;               // Phi_n, monic, length phi+1
    std::vector<std::vector<int64_t>> rows;  // rows[k - phi]

    explicit CycloContext(int n_) : n(n_) {
        poly = compute_phi_poly(n);
        phi = int(poly.size()) - 1;
        int kmax = std::max(n, 2 * phi);
        rows.reserve(kmax - phi);
        // x^phi = -(lower part of Phi_n)
        std::vector<int64_t> row(phi);
        for (int j = 0; j < phi; ++j) row[j] = -poly[j];
        rows.push_back(row);
        for (int k = phi + 1; k < kmax; ++k) {
            std::vector<int64_t> next(phi, 0);
            const auto& prev = rows.back();
            // multiply by x, reduce the overflowed top coefficient
            int64_t top = prev[phi - 1];
            for (int j = phi - 1; j >= 1; --j) next[j] = prev[j - 1];
            next[0] = 0;
            if (top != 0) {
                for (int j = 0; j < phi; ++j) {
                    int64_t t;
                    if (__builtin_mul_overflow(top, rows[0][j], &t) ||
                        __builtin_add_overflow(next[j], t, &next[j]))
                        throw NumericalFailure("cyclotomic reduction row overflow");
                    (void)t;
                }
            }
            rows.push_back(std::move(next));
        }
    }

    static std::vector<int64_t> compute_phi_poly(int n) {
        // Phi_n = (x^n - 1) / prod_{d | n, d < n} Phi_d, exact division.
        if (n == 1) return {-1, 1};
        std::vector<int64_t> num(n + 1, 0);
        num[0] = -1;
        num[n] = 1;
        for (int d = 1; d < n; ++d) {
            if (n % d != 0) continue;
            auto div = compute_phi_poly(d);
            // long division num /= div (monic divisor)
            std::vector<int64_t> quot(num.size() - div.size() + 1, 0);
            std::vector<int64_t> rem = num;
            for (int i = int(quot.size()) - 1; i >= 0; --i) {
                int64_t c = rem[i + div.size() - 1];
                quot[i] = c;
                if (c == 0) continue;
                for (std::size_t j = 0; j < div.size(); ++j)
                    rem[i + j] -= c * div[j];
            }
            num = quot;
        }
        return num;
    }
};

const CycloContext& context(int n) {
    static std::mutex mu;
    static std::map<int, std::unique_ptr<CycloContext>> cache;
    std::lock_guard<std::mutex> lk(mu);
    auto it = cache.find(n);
    if (it == cache.end())
        it = cache.emplace(n, std::make_unique<CycloContext>(n)).first;
    return *it->second;
}

}  // namespace

const std::vector<int64_t>& cyclotomic_polynomial(int n) { return context(n).poly; }

CyclotomicElement::CyclotomicElement(int n) : n_(n) {
    if (n < 1) throw DomainError("cyclotomic: conductor must be positive");
    coeffs_.assign(context(n).phi, 0);
}

CyclotomicElement::CyclotomicElement(int n, const Int& value) : CyclotomicElement(n) {
    coeffs_[0] = i128(to_i64(value));
    if (i128_to_int(coeffs_[0]) != value)
        throw NumericalFailure("cyclotomic: rational value out of range");
}

CyclotomicElement CyclotomicElement::zeta_power(int n, int64_t e) {
    e %= n;
    if (e < 0) e += n;
    std::vector<i128> h(n, 0);
    h[std::size_t(e)] = 1;
    return from_exponent_histogram(n, h);
}

CyclotomicElement CyclotomicElement::from_exponent_histogram(int n,
                                                             std::span<const i128> h) {
    const auto& ctx = context(n);
    CyclotomicElement out(n);
    if (int(h.size()) > std::max(n, 2 * ctx.phi))
        throw DomainError("histogram longer than reduction table");
    for (int k = 0; k < int(h.size()); ++k) {
        if (h[k] == 0) continue;
        if (k < ctx.phi) {
            out.coeffs_[k] = checked_add(out.coeffs_[k], h[k]);
        } else {
            const auto& row = ctx.rows[k - ctx.phi];
            for (int j = 0; j < ctx.phi; ++j) {
                if (row[j] == 0) continue;
                out.coeffs_[j] =
                    checked_add(out.coeffs_[j], checked_mul(h[k], i128(row[j])));
            }
        }
    }
    return out;
}

CyclotomicElement& CyclotomicElement::operator+=(const CyclotomicElement& o) {
    if (n_ != o.n_) throw DomainError("cyclotomic: conductor mismatch");
    for (std::size_t i = 0; i < coeffs_.size(); ++i)
        coeffs_[i] = checked_add(coeffs_[i], o.coeffs_[i]);
    return *this;
}

CyclotomicElement& CyclotomicElement::operator-=(const CyclotomicElement& o) {
    if (n_ != o.n_) throw DomainError("cyclotomic: conductor mismatch");
    for (std::size_t i = 0; i < coeffs_.size(); ++i)
        coeffs_[i] = checked_add(coeffs_[i], -o.coeffs_[i]);
    return *this;
}

CyclotomicElement CyclotomicElement::operator+(const CyclotomicElement& o) const {
    CyclotomicElement r = *this;
    r += o;
    return r;
}

CyclotomicElement CyclotomicElement::operator-(const CyclotomicElement& o) const {
    CyclotomicElement r = *this;
    r -= o;
    return r;
}

CyclotomicElement CyclotomicElement::operator-() const {
    CyclotomicElement r = *this;
    for (auto& c : r.coeffs_) c = -c;
    return r;
}

CyclotomicElement CyclotomicElement::operator*(const CyclotomicElement& o) const {
    if (n_ != o.n_) throw DomainError("cyclotomic: conductor mismatch");
    const auto& ctx = context(n_);
    int phi = ctx.phi;
    std::vector<i128> conv(2 * phi - 1, 0);
    for (int i = 0; i < phi; ++i) {
        if (coeffs_[i] == 0) continue;
        for (int j = 0; j < phi; ++j) {
            if (o.coeffs_[j] == 0) continue;
            conv[i + j] = checked_add(conv[i + j], checked_mul(coeffs_[i], o.coeffs_[j]));
        }
    }
    return from_exponent_histogram(n_, conv);
}

CyclotomicElement CyclotomicElement::galois(int64_t t) const {
    t %= n_;
    if (t < 0) t += n_;
    if (std::gcd(int64_t(t), int64_t(n_)) != 1)
        throw DomainError("galois: exponent not coprime to conductor");
    std::vector<i128> h(n_, 0);
    for (int k = 0; k < degree(); ++k) {
        if (coeffs_[k] == 0) continue;
        h[std::size_t((t * k) % n_)] = checked_add(h[std::size_t((t * k) % n_)], coeffs_[k]);
    }
    return from_exponent_histogram(n_, h);
}

CyclotomicElement CyclotomicElement::conjugate() const { return galois(n_ - 1); }

bool CyclotomicElement::is_zero() const {
    for (auto c : coeffs_)
        if (c != 0) return false;
    return true;
}

std::optional<Int> CyclotomicElement::as_rational_integer() const {
    for (std::size_t i = 1; i < coeffs_.size(); ++i)
        if (coeffs_[i] != 0) return std::nullopt;
    return i128_to_int(coeffs_[0]);
}

std::complex<long double> CyclotomicElement::eval_complex() const {
    std::complex<long double> s{0, 0};
    const long double tau = 2.0L * std::acos(-1.0L);
    for (int k = 0; k < degree(); ++k) {
        if (coeffs_[k] == 0) continue;
        long double ang = tau * k / n_;
        long double c = static_cast<long double>(coeffs_[k]);
        s += c * std::complex<long double>(std::cos(ang), std::sin(ang));
    }
    return s;
}

}  // namespace cubelab
