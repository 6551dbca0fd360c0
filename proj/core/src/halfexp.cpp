#include "cubelab/halfexp.hpp"

#include <cmath>
#include <numeric>
#include <sstream>

#include "cubelab/factor.hpp"

namespace cubelab {

namespace {
// u_raw = s^2 * u with u squarefree; returns (s, u)
std::pair<int64_t, int64_t> split_square(int64_t u_raw) {
    if (u_raw <= 0) throw DomainError("radical must be positive");
    int64_t s = 1, u = 1, m = u_raw;
    for (int64_t p = 2; p * p <= m; ++p) {
        if (m % p) continue;
        int e = 0;
        while (m % p == 0) {
            m /= p;
            ++e;
        }
        for (int i = 0; i < e / 2; ++i) s *= p;
        if (e % 2) u *= p;
    }
    u *= m;
    return {s, u};
}
}  // namespace

HalfExp HalfExp::of_sqrt(const Rational& r, int64_t u_raw) {
    auto [s, u] = split_square(u_raw);
    HalfExp h;
    h.r_ = r * s;
    h.u_ = h.r_ == 0 ? 1 : u;
    return h;
}

HalfExp HalfExp::scaled_power(const Int& value, int64_t n, int half_power) {
    if (n <= 0) throw DomainError("scaled_power: n must be positive");
    if (half_power % 2 == 0)
        return HalfExp(Rational(value, pow_int(Int(n), unsigned(half_power / 2))));
    return of_sqrt(Rational(value, pow_int(Int(n), unsigned((half_power + 1) / 2))), n);
}

HalfExp HalfExp::operator+(const HalfExp& o) const {
    if (is_zero()) return o;
    if (o.is_zero()) return *this;
    if (u_ != o.u_)
        throw DomainError("HalfExp addition with mismatched radicals " +
                          std::to_string(u_) + " vs " + std::to_string(o.u_));
    HalfExp h;
    h.r_ = r_ + o.r_;
    h.u_ = h.r_ == 0 ? 1 : u_;
    return h;
}

HalfExp HalfExp::operator-(const HalfExp& o) const { return *this + (-o); }

HalfExp HalfExp::operator*(const HalfExp& o) const {
    if (is_zero() || o.is_zero()) return HalfExp();
    int64_t g = std::gcd(u_, o.u_);
    HalfExp h;
    h.r_ = r_ * o.r_ * g;
    h.u_ = (u_ / g) * (o.u_ / g);
    if (h.r_ == 0) h.u_ = 1;
    return h;
}

HalfExp HalfExp::operator-() const {
    HalfExp h = *this;
    h.r_ = -h.r_;
    return h;
}

HalfExp HalfExp::abs() const {
    HalfExp h = *this;
    if (h.r_ < 0) h.r_ = -h.r_;
    return h;
}

double HalfExp::to_double() const {
    return double(r_) * std::sqrt(double(u_));
}

std::string HalfExp::to_string() const {
    std::ostringstream os;
    os << r_;
    if (u_ != 1) os << "*sqrt(" << u_ << ")";
    return os.str();
}

SqrtCombo& SqrtCombo::operator+=(const HalfExp& h) {
    if (h.is_zero()) return *this;
    auto& slot = terms_[h.radical()];
    slot += h.rational_part();
    if (slot == 0) terms_.erase(h.radical());
    return *this;
}

SqrtCombo& SqrtCombo::operator+=(const SqrtCombo& o) {
    for (const auto& [u, r] : o.terms_) {
        auto& slot = terms_[u];
        slot += r;
        if (slot == 0) terms_.erase(u);
    }
    return *this;
}

SqrtCombo SqrtCombo::operator*(const SqrtCombo& o) const {
    SqrtCombo out;
    for (const auto& [u1, r1] : terms_)
        for (const auto& [u2, r2] : o.terms_) {
            int64_t g = std::gcd(u1, u2);
            out += HalfExp::of_sqrt(r1 * r2 * g, (u1 / g) * (u2 / g));
        }
    return out;
}

double SqrtCombo::to_double() const {
    double s = 0;
    for (const auto& [u, r] : terms_) s += double(r) * std::sqrt(double(u));
    return s;
}

}  // namespace cubelab
