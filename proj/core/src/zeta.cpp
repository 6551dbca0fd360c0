#include "cubelab/zeta.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "cubelab/cache.hpp"
#include "cubelab/factor.hpp"
#include "cubelab/finite_field.hpp"
#include "cubelab/parallel.hpp"

namespace cubelab {

int middle_dim(int m) {
    Int num = pow_int(Int(2), unsigned(m - 1)) + ((m - 3) % 2 == 0 ? 2 : -2);
    if (num % 3 != 0) throw DataInconsistent("middle_dim: non-integral");
    return int(num / 3);
}

namespace {

// ---------------------------------------------------------------------------
// Character-transform engine over the group ring Z[Z/p]: vectors of length p
// holding exponent histograms of powers of zeta_p.  The rational value of a
// vector v is v[0] - v[1] once v[1] = ... = v[p-1].
// ---------------------------------------------------------------------------

struct CharSumTables {
    int64_t p, q;
    int r;
    std::vector<int32_t> T;        // [rep][b][e], centered histograms
    std::vector<int32_t> kmap;     // b -> frequency index via Tr(b * e_i)
    int reps;
    const int32_t* row(int rep, int64_t b) const {
        return &T[(std::size_t(rep) * q + std::size_t(b)) * p];
    }
};

CharSumTables build_char_tables(const FiniteField& K) {
    CharSumTables tb;
    tb.p = K.p();
    tb.q = K.q();
    tb.r = K.r();
    int64_t p = tb.p, q = tb.q;
    int r = tb.r;
    tb.reps = int(K.cube_reps().size());

    // kmap: Tr(b x) = sum_i digits(x)_i * Tr(b e_i) with e_i the power basis
    tb.kmap.assign(std::size_t(q), 0);
    std::vector<int64_t> basis(r);
    {
        int64_t enc = 1;
        for (int i = 0; i < r; ++i) {
            basis[i] = enc;
            enc *= p;
        }
    }
    for (int64_t b = 0; b < q; ++b) {
        int64_t k = 0;
        for (int i = r - 1; i >= 0; --i) k = k * p + K.trace(K.mul(b, basis[i]));
        tb.kmap[std::size_t(b)] = int32_t(k);
    }

    tb.T.assign(std::size_t(tb.reps) * q * p, 0);
    for (int rep = 0; rep < tb.reps; ++rep) {
        int64_t a0 = K.cube_reps()[std::size_t(rep)];
        // A[x][e] = 1 at e = Tr(a0 x^3)
        std::vector<int32_t> A(std::size_t(q) * p, 0);
        for (int64_t x = 0; x < q; ++x)
            A[std::size_t(x) * p + std::size_t(K.trace(K.mul(a0, K.cube(x))))] = 1;
        // DFT over (Z/p)^r: axis by axis, new[k_d] = sum_j shift(old[j], k_d * j)
        std::vector<int32_t> fiber(std::size_t(p) * p, 0);
        int64_t stride = 1;
        for (int d = 0; d < r; ++d) {
            for (int64_t base = 0; base < q; ++base) {
                if ((base / stride) % p != 0) continue;
                for (int64_t j = 0; j < p; ++j) {
                    const int32_t* src = &A[std::size_t(base + j * stride) * p];
                    for (int64_t e = 0; e < p; ++e) fiber[std::size_t(j) * p + std::size_t(e)] = src[e];
                }
                for (int64_t k = 0; k < p; ++k) {
                    int32_t* dst = &A[std::size_t(base + k * stride) * p];
                    std::fill(dst, dst + p, 0);
                    for (int64_t j = 0; j < p; ++j) {
                        int64_t shift = (k * j) % p;
                        const int32_t* src = &fiber[std::size_t(j) * p];
                        for (int64_t e = 0; e < p; ++e) {
                            int64_t e2 = e + shift;
                            if (e2 >= p) e2 -= p;
                            dst[e2] += src[e];
                        }
                    }
                }
            }
            stride *= p;
        }
        // center: subtract q/p so products stay small (value unchanged)
        int32_t mean = int32_t(q / p);
        int32_t* out = &tb.T[std::size_t(rep) * q * p];
        for (std::size_t i = 0; i < std::size_t(q) * p; ++i) out[i] = A[i] - mean;
    }
    return tb;
}

Int section_affine_count_charsum(const DiagonalCubicForm& F, const CVector& c,
                                 const FiniteField& K) {
    int64_t p = K.p(), q = K.q();
    int m = F.m();
    CharSumTables tb = build_char_tables(K);

    std::vector<int64_t> cf(m), ff(m);
    for (int i = 0; i < m; ++i) {
        cf[i] = K.from_int(c[i]);
        ff[i] = K.from_int(F.coeff(i));
        if (ff[i] == 0) throw BadPrime("p divides a form coefficient");
    }

    int workers = std::max(1, thread_count());
    std::vector<std::vector<i128>> partial(static_cast<std::size_t>(workers),
                                           std::vector<i128>(static_cast<std::size_t>(p), 0));
    // units a = exp(L), L = 0..q-2
    parallel_chunks(std::size_t(q - 1), [&](int chunk, std::size_t lo, std::size_t hi) {
        std::vector<i128> acc(static_cast<std::size_t>(p), 0), prod(static_cast<std::size_t>(p), 0), next(static_cast<std::size_t>(p), 0);
        std::vector<int> cls(static_cast<std::size_t>(m));
        std::vector<int64_t> w(static_cast<std::size_t>(m));
        for (std::size_t Li = lo; Li < hi; ++Li) {
            int64_t a = K.pow(K.generator(), int64_t(Li));
            for (int j = 0; j < m; ++j) {
                auto dec = K.cube_decompose(K.mul(a, ff[j]));
                cls[std::size_t(j)] = dec.cls;
                // v_j = b * c_j / lambda
                w[std::size_t(j)] = cf[j] == 0 ? 0 : K.mul(cf[j], K.inv(dec.lambda));
            }
            for (int64_t b = 0; b < q; ++b) {
                const int32_t* first =
                    tb.row(cls[0], tb.kmap[std::size_t(w[0] == 0 ? 0 : K.mul(b, w[0]))]);
                for (int64_t e = 0; e < p; ++e) prod[std::size_t(e)] = first[e];
                for (int j = 1; j < m; ++j) {
                    const int32_t* row =
                        tb.row(cls[std::size_t(j)], tb.kmap[std::size_t(w[std::size_t(j)] == 0 ? 0 : K.mul(b, w[std::size_t(j)]))]);
                    std::fill(next.begin(), next.end(), 0);
                    for (int64_t e1 = 0; e1 < p; ++e1) {
                        i128 v = prod[std::size_t(e1)];
                        if (v == 0) continue;
                        for (int64_t e2 = 0; e2 < p; ++e2) {
                            int64_t e = e1 + e2;
                            if (e >= p) e -= p;
                            next[std::size_t(e)] += v * row[e2];
                        }
                    }
                    std::swap(prod, next);
                }
                for (int64_t e = 0; e < p; ++e) acc[std::size_t(e)] += prod[std::size_t(e)];
            }
        }
        for (int64_t e = 0; e < p; ++e) partial[std::size_t(chunk)][std::size_t(e)] += acc[std::size_t(e)];
    });

    std::vector<i128> total(static_cast<std::size_t>(p), 0);
    for (const auto& part : partial)
        for (int64_t e = 0; e < p; ++e) total[std::size_t(e)] += part[std::size_t(e)];
    for (int64_t e = 2; e < p; ++e)
        if (total[std::size_t(e)] != total[1])
            throw DataInconsistent("character sum did not reduce to a rational integer");
    Int value = i128_to_int(total[0]) - i128_to_int(total[1]);
    // affine * q^2 = q^m + value
    Int q2 = Int(q) * q;
    Int affine_num = pow_int(Int(q), unsigned(m)) + value;
    if (affine_num % q2 != 0) throw DataInconsistent("affine count not divisible by q^2");
    return affine_num / q2;
}

std::string count_key(const DiagonalCubicForm& F, const CVector& c, int64_t p, int r) {
    std::ostringstream os;
    os << "F=";
    for (int64_t v : F.coeffs()) os << v << ",";
    os << ";c=";
    for (int64_t v : c) os << v << ",";
    os << ";p=" << p << ";r=" << r;
    return os.str();
}

constexpr uint32_t kCountCacheVersion = 1;

}  // namespace

Int count_section_ext(const DiagonalCubicForm& F, const CVector& c, int64_t p, int r,
                      const ZetaOptions& opts) {
    if (int(c.size()) != F.m()) throw DomainError("vector length mismatch");
    Int bad = Int(3) * F.coeff_product();
    if (bad % p == 0) throw BadPrime("p divides 3 F_1...F_m");
    bool some_unit = false;
    for (int64_t ci : c)
        if (ci % p != 0) some_unit = true;
    if (!some_unit) throw BadPrime("all c_i divisible by p");

    i128 q = 1;
    for (int i = 0; i < r; ++i) q *= p;
    if (q * q > opts.cell_bound) throw ResourceLimit("count_section_ext: q^2 over bound");

    DiskCache& cache = DiskCache::global();
    std::string key = count_key(F, c, p, r);
    if (opts.use_cache && cache.enabled()) {
        if (auto bytes = cache.load("section_counts", key, kCountCacheVersion)) {
            std::string s(bytes->begin(), bytes->end());
            return Int(s);
        }
    }

    const FiniteField& K = finite_field(p, r);
    Int affine = (K.q() <= opts.pivot_threshold)
                     ? section_affine_count(F, c, p, r)
                     : section_affine_count_charsum(F, c, K);
    if ((affine - 1) % (K.q() - 1) != 0)
        throw DataInconsistent("section count not compatible with cone");
    Int rho = (affine - 1) / (K.q() - 1);

    if (opts.use_cache && cache.enabled()) {
        std::string s = rho.str();
        cache.store("section_counts", key, kCountCacheVersion,
                    std::vector<uint8_t>(s.begin(), s.end()));
    }
    return rho;
}

SectionZetaData frobenius_charpoly(const DiagonalCubicForm& F, const CVector& c,
                                   int64_t p, int depth, const ZetaOptions& opts) {
    int m = F.m();
    if (m != 4 && m != 6)
        throw DomainError("frobenius_charpoly: assembly supported for m in {4, 6}");
    Int delta = disc_delta(F, c, DiscNormalization::kDefinition);
    if (delta == 0) throw SingularSection("singular section");
    if (delta % p == 0 || (Int(3) * F.coeff_product()) % p == 0)
        throw BadPrime("bad reduction at p");

    SectionZetaData data;
    data.form = F.coeffs();
    data.c = c;
    data.p = p;
    data.m = m;
    data.dim = middle_dim(m);
    int half = data.dim / 2;
    int mstar = F.m_star();
    int beta_halfpow = mstar - 1;  // beta_j = alpha_j / p^{(m*-1)/2}, integer for even m

    int R = std::min(depth, half);
    for (int r = 1; r <= depth; ++r) {
        data.counts.push_back(count_section_ext(F, c, p, r, opts));
    }
    Int qr = 1;
    for (int r = 1; r <= R; ++r) {
        qr *= p;
        Int fixed = (pow_int(Int(qr), unsigned(m - 2)) - 1) / (qr - 1);
        Int diff = (mstar % 2 == 1) ? Int(fixed - data.counts[std::size_t(r - 1)])
                                    : Int(data.counts[std::size_t(r - 1)] - fixed);
        Int denom = pow_int(Int(qr), unsigned(beta_halfpow / 2));
        if (diff % denom != 0) throw DataInconsistent("trace not divisible by p^{r(m*-1)/2}");
        data.traces.push_back(diff / denom);
    }

    // Newton: k c_k = -sum_{r<=k} t_r c_{k-r}
    data.coeffs.assign(std::size_t(R) + 1, 0);
    data.coeffs[0] = 1;
    for (int k = 1; k <= R; ++k) {
        Int s = 0;
        for (int r = 1; r <= k; ++r) s += data.traces[std::size_t(r - 1)] * data.coeffs[std::size_t(k - r)];
        if (s % k != 0) throw DataInconsistent("Newton coefficient not integral");
        data.coeffs[std::size_t(k)] = -s / k;
    }

    if (R == half) {
        data.coeffs.resize(std::size_t(data.dim) + 1, 0);
        Int pi = 1;
        for (int i = 1; i <= half; ++i) {
            pi *= p;
            data.coeffs[std::size_t(half + i)] = pi * data.coeffs[std::size_t(half - i)];
        }
        data.complete = true;
        // verify any overdetermined counts
        for (int r = half + 1; r <= depth && r <= int(data.counts.size()); ++r) {
            if (predicted_count(data, r) != data.counts[std::size_t(r - 1)])
                throw DataInconsistent("functional equation contradicts computed count");
        }
    }
    return data;
}

std::vector<std::pair<IntPolynomial, int>> charpoly_factor(const SectionZetaData& data) {
    if (!data.complete) throw DomainError("charpoly_factor: charpoly incomplete");
    auto z = factor_over_z(data.charpoly());
    if (z.content != 1) throw DataInconsistent("charpoly content should be 1");
    return z.factors;
}

LocalFactorCoeffs local_factor_coeffs(const SectionZetaData& data, int L) {
    if (!data.complete) throw DomainError("local_factor_coeffs: charpoly incomplete");
    LocalFactorCoeffs out;
    out.p = data.p;
    // e_k(alpha~) = (-1)^k c_k / p^{k/2}; lambda~(p^l) = h_l(alpha~)
    std::vector<HalfExp> e(std::size_t(data.dim) + 1);
    for (int k = 0; k <= data.dim; ++k) {
        Int v = (k % 2 == 0) ? data.coeffs[std::size_t(k)] : -data.coeffs[std::size_t(k)];
        e[std::size_t(k)] = HalfExp::scaled_power(v, data.p, k);
    }
    out.lambda.assign(std::size_t(L) + 1, HalfExp());
    out.lambda[0] = HalfExp(Rational(1));
    for (int l = 1; l <= L; ++l) {
        HalfExp h;
        for (int i = 1; i <= std::min(l, data.dim); ++i) {
            HalfExp term = e[std::size_t(i)] * out.lambda[std::size_t(l - i)];
            h = (i % 2 == 1) ? h + term : h - term;
        }
        out.lambda[std::size_t(l)] = h;
    }
    return out;
}

Int predicted_count(const SectionZetaData& data, int r) {
    if (!data.complete) throw DomainError("predicted_count: charpoly incomplete");
    // power sums from coefficients: p_k = -k c_k - sum_{i<k} c_i p_{k-i}
    std::vector<Int> ps(std::size_t(r) + 1, 0);
    for (int k = 1; k <= r; ++k) {
        Int s = 0;
        for (int i = 1; i < k; ++i)
            if (i <= data.dim) s += data.coeffs[std::size_t(i)] * ps[std::size_t(k - i)];
        Int ck = k <= data.dim ? data.coeffs[std::size_t(k)] : Int(0);
        ps[std::size_t(k)] = -Int(k) * ck - s;
    }
    int mstar = data.m - 3;
    Int qr = pow_int(Int(data.p), unsigned(r));
    Int fixed = (pow_int(qr, unsigned(data.m - 2)) - 1) / (qr - 1);
    Int scale = pow_int(qr, unsigned((mstar - 1) / 2));
    Int diff = ps[std::size_t(r)] * scale;
    return (mstar % 2 == 1) ? Int(fixed - diff) : Int(fixed + diff);
}

WeilReport weil_report_poly(const IntPolynomial& poly, int64_t p) {
    WeilReport rep;
    int d = poly.degree();
    int half = d / 2;
    rep.funceq_exact = true;
    for (int i = 1; i <= half; ++i) {
        Int residual = poly.coeff(half + i) - pow_int(Int(p), unsigned(i)) * poly.coeff(half - i);
        rep.funceq_residuals.push_back(residual);
        if (residual != 0) rep.funceq_exact = false;
    }
    // roots of P by Durand-Kerner on the monic normalization; reciprocal
    // roots beta_j = 1/t_j
    std::vector<std::complex<long double>> a(static_cast<std::size_t>(d) + 1);
    long double lead = static_cast<long double>(double(poly.coeff(d)));
    for (int k = 0; k <= d; ++k)
        a[std::size_t(k)] = static_cast<long double>(double(poly.coeff(k))) / lead;
    std::vector<std::complex<long double>> z(static_cast<std::size_t>(d));
    for (int j = 0; j < d; ++j)
        z[std::size_t(j)] = std::polar(0.4L + 0.05L * j, 0.9L * (j + 1));
    for (int it = 0; it < 500; ++it) {
        long double moved = 0;
        for (int j = 0; j < d; ++j) {
            std::complex<long double> f = a[std::size_t(d)];
            for (int k = d - 1; k >= 0; --k) f = f * z[std::size_t(j)] + a[std::size_t(k)];
            std::complex<long double> denom = 1;
            for (int k = 0; k < d; ++k)
                if (k != j) denom *= (z[std::size_t(j)] - z[std::size_t(k)]);
            std::complex<long double> step = f / denom;
            z[std::size_t(j)] -= step;
            moved = std::max(moved, std::abs(step));
        }
        if (moved < 1e-30L) break;
    }
    double sqrtp = std::sqrt(double(p));
    for (int j = 0; j < d; ++j) {
        std::complex<long double> beta = 1.0L / z[std::size_t(j)];
        rep.reciprocal_roots.emplace_back(double(beta.real()), double(beta.imag()));
        rep.max_modulus_deviation =
            std::max(rep.max_modulus_deviation, std::abs(double(std::abs(beta)) - sqrtp));
    }
    return rep;
}

WeilReport weil_report(const SectionZetaData& data) {
    if (!data.complete) throw DomainError("weil_report: charpoly incomplete");
    return weil_report_poly(data.charpoly(), data.p);
}

}  // namespace cubelab
