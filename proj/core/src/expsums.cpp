#include "cubelab/expsums.hpp"

#include <algorithm>
#include <cstring>
#include <map>

#include "cubelab/factor.hpp"
#include "cubelab/finite_field.hpp"
#include "cubelab/parallel.hpp"

namespace cubelab {

namespace {

std::vector<i128> cyclic_convolve(const std::vector<i128>& a, const std::vector<int64_t>& b) {
    std::size_t q = a.size();
    std::vector<i128> out(q, 0);
    for (std::size_t i = 0; i < q; ++i) {
        if (a[i] == 0) continue;
        i128 ai = a[i];
        for (std::size_t j = 0; j < q; ++j) {
            if (b[j] == 0) continue;
            std::size_t k = i + j;
            if (k >= q) k -= q;
            out[k] += ai * b[j];
        }
    }
    return out;
}

}  // namespace

GTable::GTable(int64_t n) : n_(n) {
    if (n < 1) throw DomainError("GTable: modulus must be positive");
}

std::vector<int64_t> GTable::histogram(int64_t a, int64_t c) const {
    int64_t n = n_;
    a %= n;
    c %= n;
    if (a < 0) a += n;
    if (c < 0) c += n;
    std::vector<int64_t> h(n, 0);
    for (int64_t x = 0; x < n; ++x) {
        i128 e = (i128(a) * x % n * x % n * x + i128(c) * x) % n;
        h[std::size_t(e)]++;
    }
    return h;
}

const CyclotomicElement& GTable::get(int64_t a, int64_t c) {
    int64_t n = n_;
    a %= n;
    c %= n;
    if (a < 0) a += n;
    if (c < 0) c += n;
    uint64_t key = uint64_t(a) * uint64_t(n) + uint64_t(c);
    {
        std::lock_guard<std::mutex> lk(mu_);
        auto it = entries_.find(key);
        if (it != entries_.end()) return *it->second;
    }
    auto h64 = histogram(a, c);
    std::vector<i128> h(h64.begin(), h64.end());
    auto elem = std::make_unique<CyclotomicElement>(
        CyclotomicElement::from_exponent_histogram(int(n), h));
    std::lock_guard<std::mutex> lk(mu_);
    auto [it, inserted] = entries_.emplace(key, std::move(elem));
    return *it->second;
}

std::vector<uint8_t> GTable::serialize() {
    int64_t n = n_;
    int64_t phi = euler_phi(n);
    std::vector<uint8_t> out;
    auto push64 = [&](int64_t v) {
        for (int i = 0; i < 8; ++i) out.push_back(uint8_t((uint64_t(v) >> (8 * i)) & 0xff));
    };
    out.insert(out.end(), {'C', 'L', 'G', 'T'});
    push64(1);  // version
    push64(n);
    push64(phi);
    for (int64_t a = 0; a < n; ++a)
        for (int64_t c = 0; c < n; ++c) {
            const auto& e = get(a, c);
            for (i128 v : e.coeffs()) {
                if (v > INT64_MAX || v < INT64_MIN)
                    throw ResourceLimit("GTable entry too large to serialize");
                push64(int64_t(v));
            }
        }
    return out;
}

std::unique_ptr<GTable> GTable::deserialize(const std::vector<uint8_t>& bytes) {
    std::size_t pos = 0;
    auto read64 = [&]() {
        uint64_t v = 0;
        for (int i = 0; i < 8; ++i) v |= uint64_t(bytes.at(pos++)) << (8 * i);
        return int64_t(v);
    };
    if (bytes.size() < 4 || std::memcmp(bytes.data(), "CLGT", 4) != 0)
        throw DataInconsistent("GTable: bad magic");
    pos = 4;
    int64_t version = read64();
    if (version != 1) throw DataInconsistent("GTable: unsupported version");
    int64_t n = read64();
    int64_t phi = read64();
    auto t = std::make_unique<GTable>(n);
    for (int64_t a = 0; a < n; ++a)
        for (int64_t c = 0; c < n; ++c) {
            std::vector<i128> h(static_cast<std::size_t>(n), 0);
            for (int64_t k = 0; k < phi; ++k) h[static_cast<std::size_t>(k)] = read64();
            auto elem = std::make_unique<CyclotomicElement>(
                CyclotomicElement::from_exponent_histogram(int(n), h));
            t->entries_.emplace(uint64_t(a) * uint64_t(n) + uint64_t(c), std::move(elem));
        }
    return t;
}

GTable& gtable(int64_t n) {
    static std::mutex mu;
    static std::map<int64_t, std::unique_ptr<GTable>> cache;
    std::lock_guard<std::mutex> lk(mu);
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.emplace(n, std::make_unique<GTable>(n)).first;
    return *it->second;
}

ExpSumValue expsum_prime_power(const DiagonalCubicForm& F, const CVector& c, int64_t p,
                               int l, const ExpSumOptions& opts) {
    if (l < 1) throw DomainError("expsum_prime_power: l >= 1 required");
    int64_t q = 1;
    for (int i = 0; i < l; ++i) q *= p;
    if (q > opts.prime_power_bound)
        throw ResourceLimit("expsum_prime_power: q exceeds configured bound");
    int m = F.m();
    if (int(c.size()) != m) throw DomainError("vector length mismatch");

    GTable& table = gtable(q);
    std::vector<int64_t> units;
    for (int64_t a = 1; a < q; ++a)
        if (a % p != 0) units.push_back(a);
    if (q == 1) units = {0};  // degenerate; unused

    std::size_t chunks = opts.parallel ? std::min<std::size_t>(thread_count(), units.size()) : 1;
    std::vector<std::vector<i128>> partial(std::max<std::size_t>(chunks, 1),
                                           std::vector<i128>(q, 0));
    auto work = [&](int chunk, std::size_t lo, std::size_t hi) {
        auto& total = partial[std::size_t(chunk)];
        for (std::size_t ai = lo; ai < hi; ++ai) {
            int64_t a = units[ai];
            std::vector<i128> conv;
            for (int i = 0; i < m; ++i) {
                int64_t u = int64_t((i128(a) * F.coeff(i)) % q);
                auto h = table.histogram(u, c[i] % q);
                if (i == 0) conv.assign(h.begin(), h.end());
                else conv = cyclic_convolve(conv, h);
            }
            for (int64_t e = 0; e < q; ++e) total[std::size_t(e)] += conv[std::size_t(e)];
        }
    };
    if (chunks <= 1) work(0, 0, units.size());
    else parallel_chunks(units.size(), work);

    std::vector<i128> total(q, 0);
    for (const auto& part : partial)
        for (int64_t e = 0; e < q; ++e) total[std::size_t(e)] += part[std::size_t(e)];

    auto elem = CyclotomicElement::from_exponent_histogram(int(q), total);
    auto val = elem.as_rational_integer();
    if (!val) throw DataInconsistent("expsum did not reduce to a rational integer");
    ExpSumValue out;
    out.n = q;
    out.value = *val;
    out.normalized = HalfExp::scaled_power(out.value, q, m + 1);
    return out;
}

ExpSumValue expsum(const DiagonalCubicForm& F, const CVector& c, int64_t n,
                   const ExpSumOptions& opts) {
    if (n < 1) throw DomainError("expsum: n >= 1 required");
    ExpSumValue out;
    out.n = n;
    if (n == 1) return out;
    out.value = 1;
    out.normalized = HalfExp(Rational(1));
    for (const auto& [p, l, q] : prime_power_split(n)) {
        (void)q;
        ExpSumValue v = expsum_prime_power(F, c, p, l, opts);
        out.value *= v.value;
        out.normalized = out.normalized * v.normalized;
    }
    return out;
}

// ---------------------------------------------------------------------------
// Point counts
// ---------------------------------------------------------------------------

namespace {

// m-fold additive-group convolution evaluated as a full histogram.
std::vector<Int> fold_distributions(const FiniteField& K,
                                    const std::vector<std::vector<int64_t>>& dists) {
    int64_t q = K.q();
    std::vector<Int> acc(q, 0);
    for (int64_t s = 0; s < q; ++s) acc[std::size_t(s)] = dists[0][std::size_t(s)];
    for (std::size_t i = 1; i < dists.size(); ++i) {
        std::vector<Int> next(q, 0);
        for (int64_t s = 0; s < q; ++s) {
            if (acc[std::size_t(s)] == 0) continue;
            for (int64_t t = 0; t < q; ++t) {
                if (dists[i][std::size_t(t)] == 0) continue;
                next[std::size_t(K.add(s, t))] += acc[std::size_t(s)] * dists[i][std::size_t(t)];
            }
        }
        acc = std::move(next);
    }
    return acc;
}

}  // namespace

CountErrors count_hypersurface(const DiagonalCubicForm& F, int64_t p, int r) {
    const FiniteField& K = finite_field(p, r);
    int64_t q = K.q();
    if (q > 65536) throw ResourceLimit("count_hypersurface: q too large");
    int m = F.m();
    std::vector<std::vector<int64_t>> dists(m, std::vector<int64_t>(q, 0));
    for (int i = 0; i < m; ++i) {
        int64_t fi = K.from_int(F.coeff(i));
        for (int64_t x = 0; x < q; ++x) dists[i][std::size_t(K.mul(fi, K.cube(x)))]++;
    }
    std::vector<Int> hist = fold_distributions(K, dists);
    Int affine = hist[0];
    if ((affine - 1) % (q - 1) != 0)
        throw DataInconsistent("hypersurface affine count not compatible with cone");
    CountErrors ce;
    ce.q = q;
    ce.rho = (affine - 1) / (q - 1);
    Int fixed = (pow_int(Int(q), unsigned(m - 1)) - 1) / (q - 1);
    ce.E = ce.rho - fixed;
    ce.E_tilde = HalfExp::scaled_power(ce.E, q, 1 + F.m_star());
    return ce;
}

Int section_affine_count(const DiagonalCubicForm& F, const CVector& c, int64_t p, int r,
                         int pivot) {
    const FiniteField& K = finite_field(p, r);
    int64_t q = K.q();
    int m = F.m();
    if (int(c.size()) != m) throw DomainError("vector length mismatch");
    if (i128(q) * q > (i128(1) << 32))
        throw ResourceLimit("section count: q^2 histogram exceeds bound");

    std::vector<int64_t> cf(m);
    for (int i = 0; i < m; ++i) cf[i] = K.from_int(c[i]);
    int i0 = pivot;
    if (i0 < 0) {
        for (int i = 0; i < m; ++i)
            if (cf[i] != 0) {
                i0 = i;
                break;
            }
    }
    if (i0 < 0 || i0 >= m || cf[i0] == 0)
        throw SectionDegenerates("all c_i vanish modulo p (or bad pivot)");
    int i1 = i0 == 0 ? 1 : 0;

    // joint histogram over (s, t) = (sum F_j x_j^3, sum c_j x_j), j != i0, i1
    std::size_t cells = std::size_t(q) * std::size_t(q);
    std::vector<int64_t> H(cells, 0), Hn;
    bool first = true;
    // per-x offset tables: srow[x][s] = s - F_j x^3, scol[x][t] = t - c_j x
    std::vector<int32_t> srow, scol;
    for (int j = 0; j < m; ++j) {
        if (j == i0 || j == i1) continue;
        int64_t fj = K.from_int(F.coeff(j));
        if (first) {
            for (int64_t x = 0; x < q; ++x)
                H[std::size_t(K.mul(fj, K.cube(x))) * q + std::size_t(K.mul(cf[j], x))]++;
            first = false;
            continue;
        }
        srow.assign(cells, 0);
        scol.assign(cells, 0);
        for (int64_t x = 0; x < q; ++x) {
            int64_t u = K.mul(fj, K.cube(x)), v = K.mul(cf[j], x);
            int32_t* sr = &srow[std::size_t(x) * q];
            int32_t* sc = &scol[std::size_t(x) * q];
            for (int64_t s = 0; s < q; ++s) sr[s] = int32_t(K.sub(s, u));
            for (int64_t t = 0; t < q; ++t) sc[t] = int32_t(K.sub(t, v));
        }
        Hn.assign(cells, 0);
        parallel_chunks(std::size_t(q), [&](int, std::size_t lo, std::size_t hi) {
            for (std::size_t s = lo; s < hi; ++s) {
                int64_t* dst = &Hn[s * q];
                for (int64_t x = 0; x < q; ++x) {
                    const int64_t* src = &H[std::size_t(srow[std::size_t(x) * q + s]) * q];
                    const int32_t* sc = &scol[std::size_t(x) * q];
                    for (int64_t t = 0; t < q; ++t) dst[t] += src[std::size_t(sc[t])];
                }
            }
        });
        std::swap(H, Hn);
    }
    if (first)
        throw DataInconsistent("histogram build fell through");

    // root-count pass: for fixed t, tabulate y -> F_{i1} y^3 - D (t + c_{i1} y)^3
    int64_t lambda = K.inv(cf[i0]);
    int64_t D = K.mul(K.from_int(F.coeff(i0)), K.pow(lambda, 3));
    int64_t f1 = K.from_int(F.coeff(i1)), c1 = cf[i1];
    std::vector<i128> partial_sums(std::size_t(thread_count()), 0);
    parallel_chunks(std::size_t(q), [&](int chunk, std::size_t lo, std::size_t hi) {
        std::vector<int64_t> R(q, 0);
        i128 local = 0;
        for (std::size_t t = lo; t < hi; ++t) {
            std::fill(R.begin(), R.end(), 0);
            for (int64_t y = 0; y < q; ++y) {
                int64_t inner = K.add(int64_t(t), K.mul(c1, y));
                int64_t val = K.sub(K.mul(f1, K.cube(y)), K.mul(D, K.cube(inner)));
                R[std::size_t(val)]++;
            }
            for (int64_t s = 0; s < q; ++s) {
                int64_t h = H[std::size_t(s) * q + t];
                if (h == 0) continue;
                local += i128(h) * R[std::size_t(K.neg(s))];
            }
        }
        partial_sums[std::size_t(chunk)] += local;
    });
    i128 affine = 0;
    for (i128 v : partial_sums) affine += v;
    return i128_to_int(affine);
}

CountErrors count_section(const DiagonalCubicForm& F, const CVector& c, int64_t p, int r) {
    Int affine = section_affine_count(F, c, p, r);
    int64_t q = finite_field(p, r).q();
    if ((affine - 1) % (q - 1) != 0)
        throw DataInconsistent("section affine count not compatible with cone");
    CountErrors ce;
    ce.q = q;
    ce.rho_c = (affine - 1) / (q - 1);
    Int fixed = (pow_int(Int(q), unsigned(F.m() - 2)) - 1) / (q - 1);
    ce.E_c = ce.rho_c - fixed;
    ce.E_c_tilde = HalfExp::scaled_power(ce.E_c, q, F.m_star());
    return ce;
}

Int expsum_prime_power_via_counts(const DiagonalCubicForm& F, const CVector& c, int64_t p,
                                  int l, const Int& delta_def, const ExpSumOptions& opts) {
    if (l == 1) {
        Int E = count_hypersurface(F, p, 1).E;
        bool p_divides_c = true;
        for (int64_t ci : c)
            if (ci % p != 0) p_divides_c = false;
        if (p_divides_c) return (Int(p) * p - p) * E;
        Int Ec = count_section(F, c, p, 1).E_c;
        return Int(p) * p * Ec - Int(p) * E;
    }
    if (delta_def != 0 && delta_def % p != 0) return 0;  // smooth section: S_c(p^l) = 0
    return expsum_prime_power(F, c, p, l, opts).value;
}

}  // namespace cubelab
