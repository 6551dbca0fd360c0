#include "cubelab/dirichlet.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "cubelab/factor.hpp"
#include "cubelab/zeta.hpp"

namespace cubelab {

namespace {

// prime powers p^k <= N with exponent, grouped by prime
std::map<int64_t, std::vector<int64_t>> prime_powers_by_prime(int64_t N) {
    std::map<int64_t, std::vector<int64_t>> out;
    for (int64_t p : primes_up_to(N)) {
        std::vector<int64_t> pows;
        for (int64_t q = p; q <= N; q *= p) {
            pows.push_back(q);
            if (q > N / p) break;
        }
        out.emplace(p, std::move(pows));
    }
    return out;
}

// assemble a multiplicative sequence from prime-power values
CoefficientSequence assemble_multiplicative(
    int64_t N, const std::map<int64_t, std::map<int64_t, HalfExp>>& pp_values,
    const std::string& tag) {
    CoefficientSequence seq;
    seq.N = N;
    seq.tag = tag;
    seq.values.assign(std::size_t(N), HalfExp(Rational(1)));
    for (int64_t n = 1; n <= N; ++n) {
        HalfExp v{Rational(1)};
        for (const auto& [p, k, q] : prime_power_split(n)) {
            (void)k;
            v = v * pp_values.at(p).at(q);
        }
        seq.at(n) = v;
    }
    return seq;
}

}  // namespace

CoefficientSequence sequence_stilde(const DiagonalCubicForm& F, const CVector& c,
                                    int64_t N, const ExpSumOptions& opts) {
    std::map<int64_t, std::map<int64_t, HalfExp>> pp;
    for (const auto& [p, pows] : prime_powers_by_prime(N)) {
        for (int64_t q : pows) {
            int l = 0;
            for (int64_t t = q; t > 1; t /= p) ++l;
            pp[p][q] = expsum_prime_power(F, c, p, l, opts).normalized;
        }
    }
    return assemble_multiplicative(N, pp, "stilde");
}

CoefficientSequence sequence_b(int choice, const DiagonalCubicForm& F, const CVector& c,
                               int64_t N, const ExpSumOptions& opts) {
    Int delta = disc_delta(F, c, DiscNormalization::kDefinition);
    if (delta == 0) throw SingularSection("sequence_b: singular c");

    if (choice == 1 || choice == 2) {
        CoefficientSequence seq = sequence_stilde(F, c, N, opts);
        if (choice == 2) {
            for (int64_t n = 1; n <= N; ++n) {
                if (boost::multiprecision::gcd(Int(n), delta) != 1) seq.at(n) = HalfExp();
            }
            seq.tag = "b-choice-2";
        } else {
            seq.tag = "b-choice-1";
        }
        return seq;
    }
    if (choice != 3) throw DomainError("sequence_b: choice must be 1, 2 or 3");
    if (F.m() != 4 && F.m() != 6)
        throw DataUnavailable("choice 3 requires zeta data (m in {4, 6})");

    Int bad_ambient = Int(3) * F.coeff_product();
    std::map<int64_t, std::map<int64_t, HalfExp>> pp;
    for (const auto& [p, pows] : prime_powers_by_prime(N)) {
        bool good = delta % p != 0 && bad_ambient % p != 0;
        if (!good) {
            for (int64_t q : pows) pp[p][q] = HalfExp();  // bad Euler factor = 1
            continue;
        }
        int kmax = int(pows.size());
        int half = middle_dim(F.m()) / 2;
        ZetaOptions zopts;
        SectionZetaData data = frobenius_charpoly(F, c, p, std::min(kmax, half), zopts);
        // b(p^k) = coeff_k(P) / p^{k/2} for the inverse local factor
        for (int k = 1; k <= kmax; ++k) {
            Int ck = k < int(data.coeffs.size()) ? data.coeffs[std::size_t(k)] : Int(0);
            pp[p][pows[std::size_t(k - 1)]] = HalfExp::scaled_power(ck, p, k);
        }
    }
    auto seq = assemble_multiplicative(N, pp, "b-choice-3");
    return seq;
}

CoefficientSequence dirichlet_convolve(const CoefficientSequence& a,
                                       const CoefficientSequence& b) {
    int64_t N = std::min(a.N, b.N);
    CoefficientSequence out;
    out.N = N;
    out.tag = a.tag + "*" + b.tag;
    out.values.assign(std::size_t(N), HalfExp());
    for (int64_t d = 1; d <= N; ++d) {
        if (a.at(d).is_zero()) continue;
        for (int64_t n = d; n <= N; n += d) out.at(n) = out.at(n) + a.at(d) * b.at(n / d);
    }
    return out;
}

CoefficientSequence dirichlet_inverse(const CoefficientSequence& s) {
    if (s.N < 1 || !(s.at(1) == HalfExp(Rational(1))))
        throw DomainError("dirichlet_inverse: s(1) must equal 1");
    CoefficientSequence out;
    out.N = s.N;
    out.tag = s.tag + "^-1";
    out.values.assign(std::size_t(s.N), HalfExp());
    out.at(1) = HalfExp(Rational(1));
    for (int64_t n = 2; n <= s.N; ++n) {
        HalfExp acc;
        for (int64_t d = 2; d <= n; ++d) {
            if (n % d != 0) continue;
            acc = acc + s.at(d) * out.at(n / d);
        }
        out.at(n) = -acc;
    }
    return out;
}

RestrictionCheck restriction_identity_check(const DiagonalCubicForm& F, const CVector& c,
                                            int64_t d, int64_t N, int choice,
                                            const ExpSumOptions& opts) {
    CoefficientSequence b = sequence_b(choice, F, c, N, opts);
    CoefficientSequence a = dirichlet_inverse(b);
    RestrictionCheck rc;

    // (i) b(n) = sum_{n1 e = n, e square-full, e coprime n1} mu(n1) a(n1) b(e)
    for (int64_t n = 1; n <= N && rc.ok; ++n) {
        HalfExp rhs;
        for (int64_t e = 1; e <= n; ++e) {
            if (n % e != 0) continue;
            int64_t n1 = n / e;
            auto mp = mult_parts(Int(e));
            if (mp.sq != e) continue;  // e must be square-full
            if (std::gcd(e, n1) != 1) continue;
            int mu = mobius64(n1);
            if (mu == 0) continue;
            HalfExp term = a.at(n1) * b.at(e);
            rhs = rhs + (mu == 1 ? term : -term);
        }
        if (!(rhs == b.at(n))) {
            rc.ok = false;
            rc.first_failure = n;
            rc.which = "b-from-mu-a";
        }
    }
    if (!rc.ok) return rc;

    // (ii) 1_{d coprime n} mu(n) a(n) = sum_{n1 e = n} b(n1) * [a * (1_{d coprime -} mu^2 b)](e)
    CoefficientSequence w;
    w.N = N;
    w.values.assign(std::size_t(N), HalfExp());
    for (int64_t n = 1; n <= N; ++n) {
        int mu = mobius64(n);
        if (mu == 0 || std::gcd(n, d) != 1) continue;
        w.at(n) = b.at(n);  // mu^2 = 1 here
    }
    CoefficientSequence inner = dirichlet_convolve(a, w);
    CoefficientSequence rhs_seq = dirichlet_convolve(b, inner);
    for (int64_t n = 1; n <= N && rc.ok; ++n) {
        int mu = mobius64(n);
        HalfExp lhs;
        if (mu != 0 && std::gcd(n, d) == 1) {
            lhs = mu == 1 ? a.at(n) : -a.at(n);
        }
        if (!(lhs == rhs_seq.at(n))) {
            rc.ok = false;
            rc.first_failure = n;
            rc.which = "restricted-mu-a";
        }
    }
    return rc;
}

// ---------------------------------------------------------------------------
// Statistics
// ---------------------------------------------------------------------------

std::vector<CVector> deleted_box(int m, const std::vector<int>& support, int64_t Z) {
    std::vector<int64_t> vals;
    for (int64_t v = -Z; v <= Z; ++v)
        if (v != 0) vals.push_back(v);
    std::vector<CVector> out;
    std::vector<std::size_t> idx(support.size(), 0);
    while (true) {
        CVector c(m, 0);
        for (std::size_t j = 0; j < support.size(); ++j)
            c[std::size_t(support[j])] = vals[idx[j]];
        out.push_back(c);
        std::size_t j = 0;
        while (j < idx.size() && ++idx[j] == vals.size()) idx[j++] = 0;
        if (j == idx.size()) break;
        if (idx.empty()) break;
    }
    if (support.empty()) out.assign(1, CVector(m, 0));
    return out;
}

std::vector<CVector> dyadic_box(int m, const std::vector<int>& support,
                                const std::vector<int64_t>& C) {
    std::vector<std::vector<int64_t>> vals(support.size());
    for (std::size_t j = 0; j < support.size(); ++j) {
        for (int64_t v = C[j]; v < 2 * C[j]; ++v) {
            vals[j].push_back(v);
            vals[j].push_back(-v);
        }
        std::sort(vals[j].begin(), vals[j].end());
    }
    std::vector<CVector> out;
    std::vector<std::size_t> idx(support.size(), 0);
    while (true) {
        CVector c(m, 0);
        for (std::size_t j = 0; j < support.size(); ++j)
            c[std::size_t(support[j])] = vals[j][idx[j]];
        out.push_back(c);
        std::size_t j = 0;
        while (j < idx.size() && ++idx[j] == vals[j].size()) idx[j++] = 0;
        if (j == idx.size()) break;
        if (idx.empty()) break;
    }
    return out;
}

std::vector<CVector> full_box(int m, int64_t Z) {
    std::vector<CVector> out;
    CVector c(m, -Z);
    while (true) {
        out.push_back(c);
        int j = 0;
        while (j < m && ++c[std::size_t(j)] > Z) c[std::size_t(j++)] = -Z;
        if (j == m) break;
    }
    return out;
}

StatReport second_moment_stat(const DiagonalCubicForm& F, int64_t Z, double Y, int64_t N,
                              int64_t I_lo, int64_t I_hi, int choice,
                              const ExpSumOptions& opts) {
    StatReport rep;
    rep.kind = "second-moment";
    rep.params = {{"Z", Z},      {"Y", Y},           {"N", N},
                  {"I_lo", I_lo}, {"I_hi", I_hi},     {"choice", choice},
                  {"F", F.coeffs()}};
    SqrtCombo total;
    for (const CVector& c : full_box(F.m(), Z)) {
        if (disc_delta(F, c, DiscNormalization::kDefinition) == 0) continue;
        if (I_hi < I_lo || I_hi < 1) continue;
        CoefficientSequence b = sequence_b(choice, F, c, std::max<int64_t>(I_hi, 1), opts);
        SqrtCombo inner;
        for (int64_t n = std::max<int64_t>(I_lo, 1); n <= std::min<int64_t>(I_hi, b.N); ++n)
            inner += b.at(n);
        total += inner * inner;
    }
    rep.value = total.to_double();
    rep.baseline = std::max(std::pow(double(Z), F.m()), Y) * double(N);
    rep.ratio = rep.baseline != 0 ? rep.value / rep.baseline : 0;
    return rep;
}

std::vector<std::vector<double>> sieve_gram_matrix(const DiagonalCubicForm& F, int64_t Z,
                                                   int64_t Q, const std::string& gamma_choice,
                                                   int choice, const ExpSumOptions& opts) {
    std::vector<std::vector<SqrtCombo>> gram(static_cast<std::size_t>(Q),
                                             std::vector<SqrtCombo>(static_cast<std::size_t>(Q)));
    for (const CVector& c : full_box(F.m(), Z)) {
        if (disc_delta(F, c, DiscNormalization::kDefinition) == 0) continue;
        CoefficientSequence b = sequence_b(choice, F, c, Q, opts);
        std::vector<HalfExp> gamma(static_cast<std::size_t>(Q));
        if (gamma_choice == "b") {
            for (int64_t n = 1; n <= Q; ++n) gamma[std::size_t(n - 1)] = b.at(n);
        } else if (gamma_choice == "sqfree-a") {
            CoefficientSequence a = dirichlet_inverse(b);
            for (int64_t n = 1; n <= Q; ++n)
                gamma[std::size_t(n - 1)] =
                    squarefree_part64(n) == n ? a.at(n) : HalfExp();
        } else {
            throw DomainError("gamma_choice must be 'sqfree-a' or 'b'");
        }
        for (int64_t i = 0; i < Q; ++i) {
            if (gamma[std::size_t(i)].is_zero()) continue;
            for (int64_t j = i; j < Q; ++j)
                gram[std::size_t(i)][std::size_t(j)] +=
                    gamma[std::size_t(i)] * gamma[std::size_t(j)];
        }
    }
    std::vector<std::vector<double>> G(static_cast<std::size_t>(Q),
                                       std::vector<double>(static_cast<std::size_t>(Q), 0));
    for (int64_t i = 0; i < Q; ++i)
        for (int64_t j = i; j < Q; ++j) {
            G[std::size_t(i)][std::size_t(j)] = gram[std::size_t(i)][std::size_t(j)].to_double();
            G[std::size_t(j)][std::size_t(i)] = G[std::size_t(i)][std::size_t(j)];
        }
    return G;
}

double gram_max_eigenvalue_jacobi(std::vector<std::vector<double>> A) {
    std::size_t n = A.size();
    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) off += A[i][j] * A[i][j];
        if (off < 1e-24) break;
        for (std::size_t p = 0; p < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) {
                if (std::abs(A[p][q]) < 1e-18) continue;
                double theta = (A[q][q] - A[p][p]) / (2 * A[p][q]);
                double t = (theta >= 0 ? 1.0 : -1.0) /
                           (std::abs(theta) + std::sqrt(theta * theta + 1));
                double cth = 1 / std::sqrt(t * t + 1), s = t * cth;
                for (std::size_t k = 0; k < n; ++k) {
                    double akp = A[k][p], akq = A[k][q];
                    A[k][p] = cth * akp - s * akq;
                    A[k][q] = s * akp + cth * akq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    double apk = A[p][k], aqk = A[q][k];
                    A[p][k] = cth * apk - s * aqk;
                    A[q][k] = s * apk + cth * aqk;
                }
            }
    }
    double lam = 0;
    for (std::size_t i = 0; i < n; ++i) lam = std::max(lam, A[i][i]);
    return lam;
}

StatReport large_sieve_norm(const DiagonalCubicForm& F, int64_t Z, int64_t Q,
                            const std::string& gamma_choice, int choice,
                            const ExpSumOptions& opts) {
    StatReport rep;
    rep.kind = "large-sieve-norm";
    rep.params = {{"Z", Z}, {"Q", Q}, {"gamma", gamma_choice}, {"choice", choice},
                  {"F", F.coeffs()}};
    auto G = sieve_gram_matrix(F, Z, Q, gamma_choice, choice, opts);
    // power iteration with fixed seed vector (1,...,1)/sqrt(Q)
    std::size_t n = G.size();
    std::vector<double> v(n, 1.0 / std::sqrt(double(n))), w(n);
    double lambda = 0;
    for (int it = 0; it < 500; ++it) {
        for (std::size_t i = 0; i < n; ++i) {
            double s = 0;
            for (std::size_t j = 0; j < n; ++j) s += G[i][j] * v[j];
            w[i] = s;
        }
        double norm = 0;
        for (double x : w) norm += x * x;
        norm = std::sqrt(norm);
        if (norm == 0) {
            lambda = 0;
            break;
        }
        double newlambda = 0;
        for (std::size_t i = 0; i < n; ++i) newlambda += v[i] * w[i];
        for (std::size_t i = 0; i < n; ++i) v[i] = w[i] / norm;
        if (std::abs(newlambda - lambda) <= 1e-10 * std::max(1.0, std::abs(newlambda))) {
            lambda = newlambda;
            break;
        }
        lambda = newlambda;
    }
    // sandwich: max column l2^2 <= lambda <= trace(G) = Frobenius^2 of the matrix
    double max_col = 0, frob = 0;
    for (std::size_t i = 0; i < n; ++i) {
        max_col = std::max(max_col, G[i][i]);
        frob += G[i][i];
    }
    if (lambda + 1e-9 < max_col || lambda > frob + 1e-9)
        throw NumericalFailure("power iteration outside the column/Frobenius sandwich");
    rep.value = lambda;
    double Y = double(Q) / 2.0;  // beta = 1 convention: Q = 2 beta Y
    rep.baseline = std::max(std::pow(double(Z), F.m()), Y);
    rep.ratio = rep.baseline != 0 ? rep.value / rep.baseline : 0;
    rep.params["Y"] = Y;
    return rep;
}

StatReport dyadic_moment_stat(const std::string& kind, const DiagonalCubicForm& F,
                              const std::vector<CVector>& box, int box_dim_r,
                              double box_side_product, int64_t n_lo, int64_t n_hi,
                              int choice, const ExpSumOptions& opts) {
    StatReport rep;
    rep.kind = kind;
    rep.params = {{"n_lo", n_lo}, {"n_hi", n_hi}, {"r", box_dim_r},
                  {"choice", choice}, {"F", F.coeffs()}, {"box_size", box.size()}};
    int m = F.m();
    int64_t Nref = std::max<int64_t>(n_hi - 1, 1);

    if (kind == "bad-sum") {
        // sum'_{n cube-full, c} n^{-1} |S~_c(n)|^2, exact rational
        Rational total = 0;
        std::vector<int64_t> cubefull;
        for (int64_t n = std::max<int64_t>(n_lo, 1); n < n_hi; ++n) {
            auto mp = mult_parts(Int(n));
            if (mp.cub == n) cubefull.push_back(n);
        }
        for (const CVector& c : box) {
            if (disc_delta(F, c, DiscNormalization::kDefinition) == 0) continue;
            if (cubefull.empty()) continue;
            CoefficientSequence st = sequence_stilde(F, c, n_hi - 1, opts);
            for (int64_t n : cubefull) total += st.at(n).square() / Rational(n);
        }
        rep.value = double(total);
        rep.exact_value = Rational(total).str();
        double C = 0;
        for (const CVector& c : box)
            for (int64_t v : c) C = std::max(C, double(std::abs(v)));
        rep.baseline = std::pow(C, m) + std::pow(double(Nref), double(m) / 3.0);
        rep.ratio = rep.baseline != 0 ? rep.value / rep.baseline : 0;
        return rep;
    }

    bool want_aprime = kind == "abs-a'";
    if (!want_aprime && kind != "abs-b") throw DomainError("unknown dyadic moment kind");
    SqrtCombo total;
    for (const CVector& c : box) {
        if (disc_delta(F, c, DiscNormalization::kDefinition) == 0) continue;
        CoefficientSequence b = sequence_b(choice, F, c, std::max<int64_t>(n_hi - 1, 1), opts);
        CoefficientSequence seq = b;
        if (want_aprime) {
            CoefficientSequence st = sequence_stilde(F, c, b.N, opts);
            seq = dirichlet_convolve(st, dirichlet_inverse(b));  // a' = S~ * a
            seq.tag = "a'";
        }
        SqrtCombo inner;
        for (int64_t n = std::max<int64_t>(n_lo, 1); n < n_hi && n <= seq.N; ++n)
            inner += seq.at(n).abs();
        total += inner * inner;
    }
    rep.value = total.to_double();
    double expo = want_aprime ? 1.0 + double(m - box_dim_r) / 3.0
                              : std::max(2.0, 1.0 + double(m - box_dim_r) / 3.0);
    rep.baseline = std::pow(double(Nref), expo) * box_side_product;
    rep.ratio = rep.baseline != 0 ? rep.value / rep.baseline : 0;
    return rep;
}

}  // namespace cubelab
