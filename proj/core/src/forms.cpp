#include "cubelab/forms.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "cubelab/factor.hpp"

namespace cubelab {

DiagonalCubicForm::DiagonalCubicForm(std::vector<int64_t> coeffs) : f_(std::move(coeffs)) {
    if (int(f_.size()) < 3) throw DomainError("diagonal cubic form needs m >= 3");
    for (int64_t v : f_)
        if (v == 0) throw DomainError("diagonal cubic form needs nonzero coefficients");
}

DiagonalCubicForm DiagonalCubicForm::fermat(int m) {
    return DiagonalCubicForm(std::vector<int64_t>(m, 1));
}

Int DiagonalCubicForm::coeff_product() const {
    Int p = 1;
    for (int64_t v : f_) p *= v;
    return p;
}

Int DiagonalCubicForm::evaluate(const CVector& x) const {
    if (x.size() != f_.size()) throw DomainError("vector length mismatch");
    Int s = 0;
    for (std::size_t i = 0; i < f_.size(); ++i) s += Int(f_[i]) * Int(x[i]) * Int(x[i]) * Int(x[i]);
    return s;
}

Int e_exponent(int m) {
    if (m < 3) throw DomainError("e_exponent: m >= 3 required");
    Int sign = (m - 1) % 2 == 0 ? 1 : -1;
    Int num = sign - pow_int(Int(2), unsigned(m - 1));
    if (num % 3 != 0) throw DataInconsistent("e_exponent: non-integral");
    return num / 3 + Int(m - 1) * pow_int(Int(2), unsigned(m - 2));
}

namespace {

// Product over the 2^{m-1} sign patterns of sum_i eps_i t_i, with
// t_i^2 = c_i^3 / F_i, in the subset-indexed multiquadratic algebra.
// Every radical component of the product vanishes; returns the constant.
Rational sign_pattern_product(const DiagonalCubicForm& F, const CVector& c) {
    int m = F.m();
    if (int(c.size()) != m) throw DomainError("vector length mismatch");
    std::vector<Rational> a(m);
    for (int i = 0; i < m; ++i) {
        Int num = Int(c[i]) * c[i] * c[i];
        a[i] = Rational(num, Int(F.coeff(i)));
    }
    std::size_t dim = std::size_t(1) << m;
    std::vector<Rational> prod(dim, Rational(0)), next(dim, Rational(0));
    prod[0] = 1;
    for (std::size_t pattern = 0; pattern < (std::size_t(1) << (m - 1)); ++pattern) {
        std::fill(next.begin(), next.end(), Rational(0));
        for (std::size_t s = 0; s < dim; ++s) {
            if (prod[s] == 0) continue;
            for (int i = 0; i < m; ++i) {
                int eps = (i == 0) ? 1 : ((pattern >> (i - 1)) & 1 ? -1 : 1);
                std::size_t t = s ^ (std::size_t(1) << i);
                Rational v = prod[s] * eps;
                if (s & (std::size_t(1) << i)) v *= a[i];  // t_i^2 -> a_i
                next[t] += v;
            }
        }
        std::swap(prod, next);
    }
    for (std::size_t s = 1; s < dim; ++s)
        if (prod[s] != 0) throw DataInconsistent("discriminant product has radical residue");
    return prod[0];
}

}  // namespace

Int disc_delta(const DiagonalCubicForm& F, const CVector& c, DiscNormalization norm) {
    Rational prod = sign_pattern_product(F, c);
    Rational result;
    if (norm == DiscNormalization::kAppendixCode) {
        result = prod * 3;
    } else {
        Int pref = pow_int(F.coeff_product(), unsigned(1) << (F.m() - 2));
        result = prod * Rational(pow_int(Int(3), unsigned(to_i64(e_exponent(F.m())))) * pref);
    }
    if (boost::multiprecision::denominator(result) != 1)
        throw DomainError("discriminant normalization is not integral for this form");
    return boost::multiprecision::numerator(result);
}

bool is_smooth_section(const DiagonalCubicForm& F, const CVector& c, int64_t p) {
    Int d = disc_delta(F, c, DiscNormalization::kDefinition);
    if (d == 0) throw SingularSection("disc_delta(F, c) = 0");
    return d % p != 0;
}

SquareClassDecomposition square_class_decompose(const DiagonalCubicForm& F,
                                                const CVector& c) {
    int m = F.m();
    if (int(c.size()) != m) throw DomainError("vector length mismatch");
    for (int64_t ci : c)
        if (ci == 0) throw DomainError("square_class_decompose: zero coordinate");

    std::map<int64_t, SquareClass> classes;
    for (int i = 0; i < m; ++i) {
        Int prod = Int(F.coeff(i)) * c[i];
        int64_t g = to_i64(squarefree_part(prod));
        Int e2 = prod / g;
        Int e;
        if (!is_square(e2, &e)) throw DataInconsistent("square class residue not a square");
        auto& cls = classes[g];
        cls.g = g;
        cls.indices.push_back(i);
        cls.e.push_back(to_i64(e));
    }

    SquareClassDecomposition out;
    bool all_vanish = true;
    for (auto& [g, cls] : classes) {
        // choose signs so that sum_i F_i (e_i/F_i)^3 = 0 when possible
        std::size_t k = cls.indices.size();
        bool found = false;
        for (std::size_t mask = 0; mask < (std::size_t(1) << k) && !found; ++mask) {
            Rational s = 0;
            for (std::size_t j = 0; j < k; ++j) {
                int64_t Fi = F.coeff(cls.indices[j]);
                Int e3 = Int(cls.e[j]) * cls.e[j] * cls.e[j];
                Rational term(e3, Int(Fi) * Fi);
                s += (mask >> j) & 1 ? -term : term;
            }
            if (s == 0) {
                for (std::size_t j = 0; j < k; ++j)
                    if ((mask >> j) & 1) cls.e[j] = -cls.e[j];
                found = true;
            }
        }
        if (!found) all_vanish = false;
        out.classes.push_back(cls);
    }
    out.certifies_singular = all_vanish;
    return out;
}

namespace {

// Partitions of `items` into blocks of size >= 2 (order of blocks canonical:
// each block contains the smallest remaining element).
void partitions_min2(const std::vector<int>& items,
                     std::vector<std::vector<int>>& current,
                     std::vector<std::vector<std::vector<int>>>& out) {
    if (items.empty()) {
        out.push_back(current);
        return;
    }
    int head = items[0];
    std::vector<int> rest(items.begin() + 1, items.end());
    std::size_t r = rest.size();
    // choose a nonempty subset of rest to join head (block size >= 2)
    for (std::size_t mask = 1; mask < (std::size_t(1) << r); ++mask) {
        std::vector<int> block{head}, remaining;
        for (std::size_t j = 0; j < r; ++j) {
            if ((mask >> j) & 1) block.push_back(rest[j]);
            else remaining.push_back(rest[j]);
        }
        if (remaining.size() == 1) continue;  // leftover singleton can't form a block
        current.push_back(block);
        partitions_min2(remaining, current, out);
        current.pop_back();
    }
}

// e-vectors for one block with class value g: |c_i| = |g| e_i^2 / |F_i| <= Z,
// F_i | g e_i^2, and some sign pattern makes sum F_i (e_i/F_i)^3 vanish.
void block_solutions(const DiagonalCubicForm& F, const std::vector<int>& block,
                     int64_t g, int64_t Z, std::vector<std::vector<int64_t>>& e_out) {
    std::size_t k = block.size();
    std::vector<std::vector<int64_t>> ranges(k);
    for (std::size_t j = 0; j < k; ++j) {
        int64_t Fi = F.coeff(block[j]);
        for (int64_t e = 1;; ++e) {
            Int ci_num = Int(g) * e * e;
            if (ci_num % Fi != 0) {
                if (boost::multiprecision::abs(Rational(ci_num, Fi)) > Z) break;
                continue;
            }
            Int ci = ci_num / Fi;
            if (boost::multiprecision::abs(ci) > Z) break;
            ranges[j].push_back(e);
        }
        if (ranges[j].empty()) return;
    }
    std::vector<std::size_t> idx(k, 0);
    while (true) {
        // existential sign check: subset-sum of u_j = e_j^3 / F_j^2 to zero
        std::vector<Rational> u(k);
        for (std::size_t j = 0; j < k; ++j) {
            int64_t e = ranges[j][idx[j]];
            int64_t Fi = F.coeff(block[j]);
            u[j] = Rational(Int(e) * e * e, Int(Fi) * Fi);
        }
        bool ok = false;
        for (std::size_t mask = 0; mask < (std::size_t(1) << k) && !ok; ++mask) {
            Rational s = 0;
            for (std::size_t j = 0; j < k; ++j) s += (mask >> j) & 1 ? -u[j] : u[j];
            if (s == 0) ok = true;
        }
        if (ok) {
            std::vector<int64_t> e(k);
            for (std::size_t j = 0; j < k; ++j) e[j] = ranges[j][idx[j]];
            e_out.push_back(e);
        }
        std::size_t j = 0;
        while (j < k && ++idx[j] == ranges[j].size()) idx[j++] = 0;
        if (j == k) break;
    }
}

}  // namespace

std::vector<CVector> enumerate_singular_c(const DiagonalCubicForm& F, int64_t Z) {
    if (Z < 1) throw DomainError("enumerate_singular_c: Z >= 1 required");
    int m = F.m();
    int64_t maxF = 0;
    for (int64_t v : F.coeffs()) maxF = std::max(maxF, std::abs(v));

    // square-free candidates for g (signed)
    std::vector<int64_t> gs;
    for (int64_t g = 1; g <= maxF * Z; ++g) {
        if (squarefree_part64(g) != g) continue;
        gs.push_back(g);
        gs.push_back(-g);
    }

    std::set<CVector> found;
    for (std::size_t support_mask = 1; support_mask < (std::size_t(1) << m); ++support_mask) {
        std::vector<int> support;
        for (int i = 0; i < m; ++i)
            if ((support_mask >> i) & 1) support.push_back(i);
        if (support.size() < 2) continue;
        std::vector<std::vector<std::vector<int>>> parts;
        std::vector<std::vector<int>> current;
        partitions_min2(support, current, parts);
        for (const auto& partition : parts) {
            // per-block solutions for each candidate g
            std::vector<std::vector<std::pair<int64_t, std::vector<int64_t>>>> choices(
                partition.size());
            bool feasible = true;
            for (std::size_t b = 0; b < partition.size() && feasible; ++b) {
                for (int64_t g : gs) {
                    std::vector<std::vector<int64_t>> es;
                    block_solutions(F, partition[b], g, Z, es);
                    for (auto& e : es) choices[b].emplace_back(g, std::move(e));
                }
                if (choices[b].empty()) feasible = false;
            }
            if (!feasible) continue;
            std::vector<std::size_t> idx(partition.size(), 0);
            while (true) {
                CVector c(m, 0);
                for (std::size_t b = 0; b < partition.size(); ++b) {
                    const auto& [g, e] = choices[b][idx[b]];
                    for (std::size_t j = 0; j < partition[b].size(); ++j) {
                        int i = partition[b][j];
                        c[i] = to_i64(Int(g) * e[j] * e[j] / F.coeff(i));
                    }
                }
                found.insert(c);
                std::size_t b = 0;
                while (b < partition.size() && ++idx[b] == choices[b].size()) idx[b++] = 0;
                if (b == partition.size()) break;
            }
        }
    }
    return std::vector<CVector>(found.begin(), found.end());
}

}  // namespace cubelab
