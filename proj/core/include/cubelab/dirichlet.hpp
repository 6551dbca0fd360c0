#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "cubelab/expsums.hpp"
#include "cubelab/forms.hpp"
#include "cubelab/halfexp.hpp"

namespace cubelab {

// Finitely truncated arithmetic sequence with exact values, 1-indexed.
struct CoefficientSequence {
    int64_t N = 0;
    std::vector<HalfExp> values;  // values[n-1] holds the coefficient at n
    std::string tag;

    const HalfExp& at(int64_t n) const { return values.at(std::size_t(n - 1)); }
    HalfExp& at(int64_t n) { return values.at(std::size_t(n - 1)); }
};

// S~_c(n) for n = 1..N via exact prime-power exponential sums.
CoefficientSequence sequence_stilde(const DiagonalCubicForm& F, const CVector& c,
                                    int64_t N, const ExpSumOptions& opts = {});

// The Psi_1 coefficient family b_c for the three Euler-product choices:
// 1: b = S~_c;  2: b = S~_c restricted to n coprime to Delta(F, c);
// 3: multiplicative with factors L_p(s, V_c)^{(-1)^{m*}} at good p, 1 at bad p.
CoefficientSequence sequence_b(int choice, const DiagonalCubicForm& F, const CVector& c,
                               int64_t N, const ExpSumOptions& opts = {});

CoefficientSequence dirichlet_convolve(const CoefficientSequence& a,
                                       const CoefficientSequence& b);
CoefficientSequence dirichlet_inverse(const CoefficientSequence& s);

// Both displayed identities from the square-free restriction proposition,
// checked coefficientwise up to N; returns the first failing n, if any.
struct RestrictionCheck {
    bool ok = true;
    int64_t first_failure = 0;
    std::string which;
};
RestrictionCheck restriction_identity_check(const DiagonalCubicForm& F, const CVector& c,
                                            int64_t d, int64_t N, int choice,
                                            const ExpSumOptions& opts = {});

// ---------------------------------------------------------------------------
// Empirical sieve statistics
// ---------------------------------------------------------------------------

struct StatReport {
    std::string kind;
    nlohmann::json params;
    double value = 0;
    double baseline = 0;
    double ratio = 0;
    std::string exact_value;  // decimal/rational string when the sum is exact
};

// c with c_j in [-Z,Z]\{0} on the support, 0 elsewhere.
std::vector<CVector> deleted_box(int m, const std::vector<int>& support, int64_t Z);
// |c_j| in [C_j, 2 C_j) on the support, 0 elsewhere.
std::vector<CVector> dyadic_box(int m, const std::vector<int>& support,
                                const std::vector<int64_t>& C);
std::vector<CVector> full_box(int m, int64_t Z);  // all of [-Z,Z]^m

// sum'_{c in [-Z,Z]^m} |sum_{n in I} b_c(n)|^2 against max(Z^m, Y) * N.
StatReport second_moment_stat(const DiagonalCubicForm& F, int64_t Z, double Y, int64_t N,
                              int64_t I_lo, int64_t I_hi, int choice,
                              const ExpSumOptions& opts = {});

// Operator norm^2 of (gamma_c(n))_{c,n<=Q} by power iteration on the Gram
// matrix; gamma = 1_{n squarefree} * a ("sqfree-a") or gamma = b.
StatReport large_sieve_norm(const DiagonalCubicForm& F, int64_t Z, int64_t Q,
                            const std::string& gamma_choice, int choice,
                            const ExpSumOptions& opts = {});
// exact dense Gram matrix for the oracle path
std::vector<std::vector<double>> sieve_gram_matrix(const DiagonalCubicForm& F, int64_t Z,
                                                   int64_t Q, const std::string& gamma_choice,
                                                   int choice, const ExpSumOptions& opts = {});
double gram_max_eigenvalue_jacobi(std::vector<std::vector<double>> A);

// kind in {abs-a', abs-b, bad-sum}; the n-range is [n_lo, n_hi).
StatReport dyadic_moment_stat(const std::string& kind, const DiagonalCubicForm& F,
                              const std::vector<CVector>& box, int box_dim_r,
                              double box_side_product, int64_t n_lo, int64_t n_hi,
                              int choice, const ExpSumOptions& opts = {});

}  // namespace cubelab
