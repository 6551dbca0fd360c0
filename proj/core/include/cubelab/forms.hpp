#pragma once

#include <cstdint>
#include <vector>

#include "cubelab/bigint.hpp"
#include "cubelab/errors.hpp"

namespace cubelab {

using CVector = std::vector<int64_t>;

// F = sum F_i x_i^3 with nonzero integer coefficients, m >= 3.
class DiagonalCubicForm {
  public:
    explicit DiagonalCubicForm(std::vector<int64_t> coeffs);
    static DiagonalCubicForm fermat(int m);

    int m() const { return int(f_.size()); }
    int m_star() const { return m() - 3; }
    const std::vector<int64_t>& coeffs() const { return f_; }
    int64_t coeff(int i) const { return f_[i]; }
    Int coeff_product() const;

    Int evaluate(const CVector& x) const;  // sum F_i x_i^3

  private:
    std::vector<int64_t> f_;
};

enum class DiscNormalization {
    kDefinition,    // 3^{e_m} (F_1...F_m)^{2^{m-2}} * sign-pattern product
    kAppendixCode,  // 3 * sign-pattern product
};

// e_m = ((-1)^{m-1} - 2^{m-1})/3 + (m-1) 2^{m-2}; 3, 9, 27, 69 for m = 3..6.
Int e_exponent(int m);

// Exact discriminant of the hyperplane section, by multiplication in the
// multiquadratic algebra Q[t_1..t_m]/(t_i^2 - c_i^3/F_i).
Int disc_delta(const DiagonalCubicForm& F, const CVector& c, DiscNormalization norm);

// true iff p does not divide disc_delta(F, c, kDefinition); Delta = 0 is an error.
bool is_smooth_section(const DiagonalCubicForm& F, const CVector& c, int64_t p);

struct SquareClass {
    int64_t g;                 // signed square-free class value
    std::vector<int> indices;  // I(k)
    std::vector<int64_t> e;    // c_i = g * e_i^2 / F_i, signs chosen per class
};

struct SquareClassDecomposition {
    std::vector<SquareClass> classes;
    bool certifies_singular;  // every class has a vanishing signed cubic sum
};

// Partition of indices by the square class of F_i c_i; requires all c_i != 0.
SquareClassDecomposition square_class_decompose(const DiagonalCubicForm& F,
                                                const CVector& c);

// All c with F_dual(c) = 0 and 0 < ||c||_inf <= Z, via the square-class
// parametrization; duplicate-free, lexicographically sorted.
std::vector<CVector> enumerate_singular_c(const DiagonalCubicForm& F, int64_t Z);

}  // namespace cubelab
