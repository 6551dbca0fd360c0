#pragma once

#include <complex>
#include <functional>
#include <vector>

namespace cubelab {

// Adaptive Gauss-Kronrod 7-15 on [a, b].  Throws NumericalFailure when the
// tolerance is not met within the refinement budget.
double integrate_gk(const std::function<double(double)>& f, double a, double b,
                    double rel_tol = 1e-10, double abs_tol = 1e-14,
                    int max_intervals = 4000);

// Oscillatory helper: integral of f(x) * cos(2 pi phase(x)) with the initial
// subdivision sized by the total phase variation.
double integrate_oscillatory(const std::function<double(double)>& amplitude,
                             const std::function<double(double)>& phase, double a,
                             double b, double phase_span, double rel_tol = 1e-9);

// In-place iterative radix-2 complex FFT, n a power of two; inverse divides
// by n.
void fft_radix2(std::vector<std::complex<double>>& a, bool inverse);

}  // namespace cubelab
