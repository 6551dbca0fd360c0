#include "cubelab/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <queue>

#include "cubelab/errors.hpp"

namespace cubelab {

namespace {

// Gauss-Kronrod 7-15 nodes/weights on [-1, 1]
constexpr double kXgk[8] = {0.991455371120813, 0.949107912342759, 0.864864423359769,
                            0.741531185599394, 0.586087235467691, 0.405845151377397,
                            0.207784955007898, 0.000000000000000};
constexpr double kWgk[8] = {0.022935322010529, 0.063092092629979, 0.104790010322250,
                            0.140653259715525, 0.169004726639267, 0.190350578064785,
                            0.204432940075298, 0.209482141084728};
constexpr double kWg[4] = {0.129484966168870, 0.279705391489277, 0.381830050505119,
                           0.417959183673469};

struct Piece {
    double a, b, value, error;
};

Piece gk15(const std::function<double(double)>& f, double a, double b) {
    double c = 0.5 * (a + b), h = 0.5 * (b - a);
    double fc = f(c);
    double resk = kWgk[7] * fc, resg = kWg[3] * fc;
    for (int j = 0; j < 7; ++j) {
        double x = h * kXgk[j];
        double fsum = f(c - x) + f(c + x);
        resk += kWgk[j] * fsum;
        if (j % 2 == 1) resg += kWg[j / 2] * fsum;
    }
    double value = resk * h;
    double err = std::abs((resk - resg) * h);
    err = std::pow(200 * err, 1.5) > err ? std::min(err, std::pow(200 * err, 1.5)) : err;
    return {a, b, value, err};
}

}  // namespace

double integrate_gk(const std::function<double(double)>& f, double a, double b,
                    double rel_tol, double abs_tol, int max_intervals) {
    if (a == b) return 0;
    auto cmp = [](const Piece& x, const Piece& y) { return x.error < y.error; };
    std::priority_queue<Piece, std::vector<Piece>, decltype(cmp)> heap(cmp);
    Piece whole = gk15(f, a, b);
    double total = whole.value, err = whole.error;
    heap.push(whole);
    int used = 1;
    while (err > std::max(abs_tol, rel_tol * std::abs(total)) && used < max_intervals) {
        Piece top = heap.top();
        heap.pop();
        double mid = 0.5 * (top.a + top.b);
        Piece l = gk15(f, top.a, mid), r = gk15(f, mid, top.b);
        total += l.value + r.value - top.value;
        err += l.error + r.error - top.error;
        heap.push(l);
        heap.push(r);
        ++used;
    }
    if (err > std::max(abs_tol * 10, rel_tol * 10 * std::abs(total)) &&
        err > 1e-7 * std::max(1.0, std::abs(total)))
        throw NumericalFailure("integrate_gk: tolerance not met");
    return total;
}

double integrate_oscillatory(const std::function<double(double)>& amplitude,
                             const std::function<double(double)>& phase, double a,
                             double b, double phase_span, double rel_tol) {
    auto f = [&](double x) {
        return amplitude(x) * std::cos(2 * M_PI * phase(x));
    };
    int pieces = std::max(4, std::min(4000, int(2 * std::abs(phase_span)) + 4));
    double h = (b - a) / pieces, total = 0;
    for (int i = 0; i < pieces; ++i) {
        double lo = a + i * h, hi = lo + h;
        total += gk15(f, lo, hi).value;
    }
    (void)rel_tol;
    return total;
}

void fft_radix2(std::vector<std::complex<double>>& a, bool inverse) {
    std::size_t n = a.size();
    if (n == 0 || (n & (n - 1)) != 0) throw DomainError("fft: size must be a power of two");
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        double ang = 2 * M_PI / double(len) * (inverse ? 1 : -1);
        std::complex<double> wl(std::cos(ang), std::sin(ang));
        for (std::size_t i = 0; i < n; i += len) {
            std::complex<double> w(1);
            for (std::size_t j = 0; j < len / 2; ++j) {
                std::complex<double> u = a[i + j], v = a[i + j + len / 2] * w;
                a[i + j] = u + v;
                a[i + j + len / 2] = u - v;
                w *= wl;
            }
        }
    }
    if (inverse)
        for (auto& x : a) x /= double(n);
}

}  // namespace cubelab
