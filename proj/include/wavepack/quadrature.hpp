#pragma once
#include <complex>
#include <cstddef>
#include <functional>
#include <utility>
#include <vector>

namespace wavepack::quad {

using cdouble = std::complex<double>;

struct GKResult {
    cdouble value{};
    double error = 0.0;       // accumulated Kronrod-Gauss error estimate
    std::size_t evals = 0;    // integrand evaluations
    bool converged = true;    // false if some interval hit max_depth above tolerance
};

// 15-point Gauss-Kronrod rule on [a,b]; *err receives |K15 - G7| scaled per QUADPACK.
cdouble gk15(const std::function<cdouble(double)>& f, double a, double b,
             double* err = nullptr);

// Adaptive bisection with GK7/15 error control. Deterministic: intervals are
// refined left-to-right with tolerance split evenly, so results are
// bit-reproducible across runs and thread counts.
GKResult adaptive_gk(const std::function<cdouble(double)>& f, double a, double b,
                     double abs_tol = 1e-10, double rel_tol = 1e-8, int max_depth = 28);

// Real-valued convenience wrapper.
double adaptive_gk_real(const std::function<double(double)>& f, double a, double b,
                        double abs_tol = 1e-10, double rel_tol = 1e-8, int max_depth = 28);

// Gauss-Legendre nodes and weights on [-1, 1], computed by Newton iteration on
// the Legendre recurrence and cached by order.
const std::vector<std::pair<double, double>>& gauss_legendre(int n);

// Fixed-order panel quadrature: GK15 on consecutive panels of width <= panel,
// Kahan-summed in ascending order. The workhorse for oscillatory integrands
// where panels are chosen from the local oscillation wavelength, making the
// rule exact per lobe to machine precision without adaptivity.
cdouble panel_integrate(const std::function<cdouble(double)>& f, double a, double b,
                        double panel);

} // namespace wavepack::quad
