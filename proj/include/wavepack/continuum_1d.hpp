#pragma once
#include <complex>
#include <functional>
#include <utility>
#include <vector>

#include "wavepack/core_packets.hpp"

namespace wavepack::c1d {

using cdouble = std::complex<double>;

// One-dimensional continuum machinery in theory units hbar = 1: wavenumbers k,
// mass m, E(k) = k^2/(2m). Everything here is about what replaces plane-wave
// orthogonality when the integration volume is finite: the scaling-selected
// delta-function limits (Theorem 1), the overlap decomposition of scattering
// states with its energy-non-conserving finite part (Theorem 2), the norm
// oscillation of superposed continuum states, and the first-order rescattered
// wave that fixes sqrt(sigma) = v0 tau.

// ---------------------------------------------------------------- potentials

enum class PotentialKind { delta_potential, square_barrier };

struct PotentialModel1D {
    PotentialKind kind = PotentialKind::delta_potential;
    double mass = 1.0;
    double g = 0.0;  // delta strength: V(x) = g delta(x)
    double V0 = 0.0; // barrier height (negative: well), V(x) = V0 on [-a, a]
    double a = 0.0;  // barrier half-width

    static PotentialModel1D delta(double mass, double g);
    static PotentialModel1D barrier(double mass, double V0, double a);
};

// Reflection/transmission of the unit-flux scattering state
//   psi_k(x) = e^{ikx} + R e^{-ikx}  (left of the potential)
//            = T e^{ikx}             (right of the potential).
// Delta potential: with beta = m g / k,  T = 1/(1 + i beta), R = -i beta/(1 + i beta),
// the convention fixed by the jump condition psi'(0+) - psi'(0-) = 2 m g psi(0)
// (and by g -> 0 giving R = 0, T = 1). Square barrier: exact matching at x = -a, +a
// with interior wavenumber q = sqrt(2m(E - V0)), evanescent for E < V0.
// Unitarity |R|^2 + |T|^2 = 1 holds identically.
struct RT {
    cdouble R, T;
};
RT scattering_coefficients(const PotentialModel1D& model, double k);

// Full piecewise state (interior coefficients included) for pointwise work.
struct ScatteringState {
    double k = 0.0;
    cdouble R, T;
    cdouble A, B; // interior T e^{iqx} / e^{-iqx} coefficients (barrier only)
    cdouble q;    // interior wavenumber (barrier only)
};
ScatteringState scattering_state(const PotentialModel1D& model, double k);
cdouble psi(const PotentialModel1D& model, const ScatteringState& state, double x);

// ----------------------------------------------------------------- Theorem 1

// Finite windows over which plane-wave products are integrated.
enum class Window {
    one_sided, // [0, Lambda]           -> pi (1 + i sqrt3 sign(k1-k2)) delta(k2-k1)
    symmetric, // [-Lambda, Lambda]     -> 2 pi delta(k2-k1)
    offset,    // [x0, x0 + Lambda]     -> e^{-i(k2-k1) x0} pi delta(k2-k1)
};

// Exact window kernel K_Lambda(k1,k2) = integral over the window of
// e^{-i(k2-k1)x} dx, evaluated stably down to k2 = k1.
cdouble scaled_delta_kernel(double k1, double k2, double Lambda, Window window,
                            double x0 = 0.0);

// The Lambda values selected by the scaling hypothesis:
//   (k2-k1) Lambda / 2 = (pi/3) sign(k1-k2) + 2 pi n,
// at which cos((k2-k1)Lambda) is pinned to -1/2 and the boundary phase of the
// window integral stops wandering. dk_char is the characteristic |k2-k1| (the
// test-function width); entries are Lambda_n for n = n_first .. n_first+count-1.
std::vector<double> scaling_lambda_values(double dk_char, int n_first, int count,
                                          int sign = 1);

// integral dk2 test_fn(k2) K_Lambda(k1,k2) over k2 in [k1 - half_width, k1 + half_width],
// by panel quadrature with panels resolving the e^{i(k2-k1)Lambda} oscillation.
// At scaling-selected Lambda this converges to pi f(k1) (one-sided, offset with
// x0*width << 1) or 2 pi f(k1) (symmetric). Plain (non-magic) Lambda values are
// accepted too -- the contrast between prescriptions is the whole point.
// The residual decays like the test function's own edge sharpness: faster than
// any power for a Gaussian, ~1/Lambda for a sharp-edged (box) function.
cdouble scaled_delta_integral(double k1, double Lambda,
                              const std::function<cdouble(double)>& test_fn,
                              double half_width, Window window = Window::one_sided,
                              double x0 = 0.0);

// Predicted limit for a test function with one-sided limits f(k1-), f(k1+).
// include_sign_term applies the discontinuous i sqrt3 sign(k1-k2) part as a
// half-jump rule (its action on the jump is a heuristic reading; for
// continuous test functions both variants coincide and the term is zero,
// which is the only regime the numerics certify). The offset window's phase
// factor is 1 at k2 = k1; for x0 * width not << 1 the edge at x0 additionally
// contributes a principal-value term -pi erf(x0 w / sqrt2) f(k1) that the
// limit statement suppresses.
cdouble theorem1_prediction(Window window, cdouble f_minus, cdouble f_plus,
                            bool include_sign_term);

// ----------------------------------------------------------------- Theorem 2

// Windowed overlap of two scattering states,
//   J(Lambda) = integral_{-Lambda}^{Lambda} psi_{k2}^*(x) psi_{k1}(x) dx,
// decomposes exactly (u = k1-k2, s = k1+k2) into
//   J = (1 + T2*T1 + R2*R1) sin(u Lambda)/u  + (R1 + R2*) sin(s Lambda)/s
//     - Delta1 (1 - cos(u Lambda)) + Delta2 (1 - cos(s Lambda)),
// with
//   Delta1 = i[(T*(k2)T(k1) - 1) + R*(k2)R(k1)] / (k2 - k1),
//   Delta2 = i[R(k1) - R*(k2)] / (k1 + k2).
// In the infinite-window limit the sin terms concentrate into
// 2 pi delta(k1-k2) conserving_coefficient and pi delta(k1+k2)
// reflection_delta_coefficient (which never fires for positive wavenumbers),
// while the cosine terms smear to a window-independent finite part.
//
// delta_term = Delta1 + Delta2 is the published energy-non-conserving term;
// it is nonzero for generic short-range potentials (2 m g T*(k2)T(k1)/(k1 k2)
// for the delta potential). delta_term_derived = Delta1 - Delta2 is the
// boundary-consistent finite part of J itself for a zero-range potential: the
// smeared window average equals -delta_term_derived there, and a Wronskian
// identity makes that average vanish for every self-adjoint short-range model
// (Delta1 = Delta2 identically for the delta potential). For the finite-width
// barrier the smeared average still vanishes, but its split acquires extra
// e^{i u a}-type phases not captured by these zero-range formulas. The two
// variants differ by the sign of the second term only; tests gate the derived
// variant against direct quadrature and keep the published form as the
// primary output, since the norm-drift model downstream is built on it.
//
// Both variants are Hermitian under exchange: Delta(k2,k1) = +Delta(k1,k2)^*.
// On the diagonal k1 = k2 the 0/0 limit is taken: Delta1 -> i[T*'T + R*'R]
// (real by unitarity), Delta2 -> -Im R(k)/k.
struct OverlapDecomposition {
    cdouble conserving_coefficient;       // (1 + T2*T1 + R2*R1)/2, = 1 at k1 = k2
    cdouble reflection_delta_coefficient; // R(k1) + R*(k2)
    cdouble delta_term;                   // Delta1 + Delta2 (published form)
    cdouble delta_term_derived;           // Delta1 - Delta2 (window-derived form)
};
OverlapDecomposition overlap_decomposition(const PotentialModel1D& model, double k1,
                                           double k2);

// Direct quadrature of J(Lambda) on the actual wavefunctions.
cdouble windowed_overlap(const PotentialModel1D& model, double k1, double k2,
                         double Lambda);

// Average of J over the four windows {L, L+pi/|u|, L+pi/s, L+pi/|u|+pi/s}:
// every boundary oscillation carries a single frequency (u or s), so the
// average cancels them exactly and returns the finite part
// -delta_term_derived up to quadrature error. Requires k1 != k2.
cdouble smeared_windowed_overlap(const PotentialModel1D& model, double k1, double k2,
                                 double Lambda);

// Numerical extraction of the full decomposition from direct quadrature
// alone. J(Lambda) carries two harmonics (frequencies u and s) on top of the
// constant -Delta1 + Delta2; averaging window pairs Lambda, Lambda + pi/s
// cancels the s-harmonic exactly, the four-window average isolates the
// constant, and two quarter-period samples of each residual harmonic invert
// the remaining amplitudes. Seven windowed_overlap quadratures total; nothing
// from overlap_decomposition enters. Exact for the zero-range (delta) model
// whose decomposition has no extra boundary phases; throws
// std::invalid_argument for the barrier model and for k1 == k2.
OverlapDecomposition fit_overlap_decomposition(const PotentialModel1D& model, double k1,
                                               double k2, double Lambda0);

// ---------------------------------------------------------------- norm drift

// Superposition norm of continuum states with weight alpha(k),
// normalized integral |alpha|^2 dk = 1:
//   N(t) = 1 + integral dk' dk alpha*(k') alpha(k) eps(k,k') e^{-i(E(k)-E(k'))t},
// with eps(k,k') = -delta_term(k,k'): the published non-orthogonality feeds
// the published norm-oscillation model. (With the window-derived variant the
// kernel is identically zero for the delta potential and the norm stays 1 --
// the orthogonality statement; this model intentionally reproduces the
// nonzero published bookkeeping.) Hermiticity of the kernel makes N real; the
// oscillating term vanishes under time averaging.
struct NormDriftKernel {
    std::vector<double> k;      // quadrature nodes
    std::vector<double> energy; // E(k) = k^2/(2m)
    std::vector<cdouble> mat;   // row-major w_i w_j alpha*(k_j) alpha(k_i) eps(k_i,k_j)
    int n = 0;

    double evaluate(double t) const;     // N(t)
    double time_average(double T) const; // (1/T) integral_0^T N dt, analytic per element
};

NormDriftKernel norm_drift_kernel(const std::function<cdouble(double)>& alpha,
                                  const PotentialModel1D& model, double kmin,
                                  double kmax, int n);

double norm_drift(const std::function<cdouble(double)>& alpha,
                  const PotentialModel1D& model, double t, double kmin, double kmax,
                  int n = 160);

// L2-normalized Gaussian weight centered at kbar with width w.
std::function<cdouble(double)> gaussian_alpha(double kbar, double w);

// ------------------------------------------------------- first-order Green's

// First-order rescattered wave of a nonrelativistic packet crossing a delta
// potential g delta(x) (natural units, g in MeV fm):
//   psi_1(x,t) = g integral dt' (2 pi hbar c |t-t'|/m)^{-1/2}
//                e^{i m x^2/(2 hbar c |t-t'|)} phi(t', 0),
// with phi the incident packet at the origin. Stationary phase sits at
// t' = t - x / v0: the envelope of |psi_1| at time t peaks near |x| = v0 t,
// which is what identifies sqrt(sigma) = v0 tau for a particle created over a
// lifetime tau. Requires the nonrelativistic kind; the x-components of P0, X0
// define the 1-D reduction. Precondition: t is outside the packet's crossing
// interval (the |t - t'|^{-1/2} singularity must not sit inside the envelope).
cdouble greens_first_order(const core::WavePacket& packet, double g, double x, double t);

// ------------------------------------------------- lifetime / boundary sizes

// sqrt(sigma) = v0 tau (SI: m/s * s -> m).
double coherence_from_lifetime(double v0, double tau);

// Matching a damped medium state to the vacuum packet at the boundary:
//   v / sqrt(sigma_v) = 1/tau_m + v / sqrt(sigma_m),
// solved for sigma_v (m^2). sigma_m may be infinite.
double boundary_match(double tau_m, double sigma_m, double v);

// Two-medium form 1/tau_1 + v/sqrt(sigma_1) = 1/tau_2 + v/sqrt(sigma_2),
// solved for sigma_2. Throws std::domain_error if the combination is not
// positive (no matching packet exists).
double boundary_match_two_media(double tau_1, double sigma_1, double tau_2, double v);

// Variational escape rate 1/tau = (2/sqrt(pi)) v0 / sqrt(sigma). The paper
// approximates 2/sqrt(pi) = 1.128 by 1; the default keeps that approximation
// so its numbers reproduce, exact_factor restores the half-Gaussian average.
double variational_rate(double v0, double sigma, bool exact_factor = false);

} // namespace wavepack::c1d
