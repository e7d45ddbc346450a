#include "wavepack/continuum_1d.hpp"

#include <array>
#include <cmath>
#include <stdexcept>

#include "wavepack/constants.hpp"
#include "wavepack/quadrature.hpp"

namespace wavepack::c1d {

namespace {

constexpr cdouble kI{0.0, 1.0};

void require_positive_k(double k, const char* who) {
    if (!(k > 0.0)) throw std::domain_error(std::string(who) + ": wavenumber must be > 0");
}

// Solve a dense complex n x n system in place (partial pivoting). The only
// consumer is the 4 x 4 barrier matching problem.
template <int N>
std::array<cdouble, N> solve_linear(std::array<std::array<cdouble, N>, N> A,
                                    std::array<cdouble, N> b) {
    for (int col = 0; col < N; ++col) {
        int piv = col;
        for (int r = col + 1; r < N; ++r) {
            if (std::abs(A[r][col]) > std::abs(A[piv][col])) piv = r;
        }
        if (std::abs(A[piv][col]) == 0.0) {
            throw std::domain_error("scattering_state: degenerate matching system");
        }
        std::swap(A[col], A[piv]);
        std::swap(b[col], b[piv]);
        for (int r = col + 1; r < N; ++r) {
            const cdouble f = A[r][col] / A[col][col];
            for (int c = col; c < N; ++c) A[r][c] -= f * A[col][c];
            b[r] -= f * b[col];
        }
    }
    std::array<cdouble, N> x{};
    for (int r = N - 1; r >= 0; --r) {
        cdouble s = b[r];
        for (int c = r + 1; c < N; ++c) s -= A[r][c] * x[c];
        x[r] = s / A[r][r];
    }
    return x;
}

// Finite-part coefficients of the windowed overlap (see header):
//   Delta1 = i[(T2* T1 - 1) + R2* R1]/(k2 - k1)   (k1 != k2)
//   Delta2 = i[R1 - R2*]/(k1 + k2)
// and their k2 -> k1 limits. Delta1's limit needs dT/dk, dR/dk, taken by
// fourth-order Richardson differences (exact closed forms exist only for the
// delta potential; one code path serves both models).
struct DeltaParts {
    cdouble d1, d2;
};

DeltaParts delta_parts(const PotentialModel1D& model, double k1, double k2) {
    const RT c1 = scattering_coefficients(model, k1);
    const RT c2 = scattering_coefficients(model, k2);
    DeltaParts out;
    out.d2 = kI * (c1.R - std::conj(c2.R)) / (k1 + k2);
    if (k1 != k2) {
        out.d1 = kI * ((std::conj(c2.T) * c1.T - 1.0) + std::conj(c2.R) * c1.R) / (k2 - k1);
        return out;
    }
    const double h = 1e-5 * k1;
    auto rt = [&](double k) { return scattering_coefficients(model, k); };
    const RT p1 = rt(k1 + h), m1 = rt(k1 - h), p2 = rt(k1 + 2 * h), m2 = rt(k1 - 2 * h);
    auto deriv = [&](auto pick) {
        return (8.0 * (pick(p1) - pick(m1)) - (pick(p2) - pick(m2))) / (12.0 * h);
    };
    const cdouble dTc = deriv([](const RT& c) { return std::conj(c.T); });
    const cdouble dRc = deriv([](const RT& c) { return std::conj(c.R); });
    out.d1 = kI * (dTc * c1.T + dRc * c1.R);
    return out;
}

} // namespace

// ---------------------------------------------------------------- potentials

PotentialModel1D PotentialModel1D::delta(double mass, double g) {
    if (!(mass > 0.0)) throw std::invalid_argument("PotentialModel1D: mass must be > 0");
    PotentialModel1D m;
    m.kind = PotentialKind::delta_potential;
    m.mass = mass;
    m.g = g;
    return m;
}

PotentialModel1D PotentialModel1D::barrier(double mass, double V0, double a) {
    if (!(mass > 0.0)) throw std::invalid_argument("PotentialModel1D: mass must be > 0");
    if (!(a > 0.0)) throw std::invalid_argument("PotentialModel1D: barrier half-width must be > 0");
    PotentialModel1D m;
    m.kind = PotentialKind::square_barrier;
    m.mass = mass;
    m.V0 = V0;
    m.a = a;
    return m;
}

ScatteringState scattering_state(const PotentialModel1D& model, double k) {
    require_positive_k(k, "scattering_state");
    ScatteringState s;
    s.k = k;
    if (model.kind == PotentialKind::delta_potential) {
        const double beta = model.mass * model.g / k;
        const cdouble den = 1.0 + kI * beta;
        s.T = 1.0 / den;
        s.R = -kI * beta / den;
        return s;
    }
    const double E = k * k / (2.0 * model.mass);
    const cdouble q = std::sqrt(cdouble(2.0 * model.mass * (E - model.V0), 0.0));
    if (std::abs(q) == 0.0) {
        throw std::domain_error("scattering_state: k exactly at barrier threshold");
    }
    const double a = model.a;
    const cdouble eka = std::polar(1.0, k * a);   // e^{ika}
    const cdouble emka = std::polar(1.0, -k * a); // e^{-ika}
    const cdouble eqa = std::exp(kI * q * a);
    const cdouble emqa = std::exp(-kI * q * a);
    // Unknowns [R, A, B, T]; continuity of psi and psi' at x = -a and x = +a.
    std::array<std::array<cdouble, 4>, 4> A{};
    std::array<cdouble, 4> b{};
    A[0] = {eka, -emqa, -eqa, 0.0};
    b[0] = -emka;
    A[1] = {-kI * k * eka, -kI * q * emqa, kI * q * eqa, 0.0};
    b[1] = -kI * k * emka;
    A[2] = {0.0, eqa, emqa, -eka};
    b[2] = 0.0;
    A[3] = {0.0, kI * q * eqa, -kI * q * emqa, -kI * k * eka};
    b[3] = 0.0;
    const auto x = solve_linear<4>(A, b);
    s.R = x[0];
    s.A = x[1];
    s.B = x[2];
    s.T = x[3];
    s.q = q;
    return s;
}

RT scattering_coefficients(const PotentialModel1D& model, double k) {
    const ScatteringState s = scattering_state(model, k);
    return {s.R, s.T};
}

cdouble psi(const PotentialModel1D& model, const ScatteringState& s, double x) {
    const double k = s.k;
    if (model.kind == PotentialKind::delta_potential) {
        if (x < 0.0) return std::polar(1.0, k * x) + s.R * std::polar(1.0, -k * x);
        return s.T * std::polar(1.0, k * x);
    }
    if (x < -model.a) return std::polar(1.0, k * x) + s.R * std::polar(1.0, -k * x);
    if (x > model.a) return s.T * std::polar(1.0, k * x);
    return s.A * std::exp(kI * s.q * x) + s.B * std::exp(-kI * s.q * x);
}

// ----------------------------------------------------------------- Theorem 1

cdouble scaled_delta_kernel(double k1, double k2, double Lambda, Window window,
                            double x0) {
    if (!(Lambda > 0.0)) throw std::invalid_argument("scaled_delta_kernel: Lambda must be > 0");
    const double du = k2 - k1;
    auto one_sided = [&](double u) -> cdouble {
        if (u == 0.0) return Lambda;
        // (e^{-iuL} - 1)/(-iu) = sin(uL)/u - i 2 sin^2(uL/2)/u, cancellation-free.
        const double th = u * Lambda;
        const double sh = std::sin(0.5 * th);
        return {std::sin(th) / u, -2.0 * sh * sh / u};
    };
    switch (window) {
        case Window::one_sided:
            return one_sided(du);
        case Window::symmetric:
            return du == 0.0 ? cdouble(2.0 * Lambda) : cdouble(2.0 * std::sin(du * Lambda) / du);
        case Window::offset:
            return std::polar(1.0, -du * x0) * one_sided(du);
    }
    return {};
}

std::vector<double> scaling_lambda_values(double dk_char, int n_first, int count,
                                          int sign) {
    if (!(dk_char > 0.0)) throw std::invalid_argument("scaling_lambda_values: dk_char must be > 0");
    if (count < 1) throw std::invalid_argument("scaling_lambda_values: count must be >= 1");
    std::vector<double> out;
    out.reserve(count);
    for (int n = n_first; n < n_first + count; ++n) {
        const double lambda = 2.0 * (M_PI / 3.0 * (sign >= 0 ? 1.0 : -1.0) + 2.0 * M_PI * n) /
                              dk_char;
        if (!(lambda > 0.0)) {
            throw std::invalid_argument("scaling_lambda_values: branch gives Lambda <= 0; "
                                        "raise n_first");
        }
        out.push_back(lambda);
    }
    return out;
}

cdouble scaled_delta_integral(double k1, double Lambda,
                              const std::function<cdouble(double)>& test_fn,
                              double half_width, Window window, double x0) {
    if (!(Lambda > 0.0)) throw std::invalid_argument("scaled_delta_integral: Lambda must be > 0");
    if (!(half_width > 0.0)) {
        throw std::invalid_argument("scaled_delta_integral: half_width must be > 0");
    }
    // Kernel oscillates in u = k2 - k1 with frequency Lambda (plus x0 for the
    // offset window); half-period panels keep GK15 exact per lobe.
    const double freq = Lambda + std::abs(x0);
    const double panel = std::min(M_PI / freq, half_width / 8.0);
    auto integrand = [&](double u) {
        return test_fn(k1 + u) * scaled_delta_kernel(k1, k1 + u, Lambda, window, x0);
    };
    return quad::panel_integrate(integrand, -half_width, half_width, panel);
}

cdouble theorem1_prediction(Window window, cdouble f_minus, cdouble f_plus,
                            bool include_sign_term) {
    const cdouble mean = 0.5 * (f_plus + f_minus);
    switch (window) {
        case Window::symmetric:
            return 2.0 * M_PI * mean;
        case Window::one_sided:
        case Window::offset: {
            cdouble v = M_PI * mean;
            if (include_sign_term) {
                // sign(k1-k2. delta(k2-k1)) read as a half-jump rule: the +1
                // side of sign is k2 < k1, weighting f(k1-) against f(k1+).
                v += M_PI * kI * std::sqrt(3.0) * 0.5 * (f_minus - f_plus);
            }
            return v;
        }
    }
    return {};
}

// ----------------------------------------------------------------- Theorem 2

OverlapDecomposition overlap_decomposition(const PotentialModel1D& model, double k1,
                                           double k2) {
    require_positive_k(k1, "overlap_decomposition");
    require_positive_k(k2, "overlap_decomposition");
    const RT c1 = scattering_coefficients(model, k1);
    const RT c2 = scattering_coefficients(model, k2);
    const DeltaParts d = delta_parts(model, k1, k2);
    OverlapDecomposition out;
    out.conserving_coefficient = 0.5 * (1.0 + std::conj(c2.T) * c1.T + std::conj(c2.R) * c1.R);
    out.reflection_delta_coefficient = c1.R + std::conj(c2.R);
    out.delta_term = d.d1 + d.d2;
    out.delta_term_derived = d.d1 - d.d2;
    return out;
}

cdouble windowed_overlap(const PotentialModel1D& model, double k1, double k2,
                         double Lambda) {
    require_positive_k(k1, "windowed_overlap");
    require_positive_k(k2, "windowed_overlap");
    if (!(Lambda > 0.0)) throw std::invalid_argument("windowed_overlap: Lambda must be > 0");
    const ScatteringState s1 = scattering_state(model, k1);
    const ScatteringState s2 = scattering_state(model, k2);
    auto f = [&](double x) { return std::conj(psi(model, s2, x)) * psi(model, s1, x); };
    // Fastest oscillation: k1 + k2 outside, |q1| + |q2| inside the barrier.
    double freq = k1 + k2;
    double edge = 0.0;
    if (model.kind == PotentialKind::square_barrier) {
        freq = std::max(freq, std::abs(s1.q) + std::abs(s2.q));
        edge = model.a;
    }
    const double panel = M_PI / freq;
    if (Lambda <= edge) {
        return quad::panel_integrate(f, -Lambda, Lambda, panel);
    }
    // Split at the potential edges where the integrand has kinks.
    cdouble total = quad::panel_integrate(f, -Lambda, -edge, panel);
    if (edge > 0.0) total += quad::panel_integrate(f, -edge, edge, panel);
    total += quad::panel_integrate(f, edge, Lambda, panel);
    return total;
}

cdouble smeared_windowed_overlap(const PotentialModel1D& model, double k1, double k2,
                                 double Lambda) {
    if (k1 == k2) {
        throw std::invalid_argument("smeared_windowed_overlap: requires k1 != k2");
    }
    const double pu = M_PI / std::abs(k1 - k2);
    const double ps = M_PI / (k1 + k2);
    // Each boundary oscillation carries a single frequency (|k1-k2| or k1+k2);
    // the 4-window average cancels both exactly, leaving the finite part.
    const cdouble j00 = windowed_overlap(model, k1, k2, Lambda);
    const cdouble j10 = windowed_overlap(model, k1, k2, Lambda + pu);
    const cdouble j01 = windowed_overlap(model, k1, k2, Lambda + ps);
    const cdouble j11 = windowed_overlap(model, k1, k2, Lambda + pu + ps);
    return 0.25 * (j00 + j10 + j01 + j11);
}

OverlapDecomposition fit_overlap_decomposition(const PotentialModel1D& model, double k1,
                                               double k2, double Lambda0) {
    if (model.kind != PotentialKind::delta_potential) {
        throw std::invalid_argument(
            "fit_overlap_decomposition: exact inversion needs the zero-range model");
    }
    require_positive_k(k1, "fit_overlap_decomposition");
    require_positive_k(k2, "fit_overlap_decomposition");
    if (k1 == k2) {
        throw std::invalid_argument("fit_overlap_decomposition: requires k1 != k2");
    }
    if (!(Lambda0 > 0.0)) {
        throw std::invalid_argument("fit_overlap_decomposition: Lambda0 must be > 0");
    }
    const double u = k1 - k2, s = k1 + k2;
    const double pu = M_PI / std::abs(u), ps = M_PI / s;
    auto J = [&](double L) { return windowed_overlap(model, k1, k2, L); };

    // J(L) = g_u(L) + g_s(L) + K with
    //   g_u = C_u sin(uL)/u + Delta1 cos(uL),
    //   g_s = C_s sin(sL)/s - Delta2 cos(sL),  K = -Delta1 + Delta2.
    const cdouble j00 = J(Lambda0), j10 = J(Lambda0 + pu), j01 = J(Lambda0 + ps),
                  j11 = J(Lambda0 + pu + ps);
    const cdouble K = 0.25 * (j00 + j10 + j01 + j11);

    // Averaging L, L + pi/s kills g_s and contracts g_u by beta1 = cos(u pi/(2s))
    // (strictly positive since |u| < s); two samples a quarter u-period apart
    // invert the surviving harmonic.
    const double beta1 = std::cos(0.5 * M_PI * u / s);
    const cdouble a1 = 0.5 * (j00 + j01);
    const cdouble a2 = 0.5 * (J(Lambda0 + 0.5 * pu) + J(Lambda0 + 0.5 * pu + ps));
    const double theta = u * (Lambda0 + 0.5 * ps);
    const cdouble g1 = (a1 - K) / beta1;
    const cdouble g2 = (a2 - K) / beta1;
    const double sgn = u > 0.0 ? 1.0 : -1.0;
    const cdouble delta1 = g1 * std::cos(theta) - sgn * g2 * std::sin(theta);
    const cdouble cu = u * (g1 * std::sin(theta) + sgn * g2 * std::cos(theta));
    const cdouble delta2 = K + delta1;

    // With g_u known, the residual J - g_u - K is the bare s-harmonic.
    auto gu = [&](double L) { return cu * std::sin(u * L) / u + delta1 * std::cos(u * L); };
    const cdouble r1 = j00 - gu(Lambda0) - K;
    const cdouble r2 = J(Lambda0 + 0.5 * ps) - gu(Lambda0 + 0.5 * ps) - K;
    const double ths = s * Lambda0;
    const cdouble cs = s * (r1 * std::sin(ths) + r2 * std::cos(ths));

    OverlapDecomposition out;
    out.conserving_coefficient = 0.5 * cu;
    out.reflection_delta_coefficient = cs;
    out.delta_term = delta1 + delta2;
    out.delta_term_derived = delta1 - delta2;
    return out;
}

// ---------------------------------------------------------------- norm drift

double NormDriftKernel::evaluate(double t) const {
    cdouble acc{};
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            acc += mat[static_cast<size_t>(i) * n + j] *
                   std::polar(1.0, -(energy[i] - energy[j]) * t);
        }
    }
    return 1.0 + acc.real();
}

double NormDriftKernel::time_average(double T) const {
    if (!(T > 0.0)) throw std::invalid_argument("time_average: T must be > 0");
    cdouble acc{};
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            const double z = (energy[i] - energy[j]) * T;
            // (1/T) integral_0^T e^{-izt/T...}: average of e^{-i dE t} over [0,T].
            cdouble phi;
            if (std::abs(z) < 1e-8) {
                phi = cdouble(1.0 - z * z / 6.0, -0.5 * z);
            } else {
                phi = (std::polar(1.0, -z) - 1.0) / cdouble(0.0, -z);
            }
            acc += mat[static_cast<size_t>(i) * n + j] * phi;
        }
    }
    return 1.0 + acc.real();
}

NormDriftKernel norm_drift_kernel(const std::function<cdouble(double)>& alpha,
                                  const PotentialModel1D& model, double kmin,
                                  double kmax, int n) {
    if (!(kmin > 0.0) || !(kmax > kmin)) {
        throw std::invalid_argument("norm_drift_kernel: need 0 < kmin < kmax");
    }
    if (n < 2) throw std::invalid_argument("norm_drift_kernel: need n >= 2");
    const auto& gl = quad::gauss_legendre(n);
    NormDriftKernel ker;
    ker.n = n;
    ker.k.resize(n);
    ker.energy.resize(n);
    std::vector<double> w(n);
    std::vector<cdouble> av(n);
    const double mid = 0.5 * (kmin + kmax), half = 0.5 * (kmax - kmin);
    for (int i = 0; i < n; ++i) {
        ker.k[i] = mid + half * gl[i].first;
        w[i] = half * gl[i].second;
        ker.energy[i] = ker.k[i] * ker.k[i] / (2.0 * model.mass);
        av[i] = alpha(ker.k[i]);
    }
    ker.mat.resize(static_cast<size_t>(n) * n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            // eps(k,k') = -delta_term(k,k'): published non-orthogonality.
            const cdouble eps = -overlap_decomposition(model, ker.k[i], ker.k[j]).delta_term;
            ker.mat[static_cast<size_t>(i) * n + j] =
                w[i] * w[j] * std::conj(av[j]) * av[i] * eps;
        }
    }
    return ker;
}

double norm_drift(const std::function<cdouble(double)>& alpha,
                  const PotentialModel1D& model, double t, double kmin, double kmax,
                  int n) {
    return norm_drift_kernel(alpha, model, kmin, kmax, n).evaluate(t);
}

std::function<cdouble(double)> gaussian_alpha(double kbar, double w) {
    if (!(w > 0.0)) throw std::invalid_argument("gaussian_alpha: width must be > 0");
    const double norm = std::pow(2.0 * M_PI * w * w, -0.25);
    return [kbar, w, norm](double k) {
        return cdouble(norm * std::exp(-(k - kbar) * (k - kbar) / (4.0 * w * w)), 0.0);
    };
}

// ------------------------------------------------------- first-order Green's

cdouble greens_first_order(const core::WavePacket& packet, double g, double x, double t) {
    if (packet.kind != core::Dispersion::nonrelativistic) {
        throw std::invalid_argument("greens_first_order: nonrelativistic packets only");
    }
    if (g == 0.0) return {};
    const double hc = constants().hbar_c_mev_fm;
    const double m = packet.mass;
    const double P0 = packet.P0.x;
    const double X0 = packet.X0.x;
    const double T0 = packet.T0;
    if (P0 == 0.0) throw std::invalid_argument("greens_first_order: packet must move (P0 != 0)");
    const double v0 = P0 / m;
    const double E0 = P0 * P0 / (2.0 * m);
    const double n1 = std::pow(M_PI * packet.sigma, -0.25);
    const double rs = std::sqrt(packet.sigma);

    // The incident packet crosses the origin at t0; the integrand support is
    // the crossing interval. The |t - t'|^{-1/2} kernel must stay regular on
    // it, i.e. the observation time must lie outside.
    const double t_cross = T0 - X0 / v0;
    const double half_support = 8.0 * rs / std::abs(v0);
    const double lo = t_cross - half_support, hi = t_cross + half_support;
    if (t > lo && t < hi) {
        throw std::domain_error("greens_first_order: observation time inside the "
                                "packet's crossing interval");
    }
    auto integrand = [&](double tp) -> cdouble {
        const double dt = std::abs(t - tp);
        const double kernel_mod = 1.0 / std::sqrt(2.0 * M_PI * hc * dt / m);
        const double kernel_phase = m * x * x / (2.0 * hc * dt);
        const double xc = X0 + v0 * (tp - T0); // packet center at emission time
        const double env = n1 * std::exp(-xc * xc / (2.0 * packet.sigma));
        const double pkt_phase = (P0 * (0.0 - X0) - E0 * (tp - T0)) / hc;
        return kernel_mod * env * std::polar(1.0, kernel_phase + pkt_phase);
    };
    const auto r = quad::adaptive_gk(integrand, lo, hi, 1e-14, 1e-9);
    return g * r.value;
}

// ------------------------------------------------- lifetime / boundary sizes

double coherence_from_lifetime(double v0, double tau) {
    if (!(v0 > 0.0) || !(tau > 0.0)) {
        throw std::invalid_argument("coherence_from_lifetime: v0, tau must be > 0");
    }
    return v0 * tau;
}

double boundary_match(double tau_m, double sigma_m, double v) {
    if (!(tau_m > 0.0) || !(sigma_m > 0.0) || !(v > 0.0)) {
        throw std::invalid_argument("boundary_match: inputs must be > 0");
    }
    const double medium = std::isinf(sigma_m) ? 0.0 : v / std::sqrt(sigma_m);
    const double rate = 1.0 / tau_m + medium;
    const double rs = v / rate;
    return rs * rs;
}

double boundary_match_two_media(double tau_1, double sigma_1, double tau_2, double v) {
    if (!(tau_1 > 0.0) || !(sigma_1 > 0.0) || !(tau_2 > 0.0) || !(v > 0.0)) {
        throw std::invalid_argument("boundary_match_two_media: inputs must be > 0");
    }
    const double src = std::isinf(sigma_1) ? 0.0 : v / std::sqrt(sigma_1);
    const double rate = 1.0 / tau_1 + src - 1.0 / tau_2;
    if (!(rate > 0.0)) {
        throw std::domain_error("boundary_match_two_media: no positive-width match "
                                "(1/tau_1 + v/sqrt(sigma_1) <= 1/tau_2)");
    }
    const double rs = v / rate;
    return rs * rs;
}

double variational_rate(double v0, double sigma, bool exact_factor) {
    if (!(v0 > 0.0) || !(sigma > 0.0)) {
        throw std::invalid_argument("variational_rate: inputs must be > 0");
    }
    const double factor = exact_factor ? 2.0 / std::sqrt(M_PI) : 1.0;
    return factor * v0 / std::sqrt(sigma);
}

} // namespace wavepack::c1d
