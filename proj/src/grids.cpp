#include "wavepack/grids.hpp"

#include <stdexcept>

#include "wavepack/quadrature.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace wavepack::grids {

using c1d::cdouble;

std::vector<cdouble> delta_heatmap(const c1d::PotentialModel1D& model,
                                   const std::vector<double>& k1s,
                                   const std::vector<double>& k2s, bool derived_variant,
                                   bool parallel) {
    const long n1 = static_cast<long>(k1s.size());
    const long n2 = static_cast<long>(k2s.size());
    std::vector<cdouble> out(static_cast<size_t>(n1) * n2);
    auto cell = [&](long i, long j) {
        const auto d = c1d::overlap_decomposition(model, k1s[i], k2s[j]);
        out[static_cast<size_t>(i) * n2 + j] =
            derived_variant ? d.delta_term_derived : d.delta_term;
    };
#ifdef _OPENMP
    if (parallel) {
#pragma omp parallel for collapse(2) schedule(static)
        for (long i = 0; i < n1; ++i) {
            for (long j = 0; j < n2; ++j) cell(i, j);
        }
        return out;
    }
#else
    (void)parallel;
#endif
    for (long i = 0; i < n1; ++i) {
        for (long j = 0; j < n2; ++j) cell(i, j);
    }
    return out;
}

c1d::NormDriftKernel norm_drift_assemble(const std::function<cdouble(double)>& alpha,
                                         const c1d::PotentialModel1D& model, double kmin,
                                         double kmax, int n, bool parallel) {
    if (!(kmin > 0.0) || !(kmax > kmin)) {
        throw std::invalid_argument("norm_drift_assemble: need 0 < kmin < kmax");
    }
    if (n < 2) throw std::invalid_argument("norm_drift_assemble: need n >= 2");
    const auto& gl = quad::gauss_legendre(n);
    c1d::NormDriftKernel ker;
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
    auto cell = [&](long i, long j) {
        const cdouble eps = -c1d::overlap_decomposition(model, ker.k[i], ker.k[j]).delta_term;
        ker.mat[static_cast<size_t>(i) * n + j] = w[i] * w[j] * std::conj(av[j]) * av[i] * eps;
    };
    const long nl = n;
#ifdef _OPENMP
    if (parallel) {
#pragma omp parallel for collapse(2) schedule(static)
        for (long i = 0; i < nl; ++i) {
            for (long j = 0; j < nl; ++j) cell(i, j);
        }
        return ker;
    }
#else
    (void)parallel;
#endif
    for (long i = 0; i < nl; ++i) {
        for (long j = 0; j < nl; ++j) cell(i, j);
    }
    return ker;
}

std::vector<double> norm_drift_sweep(const c1d::NormDriftKernel& kernel,
                                     const std::vector<double>& ts, bool parallel) {
    const long nt = static_cast<long>(ts.size());
    std::vector<double> out(ts.size());
#ifdef _OPENMP
    if (parallel) {
#pragma omp parallel for schedule(static)
        for (long i = 0; i < nt; ++i) out[i] = kernel.evaluate(ts[i]);
        return out;
    }
#else
    (void)parallel;
#endif
    for (long i = 0; i < nt; ++i) out[i] = kernel.evaluate(ts[i]);
    return out;
}

int max_threads() {
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

} // namespace wavepack::grids
