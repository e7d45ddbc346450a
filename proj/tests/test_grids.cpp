#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <vector>

#include "wavepack/continuum_1d.hpp"
#include "wavepack/grids.hpp"

using namespace wavepack;
using c1d::cdouble;

namespace {

std::vector<double> linspace(double a, double b, int n) {
    std::vector<double> v(n);
    for (int i = 0; i < n; ++i) v[i] = a + (b - a) * i / (n - 1);
    return v;
}

} // namespace

TEST_CASE("heatmap slots hold the pointwise decomposition, serial == parallel") {
    const auto model = c1d::PotentialModel1D::delta(0.8, 1.1);
    const auto k1s = linspace(0.4, 2.0, 13);
    const auto k2s = linspace(0.5, 2.2, 17);
    for (bool derived : {false, true}) {
        const auto par = grids::delta_heatmap(model, k1s, k2s, derived, true);
        const auto ser = grids::delta_heatmap(model, k1s, k2s, derived, false);
        REQUIRE(par.size() == k1s.size() * k2s.size());
        REQUIRE(ser.size() == par.size());
        for (size_t i = 0; i < k1s.size(); ++i) {
            for (size_t j = 0; j < k2s.size(); ++j) {
                const auto d = c1d::overlap_decomposition(model, k1s[i], k2s[j]);
                const cdouble want = derived ? d.delta_term_derived : d.delta_term;
                const cdouble got = par[i * k2s.size() + j];
                CHECK(got == want);                     // same scalar expression
                CHECK(ser[i * k2s.size() + j] == got);  // bit-for-bit
            }
        }
    }
}

TEST_CASE("norm-drift assembly matches the direct kernel element-wise") {
    const auto model = c1d::PotentialModel1D::delta(1.0, 1.0);
    const auto alpha = c1d::gaussian_alpha(1.0, 0.2);
    const auto direct = c1d::norm_drift_kernel(alpha, model, 0.1, 2.0, 48);
    const auto par = grids::norm_drift_assemble(alpha, model, 0.1, 2.0, 48, true);
    const auto ser = grids::norm_drift_assemble(alpha, model, 0.1, 2.0, 48, false);
    REQUIRE(par.n == direct.n);
    REQUIRE(par.mat.size() == direct.mat.size());
    for (size_t i = 0; i < direct.mat.size(); ++i) {
        CHECK(par.mat[i] == direct.mat[i]);
        CHECK(ser.mat[i] == direct.mat[i]);
    }
    CHECK(par.k == direct.k);
    CHECK(par.energy == direct.energy);
}

TEST_CASE("time sweep equals pointwise evaluation, serial == parallel") {
    const auto model = c1d::PotentialModel1D::delta(1.0, 1.0);
    const auto kernel =
        grids::norm_drift_assemble(c1d::gaussian_alpha(1.0, 0.2), model, 0.1, 2.0, 48);
    const auto ts = linspace(0.0, 40.0, 101);
    const auto par = grids::norm_drift_sweep(kernel, ts, true);
    const auto ser = grids::norm_drift_sweep(kernel, ts, false);
    REQUIRE(par.size() == ts.size());
    for (size_t i = 0; i < ts.size(); ++i) {
        CHECK(par[i] == kernel.evaluate(ts[i]));
        CHECK(ser[i] == par[i]);
    }
}

TEST_CASE("thread count is reported and positive") {
    CHECK(grids::max_threads() >= 1);
}
