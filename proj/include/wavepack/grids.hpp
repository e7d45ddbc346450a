#pragma once
#include <functional>
#include <vector>

#include "wavepack/continuum_1d.hpp"

namespace wavepack::grids {

// OpenMP-parallel grid kernels. Every output element is computed by exactly
// the same scalar expression as the serial path and written to its own slot,
// so parallel and serial results agree bit-for-bit; `parallel = false` forces
// the serial reference loop (used by tests and the benchmark tool).

// delta_term (or delta_term_derived) over the (k1, k2) product grid,
// row-major: out[i * k2s.size() + j] = Delta(k1s[i], k2s[j]).
std::vector<c1d::cdouble> delta_heatmap(const c1d::PotentialModel1D& model,
                                        const std::vector<double>& k1s,
                                        const std::vector<double>& k2s,
                                        bool derived_variant = false,
                                        bool parallel = true);

// Norm-drift kernel assembly; the n^2 overlap_decomposition calls dominate.
// Result is element-wise identical to c1d::norm_drift_kernel.
c1d::NormDriftKernel norm_drift_assemble(const std::function<c1d::cdouble(double)>& alpha,
                                         const c1d::PotentialModel1D& model, double kmin,
                                         double kmax, int n, bool parallel = true);

// N(t) on a time grid; parallel across grid points, each point's double sum
// kept in the fixed serial order.
std::vector<double> norm_drift_sweep(const c1d::NormDriftKernel& kernel,
                                     const std::vector<double>& ts, bool parallel = true);

// Number of OpenMP threads the kernels will use (1 when built without OpenMP).
int max_threads();

} // namespace wavepack::grids
