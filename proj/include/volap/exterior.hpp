#pragma once

#include <functional>
#include <span>

#include "volap/geometry.hpp"
#include "volap/rbf.hpp"

namespace volap::exterior {

// Controls for the nonsingular complement integrals.  truncation_radius
// (d = 2) is the distance from the domain's bounding box past which the
// remaining tail is handled by a decay-envelope estimate instead of more
// quadrature; 0 keeps tiling geometrically until the ring sums converge.
struct QuadratureControl {
    double rel_tol = 1e-10;
    double abs_tol = 1e-13;
    int max_subdivisions = 20000;
    double truncation_radius = 0.0;
};

// integral over Omega^c of phi^eps(|y - center|) / |x - y|^{d+alpha} dy,
// for x strictly interior.  Gaussian and gIMQ half-lines go through the
// t/(1-t) rational map; Bessel kernels are oscillatory and are summed in
// geometrically growing blocks instead (the slowest path).
double exterior_kernel_integral(const geometry::Domain& dom,
                                const rbf::RbfKernel& k,
                                const geometry::Point& center,
                                const geometry::Point& x, double alpha,
                                const QuadratureControl& ctl = {});

// Same integral for a family of centers sharing quadrature nodes; columns
// of one operator row are filled in a single adaptive pass.
void exterior_kernel_integral_batch(const geometry::Domain& dom,
                                    const rbf::RbfKernel& k,
                                    std::span<const geometry::Point> centers,
                                    const geometry::Point& x, double alpha,
                                    const QuadratureControl& ctl,
                                    std::span<double> out);

// integral over Omega^c of g(y) / |x - y|^{d+alpha} dy.  An empty function
// is the literal zero data and short-circuits to exactly 0.
double exterior_data_integral(
    const geometry::Domain& dom,
    const std::function<double(const geometry::Point&)>& g,
    const geometry::Point& x, double alpha, const QuadratureControl& ctl = {});

}  // namespace volap::exterior
