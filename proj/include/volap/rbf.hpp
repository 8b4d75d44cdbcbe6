#pragma once

#include "volap/specfun.hpp"

namespace volap::rbf {

enum class Family { gaussian, gimq, bessel };

// Globally supported kernel with shape parameter epsilon:
//   gaussian  phi(r) = exp(-r^2)
//   gimq      phi(r) = (1 + r^2)^{-beta},        beta > 0
//   bessel    phi(r) = J_{m/2-1}(r) / r^{m/2-1}, m >= 1
struct RbfKernel {
    Family family = Family::gaussian;
    double beta = 1.0;
    int m = 2;
    double epsilon = 1.0;

    static RbfKernel gaussian(double eps);
    static RbfKernel gimq(double beta, double eps);
    static RbfKernel bessel(int m, double eps);
    // the default gIMQ exponent used by the experiments, beta = (d+1)/2
    static RbfKernel gimq_default(int d, double eps);
    const char* name() const;
};

struct OperatorParams {
    int d = 1;
    double alpha = 1.0;  // pointwise exponent value alpha(x) in (0, 2]
};

// phi^eps(r) = phi(eps r); the Bessel family goes through its series limit
// at r = 0.
double kernel_value(const RbfKernel& k, double r);

// Normalization C_{d,alpha} of the singular-integral form; exactly 0 at
// alpha = 2 through the entire reciprocal Gamma.
double c_norm(int d, double alpha);

// Psi^{alpha}(r): the variable-order Laplacian of phi^eps(|.|) at distance
// r from the center, frozen at exponent value p.alpha.
double psi_value(const RbfKernel& k, const OperatorParams& p, double r);

// -Delta phi^eps(|.|) from radial calculus, the independent alpha = 2
// cross-check path.
double classical_laplacian_kernel(const RbfKernel& k, int d, double r);

}  // namespace volap::rbf
