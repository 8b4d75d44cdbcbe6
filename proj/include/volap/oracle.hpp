#pragma once

#include <functional>
#include <span>
#include <string>

namespace volap::oracle {

// Reference evaluation of the 1-d principal-value integral form of
// (-Delta)^{alpha/2} u at x, for 0 < alpha < 2.  Independent of the
// hypergeometric formula layer: Gamma factors come from libm, the integral
// is split into a Taylor-subtracted near field, an adaptive mid field, and
// a block-summed far field.  tol is a relative target.
double pv_vo_laplacian_1d(const std::function<double(double)>& u, double x,
                          double alpha, double tol = 1e-8);

// pFq summed in MPFR arithmetic at >= `digits` decimal digits; returns the
// value as a decimal string.  p = q+1 needs |z| < 1, except 2F1 at z = 1
// with c-a-b > 0 which goes through the Gauss summation theorem.
std::string highprec_pfq(std::span<const double> a, std::span<const double> b,
                         double z, int digits);

// Convenience: the same value rounded to double.
double highprec_pfq_double(std::span<const double> a,
                           std::span<const double> b, double z,
                           int digits = 50);

}  // namespace volap::oracle
