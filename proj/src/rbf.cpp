#include "volap/rbf.hpp"

#include <atomic>
#include <cmath>
#include <iostream>
#include <stdexcept>

namespace volap::rbf {

using specfun::SeriesControl;

RbfKernel RbfKernel::gaussian(double eps) {
    if (!(eps > 0)) throw std::invalid_argument("RbfKernel: epsilon > 0");
    return {Family::gaussian, 1.0, 2, eps};
}

RbfKernel RbfKernel::gimq(double beta, double eps) {
    if (!(eps > 0)) throw std::invalid_argument("RbfKernel: epsilon > 0");
    if (!(beta > 0)) throw std::invalid_argument("RbfKernel: beta > 0");
    return {Family::gimq, beta, 2, eps};
}

RbfKernel RbfKernel::bessel(int m, double eps) {
    if (!(eps > 0)) throw std::invalid_argument("RbfKernel: epsilon > 0");
    if (m < 1) throw std::invalid_argument("RbfKernel: m >= 1");
    return {Family::bessel, 1.0, m, eps};
}

RbfKernel RbfKernel::gimq_default(int d, double eps) {
    return gimq(0.5 * (d + 1), eps);
}

const char* RbfKernel::name() const {
    switch (family) {
        case Family::gaussian: return "gaussian";
        case Family::gimq: return "gimq";
        case Family::bessel: return "bessel";
    }
    return "?";
}

namespace {

// J_{s-1}(rho)/rho^{s-1} = 2^{1-s}/Gamma(s) 0F1(; s; -rho^2/4), smooth
// through rho = 0; Hankel form beyond the series range.
double bessel_phi(double s, double rho) {
    if (rho > 30.0)
        return specfun::bessel_j(s - 1.0, rho) * std::pow(rho, 1.0 - s);
    const double b[1] = {s};
    SeriesControl ctl;
    const double f = specfun::hyp_pfq(std::span<const double>{}, b,
                                      -0.25 * rho * rho, ctl);
    return std::exp((1.0 - s) * std::log(2.0)) * specfun::recip_gamma(s) * f;
}

SeriesControl series_budget(double z) {
    SeriesControl ctl;
    const double az = std::fabs(z);
    ctl.max_terms = std::max(1000, static_cast<int>(2.0 * az + 60.0 * std::sqrt(az)) + 200);
    return ctl;
}

std::atomic<bool> warned_bessel_dim{false};

}  // namespace

double kernel_value(const RbfKernel& k, double r) {
    if (r < 0) throw std::invalid_argument("kernel_value: r >= 0");
    const double rho = k.epsilon * r;
    switch (k.family) {
        case Family::gaussian: return std::exp(-rho * rho);
        case Family::gimq: return std::pow(1.0 + rho * rho, -k.beta);
        case Family::bessel: return bessel_phi(0.5 * k.m, rho);
    }
    return 0.0;
}

double c_norm(int d, double alpha) {
    if (d < 1) throw std::domain_error("c_norm: d >= 1");
    if (!(alpha > 0.0) || alpha > 2.0)
        throw std::domain_error("c_norm: alpha in (0, 2]");
    const double rg = specfun::recip_gamma(1.0 - 0.5 * alpha);
    if (rg == 0.0) return 0.0;  // alpha = 2
    return std::exp((alpha - 1.0) * std::log(2.0) +
                    specfun::ln_gamma(0.5 * (alpha + d)).log_abs -
                    0.5 * d * std::log(M_PI)) *
           alpha * rg;
}

double psi_value(const RbfKernel& k, const OperatorParams& p, double r) {
    if (r < 0) throw std::invalid_argument("psi_value: r >= 0");
    if (!(p.alpha > 0.0) || p.alpha > 2.0)
        throw std::domain_error("psi_value: alpha in (0, 2]");
    if (p.d < 1) throw std::domain_error("psi_value: d >= 1");
    const double d = p.d, alpha = p.alpha;
    const double rho = k.epsilon * r;
    const double z = -rho * rho;

    if (k.family == Family::bessel && p.d > k.m &&
        !warned_bessel_dim.exchange(true)) {
        std::cerr << "psi_value: bessel kernel with d > m = " << k.m
                  << "; positive definiteness is not guaranteed\n";
    }

    // |eps|^alpha 2^alpha Gamma((d+alpha)/2)/Gamma(d/2), Lemma-style prefactor
    const double log_pref = alpha * std::log(2.0 * k.epsilon) +
                            specfun::ln_gamma(0.5 * (d + alpha)).log_abs -
                            specfun::ln_gamma(0.5 * d).log_abs;
    switch (k.family) {
        case Family::gaussian:
            return std::exp(log_pref) *
                   specfun::hyp1f1(0.5 * (d + alpha), 0.5 * d, z,
                                   series_budget(z));
        case Family::gimq:
            return std::exp(log_pref +
                            specfun::ln_gamma(k.beta + 0.5 * alpha).log_abs -
                            specfun::ln_gamma(k.beta).log_abs) *
                   specfun::hyp2f1(0.5 * (d + alpha), k.beta + 0.5 * alpha,
                                   0.5 * d, z, series_budget(z));
        case Family::bessel: {
            const double s = 0.5 * k.m;
            const double log_coef =
                alpha * std::log(k.epsilon) + (1.0 - s) * std::log(2.0) +
                specfun::ln_gamma(0.5 * (d + alpha)).log_abs -
                specfun::ln_gamma(0.5 * d).log_abs -
                specfun::ln_gamma(s + 0.5 * alpha).log_abs;
            return std::exp(log_coef) *
                   specfun::hyp1f2(0.5 * (d + alpha), s + 0.5 * alpha, 0.5 * d,
                                   0.25 * z, series_budget(0.25 * z));
        }
    }
    return 0.0;
}

double classical_laplacian_kernel(const RbfKernel& k, int d, double r) {
    if (r < 0) throw std::invalid_argument("classical_laplacian_kernel: r >= 0");
    const double e2 = k.epsilon * k.epsilon;
    const double rho = k.epsilon * r;
    const double rho2 = rho * rho;
    switch (k.family) {
        case Family::gaussian:
            return e2 * (2.0 * d - 4.0 * rho2) * std::exp(-rho2);
        case Family::gimq: {
            const double b = k.beta;
            const double w = 1.0 + rho2;
            return e2 * 2.0 * b *
                   (d * std::pow(w, -b - 1.0) -
                    2.0 * (b + 1.0) * rho2 * std::pow(w, -b - 2.0));
        }
        case Family::bessel: {
            const double s = 0.5 * k.m;
            return e2 * (d * bessel_phi(s + 1.0, rho) -
                         rho2 * bessel_phi(s + 2.0, rho));
        }
    }
    return 0.0;
}

}  // namespace volap::rbf
