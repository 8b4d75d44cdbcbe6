#include "volap/oracle.hpp"

#include <mpfr.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "volap/common.hpp"
#include "volap/quadrature.hpp"

namespace volap::oracle {

namespace {

// derivatives by central differences; the PV contract only needs u in C^2
double deriv1(const std::function<double(double)>& u, double x) {
    const double h = 1e-3 * std::max(1.0, std::fabs(x));
    return (-u(x + 2 * h) + 8 * u(x + h) - 8 * u(x - h) + u(x - 2 * h)) /
           (12 * h);
}

double deriv2(const std::function<double(double)>& u, double x) {
    const double h = 2e-4 * std::max(1.0, std::fabs(x));
    return (u(x + h) - 2 * u(x) + u(x - h)) / (h * h);
}

struct PvParts {
    double near_field, mid_field, far_field;
    double total() const { return near_field + mid_field + far_field; }
};

PvParts pv_parts(const std::function<double(double)>& u, double x,
                 double alpha, double tol, double scale) {
    const double ux = u(x);
    const double up = deriv1(u, x);
    const double upp = std::fabs(deriv2(u, x));

    // eta ~ tol^{1/(3-alpha)} scaled by the local curvature
    double eta = std::pow(tol / std::max(upp, 1.0), 1.0 / (3.0 - alpha));
    eta = std::clamp(eta, 1e-8, 0.25);

    quad::QuadOptions opt;
    opt.rel_tol = 0.05 * tol;
    opt.abs_tol = 0.05 * tol * scale;
    opt.max_panels = 60000;

    // near field in offset coordinates: the u'(x) t term cancels the odd
    // part of the kernel, leaving an integrable O(|t|^{1-alpha}) remainder
    auto near_f = [&](double t) {
        return (ux - u(x + t) + up * t) * std::pow(std::fabs(t), -1.0 - alpha);
    };
    const double near_val = quad::integrate_adaptive(near_f, 0.0, eta, opt).value +
                            quad::integrate_adaptive(near_f, -eta, 0.0, opt).value;

    auto full_f = [&](double t) {
        return (ux - u(x + t)) * std::pow(std::fabs(t), -1.0 - alpha);
    };
    const double R0 = 8.0 * (1.0 + std::fabs(x));
    const double mid_val = quad::integrate_adaptive(full_f, eta, R0, opt).value +
                           quad::integrate_adaptive(full_f, -R0, -eta, opt).value;

    // far field: the u(x) part integrates in closed form; the u(y) part is
    // summed over geometrically growing blocks (handles oscillatory decay)
    const double far_const = 2.0 * ux * std::pow(R0, -alpha) / alpha;
    auto tail_up = [&](double t) {
        return -u(x + t) * std::pow(t, -1.0 - alpha);
    };
    auto tail_dn = [&](double t) {
        return -u(x - t) * std::pow(t, -1.0 - alpha);
    };
    double far_val = far_const;
    try {
        far_val += quad::integrate_blocks_up(tail_up, R0, opt, R0).value;
        far_val += quad::integrate_blocks_up(tail_dn, R0, opt, R0).value;
    } catch (const ConvergenceError&) {
        throw ConvergenceError("pv_vo_laplacian_1d: tail estimate exceeds tol");
    }
    return {near_val, mid_val, far_val};
}

}  // namespace

double pv_vo_laplacian_1d(const std::function<double(double)>& u, double x,
                          double alpha, double tol) {
    if (!(alpha > 0.0 && alpha < 2.0))
        throw std::domain_error("pv_vo_laplacian_1d: alpha in (0, 2)");
    if (!(tol > 0.0)) throw std::invalid_argument("pv_vo_laplacian_1d: tol > 0");
    // C_{1,alpha} from libm, independent of the specfun module
    const double c1a = std::exp2(alpha - 1.0) * alpha *
                       std::tgamma(0.5 * (alpha + 1.0)) /
                       (std::sqrt(M_PI) * std::tgamma(1.0 - 0.5 * alpha));
    // loose pass fixes the magnitude, tight pass meets tol against it
    const double rough = pv_parts(u, x, alpha, std::sqrt(tol), 1.0).total();
    const double scale = std::max(std::fabs(rough), 1e-8);
    return c1a * pv_parts(u, x, alpha, tol, scale).total();
}

namespace {

struct MpfrValue {
    mpfr_t v;
    explicit MpfrValue(mpfr_prec_t prec) { mpfr_init2(v, prec); }
    ~MpfrValue() { mpfr_clear(v); }
    MpfrValue(const MpfrValue&) = delete;
};

}  // namespace

std::string highprec_pfq(std::span<const double> a, std::span<const double> b,
                         double z, int digits) {
    const int p = static_cast<int>(a.size());
    const int q = static_cast<int>(b.size());
    if (p > q + 1) throw std::domain_error("highprec_pfq: p <= q+1");
    for (double bk : b)
        if (bk <= 0.0 && bk == std::floor(bk))
            throw std::domain_error("highprec_pfq: lower parameter at pole");
    bool terminating = false;
    for (double ak : a)
        if (ak <= 0.0 && ak == std::floor(ak)) terminating = true;

    const mpfr_prec_t prec =
        static_cast<mpfr_prec_t>(digits * 3.3219280948873626) + 64;

    if (p == q + 1 && !terminating && std::fabs(z) >= 1.0) {
        if (p == 2 && z == 1.0 && b[0] - a[0] - a[1] > 0.0) {
            // Gauss: 2F1(a1,a2;c;1) = G(c)G(c-a1-a2)/(G(c-a1)G(c-a2))
            MpfrValue r(prec), t(prec);
            mpfr_set_d(r.v, b[0], MPFR_RNDN);
            mpfr_gamma(r.v, r.v, MPFR_RNDN);
            mpfr_set_d(t.v, b[0] - a[0] - a[1], MPFR_RNDN);
            mpfr_gamma(t.v, t.v, MPFR_RNDN);
            mpfr_mul(r.v, r.v, t.v, MPFR_RNDN);
            mpfr_set_d(t.v, b[0] - a[0], MPFR_RNDN);
            mpfr_gamma(t.v, t.v, MPFR_RNDN);
            mpfr_div(r.v, r.v, t.v, MPFR_RNDN);
            mpfr_set_d(t.v, b[0] - a[1], MPFR_RNDN);
            mpfr_gamma(t.v, t.v, MPFR_RNDN);
            mpfr_div(r.v, r.v, t.v, MPFR_RNDN);
            char buf[256];
            mpfr_snprintf(buf, sizeof buf, "%.*Re", digits, r.v);
            return buf;
        }
        throw std::domain_error("highprec_pfq: p = q+1 requires |z| < 1");
    }

    MpfrValue sum(prec), term(prec), ratio(prec), tmp(prec), zz(prec);
    mpfr_set_d(sum.v, 1.0, MPFR_RNDN);
    mpfr_set_d(term.v, 1.0, MPFR_RNDN);
    mpfr_set_d(zz.v, z, MPFR_RNDN);

    MpfrValue thresh(prec);
    mpfr_set_ui(thresh.v, 10, MPFR_RNDN);
    mpfr_pow_si(thresh.v, thresh.v, -(digits + 10), MPFR_RNDN);

    const long max_terms = 2000000;
    bool converged = false;
    for (long n = 0; n < max_terms; ++n) {
        // term *= prod(a_k + n) / prod(b_k + n) * z / (n+1)
        mpfr_set(ratio.v, zz.v, MPFR_RNDN);
        mpfr_div_ui(ratio.v, ratio.v, static_cast<unsigned long>(n + 1),
                    MPFR_RNDN);
        for (double ak : a) {
            mpfr_set_d(tmp.v, ak + n, MPFR_RNDN);
            mpfr_mul(ratio.v, ratio.v, tmp.v, MPFR_RNDN);
        }
        for (double bk : b) {
            mpfr_set_d(tmp.v, bk + n, MPFR_RNDN);
            mpfr_div(ratio.v, ratio.v, tmp.v, MPFR_RNDN);
        }
        mpfr_mul(term.v, term.v, ratio.v, MPFR_RNDN);
        if (mpfr_zero_p(term.v)) {
            converged = true;
            break;
        }
        mpfr_add(sum.v, sum.v, term.v, MPFR_RNDN);
        // stop once |term| < 1e-(digits+10) |sum| and the term ratio has
        // dropped below 1/2 (geometric tail below the threshold)
        mpfr_abs(tmp.v, term.v, MPFR_RNDN);
        MpfrValue bound(prec);
        mpfr_abs(bound.v, sum.v, MPFR_RNDN);
        mpfr_mul(bound.v, bound.v, thresh.v, MPFR_RNDN);
        if (mpfr_cmp(tmp.v, bound.v) < 0) {
            mpfr_abs(tmp.v, ratio.v, MPFR_RNDN);
            if (mpfr_cmp_d(tmp.v, 0.5) < 0) {
                converged = true;
                break;
            }
        }
    }
    if (!converged) throw ConvergenceError("highprec_pfq: no convergence");
    char buf[256];
    mpfr_snprintf(buf, sizeof buf, "%.*Re", digits, sum.v);
    return buf;
}

double highprec_pfq_double(std::span<const double> a,
                           std::span<const double> b, double z, int digits) {
    return std::stod(highprec_pfq(a, b, z, digits));
}

}  // namespace volap::oracle
