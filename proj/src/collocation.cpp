#include "volap/collocation.hpp"

#include <chrono>
#include <cmath>
#include <iostream>
#include <stdexcept>

#include "volap/common.hpp"
#include "volap/parallel.hpp"

namespace volap::collocation {

using geometry::Domain;
using geometry::ExponentField;
using geometry::NodeSet;
using geometry::Point;
using rbf::RbfKernel;

namespace {

double dist(const Point& a, const Point& b, int d) {
    if (d == 1) return std::fabs(a[0] - b[0]);
    return std::hypot(a[0] - b[0], a[1] - b[1]);
}

double now_seconds() {
    using clock = std::chrono::steady_clock;
    return std::chrono::duration<double>(clock::now().time_since_epoch())
        .count();
}

}  // namespace

Eigen::MatrixXd assemble_interp(const NodeSet& nodes, const RbfKernel& k) {
    const int n = nodes.n_total();
    Eigen::MatrixXd A(n, n);
    for (int i = 0; i < n; ++i) {
        A(i, i) = rbf::kernel_value(k, 0.0);
        for (int j = i + 1; j < n; ++j) {
            const double r = dist(nodes.points[i], nodes.points[j], nodes.d);
            if (r < 1e-14)
                throw std::invalid_argument("assemble_interp: duplicate nodes");
            const double v = rbf::kernel_value(k, r);
            A(i, j) = v;
            A(j, i) = v;  // symmetric fill
        }
    }
    return A;
}

Eigen::MatrixXd assemble_operator(const NodeSet& nodes, const RbfKernel& k,
                                  const ExponentField& afield,
                                  const Domain& dom,
                                  const exterior::QuadratureControl& qctl) {
    const int n = nodes.n_total();
    Eigen::MatrixXd B(n, n);
    parallel_for(n, [&](int row) {
        const Point& xk = nodes.points[row];
        if (nodes.boundary_mask[row]) {
            for (int i = 0; i < n; ++i)
                B(row, i) =
                    rbf::kernel_value(k, dist(xk, nodes.points[i], nodes.d));
            return;
        }
        const double alpha = geometry::eval_alpha(afield, xk);
        const rbf::OperatorParams op{nodes.d, alpha};
        for (int i = 0; i < n; ++i)
            B(row, i) = rbf::psi_value(k, op, dist(xk, nodes.points[i], nodes.d));
        const double cn = rbf::c_norm(nodes.d, alpha);
        if (cn != 0.0) {  // the exterior term vanishes exactly at alpha = 2
            std::vector<double> ext(n);
            exterior::exterior_kernel_integral_batch(dom, k, nodes.points, xk,
                                                     alpha, qctl, ext);
            for (int i = 0; i < n; ++i) B(row, i) += cn * ext[i];
        }
    });
    return B;
}

OperatorSystem assemble_poisson(const NodeSet& nodes, const RbfKernel& k,
                                const ExponentField& afield, const Domain& dom,
                                const std::function<double(const Point&)>& f,
                                const ExtData& g,
                                const exterior::QuadratureControl& qctl) {
    OperatorSystem sys;
    sys.A = assemble_interp(nodes, k);
    sys.B = assemble_operator(nodes, k, afield, dom, qctl);
    sys.boundary_mask = nodes.boundary_mask;
    const int n = nodes.n_total();
    sys.rhs.resize(n);
    parallel_for(n, [&](int row) {
        const Point& xk = nodes.points[row];
        if (nodes.boundary_mask[row]) {
            sys.rhs(row) = g ? g(xk) : 0.0;
            return;
        }
        double v = f(xk);
        const double alpha = geometry::eval_alpha(afield, xk);
        const double cn = rbf::c_norm(nodes.d, alpha);
        if (cn != 0.0 && g)
            v += cn * exterior::exterior_data_integral(dom, g, xk, alpha, qctl);
        sys.rhs(row) = v;
    });
    return sys;
}

double condest_1(const Eigen::PartialPivLU<Eigen::MatrixXd>& lu,
                 const Eigen::MatrixXd& A) {
    const int n = static_cast<int>(A.rows());
    Eigen::VectorXd x = Eigen::VectorXd::Constant(n, 1.0 / n);
    double inv_norm = 0.0;
    int last_j = -1;
    for (int iter = 0; iter < 5; ++iter) {
        const Eigen::VectorXd y = lu.solve(x);
        inv_norm = y.lpNorm<1>();
        Eigen::VectorXd xi(n);
        for (int i = 0; i < n; ++i) xi(i) = y(i) >= 0.0 ? 1.0 : -1.0;
        const Eigen::VectorXd z = lu.adjoint().solve(xi);
        int j;
        const double zmax = z.cwiseAbs().maxCoeff(&j);
        if (zmax <= z.dot(x) || j == last_j) break;
        x.setZero();
        x(j) = 1.0;
        last_j = j;
    }
    return A.cwiseAbs().colwise().sum().maxCoeff() * inv_norm;
}

SolutionField solve_dense(const OperatorSystem& sys, const RbfKernel& k,
                          const NodeSet& nodes) {
    if (sys.B.rows() != sys.B.cols() || sys.B.rows() != sys.rhs.size())
        throw std::invalid_argument("solve_dense: system must be square");
    SolutionField sol;
    sol.kernel = k;
    sol.nodes = nodes;
    const double t0 = now_seconds();
    Eigen::PartialPivLU<Eigen::MatrixXd> lu(sys.B);
    sol.lambda = lu.solve(sys.rhs);
    if (!sol.lambda.allFinite())
        throw ConvergenceError("solve_dense: factorization produced non-finite "
                               "coefficients (singular to working precision)");
    sol.condition_estimate = condest_1(lu, sys.B);
    if (sol.condition_estimate > 1e14)
        std::cerr << "solve_dense: condition estimate "
                  << sol.condition_estimate << " exceeds 1e14\n";
    sol.nodal_values = sys.A.rows() == sys.B.rows() ? (sys.A * sol.lambda).eval()
                                                    : Eigen::VectorXd();
    sol.solve_seconds = now_seconds() - t0;
    return sol;
}

Eigen::VectorXd evaluate(const SolutionField& sol,
                         std::span<const Point> pts) {
    const int n = sol.nodes.n_total();
    Eigen::VectorXd out(static_cast<int>(pts.size()));
    for (size_t p = 0; p < pts.size(); ++p) {
        double acc = 0.0;
        for (int i = 0; i < n; ++i)
            acc += sol.lambda(i) *
                   rbf::kernel_value(sol.kernel,
                                     dist(pts[p], sol.nodes.points[i], sol.nodes.d));
        out(static_cast<int>(p)) = acc;
    }
    return out;
}

Eigen::VectorXd evaluate_vo_laplacian(const SolutionField& sol,
                                      std::span<const Point> pts,
                                      const ExponentField& afield,
                                      const Domain& dom, const ExtData& g,
                                      const exterior::QuadratureControl& qctl) {
    const int n = sol.nodes.n_total();
    const int np = static_cast<int>(pts.size());
    Eigen::VectorXd out(np);
    parallel_for(np, [&](int p) {
        const Point& x = pts[static_cast<size_t>(p)];
        const double alpha = geometry::eval_alpha(afield, x);
        const rbf::OperatorParams op{sol.nodes.d, alpha};
        double acc = 0.0;
        for (int i = 0; i < n; ++i)
            acc += sol.lambda(i) *
                   rbf::psi_value(sol.kernel, op,
                                  dist(x, sol.nodes.points[i], sol.nodes.d));
        const double cn = rbf::c_norm(sol.nodes.d, alpha);
        if (cn != 0.0) {
            std::vector<double> ext(n);
            exterior::exterior_kernel_integral_batch(dom, sol.kernel,
                                                     sol.nodes.points, x, alpha,
                                                     qctl, ext);
            double corr = 0.0;
            for (int i = 0; i < n; ++i) corr += sol.lambda(i) * ext[i];
            if (g)
                corr -= exterior::exterior_data_integral(dom, g, x, alpha, qctl);
            acc += cn * corr;
        }
        out(p) = acc;
    });
    return out;
}

AffineOperator differentiation_operator(const NodeSet& nodes,
                                        const RbfKernel& k,
                                        const ExponentField& afield,
                                        const Domain& dom, const ExtData& g,
                                        const exterior::QuadratureControl& qctl) {
    const int n = nodes.n_total();
    AffineOperator aff;
    aff.nodes = nodes;
    for (int i = 0; i < n; ++i)
        if (!nodes.boundary_mask[i]) aff.interior_index.push_back(i);
    const int ni = static_cast<int>(aff.interior_index.size());

    const Eigen::MatrixXd A = assemble_interp(nodes, k);
    const Eigen::MatrixXd B = assemble_operator(nodes, k, afield, dom, qctl);
    Eigen::PartialPivLU<Eigen::MatrixXd> lu(A);

    // nodal data embeds as [u_interior; g on boundary]; lambda = A^{-1} data
    Eigen::MatrixXd embed = Eigen::MatrixXd::Zero(n, ni);
    for (int j = 0; j < ni; ++j) embed(aff.interior_index[j], j) = 1.0;
    Eigen::VectorXd gpad = Eigen::VectorXd::Zero(n);
    if (g)
        for (int i = 0; i < n; ++i)
            if (nodes.boundary_mask[i]) gpad(i) = g(nodes.points[i]);

    const Eigen::MatrixXd X = lu.solve(embed);
    const Eigen::VectorXd w = lu.solve(gpad);

    Eigen::MatrixXd Bint(ni, n);
    for (int j = 0; j < ni; ++j) Bint.row(j) = B.row(aff.interior_index[j]);

    aff.M = Bint * X;
    aff.q = Bint * w;
    if (g) {
        parallel_for(ni, [&](int j) {
            const Point& xk = nodes.points[aff.interior_index[j]];
            const double alpha = geometry::eval_alpha(afield, xk);
            const double cn = rbf::c_norm(nodes.d, alpha);
            if (cn != 0.0)
                aff.q(j) -= cn * exterior::exterior_data_integral(dom, g, xk,
                                                                  alpha, qctl);
        });
    }
    return aff;
}

}  // namespace volap::collocation
