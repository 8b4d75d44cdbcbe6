#pragma once

#include <Eigen/Dense>
#include <functional>
#include <span>
#include <vector>

#include "volap/exterior.hpp"
#include "volap/geometry.hpp"
#include "volap/rbf.hpp"

namespace volap::collocation {

using ExtData = std::function<double(const geometry::Point&)>;

struct OperatorSystem {
    Eigen::MatrixXd A;  // interpolation matrix, A_ki = phi^eps(|x_k - x_i|)
    Eigen::MatrixXd B;  // operator matrix: interior rows Psi + C*exterior,
                        // boundary rows plain kernel rows
    Eigen::VectorXd rhs;
    std::vector<bool> boundary_mask;
    double condition_estimate = 0.0;
};

struct SolutionField {
    Eigen::VectorXd lambda;
    Eigen::VectorXd nodal_values;  // A * lambda
    rbf::RbfKernel kernel;
    geometry::NodeSet nodes;
    double condition_estimate = 0.0;
    double assemble_seconds = 0.0;
    double solve_seconds = 0.0;
};

// Affine nodal representation of (-Delta)_h^{alpha/2} on interior nodes:
// value = M * u_interior + q, boundary nodes held at g.
struct AffineOperator {
    Eigen::MatrixXd M;
    Eigen::VectorXd q;
    std::vector<int> interior_index;  // interior position -> node index
    geometry::NodeSet nodes;
};

Eigen::MatrixXd assemble_interp(const geometry::NodeSet& nodes,
                                const rbf::RbfKernel& k);

Eigen::MatrixXd assemble_operator(const geometry::NodeSet& nodes,
                                  const rbf::RbfKernel& k,
                                  const geometry::ExponentField& afield,
                                  const geometry::Domain& dom,
                                  const exterior::QuadratureControl& qctl = {});

OperatorSystem assemble_poisson(const geometry::NodeSet& nodes,
                                const rbf::RbfKernel& k,
                                const geometry::ExponentField& afield,
                                const geometry::Domain& dom,
                                const std::function<double(const geometry::Point&)>& f,
                                const ExtData& g,
                                const exterior::QuadratureControl& qctl = {});

// Row-pivoted LU solve of B * lambda = rhs with a 1-norm condition estimate;
// a warning is printed above 1e14.
SolutionField solve_dense(const OperatorSystem& sys, const rbf::RbfKernel& k,
                          const geometry::NodeSet& nodes);

Eigen::VectorXd evaluate(const SolutionField& sol,
                         std::span<const geometry::Point> pts);

// (-Delta)_h^{alpha(x)/2} u at strictly interior points: sum of lambda_i
// Psi_i plus the c_norm-weighted exterior correction against data g.
Eigen::VectorXd evaluate_vo_laplacian(const SolutionField& sol,
                                      std::span<const geometry::Point> pts,
                                      const geometry::ExponentField& afield,
                                      const geometry::Domain& dom,
                                      const ExtData& g,
                                      const exterior::QuadratureControl& qctl = {});

AffineOperator differentiation_operator(const geometry::NodeSet& nodes,
                                        const rbf::RbfKernel& k,
                                        const geometry::ExponentField& afield,
                                        const geometry::Domain& dom,
                                        const ExtData& g,
                                        const exterior::QuadratureControl& qctl = {});

// Hager-style 1-norm condition estimate from an existing factorization.
double condest_1(const Eigen::PartialPivLU<Eigen::MatrixXd>& lu,
                 const Eigen::MatrixXd& A);

}  // namespace volap::collocation
