#pragma once

#include <Eigen/Dense>
#include <vector>

#include "volap/collocation.hpp"

namespace volap::timestep {

struct Snapshot {
    double t;
    Eigen::VectorXd u;  // interior nodal values
};

// One evolution problem on top of the affine spatial operator (M, q).
struct EvolutionRun {
    const collocation::AffineOperator* op = nullptr;
    Eigen::VectorXd u0;
    Eigen::VectorXd v0;  // wave only
    double tau = 1e-3;
    int steps = 0;
    std::vector<int> snapshot_steps;  // sorted, may include 0 and steps
    double c = 1.0;      // wave speed
    double kappa = 1.0;  // diffusion coefficient
    double delta = 0.1;  // Allen-Cahn interface width
};

// u_tt = -c^2 (-Delta)^{alpha/2} u, central differences in time with a
// second-order Taylor launch for the first step.
std::vector<Snapshot> wave_central(const EvolutionRun& run);

// u_t = -kappa (-Delta)^{alpha/2} u, Crank-Nicolson; the left matrix is
// factorized once.
std::vector<Snapshot> crank_nicolson(const EvolutionRun& run);

// u_t = -(-Delta)^{alpha/2} u - u(u^2-1)/delta^2, classical RK4.
std::vector<Snapshot> rk4_allen_cahn(const EvolutionRun& run);

}  // namespace volap::timestep
