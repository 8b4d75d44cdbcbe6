#include "volap/timestep.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "volap/common.hpp"

namespace volap::timestep {

namespace {

void check_run(const EvolutionRun& run) {
    if (!run.op) throw std::invalid_argument("EvolutionRun: missing operator");
    if (!(run.tau > 0)) throw std::invalid_argument("EvolutionRun: tau > 0");
    for (int s : run.snapshot_steps)
        if (s < 0 || s > run.steps)
            throw std::invalid_argument("EvolutionRun: snapshot off the grid");
}

void check_norm(const Eigen::VectorXd& u, int step) {
    const double m = u.cwiseAbs().maxCoeff();
    if (!std::isfinite(m) || m > 1e8)
        throw ConvergenceError("time stepping blew up at step " +
                               std::to_string(step) + " (max |u| = " +
                               std::to_string(m) + ")");
}

void maybe_snap(std::vector<Snapshot>& snaps, const EvolutionRun& run,
                int step, const Eigen::VectorXd& u) {
    if (std::binary_search(run.snapshot_steps.begin(),
                           run.snapshot_steps.end(), step))
        snaps.push_back({step * run.tau, u});
}

}  // namespace

std::vector<Snapshot> wave_central(const EvolutionRun& run) {
    check_run(run);
    const Eigen::MatrixXd& M = run.op->M;
    const Eigen::VectorXd& q = run.op->q;
    const double c2t2 = run.c * run.c * run.tau * run.tau;

    std::vector<Snapshot> snaps;
    Eigen::VectorXd prev = run.u0;
    maybe_snap(snaps, run, 0, prev);
    if (run.steps == 0) return snaps;

    // Taylor launch: u^1 = u^0 + tau v^0 - (tau^2 c^2 / 2)(M u^0 + q)
    Eigen::VectorXd cur =
        prev + run.tau * run.v0 - 0.5 * c2t2 * (M * prev + q);
    maybe_snap(snaps, run, 1, cur);

    for (int nstep = 2; nstep <= run.steps; ++nstep) {
        Eigen::VectorXd next = 2.0 * cur - prev - c2t2 * (M * cur + q);
        prev.swap(cur);
        cur.swap(next);
        check_norm(cur, nstep);
        maybe_snap(snaps, run, nstep, cur);
    }
    return snaps;
}

std::vector<Snapshot> crank_nicolson(const EvolutionRun& run) {
    check_run(run);
    if (!(run.kappa > 0)) throw std::invalid_argument("crank_nicolson: kappa > 0");
    const Eigen::MatrixXd& M = run.op->M;
    const Eigen::VectorXd& q = run.op->q;
    const int n = static_cast<int>(run.u0.size());
    const double h = 0.5 * run.tau * run.kappa;

    const Eigen::MatrixXd L = Eigen::MatrixXd::Identity(n, n) + h * M;
    const Eigen::MatrixXd R = Eigen::MatrixXd::Identity(n, n) - h * M;
    Eigen::PartialPivLU<Eigen::MatrixXd> lu(L);
    if ((lu.matrixLU().diagonal().array() == 0.0).any())
        throw ConvergenceError("crank_nicolson: singular left matrix");
    const Eigen::VectorXd shift = run.tau * run.kappa * q;

    std::vector<Snapshot> snaps;
    Eigen::VectorXd u = run.u0;
    maybe_snap(snaps, run, 0, u);
    for (int nstep = 1; nstep <= run.steps; ++nstep) {
        u = lu.solve((R * u - shift).eval());
        check_norm(u, nstep);
        maybe_snap(snaps, run, nstep, u);
    }
    return snaps;
}

std::vector<Snapshot> rk4_allen_cahn(const EvolutionRun& run) {
    check_run(run);
    if (!(run.delta > 0)) throw std::invalid_argument("rk4_allen_cahn: delta > 0");
    const Eigen::MatrixXd& M = run.op->M;
    const Eigen::VectorXd& q = run.op->q;
    const double inv_d2 = 1.0 / (run.delta * run.delta);
    auto rhs = [&](const Eigen::VectorXd& u) -> Eigen::VectorXd {
        return -(M * u + q) -
               inv_d2 * (u.array() * (u.array().square() - 1.0)).matrix();
    };

    std::vector<Snapshot> snaps;
    Eigen::VectorXd u = run.u0;
    maybe_snap(snaps, run, 0, u);
    const double tau = run.tau;
    for (int nstep = 1; nstep <= run.steps; ++nstep) {
        const Eigen::VectorXd k1 = rhs(u);
        const Eigen::VectorXd k2 = rhs(u + 0.5 * tau * k1);
        const Eigen::VectorXd k3 = rhs(u + 0.5 * tau * k2);
        const Eigen::VectorXd k4 = rhs(u + tau * k3);
        u += (tau / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        check_norm(u, nstep);
        maybe_snap(snaps, run, nstep, u);
    }
    return snaps;
}

}  // namespace volap::timestep
