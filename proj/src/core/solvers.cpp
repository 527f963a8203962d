// SPDX-License-Identifier: Apache-2.0
//
// manf - movable-antenna near-field beamforming toolkit
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include "solvers.hpp"

#include <cmath>

#include "errors.hpp"

namespace manf {

MaxMinBallSolution maxmin_affine_unit_ball(const Eigen::MatrixXd &C, const Eigen::VectorXd &gamma,
                                           double gap_tol) {
    const int m = static_cast<int>(C.rows());
    const int d = static_cast<int>(C.cols());
    if (m < 1 || gamma.size() != m)
        throw Error(Errc::invalid_argument, "constraint sizes mismatch");

    // variables z = (u, delta); slacks s_i = c_i^T u - gamma_i - delta, ball b = 1 - u^T u
    Eigen::VectorXd u = Eigen::VectorXd::Zero(d);
    double delta = (-gamma).minCoeff() - 1.0;
    const int n_cons = m + 1;

    const double scale = std::max(1.0, gamma.cwiseAbs().maxCoeff());
    double t = 1.0;
    const double t_max = n_cons / (gap_tol * scale) * 4.0;
    int steps = 0;

    Eigen::VectorXd grad(d + 1);
    Eigen::MatrixXd hess(d + 1, d + 1);

    while (true) {
        // Newton minimization of -t*delta - sum log s_i - log b
        for (int it = 0; it < 80; ++it) {
            const Eigen::VectorXd s = C * u - gamma - Eigen::VectorXd::Constant(m, delta);
            const double b = 1.0 - u.squaredNorm();

            grad.setZero();
            hess.setZero();
            grad(d) = -t;
            for (int i = 0; i < m; ++i) {
                const double inv = 1.0 / s(i);
                grad.head(d) -= C.row(i).transpose() * inv;
                grad(d) += inv;
                Eigen::VectorXd gi(d + 1);
                gi.head(d) = C.row(i).transpose();
                gi(d) = -1.0;
                hess += (inv * inv) * gi * gi.transpose();
            }
            grad.head(d) += 2.0 * u / b;
            hess.topLeftCorner(d, d) += (2.0 / b) * Eigen::MatrixXd::Identity(d, d);
            hess.topLeftCorner(d, d) += (4.0 / (b * b)) * u * u.transpose();

            const Eigen::VectorXd step = hess.ldlt().solve(-grad);
            const double decrement2 = -grad.dot(step);
            if (!(decrement2 > 1e-13))
                break;

            // backtracking line search preserving strict feasibility
            double alpha = 1.0;
            const Eigen::VectorXd du = step.head(d);
            const double dd = step(d);
            for (int ls = 0; ls < 60; ++ls) {
                const Eigen::VectorXd u_try = u + alpha * du;
                const double delta_try = delta + alpha * dd;
                const bool ok = (1.0 - u_try.squaredNorm() > 0.0) &&
                                (((C * u_try - gamma).array() - delta_try) > 0.0).all();
                if (ok)
                    break;
                alpha *= 0.5;
            }
            u += alpha * du;
            delta += alpha * dd;
            ++steps;
            if (alpha < 1e-14)
                break;
        }
        if (n_cons / t <= gap_tol * scale || t >= t_max)
            break;
        t *= 20.0;
    }

    MaxMinBallSolution sol;
    sol.u = u;
    sol.objective = (C * u - gamma).minCoeff();
    sol.gap = n_cons / t;
    sol.newton_steps = steps;
    if (sol.gap > 10.0 * gap_tol * scale)
        throw Error(Errc::solver_failure, "ball subproblem missed its duality-gap target");
    return sol;
}

DiagSdpSolution sdp_diag_box(const Eigen::MatrixXd &Q, double eps, double gap_tol) {
    const int n = static_cast<int>(Q.rows());
    if (Q.cols() != n || n < 1)
        throw Error(Errc::invalid_argument, "Q must be square");
    if (eps < 0.0)
        throw Error(Errc::invalid_argument, "eps must be nonnegative");

    DiagSdpSolution sol;
    if (eps == 0.0 || Q.cwiseAbs().maxCoeff() == 0.0) {
        sol.X = Eigen::MatrixXd::Zero(n, n);
        sol.y = Q.diagonal().cwiseMax(0.0);
        sol.primal_value = 0.0;
        sol.dual_value = eps * eps * sol.y.sum();
        sol.newton_steps = 0;
        return sol;
    }

    const double e2 = eps * eps;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(Q);
    const double lam_max = es.eigenvalues().maxCoeff();

    Eigen::VectorXd y = Eigen::VectorXd::Constant(n, lam_max + std::max(1.0, lam_max));
    double t = 1.0 / std::max(1.0, e2 * lam_max);
    const double obj_scale = std::max(1.0, e2 * static_cast<double>(n) * lam_max);
    int steps = 0;

    auto chol_S = [&](const Eigen::VectorXd &yy, Eigen::LLT<Eigen::MatrixXd> &llt) {
        Eigen::MatrixXd S = -Q;
        S.diagonal() += yy;
        llt.compute(S);
        return llt.info() == Eigen::Success;
    };

    Eigen::LLT<Eigen::MatrixXd> llt;
    while (true) {
        for (int it = 0; it < 80; ++it) {
            if (!chol_S(y, llt))
                throw Error(Errc::solver_failure, "dual iterate left the PSD cone");
            const Eigen::MatrixXd Sinv =
                llt.solve(Eigen::MatrixXd::Identity(n, n));
            const Eigen::VectorXd grad = Eigen::VectorXd::Constant(n, t * e2) - Sinv.diagonal();
            const Eigen::MatrixXd hess = Sinv.cwiseProduct(Sinv);
            const Eigen::VectorXd step = hess.ldlt().solve(-grad);
            const double decrement2 = -grad.dot(step);
            if (!(decrement2 > 1e-13))
                break;
            double alpha = 1.0;
            for (int ls = 0; ls < 60; ++ls) {
                Eigen::LLT<Eigen::MatrixXd> probe;
                if (chol_S(y + alpha * step, probe))
                    break;
                alpha *= 0.5;
            }
            y += alpha * step;
            ++steps;
            if (alpha < 1e-14)
                break;
        }
        if (static_cast<double>(n) / t <= gap_tol * obj_scale)
            break;
        if (t > 1e16)
            break;
        t *= 20.0;
    }

    if (!chol_S(y, llt))
        throw Error(Errc::solver_failure, "dual solution not PSD");
    Eigen::MatrixXd X = llt.solve(Eigen::MatrixXd::Identity(n, n)) / t;
    // central-path X has diag ~= eps^2; rescale so the box constraint binds exactly
    const double dmax = X.diagonal().maxCoeff();
    if (dmax > 0.0)
        X *= e2 / dmax;

    sol.X = 0.5 * (X + X.transpose());
    sol.y = y;
    sol.primal_value = (Q * sol.X).trace();
    sol.dual_value = e2 * y.sum();
    sol.newton_steps = steps;
    if (sol.dual_value < sol.primal_value - 1e-9 * obj_scale)
        throw Error(Errc::solver_failure, "SDP duality sandwich violated");
    return sol;
}

} // namespace manf
