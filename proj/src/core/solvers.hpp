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
//
// Two small dense log-barrier solvers, sized for problems with a few dozen
// variables at most. Both certify their answers: the ball solver reports the
// barrier duality gap, the SDP solver returns a dual-feasible objective that
// upper-bounds the primal optimum by construction.

#pragma once

#include <Eigen/Dense>

namespace manf {

struct MaxMinBallSolution {
    Eigen::VectorXd u;   // optimizer, ||u|| <= 1
    double objective;    // min_i (c_i^T u - gamma_i) at u
    double gap;          // barrier certificate: optimum <= objective + gap
    int newton_steps;
};

/// maximize  min_i (c_i^T u - gamma_i)  subject to  ||u||_2 <= 1.
/// rows of C are the c_i. Throws SolverFailure when the target gap is missed.
MaxMinBallSolution maxmin_affine_unit_ball(const Eigen::MatrixXd &C, const Eigen::VectorXd &gamma,
                                           double gap_tol);

struct DiagSdpSolution {
    Eigen::MatrixXd X;     // primal-feasible PSD matrix with diag <= eps^2
    Eigen::VectorXd y;     // dual variable, Diag(y) - Q is PSD
    double primal_value;   // Tr(QX)
    double dual_value;     // eps^2 * sum(y), certified upper bound
    int newton_steps;
};

/// maximize Tr(QX) s.t. X PSD, X_nn <= eps^2   (Q real symmetric PSD),
/// solved through its dual  min eps^2 * 1^T y  s.t. Diag(y) >= Q.
/// Relative duality gap is driven below gap_tol.
DiagSdpSolution sdp_diag_box(const Eigen::MatrixXd &Q, double eps, double gap_tol);

} // namespace manf
