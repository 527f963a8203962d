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

#include "robustness.hpp"

#include <cmath>
#include <limits>

#include "rng.hpp"
#include "solvers.hpp"

namespace manf {

Eigen::MatrixXcd SensitivityModel::Q() const {
    Eigen::MatrixXcd q = Eigen::MatrixXcd::Zero(n_antennas, n_antennas);
    for (int k = 0; k < n_users; ++k) {
        const Eigen::VectorXcd ck = c.row(k).transpose();
        q += ck * ck.adjoint();
    }
    return q;
}

Eigen::VectorXd SensitivityModel::mrt_gains() const {
    Eigen::VectorXd g(n_users);
    for (int k = 0; k < n_users; ++k)
        g(k) = std::norm(s.row(k).sum()) / n_antennas;
    return g;
}

SensitivityModel build_sensitivity(const Apv &apv, const PolarTarget &target0,
                                   std::span<const PolarTarget> users, double wavelength) {
    apv.validate();
    target0.validate();
    if (!(wavelength > 0.0))
        throw Error(Errc::invalid_argument, "wavelength must be positive");

    const int n = apv.size();
    const int k = static_cast<int>(users.size());
    const double wn = kTwoPi / wavelength;

    SensitivityModel m;
    m.n_antennas = n;
    m.n_users = k;
    m.wavelength = wavelength;
    m.positions = apv.positions;
    m.beta.resize(k + 1, n);
    m.phi0.resize(k, n);
    m.s.resize(k, n);
    m.c.resize(k, n);
    m.eta.resize(k, n);
    m.D = Eigen::VectorXd::Zero(n);

    auto beta_of = [](const PolarTarget &t, double x) {
        const double st = std::sin(t.angle_theta);
        return -std::cos(t.angle_theta) + x * st * st / t.distance_R;
    };

    for (int i = 0; i < n; ++i)
        m.beta(0, i) = beta_of(target0, apv.positions[i]);
    for (int u = 0; u < k; ++u) {
        users[u].validate();
        for (int i = 0; i < n; ++i) {
            const double x = apv.positions[i];
            m.beta(u + 1, i) = beta_of(users[u], x);
            // nominal phase difference, referenced like the steering vectors
            const double off0 = path_offset(target0, x, DistanceModel::approx);
            const double offk = path_offset(users[u], x, DistanceModel::approx);
            m.phi0(u, i) = wn * (off0 - offk);
            m.s(u, i) = std::polar(1.0, m.phi0(u, i));
            const double dbeta = m.beta(0, i) - m.beta(u + 1, i);
            m.c(u, i) = wn * m.s(u, i) * dbeta;
            const std::complex<double> j(0.0, 1.0);
            m.eta(u, i) = -2.0 * (wn * j * dbeta * m.s(u, i)).real();
            m.D(i) += m.eta(u, i);
        }
    }
    return m;
}

void ErrorBudget::validate(int n_antennas) const {
    if (epsilon < 0.0)
        throw Error(Errc::invalid_argument, "epsilon must be nonnegative");
    if (delta_d) {
        if (static_cast<int>(delta_d->size()) != n_antennas)
            throw Error(Errc::invalid_argument, "delta_d size mismatch");
        for (double d : *delta_d)
            if (std::abs(d) > epsilon + 1e-15)
                throw Error(Errc::invalid_argument, "|delta_d_n| exceeds epsilon");
    }
}

namespace {

void require_nulled(const SensitivityModel &model) {
    for (int k = 0; k < model.n_users; ++k) {
        const double s0 = std::abs(model.s.row(k).sum());
        if (s0 > 1e-6)
            throw Error(Errc::not_nulled, "model premise violated: |S_k^(0)| = " +
                                              std::to_string(s0) + " for user " +
                                              std::to_string(k));
    }
}

double leakage_value(const SensitivityModel &model, std::span<const double> delta_d) {
    double total = 0.0;
    for (int k = 0; k < model.n_users; ++k) {
        std::complex<double> acc = 0.0;
        for (int i = 0; i < model.n_antennas; ++i)
            acc += model.c(k, i) * delta_d[i];
        total += std::norm(acc);
    }
    return total;
}

} // namespace

double nulling_leakage_gain(const SensitivityModel &model, std::span<const double> delta_d) {
    if (static_cast<int>(delta_d.size()) != model.n_antennas)
        throw Error(Errc::invalid_argument, "delta_d size mismatch");
    require_nulled(model);
    return leakage_value(model, delta_d);
}

VertexResult vertex_oracle(const SensitivityModel &model, double epsilon) {
    const int n = model.n_antennas;
    if (n > 20)
        throw Error(Errc::too_large, "vertex enumeration limited to N <= 20");
    if (epsilon < 0.0)
        throw Error(Errc::invalid_argument, "epsilon must be nonnegative");

    const Eigen::MatrixXd qr = model.Q().real();
    // sign symmetry: fix the first coordinate to +eps
    const uint64_t count = n >= 1 ? (1ull << (n - 1)) : 1;
    Eigen::VectorXd sigma(n), best_sigma = Eigen::VectorXd::Ones(n);
    double best = -std::numeric_limits<double>::infinity();
    for (uint64_t bits = 0; bits < count; ++bits) {
        sigma(0) = 1.0;
        for (int i = 1; i < n; ++i)
            sigma(i) = (bits >> (i - 1)) & 1 ? -1.0 : 1.0;
        const double val = sigma.dot(qr * sigma);
        if (val > best) {
            best = val;
            best_sigma = sigma;
        }
    }

    VertexResult out;
    out.delta_d.resize(n);
    for (int i = 0; i < n; ++i)
        out.delta_d[i] = epsilon * best_sigma(i);
    out.leakage = leakage_value(model, out.delta_d);
    return out;
}

WorstCaseNulling worstcase_nulling(const SensitivityModel &model, double epsilon,
                                   int randomization_draws, uint64_t seed) {
    const int n = model.n_antennas;
    if (epsilon < 0.0)
        throw Error(Errc::invalid_argument, "epsilon must be nonnegative");
    require_nulled(model);

    WorstCaseNulling out;
    out.delta_d.assign(n, 0.0);
    if (epsilon == 0.0 || model.n_users == 0)
        return out;

    const Eigen::MatrixXd qr = 0.5 * (model.Q().real() + model.Q().real().transpose());
    const auto sdp = sdp_diag_box(qr, epsilon, 1e-7);
    out.sdr_upper_bound = sdp.dual_value;

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(sdp.X);
    const Eigen::VectorXd evals = es.eigenvalues().cwiseMax(0.0);
    const Eigen::MatrixXd half = es.eigenvectors() * evals.cwiseSqrt().asDiagonal();

    auto snap = [&](const Eigen::VectorXd &v) {
        std::vector<double> dd(n);
        for (int i = 0; i < n; ++i)
            dd[i] = v(i) < 0.0 ? -epsilon : epsilon;
        return dd;
    };

    // top eigenvector (exact recovery when the relaxation is rank one)
    std::vector<double> best_dd = snap(es.eigenvectors().col(n - 1));
    double best = leakage_value(model, best_dd);

    Philox rng(seed, 0x73647200); // "sdr"
    Eigen::VectorXd z(n);
    for (int d = 0; d < randomization_draws; ++d) {
        for (int i = 0; i < n; ++i)
            z(i) = rng.normal();
        const auto dd = snap(half * z);
        const double val = leakage_value(model, dd);
        if (val > best) {
            best = val;
            best_dd = dd;
        }
    }

    if (n <= 16) {
        auto exact = vertex_oracle(model, epsilon);
        if (exact.leakage >= best) {
            best = exact.leakage;
            best_dd = std::move(exact.delta_d);
        }
    }

    out.delta_d = std::move(best_dd);
    out.leakage = best;
    return out;
}

WorstCaseMultibeam worstcase_multibeam(const SensitivityModel &model, double epsilon) {
    const int n = model.n_antennas;
    const int k = model.n_users;
    if (epsilon < 0.0)
        throw Error(Errc::invalid_argument, "epsilon must be nonnegative");
    const Eigen::VectorXd gains = model.mrt_gains();
    for (int u = 0; u < k; ++u)
        if (std::abs(gains(u) - n) > 1e-4)
            throw Error(Errc::not_full_gain,
                        "model premise violated: MRT gain " + std::to_string(gains(u)) +
                            " at user " + std::to_string(u) + " is not N");

    // |D_n| below roundoff scale: either error direction is equivalent, use +1
    const double ztol = 1e-8 * (1.0 + model.D.cwiseAbs().maxCoeff());
    auto sgn = [&](double v) { return v < -ztol ? -1.0 : 1.0; };

    WorstCaseMultibeam out;
    out.delta_d.resize(n);
    double sum_abs_d = 0.0;
    for (int i = 0; i < n; ++i) {
        out.delta_d[i] = -epsilon * sgn(model.D(i));
        sum_abs_d += std::abs(model.D(i));
    }
    out.approx_sum_gain = static_cast<double>(k) * n - epsilon * sum_abs_d;
    out.per_user_gains.resize(k);
    for (int u = 0; u < k; ++u) {
        double drop = 0.0;
        for (int i = 0; i < n; ++i)
            drop += model.eta(u, i) * sgn(model.D(i));
        out.per_user_gains[u] = static_cast<double>(n) - epsilon * drop;
    }
    return out;
}

double perturbed_gain(const Apv &apv, std::span<const double> delta_d, const BeamWeights &w,
                      const PolarTarget &target, double wavelength, DistanceModel model) {
    if (static_cast<int>(delta_d.size()) != apv.size())
        throw Error(Errc::invalid_argument, "delta_d size mismatch");
    std::vector<double> x = apv.positions;
    for (size_t i = 0; i < x.size(); ++i)
        x[i] += delta_d[i];
    return beam_gain(std::span<const double>(x), w.weights, target, wavelength, model);
}

} // namespace manf
