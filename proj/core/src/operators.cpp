#include "zigzag/operators.hpp"

#include <cmath>
#include <numbers>

namespace zigzag {

CollocationGrid CollocationGrid::make(int n) {
    if (n < 3 || n % 2 == 0)
        throw std::invalid_argument("CollocationGrid: n must be odd and >= 3");
    CollocationGrid g;
    g.n = n;
    g.points = Eigen::VectorXd::LinSpaced(n, 0.0, double(n - 1) / n);
    g.diff = Eigen::MatrixXd::Zero(n, n);
    for (int j = 0; j < n; ++j) {
        for (int k = 0; k < n; ++k) {
            if (j == k) continue;
            const int d = j - k;
            const double sgn = (d & 1) ? -1.0 : 1.0;
            g.diff(j, k) = std::numbers::pi * sgn / std::sin(std::numbers::pi * d / n);
        }
    }
    return g;
}

double OperatorBundle::q_norm() const { return q.cwiseAbs().colwise().sum().maxCoeff(); }

Eigen::MatrixXd assemble_p(const TorusPotential& U, const TorusPotential& alpha,
                           const CollocationGrid& g, double h) {
    if (h <= 0.0) throw std::invalid_argument("assemble_p: h must be positive");
    const int n = g.n;
    Eigen::VectorXd up(n), al(n);
    for (int i = 0; i < n; ++i) {
        up(i) = U.derivative(g.points(i), 1);
        al(i) = alpha.value(g.points(i));
    }
    const Eigen::VectorXd up_plus = up.cwiseMax(0.0);
    const Eigen::VectorXd up_minus = (-up).cwiseMax(0.0);

    Eigen::MatrixXd d_u = h * g.diff;
    d_u.diagonal() += up;

    Eigen::MatrixXd P(2 * n, 2 * n);
    // -v d_{U,h}: v = +1 block gets -d_u, v = -1 block gets +d_u.
    P.topLeftCorner(n, n) = -d_u;
    P.topRightCorner(n, n).setZero();
    P.bottomLeftCorner(n, n).setZero();
    P.bottomRightCorner(n, n) = d_u;
    // 2 (v U')_+ (I - B): B swaps the blocks.
    P.topLeftCorner(n, n).diagonal() += 2.0 * up_plus;
    P.topRightCorner(n, n).diagonal() -= 2.0 * up_plus;
    P.bottomLeftCorner(n, n).diagonal() -= 2.0 * up_minus;
    P.bottomRightCorner(n, n).diagonal() += 2.0 * up_minus;
    // alpha (I - pi_v): pi_v averages the blocks.
    P.topLeftCorner(n, n).diagonal() += 0.5 * al;
    P.topRightCorner(n, n).diagonal() -= 0.5 * al;
    P.bottomLeftCorner(n, n).diagonal() -= 0.5 * al;
    P.bottomRightCorner(n, n).diagonal() += 0.5 * al;
    return P;
}

OperatorBundle assemble_q(const TorusPotential& V, const TorusPotential& alpha,
                          const CollocationGrid& g, double h) {
    if (h <= 0.0) throw std::invalid_argument("assemble_q: h must be positive");
    OperatorBundle b;
    b.h = h;
    b.grid = g;
    const int n = g.n;
    b.v_samples.resize(n);
    b.v_prime.resize(n);
    b.alpha_diag.resize(n);
    for (int i = 0; i < n; ++i) {
        b.v_samples(i) = V.value(g.points(i));
        b.v_prime(i) = V.derivative(g.points(i), 1);
        b.alpha_diag(i) = alpha.value(g.points(i));
    }
    b.w_diag = b.alpha_diag + 2.0 * b.v_prime.cwiseAbs();

    b.d_v = h * g.diff;
    b.d_v.diagonal() += b.v_prime;
    b.witten = b.d_v.transpose() * b.d_v;

    b.q.resize(2 * n, 2 * n);
    b.q.topLeftCorner(n, n).setZero();
    b.q.topRightCorner(n, n) = b.d_v;
    b.q.bottomLeftCorner(n, n) = -b.d_v.transpose();
    b.q.bottomRightCorner(n, n) = Eigen::MatrixXd(b.w_diag.asDiagonal());

    b.p = assemble_p(V.negated(), alpha, g, h);

    const double c = 1.0 / std::sqrt(2.0);
    b.omega.setZero(2 * n, 2 * n);
    b.omega.topLeftCorner(n, n).diagonal().setConstant(c);
    b.omega.topRightCorner(n, n).diagonal().setConstant(c);
    b.omega.bottomLeftCorner(n, n).diagonal().setConstant(-c);
    b.omega.bottomRightCorner(n, n).diagonal().setConstant(c);
    return b;
}

Eigen::MatrixXcd assemble_t(const OperatorBundle& b, std::complex<double> lambda) {
    Eigen::MatrixXcd T = b.witten.cast<std::complex<double>>();
    T.diagonal() -= lambda * b.w_diag.cast<std::complex<double>>();
    T.diagonal().array() += lambda * lambda;
    return T;
}

Eigen::MatrixXd assemble_t_real(const OperatorBundle& b, double lambda) {
    Eigen::MatrixXd T = b.witten;
    T.diagonal() -= lambda * b.w_diag;
    T.diagonal().array() += lambda * lambda;
    return T;
}

} // namespace zigzag
