#ifndef ZIGZAG_OPERATORS_HPP
#define ZIGZAG_OPERATORS_HPP

#include <complex>

#include <Eigen/Dense>

#include "zigzag/potential.hpp"

namespace zigzag {

/// Fourier collocation grid with n odd points x_k = k/n and the spectral
/// first-derivative matrix D_jk = pi (-1)^(j-k) / sin(pi (j-k)/n).
///
/// D is real, antisymmetric, annihilates constants and differentiates every
/// mode up to (n-1)/2 exactly. Odd n keeps the symbol injective away from
/// zero: an even grid would carry a Nyquist mode with symbol 0, and the
/// operator d_V would pick up a spurious exponentially small singular value
/// in the checkerboard-conjugate sector.
struct CollocationGrid {
    int n = 0;
    Eigen::VectorXd points;
    Eigen::MatrixXd diff;

    static CollocationGrid make(int n);
};

/// Dense discretizations of the transport/Witten operator family at one h:
///   d_v    = h D + diag(V')                      (n x n)
///   witten = d_v^T d_v                           (n x n, symmetric PSD)
///   q      = [[0, d_v], [-d_v^T, diag(W)]]       (2n x 2n), W = alpha + 2|V'|
///   p      = the kinetic form assembled independently from the flip/refresh
///            structure in (v=+1, v=-1) block order  (2n x 2n)
///   omega  = blockwise (1/sqrt 2) [[I, I], [-I, I]]; omega p omega^T == q
struct OperatorBundle {
    double h = 0.0;
    CollocationGrid grid;
    Eigen::VectorXd v_samples;  // V at the nodes
    Eigen::VectorXd v_prime;    // V' at the nodes
    Eigen::VectorXd w_diag;     // W = alpha + 2|V'|
    Eigen::VectorXd alpha_diag;
    Eigen::MatrixXd d_v;
    Eigen::MatrixXd witten;
    Eigen::MatrixXd q;
    Eigen::MatrixXd p;
    Eigen::MatrixXd omega;

    int n() const { return grid.n; }
    /// 1-norm of q; scale reference for eigenvalue floors.
    double q_norm() const;
};

/// P = -v d_{U,h} + 2 (v U')_+ (I - B) + alpha (I - pi_v) on the doubled grid,
/// blocks ordered (v=+1, v=-1); d_{U,h} = h D + diag(U').
Eigen::MatrixXd assemble_p(const TorusPotential& U, const TorusPotential& alpha,
                           const CollocationGrid& g, double h);

/// Full bundle for V (and U = -V for the p block).
OperatorBundle assemble_q(const TorusPotential& V, const TorusPotential& alpha,
                          const CollocationGrid& g, double h);

/// T(lambda) = witten - lambda diag(W) + lambda^2 I.
Eigen::MatrixXcd assemble_t(const OperatorBundle& bundle, std::complex<double> lambda);
Eigen::MatrixXd assemble_t_real(const OperatorBundle& bundle, double lambda);

} // namespace zigzag

#endif
