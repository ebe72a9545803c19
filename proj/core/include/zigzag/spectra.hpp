#ifndef ZIGZAG_SPECTRA_HPP
#define ZIGZAG_SPECTRA_HPP

#include <complex>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "zigzag/operators.hpp"

namespace zigzag {

/// The n0 lowest Witten eigenpairs, extracted from the SVD of d_v: the squared
/// singular values carry absolute error ~ eps ||d_v|| on the singular value,
/// so mu = s^2 stays resolvable down to ~1e-24 where a symmetric eigensolve of
/// the Gram matrix bottoms out near 1e-12.
struct WittenLowModes {
    int count = 0;
    Eigen::VectorXd mu;    // ascending, mu(0) ~ 0
    Eigen::MatrixXd psi;   // n x count, orthonormal right singular vectors
    double gap_ratio = 0.0;
    bool gap_ok = false;
    double max_residual = 0.0; // max_j ||witten psi_j - mu_j psi_j|| / ||witten||
};

/// require_gap: throw GapNotFound when the (n0+1)-th to n0-th squared singular
/// value ratio is below 10 (h too large for the asymptotic regime, or wrong
/// n0); pass false to get the modes anyway with gap_ok = false.
WittenLowModes witten_low_modes(const OperatorBundle& bundle, int n0, bool require_gap = true);

/// Finite-dimensional reduction on span(psi):
///   m_matrix = diag(mu), w_matrix = psi^T diag(W) psi,
///   lambdas_linear = eigenvalues of M v = lambda W v (ascending),
/// followed by Newton refinement of each nonzero root on the exact projected
/// nonlinear pencil M - lambda W + lambda^2 I - lambda^2 R+ W PiHat
/// THat(lambda)^{-1} PiHat W R- (bordered solves). The linear eigenvalues drop
/// that term, which is O(|lambda|/h) relative — fine deep in the metastable
/// regime and reported per eigenvalue as g_rel_bound.
struct GrushinReduction {
    Eigen::MatrixXd m_matrix;
    Eigen::MatrixXd w_matrix;
    Eigen::VectorXd lambdas_linear;
    Eigen::VectorXd lambdas;      // refined; lambdas(0) == 0
    Eigen::VectorXd g_rel_bound;  // |lambda|/h per eigenvalue
    int max_newton_iterations = 0;
};

GrushinReduction grushin_eigenvalues(const OperatorBundle& bundle, const WittenLowModes& low);

enum class Method { predict, witten, grushin, direct, pencil, semigroup, simulate };

const char* method_name(Method m);

/// Dense nonsymmetric eigensolve of q restricted to |Re z| <= radius_scale h^2.
struct SpectrumReport {
    Method method = Method::direct;
    std::vector<std::complex<double>> eigenvalues; // sorted by Re, then Im
    std::vector<bool> trusted;                     // |z| >= resolvability_floor
    double resolvability_floor = 0.0;
    int n0_expected = 0;
    /// Right eigenvector (f; g) halves for each reported eigenvalue.
    std::vector<Eigen::VectorXcd> f_parts, g_parts;
};

/// Throws CountMismatch when the window holds a number of eigenvalues
/// different from n0 (the offending list is in the message).
SpectrumReport direct_small_spectrum(const OperatorBundle& bundle, int n0,
                                     double radius_scale = 5.0);

/// Smallest singular value of T(lambda), normalized by ||witten||_2;
/// near-zero exactly at the spectrum.
double pencil_residual(const OperatorBundle& bundle, std::complex<double> lambda);

/// Decay-rate fit of ||exp(-t q) - Pi_1||_2 against t on the tail of t_list.
struct DecayFit {
    double rate = 0.0;          // magnitude of the fitted slope
    double fit_residual = 0.0;  // max |log-residual| over the tail
    double fit_range = 0.0;     // spread of the fitted log-norms
    bool stable = false;        // residual within 5% of the range
    std::vector<double> t;      // echo of t_list
    std::vector<double> norms;  // ||exp(-t q) - Pi_1||
};

/// Throws FitUnstable when the linear fit residual exceeds 5% of the range
/// (pass require_stable = false to get the fit and norms anyway).
DecayFit semigroup_decay(const OperatorBundle& bundle, const std::vector<double>& t_list,
                         bool require_stable = true);

std::string spectrum_csv(const SpectrumReport& rep, const std::string& potential_id, double h,
                         int n);

} // namespace zigzag

#endif
