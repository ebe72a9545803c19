#include "zigzag/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <unsupported/Eigen/MatrixFunctions>

#include "zigzag/csv.hpp"
#include "zigzag/errors.hpp"

namespace zigzag {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

} // namespace

const char* method_name(Method m) {
    switch (m) {
        case Method::predict: return "predict";
        case Method::witten: return "witten";
        case Method::grushin: return "grushin";
        case Method::direct: return "direct";
        case Method::pencil: return "pencil";
        case Method::semigroup: return "semigroup";
        case Method::simulate: return "simulate";
    }
    return "?";
}

WittenLowModes witten_low_modes(const OperatorBundle& bundle, int n0, bool require_gap) {
    const int n = bundle.n();
    if (n0 < 1 || n0 >= n) throw std::invalid_argument("witten_low_modes: bad n0");

    Eigen::JacobiSVD<Eigen::MatrixXd> svd(bundle.d_v,
                                          Eigen::ComputeThinU | Eigen::ComputeThinV);
    const auto& s = svd.singularValues(); // descending

    WittenLowModes low;
    low.count = n0;
    low.mu.resize(n0);
    low.psi.resize(n, n0);
    for (int j = 0; j < n0; ++j) {
        const double sj = s(n - 1 - j);
        low.mu(j) = sj * sj;
        low.psi.col(j) = svd.matrixV().col(n - 1 - j);
    }
    const double next = s(n - 1 - n0) * s(n - 1 - n0);
    low.gap_ratio = low.mu(n0 - 1) > 0.0 ? next / low.mu(n0 - 1)
                                         : std::numeric_limits<double>::infinity();
    low.gap_ok = low.gap_ratio >= 10.0;
    if (require_gap && !low.gap_ok)
        throw GapNotFound("witten_low_modes: mu_" + std::to_string(n0 + 1) + "/mu_" +
                          std::to_string(n0) + " = " + std::to_string(low.gap_ratio) + " < 10");

    const double wnorm = s(0) * s(0);
    for (int j = 0; j < n0; ++j) {
        const double r = (bundle.witten * low.psi.col(j) - low.mu(j) * low.psi.col(j)).norm();
        low.max_residual = std::max(low.max_residual, r / wnorm);
    }
    return low;
}

namespace {

// Exact projected nonlinear pencil at lambda:
//   B(lambda)  = M - lambda W_h + lambda^2 I - lambda^2 G(lambda)
//   B'(lambda) = -W_h + 2 lambda I - 2 lambda G - lambda^2 dG
// with G(lambda) = psi^T W PiHat THat(lambda)^{-1} PiHat W psi obtained from
// the bordered system [[T(lambda), psi], [psi^T, 0]] [Y; C] = [PiHat W psi; 0],
// and dG = Y^T (diag(W) - 2 lambda) Y (from d/dlambda THat^{-1}).
struct PencilEval {
    Eigen::MatrixXd B, Bprime;
};

PencilEval eval_projected_pencil(const OperatorBundle& bundle, const WittenLowModes& low,
                                 const Eigen::MatrixXd& M, const Eigen::MatrixXd& Wh,
                                 double lambda) {
    const int n = bundle.n();
    const int k = low.count;
    const Eigen::MatrixXd wpsi = bundle.w_diag.asDiagonal() * low.psi;
    const Eigen::MatrixXd rhs_top = wpsi - low.psi * (low.psi.transpose() * wpsi);

    Eigen::MatrixXd K(n + k, n + k);
    K.topLeftCorner(n, n) = assemble_t_real(bundle, lambda);
    K.topRightCorner(n, k) = low.psi;
    K.bottomLeftCorner(k, n) = low.psi.transpose();
    K.bottomRightCorner(k, k).setZero();

    Eigen::MatrixXd rhs(n + k, k);
    rhs.topRows(n) = rhs_top;
    rhs.bottomRows(k).setZero();

    const Eigen::MatrixXd sol = K.partialPivLu().solve(rhs);
    const Eigen::MatrixXd Y = sol.topRows(n);
    const Eigen::MatrixXd G = wpsi.transpose() * Y;
    const Eigen::MatrixXd dG =
        Y.transpose() * (bundle.w_diag.asDiagonal() * Y) - 2.0 * lambda * Y.transpose() * Y;

    PencilEval pe;
    pe.B = M - lambda * Wh + lambda * lambda * Eigen::MatrixXd::Identity(k, k) -
           lambda * lambda * G;
    pe.Bprime = -Wh + 2.0 * lambda * Eigen::MatrixXd::Identity(k, k) - 2.0 * lambda * G -
                lambda * lambda * dG;
    return pe;
}

double refine_root(const OperatorBundle& bundle, const WittenLowModes& low,
                   const Eigen::MatrixXd& M, const Eigen::MatrixXd& Wh, double lambda0,
                   int& iterations) {
    double lambda = lambda0;
    for (int it = 0; it < 30; ++it) {
        iterations = std::max(iterations, it + 1);
        const auto pe = eval_projected_pencil(bundle, low, M, Wh, lambda);
        // Solve B v = delta (-B') v; the smallest |delta| is the Newton step.
        const Eigen::MatrixXd A = (-pe.Bprime).partialPivLu().solve(pe.B);
        const Eigen::EigenSolver<Eigen::MatrixXd> es(A);
        double step = std::numeric_limits<double>::infinity();
        for (int i = 0; i < A.rows(); ++i) {
            const auto d = es.eigenvalues()(i);
            if (std::abs(d) < std::abs(step)) step = d.real();
        }
        lambda += step;
        if (std::abs(step) <= 1e-13 * std::max(std::abs(lambda), 1e-300)) break;
    }
    return lambda;
}

} // namespace

GrushinReduction grushin_eigenvalues(const OperatorBundle& bundle, const WittenLowModes& low) {
    const int k = low.count;
    GrushinReduction red;
    red.m_matrix = low.mu.asDiagonal();
    red.w_matrix = low.psi.transpose() * (bundle.w_diag.asDiagonal() * low.psi);
    red.w_matrix = 0.5 * (red.w_matrix + red.w_matrix.transpose()).eval();

    Eigen::LLT<Eigen::MatrixXd> llt(red.w_matrix);
    if (llt.info() != Eigen::Success)
        throw WSingular("grushin_eigenvalues: projected W matrix is not positive definite");

    Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> ges(red.m_matrix, red.w_matrix);
    if (ges.info() != Eigen::Success)
        throw WSingular("grushin_eigenvalues: generalized eigensolve failed");
    red.lambdas_linear = ges.eigenvalues();

    red.lambdas = red.lambdas_linear;
    red.g_rel_bound.resize(k);
    red.lambdas(0) = std::abs(red.lambdas(0)) < 1e3 * kEps * red.w_matrix.norm()
                         ? red.lambdas_linear(0)
                         : red.lambdas_linear(0);
    red.g_rel_bound(0) = std::abs(red.lambdas(0)) / bundle.h;
    for (int j = 1; j < k; ++j) {
        red.lambdas(j) = refine_root(bundle, low, red.m_matrix, red.w_matrix,
                                     red.lambdas_linear(j), red.max_newton_iterations);
        red.g_rel_bound(j) = std::abs(red.lambdas(j)) / bundle.h;
    }
    std::sort(red.lambdas.data(), red.lambdas.data() + k);
    return red;
}

SpectrumReport direct_small_spectrum(const OperatorBundle& bundle, int n0, double radius_scale) {
    SpectrumReport rep;
    rep.method = Method::direct;
    rep.n0_expected = n0;
    const double qn = bundle.q_norm();
    rep.resolvability_floor = 100.0 * kEps * qn;

    Eigen::EigenSolver<Eigen::MatrixXd> es(bundle.q);
    if (es.info() != Eigen::Success) throw Error("direct_small_spectrum: eigensolver failed");

    const double radius = radius_scale * bundle.h * bundle.h;
    const int n = bundle.n();
    std::vector<int> idx;
    for (int i = 0; i < 2 * n; ++i)
        if (std::abs(es.eigenvalues()(i).real()) <= radius) idx.push_back(i);
    std::sort(idx.begin(), idx.end(), [&](int a, int b) {
        const auto za = es.eigenvalues()(a), zb = es.eigenvalues()(b);
        if (za.real() != zb.real()) return za.real() < zb.real();
        return za.imag() < zb.imag();
    });

    for (int i : idx) {
        const auto z = es.eigenvalues()(i);
        rep.eigenvalues.push_back(z);
        rep.trusted.push_back(std::abs(z) >= rep.resolvability_floor);
        rep.f_parts.push_back(es.eigenvectors().col(i).head(n));
        rep.g_parts.push_back(es.eigenvectors().col(i).tail(n));
    }

    if (static_cast<int>(rep.eigenvalues.size()) != n0) {
        std::ostringstream msg;
        msg << "direct_small_spectrum: " << rep.eigenvalues.size() << " eigenvalues in |Re z| <= "
            << radius << ", expected " << n0 << ":";
        for (const auto& z : rep.eigenvalues) msg << " (" << z.real() << "," << z.imag() << ")";
        throw CountMismatch(msg.str());
    }
    for (std::size_t i = 0; i < rep.eigenvalues.size(); ++i) {
        if (rep.trusted[i] && std::abs(rep.eigenvalues[i].imag()) > 1e-10 * qn) {
            std::ostringstream msg;
            msg << "direct_small_spectrum: trusted eigenvalue with nonreal part ("
                << rep.eigenvalues[i].real() << "," << rep.eigenvalues[i].imag() << ")";
            throw CountMismatch(msg.str());
        }
        if (rep.eigenvalues[i].real() < -rep.resolvability_floor) {
            std::ostringstream msg;
            msg << "direct_small_spectrum: negative small eigenvalue " << rep.eigenvalues[i].real();
            throw CountMismatch(msg.str());
        }
    }
    return rep;
}

double pencil_residual(const OperatorBundle& bundle, std::complex<double> lambda) {
    const double wnorm =
        Eigen::JacobiSVD<Eigen::MatrixXd>(bundle.d_v).singularValues()(0);
    if (lambda.imag() == 0.0) {
        Eigen::JacobiSVD<Eigen::MatrixXd> svd(assemble_t_real(bundle, lambda.real()));
        return svd.singularValues().tail(1)(0) / (wnorm * wnorm);
    }
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(assemble_t(bundle, lambda));
    return svd.singularValues().tail(1)(0) / (wnorm * wnorm);
}

DecayFit semigroup_decay(const OperatorBundle& bundle, const std::vector<double>& t_list) {
    if (t_list.size() < 4) throw std::invalid_argument("semigroup_decay: need >= 4 times");
    const int n = bundle.n();

    // Pi_1: the kernel of q is spanned by (e^{(V - max V)/h}; 0), which is both
    // the left and the right eigenvector, so the spectral projector for 0 is
    // the orthogonal rank-one projector onto it.
    Eigen::VectorXd u = Eigen::VectorXd::Zero(2 * n);
    const double vmax = bundle.v_samples.maxCoeff();
    for (int i = 0; i < n; ++i) u(i) = std::exp((bundle.v_samples(i) - vmax) / bundle.h);
    u /= u.norm();
    const double kernel_resid = (bundle.q * u).norm();
    if (kernel_resid > 1e-8 * bundle.q_norm())
        throw Error("semigroup_decay: kernel vector not resolved on this grid");
    const Eigen::MatrixXd pi1 = u * u.transpose();

    DecayFit fit;
    fit.t = t_list;
    for (double t : t_list) {
        const Eigen::MatrixXd e = (-t * bundle.q).exp();
        fit.norms.push_back(Eigen::JacobiSVD<Eigen::MatrixXd>(e - pi1).singularValues()(0));
    }

    // Least squares on the tail (last two thirds), where the fast modes are gone.
    const std::size_t m = t_list.size();
    const std::size_t first = m / 3;
    const std::size_t cnt = m - first;
    Eigen::MatrixXd A(cnt, 2);
    Eigen::VectorXd y(cnt);
    for (std::size_t i = 0; i < cnt; ++i) {
        A(static_cast<Eigen::Index>(i), 0) = t_list[first + i];
        A(static_cast<Eigen::Index>(i), 1) = 1.0;
        y(static_cast<Eigen::Index>(i)) = std::log(fit.norms[first + i]);
    }
    const Eigen::Vector2d coef = A.colPivHouseholderQr().solve(y);
    fit.rate = -coef(0);
    fit.fit_residual = (A * coef - y).cwiseAbs().maxCoeff();
    fit.fit_range = y.maxCoeff() - y.minCoeff();
    if (fit.fit_residual > 0.05 * fit.fit_range)
        throw FitUnstable("semigroup_decay: fit residual " + std::to_string(fit.fit_residual) +
                          " exceeds 5% of range " + std::to_string(fit.fit_range));
    return fit;
}

std::string spectrum_csv(const SpectrumReport& rep, const std::string& potential_id, double h,
                         int n) {
    std::ostringstream out;
    out << "potential,h,n,method,re,im,trusted,floor\n";
    for (std::size_t i = 0; i < rep.eigenvalues.size(); ++i) {
        out << potential_id << ',' << csv::num(h) << ',' << n << ',' << method_name(rep.method)
            << ',' << csv::num(rep.eigenvalues[i].real()) << ','
            << csv::num(rep.eigenvalues[i].imag()) << ',' << (rep.trusted[i] ? 1 : 0) << ','
            << csv::num(rep.resolvability_floor) << '\n';
    }
    return out.str();
}

} // namespace zigzag
