#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <vector>

#include <Eigen/Eigenvalues>

#include "oracles.hpp"
#include "zigzag/operators.hpp"

using namespace zigzag;
using std::numbers::pi;

namespace {

// Greedy nearest matching between two complex spectra; returns the largest
// pair distance.
double spectra_distance(std::vector<std::complex<double>> a, std::vector<std::complex<double>> b) {
    REQUIRE(a.size() == b.size());
    double worst = 0.0;
    for (const auto& za : a) {
        std::size_t best = 0;
        double bd = 1e300;
        for (std::size_t j = 0; j < b.size(); ++j) {
            const double d = std::abs(za - b[j]);
            if (d < bd) {
                bd = d;
                best = j;
            }
        }
        worst = std::max(worst, bd);
        b.erase(b.begin() + static_cast<std::ptrdiff_t>(best));
    }
    return worst;
}

std::vector<std::complex<double>> eigenvalues_of(const Eigen::MatrixXd& m) {
    Eigen::EigenSolver<Eigen::MatrixXd> es(m, /*computeEigenvectors=*/false);
    std::vector<std::complex<double>> out(static_cast<std::size_t>(m.rows()));
    for (Eigen::Index i = 0; i < m.rows(); ++i) out[static_cast<std::size_t>(i)] = es.eigenvalues()(i);
    return out;
}

} // namespace

TEST_CASE("collocation grid sanity") {
    const auto g = CollocationGrid::make(33);
    CHECK((g.diff + g.diff.transpose()).cwiseAbs().maxCoeff() == 0.0);
    CHECK((g.diff * Eigen::VectorXd::Ones(33)).cwiseAbs().maxCoeff() < 1e-10);
    Eigen::VectorXd s(33), c(33);
    for (int i = 0; i < 33; ++i) {
        s(i) = std::sin(2 * pi * g.points(i));
        c(i) = 2 * pi * std::cos(2 * pi * g.points(i));
    }
    CHECK((g.diff * s - c).cwiseAbs().maxCoeff() < 1e-10);
    CHECK_THROWS_AS((void)CollocationGrid::make(32), std::invalid_argument);
}

TEST_CASE("flat potential: witten spectrum is h^2 (2 pi k)^2") {
    const int n = 17;
    const double h = 0.3;
    const auto g = CollocationGrid::make(n);
    const auto b = assemble_q(TorusPotential::constant(0.0), TorusPotential::constant(0.0), g, h);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(b.witten);
    std::vector<double> expected;
    expected.push_back(0.0);
    for (int k = 1; k <= (n - 1) / 2; ++k) {
        const double mu = h * h * (2 * pi * k) * (2 * pi * k);
        expected.push_back(mu);
        expected.push_back(mu);
    }
    std::sort(expected.begin(), expected.end());
    for (int i = 0; i < n; ++i)
        CHECK(es.eigenvalues()(i) ==
              doctest::Approx(expected[static_cast<std::size_t>(i)]).epsilon(1e-9));
}

TEST_CASE("P on the flat potential is pure advection") {
    const int n = 17;
    const auto g = CollocationGrid::make(n);
    const double h = 0.4;
    const auto P =
        assemble_p(TorusPotential::constant(0.0), TorusPotential::constant(0.0), g, h);
    // P = [[-hD, 0], [0, hD]]: purely advective, spectrum on the imaginary axis.
    CHECK((P.topLeftCorner(n, n) + h * g.diff).cwiseAbs().maxCoeff() == 0.0);
    CHECK((P.bottomRightCorner(n, n) - h * g.diff).cwiseAbs().maxCoeff() == 0.0);
    CHECK(P.topRightCorner(n, n).cwiseAbs().maxCoeff() == 0.0);
    for (const auto& z : eigenvalues_of(P)) CHECK(std::abs(z.real()) < 1e-10);
}

TEST_CASE("alpha enters only through I - pi_v") {
    const int n = 33;
    const auto g = CollocationGrid::make(n);
    const auto U = oracles::canonical_u();
    const double h = 0.25, c = 0.9;
    const auto p0 = assemble_p(U, TorusPotential::constant(0.0), g, h);
    const auto pc = assemble_p(U, TorusPotential::constant(c), g, h);
    Eigen::MatrixXd diff = pc - p0;
    // c (I - pi_v) has diagonal blocks c/2 I and off-diagonal blocks -c/2 I.
    Eigen::MatrixXd expect = Eigen::MatrixXd::Zero(2 * n, 2 * n);
    expect.topLeftCorner(n, n).diagonal().setConstant(c / 2);
    expect.bottomRightCorner(n, n).diagonal().setConstant(c / 2);
    expect.topRightCorner(n, n).diagonal().setConstant(-c / 2);
    expect.bottomLeftCorner(n, n).diagonal().setConstant(-c / 2);
    CHECK((diff - expect).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("conjugation: omega p omega^T equals q") {
    std::mt19937_64 gen(5150);
    const auto g = CollocationGrid::make(65);
    for (int trial = 0; trial < 3; ++trial) {
        const auto V = oracles::random_trig(gen, 3, 0.5);
        const auto alpha = TorusPotential::constant(0.3 + 0.2 * trial);
        const auto b = assemble_q(V, alpha, g, 0.35);
        CHECK((b.omega * b.omega.transpose() - Eigen::MatrixXd::Identity(130, 130))
                  .cwiseAbs()
                  .maxCoeff() < 1e-12);
        const double rel = (b.omega * b.p * b.omega.transpose() - b.q).cwiseAbs().maxCoeff() /
                           b.q.cwiseAbs().maxCoeff();
        CHECK(rel < 1e-10);
    }
}

TEST_CASE("exact similarity: spectra of p and q coincide") {
    std::mt19937_64 gen(8080);
    const auto g = CollocationGrid::make(65);
    for (double h : {0.5, 0.2}) {
        for (int trial = 0; trial < 3; ++trial) {
            const auto V = oracles::random_trig(gen, 3, 0.5);
            const auto b = assemble_q(V, TorusPotential::constant(0.4), g, h);
            const double dist = spectra_distance(eigenvalues_of(b.p), eigenvalues_of(b.q));
            double scale = 0.0;
            for (const auto& z : eigenvalues_of(b.q)) scale = std::max(scale, std::abs(z));
            CHECK(dist <= 1e-9 * std::max(scale, 1.0));
        }
    }
}

TEST_CASE("P annihilates the Gibbs kernel e^{-U/h} (1,1)") {
    const int n = 257;
    const auto g = CollocationGrid::make(n);
    const auto U = oracles::canonical_u();
    const double h = 0.25;
    const auto P = assemble_p(U, TorusPotential::constant(0.7), g, h);
    Eigen::VectorXd v(2 * n);
    double umin = 1e300;
    for (int i = 0; i < n; ++i) umin = std::min(umin, U.value(g.points(i)));
    for (int i = 0; i < n; ++i) {
        v(i) = std::exp(-(U.value(g.points(i)) - umin) / h);
        v(n + i) = v(i);
    }
    CHECK((P * v).norm() <= 1e-8 * v.norm());
}

TEST_CASE("witten kernel residual and d_v structure") {
    const int n = 257;
    const auto g = CollocationGrid::make(n);
    const auto V = oracles::canonical_v();
    const auto b = assemble_q(V, TorusPotential::constant(0.7), g, 0.25);

    CHECK((b.witten - b.witten.transpose()).cwiseAbs().maxCoeff() <=
          1e-14 * b.witten.cwiseAbs().maxCoeff());

    Eigen::VectorXd kernel(n);
    double vmin = 1e300;
    for (int i = 0; i < n; ++i) vmin = std::min(vmin, b.v_samples(i));
    for (int i = 0; i < n; ++i) kernel(i) = std::exp(-(b.v_samples(i) - vmin) / 0.25);
    const double wnorm = b.witten.cwiseAbs().colwise().sum().maxCoeff();
    CHECK((b.witten * kernel).norm() <= 1e-8 * wnorm * kernel.norm());

    // PSD: smallest eigenvalue above -1e-12 ||witten||.
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(b.witten);
    CHECK(es.eigenvalues()(0) >= -1e-12 * wnorm);
}

TEST_CASE("assemble_t: lambda = 0 gives witten back, diagonal shifts in general") {
    const auto g = CollocationGrid::make(33);
    const auto b = assemble_q(oracles::canonical_v(), TorusPotential::constant(0.5), g, 0.3);
    CHECK((assemble_t_real(b, 0.0) - b.witten).cwiseAbs().maxCoeff() == 0.0);
    const std::complex<double> lam(0.1, 0.02);
    const auto T = assemble_t(b, lam);
    const auto expect =
        b.witten.cast<std::complex<double>>() -
        lam * Eigen::MatrixXcd(b.w_diag.cast<std::complex<double>>().asDiagonal()) +
        lam * lam * Eigen::MatrixXcd::Identity(33, 33);
    CHECK((T - expect).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("doubling n leaves the low witten spectrum fixed") {
    const auto V = oracles::canonical_v();
    const auto a = TorusPotential::constant(0.7);
    const double h = 0.25;
    const auto b1 = assemble_q(V, a, CollocationGrid::make(129), h);
    const auto b2 = assemble_q(V, a, CollocationGrid::make(257), h);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> e1(b1.witten), e2(b2.witten);
    // n0 = 2 smallest eigenvalues; mu_1 ~ 0 so compare mu_2 relatively.
    CHECK(std::abs(e1.eigenvalues()(0) - e2.eigenvalues()(0)) < 1e-10);
    CHECK(std::abs(e1.eigenvalues()(1) - e2.eigenvalues()(1)) <=
          1e-8 * std::abs(e2.eigenvalues()(1)));
}
