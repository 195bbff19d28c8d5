#include "geogossip/spectral.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace geogossip {

namespace {

void check_row_stochastic(const DenseMatrix& p) {
    for (int i = 0; i < p.n; ++i) {
        double sum = 0.0;
        for (int j = 0; j < p.n; ++j) {
            if (p.at(i, j) < 0.0) throw std::invalid_argument("selection matrix has a negative entry");
            sum += p.at(i, j);
        }
        if (std::fabs(sum - 1.0) > 1e-12)
            throw std::invalid_argument("selection matrix is not row-stochastic");
    }
}

}  // namespace

SelectionMatrix selection_standard(const Topology& t) {
    SelectionMatrix s;
    s.P = DenseMatrix(t.n);
    for (int i = 0; i < t.n; ++i) {
        const auto& nb = t.adjacency[i];
        if (nb.empty()) throw std::invalid_argument("isolated node: invalid topology for gossip");
        const double w = 1.0 / static_cast<double>(nb.size());
        for (int j : nb) s.P.at(i, j) = w;
    }
    return s;
}

SelectionMatrix selection_geographic(const InducedDistribution& q) {
    const int n = q.size();
    SelectionMatrix s;
    s.P = DenseMatrix(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) s.P.at(i, j) = q.q[j];
    return s;
}

AveragingMatrix build_W(const SelectionMatrix& p) {
    check_row_stochastic(p.P);
    const int n = p.P.n;
    AveragingMatrix w;
    w.W = DenseMatrix(n);
    w.D.assign(n, 0.0);
    for (int i = 0; i < n; ++i) {
        double d = 0.0;
        for (int j = 0; j < n; ++j) d += p.P.at(i, j) + p.P.at(j, i);
        w.D[i] = d;
    }
    const double scale = 1.0 / (2.0 * n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            double entry = scale * (p.P.at(i, j) + p.P.at(j, i));
            if (i == j) entry += 1.0 - scale * w.D[i];
            w.W.at(i, j) = entry;
        }
    }
    return w;
}

std::vector<double> symmetric_eigenvalues(const DenseMatrix& m) {
    const int n = m.n;
    Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>> map(
        m.a.data(), n, n);
    const double scale = std::max(1.0, map.cwiseAbs().maxCoeff());
    if ((map - map.transpose()).cwiseAbs().maxCoeff() > 1e-10 * scale)
        throw std::invalid_argument("matrix is not symmetric");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(map, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) throw std::runtime_error("eigensolve failed");
    const auto& ev = solver.eigenvalues();
    return std::vector<double>(ev.data(), ev.data() + n);
}

std::vector<double> second_eigenvector(const DenseMatrix& m) {
    const int n = m.n;
    if (n < 2) throw std::invalid_argument("second_eigenvector requires n >= 2");
    Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>> map(
        m.a.data(), n, n);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(map);
    if (solver.info() != Eigen::Success) throw std::runtime_error("eigensolve failed");
    const auto col = solver.eigenvectors().col(n - 2);
    return std::vector<double>(col.data(), col.data() + n);
}

double lambda2(const AveragingMatrix& w) {
    if (w.W.n < 2) throw std::invalid_argument("lambda2 requires n >= 2");
    const std::vector<double> ev = symmetric_eigenvalues(w.W);
    return ev[ev.size() - 2];
}

double closed_form_cycle_lambda2(int n) {
    if (n < 3) throw std::invalid_argument("cycle closed form requires n >= 3");
    const double inv = 1.0 / n;
    return (1.0 - inv) + inv * std::cos(2.0 * std::numbers::pi * inv);
}

double closed_form_complete_lambda2(int n) {
    if (n < 2) throw std::invalid_argument("complete closed form requires n >= 2");
    const double inv = 1.0 / n;
    return 1.0 - inv + inv * inv;
}

double predicted_rounds(double lambda2, double epsilon) {
    if (!(lambda2 > 0.0 && lambda2 < 1.0)) throw std::domain_error("no spectral gap: lambda2 outside (0, 1)");
    if (!(epsilon > 0.0 && epsilon <= 1.0)) throw std::invalid_argument("epsilon must be in (0, 1]");
    return std::log(1.0 / epsilon) / std::log(1.0 / lambda2);
}

double theorem1_gap_certificate(const InducedDistribution& q) {
    const int n = q.size();
    if (n < 1) throw std::invalid_argument("empty distribution");
    const double inv_n = 1.0 / n;
    double dev_sq = 0.0;
    for (double qv : q.q) {
        const double d = qv - inv_n;
        dev_sq += d * d;
    }
    return (1.0 - 0.5 * inv_n) + std::sqrt(dev_sq / n);
}

}  // namespace geogossip
