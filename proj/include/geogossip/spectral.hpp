#pragma once

#include <vector>

#include "geogossip/sampling.hpp"
#include "geogossip/topology.hpp"

namespace geogossip {

// Row-major dense square matrix; big enough for desk-scale spectra.
struct DenseMatrix {
    int n = 0;
    std::vector<double> a;

    explicit DenseMatrix(int dim = 0) : n(dim), a(static_cast<std::size_t>(dim) * dim, 0.0) {}
    double& at(int i, int j) { return a[static_cast<std::size_t>(i) * n + j]; }
    double at(int i, int j) const { return a[static_cast<std::size_t>(i) * n + j]; }
};

// Row-stochastic neighbor-selection matrix: P_ij is the probability that an
// activated node i gossips with j.
struct SelectionMatrix {
    DenseMatrix P;
};

// W = I + (1/2n) [P + P^T - D] with D_i = sum_j (P_ij + P_ji); symmetric and
// doubly stochastic, convergence governed by its second-largest eigenvalue.
struct AveragingMatrix {
    DenseMatrix W;
    std::vector<double> D;
};

// Uniform choice over graph neighbors: P_ij = 1/deg(i) on edges.
SelectionMatrix selection_standard(const Topology& t);

// Geographic overlay: every row equals the induced distribution q.
SelectionMatrix selection_geographic(const InducedDistribution& q);

AveragingMatrix build_W(const SelectionMatrix& p);

// All eigenvalues of a symmetric matrix, ascending.
std::vector<double> symmetric_eigenvalues(const DenseMatrix& m);

// Unit eigenvector for the second-largest eigenvalue of a symmetric matrix
// (the slowest averaging mode; Definition-1's worst initial field).
std::vector<double> second_eigenvector(const DenseMatrix& m);

// Second-largest eigenvalue of a symmetric W.
double lambda2(const AveragingMatrix& w);

// Cycle standard gossip: (1 - 1/n) + (1/n) cos(2*pi/n), n >= 3.
double closed_form_cycle_lambda2(int n);

// Complete-graph overlay value as printed in the source analysis:
// 1 - 1/n + 1/n^2, n >= 2. Note the eigensolve of the uniform-q overlay W
// gives exactly 1 - 1/n; this form exceeds it by exactly 1/n^2.
double closed_form_complete_lambda2(int n);

// Theta argument ln(1/eps) / ln(1/lambda2), constants omitted.
double predicted_rounds(double lambda2, double epsilon);

// Certified upper bound (1 - 1/(2n)) + ||q - u||_2 / sqrt(n) on the
// second eigenvalue of the geographic overlay (Rayleigh/Cauchy-Schwarz
// chain over the rank-one decomposition).
double theorem1_gap_certificate(const InducedDistribution& q);

}  // namespace geogossip
