#pragma once

#include <Eigen/Dense>

#include "spt/graph.hpp"

namespace spt {

// Full eigendecomposition of the normalized Laplacian L = I - Abar.
// Eigenvalues ascending in [0, 2]; eigenvector columns orthonormal with a
// deterministic sign (largest-magnitude entry positive, ties to the lowest
// index). The smallest eigenvalue is 0 with eigenvector proportional to
// sqrt(marginals).
struct SpectralDecomposition {
  Eigen::VectorXd laplacian_eigenvalues;
  Eigen::MatrixXd eigenvectors;
};

// Embedding minimizing the generalized loss: row x of F is f(x).
// F_tilde = D^{1/2} F, whose product F_tilde F_tilde^T is the best rank-k
// PSD approximation of (1/sigma) Abar + (1 - 1/sigma) I. Columns are ordered
// by decreasing eigenvalue, so for sigma = 2 and a nondegenerate cut
// F_tilde^T F_tilde = diag(1 - lambda_i / 2), i = 1..k.
struct Representation {
  int k = 0;
  double sigma = 2.0;
  bool degenerate_cut = false;  // lambda_k == lambda_{k+1} within 1e-8
  Eigen::MatrixXd F;
  Eigen::MatrixXd F_tilde;
};

// Abar(x, y) = w(x, y) / sqrt(w(x) w(y)).
Eigen::MatrixXd normalized_adjacency(const PositivePairGraph& g);

// L = I - Abar.
Eigen::MatrixXd laplacian(const PositivePairGraph& g);

// Same construction for a restricted graph (normalized by the restricted
// marginals).
Eigen::MatrixXd normalized_adjacency(const RestrictedGraph& g);

SpectralDecomposition decompose(const PositivePairGraph& g);

// Closed-form minimizer of generalized_loss over n x k embeddings,
// 1 <= k <= n. Negative eigenvalues of (1/sigma) Abar + (1 - 1/sigma) I are
// clamped to zero.
Representation minimize_loss(const PositivePairGraph& g, int k, double sigma);

// E_{(x,x') ~ P} ||f(x) - f(x')||^2 + sigma ||E_{x ~ P_X} f(x) f(x)^T - I||_F^2.
double generalized_loss(const PositivePairGraph& g, const Eigen::MatrixXd& F,
                        double sigma);

// -2 E_{(x,x') ~ P} f(x)^T f(x') + E_{x,x' ~ P_X} (f(x)^T f(x'))^2.
// Differs from generalized_loss at sigma = 1 by the constant k.
double spectral_contrastive_loss(const PositivePairGraph& g, const Eigen::MatrixXd& F);

}  // namespace spt
