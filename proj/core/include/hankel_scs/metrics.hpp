#pragma once

#include "hankel_scs/signal_model.hpp"
#include "hankel_scs/types.hpp"

namespace hscs {

/// ||x_hat - x|| / ||x||. Throws for a zero reference.
double rel_error(const ComplexSignal& x_hat, const ComplexSignal& x);

struct Procrustes {
    RMatrix Q;          // real orthogonal
    double dist = 0.0;  // ||Z - Z_star Q||_F
};

/// min over real orthogonal Q of ||Z - Z_star Q||_F.
Procrustes procrustes_real_orth(const CMatrix& Z, const CMatrix& Z_star);

/// Alignment of Z to Z_star over invertible P.
struct Alignment {
    CMatrix P;
    double residual = 0.0;         // sqrt(||Z - Z_star P||^2 + ||Z - Z_star P^{-T}||^2)
    double first_order_gap = 0.0;  // ||(Z_star P)^H E_1 - E_2^T conj(Z_star P^{-T})||_F
    bool converged = false;
    bool singular = false;         // P drifted toward singularity; residual is still an upper bound
    int iterations = 0;
};

/// Local minimization of ||Z - Z_star P||_F^2 + ||Z - Z_star P^{-T}||_F^2 over
/// invertible P, started at the real orthogonal Procrustes solution.
Alignment dist_P_upper(const CMatrix& Z, const CMatrix& Z_star);

/// Objective above evaluated at a given P.
double dist_P_objective(const CMatrix& Z, const CMatrix& Z_star, const CMatrix& P);

/// R exp(i W) with R Haar-random real orthogonal and W a random real
/// skew-symmetric matrix with spectral norm `scale`.
CMatrix random_complex_orthogonal(Index r, double scale, Rng& rng);

/// R exp(i W) for a given real orthogonal R and real skew-symmetric W.
CMatrix complex_orthogonal(const RMatrix& R, const RMatrix& W);

/// n ||U||_{2,inf}^2 / (2r) for U with orthonormal columns.
double incoherence(const CMatrix& U, Index n);

struct Lemma4Report {
    double left = 0.0;    // dist_P^2 (upper bound)
    double middle = 0.0;  // 2 min_Q ||Z - Z_star Q||_F^2 over real orthogonal Q
    double right = 0.0;   // (sqrt 2 + 1) / sigma_r(M_star) ||M - M_star||_F^2
    bool pass = false;
};

/// Z, Z_star are Takagi factors of the complex symmetric M, M_star.
Lemma4Report lemma4_check(const CMatrix& Z, const CMatrix& Z_star, const CMatrix& M,
                          const CMatrix& M_star);

}  // namespace hscs
