// linalg.hpp — Hermitian eigensolver (cyclic Jacobi), one-sided Jacobi SVD,
// PSD roots, trace norms, and Hilbert–Schmidt orthonormalization.

#pragma once

#include <cstddef>
#include <vector>

#include "ssakit/cmatrix.hpp"

namespace ssakit {

// Relative cutoff (against the largest eigenvalue / singular value) below
// which spectrum entries are treated as kernel. Shared by pseudo-inverses,
// purification ranks, and the block decomposers.
inline constexpr double kSupportCutoff = 1e-10;

struct SpectralDecomposition {
    std::vector<double> eigenvalues;  // ascending
    CMatrix basis;                    // columns are the matching eigenvectors
};

// Diagonalizes a Hermitian matrix by cyclic Jacobi rotations. Input must be
// Hermitian within herm_tol in Frobenius norm; it is symmetrized before the
// sweep. Deterministic: fixed sweep order, stable eigenvalue sort.
SpectralDecomposition hermitian_eig(const CMatrix& h, double herm_tol = 1e-9);

struct PsdRoots {
    CMatrix sqrt;
    CMatrix pinv_sqrt;  // inverse of sqrt on the support, zero on the kernel
};

// Square root and pseudo-inverse root of a PSD matrix. Eigenvalues in
// [-1e-10, 0) are clamped to zero; anything lower is rejected.
PsdRoots psd_roots(const CMatrix& p);

// Projector onto the span of eigenvectors with eigenvalue above
// kSupportCutoff relative to the largest.
CMatrix support_projector(const CMatrix& p);

// Isometry whose columns span the support of a PSD matrix (eigenvalues
// above the relative cutoff, ascending order).
CMatrix support_isometry(const CMatrix& p);

struct Svd {
    std::vector<double> singular_values;  // descending
    CMatrix left;                         // columns u_k for sigma_k > 0
    CMatrix right;                        // columns v_k, full square
};

// One-sided Jacobi SVD; accurate small singular values (no normal-equation
// squaring), used for rank decisions and null spaces.
Svd svd(const CMatrix& a);

std::vector<double> singular_values(const CMatrix& a);

std::size_t numeric_rank(const CMatrix& a, double rel_tol = kSupportCutoff);

// Orthonormal basis (columns) of the right null space {x : Ax ~ 0}, taking
// singular values <= threshold as zero.
CMatrix null_space(const CMatrix& a, double sv_threshold);

// Sum of singular values.
double trace_norm(const CMatrix& a);

// Sum of |eigenvalues| for Hermitian input (cheaper than general SVD).
double trace_norm_hermitian(const CMatrix& a);

// (1/2)·‖a − b‖₁ for Hermitian a, b.
double trace_distance(const CMatrix& a, const CMatrix& b);

// Gram–Schmidt under the Hilbert–Schmidt inner product; candidates whose
// residual after projection is below drop_tol are discarded.
std::vector<CMatrix> gram_schmidt_hs(const std::vector<CMatrix>& mats, double drop_tol = 1e-10);

}  // namespace ssakit
