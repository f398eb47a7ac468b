// algebra.hpp — Finite-dimensional *-algebra closure and Wedderburn block
// extraction (direct sums of full-matrix-algebra tensor identity factors).

#pragma once

#include <string>
#include <vector>

#include "ssakit/cmatrix.hpp"

namespace ssakit {

struct OperatorAlgebra {
    std::size_t ambient_dim = 0;
    std::vector<CMatrix> basis;  // orthonormal under the Hilbert–Schmidt inner product
};

// Smallest adjoint- and product-closed span containing the generators,
// orthonormalized with a 1e-10 drop tolerance.
OperatorAlgebra algebra_closure(const std::vector<CMatrix>& generators,
                                std::size_t ambient_dim);

struct FactorBlock {
    std::size_t dim_left = 0;
    std::size_t dim_right = 0;
    CMatrix isometry;  // ambient_dim x (dim_left * dim_right), W†W = I
};

// Orthogonal direct sum of tensor-factor blocks of one system. Block ranges
// are pairwise orthogonal and span the algebra's support.
struct FactorDecomposition {
    std::string system_label;
    std::vector<FactorBlock> blocks;
};

// Splits the support of a *-algebra into blocks on which the algebra acts as
// (full matrix algebra on H_L) (x) I_R. The algebra must contain its support
// projector. Blocks are ordered by descending dim_L*dim_R, then dim_L.
// Throws StructureVerificationFailed when the input is not an algebra at
// tolerance (residuals reported in the message).
FactorDecomposition wedderburn_blocks(const OperatorAlgebra& alg);

}  // namespace ssakit
