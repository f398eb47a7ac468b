#include <doctest.h>

#include <algorithm>

#include "ssakit/algebra.hpp"
#include "ssakit/errors.hpp"
#include "ssakit/generate.hpp"
#include "ssakit/linalg.hpp"
#include "test_helpers.hpp"

using namespace ssakit;

namespace {

std::vector<std::pair<std::size_t, std::size_t>> block_dims(const FactorDecomposition& d) {
    std::vector<std::pair<std::size_t, std::size_t>> dims;
    for (const FactorBlock& b : d.blocks) dims.emplace_back(b.dim_left, b.dim_right);
    return dims;
}

// Brute-force span dimension of products of the generators up to a word
// length, via the rank of the stacked vectorizations.
std::size_t word_span_dimension(const std::vector<CMatrix>& gens, std::size_t dim,
                                int max_len) {
    std::vector<CMatrix> words = gens;
    for (const CMatrix& g : gens) words.push_back(g.adjoint());
    std::size_t frontier_begin = 0;
    for (int len = 1; len < max_len; ++len) {
        const std::size_t end = words.size();
        for (std::size_t i = frontier_begin; i < end; ++i)
            for (const CMatrix& g : gens) {
                words.push_back(words[i] * g);
                words.push_back(g * words[i]);
            }
        frontier_begin = end;
    }
    CMatrix stacked(words.size(), dim * dim);
    for (std::size_t w = 0; w < words.size(); ++w)
        for (std::size_t i = 0; i < dim; ++i)
            for (std::size_t j = 0; j < dim; ++j)
                stacked(w, i * dim + j) = words[w](i, j);
    return numeric_rank(stacked, 1e-8);
}

}  // namespace

TEST_CASE("closure of the identity alone is one-dimensional") {
    const OperatorAlgebra alg = algebra_closure({CMatrix::identity(3)}, 3);
    CHECK(alg.basis.size() == 1);
}

TEST_CASE("pauli x and z generate the full qubit algebra") {
    const OperatorAlgebra alg = algebra_closure({testing::pauli_x(), testing::pauli_z()}, 2);
    CHECK(alg.basis.size() == 4);
}

TEST_CASE("closure size matches the brute-force word span") {
    // two random elements of a block-diagonal (2 + 3) algebra
    Rng rng(811);
    CMatrix g1(5, 5), g2(5, 5);
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j) {
            g1(i, j) = rng.cgaussian();
            g2(i, j) = rng.cgaussian();
        }
    for (std::size_t i = 2; i < 5; ++i)
        for (std::size_t j = 2; j < 5; ++j) {
            g1(i, j) = rng.cgaussian();
            g2(i, j) = rng.cgaussian();
        }
    const OperatorAlgebra alg = algebra_closure({g1, g2}, 5);
    CHECK(alg.basis.size() == 13);  // 2^2 + 3^2 for generic draws
    CHECK(alg.basis.size() == word_span_dimension({g1, g2}, 5, 4));
}

TEST_CASE("closure basis is closed under products") {
    Rng rng(813);
    const CMatrix u = random_unitary(4, rng);
    const CMatrix g = u * kron(testing::pauli_z(), CMatrix::identity(2)) * u.adjoint();
    const OperatorAlgebra alg = algebra_closure({g}, 4);
    for (const CMatrix& a : alg.basis)
        for (const CMatrix& b : alg.basis) {
            CMatrix prod = a * b;
            for (const CMatrix& e : alg.basis) prod -= hs_inner(e, prod) * e;
            CHECK(prod.frobenius_norm() < 1e-8);
        }
}

TEST_CASE("wedderburn of the full matrix algebra is a single (d,1) block") {
    const OperatorAlgebra alg = algebra_closure({testing::pauli_x(), testing::pauli_z()}, 2);
    const FactorDecomposition dec = wedderburn_blocks(alg);
    REQUIRE(dec.blocks.size() == 1);
    CHECK(dec.blocks[0].dim_left == 2);
    CHECK(dec.blocks[0].dim_right == 1);
}

TEST_CASE("wedderburn of a commutative diagonal algebra is all (1,1) blocks") {
    std::vector<CMatrix> projectors;
    for (std::size_t k = 0; k < 3; ++k) projectors.push_back(testing::ket_density(3, k));
    const FactorDecomposition dec = wedderburn_blocks(algebra_closure(projectors, 3));
    REQUIRE(dec.blocks.size() == 3);
    for (const FactorBlock& b : dec.blocks) {
        CHECK(b.dim_left == 1);
        CHECK(b.dim_right == 1);
    }
}

TEST_CASE("wedderburn recovers a hidden L(H2) (x) I3 factor") {
    Rng rng(815);
    const CMatrix u = random_unitary(6, rng);
    const CMatrix i3 = CMatrix::identity(3);
    const CMatrix gx = u * kron(testing::pauli_x(), i3) * u.adjoint();
    const CMatrix gz = u * kron(testing::pauli_z(), i3) * u.adjoint();
    const OperatorAlgebra alg = algebra_closure({gx, gz}, 6);
    CHECK(alg.basis.size() == 4);
    const FactorDecomposition dec = wedderburn_blocks(alg);
    REQUIRE(dec.blocks.size() == 1);
    CHECK(dec.blocks[0].dim_left == 2);
    CHECK(dec.blocks[0].dim_right == 3);

    // gauge-invariant check: the generators compress to M (x) I3
    const FactorBlock& blk = dec.blocks[0];
    const CMatrix inside = blk.isometry.adjoint() * gx * blk.isometry;
    const CMatrix m = partial_trace(inside, {2, 3}, {0});
    CHECK(frobenius_distance(inside, kron((1.0 / 3.0) * m, i3)) < 1e-8);
}

TEST_CASE("wedderburn recovers a two-block mixed structure") {
    // (L(H2) (x) I2)  direct-sum  (C (x) I2), hidden by a unitary
    Rng rng(817);
    const CMatrix u = random_unitary(6, rng);
    CMatrix gx(6, 6), gz(6, 6), unit(6, 6);
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j) {
            const CMatrix x = testing::pauli_x();
            const CMatrix z = testing::pauli_z();
            gx(i * 2, j * 2) = x(i, j);
            gx(i * 2 + 1, j * 2 + 1) = x(i, j);
            gz(i * 2, j * 2) = z(i, j);
            gz(i * 2 + 1, j * 2 + 1) = z(i, j);
        }
    for (std::size_t k = 0; k < 6; ++k) unit(k, k) = k < 4 ? 0.0 : 1.0;
    const CMatrix cgx = u * gx * u.adjoint();
    const CMatrix cgz = u * gz * u.adjoint();
    const CMatrix cunit = u * unit * u.adjoint();
    const FactorDecomposition dec = wedderburn_blocks(algebra_closure({cgx, cgz, cunit}, 6));
    auto dims = block_dims(dec);
    std::sort(dims.begin(), dims.end());
    CHECK(dims == std::vector<std::pair<std::size_t, std::size_t>>{{1, 2}, {2, 2}});
}

TEST_CASE("wedderburn rejects spans that are not algebras") {
    CMatrix e01(2, 2);
    e01(0, 1) = 1.0;
    OperatorAlgebra fake;
    fake.ambient_dim = 2;
    fake.basis = {e01};
    CHECK_THROWS_AS(wedderburn_blocks(fake), StructureVerificationFailed);
}
