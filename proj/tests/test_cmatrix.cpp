#include <doctest.h>

#include "ssakit/cmatrix.hpp"
#include "ssakit/errors.hpp"
#include "ssakit/generate.hpp"
#include "ssakit/linalg.hpp"
#include "test_helpers.hpp"

using namespace ssakit;

TEST_CASE("kron of identities") {
    const CMatrix i4 = kron(CMatrix::identity(2), CMatrix::identity(2));
    CHECK(frobenius_distance(i4, CMatrix::identity(4)) == doctest::Approx(0.0).epsilon(1e-15));
}

TEST_CASE("kron of diagonals") {
    const CMatrix a = CMatrix::diagonal({1.0, 2.0});
    const CMatrix b = CMatrix::diagonal({3.0, 4.0});
    const CMatrix expect = CMatrix::diagonal({3.0, 4.0, 6.0, 8.0});
    CHECK(frobenius_distance(kron(a, b), expect) < 1e-14);
}

TEST_CASE("kron multiplies ranks (singular-value oracle)") {
    // rank via independent singular-value counts
    Rng rng(515);
    const CMatrix a = random_density(3, 2, rng);  // rank 2
    const CMatrix b = random_density(2, 1, rng);  // rank 1
    CHECK(numeric_rank(a) == 2);
    CHECK(numeric_rank(b) == 1);
    CHECK(numeric_rank(kron(a, b)) == numeric_rank(a) * numeric_rank(b));

    const CMatrix full_a = random_density(3, 3, rng);
    const CMatrix full_b = random_density(2, 2, rng);
    CHECK(numeric_rank(kron(full_a, full_b)) == 6);
}

TEST_CASE("kron is associative entrywise") {
    Rng rng(99);
    const CMatrix a = random_unitary(2, rng);
    const CMatrix b = random_unitary(3, rng);
    const CMatrix c = random_unitary(2, rng);
    CHECK(frobenius_distance(kron(kron(a, b), c), kron(a, kron(b, c))) < 1e-12);
}

TEST_CASE("kron rejects oversized results") {
    CHECK_THROWS_AS(kron(CMatrix::identity(100), CMatrix::identity(100)), InvalidInput);
}

TEST_CASE("partial trace of a product state returns the factor") {
    Rng rng(7);
    const CMatrix rho = random_density(2, 2, rng);
    const CMatrix sigma = random_density(3, 3, rng);
    const CMatrix back = partial_trace(kron(rho, sigma), {2, 3}, {0});
    CHECK(frobenius_distance(back, rho) < 1e-12);
}

TEST_CASE("partial trace of a Bell state is maximally mixed") {
    const CMatrix reduced = partial_trace(testing::bell_phi_plus(), {2, 2}, {0});
    CHECK(frobenius_distance(reduced, 0.5 * CMatrix::identity(2)) < 1e-14);
}

TEST_CASE("sequential and direct partial traces agree") {
    Rng rng(11);
    const CMatrix rho = random_density(12, 12, rng);  // (2,3,2)
    const CMatrix direct = partial_trace(rho, {2, 3, 2}, {0});
    const CMatrix via_b = partial_trace(rho, {2, 3, 2}, {0, 2});
    const CMatrix sequential = partial_trace(via_b, {2, 2}, {0});
    CHECK(frobenius_distance(direct, sequential) < 1e-12);
}

TEST_CASE("partial trace preserves the trace") {
    Rng rng(13);
    const CMatrix rho = random_density(8, 5, rng);
    const CMatrix reduced = partial_trace(rho, {2, 2, 2}, {1});
    CHECK(std::abs(reduced.trace() - rho.trace()) < 1e-10);
}

TEST_CASE("partial trace rejects mismatched dims") {
    CHECK_THROWS_AS(partial_trace(CMatrix::identity(6), {2, 2}, {0}), InvalidInput);
    CHECK_THROWS_AS(partial_trace(CMatrix::identity(4), {2, 2}, {2}), InvalidInput);
}

TEST_CASE("permute_tensor swaps factors of a Kronecker product") {
    Rng rng(17);
    const CMatrix a = random_density(2, 2, rng);
    const CMatrix b = random_density(3, 3, rng);
    const CMatrix swapped = permute_tensor(kron(a, b), {2, 3}, {1, 0});
    CHECK(frobenius_distance(swapped, kron(b, a)) < 1e-13);
}

TEST_CASE("permute_tensor rejects non-permutations") {
    CHECK_THROWS_AS(permute_tensor(CMatrix::identity(4), {2, 2}, {0, 0}), InvalidInput);
}

TEST_CASE("hilbert-schmidt inner product matches trace of product") {
    Rng rng(19);
    const CMatrix a = random_unitary(3, rng);
    const CMatrix b = random_unitary(3, rng);
    const Complex direct = hs_inner(a, b);
    const Complex via_trace = (a.adjoint() * b).trace();
    CHECK(std::abs(direct - via_trace) < 1e-12);
}
