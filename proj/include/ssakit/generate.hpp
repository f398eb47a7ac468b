// generate.hpp — Deterministic random and planted-instance generation:
// Hilbert–Schmidt-sampled densities, Haar unitaries and channels, the
// canonical saturating state families, and local-unitary scrambling.

#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "ssakit/channels.hpp"
#include "ssakit/cmatrix.hpp"
#include "ssakit/states.hpp"

namespace ssakit {

// Counter-based 64-bit generator (splitmix-style), splittable into
// independent substreams. Gaussians via Box–Muller on fixed-order draws;
// identical seeds reproduce identical artifacts.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64();
    double uniform();   // [0, 1)
    double gaussian();  // standard normal
    Complex cgaussian();  // re and im each N(0, 1/2), so E|z|^2 = 1

    // Independent substream; does not advance this generator.
    Rng split(std::uint64_t stream) const;

private:
    std::uint64_t state_;
};

// rho = G G† / Tr[G G†] with G a d x rank complex standard-normal matrix.
CMatrix random_density(std::size_t d, std::size_t rank, Rng& rng);
CMatrix random_density(std::size_t d, std::size_t rank, std::uint64_t seed);

// Haar-distributed unitary (Gram–Schmidt of a Ginibre matrix).
CMatrix random_unitary(std::size_t d, Rng& rng);
CMatrix random_unitary(std::size_t d, std::uint64_t seed);

// Normalized random pure-state column vector.
CMatrix random_pure_vector(std::size_t d, Rng& rng);

// Isometry-sliced random channel; requires n_kraus * d_out >= d_in.
KrausChannel random_channel(std::size_t d_in, std::size_t d_out, std::size_t n_kraus,
                            std::uint64_t seed);

// Random tripartite (A,B,C) density with the given subsystem dims.
MultipartiteState random_tripartite(const std::vector<std::size_t>& dims, std::size_t rank,
                                    std::uint64_t seed);

struct BlockShape {
    std::size_t dim_left;
    std::size_t dim_right;
    double weight;
};

struct PlantedMarkov {
    MultipartiteState state;        // labels (A,B,C)
    std::vector<BlockShape> blocks; // planted B-factorization, generation order
    std::size_t dim_a = 0;
    std::size_t dim_c = 0;
};

// Direct sum over j of weight_j * rho_{A L_j} (x) rho_{R_j C} with
// dim(B) = sum_j L_j * R_j; saturates SSA v1 by construction.
PlantedMarkov planted_markov(const std::vector<BlockShape>& blocks, std::size_t dim_a,
                             std::size_t dim_c, std::uint64_t seed);

struct Theorem1Spec {
    // (dim_left, dim_right) per block of A and of C.
    std::vector<std::pair<std::size_t, std::size_t>> a_blocks;
    std::vector<std::pair<std::size_t, std::size_t>> c_blocks;
    // joint weights, a_blocks.size() x c_blocks.size(), summing to one
    std::vector<std::vector<double>> mu;
    std::size_t dim_b = 2;
};

struct PlantedTheorem1 {
    MultipartiteState state;  // labels (A,B,C)
    Theorem1Spec spec;
    // Canonical (recoverable) block data: cells of one support component of
    // mu share a single pure state up to local gauges, so they merge into one
    // block pair carrying a block-diagonal residual. One entry per component.
    std::vector<std::pair<std::size_t, std::size_t>> canonical_a_blocks;
    std::vector<std::pair<std::size_t, std::size_t>> canonical_c_blocks;
    std::vector<double> canonical_weights;
};

// Per support component of mu: one random pure state on aL (x) B (x) cL,
// hidden by per-block local unitaries; per cell (i,j): an independent random
// density on aR_i (x) cR_j. Saturates SSA v2 by construction. Left dims must
// agree within a component (the sharing constraint is what saturation
// demands); off-component dims are free.
PlantedTheorem1 planted_theorem1(const Theorem1Spec& spec, std::uint64_t seed);

struct PlantedArakiLieb {
    MultipartiteState state;  // labels (B,C)
    std::size_t dim_left = 0;
    std::size_t dim_right = 0;
    std::size_t dim_c = 0;
};

// omega_L (x) |psi><psi|_{RC} with B = L (x) R.
PlantedArakiLieb planted_araki_lieb(std::size_t dim_left, std::size_t dim_right,
                                    std::size_t dim_c, std::uint64_t seed);

struct BiSsaSpec {
    std::vector<std::pair<std::size_t, std::size_t>> a_blocks;  // (aL_i, aR_i)
    std::vector<std::pair<std::size_t, std::size_t>> b_blocks;  // (bL_j, bR_j)
    std::vector<std::vector<double>> p;                         // cell weights
    std::vector<int> k1;  // sector of each a-block
    std::vector<int> k2;  // sector of each b-block
    std::size_t dim_c = 2;
    int n_sectors = 1;
};

struct PlantedBiSsa {
    MultipartiteState state;  // labels (A,B,C)
    BiSsaSpec spec;
};

// Direct sum over cells (i,j) of p_ij * rho^i_{aL} (x) rho^{ij}_{aR bL}
// (x) rho^j_{bR} (x) rho^{k}_C with k = k1(i) = k2(j); rejects specs where
// p_ij > 0 but k1(i) != k2(j). Saturates SSA v1 for both (A,B,C) and (B,A,C).
PlantedBiSsa planted_bi_ssa(const BiSsaSpec& spec, std::uint64_t seed);

// Conjugation by a tensor product of Haar unitaries on the listed
// subsystems (identity elsewhere). Entropy gaps are unchanged.
MultipartiteState scramble_local(const MultipartiteState& state,
                                 const std::vector<std::string>& which_labels,
                                 std::uint64_t seed);

}  // namespace ssakit
