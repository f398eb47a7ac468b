// structure.hpp — Decomposition engines for saturating states: the Petz
// recovery oracle, Markov (direct-sum-of-tensor-products) decomposition,
// the purification-based two-sided decomposition, Araki–Lieb factorization,
// bi-SSA sector analysis, and the channel saturation analyzers.

#pragma once

#include <optional>
#include <vector>

#include "ssakit/algebra.hpp"
#include "ssakit/channels.hpp"
#include "ssakit/cmatrix.hpp"
#include "ssakit/states.hpp"

namespace ssakit {

// Entropy gates are in bits, matrix gates in trace distance; conversions are
// never implicit.
struct StructureTolerances {
    double entropy_tol = 1e-8;
    double matrix_tol = 1e-7;
};

// Trace-norm error of recovering rho_ABC from rho_AB through the Petz map
// R_{B->BC}(X) = rho_BC^{1/2} (rho_B^{-1/2} X rho_B^{-1/2} (x) I_C) rho_BC^{1/2},
// with all roots taken on supports. Zero exactly for Markov states.
double petz_markov_error(const MultipartiteState& rho);

struct MarkovStructure {
    FactorDecomposition b_decomposition;  // blocks ordered by descending weight
    std::vector<double> weights;
    std::vector<CMatrix> left_states;   // density on A (x) bL_j
    std::vector<CMatrix> right_states;  // density on bR_j (x) C
    double reassembly_error = 0.0;      // trace distance of the rebuilt state
};

// Decomposition of the middle system of a state saturating SSA v1. The
// fixed-point set of the dual of Tr_C after the Petz map is closed into an
// algebra, split into Wedderburn blocks, and the block states are read off
// by compression; the result is returned only after reassembly passes.
MarkovStructure markov_decompose(const MultipartiteState& rho,
                                 const StructureTolerances& tol = {});

struct TheoremOneCell {
    std::size_t a_index = 0;
    std::size_t c_index = 0;
    double weight = 0.0;
    CMatrix pure_block;      // density on aL_i (x) B (x) cL_j
    CMatrix residual_state;  // density on aR_i (x) cR_j
    double purity = 0.0;     // largest eigenvalue of pure_block
};

struct TheoremOneStructure {
    FactorDecomposition a_decomposition;
    FactorDecomposition c_decomposition;
    std::vector<std::vector<double>> joint_weights;  // K_A x K_C
    std::vector<TheoremOneCell> cells;               // cells with positive weight
    double reassembly_error = 0.0;
    int refinement_rounds = 0;
};

// Two-sided decomposition of a state saturating SSA v2, via purification and
// Markov decompositions of the (B,A,D) and (B,C,D) groupings, followed by
// cell intersection, purity tests with bounded refinement, and reassembly.
TheoremOneStructure theorem1_decompose(const MultipartiteState& sigma,
                                       const StructureTolerances& tol = {});

struct ArakiLiebStructure {
    std::size_t dim_left = 0;
    std::size_t dim_right = 0;
    CMatrix isometry;    // dim(B) x (L*R)
    CMatrix omega_left;  // density on H_L
    CMatrix psi_rc;      // pure density on H_R (x) H_C
    double reassembly_error = 0.0;
};

// Factorization omega_BC = omega_L (x) |psi><psi|_{RC} for states saturating
// the Araki–Lieb identity S(BC) = S(B) - S(C).
ArakiLiebStructure araki_lieb_decompose(const MultipartiteState& omega,
                                        const StructureTolerances& tol = {});

struct BiSsaReport {
    GapReport gap_abc;            // SSA v1 for the stored (A,B,C) order
    GapReport gap_bac;            // SSA v1 for (B,A,C)
    MarkovStructure b_structure;  // decomposition of B
    MarkovStructure a_structure;  // decomposition of A
    std::vector<int> sector_of_b_block;
    std::vector<int> sector_of_a_block;
    std::vector<CMatrix> sector_c_states;
    std::vector<double> sector_weights;
    struct Cell {
        std::size_t a_index;
        std::size_t b_index;
        int sector;
        double weight;
    };
    std::vector<Cell> cells;  // cells with positive joint weight
};

// Checks saturation for both triples, decomposes both middle systems, and
// verifies that the induced C-side factors agree blockwise, returning the
// sector map k(i,j).
BiSsaReport bi_ssa_report(const MultipartiteState& rho,
                          const StructureTolerances& tol = {});

struct ChannelSaturationReport {
    CMatrix gram;  // G_{mu nu} = Tr[K_mu rho K_nu†]
    double gram_first_singular = 0.0;
    double gram_second_singular = 0.0;
    bool rank_one = false;
    std::vector<Complex> lambda;        // principal Gram vector, sum |l|^2 = 1
    CMatrix m_operator;                 // M = sum lambda_mu K_mu†
    double reconstruction_error = 0.0;  // trace norm of rho - M Phi(rho) M†
    double product_identity_error = 0.0;  // trace norm after the B/C reshuffle
};

// Independent sub-condition checks of the average-entropy saturation chain:
// rank-one Gram, M-operator reconstruction, and the product identity. No
// implication between the sub-conditions is asserted.
ChannelSaturationReport channel_saturation_analyze(const KrausChannel& phi, const CMatrix& rho,
                                                   double tol = 1e-8);

struct HolevoSaturationReport {
    GapReport exchange;
    TheoremOneStructure omega_structure;
    struct OutputBlock {
        std::size_t a_index;
        std::size_t c_index;
        double weight;
        CMatrix left_factor;   // density on aL_i
        CMatrix right_factor;  // density on aR_i
    };
    std::vector<OutputBlock> output_blocks;  // block form of Phi(rho) = omega_A
    double output_reassembly_error = 0.0;
};

// For channels saturating the exchange-entropy bound: decomposes the omega
// tripartite state and marginalizes the structure into a block decomposition
// of the channel output.
HolevoSaturationReport holevo_saturation_analyze(const KrausChannel& phi, const CMatrix& rho,
                                                 const StructureTolerances& tol = {});

struct ProposedFactorization {
    std::size_t dim_left = 0;
    std::size_t dim_right = 0;
    CMatrix isometry;  // dim_out x (L*R), onto the output space
};

struct CoherentSaturationReport {
    double coherent_info_bits = 0.0;
    double input_entropy_bits = 0.0;
    double saturation_residual = 0.0;  // |I_c - S(rho)|
    bool saturated = false;
    bool factorization_checked = false;
    double product_error = 0.0;  // trace distance of Phi(rho) to its marginal product
    bool product_form = false;
};

// Reports |I_c - S(rho)|; when a factorization of the output space is
// proposed, rotates Phi(rho) into it and checks the product form against the
// two marginals.
CoherentSaturationReport coherent_saturation_check(
    const KrausChannel& phi, const CMatrix& rho,
    const std::optional<ProposedFactorization>& proposed = std::nullopt,
    const StructureTolerances& tol = {});

}  // namespace ssakit
