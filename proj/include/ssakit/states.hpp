// states.hpp — Density matrices on labeled multipartite spaces, purification,
// von Neumann entropy (bits), and the saturation-gap functionals.

#pragma once

#include <array>
#include <string>
#include <vector>

#include "ssakit/cmatrix.hpp"

namespace ssakit {

// Default saturation tolerance, in bits.
inline constexpr double kDefaultGapTol = 1e-8;

class MultipartiteState {
public:
    MultipartiteState() = default;

    // Full validation: Hermitian within 1e-9, trace within 1e-9 of one,
    // minimum eigenvalue >= -1e-9, dims factor the matrix, labels unique.
    static MultipartiteState validated(CMatrix matrix, std::vector<std::size_t> dims,
                                       std::vector<std::string> labels);

    // Structural checks only (dims/labels/Hermiticity/trace); used on values
    // produced internally, where positivity holds by construction.
    static MultipartiteState trusted(CMatrix matrix, std::vector<std::size_t> dims,
                                     std::vector<std::string> labels);

    const CMatrix& matrix() const { return matrix_; }
    const std::vector<std::size_t>& dims() const { return dims_; }
    const std::vector<std::string>& labels() const { return labels_; }
    std::size_t dim() const { return matrix_.rows(); }
    std::size_t arity() const { return dims_.size(); }

    std::size_t index_of(const std::string& label) const;
    bool has_label(const std::string& label) const;

private:
    CMatrix matrix_;
    std::vector<std::size_t> dims_;
    std::vector<std::string> labels_;
};

// Marginal over the listed labels, keeping the state's stored order.
MultipartiteState marginal(const MultipartiteState& state,
                           const std::vector<std::string>& labels);

// Reorders the tensor factors into the given label order (a permutation of
// all stored labels).
MultipartiteState permute_systems(const MultipartiteState& state,
                                  const std::vector<std::string>& order);

// S(rho) = -Tr[rho log2 rho] in bits. Eigenvalues in [-1e-9, 0) are clamped
// to zero, anything lower is rejected; eigenvalues <= 1e-12 contribute zero.
double von_neumann_entropy(const CMatrix& rho);
double von_neumann_entropy(const MultipartiteState& state);

// Entropy of the marginal over a label subset.
double subsystem_entropy(const MultipartiteState& state,
                         const std::vector<std::string>& labels);

// Purification on one extra subsystem with the given label. dim of the new
// subsystem equals the rank of the input at the support cutoff; the gauge is
// fixed by the ascending eigenbasis order of hermitian_eig.
MultipartiteState purify(const MultipartiteState& state, const std::string& new_label = "D");

struct GapReport {
    enum class Kind {
        SsaV1,          // S(ABC) + S(B) <= S(AB) + S(BC)
        SsaV2,          // S(A) + S(C) <= S(AB) + S(CB)
        ArakiLieb,      // S(B) - S(C) <= S(BC)
        BiSsaPair,      // both SsaV1 orderings at once
        ExchangeBound,  // chi <= S of the complementary output
        AverageEntropy, // sum q S(rho') <= S(rho)
        CoherentUpper,  // I_c <= S(rho)
    };
    Kind kind{Kind::SsaV1};
    double lhs_bits = 0.0;
    double rhs_bits = 0.0;
    double gap_bits = 0.0;  // rhs - lhs
    bool saturated = false; // |gap| within the caller's tolerance
};

const char* to_string(GapReport::Kind kind);

GapReport ssa_gap_v1(const MultipartiteState& rho, double tol = kDefaultGapTol);
GapReport ssa_gap_v2(const MultipartiteState& sigma, double tol = kDefaultGapTol);
GapReport araki_lieb_gap(const MultipartiteState& omega, double tol = kDefaultGapTol);

// SSA-v1 gap for an explicit (first, middle, last) label triple of a state
// that may have more subsystems; extra subsystems are traced out.
GapReport ssa_gap_v1_of(const MultipartiteState& state,
                        const std::array<std::string, 3>& order,
                        double tol = kDefaultGapTol);

// Residuals of the purification-proof identities, evaluated on the purified
// four-party state (reference label chosen as the first unused of D,E,F,...).
struct PurificationIdentities {
    GapReport eq7;  // S(A)+S(C) vs S(CD)+S(AD)
    GapReport eq8;  // S(A)+S(ABD) vs S(AB)+S(AD)
    GapReport eq9;  // S(CBD)+S(C) vs S(CD)+S(CB)
    std::string reference_label;
};

PurificationIdentities purification_identities(const MultipartiteState& sigma,
                                               double tol = kDefaultGapTol);

}  // namespace ssakit
