// channels.hpp — Kraus channels, complementary outputs, induced ensembles,
// Holevo quantity, the omega tripartite construction, and coherent information.

#pragma once

#include <vector>

#include "ssakit/cmatrix.hpp"
#include "ssakit/states.hpp"

namespace ssakit {

class KrausChannel {
public:
    // Validates completeness sum K† K = I within 1e-9 Frobenius.
    explicit KrausChannel(std::vector<CMatrix> kraus);

    std::size_t dim_in() const { return dim_in_; }
    std::size_t dim_out() const { return dim_out_; }
    std::size_t n_kraus() const { return kraus_.size(); }
    const std::vector<CMatrix>& kraus() const { return kraus_; }

private:
    std::size_t dim_in_ = 0;
    std::size_t dim_out_ = 0;
    std::vector<CMatrix> kraus_;
};

// Channel with the single Kraus operator U (U unitary).
KrausChannel unitary_channel(const CMatrix& u);
KrausChannel identity_channel(std::size_t dim);
// Projectors onto the computational basis.
KrausChannel dephasing_channel(std::size_t dim);

KrausChannel compose(const KrausChannel& second, const KrausChannel& first);
KrausChannel tensor(const KrausChannel& a, const KrausChannel& b);

struct Ensemble {
    struct Item {
        double weight;
        CMatrix state;
    };
    std::vector<Item> items;
};

CMatrix apply(const KrausChannel& phi, const CMatrix& rho);

// Environment-side output: entries Tr[K_mu rho K_nu†] in the Kraus index
// basis (input order fixes the gauge).
CMatrix complementary(const KrausChannel& phi, const CMatrix& rho);

// Weights q_mu = Tr[K_mu rho K_mu†], states q_mu^{-1} K_mu rho K_mu†;
// branches with q_mu <= 1e-12 are dropped.
Ensemble induced_ensemble(const KrausChannel& phi, const CMatrix& rho);

// chi = S(sum p rho) - sum p S(rho), in bits.
double holevo(const Ensemble& e);

struct OmegaState {
    MultipartiteState state;      // labels (A,B,C), dims (dim_out, n_kraus, n_kraus)
    std::vector<CMatrix> blocks;  // A_{mu nu} = K_mu rho K_nu†, row-major in (mu, nu)
    std::size_t n_kraus = 0;
};

OmegaState omega_state(const KrausChannel& phi, const CMatrix& rho);

// Gap of chi <= S(complementary output).
GapReport exchange_bound_report(const KrausChannel& phi, const CMatrix& rho,
                                double tol = kDefaultGapTol);

// Gap of sum q S(rho') <= S(rho). Cross-checks the identity
// sum q S(rho') = S(omega_AC) - S(omega_B) within 1e-8.
GapReport average_entropy_report(const KrausChannel& phi, const CMatrix& rho,
                                 double tol = kDefaultGapTol);

struct CoherentInformation {
    double value_bits = 0.0;          // S(Phi(rho)) - S(complementary(rho))
    double input_entropy_bits = 0.0;  // S(rho)
    bool saturated = false;           // |I_c - S(rho)| <= tol
};

CoherentInformation coherent_information(const KrausChannel& phi, const CMatrix& rho,
                                         double tol = kDefaultGapTol);

}  // namespace ssakit
