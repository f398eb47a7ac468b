// channels.cpp — Kraus channel operations

#include "ssakit/channels.hpp"

#include <cmath>

#include "ssakit/errors.hpp"
#include "ssakit/linalg.hpp"

namespace ssakit {

KrausChannel::KrausChannel(std::vector<CMatrix> kraus) : kraus_(std::move(kraus)) {
    if (kraus_.empty()) throw InvalidInput("channel: needs at least one Kraus operator");
    dim_out_ = kraus_.front().rows();
    dim_in_ = kraus_.front().cols();
    if (dim_in_ == 0 || dim_out_ == 0) throw InvalidInput("channel: empty Kraus operator");
    CMatrix completeness(dim_in_, dim_in_);
    for (const CMatrix& k : kraus_) {
        if (k.rows() != dim_out_ || k.cols() != dim_in_)
            throw InvalidInput("channel: Kraus operators must share one shape");
        if (!k.all_finite()) throw InvalidInput("channel: non-finite Kraus entries");
        completeness += k.adjoint() * k;
    }
    completeness -= CMatrix::identity(dim_in_);
    if (completeness.frobenius_norm() > 1e-9)
        throw InvalidInput("channel: sum K† K differs from identity beyond 1e-9");
}

KrausChannel unitary_channel(const CMatrix& u) {
    return KrausChannel(std::vector<CMatrix>{u});
}

KrausChannel identity_channel(std::size_t dim) {
    return unitary_channel(CMatrix::identity(dim));
}

KrausChannel dephasing_channel(std::size_t dim) {
    std::vector<CMatrix> kraus;
    for (std::size_t k = 0; k < dim; ++k) {
        CMatrix p(dim, dim);
        p(k, k) = 1.0;
        kraus.push_back(std::move(p));
    }
    return KrausChannel(std::move(kraus));
}

KrausChannel compose(const KrausChannel& second, const KrausChannel& first) {
    if (second.dim_in() != first.dim_out())
        throw InvalidInput("compose: inner dimensions do not match");
    std::vector<CMatrix> kraus;
    kraus.reserve(second.n_kraus() * first.n_kraus());
    for (const CMatrix& s : second.kraus())
        for (const CMatrix& f : first.kraus()) kraus.push_back(s * f);
    return KrausChannel(std::move(kraus));
}

KrausChannel tensor(const KrausChannel& a, const KrausChannel& b) {
    std::vector<CMatrix> kraus;
    kraus.reserve(a.n_kraus() * b.n_kraus());
    for (const CMatrix& ka : a.kraus())
        for (const CMatrix& kb : b.kraus()) kraus.push_back(kron(ka, kb));
    return KrausChannel(std::move(kraus));
}

namespace {

void check_input(const KrausChannel& phi, const CMatrix& rho, const char* who) {
    if (!rho.is_square() || rho.rows() != phi.dim_in())
        throw InvalidInput(std::string(who) + ": state dimension does not match channel input");
    if (std::abs(rho.trace() - Complex{1.0, 0.0}) > 1e-8)
        throw InvalidInput(std::string(who) + ": state trace not within 1e-8 of one");
}

}  // namespace

CMatrix apply(const KrausChannel& phi, const CMatrix& rho) {
    check_input(phi, rho, "apply");
    CMatrix out(phi.dim_out(), phi.dim_out());
    for (const CMatrix& k : phi.kraus()) out += k * rho * k.adjoint();
    return out;
}

CMatrix complementary(const KrausChannel& phi, const CMatrix& rho) {
    check_input(phi, rho, "complementary");
    const std::size_t n = phi.n_kraus();
    std::vector<CMatrix> krho;
    krho.reserve(n);
    for (const CMatrix& k : phi.kraus()) krho.push_back(k * rho);
    CMatrix out(n, n);
    for (std::size_t mu = 0; mu < n; ++mu)
        for (std::size_t nu = 0; nu < n; ++nu)
            out(mu, nu) = hs_inner(phi.kraus()[nu], krho[mu]);  // Tr[K_mu rho K_nu†]
    return out;
}

Ensemble induced_ensemble(const KrausChannel& phi, const CMatrix& rho) {
    check_input(phi, rho, "induced_ensemble");
    Ensemble e;
    for (const CMatrix& k : phi.kraus()) {
        CMatrix branch = k * rho * k.adjoint();
        const double q = branch.trace().real();
        if (q <= 1e-12) continue;
        branch *= 1.0 / q;
        e.items.push_back({q, std::move(branch)});
    }
    if (e.items.empty())
        throw InvalidInput("induced_ensemble: channel annihilates the state numerically");
    return e;
}

double holevo(const Ensemble& e) {
    if (e.items.empty()) throw InvalidInput("holevo: empty ensemble");
    double wsum = 0.0;
    for (const auto& item : e.items) {
        if (item.weight <= 0.0) throw InvalidInput("holevo: non-positive weight");
        wsum += item.weight;
    }
    if (std::abs(wsum - 1.0) > 1e-9) throw InvalidInput("holevo: weights do not sum to one");
    CMatrix avg(e.items.front().state.rows(), e.items.front().state.cols());
    double mean_entropy = 0.0;
    for (const auto& item : e.items) {
        avg += item.weight * item.state;
        mean_entropy += item.weight * von_neumann_entropy(item.state);
    }
    return von_neumann_entropy(avg) - mean_entropy;
}

OmegaState omega_state(const KrausChannel& phi, const CMatrix& rho) {
    check_input(phi, rho, "omega_state");
    const std::size_t d = phi.dim_out();
    const std::size_t n = phi.n_kraus();
    const std::size_t total = d * n * n;
    if (total > kMaxTensorDim)
        throw InvalidInput("omega_state: tripartite dimension exceeds maximum");

    OmegaState omega;
    omega.n_kraus = n;
    omega.blocks.reserve(n * n);
    CMatrix m(total, total);
    for (std::size_t mu = 0; mu < n; ++mu) {
        const CMatrix kmu_rho = phi.kraus()[mu] * rho;
        for (std::size_t nu = 0; nu < n; ++nu) {
            CMatrix block = kmu_rho * phi.kraus()[nu].adjoint();  // A_{mu nu}
            const std::size_t row_base = mu * n + mu;             // |mu>_B |mu>_C
            const std::size_t col_base = nu * n + nu;
            for (std::size_t a = 0; a < d; ++a)
                for (std::size_t b = 0; b < d; ++b)
                    m(a * n * n + row_base, b * n * n + col_base) = block(a, b);
            omega.blocks.push_back(std::move(block));
        }
    }
    omega.state = MultipartiteState::trusted(std::move(m), {d, n, n}, {"A", "B", "C"});
    return omega;
}

GapReport exchange_bound_report(const KrausChannel& phi, const CMatrix& rho, double tol) {
    const double chi = holevo(induced_ensemble(phi, rho));
    const double exchange = von_neumann_entropy(complementary(phi, rho));
    GapReport r;
    r.kind = GapReport::Kind::ExchangeBound;
    r.lhs_bits = chi;
    r.rhs_bits = exchange;
    r.gap_bits = r.rhs_bits - r.lhs_bits;
    r.saturated = std::abs(r.gap_bits) <= tol;
    return r;
}

GapReport average_entropy_report(const KrausChannel& phi, const CMatrix& rho, double tol) {
    const Ensemble e = induced_ensemble(phi, rho);
    double avg = 0.0;
    for (const auto& item : e.items) avg += item.weight * von_neumann_entropy(item.state);
    const double s_in = von_neumann_entropy(rho);

    // Identity check: sum q S(rho') = S(omega_AC) - S(omega_B).
    const OmegaState omega = omega_state(phi, rho);
    const double s_ac = subsystem_entropy(omega.state, {"A", "C"});
    const double s_b = subsystem_entropy(omega.state, {"B"});
    if (std::abs(avg - (s_ac - s_b)) > 1e-8)
        throw InternalError("average_entropy_report: omega identity violated beyond 1e-8");

    GapReport r;
    r.kind = GapReport::Kind::AverageEntropy;
    r.lhs_bits = avg;
    r.rhs_bits = s_in;
    r.gap_bits = r.rhs_bits - r.lhs_bits;
    r.saturated = std::abs(r.gap_bits) <= tol;
    return r;
}

CoherentInformation coherent_information(const KrausChannel& phi, const CMatrix& rho,
                                         double tol) {
    CoherentInformation out;
    out.value_bits =
        von_neumann_entropy(apply(phi, rho)) - von_neumann_entropy(complementary(phi, rho));
    out.input_entropy_bits = von_neumann_entropy(rho);
    out.saturated = std::abs(out.value_bits - out.input_entropy_bits) <= tol;
    return out;
}

}  // namespace ssakit
