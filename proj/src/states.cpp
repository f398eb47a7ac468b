// states.cpp — Multipartite states, entropies, gap functionals

#include "ssakit/states.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "ssakit/errors.hpp"
#include "ssakit/linalg.hpp"

namespace ssakit {

namespace {

void check_structure(const CMatrix& matrix, const std::vector<std::size_t>& dims,
                     const std::vector<std::string>& labels) {
    if (!matrix.is_square()) throw InvalidInput("state: matrix not square");
    if (!matrix.all_finite()) throw InvalidInput("state: non-finite entries");
    if (dims.size() != labels.size()) throw InvalidInput("state: dims/labels length mismatch");
    if (dims.empty()) throw InvalidInput("state: needs at least one subsystem");
    std::size_t total = 1;
    for (std::size_t d : dims) {
        if (d == 0) throw InvalidInput("state: zero subsystem dimension");
        total *= d;
    }
    if (total != matrix.rows())
        throw InvalidInput("state: dims do not factor the matrix dimension");
    std::set<std::string> unique(labels.begin(), labels.end());
    if (unique.size() != labels.size()) throw InvalidInput("state: duplicate labels");
    if (hermiticity_error(matrix) > 1e-9)
        throw InvalidInput("state: matrix not Hermitian within 1e-9");
    if (std::abs(matrix.trace() - Complex{1.0, 0.0}) > 1e-9)
        throw InvalidInput("state: trace not within 1e-9 of one");
}

std::vector<std::size_t> label_indices(const MultipartiteState& state,
                                       const std::vector<std::string>& labels) {
    std::vector<std::size_t> idx;
    idx.reserve(labels.size());
    for (const std::string& l : labels) idx.push_back(state.index_of(l));
    return idx;
}

}  // namespace

MultipartiteState MultipartiteState::validated(CMatrix matrix, std::vector<std::size_t> dims,
                                               std::vector<std::string> labels) {
    check_structure(matrix, dims, labels);
    const SpectralDecomposition eig = hermitian_eig(matrix);
    if (!eig.eigenvalues.empty() && eig.eigenvalues.front() < -1e-9)
        throw InvalidInput("state: minimum eigenvalue below -1e-9, not positive semidefinite");
    MultipartiteState s;
    s.matrix_ = std::move(matrix);
    s.dims_ = std::move(dims);
    s.labels_ = std::move(labels);
    return s;
}

MultipartiteState MultipartiteState::trusted(CMatrix matrix, std::vector<std::size_t> dims,
                                             std::vector<std::string> labels) {
    check_structure(matrix, dims, labels);
    MultipartiteState s;
    s.matrix_ = std::move(matrix);
    s.dims_ = std::move(dims);
    s.labels_ = std::move(labels);
    return s;
}

std::size_t MultipartiteState::index_of(const std::string& label) const {
    for (std::size_t k = 0; k < labels_.size(); ++k)
        if (labels_[k] == label) return k;
    throw InvalidInput("state: unknown subsystem label '" + label + "'");
}

bool MultipartiteState::has_label(const std::string& label) const {
    return std::find(labels_.begin(), labels_.end(), label) != labels_.end();
}

MultipartiteState marginal(const MultipartiteState& state,
                           const std::vector<std::string>& labels) {
    std::vector<std::size_t> keep = label_indices(state, labels);
    std::sort(keep.begin(), keep.end());
    CMatrix reduced = partial_trace(state.matrix(), state.dims(), keep);
    std::vector<std::size_t> dims;
    std::vector<std::string> names;
    for (std::size_t k : keep) {
        dims.push_back(state.dims()[k]);
        names.push_back(state.labels()[k]);
    }
    return MultipartiteState::trusted(std::move(reduced), std::move(dims), std::move(names));
}

MultipartiteState permute_systems(const MultipartiteState& state,
                                  const std::vector<std::string>& order) {
    if (order.size() != state.arity())
        throw InvalidInput("permute_systems: order must list every label");
    const std::vector<std::size_t> perm = label_indices(state, order);
    CMatrix moved = permute_tensor(state.matrix(), state.dims(), perm);
    std::vector<std::size_t> dims;
    std::vector<std::string> names;
    for (std::size_t k : perm) {
        dims.push_back(state.dims()[k]);
        names.push_back(state.labels()[k]);
    }
    return MultipartiteState::trusted(std::move(moved), std::move(dims), std::move(names));
}

double von_neumann_entropy(const CMatrix& rho) {
    if (!rho.is_square()) throw InvalidInput("entropy: matrix not square");
    if (std::abs(rho.trace() - Complex{1.0, 0.0}) > 1e-8)
        throw InvalidInput("entropy: trace not within 1e-8 of one");
    const SpectralDecomposition eig = hermitian_eig(rho);
    double s = 0.0;
    for (double lam : eig.eigenvalues) {
        if (lam < -1e-9) throw InvalidInput("entropy: negative eigenvalue, input not PSD");
        if (lam <= 1e-12) continue;
        s -= lam * std::log2(lam);
    }
    return s;
}

double von_neumann_entropy(const MultipartiteState& state) {
    return von_neumann_entropy(state.matrix());
}

double subsystem_entropy(const MultipartiteState& state,
                         const std::vector<std::string>& labels) {
    return von_neumann_entropy(marginal(state, labels).matrix());
}

MultipartiteState purify(const MultipartiteState& state, const std::string& new_label) {
    if (state.has_label(new_label))
        throw InvalidInput("purify: label '" + new_label + "' already in use");
    const SpectralDecomposition eig = hermitian_eig(state.matrix());
    const std::size_t d = state.dim();
    double lam_max = 0.0;
    for (double lam : eig.eigenvalues) lam_max = std::max(lam_max, lam);
    const double cutoff = kSupportCutoff * lam_max;

    std::vector<std::size_t> support;  // ascending eigenvalue order fixes the D gauge
    for (std::size_t k = 0; k < d; ++k)
        if (eig.eigenvalues[k] > cutoff) support.push_back(k);
    const std::size_t rank = support.size();
    if (rank == 0) throw InvalidInput("purify: state has empty support");
    if (d * rank > kMaxTensorDim)
        throw InvalidInput("purify: purified dimension exceeds maximum");

    // |Omega> = sum_k sqrt(lambda_k) |v_k> |k>
    std::vector<Complex> omega(d * rank, Complex{0.0, 0.0});
    for (std::size_t t = 0; t < rank; ++t) {
        const double w = std::sqrt(std::max(eig.eigenvalues[support[t]], 0.0));
        for (std::size_t i = 0; i < d; ++i) omega[i * rank + t] = w * eig.basis(i, support[t]);
    }
    CMatrix pure(d * rank, d * rank);
    for (std::size_t r = 0; r < d * rank; ++r) {
        if (omega[r] == Complex{0.0, 0.0}) continue;
        for (std::size_t c = 0; c < d * rank; ++c)
            pure(r, c) = omega[r] * std::conj(omega[c]);
    }

    std::vector<std::size_t> dims = state.dims();
    dims.push_back(rank);
    std::vector<std::string> labels = state.labels();
    labels.push_back(new_label);
    return MultipartiteState::trusted(std::move(pure), std::move(dims), std::move(labels));
}

const char* to_string(GapReport::Kind kind) {
    switch (kind) {
        case GapReport::Kind::SsaV1: return "ssa_v1";
        case GapReport::Kind::SsaV2: return "ssa_v2";
        case GapReport::Kind::ArakiLieb: return "araki_lieb";
        case GapReport::Kind::BiSsaPair: return "bi_ssa_pair";
        case GapReport::Kind::ExchangeBound: return "exchange_bound";
        case GapReport::Kind::AverageEntropy: return "average_entropy";
        case GapReport::Kind::CoherentUpper: return "coherent_upper";
    }
    return "unknown";
}

namespace {

GapReport make_report(GapReport::Kind kind, double lhs, double rhs, double tol) {
    GapReport r;
    r.kind = kind;
    r.lhs_bits = lhs;
    r.rhs_bits = rhs;
    r.gap_bits = rhs - lhs;
    r.saturated = std::abs(r.gap_bits) <= tol;
    return r;
}

void require_arity(const MultipartiteState& state, std::size_t n, const char* who) {
    if (state.arity() != n)
        throw InvalidInput(std::string(who) + ": expected " + std::to_string(n) +
                           " subsystems, got " + std::to_string(state.arity()));
}

}  // namespace

GapReport ssa_gap_v1(const MultipartiteState& rho, double tol) {
    require_arity(rho, 3, "ssa_gap_v1");
    const auto& l = rho.labels();
    const double s_abc = von_neumann_entropy(rho);
    const double s_b = subsystem_entropy(rho, {l[1]});
    const double s_ab = subsystem_entropy(rho, {l[0], l[1]});
    const double s_bc = subsystem_entropy(rho, {l[1], l[2]});
    return make_report(GapReport::Kind::SsaV1, s_abc + s_b, s_ab + s_bc, tol);
}

GapReport ssa_gap_v2(const MultipartiteState& sigma, double tol) {
    require_arity(sigma, 3, "ssa_gap_v2");
    const auto& l = sigma.labels();
    const double s_a = subsystem_entropy(sigma, {l[0]});
    const double s_c = subsystem_entropy(sigma, {l[2]});
    const double s_ab = subsystem_entropy(sigma, {l[0], l[1]});
    const double s_cb = subsystem_entropy(sigma, {l[1], l[2]});
    return make_report(GapReport::Kind::SsaV2, s_a + s_c, s_ab + s_cb, tol);
}

GapReport araki_lieb_gap(const MultipartiteState& omega, double tol) {
    require_arity(omega, 2, "araki_lieb_gap");
    const auto& l = omega.labels();
    const double s_bc = von_neumann_entropy(omega);
    const double s_b = subsystem_entropy(omega, {l[0]});
    const double s_c = subsystem_entropy(omega, {l[1]});
    return make_report(GapReport::Kind::ArakiLieb, s_b - s_c, s_bc, tol);
}

GapReport ssa_gap_v1_of(const MultipartiteState& state,
                        const std::array<std::string, 3>& order, double tol) {
    const std::string& x = order[0];
    const std::string& y = order[1];
    const std::string& z = order[2];
    const double s_xyz = subsystem_entropy(state, {x, y, z});
    const double s_y = subsystem_entropy(state, {y});
    const double s_xy = subsystem_entropy(state, {x, y});
    const double s_yz = subsystem_entropy(state, {y, z});
    return make_report(GapReport::Kind::SsaV1, s_xyz + s_y, s_xy + s_yz, tol);
}

PurificationIdentities purification_identities(const MultipartiteState& sigma, double tol) {
    require_arity(sigma, 3, "purification_identities");
    std::string ref;
    for (char c = 'D';; ++c) {
        ref = std::string(1, c);
        if (!sigma.has_label(ref)) break;
    }

    const MultipartiteState tau = purify(sigma, ref);
    const auto& l = sigma.labels();
    const std::string& a = l[0];
    const std::string& b = l[1];
    const std::string& c = l[2];

    PurificationIdentities out;
    out.reference_label = ref;
    out.eq7 = make_report(GapReport::Kind::SsaV2,
                          subsystem_entropy(tau, {a}) + subsystem_entropy(tau, {c}),
                          subsystem_entropy(tau, {c, ref}) + subsystem_entropy(tau, {a, ref}),
                          tol);
    out.eq8 = make_report(GapReport::Kind::SsaV1,
                          subsystem_entropy(tau, {a, b, ref}) + subsystem_entropy(tau, {a}),
                          subsystem_entropy(tau, {a, b}) + subsystem_entropy(tau, {a, ref}),
                          tol);
    out.eq9 = make_report(GapReport::Kind::SsaV1,
                          subsystem_entropy(tau, {c, b, ref}) + subsystem_entropy(tau, {c}),
                          subsystem_entropy(tau, {c, b}) + subsystem_entropy(tau, {c, ref}),
                          tol);
    return out;
}

}  // namespace ssakit
