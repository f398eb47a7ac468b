// structure.cpp — Saturation-structure decomposers and channel analyzers

#include "ssakit/structure.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "ssakit/errors.hpp"
#include "ssakit/linalg.hpp"

namespace ssakit {

namespace {

void require_tripartite(const MultipartiteState& s, const char* who) {
    if (s.arity() != 3)
        throw InvalidInput(std::string(who) + ": expected a tripartite state");
}

CMatrix marginal_matrix(const MultipartiteState& s, std::vector<std::size_t> keep) {
    return partial_trace(s.matrix(), s.dims(), keep);
}

}  // namespace

double petz_markov_error(const MultipartiteState& rho) {
    require_tripartite(rho, "petz_markov_error");
    const std::size_t da = rho.dims()[0];

    const CMatrix rho_ab = marginal_matrix(rho, {0, 1});
    const CMatrix rho_b = marginal_matrix(rho, {1});
    const CMatrix rho_bc = marginal_matrix(rho, {1, 2});
    const PsdRoots rb = psd_roots(rho_b);
    const PsdRoots rbc = psd_roots(rho_bc);

    const CMatrix ia = CMatrix::identity(da);
    const CMatrix pinv_lift = kron(ia, rb.pinv_sqrt);
    const CMatrix flattened = pinv_lift * rho_ab * pinv_lift;  // on A (x) B
    const CMatrix widened = kron(flattened, CMatrix::identity(rho.dims()[2]));
    const CMatrix sqrt_lift = kron(ia, rbc.sqrt);  // rho_BC^{1/2} acts on the adjacent (B,C)
    const CMatrix recovered = sqrt_lift * widened * sqrt_lift;

    return trace_norm_hermitian(rho.matrix() - recovered);
}

namespace {

// Superoperator matrix (in the matrix-unit basis of B) of
// Lambda = Tr_C after the Petz map R_{B->BC}; column (s,t) holds
// vec(Lambda(e_st)) with vec index u*dB + v.
CMatrix petz_transfer_matrix(const MultipartiteState& rho) {
    const std::size_t db = rho.dims()[1];
    const std::size_t dc = rho.dims()[2];
    const CMatrix rho_b = marginal_matrix(rho, {1});
    const CMatrix rho_bc = marginal_matrix(rho, {1, 2});
    const PsdRoots rb = psd_roots(rho_b);
    const PsdRoots rbc = psd_roots(rho_bc);
    const CMatrix ic = CMatrix::identity(dc);

    CMatrix transfer(db * db, db * db);
    for (std::size_t s = 0; s < db; ++s) {
        for (std::size_t t = 0; t < db; ++t) {
            CMatrix unit(db, db);
            unit(s, t) = 1.0;
            const CMatrix mid = rb.pinv_sqrt * unit * rb.pinv_sqrt;
            const CMatrix lifted = rbc.sqrt * kron(mid, ic) * rbc.sqrt;
            const CMatrix image = partial_trace(lifted, {db, dc}, {0});
            for (std::size_t u = 0; u < db; ++u)
                for (std::size_t v = 0; v < db; ++v)
                    transfer(u * db + v, s * db + t) = image(u, v);
        }
    }
    return transfer;
}

CMatrix unvec(const CMatrix& columns, std::size_t col, std::size_t d) {
    CMatrix m(d, d);
    for (std::size_t u = 0; u < d; ++u)
        for (std::size_t v = 0; v < d; ++v) m(u, v) = columns(u * d + v, col);
    return m;
}

}  // namespace

MarkovStructure markov_decompose(const MultipartiteState& rho, const StructureTolerances& tol) {
    require_tripartite(rho, "markov_decompose");
    const std::size_t da = rho.dims()[0], db = rho.dims()[1], dc = rho.dims()[2];

    const GapReport gap = ssa_gap_v1(rho, tol.entropy_tol);
    if (gap.gap_bits > tol.entropy_tol)
        throw NotSaturated("markov_decompose: SSA v1 gap above tolerance", gap.gap_bits);
    const double petz = petz_markov_error(rho);
    if (petz > tol.matrix_tol)
        throw NotSaturated("markov_decompose: Petz recovery error above matrix tolerance",
                           gap.gap_bits);

    // Fixed points of the unital dual of Lambda span the decomposition algebra.
    const CMatrix transfer = petz_transfer_matrix(rho);
    CMatrix dual_minus_id = transfer.adjoint();
    dual_minus_id -= CMatrix::identity(db * db);
    const CMatrix fixed = null_space(dual_minus_id, 1e-8);

    // The null columns are orthonormal and span a *-closed set already;
    // seeding the closure with them (rather than split Hermitian pieces)
    // avoids normalizing near-collinear residuals.
    std::vector<CMatrix> generators;
    for (std::size_t k = 0; k < fixed.cols(); ++k) generators.push_back(unvec(fixed, k, db));
    if (generators.empty())
        throw StructureVerificationFailed("markov_decompose: empty fixed-point set", 1.0);

    const OperatorAlgebra alg = algebra_closure(generators, db);
    FactorDecomposition dec = wedderburn_blocks(alg);
    dec.system_label = rho.labels()[1];

    // Read off the block weights and factors by compression, then verify.
    const CMatrix ia = CMatrix::identity(da);
    const CMatrix ic = CMatrix::identity(dc);
    MarkovStructure out;
    CMatrix rebuilt(rho.dim(), rho.dim());
    std::vector<std::size_t> order(dec.blocks.size());
    std::iota(order.begin(), order.end(), 0);

    std::vector<double> weights(dec.blocks.size(), 0.0);
    std::vector<CMatrix> lefts(dec.blocks.size()), rights(dec.blocks.size());
    for (std::size_t j = 0; j < dec.blocks.size(); ++j) {
        const FactorBlock& blk = dec.blocks[j];
        const CMatrix lift = kron(kron(ia, blk.isometry), ic);
        CMatrix comp = lift.adjoint() * rho.matrix() * lift;
        const double w = comp.trace().real();
        weights[j] = w;
        if (w <= 1e-12) continue;
        comp *= 1.0 / w;
        const std::vector<std::size_t> dims4{da, blk.dim_left, blk.dim_right, dc};
        lefts[j] = partial_trace(comp, dims4, {0, 1});
        rights[j] = partial_trace(comp, dims4, {2, 3});
        rebuilt += w * (lift * kron(lefts[j], rights[j]) * lift.adjoint());
    }

    const double err = trace_distance(rho.matrix(), rebuilt);
    if (err > tol.matrix_tol)
        throw StructureVerificationFailed("markov_decompose: reassembly above matrix tolerance",
                                          err);

    // Canonical order: descending weight, then descending dim_left.
    std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
        if (weights[x] != weights[y]) return weights[x] > weights[y];
        return dec.blocks[x].dim_left > dec.blocks[y].dim_left;
    });
    out.b_decomposition.system_label = dec.system_label;
    for (std::size_t j : order) {
        if (weights[j] <= 1e-12) continue;
        out.b_decomposition.blocks.push_back(dec.blocks[j]);
        out.weights.push_back(weights[j]);
        out.left_states.push_back(lefts[j]);
        out.right_states.push_back(rights[j]);
    }
    out.reassembly_error = err;
    return out;
}

namespace {

// Decompositions of the outer systems of a v2-saturated tripartite state,
// obtained from the purification proof: Markov-decompose the (B,A,D) and
// (B,C,D) groupings of the purified state.
struct SideDecompositions {
    FactorDecomposition a_dec;
    FactorDecomposition c_dec;
};

SideDecompositions derive_side_decompositions(const MultipartiteState& sigma,
                                              const StructureTolerances& tol) {
    std::string ref;
    for (char ch = 'D';; ++ch) {
        ref = std::string(1, ch);
        if (!sigma.has_label(ref)) break;
    }
    const MultipartiteState tau = purify(sigma, ref);
    const std::string a = sigma.labels()[0];
    const std::string b = sigma.labels()[1];
    const std::string c = sigma.labels()[2];

    const MultipartiteState grouping_a =
        permute_systems(marginal(tau, {a, b, ref}), {b, a, ref});
    MarkovStructure ma = markov_decompose(grouping_a, tol);
    const MultipartiteState grouping_c = marginal(tau, {b, c, ref});  // stored order (b, c, ref)
    MarkovStructure mc = markov_decompose(grouping_c, tol);

    SideDecompositions out;
    out.a_dec = std::move(ma.b_decomposition);
    out.a_dec.system_label = a;
    out.c_dec = std::move(mc.b_decomposition);
    out.c_dec.system_label = c;
    return out;
}

struct CellScan {
    std::vector<TheoremOneCell> cells;
    std::vector<std::vector<double>> joint_weights;
    double worst_purity = 1.0;
    double weight_sum = 0.0;
};

CellScan scan_cells(const MultipartiteState& sigma, const FactorDecomposition& a_dec,
                    const FactorDecomposition& c_dec) {
    const std::size_t db = sigma.dims()[1];
    const CMatrix ib = CMatrix::identity(db);
    CellScan scan;
    scan.joint_weights.assign(a_dec.blocks.size(),
                              std::vector<double>(c_dec.blocks.size(), 0.0));
    for (std::size_t i = 0; i < a_dec.blocks.size(); ++i) {
        const FactorBlock& ab = a_dec.blocks[i];
        for (std::size_t j = 0; j < c_dec.blocks.size(); ++j) {
            const FactorBlock& cb = c_dec.blocks[j];
            const CMatrix lift = kron(kron(ab.isometry, ib), cb.isometry);
            CMatrix comp = lift.adjoint() * sigma.matrix() * lift;
            const double w = comp.trace().real();
            if (w <= 1e-12) continue;
            comp *= 1.0 / w;
            scan.joint_weights[i][j] = w;
            scan.weight_sum += w;
            const std::vector<std::size_t> dims5{ab.dim_left, ab.dim_right, db, cb.dim_left,
                                                 cb.dim_right};
            TheoremOneCell cell;
            cell.a_index = i;
            cell.c_index = j;
            cell.weight = w;
            cell.pure_block = partial_trace(comp, dims5, {0, 2, 3});
            cell.residual_state = partial_trace(comp, dims5, {1, 4});
            const SpectralDecomposition eig = hermitian_eig(cell.pure_block, 1e-8);
            cell.purity = eig.eigenvalues.empty() ? 0.0 : eig.eigenvalues.back();
            scan.worst_purity = std::min(scan.worst_purity, cell.purity);
            scan.cells.push_back(std::move(cell));
        }
    }
    return scan;
}

// Replaces block `index` of `dec` by its refinement `sub`, composing
// isometries and absorbing the old right factor into the refined right
// factors.
void merge_refinement(FactorDecomposition& dec, std::size_t index,
                      const FactorDecomposition& sub) {
    const FactorBlock original = dec.blocks[index];
    std::vector<FactorBlock> refined;
    for (const FactorBlock& s : sub.blocks) {
        FactorBlock nb;
        nb.dim_left = s.dim_left;
        nb.dim_right = s.dim_right * original.dim_right;
        nb.isometry =
            original.isometry * kron(s.isometry, CMatrix::identity(original.dim_right));
        refined.push_back(std::move(nb));
    }
    dec.blocks.erase(dec.blocks.begin() + static_cast<std::ptrdiff_t>(index));
    dec.blocks.insert(dec.blocks.begin() + static_cast<std::ptrdiff_t>(index),
                      refined.begin(), refined.end());
}

bool is_trivial_refinement(const FactorDecomposition& sub, std::size_t original_dim_left) {
    return sub.blocks.size() == 1 && sub.blocks.front().dim_left == original_dim_left &&
           sub.blocks.front().dim_right == 1;
}

}  // namespace

TheoremOneStructure theorem1_decompose(const MultipartiteState& sigma,
                                       const StructureTolerances& tol) {
    require_tripartite(sigma, "theorem1_decompose");
    const GapReport gap = ssa_gap_v2(sigma, tol.entropy_tol);
    if (gap.gap_bits > tol.entropy_tol)
        throw NotSaturated("theorem1_decompose: SSA v2 gap above tolerance", gap.gap_bits);

    SideDecompositions sides = derive_side_decompositions(sigma, tol);

    constexpr int kMaxRefinementRounds = 3;
    const std::size_t db = sigma.dims()[1];
    CellScan scan;
    int rounds = 0;
    for (;; ++rounds) {
        scan = scan_cells(sigma, sides.a_dec, sides.c_dec);
        if (scan.worst_purity >= 1.0 - tol.matrix_tol) break;
        if (rounds >= kMaxRefinementRounds)
            throw RefinementExhausted("theorem1_decompose: block purity unreachable at tolerance",
                                      scan.worst_purity);

        // Refine the first impure cell's blocks by decomposing the cell's
        // left-marginal tripartite state, then re-intersect globally.
        bool refined = false;
        for (const TheoremOneCell& cell : scan.cells) {
            if (cell.purity >= 1.0 - tol.matrix_tol) continue;
            const FactorBlock& ab = sides.a_dec.blocks[cell.a_index];
            const FactorBlock& cb = sides.c_dec.blocks[cell.c_index];
            MultipartiteState cell_state = MultipartiteState::trusted(
                cell.pure_block, {ab.dim_left, db, cb.dim_left},
                {sigma.labels()[0], sigma.labels()[1], sigma.labels()[2]});
            SideDecompositions sub;
            try {
                sub = derive_side_decompositions(cell_state, tol);
            } catch (const Error&) {
                continue;  // this cell cannot be refined further
            }
            const bool a_trivial = is_trivial_refinement(sub.a_dec, ab.dim_left);
            const bool c_trivial = is_trivial_refinement(sub.c_dec, cb.dim_left);
            if (a_trivial && c_trivial) continue;
            if (!a_trivial) merge_refinement(sides.a_dec, cell.a_index, sub.a_dec);
            if (!c_trivial) merge_refinement(sides.c_dec, cell.c_index, sub.c_dec);
            refined = true;
            break;
        }
        if (!refined)
            throw RefinementExhausted("theorem1_decompose: no refinable block found",
                                      scan.worst_purity);
    }

    if (std::abs(scan.weight_sum - 1.0) > 1e-9)
        throw StructureVerificationFailed("theorem1_decompose: cell weights do not sum to one",
                                          std::abs(scan.weight_sum - 1.0));

    // Reassemble per the direct-sum form and verify.
    CMatrix rebuilt(sigma.dim(), sigma.dim());
    const CMatrix ib = CMatrix::identity(db);
    for (const TheoremOneCell& cell : scan.cells) {
        const FactorBlock& ab = sides.a_dec.blocks[cell.a_index];
        const FactorBlock& cb = sides.c_dec.blocks[cell.c_index];
        const std::vector<std::size_t> dims5{ab.dim_left, db, cb.dim_left, ab.dim_right,
                                             cb.dim_right};
        const CMatrix block = permute_tensor(kron(cell.pure_block, cell.residual_state), dims5,
                                             {0, 3, 1, 2, 4});  // -> (aL, aR, B, cL, cR)
        const CMatrix lift = kron(kron(ab.isometry, ib), cb.isometry);
        rebuilt += cell.weight * (lift * block * lift.adjoint());
    }
    const double err = trace_distance(sigma.matrix(), rebuilt);
    if (err > tol.matrix_tol)
        throw StructureVerificationFailed("theorem1_decompose: reassembly above matrix tolerance",
                                          err);

    TheoremOneStructure out;
    out.a_decomposition = std::move(sides.a_dec);
    out.c_decomposition = std::move(sides.c_dec);
    out.joint_weights = std::move(scan.joint_weights);
    out.cells = std::move(scan.cells);
    out.reassembly_error = err;
    out.refinement_rounds = rounds;
    return out;
}

ArakiLiebStructure araki_lieb_decompose(const MultipartiteState& omega,
                                        const StructureTolerances& tol) {
    if (omega.arity() != 2)
        throw InvalidInput("araki_lieb_decompose: expected a bipartite state");
    const GapReport gap = araki_lieb_gap(omega, tol.entropy_tol);
    if (gap.gap_bits > tol.entropy_tol)
        throw NotSaturated("araki_lieb_decompose: Araki–Lieb gap above tolerance", gap.gap_bits);

    const std::size_t dbb = omega.dims()[0], dcc = omega.dims()[1];
    const CMatrix omega_c = marginal_matrix(omega, {1});
    const SpectralDecomposition eig_c = hermitian_eig(omega_c);
    const double smax = eig_c.eigenvalues.empty() ? 0.0 : eig_c.eigenvalues.back();

    // Support eigenpairs of omega_C, largest first; the largest eigenvalue
    // anchors the partial inner products for conditioning.
    std::vector<std::size_t> support;
    for (std::size_t k = eig_c.eigenvalues.size(); k-- > 0;)
        if (eig_c.eigenvalues[k] > kSupportCutoff * smax) support.push_back(k);
    const std::size_t dim_right = support.size();
    if (dim_right == 0)
        throw InvalidInput("araki_lieb_decompose: empty support on C");

    // B_{i, anchor} = <c_i| omega |c_anchor> as operators on B.
    auto partial_inner = [&](std::size_t ki, std::size_t kj) {
        CMatrix out(dbb, dbb);
        for (std::size_t b = 0; b < dbb; ++b)
            for (std::size_t bp = 0; bp < dbb; ++bp) {
                Complex s{0.0, 0.0};
                for (std::size_t cc = 0; cc < dcc; ++cc)
                    for (std::size_t cp = 0; cp < dcc; ++cp)
                        s += std::conj(eig_c.basis(cc, ki)) *
                             omega.matrix()(b * dcc + cc, bp * dcc + cp) * eig_c.basis(cp, kj);
                out(b, bp) = s;
            }
        return out;
    };

    const double s_anchor = eig_c.eigenvalues[support[0]];
    const CMatrix n_anchor = (1.0 / s_anchor) * partial_inner(support[0], support[0]);
    const SpectralDecomposition eig_n = hermitian_eig(n_anchor, 1e-8);
    const double tmax = eig_n.eigenvalues.empty() ? 0.0 : eig_n.eigenvalues.back();

    std::vector<std::size_t> l_support;  // descending eigenvalue order
    for (std::size_t k = eig_n.eigenvalues.size(); k-- > 0;)
        if (eig_n.eigenvalues[k] > kSupportCutoff * tmax) l_support.push_back(k);
    const std::size_t dim_left = l_support.size();

    CMatrix omega_left(dim_left, dim_left);
    for (std::size_t k = 0; k < dim_left; ++k)
        omega_left(k, k) = eig_n.eigenvalues[l_support[k]];

    // W(|k>_L (x) |i>_R) = N_{i,anchor} u_k / t_k.
    CMatrix isometry(dbb, dim_left * dim_right);
    for (std::size_t i = 0; i < dim_right; ++i) {
        const CMatrix n_i =
            (1.0 / std::sqrt(eig_c.eigenvalues[support[i]] * s_anchor)) *
            partial_inner(support[i], support[0]);
        for (std::size_t k = 0; k < dim_left; ++k) {
            const double t = eig_n.eigenvalues[l_support[k]];
            for (std::size_t b = 0; b < dbb; ++b) {
                Complex s{0.0, 0.0};
                for (std::size_t bp = 0; bp < dbb; ++bp)
                    s += n_i(b, bp) * eig_n.basis(bp, l_support[k]);
                isometry(b, k * dim_right + i) = s / t;
            }
        }
    }
    {
        CMatrix gram = isometry.adjoint() * isometry;
        gram -= CMatrix::identity(dim_left * dim_right);
        if (gram.frobenius_norm() > 1e-6)
            throw StructureVerificationFailed(
                "araki_lieb_decompose: recovered flags are not orthonormal",
                gram.frobenius_norm());
    }

    // psi_RC = sum_i sqrt(s_i) |i>_R |c_i>_C.
    CMatrix psi(dim_right * dcc, 1);
    for (std::size_t i = 0; i < dim_right; ++i) {
        const double w = std::sqrt(eig_c.eigenvalues[support[i]]);
        for (std::size_t cc = 0; cc < dcc; ++cc)
            psi(i * dcc + cc, 0) = w * eig_c.basis(cc, support[i]);
    }
    const CMatrix psi_rc = psi * psi.adjoint();

    const CMatrix lift = kron(isometry, CMatrix::identity(dcc));
    const CMatrix rebuilt = lift * kron(omega_left, psi_rc) * lift.adjoint();
    const double err = trace_distance(omega.matrix(), rebuilt);
    if (err > tol.matrix_tol)
        throw StructureVerificationFailed(
            "araki_lieb_decompose: reassembly above matrix tolerance", err);

    ArakiLiebStructure out;
    out.dim_left = dim_left;
    out.dim_right = dim_right;
    out.isometry = std::move(isometry);
    out.omega_left = std::move(omega_left);
    out.psi_rc = psi_rc;
    out.reassembly_error = err;
    return out;
}

BiSsaReport bi_ssa_report(const MultipartiteState& rho, const StructureTolerances& tol) {
    require_tripartite(rho, "bi_ssa_report");
    const auto& l = rho.labels();
    const MultipartiteState permuted = permute_systems(rho, {l[1], l[0], l[2]});

    BiSsaReport out;
    out.gap_abc = ssa_gap_v1(rho, tol.entropy_tol);
    out.gap_bac = ssa_gap_v1(permuted, tol.entropy_tol);
    if (out.gap_abc.gap_bits > tol.entropy_tol)
        throw NotSaturated("bi_ssa_report: SSA gap above tolerance for the (A,B,C) triple",
                           out.gap_abc.gap_bits);
    if (out.gap_bac.gap_bits > tol.entropy_tol)
        throw NotSaturated("bi_ssa_report: SSA gap above tolerance for the (B,A,C) triple",
                           out.gap_bac.gap_bits);

    out.b_structure = markov_decompose(rho, tol);
    out.a_structure = markov_decompose(permuted, tol);

    // C-side factor of each block; blocks sharing a factor form one sector.
    const std::size_t dc = rho.dims()[2];
    auto c_factor = [&](const MarkovStructure& m, std::size_t j) {
        const FactorBlock& blk = m.b_decomposition.blocks[j];
        return partial_trace(m.right_states[j], {blk.dim_right, dc}, {1});
    };
    auto assign_sector = [&](const CMatrix& c, bool allow_new) -> int {
        for (std::size_t k = 0; k < out.sector_c_states.size(); ++k)
            if (trace_distance(c, out.sector_c_states[k]) <= tol.matrix_tol)
                return static_cast<int>(k);
        if (!allow_new) return -1;
        out.sector_c_states.push_back(c);
        return static_cast<int>(out.sector_c_states.size() - 1);
    };
    for (std::size_t j = 0; j < out.b_structure.weights.size(); ++j)
        out.sector_of_b_block.push_back(assign_sector(c_factor(out.b_structure, j), true));
    for (std::size_t i = 0; i < out.a_structure.weights.size(); ++i) {
        const int k = assign_sector(c_factor(out.a_structure, i), false);
        if (k < 0)
            throw StructureVerificationFailed(
                "bi_ssa_report: A-side C factor matches no B-side sector", 1.0);
        out.sector_of_a_block.push_back(k);
    }

    out.sector_weights.assign(out.sector_c_states.size(), 0.0);
    const CMatrix ic = CMatrix::identity(dc);
    for (std::size_t i = 0; i < out.a_structure.weights.size(); ++i) {
        const FactorBlock& abk = out.a_structure.b_decomposition.blocks[i];
        const CMatrix proj_a = abk.isometry * abk.isometry.adjoint();
        for (std::size_t j = 0; j < out.b_structure.weights.size(); ++j) {
            const FactorBlock& bbk = out.b_structure.b_decomposition.blocks[j];
            const CMatrix proj_b = bbk.isometry * bbk.isometry.adjoint();
            const CMatrix op = kron(kron(proj_a, proj_b), ic);
            const double w = hs_inner(op, rho.matrix()).real();
            if (w <= 1e-9) continue;
            if (out.sector_of_a_block[i] != out.sector_of_b_block[j])
                throw StructureVerificationFailed(
                    "bi_ssa_report: sector map inconsistent on a positive cell", w);
            out.cells.push_back({i, j, out.sector_of_b_block[j], w});
            out.sector_weights[static_cast<std::size_t>(out.sector_of_b_block[j])] += w;
        }
    }
    return out;
}

ChannelSaturationReport channel_saturation_analyze(const KrausChannel& phi, const CMatrix& rho,
                                                   double tol) {
    ChannelSaturationReport out;
    out.gram = complementary(phi, rho);
    const std::size_t n = phi.n_kraus();

    const SpectralDecomposition eig = hermitian_eig(out.gram);
    std::vector<double> sv;
    for (double lam : eig.eigenvalues) sv.push_back(std::abs(lam));
    std::sort(sv.begin(), sv.end(), std::greater<double>());
    out.gram_first_singular = sv.empty() ? 0.0 : sv[0];
    out.gram_second_singular = sv.size() > 1 ? sv[1] : 0.0;
    out.rank_one = out.gram_second_singular <= tol * std::max(out.gram_first_singular, 1e-300);

    // Principal vector, gauged so the first entry of largest modulus is
    // real nonnegative and the weights sum to one.
    out.lambda.resize(n);
    double norm = 0.0;
    for (std::size_t mu = 0; mu < n; ++mu) {
        out.lambda[mu] = eig.basis(mu, n - 1);
        norm += std::norm(out.lambda[mu]);
    }
    norm = std::sqrt(norm);
    std::size_t arg = 0;
    for (std::size_t mu = 1; mu < n; ++mu)
        if (std::abs(out.lambda[mu]) > std::abs(out.lambda[arg])) arg = mu;
    Complex phase = out.lambda[arg];
    phase /= std::abs(phase);
    for (Complex& z : out.lambda) z *= std::conj(phase) / norm;

    out.m_operator = CMatrix(phi.dim_in(), phi.dim_out());
    for (std::size_t mu = 0; mu < n; ++mu)
        out.m_operator += out.lambda[mu] * phi.kraus()[mu].adjoint();

    const CMatrix output = apply(phi, rho);
    out.reconstruction_error =
        trace_norm_hermitian(rho - out.m_operator * output * out.m_operator.adjoint());

    // Product identity after merging the doubled (B,C) index of omega.
    const std::size_t d = phi.dim_out();
    CMatrix merged(d * n, d * n);
    for (std::size_t mu = 0; mu < n; ++mu) {
        const CMatrix block = phi.kraus()[mu] * rho;
        for (std::size_t nu = 0; nu < n; ++nu) {
            const CMatrix a_mu_nu = block * phi.kraus()[nu].adjoint();
            for (std::size_t a = 0; a < d; ++a)
                for (std::size_t b = 0; b < d; ++b)
                    merged(a * n + mu, b * n + nu) = a_mu_nu(a, b);
        }
    }
    out.product_identity_error = trace_norm_hermitian(merged - kron(output, out.gram));
    return out;
}

HolevoSaturationReport holevo_saturation_analyze(const KrausChannel& phi, const CMatrix& rho,
                                                 const StructureTolerances& tol) {
    HolevoSaturationReport out;
    out.exchange = exchange_bound_report(phi, rho, tol.entropy_tol);
    if (out.exchange.gap_bits > tol.entropy_tol)
        throw NotSaturated("holevo_saturation_analyze: exchange-entropy bound not saturated",
                           out.exchange.gap_bits);

    const OmegaState omega = omega_state(phi, rho);
    out.omega_structure = theorem1_decompose(omega.state, tol);

    // Marginalize each cell into the induced block form of Phi(rho).
    const std::size_t db = omega.state.dims()[1];
    CMatrix rebuilt(phi.dim_out(), phi.dim_out());
    for (const TheoremOneCell& cell : out.omega_structure.cells) {
        const FactorBlock& ab = out.omega_structure.a_decomposition.blocks[cell.a_index];
        const FactorBlock& cb = out.omega_structure.c_decomposition.blocks[cell.c_index];
        HolevoSaturationReport::OutputBlock blk;
        blk.a_index = cell.a_index;
        blk.c_index = cell.c_index;
        blk.weight = cell.weight;
        blk.left_factor =
            partial_trace(cell.pure_block, {ab.dim_left, db, cb.dim_left}, {0});
        blk.right_factor =
            partial_trace(cell.residual_state, {ab.dim_right, cb.dim_right}, {0});
        rebuilt += cell.weight *
                   (ab.isometry * kron(blk.left_factor, blk.right_factor) * ab.isometry.adjoint());
        out.output_blocks.push_back(std::move(blk));
    }
    out.output_reassembly_error = trace_distance(apply(phi, rho), rebuilt);
    if (out.output_reassembly_error > tol.matrix_tol)
        throw StructureVerificationFailed(
            "holevo_saturation_analyze: output reassembly above matrix tolerance",
            out.output_reassembly_error);
    return out;
}

CoherentSaturationReport coherent_saturation_check(
    const KrausChannel& phi, const CMatrix& rho,
    const std::optional<ProposedFactorization>& proposed, const StructureTolerances& tol) {
    CoherentSaturationReport out;
    const CoherentInformation ci = coherent_information(phi, rho, tol.entropy_tol);
    out.coherent_info_bits = ci.value_bits;
    out.input_entropy_bits = ci.input_entropy_bits;
    out.saturation_residual = std::abs(ci.value_bits - ci.input_entropy_bits);
    out.saturated = ci.saturated;

    if (proposed) {
        const std::size_t lr = proposed->dim_left * proposed->dim_right;
        if (lr != phi.dim_out() || proposed->isometry.rows() != phi.dim_out() ||
            proposed->isometry.cols() != lr)
            throw InvalidInput(
                "coherent_saturation_check: factorization must map H_L (x) H_R onto the output");
        CMatrix gram = proposed->isometry.adjoint() * proposed->isometry;
        gram -= CMatrix::identity(lr);
        if (gram.frobenius_norm() > 1e-9)
            throw InvalidInput("coherent_saturation_check: proposed map is not an isometry");

        const CMatrix rotated =
            proposed->isometry.adjoint() * apply(phi, rho) * proposed->isometry;
        const std::vector<std::size_t> dims{proposed->dim_left, proposed->dim_right};
        const CMatrix left = partial_trace(rotated, dims, {0});
        const CMatrix right = partial_trace(rotated, dims, {1});
        out.product_error = trace_distance(rotated, kron(left, right));
        out.factorization_checked = true;
        out.product_form = out.product_error <= tol.matrix_tol;
    }
    return out;
}

}  // namespace ssakit
