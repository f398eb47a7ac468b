// algebra.cpp — *-algebra closure and Wedderburn block recovery

#include "ssakit/algebra.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "ssakit/errors.hpp"
#include "ssakit/generate.hpp"
#include "ssakit/linalg.hpp"

namespace ssakit {

namespace {

constexpr double kDropTol = 1e-10;
constexpr std::uint64_t kAlgebraSeed = 0x57656464ULL;  // internal draws, fixed for determinism
constexpr int kMaxAttempts = 6;

// Orthonormal basis (as matrices) of the span of the candidates, extracted
// through an SVD of the stacked vectorizations. A global extraction avoids
// the greedy Gram–Schmidt failure mode of normalizing a noise-dominated
// residual of a nearly dependent candidate.
std::vector<CMatrix> svd_span(const std::vector<CMatrix>& candidates, std::size_t dim) {
    if (candidates.empty()) return {};
    CMatrix stacked(candidates.size(), dim * dim);
    for (std::size_t w = 0; w < candidates.size(); ++w)
        for (std::size_t i = 0; i < dim; ++i)
            for (std::size_t j = 0; j < dim; ++j)
                stacked(w, i * dim + j) = candidates[w](i, j);
    const Svd dec = svd(stacked);
    const double top = dec.singular_values.empty() ? 0.0 : dec.singular_values.front();
    std::vector<CMatrix> basis;
    for (std::size_t k = 0; k < dec.singular_values.size(); ++k) {
        if (dec.singular_values[k] <= std::max(kDropTol, 1e-8 * top)) break;
        CMatrix b(dim, dim);
        for (std::size_t i = 0; i < dim; ++i)
            for (std::size_t j = 0; j < dim; ++j)
                b(i, j) = std::conj(dec.right(i * dim + j, k));
        basis.push_back(std::move(b));
    }
    return basis;
}

}  // namespace

OperatorAlgebra algebra_closure(const std::vector<CMatrix>& generators,
                                std::size_t ambient_dim) {
    if (ambient_dim == 0) throw InvalidInput("algebra_closure: ambient_dim must be positive");
    for (const CMatrix& g : generators) {
        if (g.rows() != ambient_dim || g.cols() != ambient_dim)
            throw InvalidInput("algebra_closure: generator shape mismatch");
        if (!g.all_finite()) throw InvalidInput("algebra_closure: non-finite generator");
    }
    const std::size_t max_dim = ambient_dim * ambient_dim;

    std::vector<CMatrix> seeds = generators;
    for (const CMatrix& g : generators) seeds.push_back(g.adjoint());
    std::vector<CMatrix> basis = svd_span(seeds, ambient_dim);

    for (std::size_t round = 0; round <= max_dim + 1; ++round) {
        std::vector<CMatrix> candidates = basis;
        for (const CMatrix& b : basis) candidates.push_back(b.adjoint());
        for (const CMatrix& x : basis)
            for (const CMatrix& y : basis) candidates.push_back(x * y);
        std::vector<CMatrix> grown = svd_span(candidates, ambient_dim);
        if (grown.size() > max_dim)
            throw InternalError("algebra_closure: basis exceeded ambient_dim^2");
        const bool stable = grown.size() == basis.size();
        basis = std::move(grown);
        if (stable) {
            OperatorAlgebra alg;
            alg.ambient_dim = ambient_dim;
            alg.basis = std::move(basis);
            return alg;
        }
    }
    throw InternalError("algebra_closure: closure did not stabilize");
}

namespace {

struct Cluster {
    std::size_t begin;  // eigenvector column range in the sampled element's basis
    std::size_t end;
};

// Columns [begin, end) of `basis` as an isometry.
CMatrix column_slice(const CMatrix& basis, std::size_t begin, std::size_t end) {
    CMatrix v(basis.rows(), end - begin);
    for (std::size_t j = begin; j < end; ++j)
        for (std::size_t i = 0; i < basis.rows(); ++i) v(i, j - begin) = basis(i, j);
    return v;
}

struct BlockCandidate {
    std::size_t dim_left;
    std::size_t dim_right;
    CMatrix isometry;  // support-compressed coordinates
};

// One attempt at recovering the block structure of the compressed algebra.
// Returns false when the random draw was degenerate (caller retries).
bool try_extract_blocks(const std::vector<CMatrix>& compressed, std::size_t m, Rng rng,
                        std::vector<BlockCandidate>& out) {
    out.clear();

    // Random Hermitian element of the algebra: distinct eigenvalues label the
    // H_L levels, multiplicities equal dim_R within each factor.
    CMatrix h(m, m);
    for (const CMatrix& c : compressed) {
        const double xi = rng.gaussian();
        h += xi * hermitize(c);
    }
    const SpectralDecomposition eig = hermitian_eig(h, 1e-6);

    const double spread =
        eig.eigenvalues.empty() ? 0.0 : eig.eigenvalues.back() - eig.eigenvalues.front();
    const double gap_tol = std::max(1e-8, 1e-6 * spread);
    std::vector<Cluster> clusters;
    std::size_t begin = 0;
    for (std::size_t k = 1; k <= m; ++k) {
        if (k == m || eig.eigenvalues[k] - eig.eigenvalues[k - 1] > gap_tol) {
            clusters.push_back({begin, k});
            begin = k;
        }
    }

    std::vector<CMatrix> cluster_iso;
    cluster_iso.reserve(clusters.size());
    for (const Cluster& c : clusters) cluster_iso.push_back(column_slice(eig.basis, c.begin, c.end));

    // Clusters in the same factor are connected by some algebra element;
    // clusters in different central components are not.
    const std::size_t nc = clusters.size();
    std::vector<std::size_t> parent(nc);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (std::size_t a = 0; a < nc; ++a)
        for (std::size_t b = a + 1; b < nc; ++b) {
            double weight = 0.0;
            for (const CMatrix& c : compressed) {
                const CMatrix cross = cluster_iso[a].adjoint() * (c * cluster_iso[b]);
                weight += cross.frobenius_norm() * cross.frobenius_norm();
            }
            if (weight > 1e-9) parent[find(a)] = find(b);
        }

    std::vector<std::vector<std::size_t>> components(nc);
    for (std::size_t a = 0; a < nc; ++a) components[find(a)].push_back(a);

    // Random (generally non-Hermitian) element used to align the level bases.
    CMatrix b_rand(m, m);
    for (const CMatrix& c : compressed) b_rand += Complex{rng.gaussian(), rng.gaussian()} * c;

    for (const auto& comp : components) {
        if (comp.empty()) continue;
        const std::size_t dim_right = clusters[comp.front()].end - clusters[comp.front()].begin;
        for (std::size_t idx : comp)
            if (clusters[idx].end - clusters[idx].begin != dim_right) return false;
        const std::size_t dim_left = comp.size();

        const CMatrix& w0 = cluster_iso[comp.front()];
        CMatrix iso(m, dim_left * dim_right);
        for (std::size_t l = 0; l < dim_left; ++l) {
            CMatrix wl = w0;
            if (l > 0) {
                const CMatrix& ql = cluster_iso[comp[l]];
                const CMatrix t = ql * (ql.adjoint() * (b_rand * w0));
                double scale = 0.0;
                for (std::size_t i = 0; i < m; ++i) scale += std::norm(t(i, 0));
                scale = std::sqrt(scale);
                if (scale < 1e-8) return false;  // draw failed to connect the levels
                wl = (1.0 / scale) * t;
                CMatrix gram = wl.adjoint() * wl;
                gram -= CMatrix::identity(dim_right);
                if (gram.frobenius_norm() > 1e-6) return false;
            }
            for (std::size_t r = 0; r < dim_right; ++r)
                for (std::size_t i = 0; i < m; ++i) iso(i, l * dim_right + r) = wl(i, r);
        }
        out.push_back({dim_left, dim_right, std::move(iso)});
    }
    return true;
}

// Largest residual of reconstructing the basis through the block structure.
double block_structure_residual(const std::vector<CMatrix>& compressed,
                                const std::vector<BlockCandidate>& blocks) {
    double worst = 0.0;
    for (const CMatrix& c : compressed) {
        CMatrix rec(c.rows(), c.cols());
        for (const BlockCandidate& b : blocks) {
            const CMatrix x = b.isometry.adjoint() * (c * b.isometry);
            CMatrix mid = partial_trace(x, {b.dim_left, b.dim_right}, {0});
            mid *= 1.0 / static_cast<double>(b.dim_right);
            rec += b.isometry * kron(mid, CMatrix::identity(b.dim_right)) * b.isometry.adjoint();
        }
        worst = std::max(worst, frobenius_distance(c, rec));
    }
    return worst;
}

}  // namespace

FactorDecomposition wedderburn_blocks(const OperatorAlgebra& alg) {
    if (alg.basis.empty()) throw InvalidInput("wedderburn_blocks: empty algebra");
    for (const CMatrix& b : alg.basis)
        if (b.rows() != alg.ambient_dim || b.cols() != alg.ambient_dim)
            throw InvalidInput("wedderburn_blocks: basis shape mismatch");

    // Support of the algebra.
    CMatrix s(alg.ambient_dim, alg.ambient_dim);
    for (const CMatrix& b : alg.basis) {
        s += b * b.adjoint();
        s += b.adjoint() * b;
    }
    const CMatrix v_supp = support_isometry(s);
    const std::size_t m = v_supp.cols();

    // The support projector must belong to the algebra (it is the unit).
    {
        const CMatrix p = v_supp * v_supp.adjoint();
        CMatrix resid = p;
        for (const CMatrix& b : alg.basis) resid -= hs_inner(b, p) * b;
        const double rel = resid.frobenius_norm() / std::max(1.0, p.frobenius_norm());
        if (rel > 1e-8)
            throw StructureVerificationFailed(
                "wedderburn_blocks: support projector not in the algebra span", rel);
    }

    std::vector<CMatrix> compressed;
    compressed.reserve(alg.basis.size());
    for (const CMatrix& b : alg.basis) compressed.push_back(v_supp.adjoint() * (b * v_supp));

    const Rng root(kAlgebraSeed);
    double best_residual = -1.0;
    for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
        std::vector<BlockCandidate> blocks;
        if (!try_extract_blocks(compressed, m, root.split(attempt), blocks)) continue;

        std::size_t dim_check = 0;
        for (const BlockCandidate& b : blocks) dim_check += b.dim_left * b.dim_left;
        if (dim_check != alg.basis.size()) {
            best_residual = std::max(best_residual, 1.0);
            continue;
        }
        const double residual = block_structure_residual(compressed, blocks);
        best_residual = std::max(best_residual, residual);
        if (residual > 1e-8) continue;

        FactorDecomposition dec;
        for (BlockCandidate& b : blocks)
            dec.blocks.push_back(
                {b.dim_left, b.dim_right, v_supp * b.isometry});
        std::stable_sort(dec.blocks.begin(), dec.blocks.end(),
                         [](const FactorBlock& x, const FactorBlock& y) {
                             const std::size_t sx = x.dim_left * x.dim_right;
                             const std::size_t sy = y.dim_left * y.dim_right;
                             if (sx != sy) return sx > sy;
                             return x.dim_left > y.dim_left;
                         });
        return dec;
    }
    throw StructureVerificationFailed(
        "wedderburn_blocks: block structure not recovered at tolerance "
        "(input is likely not an exact algebra)",
        best_residual);
}

}  // namespace ssakit
