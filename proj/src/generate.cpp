// generate.cpp — Deterministic generators for states, channels, and the
// planted saturating families

#include "ssakit/generate.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "ssakit/errors.hpp"
#include "ssakit/linalg.hpp"

namespace ssakit {

namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

constexpr double kTwoPi = 6.283185307179586476925286766559;

}  // namespace

std::uint64_t Rng::next_u64() {
    state_ += kGolden;
    return mix64(state_);
}

double Rng::uniform() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double Rng::gaussian() {
    // Box–Muller, cosine branch only; two uniforms per value keeps the draw
    // order independent of call-site pairing.
    const double u1 = 1.0 - uniform();  // (0, 1]
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(kTwoPi * u2);
}

Complex Rng::cgaussian() {
    const double re = gaussian();
    const double im = gaussian();
    return Complex{re, im} * (1.0 / std::sqrt(2.0));
}

Rng Rng::split(std::uint64_t stream) const {
    return Rng(mix64(state_ ^ ((stream + 1) * kGolden)));
}

namespace {

CMatrix ginibre(std::size_t rows, std::size_t cols, Rng& rng) {
    CMatrix g(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) g(i, j) = rng.cgaussian();
    return g;
}

// Modified Gram–Schmidt on columns, two passes.
void orthonormalize_columns(CMatrix& m) {
    const std::size_t rows = m.rows(), cols = m.cols();
    for (std::size_t j = 0; j < cols; ++j) {
        for (int pass = 0; pass < 2; ++pass) {
            for (std::size_t k = 0; k < j; ++k) {
                Complex overlap{0.0, 0.0};
                for (std::size_t i = 0; i < rows; ++i) overlap += std::conj(m(i, k)) * m(i, j);
                for (std::size_t i = 0; i < rows; ++i) m(i, j) -= overlap * m(i, k);
            }
        }
        double norm = 0.0;
        for (std::size_t i = 0; i < rows; ++i) norm += std::norm(m(i, j));
        norm = std::sqrt(norm);
        if (norm < 1e-12) throw InternalError("orthonormalize_columns: rank-deficient draw");
        for (std::size_t i = 0; i < rows; ++i) m(i, j) *= 1.0 / norm;
    }
}

}  // namespace

CMatrix random_density(std::size_t d, std::size_t rank, Rng& rng) {
    if (rank == 0 || rank > d)
        throw InvalidInput("random_density: rank must be in [1, d]");
    const CMatrix g = ginibre(d, rank, rng);
    CMatrix rho = g * g.adjoint();
    rho *= 1.0 / rho.trace().real();
    return rho;
}

CMatrix random_density(std::size_t d, std::size_t rank, std::uint64_t seed) {
    Rng rng(seed);
    return random_density(d, rank, rng);
}

CMatrix random_unitary(std::size_t d, Rng& rng) {
    CMatrix g = ginibre(d, d, rng);
    orthonormalize_columns(g);
    return g;
}

CMatrix random_unitary(std::size_t d, std::uint64_t seed) {
    Rng rng(seed);
    return random_unitary(d, rng);
}

CMatrix random_pure_vector(std::size_t d, Rng& rng) {
    CMatrix v = ginibre(d, 1, rng);
    double norm = 0.0;
    for (std::size_t i = 0; i < d; ++i) norm += std::norm(v(i, 0));
    norm = std::sqrt(norm);
    if (norm < 1e-12) throw InternalError("random_pure_vector: null draw");
    v *= 1.0 / norm;
    return v;
}

KrausChannel random_channel(std::size_t d_in, std::size_t d_out, std::size_t n_kraus,
                            std::uint64_t seed) {
    if (n_kraus == 0 || d_in == 0 || d_out == 0)
        throw InvalidInput("random_channel: dimensions must be positive");
    if (n_kraus * d_out < d_in)
        throw InvalidInput("random_channel: need n_kraus * d_out >= d_in");
    Rng rng(seed);
    CMatrix v = ginibre(n_kraus * d_out, d_in, rng);
    orthonormalize_columns(v);  // isometry V with V†V = I
    std::vector<CMatrix> kraus;
    kraus.reserve(n_kraus);
    for (std::size_t mu = 0; mu < n_kraus; ++mu) {
        CMatrix k(d_out, d_in);
        for (std::size_t i = 0; i < d_out; ++i)
            for (std::size_t j = 0; j < d_in; ++j) k(i, j) = v(mu * d_out + i, j);
        kraus.push_back(std::move(k));
    }
    return KrausChannel(std::move(kraus));
}

MultipartiteState random_tripartite(const std::vector<std::size_t>& dims, std::size_t rank,
                                    std::uint64_t seed) {
    if (dims.size() != 3) throw InvalidInput("random_tripartite: needs exactly three dims");
    std::size_t total = 1;
    for (std::size_t d : dims) total *= d;
    Rng rng(seed);
    return MultipartiteState::trusted(random_density(total, rank, rng), dims, {"A", "B", "C"});
}

namespace {

void check_weights(const std::vector<double>& w, const char* who) {
    double sum = 0.0;
    for (double x : w) {
        if (x <= 0.0) throw InvalidInput(std::string(who) + ": weights must be positive");
        sum += x;
    }
    if (std::abs(sum - 1.0) > 1e-12)
        throw InvalidInput(std::string(who) + ": weights must sum to one");
}

}  // namespace

PlantedMarkov planted_markov(const std::vector<BlockShape>& blocks, std::size_t dim_a,
                             std::size_t dim_c, std::uint64_t seed) {
    if (blocks.empty()) throw InvalidInput("planted_markov: needs at least one block");
    if (dim_a == 0 || dim_c == 0) throw InvalidInput("planted_markov: side dims must be positive");
    std::vector<double> weights;
    std::size_t dim_b = 0;
    for (const BlockShape& b : blocks) {
        if (b.dim_left == 0 || b.dim_right == 0)
            throw InvalidInput("planted_markov: block dims must be positive");
        weights.push_back(b.weight);
        dim_b += b.dim_left * b.dim_right;
    }
    check_weights(weights, "planted_markov");

    Rng rng(seed);
    const std::size_t total = dim_a * dim_b * dim_c;
    CMatrix m(total, total);
    std::size_t offset = 0;  // B-space offset of the current block
    for (std::size_t j = 0; j < blocks.size(); ++j) {
        const std::size_t dl = blocks[j].dim_left, dr = blocks[j].dim_right;
        Rng block_rng = rng.split(j);
        Rng left_rng = block_rng.split(0);
        Rng right_rng = block_rng.split(1);
        const CMatrix left = random_density(dim_a * dl, dim_a * dl, left_rng);
        const CMatrix right = random_density(dr * dim_c, dr * dim_c, right_rng);
        const CMatrix block = kron(left, right);  // order (A, L, R, C)
        const std::size_t bd = dim_a * dl * dr * dim_c;
        for (std::size_t r = 0; r < bd; ++r) {
            const std::size_t ra = r / (dl * dr * dim_c);
            const std::size_t rl = (r / (dr * dim_c)) % dl;
            const std::size_t rr = (r / dim_c) % dr;
            const std::size_t rc = r % dim_c;
            const std::size_t row =
                ra * dim_b * dim_c + (offset + rl * dr + rr) * dim_c + rc;
            for (std::size_t c = 0; c < bd; ++c) {
                const std::size_t ca = c / (dl * dr * dim_c);
                const std::size_t cl = (c / (dr * dim_c)) % dl;
                const std::size_t cr = (c / dim_c) % dr;
                const std::size_t cc = c % dim_c;
                const std::size_t col =
                    ca * dim_b * dim_c + (offset + cl * dr + cr) * dim_c + cc;
                m(row, col) += blocks[j].weight * block(r, c);
            }
        }
        offset += dl * dr;
    }

    PlantedMarkov out;
    out.state = MultipartiteState::trusted(std::move(m), {dim_a, dim_b, dim_c}, {"A", "B", "C"});
    out.blocks = blocks;
    out.dim_a = dim_a;
    out.dim_c = dim_c;
    return out;
}

PlantedTheorem1 planted_theorem1(const Theorem1Spec& spec, std::uint64_t seed) {
    if (spec.a_blocks.empty() || spec.c_blocks.empty())
        throw InvalidInput("planted_theorem1: needs at least one block per side");
    if (spec.dim_b == 0) throw InvalidInput("planted_theorem1: dim_b must be positive");
    if (spec.mu.size() != spec.a_blocks.size())
        throw InvalidInput("planted_theorem1: mu row count mismatch");
    double mu_sum = 0.0;
    for (const auto& row : spec.mu) {
        if (row.size() != spec.c_blocks.size())
            throw InvalidInput("planted_theorem1: mu column count mismatch");
        for (double w : row) {
            if (w < 0.0) throw InvalidInput("planted_theorem1: negative cell weight");
            mu_sum += w;
        }
    }
    if (std::abs(mu_sum - 1.0) > 1e-12)
        throw InvalidInput("planted_theorem1: mu must sum to one");

    std::size_t dim_a = 0, dim_c = 0;
    std::vector<std::size_t> a_offset, c_offset;
    for (const auto& [dl, dr] : spec.a_blocks) {
        if (dl == 0 || dr == 0) throw InvalidInput("planted_theorem1: zero block dim");
        a_offset.push_back(dim_a);
        dim_a += dl * dr;
    }
    for (const auto& [dl, dr] : spec.c_blocks) {
        if (dl == 0 || dr == 0) throw InvalidInput("planted_theorem1: zero block dim");
        c_offset.push_back(dim_c);
        dim_c += dl * dr;
    }

    // Connected components of the support of mu (a-nodes then c-nodes).
    // Saturation requires every cell of a component to share one pure state
    // up to local gauges, so the left dims must agree within a component.
    const std::size_t ka = spec.a_blocks.size(), kc = spec.c_blocks.size();
    std::vector<std::size_t> parent(ka + kc);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (std::size_t i = 0; i < ka; ++i)
        for (std::size_t j = 0; j < kc; ++j)
            if (spec.mu[i][j] > 0.0) parent[find(i)] = find(ka + j);
    for (std::size_t i = 0; i < ka; ++i)
        for (std::size_t i2 = i + 1; i2 < ka; ++i2)
            if (find(i) == find(i2) && spec.a_blocks[i].first != spec.a_blocks[i2].first)
                throw InvalidInput(
                    "planted_theorem1: a-blocks sharing a support component need equal dim_left");
    for (std::size_t j = 0; j < kc; ++j)
        for (std::size_t j2 = j + 1; j2 < kc; ++j2)
            if (find(ka + j) == find(ka + j2) &&
                spec.c_blocks[j].first != spec.c_blocks[j2].first)
                throw InvalidInput(
                    "planted_theorem1: c-blocks sharing a support component need equal dim_left");
    for (std::size_t i = 0; i < ka; ++i) {
        bool used = false;
        for (std::size_t j = 0; j < kc; ++j) used |= spec.mu[i][j] > 0.0;
        if (!used) throw InvalidInput("planted_theorem1: a-block without any positive cell");
    }
    for (std::size_t j = 0; j < kc; ++j) {
        bool used = false;
        for (std::size_t i = 0; i < ka; ++i) used |= spec.mu[i][j] > 0.0;
        if (!used) throw InvalidInput("planted_theorem1: c-block without any positive cell");
    }

    Rng rng(seed);
    // One base pure state per component; per-block unitaries hide it.
    std::vector<CMatrix> a_gauge, c_gauge;
    for (std::size_t i = 0; i < ka; ++i) {
        Rng r = rng.split(10000 + i);
        a_gauge.push_back(random_unitary(spec.a_blocks[i].first, r));
    }
    for (std::size_t j = 0; j < kc; ++j) {
        Rng r = rng.split(20000 + j);
        c_gauge.push_back(random_unitary(spec.c_blocks[j].first, r));
    }
    std::vector<CMatrix> base_psi(ka + kc);  // indexed by component root
    const std::size_t dim_b = spec.dim_b;
    for (std::size_t i = 0; i < ka; ++i)
        for (std::size_t j = 0; j < kc; ++j) {
            if (spec.mu[i][j] <= 0.0) continue;
            const std::size_t root = find(i);
            if (base_psi[root].rows() == 0) {
                Rng r = rng.split(30000 + root);
                base_psi[root] =
                    random_pure_vector(spec.a_blocks[i].first * dim_b * spec.c_blocks[j].first, r);
            }
        }

    const std::size_t total = dim_a * dim_b * dim_c;
    CMatrix m(total, total);
    for (std::size_t i = 0; i < spec.a_blocks.size(); ++i) {
        const auto [al, ar] = spec.a_blocks[i];
        for (std::size_t j = 0; j < spec.c_blocks.size(); ++j) {
            const auto [cl, cr] = spec.c_blocks[j];
            const double w = spec.mu[i][j];
            if (w <= 0.0) continue;
            Rng cell_rng = rng.split(i * spec.c_blocks.size() + j);
            const CMatrix gauge = kron(kron(a_gauge[i], CMatrix::identity(dim_b)), c_gauge[j]);
            const CMatrix psi = gauge * base_psi[find(i)];
            const CMatrix pure = psi * psi.adjoint();  // on (aL, B, cL)
            const CMatrix res = random_density(ar * cr, ar * cr, cell_rng);  // on (aR, cR)
            const CMatrix block = kron(pure, res);  // order (aL, B, cL, aR, cR)
            const std::size_t bd = al * dim_b * cl * ar * cr;
            for (std::size_t r = 0; r < bd; ++r) {
                const std::size_t r_al = r / (dim_b * cl * ar * cr);
                const std::size_t r_b = (r / (cl * ar * cr)) % dim_b;
                const std::size_t r_cl = (r / (ar * cr)) % cl;
                const std::size_t r_ar = (r / cr) % ar;
                const std::size_t r_cr = r % cr;
                const std::size_t row = (a_offset[i] + r_al * ar + r_ar) * dim_b * dim_c +
                                        r_b * dim_c + (c_offset[j] + r_cl * cr + r_cr);
                for (std::size_t c = 0; c < bd; ++c) {
                    const std::size_t c_al = c / (dim_b * cl * ar * cr);
                    const std::size_t c_b = (c / (cl * ar * cr)) % dim_b;
                    const std::size_t c_cl = (c / (ar * cr)) % cl;
                    const std::size_t c_ar = (c / cr) % ar;
                    const std::size_t c_cr = c % cr;
                    const std::size_t col = (a_offset[i] + c_al * ar + c_ar) * dim_b * dim_c +
                                            c_b * dim_c + (c_offset[j] + c_cl * cr + c_cr);
                    m(row, col) += w * block(r, c);
                }
            }
        }
    }

    PlantedTheorem1 out;
    out.state = MultipartiteState::trusted(std::move(m), {dim_a, dim_b, dim_c}, {"A", "B", "C"});
    out.spec = spec;
    // Canonical block data per support component.
    std::vector<std::size_t> roots;
    for (std::size_t i = 0; i < ka; ++i)
        if (std::find(roots.begin(), roots.end(), find(i)) == roots.end())
            roots.push_back(find(i));
    for (std::size_t root : roots) {
        std::size_t a_left = 0, a_right = 0, c_left = 0, c_right = 0;
        double weight = 0.0;
        for (std::size_t i = 0; i < ka; ++i) {
            if (find(i) != root) continue;
            a_left = spec.a_blocks[i].first;
            a_right += spec.a_blocks[i].second;
            for (std::size_t j = 0; j < kc; ++j) weight += spec.mu[i][j];
        }
        for (std::size_t j = 0; j < kc; ++j) {
            if (find(ka + j) != root) continue;
            c_left = spec.c_blocks[j].first;
            c_right += spec.c_blocks[j].second;
        }
        out.canonical_a_blocks.emplace_back(a_left, a_right);
        out.canonical_c_blocks.emplace_back(c_left, c_right);
        out.canonical_weights.push_back(weight);
    }
    return out;
}

PlantedArakiLieb planted_araki_lieb(std::size_t dim_left, std::size_t dim_right,
                                    std::size_t dim_c, std::uint64_t seed) {
    if (dim_left == 0 || dim_right == 0 || dim_c == 0)
        throw InvalidInput("planted_araki_lieb: dims must be positive");
    Rng rng(seed);
    Rng left_rng = rng.split(0);
    Rng pure_rng = rng.split(1);
    const CMatrix omega_l = random_density(dim_left, dim_left, left_rng);
    const CMatrix psi = random_pure_vector(dim_right * dim_c, pure_rng);
    const CMatrix pure = psi * psi.adjoint();
    CMatrix m = kron(omega_l, pure);  // order (L, R, C); B = (L, R)

    PlantedArakiLieb out;
    out.state = MultipartiteState::trusted(std::move(m), {dim_left * dim_right, dim_c},
                                           {"B", "C"});
    out.dim_left = dim_left;
    out.dim_right = dim_right;
    out.dim_c = dim_c;
    return out;
}

PlantedBiSsa planted_bi_ssa(const BiSsaSpec& spec, std::uint64_t seed) {
    if (spec.a_blocks.empty() || spec.b_blocks.empty())
        throw InvalidInput("planted_bi_ssa: needs at least one block per side");
    if (spec.k1.size() != spec.a_blocks.size() || spec.k2.size() != spec.b_blocks.size())
        throw InvalidInput("planted_bi_ssa: sector maps must cover every block");
    if (spec.p.size() != spec.a_blocks.size())
        throw InvalidInput("planted_bi_ssa: p row count mismatch");
    if (spec.dim_c == 0 || spec.n_sectors <= 0)
        throw InvalidInput("planted_bi_ssa: bad C dimension or sector count");
    double p_sum = 0.0;
    for (std::size_t i = 0; i < spec.p.size(); ++i) {
        if (spec.p[i].size() != spec.b_blocks.size())
            throw InvalidInput("planted_bi_ssa: p column count mismatch");
        for (std::size_t j = 0; j < spec.p[i].size(); ++j) {
            const double w = spec.p[i][j];
            if (w < 0.0) throw InvalidInput("planted_bi_ssa: negative cell weight");
            if (w > 0.0 && spec.k1[i] != spec.k2[j])
                throw InvalidInput("planted_bi_ssa: inconsistent sector map at a positive cell");
            if (w > 0.0 && (spec.k1[i] < 0 || spec.k1[i] >= spec.n_sectors))
                throw InvalidInput("planted_bi_ssa: sector index out of range");
            p_sum += w;
        }
    }
    if (std::abs(p_sum - 1.0) > 1e-12)
        throw InvalidInput("planted_bi_ssa: p must sum to one");

    std::size_t dim_a = 0, dim_b = 0;
    std::vector<std::size_t> a_offset, b_offset;
    for (const auto& [dl, dr] : spec.a_blocks) {
        if (dl == 0 || dr == 0) throw InvalidInput("planted_bi_ssa: zero block dim");
        a_offset.push_back(dim_a);
        dim_a += dl * dr;
    }
    for (const auto& [dl, dr] : spec.b_blocks) {
        if (dl == 0 || dr == 0) throw InvalidInput("planted_bi_ssa: zero block dim");
        b_offset.push_back(dim_b);
        dim_b += dl * dr;
    }

    Rng rng(seed);
    // Shared factors: per a-block, per b-block, per sector.
    std::vector<CMatrix> rho_al, rho_br, rho_c;
    for (std::size_t i = 0; i < spec.a_blocks.size(); ++i) {
        Rng r = rng.split(1000 + i);
        rho_al.push_back(random_density(spec.a_blocks[i].first, spec.a_blocks[i].first, r));
    }
    for (std::size_t j = 0; j < spec.b_blocks.size(); ++j) {
        Rng r = rng.split(2000 + j);
        rho_br.push_back(random_density(spec.b_blocks[j].second, spec.b_blocks[j].second, r));
    }
    for (int k = 0; k < spec.n_sectors; ++k) {
        Rng r = rng.split(3000 + static_cast<std::uint64_t>(k));
        rho_c.push_back(random_density(spec.dim_c, spec.dim_c, r));
    }

    const std::size_t total = dim_a * dim_b * spec.dim_c;
    CMatrix m(total, total);
    for (std::size_t i = 0; i < spec.a_blocks.size(); ++i) {
        const auto [al, ar] = spec.a_blocks[i];
        for (std::size_t j = 0; j < spec.b_blocks.size(); ++j) {
            const auto [bl, br] = spec.b_blocks[j];
            const double w = spec.p[i][j];
            if (w <= 0.0) continue;
            Rng cell_rng = rng.split(i * spec.b_blocks.size() + j);
            const CMatrix mid = random_density(ar * bl, ar * bl, cell_rng);  // on (aR, bL)
            // order (aL, aR, bL, bR, C)
            const CMatrix block =
                kron(kron(kron(rho_al[i], mid), rho_br[j]), rho_c[spec.k1[i]]);
            const std::size_t bd = al * ar * bl * br * spec.dim_c;
            for (std::size_t r = 0; r < bd; ++r) {
                const std::size_t r_al = r / (ar * bl * br * spec.dim_c);
                const std::size_t r_ar = (r / (bl * br * spec.dim_c)) % ar;
                const std::size_t r_bl = (r / (br * spec.dim_c)) % bl;
                const std::size_t r_br = (r / spec.dim_c) % br;
                const std::size_t r_c = r % spec.dim_c;
                const std::size_t row =
                    (a_offset[i] + r_al * ar + r_ar) * dim_b * spec.dim_c +
                    (b_offset[j] + r_bl * br + r_br) * spec.dim_c + r_c;
                for (std::size_t c = 0; c < bd; ++c) {
                    const std::size_t c_al = c / (ar * bl * br * spec.dim_c);
                    const std::size_t c_ar = (c / (bl * br * spec.dim_c)) % ar;
                    const std::size_t c_bl = (c / (br * spec.dim_c)) % bl;
                    const std::size_t c_br = (c / spec.dim_c) % br;
                    const std::size_t c_c = c % spec.dim_c;
                    const std::size_t col =
                        (a_offset[i] + c_al * ar + c_ar) * dim_b * spec.dim_c +
                        (b_offset[j] + c_bl * br + c_br) * spec.dim_c + c_c;
                    m(row, col) += w * block(r, c);
                }
            }
        }
    }

    PlantedBiSsa out;
    out.state =
        MultipartiteState::trusted(std::move(m), {dim_a, dim_b, spec.dim_c}, {"A", "B", "C"});
    out.spec = spec;
    return out;
}

MultipartiteState scramble_local(const MultipartiteState& state,
                                 const std::vector<std::string>& which_labels,
                                 std::uint64_t seed) {
    for (const std::string& l : which_labels) state.index_of(l);  // rejects unknown labels
    Rng rng(seed);
    CMatrix u = CMatrix::identity(1);
    for (std::size_t k = 0; k < state.arity(); ++k) {
        const bool hit = std::find(which_labels.begin(), which_labels.end(),
                                   state.labels()[k]) != which_labels.end();
        CMatrix factor = CMatrix::identity(state.dims()[k]);
        if (hit) {
            Rng sub = rng.split(k);
            factor = random_unitary(state.dims()[k], sub);
        }
        u = kron(u, factor);
    }
    CMatrix rotated = u * state.matrix() * u.adjoint();
    return MultipartiteState::trusted(std::move(rotated), state.dims(), state.labels());
}

}  // namespace ssakit
