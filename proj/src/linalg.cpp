// linalg.cpp — Jacobi eigensolver, one-sided Jacobi SVD, PSD roots

#include "ssakit/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "ssakit/errors.hpp"

namespace ssakit {

namespace {

constexpr int kMaxSweeps = 128;

struct Rotation {
    double c;
    double s;
    Complex phase;  // e^{i arg of the off-diagonal entry}
};

// Rotation diagonalizing the Hermitian 2x2 block [[alpha, off],[conj(off), gamma]].
Rotation make_rotation(double alpha, double gamma, Complex off) {
    const double babs = std::abs(off);
    const Complex phase = off / babs;
    // small root of t^2 - t (alpha - gamma)/babs - 1 = 0
    const double tau = (gamma - alpha) / (2.0 * babs);
    const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
    const double c = 1.0 / std::sqrt(1.0 + t * t);
    return {c, t * c, phase};
}

double off_diagonal_norm(const CMatrix& a) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            if (i != j) s += std::norm(a(i, j));
    return std::sqrt(s);
}

}  // namespace

SpectralDecomposition hermitian_eig(const CMatrix& h, double herm_tol) {
    if (!h.is_square()) throw InvalidInput("hermitian_eig: matrix not square");
    if (!h.all_finite()) throw InvalidInput("hermitian_eig: non-finite entries");
    if (hermiticity_error(h) > herm_tol)
        throw InvalidInput("hermitian_eig: input not Hermitian within tolerance");

    const std::size_t n = h.rows();
    CMatrix a = hermitize(h);
    CMatrix u = CMatrix::identity(n);
    if (n == 0) return {{}, u};

    const double conv_tol = 1e-12 * std::max(1.0, a.frobenius_norm());
    const double entry_skip = conv_tol / static_cast<double>(n * n);

    bool converged = false;
    for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
        if (off_diagonal_norm(a) <= conv_tol) {
            converged = true;
            break;
        }
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const Complex apq = a(p, q);
                if (std::abs(apq) <= entry_skip) continue;
                const Rotation r =
                    make_rotation(a(p, p).real(), a(q, q).real(), apq);
                const Complex ph = r.phase;
                const Complex phc = std::conj(ph);
                // A <- J† A J, columns then rows of the (p,q) plane.
                for (std::size_t k = 0; k < n; ++k) {
                    const Complex akp = a(k, p), akq = a(k, q);
                    a(k, p) = r.c * ph * akp - r.s * akq;
                    a(k, q) = r.s * ph * akp + r.c * akq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const Complex apk = a(p, k), aqk = a(q, k);
                    a(p, k) = r.c * phc * apk - r.s * aqk;
                    a(q, k) = r.s * phc * apk + r.c * aqk;
                }
                a(p, q) = 0.0;
                a(q, p) = 0.0;
                a(p, p) = Complex{a(p, p).real(), 0.0};
                a(q, q) = Complex{a(q, q).real(), 0.0};
                for (std::size_t k = 0; k < n; ++k) {
                    const Complex ukp = u(k, p), ukq = u(k, q);
                    u(k, p) = r.c * ph * ukp - r.s * ukq;
                    u(k, q) = r.s * ph * ukp + r.c * ukq;
                }
            }
        }
    }
    if (!converged && off_diagonal_norm(a) > conv_tol)
        throw InternalError("hermitian_eig: Jacobi sweep limit reached");

    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::stable_sort(perm.begin(), perm.end(),
                     [&](std::size_t x, std::size_t y) { return a(x, x).real() < a(y, y).real(); });

    SpectralDecomposition out;
    out.eigenvalues.resize(n);
    out.basis = CMatrix(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        out.eigenvalues[j] = a(perm[j], perm[j]).real();
        for (std::size_t i = 0; i < n; ++i) out.basis(i, j) = u(i, perm[j]);
    }
    return out;
}

PsdRoots psd_roots(const CMatrix& p) {
    const SpectralDecomposition eig = hermitian_eig(p);
    const std::size_t n = p.rows();
    double lam_max = 0.0;
    for (double lam : eig.eigenvalues) lam_max = std::max(lam_max, lam);
    for (double lam : eig.eigenvalues)
        if (lam < -1e-10)
            throw InvalidInput("psd_roots: eigenvalue below -1e-10, input not PSD");

    const double cutoff = kSupportCutoff * lam_max;
    std::vector<double> root(n, 0.0), pinv_root(n, 0.0);
    for (std::size_t k = 0; k < n; ++k) {
        const double lam = std::max(eig.eigenvalues[k], 0.0);
        if (lam > cutoff) {
            root[k] = std::sqrt(lam);
            pinv_root[k] = 1.0 / root[k];
        }
    }
    const CMatrix ud = eig.basis.adjoint();
    PsdRoots out;
    out.sqrt = eig.basis * CMatrix::diagonal(root) * ud;
    out.pinv_sqrt = eig.basis * CMatrix::diagonal(pinv_root) * ud;
    return out;
}

CMatrix support_projector(const CMatrix& p) {
    const CMatrix v = support_isometry(p);
    return v * v.adjoint();
}

CMatrix support_isometry(const CMatrix& p) {
    const SpectralDecomposition eig = hermitian_eig(p);
    double lam_max = 0.0;
    for (double lam : eig.eigenvalues) lam_max = std::max(lam_max, lam);
    const double cutoff = kSupportCutoff * lam_max;
    std::vector<std::size_t> cols;
    for (std::size_t k = 0; k < eig.eigenvalues.size(); ++k)
        if (eig.eigenvalues[k] > cutoff) cols.push_back(k);
    CMatrix v(p.rows(), cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j)
        for (std::size_t i = 0; i < p.rows(); ++i) v(i, j) = eig.basis(i, cols[j]);
    return v;
}

Svd svd(const CMatrix& a) {
    const std::size_t m = a.rows(), n = a.cols();
    CMatrix w = a;
    CMatrix v = CMatrix::identity(n);
    const double fro = a.frobenius_norm();
    // Pairs whose overlap sits at the round-off floor of the whole matrix are
    // treated as orthogonal; otherwise vanishing columns never settle.
    const double abs_floor = 8e-16 * fro * fro;
    if (n > 0 && m > 0 && fro > 0.0) {
        bool converged = false;
        for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
            bool rotated = false;
            for (std::size_t i = 0; i + 1 < n; ++i) {
                for (std::size_t j = i + 1; j < n; ++j) {
                    Complex d{0.0, 0.0};
                    double na = 0.0, nb = 0.0;
                    for (std::size_t k = 0; k < m; ++k) {
                        d += std::conj(w(k, i)) * w(k, j);
                        na += std::norm(w(k, i));
                        nb += std::norm(w(k, j));
                    }
                    const double scale = std::sqrt(na * nb);
                    if (scale <= 0.0) continue;
                    if (std::abs(d) <= 1e-14 * scale || std::abs(d) <= abs_floor) continue;
                    rotated = true;
                    const Rotation r = make_rotation(na, nb, d);
                    const Complex ph = r.phase;
                    for (std::size_t k = 0; k < m; ++k) {
                        const Complex wi = w(k, i), wj = w(k, j);
                        w(k, i) = r.c * ph * wi - r.s * wj;
                        w(k, j) = r.s * ph * wi + r.c * wj;
                    }
                    for (std::size_t k = 0; k < n; ++k) {
                        const Complex vi = v(k, i), vj = v(k, j);
                        v(k, i) = r.c * ph * vi - r.s * vj;
                        v(k, j) = r.s * ph * vi + r.c * vj;
                    }
                }
            }
            if (!rotated) {
                converged = true;
                break;
            }
        }
        if (!converged) throw InternalError("svd: Jacobi sweep limit reached");
    }

    std::vector<double> sigma(n, 0.0);
    for (std::size_t j = 0; j < n; ++j) {
        double s = 0.0;
        for (std::size_t k = 0; k < m; ++k) s += std::norm(w(k, j));
        sigma[j] = std::sqrt(s);
    }
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::stable_sort(perm.begin(), perm.end(),
                     [&](std::size_t x, std::size_t y) { return sigma[x] > sigma[y]; });

    Svd out;
    out.singular_values.resize(n);
    out.right = CMatrix(n, n);
    out.left = CMatrix(m, n);
    for (std::size_t j = 0; j < n; ++j) {
        const std::size_t src = perm[j];
        out.singular_values[j] = sigma[src];
        for (std::size_t k = 0; k < n; ++k) out.right(k, j) = v(k, src);
        if (sigma[src] > 0.0)
            for (std::size_t k = 0; k < m; ++k) out.left(k, j) = w(k, src) / sigma[src];
    }
    return out;
}

std::vector<double> singular_values(const CMatrix& a) { return svd(a).singular_values; }

std::size_t numeric_rank(const CMatrix& a, double rel_tol) {
    const std::vector<double> sv = singular_values(a);
    if (sv.empty() || sv.front() <= 0.0) return 0;
    const double cutoff = rel_tol * sv.front();
    std::size_t r = 0;
    for (double s : sv)
        if (s > cutoff) ++r;
    return r;
}

CMatrix null_space(const CMatrix& a, double sv_threshold) {
    const Svd dec = svd(a);
    std::vector<std::size_t> cols;
    for (std::size_t k = 0; k < dec.singular_values.size(); ++k)
        if (dec.singular_values[k] <= sv_threshold) cols.push_back(k);
    CMatrix out(a.cols(), cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j)
        for (std::size_t i = 0; i < a.cols(); ++i) out(i, j) = dec.right(i, cols[j]);
    return out;
}

double trace_norm(const CMatrix& a) {
    double s = 0.0;
    for (double sv : singular_values(a)) s += sv;
    return s;
}

double trace_norm_hermitian(const CMatrix& a) {
    const SpectralDecomposition eig = hermitian_eig(a, 1e-8);
    double s = 0.0;
    for (double lam : eig.eigenvalues) s += std::abs(lam);
    return s;
}

double trace_distance(const CMatrix& a, const CMatrix& b) {
    return 0.5 * trace_norm_hermitian(a - b);
}

std::vector<CMatrix> gram_schmidt_hs(const std::vector<CMatrix>& mats, double drop_tol) {
    std::vector<CMatrix> basis;
    for (const CMatrix& m : mats) {
        CMatrix r = m;
        for (int pass = 0; pass < 2; ++pass)
            for (const CMatrix& b : basis) r -= hs_inner(b, r) * b;
        const double norm = r.frobenius_norm();
        if (norm > drop_tol) {
            r *= 1.0 / norm;
            basis.push_back(std::move(r));
        }
    }
    return basis;
}

}  // namespace ssakit
