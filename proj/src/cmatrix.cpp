// cmatrix.cpp — Dense complex matrix primitives

#include "ssakit/cmatrix.hpp"

#include <cmath>
#include <numeric>

#include "ssakit/errors.hpp"

namespace ssakit {

CMatrix::CMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, Complex{0.0, 0.0}) {}

CMatrix CMatrix::identity(std::size_t n) {
    CMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

CMatrix CMatrix::diagonal(const std::vector<double>& entries) {
    CMatrix m(entries.size(), entries.size());
    for (std::size_t i = 0; i < entries.size(); ++i) m(i, i) = entries[i];
    return m;
}

CMatrix CMatrix::column(const std::vector<Complex>& entries) {
    CMatrix m(entries.size(), 1);
    for (std::size_t i = 0; i < entries.size(); ++i) m(i, 0) = entries[i];
    return m;
}

CMatrix CMatrix::adjoint() const {
    CMatrix out(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) out(j, i) = std::conj((*this)(i, j));
    return out;
}

CMatrix CMatrix::transpose() const {
    CMatrix out(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) out(j, i) = (*this)(i, j);
    return out;
}

CMatrix CMatrix::conjugate() const {
    CMatrix out(rows_, cols_);
    for (std::size_t k = 0; k < data_.size(); ++k) out.data_[k] = std::conj(data_[k]);
    return out;
}

Complex CMatrix::trace() const {
    if (!is_square()) throw InvalidInput("trace: matrix not square");
    Complex t{0.0, 0.0};
    for (std::size_t i = 0; i < rows_; ++i) t += (*this)(i, i);
    return t;
}

double CMatrix::frobenius_norm() const {
    double s = 0.0;
    for (const Complex& z : data_) s += std::norm(z);
    return std::sqrt(s);
}

bool CMatrix::all_finite() const {
    for (const Complex& z : data_)
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
    return true;
}

CMatrix& CMatrix::operator+=(const CMatrix& other) {
    if (rows_ != other.rows_ || cols_ != other.cols_)
        throw InvalidInput("matrix addition: shape mismatch");
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += other.data_[k];
    return *this;
}

CMatrix& CMatrix::operator-=(const CMatrix& other) {
    if (rows_ != other.rows_ || cols_ != other.cols_)
        throw InvalidInput("matrix subtraction: shape mismatch");
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= other.data_[k];
    return *this;
}

CMatrix& CMatrix::operator*=(Complex scalar) {
    for (Complex& z : data_) z *= scalar;
    return *this;
}

CMatrix& CMatrix::operator*=(double scalar) {
    for (Complex& z : data_) z *= scalar;
    return *this;
}

CMatrix operator+(CMatrix a, const CMatrix& b) { return a += b; }
CMatrix operator-(CMatrix a, const CMatrix& b) { return a -= b; }

CMatrix operator*(const CMatrix& a, const CMatrix& b) {
    if (a.cols() != b.rows()) throw InvalidInput("matrix product: shape mismatch");
    CMatrix out(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const Complex aik = a(i, k);
            if (aik == Complex{0.0, 0.0}) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += aik * b(k, j);
        }
    }
    return out;
}

CMatrix operator*(Complex scalar, CMatrix m) { return m *= scalar; }
CMatrix operator*(double scalar, CMatrix m) { return m *= scalar; }

Complex hs_inner(const CMatrix& a, const CMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw InvalidInput("hs_inner: shape mismatch");
    Complex s{0.0, 0.0};
    const auto& da = a.data();
    const auto& db = b.data();
    for (std::size_t k = 0; k < da.size(); ++k) s += std::conj(da[k]) * db[k];
    return s;
}

double frobenius_distance(const CMatrix& a, const CMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw InvalidInput("frobenius_distance: shape mismatch");
    double s = 0.0;
    for (std::size_t k = 0; k < a.data().size(); ++k) s += std::norm(a.data()[k] - b.data()[k]);
    return std::sqrt(s);
}

double hermiticity_error(const CMatrix& a) {
    if (!a.is_square()) throw InvalidInput("hermiticity_error: matrix not square");
    double s = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) s += std::norm(a(i, j) - std::conj(a(j, i)));
    return std::sqrt(s);
}

CMatrix hermitize(const CMatrix& a) {
    if (!a.is_square()) throw InvalidInput("hermitize: matrix not square");
    CMatrix out(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            out(i, j) = 0.5 * (a(i, j) + std::conj(a(j, i)));
    return out;
}

CMatrix kron(const CMatrix& a, const CMatrix& b, std::size_t max_dim) {
    const std::size_t rows = a.rows() * b.rows();
    const std::size_t cols = a.cols() * b.cols();
    if (rows > max_dim || cols > max_dim)
        throw InvalidInput("kron: result dimension exceeds maximum " + std::to_string(max_dim));
    CMatrix out(rows, cols);
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) {
            const Complex aij = a(i, j);
            if (aij == Complex{0.0, 0.0}) continue;
            for (std::size_t k = 0; k < b.rows(); ++k)
                for (std::size_t l = 0; l < b.cols(); ++l)
                    out(i * b.rows() + k, j * b.cols() + l) = aij * b(k, l);
        }
    return out;
}

namespace {

std::size_t dims_product(const std::vector<std::size_t>& dims) {
    std::size_t p = 1;
    for (std::size_t d : dims) {
        if (d == 0) throw InvalidInput("subsystem dimension must be positive");
        p *= d;
    }
    return p;
}

}  // namespace

CMatrix partial_trace(const CMatrix& m, const std::vector<std::size_t>& dims,
                      const std::vector<std::size_t>& keep) {
    if (!m.is_square()) throw InvalidInput("partial_trace: matrix not square");
    if (dims_product(dims) != m.rows())
        throw InvalidInput("partial_trace: dims do not factor the matrix dimension");
    std::vector<bool> kept(dims.size(), false);
    for (std::size_t i = 0; i < keep.size(); ++i) {
        if (keep[i] >= dims.size()) throw InvalidInput("partial_trace: keep index out of range");
        if (i > 0 && keep[i] <= keep[i - 1])
            throw InvalidInput("partial_trace: keep indices must be strictly increasing");
        kept[keep[i]] = true;
    }

    // Row-major strides of the full space.
    std::vector<std::size_t> stride(dims.size(), 1);
    for (std::size_t k = dims.size(); k-- > 1;) stride[k - 1] = stride[k] * dims[k];

    std::size_t kept_dim = 1, traced_dim = 1;
    for (std::size_t k = 0; k < dims.size(); ++k) (kept[k] ? kept_dim : traced_dim) *= dims[k];

    // Enumerate full-space offsets contributed by the kept and traced parts.
    std::vector<std::size_t> kept_offset(kept_dim, 0), traced_offset(traced_dim, 0);
    {
        std::size_t n = 1;
        for (std::size_t k = 0; k < dims.size(); ++k) {
            if (!kept[k]) continue;
            const std::size_t block = n * dims[k];
            for (std::size_t idx = kept_dim; idx-- > 0;) {
                const std::size_t digit = (idx / (kept_dim / block)) % dims[k];
                kept_offset[idx] += digit * stride[k];
            }
            n = block;
        }
        n = 1;
        for (std::size_t k = 0; k < dims.size(); ++k) {
            if (kept[k]) continue;
            const std::size_t block = n * dims[k];
            for (std::size_t idx = traced_dim; idx-- > 0;) {
                const std::size_t digit = (idx / (traced_dim / block)) % dims[k];
                traced_offset[idx] += digit * stride[k];
            }
            n = block;
        }
    }

    CMatrix out(kept_dim, kept_dim);
    for (std::size_t r = 0; r < kept_dim; ++r)
        for (std::size_t c = 0; c < kept_dim; ++c) {
            Complex s{0.0, 0.0};
            for (std::size_t t = 0; t < traced_dim; ++t)
                s += m(kept_offset[r] + traced_offset[t], kept_offset[c] + traced_offset[t]);
            out(r, c) = s;
        }
    return out;
}

CMatrix permute_tensor(const CMatrix& m, const std::vector<std::size_t>& dims,
                       const std::vector<std::size_t>& order) {
    if (!m.is_square()) throw InvalidInput("permute_tensor: matrix not square");
    const std::size_t total = dims_product(dims);
    if (total != m.rows()) throw InvalidInput("permute_tensor: dims do not factor the matrix dimension");
    if (order.size() != dims.size()) throw InvalidInput("permute_tensor: order length mismatch");
    std::vector<bool> seen(dims.size(), false);
    for (std::size_t o : order) {
        if (o >= dims.size() || seen[o]) throw InvalidInput("permute_tensor: order is not a permutation");
        seen[o] = true;
    }

    std::vector<std::size_t> in_stride(dims.size(), 1);
    for (std::size_t k = dims.size(); k-- > 1;) in_stride[k - 1] = in_stride[k] * dims[k];
    std::vector<std::size_t> out_dims(dims.size());
    for (std::size_t k = 0; k < dims.size(); ++k) out_dims[k] = dims[order[k]];
    std::vector<std::size_t> out_stride(dims.size(), 1);
    for (std::size_t k = dims.size(); k-- > 1;) out_stride[k - 1] = out_stride[k] * out_dims[k];

    // map[f] = index of full basis vector f after reordering the factors
    std::vector<std::size_t> map(total);
    for (std::size_t f = 0; f < total; ++f) {
        std::size_t out_index = 0;
        for (std::size_t k = 0; k < dims.size(); ++k) {
            const std::size_t digit = (f / in_stride[order[k]]) % dims[order[k]];
            out_index += digit * out_stride[k];
        }
        map[f] = out_index;
    }

    CMatrix out(total, total);
    for (std::size_t r = 0; r < total; ++r)
        for (std::size_t c = 0; c < total; ++c) out(map[r], map[c]) = m(r, c);
    return out;
}

}  // namespace ssakit
