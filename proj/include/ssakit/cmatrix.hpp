// cmatrix.hpp — Dense complex matrices, Kronecker products, partial traces,
// and tensor-index permutations. Row-major storage, std::complex<double>.

#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace ssakit {

using Complex = std::complex<double>;

// Guard for tensor-product growth; kron and purification reject results
// larger than this.
inline constexpr std::size_t kMaxTensorDim = 4096;

class CMatrix {
public:
    CMatrix() = default;
    CMatrix(std::size_t rows, std::size_t cols);  // zero-filled

    static CMatrix identity(std::size_t n);
    // n x n with the given diagonal entries
    static CMatrix diagonal(const std::vector<double>& entries);
    static CMatrix column(const std::vector<Complex>& entries);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool is_square() const { return rows_ == cols_; }

    Complex& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const Complex& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    const std::vector<Complex>& data() const { return data_; }
    std::vector<Complex>& data() { return data_; }

    CMatrix adjoint() const;
    CMatrix transpose() const;
    CMatrix conjugate() const;

    Complex trace() const;
    double frobenius_norm() const;
    bool all_finite() const;

    CMatrix& operator+=(const CMatrix& other);
    CMatrix& operator-=(const CMatrix& other);
    CMatrix& operator*=(Complex scalar);
    CMatrix& operator*=(double scalar);

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Complex> data_;
};

CMatrix operator+(CMatrix a, const CMatrix& b);
CMatrix operator-(CMatrix a, const CMatrix& b);
CMatrix operator*(const CMatrix& a, const CMatrix& b);
CMatrix operator*(Complex scalar, CMatrix m);
CMatrix operator*(double scalar, CMatrix m);

// Hilbert–Schmidt inner product Tr[a† b].
Complex hs_inner(const CMatrix& a, const CMatrix& b);

double frobenius_distance(const CMatrix& a, const CMatrix& b);

// ‖A − A†‖_F, zero for Hermitian input.
double hermiticity_error(const CMatrix& a);

// (A + A†)/2
CMatrix hermitize(const CMatrix& a);

CMatrix kron(const CMatrix& a, const CMatrix& b, std::size_t max_dim = kMaxTensorDim);

// Partial trace of a square matrix over the subsystems NOT listed in `keep`.
// `dims` are the subsystem dimensions (row-major tensor order); `keep` is a
// strictly increasing list of subsystem indices.
CMatrix partial_trace(const CMatrix& m, const std::vector<std::size_t>& dims,
                      const std::vector<std::size_t>& keep);

// Reorders the tensor factors of a square matrix: slot k of the result is
// subsystem order[k] of the input.
CMatrix permute_tensor(const CMatrix& m, const std::vector<std::size_t>& dims,
                       const std::vector<std::size_t>& order);

}  // namespace ssakit
