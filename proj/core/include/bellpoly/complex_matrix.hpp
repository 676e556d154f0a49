#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace bellpoly {

using Complex = std::complex<double>;

/// Dense square complex matrix, row-major, dimension 2 or 4. That is all
/// the two-qubit experiment needs; there is deliberately no general
/// Hilbert-space machinery behind it.
class ComplexMatrix {
public:
    explicit ComplexMatrix(std::size_t dim);  // zero-initialized

    static ComplexMatrix identity(std::size_t dim);

    /// |v><v| for a 2- or 4-component vector.
    static ComplexMatrix outer(std::span<const Complex> v);

    /// Kronecker product; only 2x2 (x) 2x2 -> 4x4 is supported.
    static ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

    std::size_t dim() const noexcept { return dim_; }

    Complex& operator()(std::size_t i, std::size_t j) { return data_[i * dim_ + j]; }
    const Complex& operator()(std::size_t i, std::size_t j) const {
        return data_[i * dim_ + j];
    }

    ComplexMatrix operator+(const ComplexMatrix& rhs) const;
    ComplexMatrix operator-(const ComplexMatrix& rhs) const;
    ComplexMatrix operator*(const ComplexMatrix& rhs) const;
    ComplexMatrix operator*(Complex scalar) const;

    ComplexMatrix adjoint() const;
    Complex trace() const;
    double frobenius_norm() const;

    bool is_hermitian(double tol) const;

    /// Eigenvalues of a Hermitian matrix, ascending. Cyclic complex Jacobi;
    /// plenty for fixed 2x2/4x4 sizes.
    std::vector<double> hermitian_eigenvalues() const;

    bool almost_equal(const ComplexMatrix& other, double tol) const;

private:
    std::size_t dim_;
    std::vector<Complex> data_;
};

/// Frobenius norm of the commutator [a, b] = ab - ba.
double commutator_norm(const ComplexMatrix& a, const ComplexMatrix& b);

}  // namespace bellpoly
