#include "bellpoly/complex_matrix.hpp"

#include <algorithm>
#include <cmath>

#include "bellpoly/errors.hpp"

namespace bellpoly {

namespace {

void require_supported_dim(std::size_t dim) {
    if (dim != 2 && dim != 4) {
        throw ShapeError("matrix dimension must be 2 or 4, got " + std::to_string(dim));
    }
}

void require_same_dim(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.dim() != b.dim()) {
        throw ShapeError("matrix dimension mismatch: " + std::to_string(a.dim()) +
                         " vs " + std::to_string(b.dim()));
    }
}

}  // namespace

ComplexMatrix::ComplexMatrix(std::size_t dim) : dim_(dim), data_(dim * dim) {
    require_supported_dim(dim);
}

ComplexMatrix ComplexMatrix::identity(std::size_t dim) {
    ComplexMatrix m(dim);
    for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1.0;
    return m;
}

ComplexMatrix ComplexMatrix::outer(std::span<const Complex> v) {
    ComplexMatrix m(v.size());
    for (std::size_t i = 0; i < v.size(); ++i)
        for (std::size_t j = 0; j < v.size(); ++j) m(i, j) = v[i] * std::conj(v[j]);
    return m;
}

ComplexMatrix ComplexMatrix::kron(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.dim() != 2 || b.dim() != 2) {
        throw ShapeError("kron supports only 2x2 (x) 2x2");
    }
    ComplexMatrix m(4);
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j)
            for (std::size_t k = 0; k < 2; ++k)
                for (std::size_t l = 0; l < 2; ++l)
                    m(2 * i + k, 2 * j + l) = a(i, j) * b(k, l);
    return m;
}

ComplexMatrix ComplexMatrix::operator+(const ComplexMatrix& rhs) const {
    require_same_dim(*this, rhs);
    ComplexMatrix m(dim_);
    for (std::size_t i = 0; i < data_.size(); ++i) m.data_[i] = data_[i] + rhs.data_[i];
    return m;
}

ComplexMatrix ComplexMatrix::operator-(const ComplexMatrix& rhs) const {
    require_same_dim(*this, rhs);
    ComplexMatrix m(dim_);
    for (std::size_t i = 0; i < data_.size(); ++i) m.data_[i] = data_[i] - rhs.data_[i];
    return m;
}

ComplexMatrix ComplexMatrix::operator*(const ComplexMatrix& rhs) const {
    require_same_dim(*this, rhs);
    ComplexMatrix m(dim_);
    for (std::size_t i = 0; i < dim_; ++i)
        for (std::size_t k = 0; k < dim_; ++k) {
            const Complex aik = (*this)(i, k);
            if (aik == Complex{}) continue;
            for (std::size_t j = 0; j < dim_; ++j) m(i, j) += aik * rhs(k, j);
        }
    return m;
}

ComplexMatrix ComplexMatrix::operator*(Complex scalar) const {
    ComplexMatrix m(dim_);
    for (std::size_t i = 0; i < data_.size(); ++i) m.data_[i] = data_[i] * scalar;
    return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
    ComplexMatrix m(dim_);
    for (std::size_t i = 0; i < dim_; ++i)
        for (std::size_t j = 0; j < dim_; ++j) m(j, i) = std::conj((*this)(i, j));
    return m;
}

Complex ComplexMatrix::trace() const {
    Complex t = 0.0;
    for (std::size_t i = 0; i < dim_; ++i) t += (*this)(i, i);
    return t;
}

double ComplexMatrix::frobenius_norm() const {
    double s = 0.0;
    for (const Complex& c : data_) s += std::norm(c);
    return std::sqrt(s);
}

bool ComplexMatrix::is_hermitian(double tol) const {
    for (std::size_t i = 0; i < dim_; ++i)
        for (std::size_t j = i; j < dim_; ++j)
            if (std::abs((*this)(i, j) - std::conj((*this)(j, i))) > tol) return false;
    return true;
}

std::vector<double> ComplexMatrix::hermitian_eigenvalues() const {
    // Work on a copy; rotate (p, q) planes until the off-diagonal mass is gone.
    ComplexMatrix h = *this;
    const std::size_t n = dim_;
    const double scale = std::max(1.0, frobenius_norm());

    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0.0;
        for (std::size_t p = 0; p < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) off += std::norm(h(p, q));
        if (std::sqrt(off) < 1e-15 * scale) break;

        for (std::size_t p = 0; p < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const Complex hpq = h(p, q);
                const double r = std::abs(hpq);
                if (r < 1e-300) continue;
                const Complex w = std::conj(hpq) / r;  // e^{-i phi}
                const double app = h(p, p).real();
                const double aqq = h(q, q).real();
                const double theta = 0.5 * std::atan2(2.0 * r, app - aqq);
                const double c = std::cos(theta);
                const double s = std::sin(theta);

                // H <- U^H H U with U_pp = c, U_pq = s, U_qp = -s w, U_qq = c w.
                for (std::size_t k = 0; k < n; ++k) {  // column update (right)
                    const Complex hkp = h(k, p);
                    const Complex hkq = h(k, q);
                    h(k, p) = c * hkp - s * w * hkq;
                    h(k, q) = s * hkp + c * w * hkq;
                }
                for (std::size_t k = 0; k < n; ++k) {  // row update (left)
                    const Complex hpk = h(p, k);
                    const Complex hqk = h(q, k);
                    h(p, k) = c * hpk - s * std::conj(w) * hqk;
                    h(q, k) = s * hpk + c * std::conj(w) * hqk;
                }
            }
        }
    }

    std::vector<double> evals(n);
    for (std::size_t i = 0; i < n; ++i) evals[i] = h(i, i).real();
    std::sort(evals.begin(), evals.end());
    return evals;
}

bool ComplexMatrix::almost_equal(const ComplexMatrix& other, double tol) const {
    if (dim_ != other.dim_) return false;
    for (std::size_t i = 0; i < data_.size(); ++i)
        if (std::abs(data_[i] - other.data_[i]) > tol) return false;
    return true;
}

double commutator_norm(const ComplexMatrix& a, const ComplexMatrix& b) {
    return (a * b - b * a).frobenius_norm();
}

}  // namespace bellpoly
