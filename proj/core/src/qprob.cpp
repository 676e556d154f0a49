#include "bellpoly/qprob.hpp"

#include <cmath>
#include <string>

#include "bellpoly/errors.hpp"

namespace bellpoly::qprob {

namespace {

constexpr double kHermitianTol = 1e-12;
constexpr double kTraceTol = 1e-12;
constexpr double kPsdTol = 1e-10;
constexpr double kIdempotencyTol = 1e-10;
constexpr double kCommutatorTol = 1e-10;
constexpr double kProbabilityTol = 1e-10;

ComplexMatrix up_projector_2x2(const Direction& d) {
    const SpinBasis basis = spin_eigenvectors(d);
    return ComplexMatrix::outer(basis.up);
}

std::array<Complex, 4> tensor(const std::array<Complex, 2>& a,
                              const std::array<Complex, 2>& b) {
    return {a[0] * b[0], a[0] * b[1], a[1] * b[0], a[1] * b[1]};
}

}  // namespace

SpinBasis spin_eigenvectors(const Direction& v) {
    const double theta = v.polar();
    const double phi = v.azimuth();
    const double c = std::cos(theta / 2.0);
    const double s = std::sin(theta / 2.0);
    const Complex phase = std::polar(1.0, phi);

    SpinBasis basis;
    basis.up = {Complex{c, 0.0}, phase * s};
    basis.down = {-std::conj(phase) * s, Complex{c, 0.0}};
    return basis;
}

DensityOperator::DensityOperator(ComplexMatrix m) : m_(std::move(m)) {
    if (m_.dim() != 4) throw ShapeError("density operator must be 4x4");
    if (!m_.is_hermitian(kHermitianTol)) {
        throw ValidationError("density operator is not Hermitian");
    }
    if (std::abs(m_.trace() - Complex{1.0, 0.0}) > kTraceTol) {
        throw ValidationError("density operator trace is not 1");
    }
    const auto evals = m_.hermitian_eigenvalues();
    if (evals.front() < -kPsdTol) {
        throw ValidationError("density operator is not positive semidefinite "
                              "(min eigenvalue " + std::to_string(evals.front()) + ")");
    }
}

double DensityOperator::purity() const { return (m_ * m_).trace().real(); }

ProjectorEvent::ProjectorEvent(ComplexMatrix m) : m_(std::move(m)) {
    if (m_.dim() != 4) throw ShapeError("projector event must be 4x4");
    if (!m_.is_hermitian(kHermitianTol)) {
        throw ValidationError("projector is not Hermitian");
    }
    if (!(m_ * m_).almost_equal(m_, kIdempotencyTol)) {
        throw ValidationError("matrix is not idempotent (P^2 != P)");
    }
}

DensityOperator singlet_state() { return singlet_state(Direction(0.0, 0.0, 1.0)); }

DensityOperator singlet_state(const Direction& basis) {
    const SpinBasis eig = spin_eigenvectors(basis);
    const auto up_down = tensor(eig.up, eig.down);
    const auto down_up = tensor(eig.down, eig.up);
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);

    std::array<Complex, 4> psi;
    for (std::size_t i = 0; i < 4; ++i) psi[i] = inv_sqrt2 * (up_down[i] - down_up[i]);
    return DensityOperator(ComplexMatrix::outer(psi));
}

ProjectorEvent up_event(Wing wing, const Direction& d) {
    return spin_event(wing, Outcome::Up, d);
}

ProjectorEvent down_event(Wing wing, const Direction& d) {
    return spin_event(wing, Outcome::Down, d);
}

ProjectorEvent spin_event(Wing wing, Outcome outcome, const Direction& d) {
    const Direction axis = (outcome == Outcome::Up) ? d : -d;
    const ComplexMatrix p = up_projector_2x2(axis);
    const ComplexMatrix eye = ComplexMatrix::identity(2);
    return ProjectorEvent(wing == Wing::Left ? ComplexMatrix::kron(p, eye)
                                             : ComplexMatrix::kron(eye, p));
}

double quantum_prob(const DensityOperator& w, std::span<const ProjectorEvent> events) {
    for (std::size_t i = 0; i < events.size(); ++i) {
        for (std::size_t j = i + 1; j < events.size(); ++j) {
            const double c = commutator_norm(events[i].matrix(), events[j].matrix());
            if (c > kCommutatorTol) {
                throw CommutationError(
                    "events " + std::to_string(i) + " and " + std::to_string(j) +
                    " do not commute (|[P,Q]|_F = " + std::to_string(c) +
                    "); their conjunction has no probability");
            }
        }
    }

    ComplexMatrix product = w.matrix();
    for (const ProjectorEvent& e : events) product = product * e.matrix();

    const double p = product.trace().real();
    if (p < -kProbabilityTol || p > 1.0 + kProbabilityTol) {
        throw ValidationError("trace rule produced a value outside [0,1]: " +
                              std::to_string(p));
    }
    return std::min(1.0, std::max(0.0, p));
}

}  // namespace bellpoly::qprob
