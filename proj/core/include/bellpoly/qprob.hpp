#pragma once

#include <array>
#include <span>

#include "bellpoly/complex_matrix.hpp"
#include "bellpoly/direction.hpp"

namespace bellpoly::qprob {

enum class Wing { Left, Right };
enum class Outcome { Up, Down };

/// Orthonormal eigenvectors of the spin-component operator sigma.v with
/// eigenvalues +1 (up) and -1 (down).
struct SpinBasis {
    std::array<Complex, 2> up;
    std::array<Complex, 2> down;
};

SpinBasis spin_eigenvectors(const Direction& v);

/// Two-particle state: 4x4, Hermitian (1e-12), unit trace (1e-12),
/// positive semidefinite (eigenvalues >= -1e-10). Construction validates.
class DensityOperator {
public:
    explicit DensityOperator(ComplexMatrix m);

    const ComplexMatrix& matrix() const noexcept { return m_; }
    double purity() const;  // tr(W^2)

private:
    ComplexMatrix m_;
};

/// Measurement event: 4x4 projector, P^2 = P within 1e-10, Hermitian
/// within 1e-12.
class ProjectorEvent {
public:
    explicit ProjectorEvent(ComplexMatrix m);

    const ComplexMatrix& matrix() const noexcept { return m_; }

private:
    ComplexMatrix m_;
};

/// Projector onto the singlet state. The result does not depend on the
/// basis direction it is assembled from.
DensityOperator singlet_state();
DensityOperator singlet_state(const Direction& basis);

/// "spin is up along d" on the given wing: P_{+d} (x) I or I (x) P_{+d}.
ProjectorEvent up_event(Wing wing, const Direction& d);
ProjectorEvent down_event(Wing wing, const Direction& d);
ProjectorEvent spin_event(Wing wing, Outcome outcome, const Direction& d);

/// tr(W * P1 * ... * Pk) for pairwise commuting events. A non-commuting
/// list is rejected with CommutationError: the conjunction is undefined.
/// Commutation gate: Frobenius norm of each pairwise commutator <= 1e-10.
double quantum_prob(const DensityOperator& w, std::span<const ProjectorEvent> events);

}  // namespace bellpoly::qprob
