#pragma once

#include "gd/operators.hpp"
#include "gd/rng.hpp"

namespace gd {

// Gaussian symmetric matrix; Complex/Quaternionic tags are NOT projected.
SymmetricMatrix random_symmetric(Rng& rng, int dim, Algebra algebra = Algebra::Real);

// Gaussian symmetric matrix projected onto the structure commutant.
SymmetricMatrix random_commutant(Rng& rng, int dim, Algebra algebra);

// M^t M + 1e-3 Id with Gaussian M, projected for C/H, top eigenvalue capped
// at eig_cap by rescaling.
SymmetricMatrix random_spd(Rng& rng, int dim, Algebra algebra, double eig_cap = 10.0);

// t Id + skew-Hermitian part with t > max |skew eigenvalue|: a positive
// matrix in the Lagrangian Monge-Ampere domain on C^n.
SymmetricMatrix random_lagrangian_positive(Rng& rng, int n, double eig_cap = 10.0);

// Gaussian matrix in the operator's domain (commutant-projected when the
// operator reads field eigenvalues).
SymmetricMatrix random_domain(Rng& rng, const OperatorSpec& F);

// Positive matrix in the operator's domain.
SymmetricMatrix random_positive_domain(Rng& rng, const OperatorSpec& F, double eig_cap = 10.0);

}  // namespace gd
