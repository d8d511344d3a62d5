#ifndef NODAL_EIGENSOLVE_HPP
#define NODAL_EIGENSOLVE_HPP

#include "nodal/matrix.hpp"

namespace nodal {

// Full ordered eigensystem of a real symmetric matrix.
// values nondecreasing; vectors orthonormal columns; each column signed so
// its first entry with magnitude > 1e-9 is positive.
struct EigenSystem {
    Vec values;
    Mat vectors;
    Vec gaps;  // values[k+1] - values[k]

    double norm() const { return values.size() ? std::max(std::abs(values(0)), std::abs(values(values.size() - 1))) : 0.0; }
    double min_gap() const { return gaps.size() ? gaps.minCoeff() : std::numeric_limits<double>::infinity(); }
};

// Cyclic Jacobi diagonalization. Deterministic for identical input bytes.
EigenSystem jacobi_eigensystem(const Mat& a);

inline EigenSystem eigensystem(const SupportedMatrix& a) { return jacobi_eigensystem(a.entries()); }

// Pseudo-inverse of (a - shift I) via the eigensystem: inverts eigenvalues
// farther than kernel_tol from shift, zeroes the rest.
Mat shifted_pseudo_inverse(const EigenSystem& es, double shift, double kernel_tol);

} // namespace nodal

#endif
