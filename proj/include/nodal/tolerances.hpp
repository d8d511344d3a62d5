#ifndef NODAL_TOLERANCES_HPP
#define NODAL_TOLERANCES_HPP

namespace nodal {

// Numerical surrogates for the exact-arithmetic conditions; all relative
// to (1 + matrix norm) unless stated otherwise.
struct Tolerances {
    double gap = 1e-8;        // simple-spectrum threshold
    double zero = 1e-9;       // nonvanishing / support threshold
    double hess = 1e-7;       // magnetic Hessian degeneracy threshold
    double fd_step = 2e-3;    // finite-difference step (Richardson on h, h/2)
    double det = 1e-12;       // |det| > det * norm^n via log-determinant
};

} // namespace nodal

#endif
