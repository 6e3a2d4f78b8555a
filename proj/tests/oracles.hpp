#ifndef WITNESSKIT_TESTS_ORACLES_HPP
#define WITNESSKIT_TESTS_ORACLES_HPP

// Test-only reference computations. None of these go through the library's
// coordinate formulas or superoperator matrices.

#include "witnesskit/matrixcore.hpp"
#include "witnesskit/supermap.hpp"

#include <functional>

namespace oracle {

using witnesskit::CMatrix;
using witnesskit::Complex;
using witnesskit::CVector;
using witnesskit::RMatrix;
using witnesskit::RVector;

inline CMatrix pauli_x()
{
    CMatrix m(2, 2);
    m << 0.0, 1.0, 1.0, 0.0;
    return m;
}

inline CMatrix pauli_y()
{
    CMatrix m(2, 2);
    m << 0.0, Complex(0.0, -1.0), Complex(0.0, 1.0), 0.0;
    return m;
}

inline CMatrix pauli_z()
{
    CMatrix m(2, 2);
    m << 1.0, 0.0, 0.0, -1.0;
    return m;
}

/// Coordinates by explicit Hilbert-Schmidt products with the basis elements.
inline RVector coordinates(const witnesskit::HermitianOperator& a)
{
    const witnesskit::HermBasis basis(a.dim());
    RVector x(basis.size());
    for (int i = 0; i < basis.size(); ++i) x(i) = (basis[i].matrix() * a.matrix()).trace().real();
    return x;
}

/// Superoperator of an action tabulated with explicit trace products.
inline RMatrix tabulate(int n, const std::function<CMatrix(const CMatrix&)>& action)
{
    const witnesskit::HermBasis basis(n);
    RMatrix m(basis.size(), basis.size());
    for (int j = 0; j < basis.size(); ++j) {
        const CMatrix img = action(basis[j].matrix());
        for (int i = 0; i < basis.size(); ++i) m(i, j) = (basis[i].matrix() * img).trace().real();
    }
    return m;
}

/// |Omega><Omega| with Omega = sum_j e_j (x) e_j, conjugated by (1 (x) u).
inline CMatrix conjugation_choi(const CMatrix& u)
{
    const auto n = u.rows();
    CVector omega = CVector::Zero(n * n);
    for (Eigen::Index j = 0; j < n; ++j) omega(j * n + j) = 1.0;
    CMatrix lift = CMatrix::Zero(n * n, n * n);
    for (Eigen::Index j = 0; j < n; ++j) lift.block(j * n, j * n, n, n) = u;
    const CVector v = lift * omega;
    return v * v.adjoint();
}

/// Descending eigenvalues by a second, independent solver path (complex Schur).
inline RVector eigenvalues_schur(const CMatrix& h)
{
    Eigen::ComplexSchur<CMatrix> schur(h);
    RVector ev = schur.matrixT().diagonal().real();
    std::sort(ev.data(), ev.data() + ev.size(), std::greater<>());
    return ev;
}

} // namespace oracle

#endif
