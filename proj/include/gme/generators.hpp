#pragma once

#include <Eigen/Dense>
#include <complex>

#include "gme/algebra.hpp"

namespace gme {

// 4x4 complex matrix acting on the column (d/dQ, d/dr, Q, r); generators and
// propagators in the symplectic representation all live here.
using Sympl4 = Eigen::Matrix4cd;
using Block2 = Eigen::Matrix2cd;

inline Block2 block11(const Sympl4& S) { return S.block<2, 2>(0, 0); }
inline Block2 block12(const Sympl4& S) { return S.block<2, 2>(0, 2); }
inline Block2 block21(const Sympl4& S) { return S.block<2, 2>(2, 0); }
inline Block2 block22(const Sympl4& S) { return S.block<2, 2>(2, 2); }

// Tags for the generator dictionary. The first three name the matrices of
// i*L0, i*M1, i*M2 (the i is part of the printed matrix); the J_* tags name
// the position-representation operator each matrix implements.
enum class GeneratorName {
    L0,
    M1,
    M2,
    O0,
    OPlus,
    L1Plus,
    L2Plus,
    OMinus,
    L1Minus,
    L2Minus,
    J_Q2_half,      // Q^2/2
    J_iQr,          // i Q r
    J_r2_half,      // r^2/2
    J_ddQ2_half,    // (d^2/dQ^2)/2
    J_iddQdr,       // i d^2/(dQ dr)
    J_ddr2_half,    // (d^2/dr^2)/2
    J_iQdr,         // i Q d/dr
    J_irdQ,         // i r d/dQ
    J_QdQ_half,     // Q d/dQ + 1/2
    J_rdr_half,     // r d/dr + 1/2
};

namespace detail {

inline Sympl4 from_blocks(const Block2& a, const Block2& b, const Block2& c, const Block2& d) {
    Sympl4 m;
    m.block<2, 2>(0, 0) = a;
    m.block<2, 2>(0, 2) = b;
    m.block<2, 2>(2, 0) = c;
    m.block<2, 2>(2, 2) = d;
    return m;
}

inline Block2 sigma1() { return (Block2() << 0, 1, 1, 0).finished(); }
inline Block2 sigma3() { return (Block2() << 1, 0, 0, -1).finished(); }
inline Block2 sigma_plus() { return (Block2() << 0, 1, 0, 0).finished(); }
inline Block2 sigma_minus() { return (Block2() << 0, 0, 1, 0).finished(); }
inline Block2 sigma_up() { return (Block2() << 1, 0, 0, 0).finished(); }
inline Block2 sigma_down() { return (Block2() << 0, 0, 0, 1).finished(); }
inline Block2 zero2() { return Block2::Zero(); }
inline Block2 id2() { return Block2::Identity(); }

}  // namespace detail

// Fixed skew form defining the symplectic structure.
inline Sympl4 beta4() {
    using namespace detail;
    return from_blocks(zero2(), id2(), -id2(), zero2());
}

inline Sympl4 generator_matrix(GeneratorName name) {
    using namespace detail;
    const Complex i(0.0, 1.0);
    switch (name) {
        case GeneratorName::L0:
            return 0.5 * i * from_blocks(zero2(), sigma1(), sigma1(), zero2());
        case GeneratorName::M1:
            return 0.5 * i * from_blocks(zero2(), sigma1(), -sigma1(), zero2());
        case GeneratorName::M2:
            return 0.5 * from_blocks(-id2(), zero2(), zero2(), id2());
        case GeneratorName::O0:
            return 0.5 * from_blocks(-sigma3(), zero2(), zero2(), sigma3());
        case GeneratorName::OPlus:
            return -0.5 * from_blocks(zero2(), sigma_down(), sigma_up(), zero2());
        case GeneratorName::L1Plus:
            return 0.5 * from_blocks(zero2(), -sigma_down(), sigma_up(), zero2());
        case GeneratorName::L2Plus:
            return 0.5 * i * from_blocks(-sigma_minus(), zero2(), zero2(), sigma_plus());
        case GeneratorName::OMinus:
            return 2.0 * from_blocks(zero2(), sigma_up(), sigma_down(), zero2());
        case GeneratorName::L1Minus:
            return 2.0 * from_blocks(zero2(), sigma_up(), -sigma_down(), zero2());
        case GeneratorName::L2Minus:
            return 2.0 * i * from_blocks(sigma_plus(), zero2(), zero2(), -sigma_minus());
        case GeneratorName::J_Q2_half:
            return from_blocks(zero2(), sigma_up(), zero2(), zero2());
        case GeneratorName::J_iQr:
            return i * from_blocks(zero2(), sigma1(), zero2(), zero2());
        case GeneratorName::J_r2_half:
            return from_blocks(zero2(), sigma_down(), zero2(), zero2());
        case GeneratorName::J_ddQ2_half:
            return from_blocks(zero2(), zero2(), -sigma_up(), zero2());
        case GeneratorName::J_iddQdr:
            return i * from_blocks(zero2(), zero2(), -sigma1(), zero2());
        case GeneratorName::J_ddr2_half:
            return from_blocks(zero2(), zero2(), -sigma_down(), zero2());
        case GeneratorName::J_iQdr:
            return i * from_blocks(sigma_plus(), zero2(), zero2(), -sigma_minus());
        case GeneratorName::J_irdQ:
            return i * from_blocks(sigma_minus(), zero2(), zero2(), -sigma_plus());
        case GeneratorName::J_QdQ_half:
            return from_blocks(sigma_up(), zero2(), zero2(), -sigma_up());
        case GeneratorName::J_rdr_half:
            return from_blocks(sigma_down(), zero2(), zero2(), -sigma_down());
    }
    return Sympl4::Zero();
}

// Result of assembling the evolution generator in the 4D representation.
// matrix holds K' = theta0*iL0 + theta1*iM1 + theta2*iM2 + gamma*O0
// + eta0*O+ + eta1*L1+ + eta2*L2+. The scalar -gamma/2 completing the full
// generator K = K' - gamma/2 has no 4x4 representation; when
// apply_scalar_prefactor is set, downstream code owes the factor e^{gamma t/2}
// on top of exp(-t*matrix).
struct AssembledK {
    Sympl4 matrix;
    bool apply_scalar_prefactor;

    operator const Sympl4&() const { return matrix; }
};

inline AssembledK assemble_K(const MasterEqCoefficients& c, bool include_identity_shift) {
    Sympl4 K = c.theta.v0 * generator_matrix(GeneratorName::L0)
             + c.theta.v1 * generator_matrix(GeneratorName::M1)
             + c.theta.v2 * generator_matrix(GeneratorName::M2)
             + c.gamma * generator_matrix(GeneratorName::O0)
             + c.eta.v0 * generator_matrix(GeneratorName::OPlus)
             + c.eta.v1 * generator_matrix(GeneratorName::L1Plus)
             + c.eta.v2 * generator_matrix(GeneratorName::L2Plus);
    return {K, include_identity_shift};
}

// Max-norm of S^T beta S - beta; zero for elements of the symplectic group.
inline double symplectic_check(const Sympl4& S) {
    Sympl4 b = beta4();
    return (S.transpose() * b * S - b).cwiseAbs().maxCoeff();
}

}  // namespace gme
