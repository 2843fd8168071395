#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <complex>

#include "hyperscat/errors.hpp"

namespace hyperscat {

using cplx = std::complex<double>;
using cmat = Eigen::MatrixXcd;
using cvec = Eigen::VectorXcd;
using rvec = Eigen::VectorXd;

inline constexpr cplx kI{0.0, 1.0};

inline void require_finite(const cmat& a, const char* who) {
    if (!a.allFinite()) throw DomainError(std::string(who) + ": non-finite matrix entries");
}

// Frobenius norm shorthand; this is the matrix norm used for all coupling
// bounds (it is invariant under the diagonal unitary conjugations that
// appear in the phase-dressed coupling matrix).
inline double fnorm(const cmat& a) { return a.norm(); }

// Scaling-and-squaring Pade(6) exponential for the small dense matrices used
// throughout (m <= 6). Kept local so the hot path does not depend on
// unsupported Eigen headers.
inline cmat matrix_exp(const cmat& a) {
    const Eigen::Index n = a.rows();
    const double nrm = a.cwiseAbs().rowwise().sum().maxCoeff();
    int squarings = 0;
    if (nrm > 0.5) {
        squarings = std::max(0, static_cast<int>(std::ceil(std::log2(nrm / 0.5))));
    }
    const cmat as = a / std::ldexp(1.0, squarings);

    // Pade(6,6): accurate to ~1e-16 once ||as|| <= 0.5.
    static const double b[] = {64764752532480000.0, 32382376266240000.0, 7771770303897600.0,
                               1187353796428800.0,  129060195264000.0,   10559470521600.0,
                               670442572800.0,      33522128640.0,       1323241920.0,
                               40840800.0,          960960.0,            16380.0,
                               182.0,               1.0};
    const cmat a2 = as * as;
    const cmat a4 = a2 * a2;
    const cmat a6 = a2 * a4;
    const cmat id = cmat::Identity(n, n);
    const cmat u = as * (a6 * (b[13] * a6 + b[11] * a4 + b[9] * a2) +
                         b[7] * a6 + b[5] * a4 + b[3] * a2 + b[1] * id);
    const cmat v = a6 * (b[12] * a6 + b[10] * a4 + b[8] * a2) +
                   b[6] * a6 + b[4] * a4 + b[2] * a2 + b[0] * id;
    cmat r = (v - u).partialPivLu().solve(v + u);
    for (int s = 0; s < squarings; ++s) r = r * r;
    return r;
}

} // namespace hyperscat
