#pragma once

#include "nlamp/fock_space.hpp"

namespace nlamp::detail {

// out^dag out for out = alpha X (x) 1 + beta 1 (x) Y, expanded into Kronecker
// products of single-mode matrices so no full-size matrix product is formed.
inline OperatorMatrix two_mode_number_out(const OperatorMatrix& x, const OperatorMatrix& y, Complex alpha,
                                          Complex beta)
{
    const OperatorMatrix id_x = identity(x.shape());
    const OperatorMatrix id_y = identity(y.shape());
    const OperatorMatrix xd = x.adjoint();
    const OperatorMatrix yd = y.adjoint();

    OperatorMatrix out = Complex(std::norm(alpha)) * kron(xd * x, id_y);
    out += Complex(std::norm(beta)) * kron(id_x, yd * y);
    out += (std::conj(alpha) * beta) * kron(xd, y);
    out += (std::conj(beta) * alpha) * kron(x, yd);
    return out;
}

}  // namespace nlamp::detail
