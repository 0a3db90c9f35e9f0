#ifndef FHLAB_SPECIALFN_HPP
#define FHLAB_SPECIALFN_HPP

#include <complex>

namespace fhlab::specialfn {

using cplx = std::complex<double>;

// Complex value together with its logarithm taken with the argument
// in [0, 2pi). Used wherever a power of a circle factor must follow
// that convention rather than the principal branch.
struct BranchedComplex {
    cplx value;
    cplx log;  // imag(log) in [0, 2pi)
};

// log w with arg(w) in [0, 2pi).
BranchedComplex branched_log(cplx w);

// base^expo evaluated as exp(expo * branched_log(base)).
cplx branched_pow(cplx base, cplx expo);

// Principal log-Gamma. Throws fhlab::Error on nonpositive integers.
cplx log_gamma(cplx z);

// Gamma via exp(log_gamma).
cplx gamma(cplx z);

// log of Barnes G with G(1)=1, G(z+1)=Gamma(z)G(z); continuous branch
// along the functional-equation ladder used for argument reduction.
// Throws fhlab::Error at the zeros z in {0,-1,-2,...}.
cplx log_barnes_g(cplx z);

// Same value computed through the large-argument expansion instead of the
// Taylor series; kept public so tests can cross-check the two routes.
cplx log_barnes_g_asymptotic_route(cplx z);

// ln[ G(1+a+b) G(1+a-b) / G(1+2a) ]. Throws when a+b or a-b is a
// negative integer (degenerate Fisher-Hartwig parameters).
cplx fh_constant(cplx alpha, cplx beta);

}  // namespace fhlab::specialfn

#endif
