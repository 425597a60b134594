#ifndef BERGLAB_ROOTFIND_HPP
#define BERGLAB_ROOTFIND_HPP

#include "berglab/common.hpp"

namespace berglab {

// All roots of c_0 + c_1 z + ... + c_n z^n (c_n != 0) by Durand-Kerner
// simultaneous iteration. Contract: max residual of the monic polynomial at
// the returned points < 1e-10, otherwise RootFindingDiverged is thrown
// (iteration cap 500).
CVec all_roots(const CVec& coeffs);

// Same spectrum via the companion matrix; used where an iteration-free path
// is wanted (domain membership tests).
CVec companion_roots(const CVec& coeffs);

// Roots of t^d - w_1 t^{d-1} + w_2 t^{d-2} - ... + (-1)^d w_d, the monic
// polynomial attached to a symmetrized-polydisc point w.
CVec symdisc_preimage(const CVec& w);

} // namespace berglab

#endif
