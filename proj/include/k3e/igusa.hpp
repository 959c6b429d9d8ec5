#pragma once

// Three independent constructions of the weight-10 cusp form chi10, the
// windowed Fourier expansion of its inverse in the region
// 0 < |q| < |p| < 1, and the splitting of -psi_d into a finite part and a
// polar part.

#include "k3e/forms.hpp"

namespace k3e {

// outer variable qt, coefficients are finite (q, t)-series
using SiegelSeries = TruncSeries<JSeries>;

enum class Chi10Method { product, exp_hecke, additive_lift };

// chi10 on the box: qt-coefficients d = 1 .. Nqt, q-coefficients 1 .. Nq
SiegelSeries chi10(long Nq, long Nqt, Chi10Method method);

SiegelSeries chi10_product(long Nq, long Nqt);
SiegelSeries chi10_exp_hecke(long Nq, long Nqt);
SiegelSeries chi10_additive_lift(long Nq, long Nqt);

// swaps the roles of q and qt on a square box (t content untouched)
SiegelSeries swap_q_qt(const SiegelSeries& s);

// The expansion of 1/F^2 = -1/K^2 in the region |q| < |p| < 1 as a
// windowed q-series: seed sum_{k>=1} k p^k certified up to t-exponent
// seed_hi_t, then the finite correction factors.
WSeries inverse_Fsq(long Nq, long seed_hi_t);

// 1/(F^2 Delta), windowed
WSeries inverse_FsqDelta(long Nq, long seed_hi_t);

struct PsiFamily {
    // psi_d, polar phi_d and the finite parts, all indexed by the
    // qt-exponent d of 1/chi10 = sum_{d >= -1} qt^d psi_d.
    std::map<long, WSeries> psi;
    std::map<long, WSeries> phi;            // polar parts, same index as psi
    std::map<long, JSeries> finite;         // finite[d] = trim(-psi_{d-1} - phi_{d-1})
    long win_lo = 0, win_hi = 0;            // requested certified p-window
};

// Windowed 1/chi10: psi_d for -1 <= d <= Dmax with q-orders < Nq,
// certified at least on p-window [win_lo, win_hi].
PsiFamily inverse_chi10(long Nq, long Dmax, long win_lo, long win_hi);

// phi_d = a(d) G^{d+1} / (F^2 Delta) on the window
WSeries polar_part(long d, long Nq, long win_lo, long win_hi);

// H_d = -psi_{d-1} - phi_{d-1}, trimmed to finite Laurent coefficients
// after checking a vanishing margin of `margin_slots` t-slots.
JSeries hilb_H(long d, long Nq, long win_lo, long win_hi, long margin_slots = 6);

// classical closed forms of psi_{-1}..psi_2 on the window (for checks)
WSeries psi_closed_form(long d, long Nq, long win_lo, long win_hi);

}  // namespace k3e
