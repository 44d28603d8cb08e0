//! Frozen closed forms of the first normalized potentials.
//!
//! The solver reproduces these from scratch; they are kept here as fixed
//! reference data so tests and the command line can compare a fresh run
//! against known-good output without re-deriving it. All forms are exact
//! polynomials in the logarithmic generators.

use crate::gen_ring::{poly, term, Basis, GenPoly};
use crate::rat::{rat, rint, Rat};

/// P_{1,1} = -A/2 - 31B/3 - X/12 - 25/12.
pub fn p11() -> GenPoly {
    poly(Basis::Five, vec![
        term([1, 0, 0, 0, 0], rat(-1, 2)),
        term([0, 1, 0, 0, 0], rat(-31, 3)),
        term([0, 0, 0, 0, 1], rat(-1, 12)),
        term([0, 0, 0, 0, 0], rat(-25, 12)),
    ])
}

/// P_2 in the five-generator basis, including its degree-three ambiguity
/// polynomial in X. Gauge-independent; the solver returns exactly this
/// series at every admissible gauge.
pub fn p2() -> GenPoly {
    poly(Basis::Five, vec![
        term([0, 0, 0, 1, 0], rat(350, 9)),
        term([1, 0, 1, 0, 0], rat(25, 6)),
        term([0, 1, 1, 0, 0], rat(425, 9)),
        term([0, 0, 1, 0, 0], rat(625, 36)),
        term([3, 0, 0, 0, 0], rat(-5, 24)),
        term([2, 1, 0, 0, 0], rat(-65, 12)),
        term([1, 2, 0, 0, 0], rat(-1045, 18)),
        term([0, 3, 0, 0, 0], rat(-865, 9)),
        term([0, 0, 0, 0, 0], rat(-25, 144)),
        term([2, 0, 0, 0, 1], rat(-1, 6)),
        term([1, 1, 0, 0, 1], rat(-49, 36)),
        term([1, 0, 0, 0, 1], rat(-167, 720)),
        term([0, 2, 0, 0, 1], rat(-37, 18)),
        term([0, 1, 0, 0, 1], rat(1811, 120)),
        term([0, 0, 1, 0, 1], rat(475, 12)),
        term([0, 0, 0, 0, 1], rat(5759, 3600)),
        term([2, 0, 0, 0, 0], rat(-25, 24)),
        term([1, 1, 0, 0, 0], rat(-775, 36)),
        term([0, 2, 0, 0, 0], rat(-350, 9)),
        term([1, 0, 0, 0, 0], rat(-625, 288)),
        term([0, 1, 0, 0, 0], rat(-625, 144)),
        term([1, 0, 0, 0, 2], rat(-13, 288)),
        term([0, 1, 0, 0, 2], rat(-13, 144)),
        term([0, 0, 0, 0, 2], rat(-41, 3600)),
        term([0, 0, 0, 0, 3], rat(-1, 240)),
    ])
}

/// The generator part of P_3 in the reduced basis: P_3 equals this plus an
/// ambiguity polynomial f_3 in X of degree at most six with
/// f_3(0) = 25 N_{3,0} = 125/36288.
///
/// Equivalently, this is minus the non-leading part of the genus-three
/// modified graph sum at gauge zero. The genus-two vertex contributions
/// enter through D P_2 and D^2 P_2 against fixed brackets, and through P_2
/// itself against the trailing bracket.
pub fn p3_generator() -> GenPoly {
    let body = poly(Basis::E, vec![
        term([0, 0, 2, 0, 0], rat(8225, 27)),
        term([1, 1, 1, 0, 0], rat(275, 3)),
        term([0, 1, 1, 0, 0], rat(29375, 108)),
        term([3, 0, 1, 0, 0], rat(185, 24)),
        term([2, 0, 1, 0, 0], rat(575, 24)),
        term([1, 0, 1, 0, 0], rat(29375, 864)),
        term([0, 3, 0, 0, 0], rat(-10450, 81)),
        term([2, 2, 0, 0, 0], rat(-3595, 72)),
        term([1, 2, 0, 0, 0], rat(-3575, 54)),
        term([0, 2, 0, 0, 0], rat(14375, 288)),
        term([4, 1, 0, 0, 0], rat(-35, 3)),
        term([3, 1, 0, 0, 0], rat(-4075, 144)),
        term([2, 1, 0, 0, 0], rat(-8125, 432)),
        term([1, 1, 0, 0, 0], rat(15625, 1728)),
        term([6, 0, 0, 0, 0], rat(-5, 4)),
        term([5, 0, 0, 0, 0], rat(-25, 6)),
        term([4, 0, 0, 0, 0], rat(-3125, 576)),
        term([3, 0, 0, 0, 0], rat(-15625, 5184)),
        term([0, 1, 1, 0, 1], rat(1175, 108)),
        term([2, 0, 1, 0, 1], rat(39, 8)),
        term([1, 0, 1, 0, 1], rat(7849, 2160)),
        term([1, 2, 0, 0, 1], rat(-1397, 54)),
        term([0, 2, 0, 0, 1], rat(2773, 2160)),
        term([3, 1, 0, 0, 1], rat(-1687, 144)),
        term([2, 1, 0, 0, 1], rat(-16163, 1080)),
        term([1, 1, 0, 0, 1], rat(-21433, 8640)),
        term([5, 0, 0, 0, 1], rat(-23, 12)),
        term([4, 0, 0, 0, 1], rat(-3107, 720)),
        term([3, 0, 0, 0, 1], rat(-5893, 1728)),
        term([2, 0, 0, 0, 1], rat(-82091, 86400)),
        term([1, 0, 1, 0, 2], rat(611, 864)),
        term([0, 2, 0, 0, 2], rat(-1603, 864)),
        term([2, 1, 0, 0, 2], rat(-1897, 432)),
        term([1, 1, 0, 0, 2], rat(-4363, 2880)),
        term([4, 0, 0, 0, 2], rat(-731, 576)),
        term([3, 0, 0, 0, 2], rat(-14609, 8640)),
        term([2, 0, 0, 0, 2], rat(-51473, 86400)),
        term([1, 1, 0, 0, 3], rat(-325, 576)),
        term([3, 0, 0, 0, 3], rat(-2305, 5184)),
        term([2, 0, 0, 0, 3], rat(-4337, 17280)),
        term([2, 0, 0, 0, 4], rat(-247, 3456)),
    ]);
    let dp2_bracket = poly(Basis::E, vec![
        term([0, 1, 0, 0, 0], rat(19, 3)),
        term([2, 0, 0, 0, 0], rat(1, 2)),
        term([1, 0, 0, 0, 0], rat(25, 12)),
        term([1, 0, 0, 0, 1], rat(-11, 12)),
    ]);
    let p2_bracket = poly(Basis::E, vec![
        term([0, 0, 1, 0, 0], rat(47, 3)),
        term([1, 1, 0, 0, 0], rint(1)),
        term([0, 1, 0, 0, 0], rat(25, 6)),
        term([1, 0, 0, 0, 2], rat(1, 12)),
        term([0, 1, 0, 0, 1], rat(13, 2)),
        term([2, 0, 0, 0, 1], rat(1, 2)),
        term([1, 0, 0, 0, 1], rat(19, 12)),
    ]);
    let e1_half = poly(Basis::E, vec![term([1, 0, 0, 0, 0], rat(1, 2))]);
    let p2e = p2().to_basis(Basis::E);
    let dp2 = p2e.d();
    let d2p2 = dp2.d();
    &(&body - &(&d2p2 * &e1_half))
        + &(&(&dp2 * &dp2_bracket) + &(&p2e * &p2_bracket))
}

/// Constant term of the genus-three ambiguity, 5^2 N_{3,0}.
pub fn f30() -> Rat {
    rat(125, 36288)
}
