//! Mirror-side generators of the quintic threefold.
//!
//! Everything downstream is a polynomial or series expression in the data
//! built here: the I-function coefficients I_0..I_3 of
//!
//!   I(q,z) = z * sum_d q^d prod_{m=1}^{5d} (5H + m z) / prod_{m=1}^{d} (H + m z)^5
//!          = I_0 z + I_1 H + I_2 H^2 z^{-1} + I_3 H^3 z^{-2}   (mod H^4),
//!
//! the normalized J_i = I_i / I_0, the degree-1 frame I_11 = 1 + D J_1,
//! Y = (1 - 5^5 q)^{-1}, X = 1 - Y, the logarithmic generators
//! A = D I_11 / I_11 and B_p = D^p I_0 / I_0, and the mirror map
//! Q = q exp(J_1) together with its compositional inverse.
//!
//! `VertexTable` stores the normalized potentials P_{g,m}; `raise_m` pushes a
//! table entry from m to m+1 by the chain rule, and `vertex_p03` checks the
//! exact identity P_{0,3} = 1 that normalizes the whole tower.

use num_traits::{One, Zero};
use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::rat::{rat, rint, Rat};
use crate::series::QSeries;

/// Coefficients of a polynomial in H truncated at H^4, used only while
/// assembling the I-function degree by degree.
type HPoly = [Rat; 4];

fn hpoly_one() -> HPoly {
    [Rat::one(), Rat::zero(), Rat::zero(), Rat::zero()]
}

/// Multiplies by (1 + c h) in Q[h]/h^4.
fn hpoly_mul_linear(p: &mut HPoly, c: &Rat) {
    for i in (1..4).rev() {
        let add = &p[i - 1] * c;
        p[i] += add;
    }
}

/// Inverse of a unit in Q[h]/h^4.
fn hpoly_inv(p: &HPoly) -> HPoly {
    assert!(p[0].is_one());
    let e1 = &p[1];
    let e2 = &p[2];
    let e3 = &p[3];
    [
        Rat::one(),
        -e1.clone(),
        e1 * e1 - e2,
        -(e1 * e1 * e1) + Rat::from_integer(2.into()) * e1 * e2 - e3,
    ]
}

fn hpoly_mul(a: &HPoly, b: &HPoly) -> HPoly {
    let mut out = [Rat::zero(), Rat::zero(), Rat::zero(), Rat::zero()];
    for i in 0..4 {
        if a[i].is_zero() {
            continue;
        }
        for j in 0..4 - i {
            out[i + j] += &a[i] * &b[j];
        }
    }
    out
}

/// All mirror-side series at a fixed truncation order.
#[derive(Clone, Debug)]
pub struct MirrorData {
    pub order: usize,
    pub i0: QSeries,
    pub i1: QSeries,
    pub i2: QSeries,
    pub i3: QSeries,
    pub j1: QSeries,
    pub j2: QSeries,
    pub j3: QSeries,
    pub i11: QSeries,
    pub i22: QSeries,
    pub x: QSeries,
    pub y: QSeries,
    pub a: QSeries,
    pub b1: QSeries,
    pub b2: QSeries,
    pub b3: QSeries,
    pub b4: QSeries,
    /// Q(q) = q exp(J_1), as a series in q.
    pub mirror_map: QSeries,
    /// q(Q), the compositional inverse of the mirror map.
    pub inverse_map: QSeries,
}

/// Builds every mirror series to the given truncation order.
pub fn build_mirror(order: usize) -> Result<MirrorData> {
    assert!(order >= 2, "mirror data needs at least order 2");
    let mut i = [
        QSeries::zero(order),
        QSeries::zero(order),
        QSeries::zero(order),
        QSeries::zero(order),
    ];
    let mut icoeffs: [Vec<Rat>; 4] = [
        vec![Rat::zero(); order + 1],
        vec![Rat::zero(); order + 1],
        vec![Rat::zero(); order + 1],
        vec![Rat::zero(); order + 1],
    ];
    for d in 0..=order {
        // prod_{m=1}^{5d} (5H + mz) / prod_{m=1}^{d} (H + mz)^5 factored as
        // (5d)!/(d!)^5 times a unit in h = H/z.
        let mut num = hpoly_one();
        let mut scalar = Rat::one();
        for m in 1..=5 * d as i64 {
            hpoly_mul_linear(&mut num, &rat(5, m));
            scalar *= rint(m);
        }
        let mut den = hpoly_one();
        for m in 1..=d as i64 {
            let c = rat(1, m);
            for _ in 0..5 {
                hpoly_mul_linear(&mut den, &c);
            }
            let f = rint(m);
            scalar /= &f * &f * &f * &f * &f;
        }
        let ratio = hpoly_mul(&num, &hpoly_inv(&den));
        for k in 0..4 {
            icoeffs[k][d] = &ratio[k] * &scalar;
        }
    }
    for k in 0..4 {
        i[k] = QSeries::from_coeffs(std::mem::take(&mut icoeffs[k]));
    }
    let [i0, i1, i2, i3] = i;

    let i0_inv = i0.inv()?;
    let j1 = &i1 * &i0_inv;
    let j2 = &i2 * &i0_inv;
    let j3 = &i3 * &i0_inv;
    let i11 = &QSeries::one(order) + &j1.d();

    let y = (&QSeries::one(order) - &QSeries::q(order).scaled(&rint(3125))).inv()?;
    let x = &QSeries::one(order) - &y;

    let b1 = &i0.d() * &i0_inv;
    let b2 = &i0.d().d() * &i0_inv;
    let b3 = &i0.d().d().d() * &i0_inv;
    let b4 = &i0.d().d().d().d() * &i0_inv;
    let i11_inv = i11.inv()?;
    let a = &i11.d() * &i11_inv;

    let i22 = &y * &(&i0 * &i0 * &i11 * &i11).inv()?;

    let mirror_map = &QSeries::q(order) * &j1.exp()?;
    let inverse_map = mirror_map.revert_monic()?;

    Ok(MirrorData {
        order,
        i0,
        i1,
        i2,
        i3,
        j1,
        j2,
        j3,
        i11,
        i22,
        x,
        y,
        a,
        b1,
        b2,
        b3,
        b4,
        mirror_map,
        inverse_map,
    })
}

impl MirrorData {
    /// The log-free part of the genus-0 potential as a series in q:
    /// F_0 - (5/6)(log Q)^3 = -(5/6) J_1^3 + (5/2)(J_1 J_2 - J_3).
    pub fn genus0_log_free(&self) -> QSeries {
        let j1cubed = &(&self.j1 * &self.j1) * &self.j1;
        let mixed = &(&self.j1 * &self.j2) - &self.j3;
        &j1cubed.scaled(&rat(-5, 6)) + &mixed.scaled(&rat(5, 2))
    }

    /// Genus-0 invariants: sum_{d>=1} N_{0,d} Q^d, re-expanded in Q.
    pub fn genus0_potential(&self) -> Result<QSeries> {
        self.genus0_log_free().compose(&self.inverse_map)
    }

    /// Re-expands a q-series in the flat coordinate Q.
    pub fn to_q_coordinate(&self, s: &QSeries) -> Result<QSeries> {
        s.compose(&self.inverse_map)
    }

    /// P_{0,3} computed from its definition
    /// (5Y)^{-1} I_0^2 I_11^3 (Q d/dQ)^3 F_0 |_{Q = q e^{J_1}};
    /// errors unless it equals 1 exactly (to the truncation order).
    pub fn vertex_p03(&self) -> Result<QSeries> {
        let i11_inv = self.i11.inv()?;
        // (Q d/dQ)^k of the instanton part, pulled back to q.
        let mut v = self.genus0_log_free();
        for _ in 0..3 {
            v = &v.d() * &i11_inv;
        }
        // The classical (5/6)(log Q)^3 term contributes the constant 5.
        let yukawa = &v + &QSeries::constant(rint(5), self.order);
        let p03 = &(&self.y.scaled(&rint(5)).inv()? * &(&self.i0 * &self.i0))
            * &(&self.i11.pow(3) * &yukawa);
        if p03 != QSeries::one(self.order) {
            return Err(Error::MirrorIdentityViolation(
                "P_{0,3} differs from 1".into(),
            ));
        }
        Ok(p03)
    }
}

/// Raises a normalized potential one step in m:
/// P_{g,m+1} = D(P_{g,m}) + ((g-1)X - mA + (2g-2)B) P_{g,m}.
pub fn raise_m(g: u32, m: u32, p_gm: &QSeries, md: &MirrorData) -> QSeries {
    let g = g as i64;
    let m = m as i64;
    let lin = &(&md.x.scaled(&rint(g - 1)) - &md.a.scaled(&rint(m)))
        + &md.b1.scaled(&rint(2 * g - 2));
    &p_gm.d() + &(&lin * p_gm)
}

/// Normalized potentials P_{g,m}, keyed by (g, m).
///
/// Entries exist for (0, m >= 3), (1, m >= 1) and (g >= 2, m >= 0); the
/// exceptional (g, m) = (1, 0) vertex weight is handled by the Feynman
/// rule, not stored here.
#[derive(Clone, Debug)]
pub struct VertexTable {
    order: usize,
    entries: BTreeMap<(u32, u32), QSeries>,
}

impl VertexTable {
    pub fn new(order: usize) -> Self {
        VertexTable { order, entries: BTreeMap::new() }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn insert(&mut self, g: u32, m: u32, p: QSeries) {
        assert_eq!(p.order(), self.order, "table entries share one truncation");
        self.entries.insert((g, m), p);
    }

    pub fn get(&self, g: u32, m: u32) -> Result<&QSeries> {
        self.entries.get(&(g, m)).ok_or(Error::MissingVertexData { g, m })
    }

    pub fn contains(&self, g: u32, m: u32) -> bool {
        self.entries.contains_key(&(g, m))
    }

    /// Seeds P_{0,3} = 1 and raises genus-0 entries up to m_max.
    pub fn seed_genus0(&mut self, m_max: u32, md: &MirrorData) {
        self.insert(0, 3, QSeries::one(self.order));
        self.raise_to(0, m_max, md);
    }

    /// Extends genus g entries up to m_max by repeated raising from the
    /// largest m already present.
    pub fn raise_to(&mut self, g: u32, m_max: u32, md: &MirrorData) {
        let mut m = match self
            .entries
            .range((g, 0)..=(g, u32::MAX))
            .next_back()
            .map(|((_, m), _)| *m)
        {
            Some(m) => m,
            None => return,
        };
        while m < m_max {
            let next = raise_m(g, m, self.entries.get(&(g, m)).unwrap(), md);
            self.entries.insert((g, m + 1), next);
            m += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat;

    fn md16() -> MirrorData {
        build_mirror(16).unwrap()
    }

    #[test]
    fn i0_matches_closed_form() {
        // I_0 = sum_d (5d)!/(d!)^5 q^d.
        let md = md16();
        for d in 0..=16u32 {
            let expect = Rat::from_integer(crate::rat::factorial(5 * d))
                / Rat::from_integer(crate::rat::factorial(d).pow(5));
            assert_eq!(md.i0.coeff(d as usize), &expect, "d = {d}");
        }
    }

    #[test]
    fn j1_leading_coefficient() {
        // [q] J_1 = 120 * 5 * (1/2 + 1/3 + 1/4 + 1/5) = 770.
        let md = md16();
        assert_eq!(md.j1.coeff(0), &Rat::zero());
        assert_eq!(md.j1.coeff(1), &rint(770));
    }

    #[test]
    fn x_is_geometric_and_y_complements() {
        let md = md16();
        // X = -3125 q - 3125^2 q^2 - ...
        for k in 1..=6usize {
            assert_eq!(md.x.coeff(k), &(-rint(3125).pow(k as i32)));
        }
        assert_eq!(&md.x + &md.y, QSeries::one(md.order));
        // X = -5^5 q Y.
        let alt = &QSeries::q(md.order).scaled(&rint(-3125)) * &md.y;
        assert_eq!(md.x, alt);
        // D X = X(1 - X).
        assert_eq!(md.x.d(), &md.x * &(&QSeries::one(md.order) - &md.x));
    }

    #[test]
    fn i11_and_mirror_map() {
        let md = md16();
        assert_eq!(md.i11.coeff(0), &Rat::one());
        assert_eq!(md.mirror_map.coeff(1), &Rat::one());
        assert_eq!(md.mirror_map.coeff(2), &rint(770));
        // Round trip of the mirror map.
        let round = md.mirror_map.compose(&md.inverse_map).unwrap();
        assert_eq!(round, QSeries::q(md.order));
    }

    #[test]
    fn i22_closes_the_pairing() {
        // 5 I_0^2 I_11^2 I_22 = 5Y.
        let md = md16();
        let lhs = (&(&md.i0 * &md.i0) * &(&md.i11 * &md.i11) * &md.i22).scaled(&rint(5));
        assert_eq!(lhs, md.y.scaled(&rint(5)));
    }

    #[test]
    fn p03_is_one() {
        let md = md16();
        assert_eq!(md.vertex_p03().unwrap(), QSeries::one(md.order));
    }

    #[test]
    fn genus0_invariants() {
        let md = md16();
        let f0 = md.genus0_potential().unwrap();
        assert_eq!(f0.coeff(1), &rint(2875));
        assert_eq!(f0.coeff(2), &rat(4876875, 8));
        assert_eq!(f0.coeff(3), &Rat::new(8564575000i64.into(), 27.into()));
    }

    #[test]
    fn raising_from_p03() {
        // P_{0,4} = D(1) + (-X - 3A - 2B) * 1 = -3A - 2B - X.
        let md = md16();
        let p04 = raise_m(0, 3, &QSeries::one(md.order), &md);
        let expect = -(&(&md.a.scaled(&rint(3)) + &md.b1.scaled(&rint(2))) + &md.x);
        assert_eq!(p04, expect);
    }

    #[test]
    fn generator_relations() {
        // A_2 = 2B^2 - 2AB - 4B_2 - X(A + 2B + 2/5) and
        // B_4 = -X(2B_3 + (7/5)B_2 + (2/5)B + 24/625), checked as series.
        let md = build_mirror(30).unwrap();
        let a2 = &md.i11.d().d() * &md.i11.inv().unwrap();
        let rhs = &(&(&md.b1 * &md.b1).scaled(&rint(2)) - &(&md.a * &md.b1).scaled(&rint(2)))
            - &(&md.b2.scaled(&rint(4))
                + &(&md.x
                    * &(&(&md.a + &md.b1.scaled(&rint(2)))
                        + &QSeries::constant(rat(2, 5), md.order))));
        assert_eq!(a2, rhs);

        let b4_rhs = -&(&md.x
            * &(&(&md.b3.scaled(&rint(2)) + &md.b2.scaled(&rat(7, 5)))
                + &(&md.b1.scaled(&rat(2, 5)) + &QSeries::constant(rat(24, 625), md.order))));
        assert_eq!(md.b4, b4_rhs);
    }

    #[test]
    fn vertex_table_raises() {
        let md = md16();
        let mut t = VertexTable::new(md.order);
        t.seed_genus0(6, &md);
        assert!(t.contains(0, 3));
        assert!(t.contains(0, 6));
        assert!(t.get(0, 7).is_err());
        assert_eq!(t.get(0, 3).unwrap(), &QSeries::one(md.order));
    }
}
