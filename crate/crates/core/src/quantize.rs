//! Quantization oracle for the graph sums.
//!
//! The master potential can be computed without enumerating a single
//! graph: pack the vertex potentials into the generating function
//!
//!   P(hbar, x, y) = sum_{g,m,n} hbar^{g-1} P_{g,m,n} x^m y^n / (m! n!),
//!
//! apply the exponential of the quantized edge operator
//!
//!   V = (1/2) E_phiphi dx^2 + E_phipsi dx dy + (1/2) E_psipsi dy^2,
//!
//! and take the logarithm: m! n! [hbar^{g-1} x^m y^n] ln(e^{hbar V} e^P)
//! reproduces f^B_{g,m,n}. Wick contraction makes e^{hbar V} attach edges
//! in all possible ways and the logarithm keeps the connected part, so
//! agreement with the combinatorial sum checks the enumeration, the
//! automorphism factors and the vertex dilaton shifts all at once.
//!
//! Everything is graded by a = (hbar-power) and e = m + n. Each stable
//! vertex monomial has 2a + e >= 1 and 3a + e >= 0; an edge application
//! sends (a, e) to (a + 1, e - 2), preserving 2a + e and raising 3a + e.
//! Both quantities are additive under products, so a monomial can only
//! influence targets with the same or larger grades. Truncating to
//! 2a + e <= 2(G-1) + E and 3a + e <= 3(G-1) + E therefore keeps every
//! term that can reach genus <= G with at most E open legs, and only
//! finitely many monomials survive.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::feynman::{vertex_weight, Propagators};
use crate::mirror::VertexTable;
use crate::rat::{binomial, factorial, rint, Rat};
use crate::series::QSeries;

/// Keep-region for the quantization: exact for all (g, m, n) with
/// g <= genus_max and m + n <= legs_max.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Truncation {
    pub genus_max: u32,
    pub legs_max: u16,
}

impl Truncation {
    pub fn new(genus_max: u32, legs_max: u16) -> Self {
        assert!(genus_max >= 1, "quantization targets need genus >= 1");
        Truncation { genus_max, legs_max }
    }

    fn s_cap(self) -> i64 {
        2 * (self.genus_max as i64 - 1) + self.legs_max as i64
    }

    fn t_cap(self) -> i64 {
        3 * (self.genus_max as i64 - 1) + self.legs_max as i64
    }

    pub fn keep(self, a: i32, e: u16) -> bool {
        let (a, e) = (a as i64, e as i64);
        2 * a + e <= self.s_cap() && 3 * a + e <= self.t_cap()
    }

    /// Largest total valence m + n a vertex of genus g can carry inside
    /// the keep-region; the vertex table must be raised this far.
    pub fn vertex_capacity(self) -> BTreeMap<u32, u32> {
        let mut caps = BTreeMap::new();
        for g in 0..=self.genus_max {
            let a = g as i64 - 1;
            let e = (self.s_cap() - 2 * a).min(self.t_cap() - 3 * a);
            if e < 0 || 2 * a + e < 1 {
                continue;
            }
            caps.insert(g, e as u32);
        }
        caps
    }
}

/// Polynomial in hbar, x, y with q-series coefficients, truncated to a
/// keep-region. hbar carries exponent a >= -1 (genus 0 sits at a = -1);
/// keys are (a, m, n).
#[derive(Clone, Debug, PartialEq)]
pub struct MultiSeries {
    trunc: Truncation,
    order: usize,
    terms: BTreeMap<(i32, u16, u16), QSeries>,
}

impl MultiSeries {
    pub fn zero(trunc: Truncation, order: usize) -> Self {
        MultiSeries { trunc, order, terms: BTreeMap::new() }
    }

    pub fn one(trunc: Truncation, order: usize) -> Self {
        let mut out = Self::zero(trunc, order);
        out.add_term(0, 0, 0, QSeries::one(order));
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, a: i32, m: u16, n: u16) -> QSeries {
        self.terms
            .get(&(a, m, n))
            .cloned()
            .unwrap_or_else(|| QSeries::zero(self.order))
    }

    fn add_term(&mut self, a: i32, m: u16, n: u16, s: QSeries) {
        if s.is_zero() || !self.trunc.keep(a, m + n) {
            return;
        }
        match self.terms.entry((a, m, n)) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(s);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get() + &s;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn scaled(&self, c: &Rat) -> MultiSeries {
        let mut out = Self::zero(self.trunc, self.order);
        if c.is_zero() {
            return out;
        }
        for (&k, s) in &self.terms {
            out.terms.insert(k, s.scaled(c));
        }
        out
    }

    /// Smallest value of 2a + e among the terms; the nilpotence degree
    /// that makes exp and ln terminate.
    fn min_grade(&self) -> Option<i64> {
        self.terms
            .keys()
            .map(|&(a, m, n)| 2 * a as i64 + (m + n) as i64)
            .min()
    }

    /// e^self, requiring every monomial to have positive grade 2a + e so
    /// that the power series terminates inside the keep-region.
    pub fn exp(&self) -> Result<MultiSeries> {
        if self.min_grade().is_some_and(|g| g < 1) {
            return Err(Error::TruncationOverflow);
        }
        let mut out = Self::one(self.trunc, self.order);
        let mut power = Self::one(self.trunc, self.order);
        for k in 1..=(self.trunc.s_cap().max(1) as u32) {
            power = &power * self;
            power = power.scaled(&(Rat::one() / rint(k as i64)));
            if power.is_zero() {
                break;
            }
            out = &out + &power;
        }
        Ok(out)
    }

    /// ln(self) for series of the form 1 + (positive-grade part).
    pub fn ln(&self) -> Result<MultiSeries> {
        let mut rest = self.clone();
        match rest.terms.remove(&(0, 0, 0)) {
            Some(c) if c == QSeries::one(self.order) => {}
            _ => {
                return Err(Error::InvalidInput(
                    "logarithm needs constant term exactly 1".into(),
                ));
            }
        }
        if rest.min_grade().is_some_and(|g| g < 1) {
            return Err(Error::TruncationOverflow);
        }
        let mut out = Self::zero(self.trunc, self.order);
        let mut power = Self::one(self.trunc, self.order);
        for k in 1..=(self.trunc.s_cap().max(1) as u32) {
            power = &power * &rest;
            if power.is_zero() {
                break;
            }
            let sign = if k % 2 == 1 { Rat::one() } else { -Rat::one() };
            out = &out + &power.scaled(&(sign / rint(k as i64)));
        }
        Ok(out)
    }

    /// Substitutes y -> y + c x, the change of frame that relates the
    /// plain and modified propagators (with c = -E_psi).
    pub fn shift_y_by_x(&self, c: &QSeries) -> MultiSeries {
        let mut cpow = vec![QSeries::one(self.order)];
        let max_n = self.terms.keys().map(|&(_, _, n)| n).max().unwrap_or(0);
        for k in 1..=max_n as usize {
            let next = &cpow[k - 1] * c;
            cpow.push(next);
        }
        let mut out = Self::zero(self.trunc, self.order);
        for (&(a, m, n), s) in &self.terms {
            for k in 0..=n {
                let w = Rat::from_integer(binomial(n as u32, k as u32));
                out.add_term(
                    a,
                    m + k,
                    n - k,
                    (s * &cpow[k as usize]).scaled(&w),
                );
            }
        }
        out
    }
}

impl std::ops::Add for &MultiSeries {
    type Output = MultiSeries;
    fn add(self, rhs: &MultiSeries) -> MultiSeries {
        assert_eq!(self.trunc, rhs.trunc, "truncation mismatch");
        let mut out = self.clone();
        for (&(a, m, n), s) in &rhs.terms {
            out.add_term(a, m, n, s.clone());
        }
        out
    }
}

impl std::ops::Sub for &MultiSeries {
    type Output = MultiSeries;
    fn sub(self, rhs: &MultiSeries) -> MultiSeries {
        self + &rhs.scaled(&(-Rat::one()))
    }
}

impl std::ops::Mul for &MultiSeries {
    type Output = MultiSeries;
    fn mul(self, rhs: &MultiSeries) -> MultiSeries {
        assert_eq!(self.trunc, rhs.trunc, "truncation mismatch");
        let mut out = MultiSeries::zero(self.trunc, self.order);
        for (&(a1, m1, n1), s1) in &self.terms {
            for (&(a2, m2, n2), s2) in &rhs.terms {
                let (a, m, n) = (a1 + a2, m1 + m2, n1 + n2);
                if !self.trunc.keep(a, m + n) {
                    continue;
                }
                out.add_term(a, m, n, s1 * s2);
            }
        }
        out
    }
}

/// hbar V applied once: each x^m y^n loses two legs to a propagator and
/// gains a power of hbar.
pub fn apply_edge_operator(f: &MultiSeries, props: &Propagators) -> MultiSeries {
    let mut out = MultiSeries::zero(f.trunc, f.order);
    for (&(a, m, n), s) in &f.terms {
        let (mi, ni) = (m as i64, n as i64);
        if m >= 2 {
            let w = rint(mi * (mi - 1) / 2);
            out.add_term(a + 1, m - 2, n, (s * &props.e_phiphi).scaled(&w));
        }
        if m >= 1 && n >= 1 {
            let w = rint(mi * ni);
            out.add_term(a + 1, m - 1, n - 1, (s * &props.e_phipsi).scaled(&w));
        }
        if n >= 2 {
            let w = rint(ni * (ni - 1) / 2);
            out.add_term(a + 1, m, n - 2, (s * &props.e_psipsi).scaled(&w));
        }
    }
    out
}

/// e^{hbar V} f. Each application raises 3a + e, so the expansion dies
/// inside the keep-region after finitely many steps.
pub fn exp_edge_operator(f: &MultiSeries, props: &Propagators) -> MultiSeries {
    let mut out = f.clone();
    let mut power = f.clone();
    let mut k = 1u32;
    loop {
        power = apply_edge_operator(&power, props)
            .scaled(&(Rat::one() / rint(k as i64)));
        if power.is_zero() {
            return out;
        }
        out = &out + &power;
        k += 1;
    }
}

/// The generating function P of dilaton-shifted vertex potentials over
/// the keep-region. Vertices of genus above genus_max never occur in a
/// connected term of the target region, so the sum stops there.
pub fn vertex_potential(trunc: Truncation, table: &VertexTable) -> Result<MultiSeries> {
    let mut p = MultiSeries::zero(trunc, table.order());
    for g in 0..=trunc.genus_max {
        let a = g as i32 - 1;
        for m in 0..=u16::MAX {
            if !trunc.keep(a, m) {
                break;
            }
            for n in 0..=u16::MAX {
                if !trunc.keep(a, m + n) {
                    break;
                }
                if 2 * g as i64 + (m + n) as i64 <= 2 {
                    continue;
                }
                let w = vertex_weight(g, m as u32, n as u32, table)?;
                let scale = Rat::one()
                    / Rat::from_integer(factorial(m as u32) * factorial(n as u32));
                p.add_term(a, m, n, w.scaled(&scale));
            }
        }
    }
    Ok(p)
}

/// ln(e^{hbar V} e^P), sheared by y -> y - E_psi x at the end: the
/// connected master potential in the leg frame of the graph sums, whose
/// phi-legs each absorb a -E_psi psi-insertion.
pub fn master_bracket(
    trunc: Truncation,
    props: &Propagators,
    table: &VertexTable,
) -> Result<MultiSeries> {
    let p = vertex_potential(trunc, table)?;
    let plain = exp_edge_operator(&p.exp()?, props).ln()?;
    Ok(plain.shift_y_by_x(&(-&props.e_psi)))
}

/// Reads f^B_{g,m,n} off the bracket: m! n! times the (g-1, m, n)
/// coefficient.
pub fn bracket_coefficient(bracket: &MultiSeries, g: u32, m: u16, n: u16) -> QSeries {
    let w = Rat::from_integer(factorial(m as u32) * factorial(n as u32));
    bracket.coeff(g as i32 - 1, m, n).scaled(&w)
}
