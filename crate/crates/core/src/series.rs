//! Truncated formal power series in q over exact rationals.
//!
//! A `QSeries` stores coefficients of q^0 .. q^order densely. Binary
//! operations truncate to the smaller order of the two operands, so a
//! coefficient is never fabricated beyond what both inputs determine.
//! Equality compares coefficients up to the common order.

use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::rat::Rat;

#[derive(Clone, Debug)]
pub struct QSeries {
    coeffs: Vec<Rat>,
}

impl QSeries {
    /// Series from explicit coefficients c[0] + c[1] q + ...; the order is
    /// coeffs.len() - 1.
    pub fn from_coeffs(coeffs: Vec<Rat>) -> Self {
        assert!(!coeffs.is_empty(), "a series carries at least q^0");
        QSeries { coeffs }
    }

    pub fn zero(order: usize) -> Self {
        QSeries { coeffs: vec![Rat::zero(); order + 1] }
    }

    pub fn one(order: usize) -> Self {
        Self::constant(Rat::one(), order)
    }

    pub fn constant(c: Rat, order: usize) -> Self {
        let mut coeffs = vec![Rat::zero(); order + 1];
        coeffs[0] = c;
        QSeries { coeffs }
    }

    /// The series q (requires order >= 1).
    pub fn q(order: usize) -> Self {
        assert!(order >= 1);
        let mut coeffs = vec![Rat::zero(); order + 1];
        coeffs[1] = Rat::one();
        QSeries { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Coefficient of q^k; k must be within the truncation.
    pub fn coeff(&self, k: usize) -> &Rat {
        assert!(k <= self.order(), "coefficient q^{k} beyond truncation order {}", self.order());
        &self.coeffs[k]
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Rat::is_zero)
    }

    /// Shrinks to the given order. Extending is forbidden: higher
    /// coefficients are unknown.
    pub fn truncated(&self, order: usize) -> QSeries {
        assert!(order <= self.order(), "cannot extend a truncated series");
        QSeries { coeffs: self.coeffs[..=order].to_vec() }
    }

    pub fn scaled(&self, c: &Rat) -> QSeries {
        if c.is_zero() {
            return QSeries::zero(self.order());
        }
        QSeries { coeffs: self.coeffs.iter().map(|a| a * c).collect() }
    }

    pub fn pow(&self, mut e: u32) -> QSeries {
        let mut base = self.clone();
        let mut acc = QSeries::one(self.order());
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Multiplicative inverse; the constant term must be nonzero.
    pub fn inv(&self) -> Result<QSeries> {
        let c0 = &self.coeffs[0];
        if c0.is_zero() {
            return Err(Error::ZeroConstantTerm);
        }
        let n = self.order();
        let mut out = vec![Rat::zero(); n + 1];
        let c0inv = c0.recip();
        out[0] = c0inv.clone();
        for k in 1..=n {
            let mut s = Rat::zero();
            for j in 1..=k {
                if !self.coeffs[j].is_zero() && !out[k - j].is_zero() {
                    s += &self.coeffs[j] * &out[k - j];
                }
            }
            out[k] = -(s * &c0inv);
        }
        Ok(QSeries { coeffs: out })
    }

    /// The operator D = q d/dq (order is preserved).
    pub fn d(&self) -> QSeries {
        let mut out = self.coeffs.clone();
        for (k, c) in out.iter_mut().enumerate() {
            *c *= Rat::from_integer(k.into());
        }
        QSeries { coeffs: out }
    }

    /// exp of a series with zero constant term.
    pub fn exp(&self) -> Result<QSeries> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::BadConstantTerm);
        }
        let n = self.order();
        let mut out = vec![Rat::zero(); n + 1];
        out[0] = Rat::one();
        // e' = a' e termwise: k e_k = sum_{j=1..k} j a_j e_{k-j}.
        for k in 1..=n {
            let mut s = Rat::zero();
            for j in 1..=k {
                if !self.coeffs[j].is_zero() && !out[k - j].is_zero() {
                    s += &self.coeffs[j] * &out[k - j] * Rat::from_integer(j.into());
                }
            }
            out[k] = s / Rat::from_integer(k.into());
        }
        Ok(QSeries { coeffs: out })
    }

    /// log of a series with constant term 1.
    pub fn log(&self) -> Result<QSeries> {
        if !self.coeffs[0].is_one() {
            return Err(Error::BadConstantTerm);
        }
        let n = self.order();
        // l' = a'/a, integrated coefficientwise with l_0 = 0.
        let da = self.d();
        let ratio = &da * &self.inv()?;
        let mut out = vec![Rat::zero(); n + 1];
        for k in 1..=n {
            out[k] = ratio.coeffs[k].clone() / Rat::from_integer(k.into());
        }
        Ok(QSeries { coeffs: out })
    }

    /// self(inner); the inner series must have zero constant term.
    pub fn compose(&self, inner: &QSeries) -> Result<QSeries> {
        if !inner.coeffs[0].is_zero() {
            return Err(Error::BadConstantTerm);
        }
        let order = self.order().min(inner.order());
        let mut acc = QSeries::zero(order);
        // Horner from the top coefficient down.
        for k in (0..=order).rev() {
            acc = &acc * &inner.truncated(order);
            acc.coeffs[0] += &self.coeffs[k];
        }
        Ok(acc)
    }

    /// Compositional inverse of a series of the form q + O(q^2):
    /// returns b with self(b(Q)) = Q + O(Q^{order+1}).
    pub fn revert_monic(&self) -> Result<QSeries> {
        if !self.coeffs[0].is_zero() || !self.coeffs[1].is_one() {
            return Err(Error::NotMonic);
        }
        let n = self.order();
        let mut b = QSeries::zero(n);
        b.coeffs[1] = Rat::one();
        // b_k is fixed by requiring [Q^k] self(b) = 0 for k >= 2; since
        // self = q + O(q^2), the coefficient of Q^k in self(b) is
        // b_k + (terms in b_{<k}).
        for k in 2..=n {
            let comp = self.truncated(k).compose(&b.truncated(k))?;
            b.coeffs[k] = -comp.coeffs[k].clone();
        }
        Ok(b)
    }
}

impl PartialEq for QSeries {
    /// Coefficientwise equality up to the common truncation order.
    fn eq(&self, other: &Self) -> bool {
        let n = self.order().min(other.order());
        self.coeffs[..=n] == other.coeffs[..=n]
    }
}

impl Add for &QSeries {
    type Output = QSeries;
    fn add(self, rhs: &QSeries) -> QSeries {
        let n = self.order().min(rhs.order());
        let coeffs = (0..=n).map(|k| &self.coeffs[k] + &rhs.coeffs[k]).collect();
        QSeries { coeffs }
    }
}

impl Sub for &QSeries {
    type Output = QSeries;
    fn sub(self, rhs: &QSeries) -> QSeries {
        let n = self.order().min(rhs.order());
        let coeffs = (0..=n).map(|k| &self.coeffs[k] - &rhs.coeffs[k]).collect();
        QSeries { coeffs }
    }
}

impl Mul for &QSeries {
    type Output = QSeries;
    fn mul(self, rhs: &QSeries) -> QSeries {
        let n = self.order().min(rhs.order());
        let mut out = vec![Rat::zero(); n + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(n + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate().take(n + 1 - i) {
                if !b.is_zero() {
                    out[i + j] += a * b;
                }
            }
        }
        QSeries { coeffs: out }
    }
}

impl Neg for &QSeries {
    type Output = QSeries;
    fn neg(self) -> QSeries {
        QSeries { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

macro_rules! forward_owned {
    ($trait:ident, $method:ident) => {
        impl $trait for QSeries {
            type Output = QSeries;
            fn $method(self, rhs: QSeries) -> QSeries {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&QSeries> for QSeries {
            type Output = QSeries;
            fn $method(self, rhs: &QSeries) -> QSeries {
                (&self).$method(rhs)
            }
        }
        impl $trait<QSeries> for &QSeries {
            type Output = QSeries;
            fn $method(self, rhs: QSeries) -> QSeries {
                self.$method(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for QSeries {
    type Output = QSeries;
    fn neg(self) -> QSeries {
        -&self
    }
}

impl std::fmt::Display for QSeries {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})*q")?,
                _ => write!(f, "({c})*q^{k}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O(q^{})", self.order() + 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{rat, rint};

    fn geom(order: usize) -> QSeries {
        // 1/(1-q) = 1 + q + q^2 + ...
        QSeries::from_coeffs(vec![Rat::one(); order + 1])
    }

    #[test]
    fn inverse_of_one_minus_q_is_geometric() {
        let one_minus_q = &QSeries::one(12) - &QSeries::q(12);
        assert_eq!(one_minus_q.inv().unwrap(), geom(12));
        assert!(QSeries::q(5).inv().is_err());
    }

    #[test]
    fn min_order_truncation() {
        let a = QSeries::one(10);
        let b = geom(4);
        assert_eq!((&a * &b).order(), 4);
        assert_eq!((&a + &b).order(), 4);
    }

    #[test]
    fn log_one_minus_q_is_mercator() {
        let one_minus_q = &QSeries::one(8) - &QSeries::q(8);
        let l = one_minus_q.log().unwrap();
        for k in 1..=8usize {
            assert_eq!(l.coeff(k), &rat(-1, k as i64));
        }
        let back = l.exp().unwrap();
        assert_eq!(back, one_minus_q);
    }

    #[test]
    fn exp_log_roundtrip_requires_constants() {
        assert!(QSeries::one(4).exp().is_err());
        assert!(QSeries::q(4).log().is_err());
    }

    #[test]
    fn d_is_a_derivation() {
        let a = geom(9);
        let b = &QSeries::one(9) + &QSeries::q(9);
        let lhs = (&a * &b).d();
        let rhs = &a.d() * &b + &a * &b.d();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn reversion_of_q_plus_q2_gives_signed_catalans() {
        // Inverse of q + q^2 is Q - Q^2 + 2Q^3 - 5Q^4 + 14Q^5 - ...
        let mut a = QSeries::zero(8);
        a = &a + &QSeries::q(8);
        let mut coeffs = a.coeffs().to_vec();
        coeffs[2] = Rat::one();
        let a = QSeries::from_coeffs(coeffs);
        let b = a.revert_monic().unwrap();
        let catalan = [1i64, 1, 2, 5, 14, 42, 132, 429];
        for k in 1..=8usize {
            let expect = rint(if k % 2 == 1 { catalan[k - 1] } else { -catalan[k - 1] });
            assert_eq!(b.coeff(k), &expect);
        }
        // Round trip both ways.
        let q = QSeries::q(8);
        assert_eq!(a.compose(&b).unwrap(), q);
        assert_eq!(b.compose(&a).unwrap(), q);
    }

    #[test]
    fn reversion_matches_lagrange_inversion() {
        // b_k = (1/k) [t^{k-1}] (t/a(t))^k, computed independently.
        let n = 10usize;
        let mut coeffs = vec![Rat::zero(); n + 1];
        coeffs[1] = Rat::one();
        coeffs[2] = rat(3, 2);
        coeffs[3] = rat(-1, 3);
        coeffs[5] = rat(7, 5);
        let a = QSeries::from_coeffs(coeffs);
        let b = a.revert_monic().unwrap();
        // t/a(t) = 1/(1 + c2 t + c3 t^2 + ...)
        let shifted = QSeries::from_coeffs(a.coeffs()[1..].to_vec());
        let base = shifted.inv().unwrap();
        for k in 1..=n - 1 {
            let p = base.pow(k as u32);
            let expect = p.coeff(k - 1) / rint(k as i64);
            assert_eq!(b.coeff(k), &expect, "k = {k}");
        }
    }

    #[test]
    fn composition_requires_zero_inner_constant() {
        let a = geom(4);
        assert!(a.compose(&QSeries::one(4)).is_err());
        let id = QSeries::q(4);
        assert_eq!(a.compose(&id).unwrap(), a);
    }

    #[test]
    fn equality_up_to_common_order() {
        let a = geom(3);
        let mut coeffs = geom(6).coeffs().to_vec();
        coeffs[5] = rint(99);
        let b = QSeries::from_coeffs(coeffs);
        assert_eq!(a, b);
        assert_ne!(geom(6), b);
    }
}
