//! Polynomials in the generator X = -5^5 q / (1 - 5^5 q).
//!
//! Ambiguities of the Feynman rule and gauge entries live here. An `XPoly`
//! is dense in the exponent, constant coefficient first.

use num_traits::Zero;

use crate::rat::{format_rat, Rat};
use crate::series::QSeries;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct XPoly {
    coeffs: Vec<Rat>,
}

impl XPoly {
    /// Coefficients c_0, c_1, ... of c_0 + c_1 X + ... Trailing zeros are kept
    /// as given; `degree` reports the true degree.
    pub fn new(coeffs: Vec<Rat>) -> Self {
        if coeffs.is_empty() {
            return XPoly { coeffs: vec![Rat::zero()] };
        }
        XPoly { coeffs }
    }

    pub fn zero() -> Self {
        XPoly { coeffs: vec![Rat::zero()] }
    }

    pub fn constant(c: Rat) -> Self {
        XPoly { coeffs: vec![c] }
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Rat {
        self.coeffs.get(k).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn constant_term(&self) -> &Rat {
        &self.coeffs[0]
    }

    /// Degree of the nonzero part; 0 for the zero polynomial.
    pub fn degree(&self) -> usize {
        self.coeffs.iter().rposition(|c| !c.is_zero()).unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Rat::is_zero)
    }

    /// Evaluates at the series X (Horner).
    pub fn eval(&self, x: &QSeries) -> QSeries {
        let mut acc = QSeries::zero(x.order());
        for c in self.coeffs.iter().rev() {
            acc = &acc * x;
            if !c.is_zero() {
                acc = &acc + &QSeries::constant(c.clone(), x.order());
            }
        }
        acc
    }

    pub fn add(&self, other: &XPoly) -> XPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|k| self.coeff(k) + other.coeff(k)).collect();
        XPoly { coeffs }
    }

    pub fn sub(&self, other: &XPoly) -> XPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|k| self.coeff(k) - other.coeff(k)).collect();
        XPoly { coeffs }
    }
}

impl std::fmt::Display for XPoly {
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
                0 => write!(f, "{}", format_rat(c))?,
                1 => write!(f, "({})*X", format_rat(c))?,
                _ => write!(f, "({})*X^{k}", format_rat(c))?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{rat, rint};

    #[test]
    fn eval_and_degree() {
        // X stand-in: use x = q for a structural check.
        let x = QSeries::q(6);
        let p = XPoly::new(vec![rint(2), rat(-1, 3), Rat::zero(), rint(5)]);
        assert_eq!(p.degree(), 3);
        let s = p.eval(&x);
        assert_eq!(s.coeff(0), &rint(2));
        assert_eq!(s.coeff(1), &rat(-1, 3));
        assert_eq!(s.coeff(3), &rint(5));
        assert_eq!(format!("{p}"), "2 + (-1/3)*X + (5)*X^3");
    }
}
