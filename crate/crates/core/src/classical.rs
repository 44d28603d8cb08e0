//! Classical contributions: degree-0 invariants, multiple covers, and the
//! low-degree invariants that seed the genus-by-genus solve.
//!
//! The degree-0 invariant of the quintic (Euler characteristic -200) is
//!
//!   N_{g,0} = (-1)^g chi |B_{2g}| |B_{2g-2}| / (2 * 2g * (2g-2) * (2g-2)!),
//!
//! and degree-d invariants up to d = 3 are assembled from the instanton
//! numbers n_1, n_2, n_3 through the multiple-cover series
//! sum_h C_0(h,1) t^{2h} = ((sin(t/2))/(t/2))^{-2}, with
//! C_0(h,d) = d^{2h-3} C_0(h,1) and C_1(h,1) = 0.

use std::collections::BTreeMap;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rat::{binomial, parse_rat, rint, Rat};

#[cfg(test)]
use crate::rat::rat;

/// Euler characteristic of the quintic threefold.
pub const CHI: i64 = -200;

/// B_n in the t/(e^t - 1) convention, by the standard recurrence
/// sum_{j=0}^{n} C(n+1, j) B_j = 0.
pub fn bernoulli(n: u32) -> Rat {
    bernoulli_table(n)[n as usize].clone()
}

fn bernoulli_table(n_max: u32) -> Vec<Rat> {
    let mut b: Vec<Rat> = Vec::with_capacity(n_max as usize + 1);
    b.push(Rat::one());
    for n in 1..=n_max {
        let mut s = Rat::zero();
        for j in 0..n {
            s += Rat::from_integer(binomial(n + 1, j)) * &b[j as usize];
        }
        b.push(-s / Rat::from_integer((n + 1).into()));
    }
    b
}

/// Same numbers from the series definition t/(e^t - 1): inverts
/// (e^t - 1)/t term by term. Used as an independent cross-check.
pub fn bernoulli_by_series(n_max: u32) -> Vec<Rat> {
    // (e^t - 1)/t has coefficients 1/(k+1)!.
    let n = n_max as usize;
    let mut inv = vec![Rat::zero(); n + 1];
    inv[0] = Rat::one();
    for k in 1..=n {
        let mut s = Rat::zero();
        for j in 1..=k {
            let c = Rat::from_integer(crate::rat::factorial(j as u32 + 1)).recip();
            s += c * &inv[k - j];
        }
        inv[k] = -s;
    }
    (0..=n)
        .map(|k| &inv[k] * Rat::from_integer(crate::rat::factorial(k as u32)))
        .collect()
}

/// Degree-0 invariant N_{g,0} for g >= 2.
pub fn n_g0(g: u32) -> Rat {
    assert!(g >= 2);
    let sign = if g % 2 == 0 { rint(1) } else { rint(-1) };
    let b2g = bernoulli(2 * g).abs();
    let b2g2 = bernoulli(2 * g - 2).abs();
    let denom = rint(2) * rint(2 * g as i64) * rint(2 * g as i64 - 2)
        * Rat::from_integer(crate::rat::factorial(2 * g - 2));
    sign * rint(CHI) * b2g * b2g2 / denom
}

/// Genus-0 multiple-cover contribution C_0(h, d) of a degree-1 rational
/// curve to N_{h, d}.
pub fn multiple_cover_c0(h: u32, d: u32) -> Rat {
    assert!(d >= 1);
    let c_h1 = sin_half_expansion(h);
    // d^{2h-3} with 2h-3 possibly negative.
    let e = 2 * h as i64 - 3;
    let scale = if e >= 0 {
        rint(d as i64).pow(e as i32)
    } else {
        rint(d as i64).pow((-e) as i32).recip()
    };
    c_h1 * scale
}

/// [t^{2h}] of ((sin(t/2))/(t/2))^{-2}.
fn sin_half_expansion(h: u32) -> Rat {
    // s(t) = sum_k (-1)^k t^{2k} / (4^k (2k+1)!), then invert and square.
    let n = h as usize;
    let mut s = vec![Rat::zero(); n + 1];
    for k in 0..=n {
        let sign = if k % 2 == 0 { rint(1) } else { rint(-1) };
        let denom = rint(4).pow(k as i32) * Rat::from_integer(crate::rat::factorial(2 * k as u32 + 1));
        s[k] = sign / denom;
    }
    let mut inv = vec![Rat::zero(); n + 1];
    inv[0] = Rat::one();
    for k in 1..=n {
        let mut acc = Rat::zero();
        for j in 1..=k {
            acc += &s[j] * &inv[k - j];
        }
        inv[k] = -acc;
    }
    let mut sq = Rat::zero();
    for j in 0..=n {
        sq += &inv[j] * &inv[n - j];
    }
    sq
}

/// Initial data for the solver: instanton numbers n_1..n_3 plus any
/// externally supplied invariants (required for genus >= 3).
#[derive(Clone, Debug)]
pub struct ClassicalData {
    n_instanton: [Rat; 3],
    extra: BTreeMap<(u32, u32), Rat>,
}

impl Default for ClassicalData {
    fn default() -> Self {
        ClassicalData {
            n_instanton: [rint(2875), rint(609_250), rint(317_206_375)],
            extra: BTreeMap::new(),
        }
    }
}

impl ClassicalData {
    /// Registers an externally supplied invariant N_{g,d}.
    pub fn supply(&mut self, g: u32, d: u32, value: Rat) {
        self.extra.insert((g, d), value);
    }

    /// Parses lines of the form "g d num/den" (blank lines and lines
    /// starting with '#' are skipped) and registers them.
    pub fn supply_from_text(&mut self, text: &str) -> Result<usize> {
        let mut count = 0;
        for (lineno, line) in text.lines().enumerate() {
            let t = line.trim();
            if t.is_empty() || t.starts_with('#') {
                continue;
            }
            let fields: Vec<&str> = t.split_whitespace().collect();
            if fields.len() != 3 {
                return Err(Error::InvalidInput(format!(
                    "initial-data line {}: expected 'g d value'",
                    lineno + 1
                )));
            }
            let g: u32 = fields[0].parse().map_err(|_| {
                Error::InvalidInput(format!("initial-data line {}: bad genus", lineno + 1))
            })?;
            let d: u32 = fields[1].parse().map_err(|_| {
                Error::InvalidInput(format!("initial-data line {}: bad degree", lineno + 1))
            })?;
            self.supply(g, d, parse_rat(fields[2])?);
            count += 1;
        }
        Ok(count)
    }

    pub fn instanton(&self, d: u32) -> Option<&Rat> {
        self.n_instanton.get(d as usize - 1)
    }

    /// The invariant N_{g,d} if this data set determines it: degree 0 from
    /// the constant-map formula, degrees 1..3 from multiple covers (for
    /// g <= 2), explicit extras otherwise.
    pub fn invariant(&self, g: u32, d: u32) -> Option<Rat> {
        if let Some(v) = self.extra.get(&(g, d)) {
            return Some(v.clone());
        }
        if d == 0 {
            return (g >= 2).then(|| n_g0(g));
        }
        // Multiple covers of the degree <= 3 rational instantons account
        // for all of N_{0,1..3}, N_{1,1} and N_{2,1..3}; at (1, d >= 2)
        // elliptic curves start contributing, so nothing is derived there.
        let covered = g == 0 && d <= 3 || g == 1 && d == 1 || g == 2 && d <= 3;
        if covered {
            let mut acc = Rat::zero();
            for k in 1..=d {
                if d % k == 0 {
                    acc += &self.n_instanton[k as usize - 1]
                        * multiple_cover_c0(g, d / k);
                }
            }
            return Some(acc);
        }
        None
    }
}
