//! Genus-by-genus solving of the potentials.
//!
//! At each genus the full graph sum is a polynomial in X; everything
//! except that polynomial ambiguity is determined by lower genera. The
//! ambiguity's constant term is fixed by the degree-0 invariant and its
//! higher coefficients by the invariants N_{g,1..3g-3}, through the
//! A-model change of coordinates. Genus 1 is special-cased on the
//! one-leg potential because F_1 itself carries a log term.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::classical::ClassicalData;
use crate::error::{Error, Result};
use crate::feynman::{graph_sum_b_nonleading, Gauge, Propagators};
use crate::mirror::{MirrorData, VertexTable};
use crate::rat::{rat, rint, Rat};
use crate::series::QSeries;
use crate::stable_graphs::enumerate;
use crate::xpoly::XPoly;

/// Outcome of solving one genus.
#[derive(Clone, Debug)]
pub struct SolveReport {
    pub genus: u32,
    pub gauge: Gauge,
    /// The fitted polynomial f_g (f_{1,1} at genus 1).
    pub ambiguity: XPoly,
    /// P_g, or P_{1,1} at genus 1.
    pub p_g: QSeries,
    /// Invariants N_{g,d} read off the re-expanded potential. Genus 1
    /// starts at d = 1; the log coefficient -25/12 is a constraint, not
    /// an invariant.
    pub invariants: Vec<(u32, Rat)>,
    /// q-orders of p_g beyond the data used in the fit. These are
    /// predictions; truncation-stability and gauge-independence checks
    /// confirm them.
    pub margin: usize,
}

/// Expresses a series as a polynomial in X of degree <= maxdeg and verifies
/// every remaining coefficient of the truncation. The system is triangular:
/// X^k starts at q^k with coefficient (-3125)^k.
pub fn fit_x_polynomial(
    s: &QSeries,
    md: &MirrorData,
    maxdeg: usize,
    margin: usize,
) -> Result<XPoly> {
    if s.order() < maxdeg + margin {
        return Err(Error::InvalidInput(format!(
            "series order {} cannot support degree {maxdeg} with margin {margin}",
            s.order()
        )));
    }
    let mut residual = s.clone();
    let mut xpow = QSeries::one(s.order());
    let mut coeffs = Vec::with_capacity(maxdeg + 1);
    for i in 0..=maxdeg {
        let ci = residual.coeff(i) / xpow.coeff(i);
        residual = &residual - &xpow.scaled(&ci);
        coeffs.push(ci);
        if i < maxdeg {
            xpow = &xpow * &md.x;
        }
    }
    for k in 0..=residual.order() {
        if !residual.coeff(k).is_zero() {
            return Err(Error::NotPolynomial { order: k });
        }
    }
    while coeffs.len() > 1 && coeffs.last().is_some_and(|c| c.is_zero()) {
        coeffs.pop();
    }
    Ok(XPoly::new(coeffs))
}

/// Re-expands I_0^{2g-2} (5Y)^{1-g} P_g in the A-model coordinate,
/// giving the potential whose Q^d coefficients are N_{g,d} (g >= 2).
pub fn a_model_potential(g: u32, p_g: &QSeries, md: &MirrorData) -> Result<QSeries> {
    assert!(g >= 2);
    let i0pow = md.i0.pow(2 * g - 2);
    let y5inv = md.y.scaled(&rint(5)).pow(g - 1).inv()?;
    md.to_q_coordinate(&(&(&i0pow * &y5inv) * p_g))
}

/// Genus-1 counterpart: P_{1,1}/I_11 re-expanded. Its constant term is the
/// log coefficient -25/12 and its Q^d coefficient is d N_{1,d}.
pub fn genus1_a_model(p11: &QSeries, md: &MirrorData) -> Result<QSeries> {
    md.to_q_coordinate(&(p11 * &md.i11.inv()?))
}

/// Largest phi-count any vertex of each genus can carry across the stable
/// graphs of genus g with up to `legs` legs. Raising the table this far
/// guarantees the graph sum never misses an entry.
pub fn required_vertex_capacity(g: u32, legs: u32) -> Result<BTreeMap<u32, u32>> {
    let mut cap: BTreeMap<u32, u32> = BTreeMap::new();
    for n in 0..=legs {
        if 2 * g as i64 - 2 + n as i64 <= 0 {
            continue;
        }
        for graph in enumerate(g, n)? {
            for v in 0..graph.num_vertices() {
                let need = graph.valence(v);
                let slot = cap.entry(graph.genera[v]).or_insert(0);
                *slot = (*slot).max(need);
            }
        }
    }
    Ok(cap)
}

/// Sequential solver: owns the vertex table and extends it genus by genus.
pub struct Solver<'a> {
    md: &'a MirrorData,
    classical: &'a ClassicalData,
    gauge: Gauge,
    props: Propagators,
    table: VertexTable,
    /// genus -> largest m the table must reach once that genus is solved
    capacity: BTreeMap<u32, u32>,
    solved: u32,
}

impl<'a> Solver<'a> {
    /// Solver sized for plain solving up to g_max (graph sums with at most
    /// one leg). Use `with_leg_capacity` when the table must also serve
    /// multi-leg sums.
    pub fn new(
        md: &'a MirrorData,
        gauge: Gauge,
        classical: &'a ClassicalData,
        g_max: u32,
    ) -> Result<Self> {
        Self::with_leg_capacity(md, gauge, classical, g_max, 1)
    }

    /// Solver whose table will support graph sums at every (g, m + n) with
    /// g <= g_max and m + n <= legs.
    pub fn with_leg_capacity(
        md: &'a MirrorData,
        gauge: Gauge,
        classical: &'a ClassicalData,
        g_max: u32,
        legs: u32,
    ) -> Result<Self> {
        let props = Propagators::new(md, &gauge)?;
        let mut capacity: BTreeMap<u32, u32> = BTreeMap::new();
        for g in 1..=g_max {
            for (h, m) in required_vertex_capacity(g, legs)? {
                let slot = capacity.entry(h).or_insert(0);
                *slot = (*slot).max(m);
            }
        }
        let mut table = VertexTable::new(md.order);
        table.seed_genus0(*capacity.get(&0).unwrap_or(&3), md);
        Ok(Solver { md, classical, gauge, props, table, capacity, solved: 0 })
    }

    pub fn table(&self) -> &VertexTable {
        &self.table
    }

    pub fn props(&self) -> &Propagators {
        &self.props
    }

    pub fn gauge(&self) -> &Gauge {
        &self.gauge
    }

    /// Solves every genus through g_max in order, returning the reports.
    pub fn solve_up_to(&mut self, g_max: u32) -> Result<Vec<SolveReport>> {
        let mut reports = Vec::new();
        for g in (self.solved + 1)..=g_max {
            reports.push(self.solve_next(g)?);
        }
        Ok(reports)
    }

    fn store(&mut self, g: u32, m0: u32, p: QSeries) {
        self.table.insert(g, m0, p);
        let cap = *self.capacity.get(&g).unwrap_or(&m0);
        self.table.raise_to(g, cap.max(m0), self.md);
        self.solved = g;
    }

    fn solve_next(&mut self, g: u32) -> Result<SolveReport> {
        assert_eq!(g, self.solved + 1, "genera must be solved in order");
        if g == 1 { self.solve_genus1() } else { self.solve_higher(g) }
    }

    /// Genus 1: fit f_{1,1} of degree <= 1 so that [q^0]P_{1,1} = -25/12
    /// and N_{1,1} matches the classical value.
    fn solve_genus1(&mut self) -> Result<SolveReport> {
        let md = self.md;
        let r = graph_sum_b_nonleading(1, 1, 0, &self.props, &self.table)?;
        let c0 = rat(-25, 12) + r.coeff(0);
        let base = &QSeries::constant(c0.clone(), md.order) - &r;
        let n11 = self
            .classical
            .invariant(1, 1)
            .ok_or(Error::InsufficientInitialData { genus: 1, missing_d: 1 })?;
        let have = genus1_a_model(&base, md)?.coeff(1).clone();
        let weight = genus1_a_model(&md.x, md)?.coeff(1).clone();
        debug_assert!(!weight.is_zero());
        let c1 = (n11 - have) / weight;
        let ambiguity = XPoly::new(vec![c0, c1]);
        let p11 = &ambiguity.eval(&md.x) - &r;
        let expanded = genus1_a_model(&p11, md)?;
        let invariants: Vec<(u32, Rat)> = (1..=md.order)
            .map(|d| (d as u32, expanded.coeff(d) / rint(d as i64)))
            .collect();
        let margin = md.order - 1;
        let report = SolveReport {
            genus: 1,
            gauge: self.gauge.clone(),
            ambiguity,
            p_g: p11.clone(),
            invariants,
            margin,
        };
        self.store(1, 1, p11);
        Ok(report)
    }

    /// Genus >= 2: fit f_g of degree <= 3g-3 against N_{g,0..3g-3}.
    fn solve_higher(&mut self, g: u32) -> Result<SolveReport> {
        let md = self.md;
        let r = graph_sum_b_nonleading(g, 0, 0, &self.props, &self.table)?;
        let dmax = 3 * g as usize - 3;
        if md.order < dmax {
            return Err(Error::InvalidInput(format!(
                "order {} cannot fit a degree-{dmax} ambiguity",
                md.order
            )));
        }
        let n_g0 = self
            .classical
            .invariant(g, 0)
            .ok_or(Error::InsufficientInitialData { genus: g, missing_d: 0 })?;
        let five_pow = rint(5).pow(g as i32 - 1);
        let c0 = five_pow * n_g0 + r.coeff(0);
        let mut coeffs = vec![c0];
        let mut xpow = md.x.clone();
        for d in 1..=dmax {
            let target = self.classical.invariant(g, d as u32).ok_or(
                Error::InsufficientInitialData { genus: g, missing_d: d as u32 },
            )?;
            let partial = &XPoly::new(coeffs.clone()).eval(&md.x) - &r;
            let have = a_model_potential(g, &partial, md)?.coeff(d).clone();
            let weight = a_model_potential(g, &xpow, md)?.coeff(d).clone();
            if weight.is_zero() {
                return Err(Error::KernelDetected);
            }
            coeffs.push((target - have) / weight);
            if d < dmax {
                xpow = &xpow * &md.x;
            }
        }
        let ambiguity = XPoly::new(coeffs);
        let p_g = &ambiguity.eval(&md.x) - &r;
        let expanded = a_model_potential(g, &p_g, md)?;
        let invariants: Vec<(u32, Rat)> = (0..=md.order)
            .map(|d| (d as u32, expanded.coeff(d).clone()))
            .collect();
        let margin = md.order - dmax;
        let report = SolveReport {
            genus: g,
            gauge: self.gauge.clone(),
            ambiguity,
            p_g: p_g.clone(),
            invariants,
            margin,
        };
        self.store(g, 0, p_g);
        Ok(report)
    }
}
