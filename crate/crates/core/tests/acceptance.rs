//! Acceptance suite. Each test is one criterion and prints a single
//! pass line with the values it checked; the harness line is the
//! pass/fail verdict. Shared fixtures are built once per process.
//!
//! Every polynomial fit in this suite carries a margin of at least ten
//! verified q-orders beyond the unknowns.

use std::collections::BTreeMap;
use std::sync::OnceLock;
use std::time::{Duration, Instant};

use num_traits::One;

use quintic_gw::classical::{n_g0, ClassicalData};
use quintic_gw::feynman::{
    graph_sum_a, graph_sum_b, graph_sum_modified_nonleading, Gauge, Propagators,
};
use quintic_gw::gen_ring::{raise_gen, verify_hae, Basis, GenPoly, HaeCheck};
use quintic_gw::mirror::{build_mirror, MirrorData, VertexTable};
use quintic_gw::quantize::{bracket_coefficient, master_bracket, Truncation};
use quintic_gw::rat::{rat, rint, Rat};
use quintic_gw::reference;
use quintic_gw::series::QSeries;
use quintic_gw::solver::{
    a_model_potential, fit_x_polynomial, required_vertex_capacity, SolveReport, Solver,
};
use quintic_gw::stable_graphs::{enumerate, labeled_census_check};
use quintic_gw::xpoly::XPoly;

/// A full genus-2 solve plus everything the checks read off it.
struct Solved {
    md: MirrorData,
    reports: Vec<SolveReport>,
    props: Propagators,
    table: VertexTable,
}

fn solve_fixture(order: usize, gauge: Gauge, legs: u32) -> Solved {
    let md = build_mirror(order).expect("mirror data");
    let classical = ClassicalData::default();
    let mut solver =
        Solver::with_leg_capacity(&md, gauge, &classical, 2, legs).expect("solver");
    let reports = solver.solve_up_to(2).expect("solve");
    let props = solver.props().clone();
    let table = solver.table().clone();
    Solved { md, reports, props, table }
}

fn zero25() -> &'static Solved {
    static FX: OnceLock<Solved> = OnceLock::new();
    FX.get_or_init(|| solve_fixture(25, Gauge::zero(), 2))
}

fn special25() -> &'static Solved {
    static FX: OnceLock<Solved> = OnceLock::new();
    FX.get_or_init(|| solve_fixture(25, Gauge::special(), 1))
}

fn md30() -> &'static MirrorData {
    static MD: OnceLock<MirrorData> = OnceLock::new();
    MD.get_or_init(|| build_mirror(30).expect("mirror data"))
}

/// Deterministic gauge stream: small rational coefficients from a 64-bit
/// LCG, within the degree bounds (1, 1, 2, 3).
fn pseudo_random_gauges(count: usize) -> Vec<Gauge> {
    let mut state: u64 = 0x9e37_79b9_7f4a_7c15;
    let mut next = move || {
        state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        (state >> 33) as i64
    };
    let mut xpoly = |len: usize| {
        XPoly::new(
            (0..len)
                .map(|_| {
                    let n = next().rem_euclid(9) - 4;
                    let d = 1 + next().rem_euclid(7);
                    rat(n, d)
                })
                .collect(),
        )
    };
    (0..count)
        .map(|_| {
            let g = Gauge {
                c1a: xpoly(2),
                c1b: xpoly(2),
                c2: xpoly(3),
                c3: xpoly(4),
            };
            g.validate().expect("generated gauge in bounds");
            g
        })
        .collect()
}

fn random16() -> &'static Vec<Solved> {
    static FX: OnceLock<Vec<Solved>> = OnceLock::new();
    FX.get_or_init(|| {
        pseudo_random_gauges(3)
            .into_iter()
            .map(|g| solve_fixture(16, g, 2))
            .collect()
    })
}

/// Order-12 zero-gauge table raised to the capacity of the (3, 3)
/// truncation, with the genus-3 vertex entry reconstructed from the
/// ring form (the oracle identity holds for any consistent table).
fn oracle12() -> &'static Solved {
    static FX: OnceLock<Solved> = OnceLock::new();
    FX.get_or_init(|| {
        let mut fx = solve_fixture(12, Gauge::zero(), 1);
        let p3 = &reference::p3_generator().eval(&fx.md)
            + &QSeries::constant(reference::f30(), fx.md.order);
        fx.table.insert(3, 0, p3);
        for (g, cap) in Truncation::new(3, 3).vertex_capacity() {
            if g == 0 {
                fx.table.seed_genus0(cap.max(3), &fx.md);
            } else {
                fx.table.raise_to(g, cap, &fx.md);
            }
        }
        fx
    })
}

fn assert_series_eq(lhs: &QSeries, rhs: &QSeries, what: &str) {
    let order = lhs.order().min(rhs.order());
    for k in 0..=order {
        assert_eq!(lhs.coeff(k), rhs.coeff(k), "{what}: q^{k}");
    }
}

#[test]
fn criterion_01_genus0_instantons() {
    let t0 = Instant::now();
    let md = build_mirror(12).expect("mirror data");
    let f0 = md.genus0_potential().expect("genus-0 potential");
    // N_{0,d} = sum over k | d of n_{d/k} / k^3; invert for d <= 3.
    let n1 = f0.coeff(1).clone();
    let n2 = f0.coeff(2) - &n1 / rint(8);
    let n3 = f0.coeff(3) - &n1 / rint(27);
    let elapsed = t0.elapsed();
    assert_eq!(n1, rint(2875));
    assert_eq!(n2, rint(609_250));
    assert_eq!(n3, rint(317_206_375));
    assert!(
        elapsed < Duration::from_secs(5),
        "genus-0 run took {elapsed:?}"
    );
    println!(
        "criterion 01 pass: n1 = 2875, n2 = 609250, n3 = 317206375 at order 12 in {elapsed:?}"
    );
}

#[test]
fn criterion_02_generator_relations() {
    let md = md30();
    let two_fifths = QSeries::constant(rat(2, 5), md.order);

    // A_2 = 2B^2 - 2AB - 4B_2 - X(A + 2B + 2/5), with A_2 = DA + A^2.
    let a2 = &md.a.d() + &(&md.a * &md.a);
    let rhs = &(&(&md.b1 * &md.b1).scaled(&rint(2)) - &(&md.a * &md.b1).scaled(&rint(2)))
        - &(&md.b2.scaled(&rint(4))
            + &(&md.x * &(&(&md.a + &md.b1.scaled(&rint(2))) + &two_fifths)));
    assert_series_eq(&a2, &rhs, "A_2 relation");

    // B_4 = -X (2B_3 + (7/5)B_2 + (2/5)B + 24/625).
    let inner = &(&md.b3.scaled(&rint(2)) + &md.b2.scaled(&rat(7, 5)))
        + &(&md.b1.scaled(&rat(2, 5)) + &QSeries::constant(rat(24, 625), md.order));
    let rhs4 = -&(&md.x * &inner);
    assert_series_eq(&md.b4, &rhs4, "B_4 relation");

    // D-closure of the modified zero-gauge generators.
    let [e1, e2, e3, _b, x] = Basis::E.generator_series(md);
    let de1 = &(-&(&x * &e1) - &x.scaled(&rat(2, 5))) - &(&(&e1 * &e1) - &e2.scaled(&rint(2)));
    assert_series_eq(&e1.d(), &de1, "D E_1");
    let de2 = &(-&(&x * &e2) - &(&e1 * &e2)) + &e3;
    assert_series_eq(&e2.d(), &de2, "D E_2");
    let de3 = &(&x.scaled(&rat(24, 625)) - &(&x * &e3)) - &(&e2 * &e2);
    assert_series_eq(&e3.d(), &de3, "D E_3");

    println!("criterion 02 pass: generator relations and D-closure hold to order 30");
}

#[test]
fn criterion_03_p03_is_one() {
    let md = md30();
    let p03 = md.vertex_p03().expect("P_{0,3}");
    assert_series_eq(&p03, &QSeries::one(md.order), "P_{0,3}");
    println!("criterion 03 pass: P_{{0,3}} = 1 to order 30");
}

#[test]
fn criterion_04_genus1() {
    let fx = special25();
    let r1 = &fx.reports[0];
    assert_eq!(r1.ambiguity, XPoly::new(vec![rat(-107, 60), rat(-1, 12)]));
    assert_series_eq(&r1.p_g, &reference::p11().eval(&fx.md), "P_{1,1}");
    println!(
        "criterion 04 pass: f_1 = -X/12 - 107/60, P_{{1,1}} = -A/2 - 31B/3 - X/12 - 25/12 to order 25"
    );
}

#[test]
fn criterion_05_genus2() {
    let sp = special25();
    let zr = zero25();

    let special_f2 =
        XPoly::new(vec![rat(-11771, 7200), rat(487, 300), rat(113, 7200), rat(-1, 240)]);
    assert_eq!(sp.reports[1].ambiguity, special_f2);

    // Zero-gauge ambiguity, recovered independently through the modified
    // rule: f_2 = P_2 + (modified nonleading sum).
    let zero_f2 =
        XPoly::new(vec![rat(-25, 144), rat(5759, 3600), rat(-41, 3600), rat(-1, 240)]);
    assert_eq!(zr.reports[1].ambiguity, zero_f2);
    let r2_mod =
        graph_sum_modified_nonleading(2, 0, 0, &zr.props, &zr.table).expect("modified sum");
    let refit = fit_x_polynomial(&(&zr.reports[1].p_g + &r2_mod), &zr.md, 3, 10)
        .expect("modified-rule fit");
    assert_eq!(refit, zero_f2);

    // The solved series is the generator polynomial.
    assert_series_eq(&zr.reports[1].p_g, &reference::p2().eval(&zr.md), "P_2 (zero gauge)");
    assert_series_eq(&sp.reports[1].p_g, &reference::p2().eval(&sp.md), "P_2 (special gauge)");

    // Closed form of F_2 in the special-gauge propagators.
    let md = &sp.md;
    let order = md.order;
    let tpp = &sp.props.e_phiphi;
    let tp = &sp.props.e_phipsi;
    let t = &sp.props.e_psipsi;
    let b = &md.b1;
    let x = &md.x;
    let cnst = |r: Rat| QSeries::constant(r, order);
    let tp_coeff = &(&(&x.scaled(&rint(25)) + &cnst(rint(535))).scaled(&rat(1, 36))
        + &b.scaled(&rat(700, 9)))
        + &tpp.scaled(&rat(25, 6));
    let tpp2_coeff = (&(&b.scaled(&rint(25)) + x) + &cnst(rint(4))).scaled(&rat(1, 6));
    let tpp_coeff = &(&(&(&(x * x).scaled(&rint(65)) + &x.scaled(&rint(46))) + &cnst(rint(2129)))
        .scaled(&rat(1, 1440))
        + &(&(&x.scaled(&rint(25)) + &cnst(rint(535))).scaled(&rat(1, 36)) * b))
        + &(b * b).scaled(&rat(350, 9));
    let f2_tail = XPoly::new(vec![
        rat(11771, 7200),
        rat(-487, 300),
        rat(-113, 7200),
        rat(1, 240),
    ]);
    let bracket = &(&(&t.scaled(&rat(350, 9)) + &(&tp_coeff * tp))
        + &(&tpp.pow(3).scaled(&rat(5, 24)) + &(&tpp2_coeff * &tpp.pow(2))))
        + &(&(&tpp_coeff * tpp) + &f2_tail.eval(x));
    let i0sq = &md.i0 * &md.i0;
    let f2_closed = -&(&(&i0sq * &bracket).scaled(&rat(1, 5)) * &md.y.inv().expect("Y unit"));
    let f2_closed_q = md.to_q_coordinate(&f2_closed).expect("Q expansion");
    let f2_solved_q =
        a_model_potential(2, &sp.reports[1].p_g, md).expect("A-model potential");
    for d in 0..=10 {
        assert_eq!(f2_closed_q.coeff(d), f2_solved_q.coeff(d), "F_2 at Q^{d}");
    }

    println!(
        "criterion 05 pass: both genus-2 ambiguities, the generator form of P_2, and the closed form of F_2 to Q-order 10"
    );
}

#[test]
fn criterion_06_polynomiality() {
    // Solver-side fits already enforce their own margins; reports expose
    // the verified surplus.
    for fx in [zero25(), special25()] {
        for r in &fx.reports {
            assert!(r.margin >= 10, "genus {} margin {}", r.genus, r.margin);
        }
    }
    // Full graph sums are X-polynomials of degree 3g - 3 + m across
    // gauges, with ten extra orders checked by the fit.
    let mut fitted = 0;
    for fx in random16() {
        for r in &fx.reports {
            assert!(r.margin >= 10, "genus {} margin {}", r.genus, r.margin);
        }
        for g in 1u32..=2 {
            for m in 0u32..=2 {
                for n in 0u32..=(2 - m) {
                    if 2 * g + m + n <= 2 {
                        continue;
                    }
                    let s = graph_sum_b(g, m, n, &fx.props, &fx.table).expect("graph sum");
                    let deg = (3 * g - 3 + m) as usize;
                    fit_x_polynomial(&s, &fx.md, deg, 10).unwrap_or_else(|e| {
                        panic!("no degree-{deg} fit at (g,m,n)=({g},{m},{n}): {e}")
                    });
                    fitted += 1;
                }
            }
        }
    }
    println!(
        "criterion 06 pass: {fitted} graph sums fit in degree 3g-3+m over 3 pseudo-random gauges, margin >= 10"
    );
}

#[test]
fn criterion_07_gauge_independence() {
    let base = &zero25().reports[1];
    let base_p2 = base.p_g.truncated(16);
    // Genus-2 invariants are listed from d = 0.
    let base_inv: Vec<(u32, Rat)> = base.invariants.iter().take(9).cloned().collect();
    assert_eq!(base_inv[0].1, rat(-5, 144));
    assert_eq!(base_inv[1].1, rat(575, 48));
    let mut compared = 0;
    let others: Vec<&Solved> = std::iter::once(special25()).chain(random16().iter()).collect();
    for fx in others {
        let r = &fx.reports[1];
        assert_series_eq(&r.p_g.truncated(16), &base_p2, "P_2 across gauges");
        let inv: Vec<(u32, Rat)> = r.invariants.iter().take(9).cloned().collect();
        assert_eq!(inv, base_inv, "N_{{2,d}} for d <= 8");
        compared += 1;
    }
    println!(
        "criterion 07 pass: P_2 and N_{{2,d<=8}} identical across {} gauges",
        compared + 1
    );
}

#[test]
fn criterion_08_oracle_equality() {
    let fx = oracle12();
    let trunc = Truncation::new(3, 3);
    let bracket = master_bracket(trunc, &fx.props, &fx.table).expect("master bracket");
    let mut checked = 0;
    for g in 0u32..=3 {
        for m in 0u16..=3 {
            for n in 0u16..=(3 - m) {
                if 2 * g as i64 - 2 + (m + n) as i64 <= 0 {
                    continue;
                }
                let lhs = bracket_coefficient(&bracket, g, m, n);
                let rhs = graph_sum_b(g, m as u32, n as u32, &fx.props, &fx.table)
                    .expect("graph sum");
                assert_series_eq(&lhs, &rhs, &format!("oracle at (g,m,n)=({g},{m},{n})"));
                checked += 1;
            }
        }
    }
    println!(
        "criterion 08 pass: quantizer equals graph sum at {checked} strata (g <= 3, m+n <= 3) to order 12"
    );
}

#[test]
fn criterion_09_a_b_shift() {
    let fx = oracle12();
    for n in 1u32..=3 {
        let a = graph_sum_a(1, 0, n, &fx.props, &fx.table).expect("A-side sum");
        let b = graph_sum_b(1, 0, n, &fx.props, &fx.table).expect("B-side sum");
        let shift = Rat::from_integer(quintic_gw::rat::factorial(n - 1));
        assert_series_eq(
            &(&a - &b),
            &QSeries::constant(shift, fx.md.order),
            &format!("shift at n = {n}"),
        );
    }
    println!("criterion 09 pass: f^A - f^B = (n-1)! at (1,0,n) for n = 1,2,3");
}

#[test]
fn criterion_10_degree0_constants() {
    assert_eq!(n_g0(2), rat(-5, 144));
    assert_eq!(n_g0(3), rat(5, 36288));
    assert_eq!(zero25().reports[1].ambiguity.constant_term(), &rat(-25, 144));
    assert_eq!(rat(-25, 144), rint(5) * n_g0(2));
    assert_eq!(reference::f30(), rat(125, 36288));
    assert_eq!(reference::f30(), rint(25) * n_g0(3));
    println!(
        "criterion 10 pass: N_{{2,0}} = -5/144 and N_{{3,0}} = 5/36288 match the ring constants via 5^(g-1)"
    );
}

#[test]
fn criterion_11_anomaly_equations() {
    let md = &zero25().md;
    let p11 = reference::p11();
    let p2 = reference::p2();
    let p21 = raise_gen(&p2, 2, 0);
    let p3 = &reference::p3_generator() + &GenPoly::constant(Basis::E, reference::f30());
    let mut table: BTreeMap<(u32, u32), GenPoly> = BTreeMap::new();
    table.insert((1, 1), p11.clone());
    table.insert((1, 2), raise_gen(&p11, 1, 1));
    table.insert((2, 0), p2.clone());
    table.insert((2, 1), p21.clone());
    table.insert((2, 2), raise_gen(&p21, 2, 1));
    table.insert((3, 0), p3);

    let rep2 = verify_hae(2, &table, md).expect("genus-2 report");
    assert_eq!(rep2.hae1, HaeCheck::Holds, "genus-2 first equation");
    assert_eq!(rep2.hae2, HaeCheck::Holds, "genus-2 second equation");

    // Both operators annihilate pure-X terms, so the genus-3 checks are
    // insensitive to the undetermined part of f_3.
    let rep3 = verify_hae(3, &table, md).expect("genus-3 report");
    assert_eq!(rep3.hae2, HaeCheck::Holds, "genus-3 second equation");
    assert_eq!(rep3.hae1, HaeCheck::Holds, "genus-3 first equation");

    println!("criterion 11 pass: anomaly equations hold for g = 2 and g = 3 to order 25");
}

#[test]
fn criterion_12_genus3_partial() {
    let fx = zero25();
    let md = &fx.md;
    let mut table = fx.table.clone();
    for (h, m) in required_vertex_capacity(3, 0).expect("capacity") {
        if h == 0 {
            table.seed_genus0(m.max(3), md);
        } else if h <= 2 {
            table.raise_to(h, m, md);
        }
    }
    let r3 = graph_sum_modified_nonleading(3, 0, 0, &fx.props, &table).expect("genus-3 sum");
    let diff = &(-&r3) - &reference::p3_generator().eval(md);
    let fit = fit_x_polynomial(&diff, md, 6, 10).expect("difference is an X-polynomial");
    assert!(fit.is_zero(), "difference is {fit:?}");
    // The reconstructed potential carries the degree-0 constant; the
    // higher ambiguity coefficients stay undetermined at this genus.
    let p3 = &reference::p3_generator().eval(md)
        + &QSeries::constant(reference::f30(), md.order);
    assert_eq!(&(&p3 + &r3), &QSeries::constant(rat(125, 36288), md.order));
    println!(
        "criterion 12 pass: -R_3 minus the generator part fits as an X-polynomial (identically zero); reconstructed constant term 125/36288"
    );
}

#[test]
fn criterion_13_graph_combinatorics() {
    let g20 = enumerate(2, 0).expect("genus-2 graphs");
    assert_eq!(g20.len(), 7);
    assert!(g20.iter().any(|h| h.aut_order == 8), "1/8 weight");
    assert!(g20.iter().any(|h| h.aut_order == 12), "1/12 weight");
    let mut classes = 0;
    for (g, n) in [(0u32, 3u32), (1, 1), (1, 2), (1, 3), (2, 0), (2, 1), (2, 2), (2, 3)] {
        classes += labeled_census_check(g, n).expect("labeled census");
    }
    println!(
        "criterion 13 pass: |enumerate(2,0)| = 7 with weights 1/8 and 1/12; labeled census agrees over {classes} classes"
    );
}

#[test]
fn fit_margins_are_enforced() {
    // A fit request without the stated margin must be rejected, so the
    // margin claims above are load-bearing.
    let md = build_mirror(8).expect("mirror data");
    let err = fit_x_polynomial(&md.x, &md, 3, 10);
    assert!(err.is_err());
    let one = QSeries::one(md.order);
    assert!(!one.is_zero());
    assert!(one.coeff(0).is_one());
}
