//! Checks shared by the property suite and the acceptance runner. Each
//! returns `Err(description)` on the first violation.

#![allow(dead_code)]

use std::collections::BTreeMap;

use area_moments::exactmath::{factorial, ElementaryForm};
use area_moments::moments::composition::weak_compositions;
use area_moments::moments::{
    a_poly, compute_c_direct, p_poly, q_poly, q_poly_fast, Composition, MomentPolynomial,
};
use area_moments::walk::{enumerate_bruteforce, enumerate_dp, StepCounts, DEFAULT_STATE_BUDGET};
use area_moments::{IntPoly, RatPoly, Rational, Var};
use num_bigint::BigInt;
use num_traits::Zero;

pub type Check = Result<(), String>;

fn r(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Builds `Σ c (n1 n2)^a (n1+n2)^b` from `(a, b, num, den)`.
pub fn from_elementary(terms: &[(u32, u32, i64, i64)]) -> RatPoly {
    let terms: BTreeMap<_, _> = terms.iter().map(|&(a, b, n, d)| ((a, b), r(n, d))).collect();
    ElementaryForm { terms }.to_poly()
}

/// The known closed forms of `P_2`, …, `P_12`.
pub fn reference_polynomial(two_l: u32) -> RatPoly {
    match two_l {
        2 => from_elementary(&[(1, 0, 1, 3)]),
        4 => from_elementary(&[(2, 0, 7, 15), (1, 1, -1, 15)]),
        6 => from_elementary(&[(3, 0, 31, 21), (2, 1, -15, 21), (1, 2, 2, 21), (1, 1, -1, 21)]),
        8 => from_elementary(&[
            (4, 0, 127, 15),
            (3, 1, -134, 15),
            (2, 2, 53, 15),
            (1, 3, -6, 15),
            (2, 1, -22, 15),
            (1, 2, 8, 15),
            (1, 1, -3, 15),
        ]),
        10 => from_elementary(&p10_terms(true)),
        12 => from_elementary(&[
            (6, 0, 1414477, 1365),
            (5, 1, -197569, 65),
            (4, 2, 5381569, 1365),
            (4, 1, -2015366, 1365),
            (3, 3, -1190473, 455),
            (3, 2, 19486, 7),
            (3, 1, -1321279, 1365),
            (2, 4, 1082842, 1365),
            (2, 3, -321112, 195),
            (2, 2, 372679, 273),
            (2, 1, -82664, 195),
            (1, 5, -5528, 91),
            (1, 4, 22112, 91),
            (1, 3, -175514, 455),
            (1, 2, 384196, 1365),
            (1, 1, -21421, 273),
        ]),
        _ => panic!("no reference polynomial for order {two_l}"),
    }
}

/// `P_10` inside the `n1 n2 / 33` bracket. With `corrected = false` the
/// `-1444` term carries `(n1 n2)(n1+n2)` instead of `(n1 n2)^2 (n1+n2)`.
pub fn p10_terms(corrected: bool) -> Vec<(u32, u32, i64, i64)> {
    let inner = [
        (4, 0, 2555),
        (3, 1, -4778),
        (2, 2, 3745),
        (1, 3, -1282),
        (0, 4, 120),
        (if corrected { 2 } else { 1 }, 1, -1444),
        (1, 2, 1438),
        (0, 3, -300),
        (1, 1, -503),
        (0, 2, 270),
        (0, 1, -85),
    ];
    let mut merged: BTreeMap<(u32, u32), i64> = BTreeMap::new();
    for (a, b, c) in inner {
        *merged.entry((a + 1, b)).or_default() += c;
    }
    merged.into_iter().map(|((a, b), c)| (a, b, c, 33)).collect()
}

pub fn a_parity(max_n: u32) -> Check {
    for n in 0..=max_n {
        let a: IntPoly = a_poly(n);
        let expected = if n % 2 == 0 { a.clone() } else { -&a };
        if a.swap_vars() != expected {
            return Err(format!("A_{n}(y,x) != (-1)^{n} A_{n}(x,y)"));
        }
    }
    Ok(())
}

/// `P^(k)(n1) · (2n1+k)!/n1!² = C(n1)` for the given compositions.
pub fn p_matches_direct_sum(compositions: &[Vec<u32>], max_n1: u32) -> Check {
    for parts in compositions {
        let c = Composition::new(parts.clone()).map_err(|e| e.to_string())?;
        let p = p_poly(&c);
        let k = c.len() as u32;
        for n1 in 0..=max_n1 {
            let value = p.eval(&Rational::from_integer(n1.into()), &Rational::zero())
                * Rational::new(factorial(2 * n1 + k), factorial(n1).pow(2u32));
            let direct = compute_c_direct(&c, n1).map_err(|e| e.to_string())?;
            if value != Rational::from_integer(direct.clone()) {
                return Err(format!("{parts:?} at n1={n1}: {value} vs {direct}"));
            }
        }
    }
    Ok(())
}

/// Compositions used for the generating-function vs direct-sum check: every
/// weak composition of 1..=6 into at most 3 parts and of 1..=4 into 4 parts.
pub fn p_check_compositions() -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    for total in 1..=6 {
        for k in 1..=3 {
            out.extend(weak_compositions(total, k));
        }
    }
    for total in 1..=4 {
        out.extend(weak_compositions(total, 4));
    }
    out
}

/// All compositions of `two_l` with positive parts.
pub fn positive_compositions(two_l: u32) -> Vec<Vec<u32>> {
    (1..=two_l as usize)
        .flat_map(|k| weak_compositions(two_l, k))
        .filter(|c| c.iter().all(|&p| p > 0))
        .collect()
}

/// `q_poly ≡ q_poly_fast` on every positive composition with 2l ≤ `max_two_l`
/// and every weak composition with 2l ≤ `max_weak`.
pub fn q_routes_agree(max_two_l: u32, max_weak: u32) -> Check {
    let mut all = Vec::new();
    for two_l in (2..=max_two_l).step_by(2) {
        all.extend(positive_compositions(two_l));
    }
    for two_l in (2..=max_weak).step_by(2) {
        for k in 1..=two_l as usize {
            all.extend(weak_compositions(two_l, k));
        }
    }
    for parts in all {
        let c = Composition::new(parts.clone()).map_err(|e| e.to_string())?;
        let (slow, fast) = (q_poly(&c), q_poly_fast(&c));
        if slow != fast {
            return Err(format!("{parts:?}: {slow} vs {fast}"));
        }
    }
    Ok(())
}

/// Symmetry, degree, boundary and unit-point invariants, stated directly.
pub fn moment_invariants(mp: &MomentPolynomial) -> Check {
    let l = mp.order / 2;
    let p = &mp.poly;
    if *p != p.swap_vars() {
        return Err(format!("P_{} not symmetric", mp.order));
    }
    if p.degree() != Some(mp.order) {
        return Err(format!("P_{} total degree {:?}", mp.order, p.degree()));
    }
    if p.degree_in(Var::First) > Some(l) || p.degree_in(Var::Second) > Some(l) {
        return Err(format!("P_{} single-variable degree above {l}", mp.order));
    }
    for n in 0..=8u32 {
        if !mp.eval(n, 0).is_zero() || !mp.eval(0, n).is_zero() {
            return Err(format!("P_{} nonzero on an axis at {n}", mp.order));
        }
    }
    if mp.eval(1, 1) != r(1, 3) {
        return Err(format!("P_{}(1,1) = {}", mp.order, mp.eval(1, 1)));
    }
    Ok(())
}

/// `moment_{2l}(dist) = |Γ| · P_2l(n1, n2)` for all `n1 + n2 ≤ max_sum`.
pub fn oracle_agrees(polys: &[MomentPolynomial], max_sum: u32) -> Result<usize, String> {
    let mut cases = 0;
    for total in 0..=max_sum {
        for n1 in 0..=total {
            let sc = StepCounts::new(n1, total - n1);
            let dist = enumerate_dp(sc, DEFAULT_STATE_BUDGET).map_err(|e| e.to_string())?;
            let card = sc.cardinal();
            for mp in polys {
                let expected = Rational::from_integer(card.clone()) * mp.eval(sc.n1, sc.n2);
                let got = Rational::from_integer(dist.moment(mp.order));
                if got != expected {
                    return Err(format!("({}, {}) order {}: {got} vs {expected}", sc.n1, sc.n2, mp.order));
                }
                cases += 1;
            }
        }
    }
    Ok(cases)
}

pub fn walk_invariants(max_sum: u32) -> Check {
    for total in 0..=max_sum {
        for n1 in 0..=total {
            let sc = StepCounts::new(n1, total - n1);
            let d = enumerate_dp(sc, DEFAULT_STATE_BUDGET).map_err(|e| e.to_string())?;
            if d.total() != sc.cardinal() {
                return Err(format!("{sc:?}: total {} vs cardinal {}", d.total(), sc.cardinal()));
            }
            if d.counts.iter().any(|(&a, c)| d.count(-a) != *c) {
                return Err(format!("{sc:?}: histogram not reflection symmetric"));
            }
            if d.counts.keys().any(|&a| a.abs() > sc.max_area()) {
                return Err(format!("{sc:?}: area outside ±n1 n2"));
            }
            let swapped = enumerate_dp(StepCounts::new(sc.n2, sc.n1), DEFAULT_STATE_BUDGET)
                .map_err(|e| e.to_string())?;
            if swapped.counts != d.counts {
                return Err(format!("{sc:?}: histogram changes under axis exchange"));
            }
            if (sc.n1 == 0 || sc.n2 == 0) && d.counts.keys().any(|&a| a != 0) {
                return Err(format!("{sc:?}: degenerate walk with nonzero area"));
            }
        }
    }
    Ok(())
}

/// DP histogram equals brute-force enumeration for every walk of length
/// ≤ `max_length`.
pub fn dp_matches_bruteforce(max_length: u32) -> Result<usize, String> {
    let mut cases = 0;
    for total in 0..=max_length / 2 {
        for n1 in 0..=total {
            let sc = StepCounts::new(n1, total - n1);
            let a = enumerate_dp(sc, DEFAULT_STATE_BUDGET).map_err(|e| e.to_string())?;
            let b = enumerate_bruteforce(sc).map_err(|e| e.to_string())?;
            if a != b {
                return Err(format!("{sc:?}: DP and enumeration differ"));
            }
            cases += 1;
        }
    }
    Ok(cases)
}


/// Operator-side invariants for all `n1 + n2 ≤ max_sum`: the zero-flux value
/// counts walks, the result is even in `φ`, independent of the quadrature
/// grid and of the column it is read at.
pub fn hh_invariants(max_sum: u32, phis: &[f64]) -> Check {
    use area_moments::hh::nu_integral_with;
    for total in 0..=max_sum {
        for n1 in 0..=total {
            let n2 = total - n1;
            let card: f64 = StepCounts::new(n1, n2).cardinal().to_string().parse().unwrap();
            let at = |phi: f64, points: usize, column: i64| {
                nu_integral_with(n1, n2, phi, points, column).map_err(|e| e.to_string())
            };
            let coarse = 2 * n2 as usize + 1;
            let fine = 4 * n2 as usize + 1;
            let zero = at(0.0, coarse, 0)?;
            if (zero.re - card).abs() > 1e-9 * card || zero.im.abs() > 1e-9 * card {
                return Err(format!("({n1},{n2}) at φ=0: {zero} vs {card}"));
            }
            for &phi in phis {
                let base = at(phi, coarse, 0)?;
                let tol = 1e-12 * card;
                let mirrored = at(-phi, coarse, 0)?;
                if (base - mirrored).norm() > tol {
                    return Err(format!("({n1},{n2}) φ={phi}: not even in φ"));
                }
                if (base - at(phi, fine, 0)?).norm() > tol {
                    return Err(format!("({n1},{n2}) φ={phi}: depends on the ν grid"));
                }
                if (base - at(phi, coarse, 3)?).norm() > tol {
                    return Err(format!("({n1},{n2}) φ={phi}: depends on the read column"));
                }
            }
        }
    }
    Ok(())
}

/// Both Mingo–Nica closed forms for `1 ≤ n ≤ max_n`.
pub fn mingo_nica(p2: &MomentPolynomial, p4: &MomentPolynomial, max_n: u32) -> Check {
    use area_moments::moments::{mingo_nica_closed_form, mingo_nica_sum};
    for n in 1..=max_n {
        for mp in [p2, p4] {
            let lhs = mingo_nica_sum(mp, n);
            let rhs = mingo_nica_closed_form(mp.order, n).unwrap();
            if lhs != rhs {
                return Err(format!("order {} n={n}: {lhs} vs {rhs}", mp.order));
            }
        }
    }
    Ok(())
}
