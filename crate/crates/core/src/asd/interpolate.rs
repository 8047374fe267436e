//! Koetter's iterative interpolation.
//!
//! Maintains `L + 1` polynomials whose leading monomials (under the
//! `(1, K-1)`-weighted order, ties broken by Y-degree) have Y-degrees
//! `0..=L`. Constraints are absorbed one Hasse-derivative functional at a
//! time; for each point the functionals `D_{r,s}` are visited with `r`
//! increasing for fixed `s`, which keeps every intermediate kernel closed
//! under multiplication by X.

use alloc::vec;
use alloc::vec::Vec;

use super::poly::{hasse_eval_x, BivariatePoly};
use super::MultiplicityMatrix;
use crate::error::Error;
use crate::galois::{FieldTables, Gf};
use crate::rscode::CodeSpec;

/// Number of monomials `X^i Y^j` with `i + j (K - 1) <= delta`.
pub fn monomial_count(delta: u64, k: usize) -> u64 {
    let w = (k - 1) as u64;
    if w == 0 {
        return u64::MAX;
    }
    let a = delta / w;
    // sum_{j=0}^{a} (delta - j w + 1)
    (a + 1) * (delta + 1) - w * a * (a + 1) / 2
}

/// Smallest weighted degree `delta` whose monomial count exceeds `cost`, and
/// the matching Y-degree bound `L = floor(delta / (K - 1))`.
pub fn interpolation_shape(cost: u64, k: usize) -> (u64, usize) {
    if k == 1 {
        // Every Y-power has weighted degree 0.
        return (0, cost as usize);
    }
    let (mut lo, mut hi) = (0u64, cost.max(1));
    while monomial_count(hi, k) <= cost {
        hi *= 2;
    }
    while lo < hi {
        let mid = lo + (hi - lo) / 2;
        if monomial_count(mid, k) > cost {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    (lo, (lo / (k as u64 - 1)) as usize)
}

/// Runs the interpolation step for `mm` over the code's evaluation points.
///
/// Returns a nonzero polynomial of minimal `(1, K-1)`-weighted degree that has
/// a zero of multiplicity at least `M_{i,j}` at every `(gamma_j, alpha_i)`.
pub fn interpolate(mm: &MultiplicityMatrix, spec: &CodeSpec, budget: Option<u64>) -> Result<BivariatePoly, Error> {
    let cost = mm.cost();
    if let Some(b) = budget {
        if cost > b {
            return Err(Error::BudgetExceeded { cost, budget: b });
        }
    }
    let f = spec.field();
    let k = spec.k_sym();
    let wy = k.saturating_sub(1);
    let (_, l_max) = interpolation_shape(cost, k);

    let mut basis: Vec<Vec<Vec<Gf>>> = (0..=l_max)
        .map(|l| {
            let mut parts = vec![Vec::new(); l + 1];
            parts[l].push(Gf::ONE);
            parts
        })
        .collect();
    // Leading-monomial weighted degree of each basis element; its Y-degree is
    // the index.
    let mut wdeg: Vec<usize> = (0..=l_max).map(|l| l * wy).collect();
    let mut disc = vec![Gf::ZERO; l_max + 1];

    for (j, i, mult) in mm.nonzero() {
        let x = spec.points()[j];
        let y = Gf(i as u16);
        let mult = mult as usize;
        for s in 0..mult {
            for r in 0..mult - s {
                for (d, g) in disc.iter_mut().zip(&basis) {
                    *d = hasse_eval(f, g, r, s, x, y);
                }
                let pivot = (0..=l_max)
                    .filter(|&l| !disc[l].is_zero())
                    .min_by_key(|&l| (wdeg[l], l));
                let Some(p) = pivot else { continue };
                let dp = disc[p];
                let gp = core::mem::take(&mut basis[p]);
                for l in 0..=l_max {
                    if l == p || disc[l].is_zero() {
                        continue;
                    }
                    // g_l <- dp g_l + d_l g_p
                    combine(f, &mut basis[l], dp, &gp, disc[l]);
                }
                basis[p] = times_x_minus(f, gp, x);
                wdeg[p] += 1;
            }
        }
    }

    let best = (0..=l_max).min_by_key(|&l| (wdeg[l], l)).unwrap_or(0);
    let mut parts = core::mem::take(&mut basis[best]);
    let mut out = BivariatePoly::zero();
    core::mem::swap(out.parts_mut(), &mut parts);
    out.trim();
    Ok(out)
}

#[inline]
fn hasse_eval(f: &FieldTables, parts: &[Vec<Gf>], r: usize, s: usize, x: Gf, y: Gf) -> Gf {
    let mut acc = Gf::ZERO;
    for j in (s..parts.len()).rev() {
        acc = f.mul(acc, y);
        if super::poly::binom_odd(j, s) {
            acc += hasse_eval_x(f, &parts[j], r, x);
        }
    }
    acc
}

fn combine(f: &FieldTables, g: &mut Vec<Vec<Gf>>, a: Gf, h: &[Vec<Gf>], b: Gf) {
    if g.len() < h.len() {
        g.resize(h.len(), Vec::new());
    }
    for (j, gj) in g.iter_mut().enumerate() {
        let hj = h.get(j).map_or(&[][..], |p| p.as_slice());
        if gj.len() < hj.len() {
            gj.resize(hj.len(), Gf::ZERO);
        }
        for (i, c) in gj.iter_mut().enumerate() {
            let hv = hj.get(i).copied().unwrap_or(Gf::ZERO);
            *c = f.mul(*c, a) + f.mul(hv, b);
        }
    }
}

fn times_x_minus(f: &FieldTables, mut g: Vec<Vec<Gf>>, x: Gf) -> Vec<Vec<Gf>> {
    for part in &mut g {
        if part.is_empty() {
            continue;
        }
        // (X + x) p(X): shift up and add x p.
        part.push(Gf::ZERO);
        for i in (1..part.len()).rev() {
            part[i] = part[i - 1] + f.mul(part[i], x);
        }
        part[0] = f.mul(part[0], x);
    }
    g
}

#[cfg(test)]
mod tests {
    use super::*;

    fn count_by_enumeration(delta: u64, k: usize) -> u64 {
        let w = (k - 1) as u64;
        let mut n = 0;
        for j in 0..=delta / w {
            for i in 0..=delta {
                if i + j * w <= delta {
                    n += 1;
                }
            }
        }
        n
    }

    #[test]
    fn monomial_count_matches_enumeration() {
        for k in 2..8 {
            for d in 0..60 {
                assert_eq!(monomial_count(d, k), count_by_enumeration(d, k), "k={k} d={d}");
            }
        }
    }

    #[test]
    fn shape_is_minimal() {
        for k in 2..10 {
            for cost in 0..200 {
                let (d, l) = interpolation_shape(cost, k);
                assert!(monomial_count(d, k) > cost);
                assert!(d == 0 || monomial_count(d - 1, k) <= cost);
                assert_eq!(l, (d / (k as u64 - 1)) as usize);
            }
        }
    }

    #[test]
    fn no_constraints_gives_constant() {
        let spec = CodeSpec::new(7, 3, 3).unwrap();
        let mm = MultiplicityMatrix::zeros(8, 7);
        let p = interpolate(&mm, &spec, None).unwrap();
        assert_eq!(p, BivariatePoly::from_terms(&[(0, 0, Gf::ONE)]));
    }

    #[test]
    fn single_simple_point() {
        let spec = CodeSpec::new(7, 3, 3).unwrap();
        let mut mm = MultiplicityMatrix::zeros(8, 7);
        mm.set(5, 2, 1);
        let p = interpolate(&mm, &spec, None).unwrap();
        assert_eq!(p.weighted_degree(1, 2), Some(1));
        let x = spec.points()[2];
        assert!(p.hasse_eval(spec.field(), 0, 0, x, Gf(5)).is_zero());
    }

    #[test]
    fn budget_is_enforced() {
        let spec = CodeSpec::new(7, 3, 3).unwrap();
        let mut mm = MultiplicityMatrix::zeros(8, 7);
        mm.set(1, 0, 4);
        assert_eq!(
            interpolate(&mm, &spec, Some(9)),
            Err(Error::BudgetExceeded { cost: 10, budget: 9 })
        );
        assert!(interpolate(&mm, &spec, Some(10)).is_ok());
    }
}
