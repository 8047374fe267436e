//! Roth-Ruckenstein search for the Y-roots of degree below K.

use alloc::vec::Vec;

use super::poly::BivariatePoly;
use crate::galois::{FieldTables, Gf};

/// All `g(X)` with `deg g < k` and `(Y - g(X)) | poly`, each returned as `k`
/// low-order-first coefficients. The result is sorted and free of duplicates.
pub fn factorize(poly: &BivariatePoly, f: &FieldTables, k: usize) -> Vec<Vec<Gf>> {
    let mut out = Vec::new();
    if poly.is_zero() || k == 0 {
        return out;
    }
    let mut prefix = Vec::with_capacity(k);
    let start = strip_x(poly.clone());
    search(&start, f, k, &mut prefix, &mut out);
    out.sort();
    out.dedup();
    out
}

fn search(q: &BivariatePoly, f: &FieldTables, k: usize, prefix: &mut Vec<Gf>, out: &mut Vec<Vec<Gf>>) {
    let depth = prefix.len();
    for beta in y_roots_at_origin(q, f) {
        prefix.push(beta);
        if depth + 1 == k {
            if q.eval_y(f, beta).iter().all(|c| c.is_zero()) {
                out.push(prefix.clone());
            }
        } else {
            let next = strip_x(shift(q, f, beta));
            search(&next, f, k, prefix, out);
        }
        prefix.pop();
    }
}

/// Roots of `q(0, Y)`, found by exhaustive evaluation.
fn y_roots_at_origin(q: &BivariatePoly, f: &FieldTables) -> Vec<Gf> {
    let deg = match q.y_degree() {
        Some(d) => d,
        None => return Vec::new(),
    };
    let c: Vec<Gf> = (0..=deg).map(|j| q.coeff(0, j)).collect();
    if c.iter().all(|x| x.is_zero()) {
        // Only possible before X-stripping; callers always strip first.
        return Vec::new();
    }
    let mut roots = Vec::new();
    for beta in f.elements() {
        let v = c.iter().rev().fold(Gf::ZERO, |acc, &x| f.mul(acc, beta) + x);
        if v.is_zero() {
            roots.push(beta);
            if roots.len() == deg {
                break;
            }
        }
    }
    roots
}

/// `q(X, X Y + beta)`.
fn shift(q: &BivariatePoly, f: &FieldTables, beta: Gf) -> BivariatePoly {
    let mut out = BivariatePoly::zero();
    let deg = q.y_degree().unwrap_or(0);
    // beta^p for p = 0..=deg
    let mut bp = Vec::with_capacity(deg + 1);
    let mut acc = Gf::ONE;
    for _ in 0..=deg {
        bp.push(acc);
        acc = f.mul(acc, beta);
    }
    for (i, j, a) in q.terms() {
        // (X Y + beta)^j = sum_t C(j, t) X^t Y^t beta^(j - t)
        for t in 0..=j {
            if super::poly::binom_odd(j, t) {
                let c = f.mul(a, bp[j - t]);
                if !c.is_zero() {
                    out.add_term(i + t, t, c);
                }
            }
        }
    }
    out.trim();
    out
}

/// Divides out the largest power of X.
fn strip_x(mut q: BivariatePoly) -> BivariatePoly {
    let v = q
        .terms()
        .map(|(i, _, _)| i)
        .min()
        .unwrap_or(0);
    if v > 0 {
        for part in q.parts_mut() {
            if part.len() > v {
                part.drain(..v);
            } else {
                part.clear();
            }
        }
        q.trim();
    }
    q
}
