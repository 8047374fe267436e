//! Berlekamp-Massey errors-and-erasures decoding with Forney's formula.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::Error;
use crate::galois::{FieldTables, Gf};
use crate::rscode::{CodeSpec, Codeword};

/// Bounded-distance decoding of `word` with the symbol positions in `erasures`
/// erased. Corrects every pattern with `2e + f <= N - K`; returns `Ok(None)`
/// when no consistent error locator is found.
pub fn bm_decode(word: &[Gf], erasures: &[usize], spec: &CodeSpec) -> Result<Option<Codeword>, Error> {
    let syn = spec.syndrome(word)?;
    let f = spec.field();
    let (n, two_t) = (spec.n_sym(), spec.n_sym() - spec.k_sym());
    let rho = erasures.len();
    // Beyond N - K erasures the unerased symbols no longer fix a unique
    // codeword, even if the filled-in word happens to be one.
    if rho > two_t {
        return Ok(None);
    }
    if syn.iter().all(|s| s.is_zero()) {
        return Ok(Some(Codeword::new(word.to_vec())));
    }

    // Erasure locator prod (1 - X_l x), X_l = alpha^(position).
    let mut lambda = vec![Gf::ONE];
    for &p in erasures {
        if p >= n {
            return Ok(None);
        }
        lambda = mul_linear(f, &lambda, f.alpha_pow(p));
    }
    let mut b = lambda.clone();
    let mut l = rho;

    for r in rho + 1..=two_t {
        // discrepancy sum_i Lambda_i S_{r-i}, syndromes indexed from 1
        let mut delta = Gf::ZERO;
        for (i, &li) in lambda.iter().enumerate() {
            if i < r {
                delta += f.mul(li, syn[r - i - 1]);
            }
        }
        if delta.is_zero() {
            b.insert(0, Gf::ZERO);
            continue;
        }
        // T = Lambda - delta x B
        let mut t = lambda.clone();
        if t.len() < b.len() + 1 {
            t.resize(b.len() + 1, Gf::ZERO);
        }
        for (i, &bi) in b.iter().enumerate() {
            t[i + 1] += f.mul(delta, bi);
        }
        if 2 * l < r + rho {
            l = r + rho - l;
            let inv = f.inv(delta)?;
            b = lambda.iter().map(|&c| f.mul(c, inv)).collect();
        } else {
            b.insert(0, Gf::ZERO);
        }
        lambda = t;
    }
    trim(&mut lambda);
    let deg = lambda.len() - 1;
    // Bounded distance: 2 (errors) + erasures must not exceed N - K.
    if deg != l || 2 * deg > two_t + rho {
        return Ok(None);
    }

    // Chien search over the code positions.
    let mut positions = Vec::with_capacity(deg);
    for j in 0..n {
        let x_inv = f.alpha_pow((f.order() - j % f.order()) % f.order());
        if eval(f, &lambda, x_inv).is_zero() {
            positions.push(j);
        }
    }
    if positions.len() != deg {
        return Ok(None);
    }

    // Omega = S(x) Lambda(x) mod x^(2t)
    let mut omega = vec![Gf::ZERO; two_t];
    for (i, &li) in lambda.iter().enumerate() {
        for (s_idx, &s) in syn.iter().enumerate() {
            if i + s_idx < two_t {
                omega[i + s_idx] += f.mul(li, s);
            }
        }
    }
    // Formal derivative: odd-degree terms only in characteristic 2.
    let deriv: Vec<Gf> = (1..lambda.len())
        .map(|i| if i % 2 == 1 { lambda[i] } else { Gf::ZERO })
        .collect();

    let mut out = word.to_vec();
    for &j in &positions {
        let x_inv = f.alpha_pow((f.order() - j % f.order()) % f.order());
        let den = eval(f, &deriv, x_inv);
        if den.is_zero() {
            return Ok(None);
        }
        out[j] += f.div(eval(f, &omega, x_inv), den);
    }
    if spec.syndrome(&out)?.iter().any(|s| !s.is_zero()) {
        return Ok(None);
    }
    Ok(Some(Codeword::new(out)))
}

/// `p(x) (1 - a x)`; the sign is immaterial in characteristic 2.
fn mul_linear(f: &FieldTables, p: &[Gf], a: Gf) -> Vec<Gf> {
    let mut out = vec![Gf::ZERO; p.len() + 1];
    for (i, &c) in p.iter().enumerate() {
        out[i] += c;
        out[i + 1] += f.mul(c, a);
    }
    out
}

fn eval(f: &FieldTables, p: &[Gf], x: Gf) -> Gf {
    p.iter().rev().fold(Gf::ZERO, |acc, &c| f.mul(acc, x) + c)
}

fn trim(p: &mut Vec<Gf>) {
    while p.len() > 1 && p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}
