use alloc::vec::Vec;
use core::fmt;

use crate::galois::{FieldTables, Gf};

/// Bivariate polynomial over GF(2^m), stored as one X-polynomial per power of
/// Y: `parts[j][i]` is the coefficient of `X^i Y^j`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BivariatePoly {
    parts: Vec<Vec<Gf>>,
}

impl BivariatePoly {
    pub fn zero() -> Self {
        BivariatePoly { parts: Vec::new() }
    }

    /// `Y^j`.
    pub fn y_pow(j: usize) -> Self {
        let mut parts = alloc::vec![Vec::new(); j + 1];
        parts[j].push(Gf::ONE);
        BivariatePoly { parts }
    }

    /// Builds from `(i, j, coefficient)` triples; repeated monomials add.
    pub fn from_terms(terms: &[(usize, usize, Gf)]) -> Self {
        let mut p = BivariatePoly::zero();
        for &(i, j, c) in terms {
            p.add_term(i, j, c);
        }
        p.trim();
        p
    }

    pub fn add_term(&mut self, i: usize, j: usize, c: Gf) {
        if self.parts.len() <= j {
            self.parts.resize(j + 1, Vec::new());
        }
        let part = &mut self.parts[j];
        if part.len() <= i {
            part.resize(i + 1, Gf::ZERO);
        }
        part[i] += c;
    }

    #[inline]
    pub fn coeff(&self, i: usize, j: usize) -> Gf {
        self.parts
            .get(j)
            .and_then(|p| p.get(i))
            .copied()
            .unwrap_or(Gf::ZERO)
    }

    /// X-polynomial multiplying `Y^j`.
    pub fn part(&self, j: usize) -> &[Gf] {
        self.parts.get(j).map_or(&[], |p| p.as_slice())
    }

    pub(crate) fn parts_mut(&mut self) -> &mut Vec<Vec<Gf>> {
        &mut self.parts
    }

    pub fn is_zero(&self) -> bool {
        self.parts.iter().all(|p| p.iter().all(|c| c.is_zero()))
    }

    /// Drops trailing zero coefficients and empty high Y-degrees.
    pub fn trim(&mut self) {
        for p in &mut self.parts {
            while p.last() == Some(&Gf::ZERO) {
                p.pop();
            }
        }
        while self.parts.last().is_some_and(|p| p.is_empty()) {
            self.parts.pop();
        }
    }

    /// Highest power of Y with a nonzero coefficient.
    pub fn y_degree(&self) -> Option<usize> {
        (0..self.parts.len())
            .rev()
            .find(|&j| self.parts[j].iter().any(|c| !c.is_zero()))
    }

    /// `(w_x, w_y)`-weighted degree; `None` for the zero polynomial.
    pub fn weighted_degree(&self, wx: usize, wy: usize) -> Option<usize> {
        self.terms().map(|(i, j, _)| i * wx + j * wy).max()
    }

    /// Nonzero `(i, j, coefficient)` triples ordered by `j` then `i`.
    pub fn terms(&self) -> impl Iterator<Item = (usize, usize, Gf)> + '_ {
        self.parts.iter().enumerate().flat_map(|(j, p)| {
            p.iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(move |(i, &c)| (i, j, c))
        })
    }

    /// Hasse derivative `D_{r,s}` (r in X, s in Y) evaluated at `(x, y)`.
    pub fn hasse_eval(&self, f: &FieldTables, r: usize, s: usize, x: Gf, y: Gf) -> Gf {
        let mut acc = Gf::ZERO;
        // Horner over Y powers j >= s with the binomial C(j, s) mod 2.
        for j in (s..self.parts.len()).rev() {
            acc = f.mul(acc, y);
            if binom_odd(j, s) {
                acc += hasse_eval_x(f, &self.parts[j], r, x);
            }
        }
        acc
    }

    /// Evaluates at `Y = y`, giving a polynomial in X.
    pub fn eval_y(&self, f: &FieldTables, y: Gf) -> Vec<Gf> {
        let len = self.parts.iter().map(Vec::len).max().unwrap_or(0);
        let mut out = alloc::vec![Gf::ZERO; len];
        for part in self.parts.iter().rev() {
            for c in out.iter_mut() {
                *c = f.mul(*c, y);
            }
            for (o, &c) in out.iter_mut().zip(part) {
                *o += c;
            }
        }
        out
    }

    /// Evaluates at `Y = g(X)`, giving a polynomial in X.
    pub fn eval_y_poly(&self, f: &FieldTables, g: &[Gf]) -> Vec<Gf> {
        let mut acc: Vec<Gf> = Vec::new();
        for part in self.parts.iter().rev() {
            acc = poly_mul(f, &acc, g);
            if acc.len() < part.len() {
                acc.resize(part.len(), Gf::ZERO);
            }
            for (a, &c) in acc.iter_mut().zip(part) {
                *a += c;
            }
        }
        acc
    }
}

/// Lists the polynomial as `i j coefficient` lines.
impl fmt::Display for BivariatePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, j, c) in self.terms() {
            writeln!(f, "{i} {j} {c}")?;
        }
        Ok(())
    }
}

/// `C(n, k) mod 2` by Lucas' theorem.
#[inline]
pub(crate) fn binom_odd(n: usize, k: usize) -> bool {
    k <= n && (n & k) == k
}

/// Univariate Hasse derivative of order `r` at `x`.
#[inline]
pub(crate) fn hasse_eval_x(f: &FieldTables, p: &[Gf], r: usize, x: Gf) -> Gf {
    let mut acc = Gf::ZERO;
    if r == 0 {
        for &c in p.iter().rev() {
            acc = f.mul(acc, x) + c;
        }
    } else {
        for i in (r..p.len()).rev() {
            acc = f.mul(acc, x);
            if binom_odd(i, r) {
                acc += p[i];
            }
        }
    }
    acc
}

pub(crate) fn poly_mul(f: &FieldTables, a: &[Gf], b: &[Gf]) -> Vec<Gf> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = alloc::vec![Gf::ZERO; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] += f.mul(x, y);
        }
    }
    out
}
