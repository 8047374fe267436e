//! Reed-Solomon codes in evaluation form.
//!
//! A message `(g_0, ..., g_{K-1})` is the polynomial `g(x) = sum g_i x^i`;
//! its codeword is `(g(gamma_1), ..., g(gamma_N))`. With the default points
//! `gamma_j = alpha^(j-1)` and `N = 2^m - 1` the code is the narrow-sense BCH
//! view of RS, whose parity checks are `sum_j c_j alpha^(i j) = 0` for
//! `i = 1..=N-K`.

use alloc::vec::Vec;

use crate::error::Error;
use crate::galois::{FieldTables, Gf};

/// Code parameters. Immutable; decoders borrow it.
#[derive(Clone, Debug)]
pub struct CodeSpec {
    n: usize,
    k: usize,
    field: FieldTables,
    points: Vec<Gf>,
    narrow_sense: bool,
}

/// N symbols of a (candidate) codeword. Ordered lexicographically by symbol
/// value, which is the deterministic tie-break used by codeword selection.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Codeword {
    pub symbols: Vec<Gf>,
}

impl Codeword {
    pub fn new(symbols: Vec<Gf>) -> Self {
        Codeword { symbols }
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }
}

impl CodeSpec {
    /// RS(N, K) over GF(2^m) with the default primitive polynomial and
    /// points `alpha^0, ..., alpha^(N-1)`.
    pub fn new(n: usize, k: usize, m: u32) -> Result<Self, Error> {
        Self::with_field(n, k, FieldTables::new(m, None)?)
    }

    /// Same as [`CodeSpec::new`] over a caller-supplied field.
    pub fn with_field(n: usize, k: usize, field: FieldTables) -> Result<Self, Error> {
        if n > field.order() {
            return Err(Error::InvalidCode("N exceeds 2^m - 1 for default points"));
        }
        let points = (0..n).map(|j| field.alpha_pow(j)).collect();
        let narrow_sense = n == field.order();
        Self::build(n, k, field, points, narrow_sense)
    }

    /// Arbitrary distinct evaluation points. Syndromes and BM decoding are
    /// unavailable unless the points are the narrow-sense set.
    pub fn with_points(k: usize, field: FieldTables, points: Vec<Gf>) -> Result<Self, Error> {
        let n = points.len();
        let narrow_sense =
            n == field.order() && points.iter().enumerate().all(|(j, &p)| p == field.alpha_pow(j));
        Self::build(n, k, field, points, narrow_sense)
    }

    fn build(
        n: usize,
        k: usize,
        field: FieldTables,
        points: Vec<Gf>,
        narrow_sense: bool,
    ) -> Result<Self, Error> {
        if k == 0 || k > n {
            return Err(Error::InvalidCode("need 1 <= K <= N"));
        }
        if n > field.q() {
            return Err(Error::InvalidCode("N exceeds field size"));
        }
        let mut seen = alloc::vec![false; field.q()];
        for p in &points {
            if core::mem::replace(&mut seen[p.0 as usize], true) {
                return Err(Error::InvalidCode("evaluation points not distinct"));
            }
        }
        Ok(CodeSpec {
            n,
            k,
            field,
            points,
            narrow_sense,
        })
    }

    /// Block length N in symbols.
    #[inline]
    pub fn n_sym(&self) -> usize {
        self.n
    }

    /// Message length K in symbols.
    #[inline]
    pub fn k_sym(&self) -> usize {
        self.k
    }

    /// Bits per symbol.
    #[inline]
    pub fn m(&self) -> usize {
        self.field.m() as usize
    }

    /// n = N m.
    #[inline]
    pub fn n_bits(&self) -> usize {
        self.n * self.m()
    }

    /// k = K m.
    #[inline]
    pub fn k_bits(&self) -> usize {
        self.k * self.m()
    }

    pub fn d_min(&self) -> usize {
        self.n - self.k + 1
    }

    pub fn rate(&self) -> f64 {
        self.k as f64 / self.n as f64
    }

    #[inline]
    pub fn field(&self) -> &FieldTables {
        &self.field
    }

    #[inline]
    pub fn points(&self) -> &[Gf] {
        &self.points
    }

    pub fn is_narrow_sense(&self) -> bool {
        self.narrow_sense
    }

    /// Evaluates the message polynomial at every point.
    pub fn encode(&self, message: &[Gf]) -> Result<Codeword, Error> {
        if message.len() != self.k {
            return Err(Error::LengthMismatch {
                expected: self.k,
                got: message.len(),
            });
        }
        Ok(self.encode_poly(message))
    }

    /// Encodes any polynomial of degree < K given low-order first. Shorter
    /// slices are zero-padded.
    pub fn encode_poly(&self, coeffs: &[Gf]) -> Codeword {
        debug_assert!(coeffs.len() <= self.k);
        Codeword::new(
            self.points
                .iter()
                .map(|&x| eval_poly(&self.field, coeffs, x))
                .collect(),
        )
    }

    /// Binary image, m bits per symbol, least significant bit first.
    pub fn binary_image(&self, symbols: &[Gf]) -> Vec<u8> {
        let m = self.m();
        let mut bits = Vec::with_capacity(symbols.len() * m);
        for s in symbols {
            for b in 0..m {
                bits.push(((s.0 >> b) & 1) as u8);
            }
        }
        bits
    }

    /// Inverse of [`CodeSpec::binary_image`].
    pub fn from_bits(&self, bits: &[u8]) -> Result<Vec<Gf>, Error> {
        if bits.len() != self.n_bits() {
            return Err(Error::LengthMismatch {
                expected: self.n_bits(),
                got: bits.len(),
            });
        }
        Ok(symbols_from_bits(bits, self.m()))
    }

    /// Rows `i = 1..=N-K` of `H_s r`: `sum_j r_j alpha^(i j)`.
    pub fn syndrome(&self, word: &[Gf]) -> Result<Vec<Gf>, Error> {
        if !self.narrow_sense {
            return Err(Error::NotNarrowSense);
        }
        if word.len() != self.n {
            return Err(Error::LengthMismatch {
                expected: self.n,
                got: word.len(),
            });
        }
        let f = &self.field;
        Ok((1..=self.n - self.k)
            .map(|i| {
                // Horner in alpha^i over positions N-1 down to 0.
                let x = f.alpha_pow(i);
                word.iter().rev().fold(Gf::ZERO, |acc, &c| f.mul(acc, x) + c)
            })
            .collect())
    }

    /// True when `word` has an all-zero syndrome. Falls back to an
    /// interpolation check for non-narrow-sense points.
    pub fn is_codeword(&self, word: &[Gf]) -> bool {
        if word.len() != self.n {
            return false;
        }
        if self.narrow_sense {
            return self.syndrome(word).map(|s| s.iter().all(|x| x.is_zero())).unwrap_or(false);
        }
        // Interpolate through the first K points and compare the rest.
        let poly = lagrange(&self.field, &self.points[..self.k], &word[..self.k]);
        self.encode_poly(&poly).symbols == word
    }
}

/// Packs LSB-first bit groups of width `m` into symbols.
pub fn symbols_from_bits(bits: &[u8], m: usize) -> Vec<Gf> {
    bits.chunks(m)
        .map(|c| {
            Gf(c.iter()
                .enumerate()
                .fold(0u16, |acc, (b, &bit)| acc | (((bit & 1) as u16) << b)))
        })
        .collect()
}

/// Horner evaluation of a low-order-first polynomial.
#[inline]
pub fn eval_poly(f: &FieldTables, coeffs: &[Gf], x: Gf) -> Gf {
    coeffs.iter().rev().fold(Gf::ZERO, |acc, &c| f.mul(acc, x) + c)
}

/// Lagrange interpolation: the unique polynomial of degree < len through the
/// given points.
fn lagrange(f: &FieldTables, xs: &[Gf], ys: &[Gf]) -> Vec<Gf> {
    let k = xs.len();
    let mut out = alloc::vec![Gf::ZERO; k];
    for i in 0..k {
        // basis = prod_{j != i} (x - x_j) / (x_i - x_j)
        let mut basis = alloc::vec![Gf::ONE];
        let mut denom = Gf::ONE;
        for j in 0..k {
            if j == i {
                continue;
            }
            let mut next = alloc::vec![Gf::ZERO; basis.len() + 1];
            for (d, &c) in basis.iter().enumerate() {
                next[d + 1] += c;
                next[d] += f.mul(c, xs[j]);
            }
            basis = next;
            denom = f.mul(denom, xs[i] + xs[j]);
        }
        let scale = f.div(ys[i], denom);
        for (o, c) in out.iter_mut().zip(basis) {
            *o += f.mul(c, scale);
        }
    }
    out
}
