//! Arithmetic in GF(2^m) through exponent/logarithm tables.
//!
//! Elements are stored in the polynomial basis: bit `b` of [`Gf::0`] is the
//! coefficient of `x^b`. Addition is XOR of the bit patterns and is provided
//! through the `Add`/`Sub` operator impls on [`Gf`]; everything multiplicative
//! goes through [`FieldTables`].

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, AddAssign, Sub};

use crate::error::Error;

/// An element of GF(2^m), `m <= 16`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Gf(pub u16);

impl Gf {
    pub const ZERO: Gf = Gf(0);
    pub const ONE: Gf = Gf(1);

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl Add for Gf {
    type Output = Gf;
    #[allow(clippy::suspicious_arithmetic_impl)]
    #[inline]
    fn add(self, rhs: Gf) -> Gf {
        Gf(self.0 ^ rhs.0)
    }
}

impl AddAssign for Gf {
    #[allow(clippy::suspicious_op_assign_impl)]
    #[inline]
    fn add_assign(&mut self, rhs: Gf) {
        self.0 ^= rhs.0;
    }
}

impl Sub for Gf {
    type Output = Gf;
    #[allow(clippy::suspicious_arithmetic_impl)]
    #[inline]
    fn sub(self, rhs: Gf) -> Gf {
        Gf(self.0 ^ rhs.0)
    }
}

impl fmt::Display for Gf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Default primitive polynomials, indexed by `m`. Bit `i` is the coefficient
/// of `x^i`.
const DEFAULT_POLYS: [u32; 17] = [
    0, 0b11, 0b111, 0b1011, 0b1_0011, 0b10_0101, 0b100_0011, 0b1000_1001, 0b1_0001_1101,
    0x211, 0x409, 0x805, 0x1053, 0x201b, 0x4443, 0x8003, 0x1_100b,
];

/// Lookup tables for GF(2^m).
///
/// Immutable after construction; share it by reference (or clone it, it is at
/// most a few hundred kilobytes for m = 16).
#[derive(Clone, PartialEq, Eq)]
pub struct FieldTables {
    m: u32,
    prim_poly: u32,
    // Doubled so that exp[log a + log b] never needs a reduction.
    exp: Vec<u16>,
    log: Vec<u32>,
}

impl fmt::Debug for FieldTables {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldTables")
            .field("m", &self.m)
            .field("prim_poly", &format_args!("{:#b}", self.prim_poly))
            .finish()
    }
}

impl FieldTables {
    /// Builds the tables for GF(2^m). `prim_poly = None` selects the built-in
    /// default for `m`.
    pub fn new(m: u32, prim_poly: Option<u32>) -> Result<Self, Error> {
        if !(1..=16).contains(&m) {
            return Err(Error::InvalidDegree(m));
        }
        let poly = prim_poly.unwrap_or(DEFAULT_POLYS[m as usize]);
        if poly >> m != 1 {
            return Err(Error::NotPrimitive {
                poly,
                reason: "degree does not match m",
            });
        }
        let order = (1usize << m) - 1;
        let mut exp = vec![0u16; 2 * order];
        let mut log = vec![u32::MAX; order + 1];
        let mut x: u32 = 1;
        for i in 0..order {
            if log[x as usize] != u32::MAX {
                return Err(Error::NotPrimitive {
                    poly,
                    reason: "x has multiplicative order below 2^m - 1",
                });
            }
            exp[i] = x as u16;
            exp[i + order] = x as u16;
            log[x as usize] = i as u32;
            // m = 1 is GF(2) where alpha = 1; the shift-reduce below handles
            // it since x + 1 reduces 0b10 to 0b01.
            x <<= 1;
            if x >> m != 0 {
                x ^= poly;
            }
            if x == 0 {
                return Err(Error::NotPrimitive {
                    poly,
                    reason: "polynomial is reducible",
                });
            }
        }
        if x != 1 {
            return Err(Error::NotPrimitive {
                poly,
                reason: "alpha^(2^m - 1) != 1",
            });
        }
        Ok(FieldTables {
            m,
            prim_poly: poly,
            exp,
            log,
        })
    }

    /// Extension degree m.
    #[inline]
    pub fn m(&self) -> u32 {
        self.m
    }

    /// Field size q = 2^m.
    #[inline]
    pub fn q(&self) -> usize {
        1 << self.m
    }

    /// Multiplicative order 2^m - 1.
    #[inline]
    pub fn order(&self) -> usize {
        (1 << self.m) - 1
    }

    pub fn prim_poly(&self) -> u32 {
        self.prim_poly
    }

    /// The powers alpha^0 .. alpha^(q-2).
    pub fn exp_table(&self) -> &[u16] {
        &self.exp[..self.order()]
    }

    /// alpha^k for any k (reduced mod q - 1).
    #[inline]
    pub fn alpha_pow(&self, k: usize) -> Gf {
        Gf(self.exp[k % self.order()])
    }

    /// Discrete log base alpha. `None` for zero.
    #[inline]
    pub fn log(&self, a: Gf) -> Option<usize> {
        match self.log[a.0 as usize] {
            u32::MAX => None,
            l => Some(l as usize),
        }
    }

    #[inline]
    pub fn mul(&self, a: Gf, b: Gf) -> Gf {
        if a.0 == 0 || b.0 == 0 {
            return Gf::ZERO;
        }
        let l = self.log[a.0 as usize] + self.log[b.0 as usize];
        Gf(self.exp[l as usize])
    }

    pub fn inv(&self, a: Gf) -> Result<Gf, Error> {
        if a.0 == 0 {
            return Err(Error::ZeroInverse);
        }
        let l = self.log[a.0 as usize] as usize;
        Ok(Gf(self.exp[(self.order() - l) % self.order()]))
    }

    /// a / b. Panics when `b` is zero; use [`FieldTables::inv`] for a checked
    /// inverse.
    #[inline]
    pub fn div(&self, a: Gf, b: Gf) -> Gf {
        assert!(b.0 != 0, "division by zero in GF(2^m)");
        if a.0 == 0 {
            return Gf::ZERO;
        }
        let order = self.order() as u32;
        let l = self.log[a.0 as usize] + order - self.log[b.0 as usize];
        Gf(self.exp[l as usize])
    }

    /// a^e with the convention 0^0 = 1.
    pub fn pow(&self, a: Gf, e: usize) -> Gf {
        if e == 0 {
            return Gf::ONE;
        }
        if a.0 == 0 {
            return Gf::ZERO;
        }
        let l = self.log[a.0 as usize] as usize;
        Gf(self.exp[(l * (e % self.order())) % self.order()])
    }

    /// Iterator over every field element, zero first.
    pub fn elements(&self) -> impl Iterator<Item = Gf> {
        (0..self.q() as u32).map(|v| Gf(v as u16))
    }
}
