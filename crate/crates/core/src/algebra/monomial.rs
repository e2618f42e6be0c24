//! Variables and monomials in the fixed variable universe `(q, a, b, t)`.

use std::cmp::Ordering;
use std::fmt;

/// Number of variables in the universe.
pub const NVARS: usize = 4;

const FIELD_BITS: u32 = 16;
const FIELD_MASK: u64 = (1 << FIELD_BITS) - 1;

/// One of the four engine variables, listed in canonical order `q > a > b > t`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Var {
    Q,
    A,
    B,
    T,
}

impl Var {
    pub const ALL: [Var; NVARS] = [Var::Q, Var::A, Var::B, Var::T];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn name(self) -> char {
        match self {
            Var::Q => 'q',
            Var::A => 'a',
            Var::B => 'b',
            Var::T => 't',
        }
    }

    pub fn from_name(c: char) -> Option<Var> {
        match c {
            'q' => Some(Var::Q),
            'a' => Some(Var::A),
            'b' => Some(Var::B),
            't' => Some(Var::T),
            _ => None,
        }
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())
    }
}

/// A power product `q^i a^j b^k t^l`, packed into one word (16 bits per exponent,
/// `q` in the most significant field).
///
/// Ordering is graded lexicographic with `q > a > b > t`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Monomial(u64);

impl Monomial {
    pub const ONE: Monomial = Monomial(0);

    pub fn new(exps: [u32; NVARS]) -> Monomial {
        let mut packed = 0u64;
        for (i, &e) in exps.iter().enumerate() {
            assert!(u64::from(e) <= FIELD_MASK, "exponent {e} exceeds the monomial field width");
            packed |= u64::from(e) << shift(i);
        }
        Monomial(packed)
    }

    pub fn var(v: Var, e: u32) -> Monomial {
        let mut exps = [0; NVARS];
        exps[v.index()] = e;
        Monomial::new(exps)
    }

    pub fn exp(self, v: Var) -> u32 {
        self.exp_at(v.index())
    }

    pub(crate) fn exp_at(self, i: usize) -> u32 {
        ((self.0 >> shift(i)) & FIELD_MASK) as u32
    }

    pub fn exps(self) -> [u32; NVARS] {
        std::array::from_fn(|i| self.exp_at(i))
    }

    pub fn degree(self) -> u32 {
        (0..NVARS).map(|i| self.exp_at(i)).sum()
    }

    pub fn is_one(self) -> bool {
        self.0 == 0
    }

    pub(crate) fn packed(self) -> u64 {
        self.0
    }

    pub(crate) fn from_packed(p: u64) -> Monomial {
        Monomial(p)
    }

    /// Product of two monomials. Exponent overflow is a caller bug.
    pub fn mul(self, other: Monomial) -> Monomial {
        debug_assert!((0..NVARS).all(|i| self.exp_at(i) + other.exp_at(i) <= FIELD_MASK as u32));
        Monomial(self.0 + other.0)
    }

    /// `self / other` when `other` divides `self`.
    pub fn div(self, other: Monomial) -> Option<Monomial> {
        if self.divisible_by(other) {
            Some(Monomial(self.0 - other.0))
        } else {
            None
        }
    }

    pub fn divisible_by(self, other: Monomial) -> bool {
        (0..NVARS).all(|i| self.exp_at(i) >= other.exp_at(i))
    }

    /// Componentwise minimum (monomial gcd).
    pub fn min(self, other: Monomial) -> Monomial {
        Monomial::new(std::array::from_fn(|i| self.exp_at(i).min(other.exp_at(i))))
    }

    pub fn pow(self, e: u32) -> Monomial {
        Monomial::new(std::array::from_fn(|i| self.exp_at(i) * e))
    }

    /// Same monomial with the exponent of `v` set to zero.
    pub fn without(self, v: Var) -> Monomial {
        Monomial(self.0 & !(FIELD_MASK << shift(v.index())))
    }
}

fn shift(i: usize) -> u32 {
    FIELD_BITS * (NVARS - 1 - i) as u32
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Monomial({self})")
    }
}

/// Prints in the reading order `a b t q` (the order the q-series literature writes
/// products like `atq`), e.g. `a^2*t*q^3`. The unit monomial prints as `1`.
impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let mut first = true;
        for v in [Var::A, Var::B, Var::T, Var::Q] {
            let e = self.exp(v);
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{v}^{e}")?;
            }
        }
        Ok(())
    }
}
