//! Multivariate polynomials over [`ExactScalar`] in a fixed alphabet of named symbols.

use crate::scalar::ExactScalar;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

pub const NUM_SYMS: usize = 10;

/// Named symbols usable in ring elements.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug, Hash)]
pub enum Sym {
    /// manifold dimension n
    N = 0,
    /// Einstein normalization c = scal/(4n(n-1))
    C = 1,
    /// product-block normalization lambda
    Lam = 2,
    /// first block dimension p
    P = 3,
    /// second block dimension q
    Q = 4,
    /// Laplace eigenvalue mu (of -Delta)
    Mu = 5,
    /// conformal factor phi
    Phi = 6,
    /// squared Weyl norm |W|^2 (scaling weight 4)
    W2 = 7,
    /// rescaling parameter s
    S = 8,
    /// generic commuting indeterminate x
    X = 9,
}

impl Sym {
    pub const ALL: [Sym; NUM_SYMS] = [
        Sym::N,
        Sym::C,
        Sym::Lam,
        Sym::P,
        Sym::Q,
        Sym::Mu,
        Sym::Phi,
        Sym::W2,
        Sym::S,
        Sym::X,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Sym::N => "n",
            Sym::C => "c",
            Sym::Lam => "lambda",
            Sym::P => "p",
            Sym::Q => "q",
            Sym::Mu => "mu",
            Sym::Phi => "phi",
            Sym::W2 => "W2",
            Sym::S => "s",
            Sym::X => "x",
        }
    }
}

type Monomial = [u8; NUM_SYMS];

const MONO_ONE: Monomial = [0; NUM_SYMS];

fn mono_mul(a: &Monomial, b: &Monomial) -> Monomial {
    let mut out = [0u8; NUM_SYMS];
    for i in 0..NUM_SYMS {
        out[i] = a[i].checked_add(b[i]).expect("exponent overflow");
    }
    out
}

/// Element of the polynomial ring Q(pi)[n, c, lambda, p, q, mu, phi, W2, s, x].
///
/// Zero coefficients are never stored, so equality is structural.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct RingElement {
    terms: BTreeMap<Monomial, ExactScalar>,
}

impl RingElement {
    pub fn zero() -> Self {
        RingElement {
            terms: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        RingElement::from_scalar(ExactScalar::one())
    }

    pub fn from_scalar(s: ExactScalar) -> Self {
        let mut terms = BTreeMap::new();
        if !s.is_zero() {
            terms.insert(MONO_ONE, s);
        }
        RingElement { terms }
    }

    pub fn from_int(n: i64) -> Self {
        RingElement::from_scalar(ExactScalar::from_int(n))
    }

    pub fn ratio(num: i64, den: i64) -> Self {
        RingElement::from_scalar(ExactScalar::ratio(num, den))
    }

    pub fn sym(s: Sym) -> Self {
        let mut mono = MONO_ONE;
        mono[s as usize] = 1;
        let mut terms = BTreeMap::new();
        terms.insert(mono, ExactScalar::one());
        RingElement { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The constant coefficient.
    pub fn constant_term(&self) -> ExactScalar {
        self.terms
            .get(&MONO_ONE)
            .cloned()
            .unwrap_or_else(ExactScalar::zero)
    }

    /// True iff the element is a constant (possibly zero).
    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| *m == MONO_ONE)
    }

    pub fn is_one(&self) -> bool {
        self.is_constant() && self.constant_term().is_one()
    }

    fn insert(&mut self, mono: Monomial, s: ExactScalar) {
        if s.is_zero() {
            return;
        }
        match self.terms.get_mut(&mono) {
            Some(c) => {
                let sum = c.clone() + s;
                if sum.is_zero() {
                    self.terms.remove(&mono);
                } else {
                    *c = sum;
                }
            }
            None => {
                self.terms.insert(mono, s);
            }
        }
    }

    pub fn scale(&self, s: &ExactScalar) -> Self {
        if s.is_zero() {
            return RingElement::zero();
        }
        let mut out = RingElement::zero();
        for (m, c) in &self.terms {
            out.insert(*m, c.clone() * s.clone());
        }
        out
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = RingElement::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Substitute a ring element for a symbol.
    pub fn subst(&self, sym: Sym, value: &RingElement) -> Self {
        let idx = sym as usize;
        let mut out = RingElement::zero();
        for (m, c) in &self.terms {
            let e = m[idx];
            let mut rest = *m;
            rest[idx] = 0;
            let mut term = RingElement {
                terms: BTreeMap::from([(rest, c.clone())]),
            };
            term = &term * &value.pow(e as u32);
            out = &out + &term;
        }
        out
    }

    /// Substitute an exact scalar for a symbol.
    pub fn subst_scalar(&self, sym: Sym, value: &ExactScalar) -> Self {
        self.subst(sym, &RingElement::from_scalar(value.clone()))
    }

    /// Checks every monomial has the given weighted degree; used for scaling
    /// invariance checks. `weights` maps symbol index to weight.
    pub fn is_weighted_homogeneous(&self, weights: &[(Sym, u32)], target: u32) -> bool {
        self.terms.keys().all(|m| {
            let w: u32 = weights
                .iter()
                .map(|(s, wt)| (m[*s as usize] as u32) * wt)
                .sum();
            w == target
        })
    }

    /// Generalized binomial coefficient binom(e, k) with ring-element upper index.
    pub fn binomial(e: &RingElement, k: u32) -> RingElement {
        let mut acc = RingElement::one();
        for i in 0..k {
            acc = &acc * &(e - &RingElement::from_int(i as i64));
        }
        acc.scale(&ExactScalar::factorial(k).recip())
    }

    /// Evaluate with every symbol assigned a scalar value; panics if a symbol
    /// present in the element lacks a value.
    pub fn eval(&self, values: &[(Sym, ExactScalar)]) -> ExactScalar {
        let mut acc = ExactScalar::zero();
        for (m, c) in &self.terms {
            let mut term = c.clone();
            for i in 0..NUM_SYMS {
                if m[i] > 0 {
                    let v = values
                        .iter()
                        .find(|(s, _)| *s as usize == i)
                        .unwrap_or_else(|| panic!("no value for symbol {}", Sym::ALL[i].name()));
                    term = term * v.1.pow(m[i] as u32);
                }
            }
            acc = acc + term;
        }
        acc
    }

    /// Coefficient extraction: coefficient of sym^k viewed as polynomial in `sym`.
    pub fn coeff_of(&self, sym: Sym, k: u8) -> RingElement {
        let idx = sym as usize;
        let mut out = RingElement::zero();
        for (m, c) in &self.terms {
            if m[idx] == k {
                let mut rest = *m;
                rest[idx] = 0;
                out.insert(rest, c.clone());
            }
        }
        out
    }
}

impl Add for &RingElement {
    type Output = RingElement;
    fn add(self, rhs: &RingElement) -> RingElement {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.insert(*m, c.clone());
        }
        out
    }
}

impl Sub for &RingElement {
    type Output = RingElement;
    fn sub(self, rhs: &RingElement) -> RingElement {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.insert(*m, -c.clone());
        }
        out
    }
}

impl Neg for &RingElement {
    type Output = RingElement;
    fn neg(self) -> RingElement {
        let mut out = RingElement::zero();
        for (m, c) in &self.terms {
            out.insert(*m, -c.clone());
        }
        out
    }
}

impl Mul for &RingElement {
    type Output = RingElement;
    fn mul(self, rhs: &RingElement) -> RingElement {
        let mut out = RingElement::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.insert(mono_mul(ma, mb), ca.clone() * cb.clone());
            }
        }
        out
    }
}

impl fmt::Display for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in &self.terms {
            let negative = c.signum() < 0;
            let magnitude = if negative { -c.clone() } else { c.clone() };
            let mut parts: Vec<String> = Vec::new();
            if *m == MONO_ONE || !magnitude.is_one() {
                parts.push(magnitude.to_string());
            }
            for (i, sym) in Sym::ALL.iter().enumerate() {
                match m[i] {
                    0 => {}
                    1 => parts.push(sym.name().to_string()),
                    e => parts.push(format!("{}^{}", sym.name(), e)),
                }
            }
            let term = parts.join("*");
            match (first, negative) {
                (true, false) => write!(f, "{}", term)?,
                (true, true) => write!(f, "-{}", term)?,
                (false, false) => write!(f, " + {}", term)?,
                (false, true) => write!(f, " - {}", term)?,
            }
            first = false;
        }
        Ok(())
    }
}

impl fmt::Debug for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn n() -> RingElement {
        RingElement::sym(Sym::N)
    }

    #[test]
    fn ring_basics() {
        let p = &(&n() * &n()) - &RingElement::from_int(1);
        let q = &(&n() - &RingElement::from_int(1)) * &(&n() + &RingElement::from_int(1));
        assert_eq!(p, q);
        assert!((&p - &q).is_zero());
    }

    #[test]
    fn binomial_in_symbol() {
        // binom(n, 2) = n(n-1)/2
        let b = RingElement::binomial(&n(), 2);
        let expect = (&n() * &(&n() - &RingElement::from_int(1))).scale(&ExactScalar::ratio(1, 2));
        assert_eq!(b, expect);
    }

    #[test]
    fn substitution() {
        let p = RingElement::binomial(&n(), 2);
        let v = p.subst_scalar(Sym::N, &ExactScalar::from_int(5));
        assert_eq!(v.constant_term(), ExactScalar::from_int(10));
    }

    #[test]
    fn evaluation_and_coefficient_extraction() {
        // p = n^2 c + 3 c^2
        let p = &(&n() * &(&n() * &RingElement::sym(Sym::C)))
            + &RingElement::sym(Sym::C).pow(2).scale(&ExactScalar::from_int(3));
        let v = p.eval(&[
            (Sym::N, ExactScalar::from_int(2)),
            (Sym::C, ExactScalar::ratio(1, 2)),
        ]);
        assert_eq!(v, ExactScalar::ratio(11, 4));
        // coefficient of c^1 is n^2
        assert_eq!(p.coeff_of(Sym::C, 1), &n() * &n());
        assert_eq!(p.coeff_of(Sym::C, 2), RingElement::from_int(3));
    }

    #[test]
    fn weighted_homogeneity() {
        // n * c^2 has c-weight 2
        let p = &n() * &RingElement::sym(Sym::C).pow(2);
        assert!(p.is_weighted_homogeneous(&[(Sym::C, 1), (Sym::W2, 2)], 2));
    }
}
