//! Truncated multivariate polynomials for pointwise jet calculus.
//!
//! Variables are laid out as [x_0..x_{nx-1}, xi_0..xi_{nxi-1}, rho]; the
//! truncation bounds the total x-degree and the rho-degree, while xi-degrees
//! are never truncated (symbols are polynomial in the fibers).

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use std::collections::BTreeMap;
use std::fmt;

pub type Rat = BigRational;

pub fn rat(num: i64, den: i64) -> Rat {
    Rat::new(BigInt::from(num), BigInt::from(den))
}

pub fn rat_int(num: i64) -> Rat {
    Rat::from_integer(BigInt::from(num))
}

/// Complex rationals for symbol calculus (D_x carries a factor -i).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CRat {
    pub re: Rat,
    pub im: Rat,
}

impl CRat {
    pub fn new(re: Rat, im: Rat) -> Self {
        CRat { re, im }
    }

    pub fn i_times(&self) -> CRat {
        // multiply by -i: (a + bi)(-i) = b - ai
        CRat {
            re: self.im.clone(),
            im: -self.re.clone(),
        }
    }
}

/// Coefficient field abstraction shared by real and complex rationals.
pub trait Scalar: Clone + PartialEq + fmt::Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn vanishes(&self) -> bool;
    fn add_ref(&self, rhs: &Self) -> Self;
    fn sub_ref(&self, rhs: &Self) -> Self;
    fn mul_ref(&self, rhs: &Self) -> Self;
    fn neg_ref(&self) -> Self;
    fn inv(&self) -> Self;
    fn from_int(v: i64) -> Self;
    fn from_rat(v: &Rat) -> Self;
    fn div_int(&self, v: i64) -> Self {
        self.mul_ref(&Self::from_int(v).inv())
    }
}

impl Scalar for Rat {
    fn zero() -> Self {
        rat_int(0)
    }
    fn one() -> Self {
        rat_int(1)
    }
    fn vanishes(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add_ref(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub_ref(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul_ref(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn inv(&self) -> Self {
        assert!(!Zero::is_zero(self), "division by zero");
        self.recip()
    }
    fn from_int(v: i64) -> Self {
        rat_int(v)
    }
    fn from_rat(v: &Rat) -> Self {
        v.clone()
    }
}

impl Scalar for CRat {
    fn zero() -> Self {
        CRat::new(rat_int(0), rat_int(0))
    }
    fn one() -> Self {
        CRat::new(rat_int(1), rat_int(0))
    }
    fn vanishes(&self) -> bool {
        Zero::is_zero(&self.re) && Zero::is_zero(&self.im)
    }
    fn add_ref(&self, rhs: &Self) -> Self {
        CRat::new(&self.re + &rhs.re, &self.im + &rhs.im)
    }
    fn sub_ref(&self, rhs: &Self) -> Self {
        CRat::new(&self.re - &rhs.re, &self.im - &rhs.im)
    }
    fn mul_ref(&self, rhs: &Self) -> Self {
        CRat::new(
            &(&self.re * &rhs.re) - &(&self.im * &rhs.im),
            &(&self.re * &rhs.im) + &(&self.im * &rhs.re),
        )
    }
    fn neg_ref(&self) -> Self {
        CRat::new(-self.re.clone(), -self.im.clone())
    }
    fn inv(&self) -> Self {
        let norm = &(&self.re * &self.re) + &(&self.im * &self.im);
        assert!(!Zero::is_zero(&norm), "division by zero");
        CRat::new(&self.re / &norm, -(&self.im / &norm))
    }
    fn from_int(v: i64) -> Self {
        CRat::new(rat_int(v), rat_int(0))
    }
    fn from_rat(v: &Rat) -> Self {
        CRat::new(v.clone(), rat_int(0))
    }
}

/// Variable layout and truncation degrees shared by a family of polynomials.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct VarSpec {
    pub nx: usize,
    pub nxi: usize,
    pub has_rho: bool,
    pub deg_x: usize,
    pub deg_rho: usize,
}

impl VarSpec {
    pub fn jets(nx: usize, deg_x: usize) -> Self {
        VarSpec {
            nx,
            nxi: 0,
            has_rho: false,
            deg_x,
            deg_rho: 0,
        }
    }

    pub fn family(nx: usize, deg_x: usize, deg_rho: usize) -> Self {
        VarSpec {
            nx,
            nxi: 0,
            has_rho: true,
            deg_x,
            deg_rho,
        }
    }

    pub fn symbols(nx: usize, deg_x: usize) -> Self {
        VarSpec {
            nx,
            nxi: nx,
            has_rho: false,
            deg_x,
            deg_rho: 0,
        }
    }

    pub fn symbol_family(nx: usize, deg_x: usize, deg_rho: usize) -> Self {
        VarSpec {
            nx,
            nxi: nx,
            has_rho: true,
            deg_x,
            deg_rho,
        }
    }

    pub fn nvars(&self) -> usize {
        self.nx + self.nxi + usize::from(self.has_rho)
    }

    pub fn x_index(&self, i: usize) -> usize {
        assert!(i < self.nx);
        i
    }

    pub fn xi_index(&self, i: usize) -> usize {
        assert!(i < self.nxi);
        self.nx + i
    }

    pub fn rho_index(&self) -> usize {
        assert!(self.has_rho);
        self.nx + self.nxi
    }

    fn admits(&self, expo: &[u8]) -> bool {
        let xdeg: usize = expo[..self.nx].iter().map(|&e| e as usize).sum();
        if xdeg > self.deg_x {
            return false;
        }
        if self.has_rho && expo[self.rho_index()] as usize > self.deg_rho {
            return false;
        }
        true
    }
}

/// Sparse truncated polynomial over the scalar C.
#[derive(Clone, PartialEq, Debug)]
pub struct XPoly<C: Scalar> {
    nvars: usize,
    terms: BTreeMap<Vec<u8>, C>,
}

impl<C: Scalar> XPoly<C> {
    pub fn zero(spec: &VarSpec) -> Self {
        XPoly {
            nvars: spec.nvars(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(spec: &VarSpec, c: C) -> Self {
        let mut p = XPoly::zero(spec);
        if !c.vanishes() {
            p.terms.insert(vec![0; p.nvars], c);
        }
        p
    }

    pub fn one(spec: &VarSpec) -> Self {
        XPoly::constant(spec, C::one())
    }

    pub fn var(spec: &VarSpec, index: usize) -> Self {
        let mut expo = vec![0u8; spec.nvars()];
        expo[index] = 1;
        let mut p = XPoly::zero(spec);
        p.terms.insert(expo, C::one());
        p
    }

    pub fn monomial(spec: &VarSpec, expo: Vec<u8>, c: C) -> Self {
        assert_eq!(expo.len(), spec.nvars());
        let mut p = XPoly::zero(spec);
        if !c.vanishes() && spec.admits(&expo) {
            p.terms.insert(expo, c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u8>, &C)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    fn insert(&mut self, expo: Vec<u8>, c: C) {
        if c.vanishes() {
            return;
        }
        match self.terms.get_mut(&expo) {
            Some(existing) => {
                let sum = existing.add_ref(&c);
                if sum.vanishes() {
                    self.terms.remove(&expo);
                } else {
                    *existing = sum;
                }
            }
            None => {
                self.terms.insert(expo, c);
            }
        }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.insert(e.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> Self {
        XPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.clone(), c.neg_ref()))
                .collect(),
        }
    }

    pub fn scale(&self, c: &C) -> Self {
        if c.vanishes() {
            return XPoly {
                nvars: self.nvars,
                terms: BTreeMap::new(),
            };
        }
        XPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, v)| (e.clone(), v.mul_ref(c)))
                .collect(),
        }
    }

    pub fn mul(&self, rhs: &Self, spec: &VarSpec) -> Self {
        let mut out = XPoly::zero(spec);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                let mut e = ea.clone();
                for (i, v) in eb.iter().enumerate() {
                    e[i] = e[i].checked_add(*v).expect("exponent overflow");
                }
                if spec.admits(&e) {
                    out.insert(e, ca.mul_ref(cb));
                }
            }
        }
        out
    }

    /// Partial derivative with respect to variable `index`.
    pub fn derive(&self, index: usize) -> Self {
        let mut out = XPoly {
            nvars: self.nvars,
            terms: BTreeMap::new(),
        };
        for (e, c) in &self.terms {
            if e[index] == 0 {
                continue;
            }
            let mut e2 = e.clone();
            let k = e2[index];
            e2[index] -= 1;
            out.insert(e2, c.mul_ref(&C::from_int(k as i64)));
        }
        out
    }

    /// Constant coefficient.
    pub fn constant_term(&self) -> C {
        self.terms
            .get(&vec![0; self.nvars])
            .cloned()
            .unwrap_or_else(C::zero)
    }

    /// Keep only terms whose exponents vanish on x-variables (evaluation at
    /// the origin of the manifold coordinates; xi and rho survive).
    pub fn at_x0(&self, spec: &VarSpec) -> Self {
        let mut out = XPoly::zero(spec);
        for (e, c) in &self.terms {
            if e[..spec.nx].iter().all(|&v| v == 0) {
                out.insert(e.clone(), c.clone());
            }
        }
        out
    }

    /// Coefficient of rho^k (the rho exponent is removed from the result).
    pub fn rho_coeff(&self, spec: &VarSpec, k: usize) -> Self {
        let ri = spec.rho_index();
        let mut out = XPoly::zero(spec);
        for (e, c) in &self.terms {
            if e[ri] as usize == k {
                let mut e2 = e.clone();
                e2[ri] = 0;
                out.insert(e2, c.clone());
            }
        }
        out
    }

    /// Multiply by rho^k.
    pub fn rho_shift(&self, spec: &VarSpec, k: usize) -> Self {
        let ri = spec.rho_index();
        let mut out = XPoly::zero(spec);
        for (e, c) in &self.terms {
            let mut e2 = e.clone();
            let total = e2[ri] as usize + k;
            if total <= spec.deg_rho {
                e2[ri] = total as u8;
                out.insert(e2, c.clone());
            }
        }
        out
    }

    /// Total degree in the x variables of the lowest term, or None if zero.
    pub fn min_xrho_degree(&self, spec: &VarSpec) -> Option<usize> {
        self.terms
            .keys()
            .map(|e| {
                let xdeg: usize = e[..spec.nx].iter().map(|&v| v as usize).sum();
                let rdeg = if spec.has_rho {
                    e[spec.rho_index()] as usize
                } else {
                    0
                };
                xdeg + rdeg
            })
            .min()
    }

    /// Truncated (1 + u)^{-1} for self = 1 + u with u lacking a constant term.
    pub fn inverse_unit(&self, spec: &VarSpec) -> Self {
        let u = self.sub(&XPoly::one(spec));
        assert!(
            u.constant_term().vanishes() && self.constant_term() == C::one(),
            "inverse needs constant term 1"
        );
        let bound = spec.deg_x + spec.deg_rho;
        let mut acc = XPoly::one(spec);
        let mut pow = XPoly::one(spec);
        for k in 1..=bound {
            pow = pow.mul(&u, spec);
            if pow.is_zero() {
                break;
            }
            let signed = if k % 2 == 0 { pow.clone() } else { pow.neg() };
            acc = acc.add(&signed);
        }
        acc
    }

    /// Truncated sqrt(1 + u) by the binomial series; needs constant term 1.
    pub fn sqrt_unit(&self, spec: &VarSpec) -> Self {
        let u = self.sub(&XPoly::one(spec));
        assert!(
            u.constant_term().vanishes() && self.constant_term() == C::one(),
            "square root needs constant term 1"
        );
        let bound = spec.deg_x + spec.deg_rho;
        let mut acc = XPoly::one(spec);
        let mut pow = XPoly::one(spec);
        let mut coeff = C::one();
        for k in 1..=bound {
            pow = pow.mul(&u, spec);
            if pow.is_zero() {
                break;
            }
            // binom(1/2, k) = binom(1/2, k-1) * (1/2 - (k-1)) / k
            let half_minus = C::from_rat(&rat(1, 2)).sub_ref(&C::from_int(k as i64 - 1));
            coeff = coeff.mul_ref(&half_minus).div_int(k as i64);
            acc = acc.add(&pow.scale(&coeff));
        }
        acc
    }

    /// Truncated exp(u); needs vanishing constant term.
    pub fn exp_nilpotent(&self, spec: &VarSpec) -> Self {
        assert!(
            self.constant_term().vanishes(),
            "exponential needs vanishing constant term"
        );
        let bound = spec.deg_x + spec.deg_rho;
        let mut acc = XPoly::one(spec);
        let mut pow = XPoly::one(spec);
        for k in 1..=bound {
            pow = pow.mul(self, spec);
            if pow.is_zero() {
                break;
            }
            acc = acc.add(&pow.scale(&C::one().div_int(factorial_i64(k))));
        }
        acc
    }
}

fn factorial_i64(k: usize) -> i64 {
    (1..=k as i64).product::<i64>().max(1)
}

impl XPoly<Rat> {
    /// Lift to complex coefficients.
    pub fn to_complex(&self) -> XPoly<CRat> {
        XPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.clone(), CRat::new(c.clone(), rat_int(0))))
                .collect(),
        }
    }
}

impl XPoly<CRat> {
    /// The real part; asserts the imaginary part is absent if `strict`.
    pub fn real_part(&self, strict: bool) -> XPoly<Rat> {
        let mut terms = BTreeMap::new();
        for (e, c) in &self.terms {
            if strict {
                assert!(Zero::is_zero(&c.im), "unexpected imaginary part {:?}", c);
            }
            if !Zero::is_zero(&c.re) {
                terms.insert(e.clone(), c.re.clone());
            }
        }
        XPoly {
            nvars: self.nvars,
            terms,
        }
    }
}

/// Normalized Gaussian moment of a xi-monomial: odd moments vanish, and each
/// even exponent contributes (a-1)!!/2^{a/2}.
pub fn gaussian_moment_exponents(expos: &[u8]) -> Rat {
    let mut acc = rat_int(1);
    for &a in expos {
        if a % 2 == 1 {
            return rat_int(0);
        }
        let mut dfac = rat_int(1);
        let mut k = a as i64 - 1;
        while k > 1 {
            dfac *= rat_int(k);
            k -= 2;
        }
        if a >= 1 {
            dfac *= rat_int(k.max(1));
        }
        acc *= dfac / rat_int(2).pow((a / 2) as i32);
    }
    acc
}

/// Gaussian moment recursion check helper: moment(alpha + 2 e_i) =
/// ((alpha_i + 1)/2) moment(alpha).
pub fn gaussian_moment(alpha: &[u8]) -> Rat {
    gaussian_moment_exponents(alpha)
}

/// Integrate out the xi variables against the normalized Gaussian; x
/// variables must already be evaluated away, rho survives into the result
/// exponents.
pub fn integrate_xi<C: Scalar>(p: &XPoly<C>, spec: &VarSpec) -> XPoly<C> {
    let mut out = XPoly::zero(spec);
    for (e, c) in p.terms() {
        assert!(
            e[..spec.nx].iter().all(|&v| v == 0),
            "evaluate at x = 0 before integrating"
        );
        let moment = gaussian_moment_exponents(&e[spec.nx..spec.nx + spec.nxi]);
        if Zero::is_zero(&moment) {
            continue;
        }
        let mut e2 = e.clone();
        for v in e2[spec.nx..spec.nx + spec.nxi].iter_mut() {
            *v = 0;
        }
        out.insert(e2, c.mul_ref(&C::from_rat(&moment)));
    }
    out
}

impl<C: Scalar> fmt::Display for XPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(e, c)| format!("{:?}*{:?}", c, e))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}
