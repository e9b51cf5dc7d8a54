//! Truncated even power series in rho = r^2 with [`RingElement`] coefficients.
//!
//! Odd-in-r quantities are carried as r * EvenSeries by the caller. All
//! binary operations truncate to the minimum order of their inputs, and
//! equality compares coefficients up to the common order.

use crate::ring::RingElement;
use crate::scalar::ExactScalar;
use std::fmt;

#[derive(Clone, Debug)]
pub struct EvenSeries {
    coeffs: Vec<RingElement>,
}

impl EvenSeries {
    pub fn from_coeffs(coeffs: Vec<RingElement>) -> Self {
        assert!(!coeffs.is_empty(), "series needs at least the constant term");
        EvenSeries { coeffs }
    }

    pub fn constant(c: RingElement, order: usize) -> Self {
        let mut coeffs = vec![RingElement::zero(); order + 1];
        coeffs[0] = c;
        EvenSeries { coeffs }
    }

    pub fn one(order: usize) -> Self {
        EvenSeries::constant(RingElement::one(), order)
    }

    pub fn zero(order: usize) -> Self {
        EvenSeries {
            coeffs: vec![RingElement::zero(); order + 1],
        }
    }

    /// Truncation order K: coefficients for rho^k, k <= K, are known.
    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, k: usize) -> RingElement {
        self.coeffs.get(k).cloned().unwrap_or_else(RingElement::zero)
    }

    pub fn coeffs(&self) -> &[RingElement] {
        &self.coeffs
    }

    pub fn truncate(&self, order: usize) -> Self {
        let k = order.min(self.order());
        EvenSeries {
            coeffs: self.coeffs[..=k].to_vec(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn add(&self, rhs: &EvenSeries) -> EvenSeries {
        let order = self.order().min(rhs.order());
        let coeffs = (0..=order)
            .map(|k| &self.coeffs[k] + &rhs.coeffs[k])
            .collect();
        EvenSeries { coeffs }
    }

    pub fn sub(&self, rhs: &EvenSeries) -> EvenSeries {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> EvenSeries {
        EvenSeries {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn scale(&self, c: &RingElement) -> EvenSeries {
        EvenSeries {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    pub fn scale_scalar(&self, s: &ExactScalar) -> EvenSeries {
        EvenSeries {
            coeffs: self.coeffs.iter().map(|a| a.scale(s)).collect(),
        }
    }

    /// Multiply by rho^k (shifts coefficients up, same truncation order).
    pub fn shift_up(&self, k: usize) -> EvenSeries {
        let order = self.order();
        let mut coeffs = vec![RingElement::zero(); order + 1];
        for j in 0..=order {
            if j + k <= order {
                coeffs[j + k] = self.coeffs[j].clone();
            }
        }
        EvenSeries { coeffs }
    }

    /// Derivative with respect to rho; result order drops by one.
    pub fn d_rho(&self) -> EvenSeries {
        if self.order() == 0 {
            return EvenSeries::zero(0);
        }
        let coeffs = (1..=self.order())
            .map(|k| self.coeffs[k].scale(&ExactScalar::from_int(k as i64)))
            .collect();
        EvenSeries { coeffs }
    }

    pub fn substitute(&self, sym: crate::ring::Sym, value: &RingElement) -> EvenSeries {
        EvenSeries {
            coeffs: self.coeffs.iter().map(|c| c.subst(sym, value)).collect(),
        }
    }
}

impl PartialEq for EvenSeries {
    /// Equality up to the common truncation order.
    fn eq(&self, other: &Self) -> bool {
        let order = self.order().min(other.order());
        (0..=order).all(|k| self.coeffs[k] == other.coeffs[k])
    }
}

impl fmt::Display for EvenSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, c) in self.coeffs.iter().enumerate() {
            writeln!(f, "{}: {}", k, c)?;
        }
        Ok(())
    }
}

/// Cauchy product truncated at the minimum input order.
pub fn series_mul(a: &EvenSeries, b: &EvenSeries) -> EvenSeries {
    let order = a.order().min(b.order());
    let mut coeffs = vec![RingElement::zero(); order + 1];
    for i in 0..=order {
        if a.coeffs[i].is_zero() {
            continue;
        }
        for j in 0..=(order - i) {
            if b.coeffs[j].is_zero() {
                continue;
            }
            coeffs[i + j] = &coeffs[i + j] + &(&a.coeffs[i] * &b.coeffs[j]);
        }
    }
    EvenSeries { coeffs }
}

/// Multiplicative inverse; requires constant term 1.
pub fn series_inverse(a: &EvenSeries) -> EvenSeries {
    assert!(
        a.coeffs[0].is_one(),
        "series inverse requires constant term 1"
    );
    let order = a.order();
    let mut inv = vec![RingElement::zero(); order + 1];
    inv[0] = RingElement::one();
    for k in 1..=order {
        let mut acc = RingElement::zero();
        for j in 1..=k {
            acc = &acc + &(&a.coeffs[j] * &inv[k - j]);
        }
        inv[k] = -&acc;
    }
    EvenSeries { coeffs: inv }
}

/// Unique square root with constant term 1; requires constant term 1.
pub fn series_sqrt(a: &EvenSeries) -> EvenSeries {
    assert!(
        a.coeffs[0].is_one(),
        "series square root requires constant term 1"
    );
    let order = a.order();
    let mut w = vec![RingElement::zero(); order + 1];
    w[0] = RingElement::one();
    let half = ExactScalar::ratio(1, 2);
    for k in 1..=order {
        // 2 w_k = a_k - sum_{j=1..k-1} w_j w_{k-j}
        let mut acc = a.coeffs[k].clone();
        for j in 1..k {
            acc = &acc - &(&w[j] * &w[k - j]);
        }
        w[k] = acc.scale(&half);
    }
    EvenSeries { coeffs: w }
}

/// The series of (1 - base*rho)^exponent.
///
/// Coefficient k is binom(exponent, k) * (-base)^k, exact in the ring.
pub fn binomial_power_series(base: &RingElement, exponent: &RingElement, order: usize) -> EvenSeries {
    let mut coeffs = Vec::with_capacity(order + 1);
    for k in 0..=order {
        let b = RingElement::binomial(exponent, k as u32);
        let neg_base_k = (-base).pow(k as u32);
        coeffs.push(&b * &neg_base_k);
    }
    EvenSeries { coeffs }
}

/// The even series of f''(r) - a r^{-1} f'(r) for f an even series in rho = r^2.
///
/// By the chain rule this equals 4 rho f'' + (2 - 2a) f' with ' = d/d rho;
/// the result is known one order less than the input.
pub fn radial_second_derivative(f: &EvenSeries, a: &RingElement) -> EvenSeries {
    if f.order() == 0 {
        return EvenSeries::zero(0);
    }
    let order = f.order() - 1;
    let two_minus_2a = &RingElement::from_int(2) - &a.scale(&ExactScalar::from_int(2));
    let mut coeffs = vec![RingElement::zero(); order + 1];
    for j in 0..=order {
        // coefficient of rho^j: (j+1)(4j + 2 - 2a) f_{j+1}
        let f_next = f.coeffs[j + 1].clone();
        let factor = &RingElement::from_int(4 * j as i64) + &two_minus_2a;
        coeffs[j] = (&f_next * &factor).scale(&ExactScalar::from_int((j + 1) as i64));
    }
    EvenSeries { coeffs }
}

/// The even series S with int_0^r s w(s^2) ds = rho * S(rho):
/// S_k = w_k / (2(k+1)). Order is preserved.
pub fn half_integral(w: &EvenSeries) -> EvenSeries {
    let coeffs = w
        .coeffs
        .iter()
        .enumerate()
        .map(|(k, c)| c.scale(&ExactScalar::ratio(1, 2 * (k as i64 + 1))))
        .collect();
    EvenSeries { coeffs }
}

/// The even series of (dw/dr)^2 = 4 rho (w')^2 for w even in rho.
///
/// The result keeps the input order (coefficient 0 vanishes).
pub fn wdot_squared(w: &EvenSeries) -> EvenSeries {
    let dw = w.d_rho();
    if w.order() == 0 {
        return EvenSeries::zero(0);
    }
    let sq = series_mul(&dw, &dw); // order K-1
    let order = w.order();
    let mut coeffs = vec![RingElement::zero(); order + 1];
    for j in 1..=order {
        coeffs[j] = sq.coeff(j - 1).scale(&ExactScalar::from_int(4));
    }
    EvenSeries { coeffs }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::Sym;
    use crate::series::series_inverse;

    fn n() -> RingElement {
        RingElement::sym(Sym::N)
    }

    fn c() -> RingElement {
        RingElement::sym(Sym::C)
    }

    fn half_n() -> RingElement {
        RingElement::sym(Sym::N).scale(&ExactScalar::ratio(1, 2))
    }

    #[test]
    fn mul_difference_of_squares() {
        // (1 + rho)(1 - rho) = 1 - rho^2
        let a = EvenSeries::from_coeffs(vec![
            RingElement::one(),
            RingElement::one(),
            RingElement::zero(),
        ]);
        let b = EvenSeries::from_coeffs(vec![
            RingElement::one(),
            RingElement::from_int(-1),
            RingElement::zero(),
        ]);
        let p = series_mul(&a, &b);
        assert_eq!(p.coeff(0), RingElement::one());
        assert_eq!(p.coeff(1), RingElement::zero());
        assert_eq!(p.coeff(2), RingElement::from_int(-1));
    }

    #[test]
    fn mul_identity() {
        let v = binomial_power_series(&c(), &n(), 5);
        assert_eq!(series_mul(&v, &EvenSeries::one(5)), v);
    }

    #[test]
    fn binomial_inverse_pair() {
        // (1-c rho)^n * (1-c rho)^{-n} = 1 up to order 6
        let v = binomial_power_series(&c(), &n(), 6);
        let vi = binomial_power_series(&c(), &-&n(), 6);
        let p = series_mul(&v, &vi);
        assert_eq!(p, EvenSeries::one(6));
    }

    #[test]
    fn sqrt_of_one() {
        assert_eq!(series_sqrt(&EvenSeries::one(4)), EvenSeries::one(4));
    }

    #[test]
    fn sqrt_matches_binomial_half_exponent() {
        // sqrt((1-c rho)^n) = (1-c rho)^{n/2} termwise to order 6
        let v = binomial_power_series(&c(), &n(), 6);
        let w = series_sqrt(&v);
        let w2 = binomial_power_series(&c(), &half_n(), 6);
        assert_eq!(w, w2);
    }

    #[test]
    fn sqrt_perfect_square() {
        // sqrt(1 + 2 rho + rho^2) = 1 + rho
        let a = EvenSeries::from_coeffs(vec![
            RingElement::one(),
            RingElement::from_int(2),
            RingElement::one(),
        ]);
        let w = series_sqrt(&a);
        assert_eq!(w.coeff(0), RingElement::one());
        assert_eq!(w.coeff(1), RingElement::one());
        assert_eq!(w.coeff(2), RingElement::zero());
    }

    #[test]
    fn binomial_series_order_two() {
        // (1 - c rho)^n to order 2: 1 - nc rho + n(n-1)/2 c^2 rho^2
        let v = binomial_power_series(&c(), &n(), 2);
        assert_eq!(v.coeff(0), RingElement::one());
        assert_eq!(v.coeff(1), -&(&n() * &c()));
        let expect = (&RingElement::binomial(&n(), 2) * &c().pow(2)).clone();
        assert_eq!(v.coeff(2), expect);
    }

    #[test]
    fn binomial_sphere_a0() {
        // (1 - rho/4)^n to order 2: 1 - (n/4) rho + n(n-1)/32 rho^2
        let v = binomial_power_series(&RingElement::ratio(1, 4), &n(), 2);
        assert_eq!(v.coeff(1), n().scale(&ExactScalar::ratio(-1, 4)));
        let expect = (&n() * &(&n() - &RingElement::one())).scale(&ExactScalar::ratio(1, 32));
        assert_eq!(v.coeff(2), expect);
    }

    #[test]
    fn radial_derivative_contracts_constants() {
        let one = EvenSeries::one(4);
        assert!(radial_second_derivative(&one, &n()).is_zero());
    }

    #[test]
    fn radial_derivative_of_rho() {
        // f = rho: f'' - a f'/r = 2 - 2a
        let f = EvenSeries::from_coeffs(vec![
            RingElement::zero(),
            RingElement::one(),
            RingElement::zero(),
        ]);
        let d = radial_second_derivative(&f, &n());
        assert_eq!(
            d.coeff(0),
            &RingElement::from_int(2) - &n().scale(&ExactScalar::from_int(2))
        );
    }

    #[test]
    fn radial_derivative_einstein_potential() {
        // f = (1-c rho)^{n/2}, a = n-1:
        // result = c n (n-2) (1-c rho)^{n/2 - 1} / (1 - c rho) truncated
        let f = binomial_power_series(&c(), &half_n(), 7);
        let a = &n() - &RingElement::one();
        let d = radial_second_derivative(&f, &a);
        let cn = &c() * &(&n() * &(&n() - &RingElement::from_int(2)));
        let target = binomial_power_series(
            &c(),
            &(&half_n() - &RingElement::from_int(2)),
            6,
        )
        .scale(&cn);
        assert_eq!(d, target);
    }

    #[test]
    fn exponent_addition_law() {
        // (1-c rho)^{e1+e2} = (1-c rho)^{e1} (1-c rho)^{e2} with e1 = n, e2 = p
        let e1 = n();
        let e2 = RingElement::sym(Sym::P);
        let lhs = binomial_power_series(&c(), &(&e1 + &e2), 6);
        let rhs = series_mul(
            &binomial_power_series(&c(), &e1, 6),
            &binomial_power_series(&c(), &e2, 6),
        );
        assert_eq!(lhs, rhs);
    }

    #[test]
    #[should_panic(expected = "constant term 1")]
    fn sqrt_rejects_nonunit_constant() {
        let two = EvenSeries::constant(RingElement::from_int(2), 3);
        let _ = series_sqrt(&two);
    }

    #[test]
    #[should_panic(expected = "constant term 1")]
    fn inverse_rejects_nonunit_constant() {
        let z = EvenSeries::zero(3);
        let _ = series_inverse(&z);
    }

    #[test]
    fn wdot_squared_leading() {
        // w = 1 + w2 rho: (dw/dr)^2 = 4 w2^2 rho
        let w2 = c();
        let w = EvenSeries::from_coeffs(vec![RingElement::one(), w2.clone(), RingElement::zero()]);
        let ws = wdot_squared(&w);
        assert_eq!(ws.coeff(0), RingElement::zero());
        assert_eq!(ws.coeff(1), (&w2 * &w2).scale(&ExactScalar::from_int(4)));
    }
}
