//! Compositions, the multiplicities m_I and n_I, the change of basis between
//! GJMS operators P_{2N} and building-block operators M_{2N} in the free
//! algebra, and the sphere specialization.

use crate::ring::{RingElement, Sym};
use crate::scalar::ExactScalar;
use std::collections::BTreeMap;

/// Ordered tuple of positive integers.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct Composition {
    parts: Vec<u32>,
}

impl Composition {
    pub fn new(parts: Vec<u32>) -> Self {
        assert!(!parts.is_empty(), "composition must be nonempty");
        assert!(parts.iter().all(|&p| p >= 1), "parts must be positive");
        Composition { parts }
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn size(&self) -> u32 {
        self.parts.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// The reversed composition; reversal is an involution.
    pub fn reversed(&self) -> Composition {
        let mut parts = self.parts.clone();
        parts.reverse();
        Composition { parts }
    }
}

/// All compositions of n, in lexicographic order (2^{n-1} of them).
pub fn compositions(n: u32) -> Vec<Composition> {
    assert!(n >= 1);
    let mut out = Vec::new();
    let mut current = Vec::new();
    fn rec(rem: u32, current: &mut Vec<u32>, out: &mut Vec<Composition>) {
        if rem == 0 {
            out.push(Composition::new(current.clone()));
            return;
        }
        for first in 1..=rem {
            current.push(first);
            rec(rem - first, current, out);
            current.pop();
        }
    }
    rec(n, &mut current, &mut out);
    out
}

/// The multiplicity pair (m_I, n_I).
///
/// m_I = -(-1)^r |I|! (|I|-1)! prod_j 1/(I_j! (I_j-1)!) prod_j 1/(I_j + I_{j+1}),
/// n_I = prod_j binom(sum_{k<=j} I_k - 1, I_j - 1) binom(sum_{k>=j} I_k - 1, I_j - 1).
pub fn coeff_pair(i: &Composition) -> (ExactScalar, ExactScalar) {
    let parts = i.parts();
    let r = parts.len();
    let size = i.size();

    // m_I
    let mut m = ExactScalar::factorial(size) * ExactScalar::factorial(size - 1);
    if r % 2 == 0 {
        m = -m;
    }
    for &p in parts {
        m = m / (ExactScalar::factorial(p) * ExactScalar::factorial(p - 1));
    }
    for w in parts.windows(2) {
        m = m / ExactScalar::from_int((w[0] + w[1]) as i64);
    }

    // n_I
    let mut n = ExactScalar::one();
    let mut prefix = 0u32;
    for (j, &p) in parts.iter().enumerate() {
        prefix += p;
        let suffix: u32 = parts[j..].iter().sum();
        n = n * ExactScalar::binomial(prefix as i64 - 1, p - 1);
        n = n * ExactScalar::binomial(suffix as i64 - 1, p - 1);
    }
    (m, n)
}

/// Element of the free algebra on either generator alphabet; words are
/// compositions, the product is bilinear concatenation.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct FreeAlgebraElement {
    terms: BTreeMap<Vec<u32>, ExactScalar>,
}

impl FreeAlgebraElement {
    pub fn zero() -> Self {
        FreeAlgebraElement {
            terms: BTreeMap::new(),
        }
    }

    pub fn word(word: Vec<u32>, coeff: ExactScalar) -> Self {
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(word, coeff);
        }
        FreeAlgebraElement { terms }
    }

    pub fn terms(&self) -> &BTreeMap<Vec<u32>, ExactScalar> {
        &self.terms
    }

    pub fn add_term(&mut self, word: Vec<u32>, coeff: ExactScalar) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.get_mut(&word) {
            Some(c) => {
                let sum = c.clone() + coeff;
                if sum.is_zero() {
                    self.terms.remove(&word);
                } else {
                    *c = sum;
                }
            }
            None => {
                self.terms.insert(word, coeff);
            }
        }
    }

    pub fn add(&self, rhs: &FreeAlgebraElement) -> FreeAlgebraElement {
        let mut out = self.clone();
        for (w, c) in &rhs.terms {
            out.add_term(w.clone(), c.clone());
        }
        out
    }

    /// Concatenation product.
    pub fn mul(&self, rhs: &FreeAlgebraElement) -> FreeAlgebraElement {
        let mut out = FreeAlgebraElement::zero();
        for (wa, ca) in &self.terms {
            for (wb, cb) in &rhs.terms {
                let mut w = wa.clone();
                w.extend_from_slice(wb);
                out.add_term(w, ca.clone() * cb.clone());
            }
        }
        out
    }

    pub fn is_single_word(&self, word: &[u32]) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .get(word)
                .map(|c| c.is_one())
                .unwrap_or(false)
    }
}

/// M_{2N} = sum_{|I|=N} m_I P_{2I} as a free-algebra element over the P alphabet.
pub fn expand_m_in_p(n: u32) -> FreeAlgebraElement {
    let mut out = FreeAlgebraElement::zero();
    for i in compositions(n) {
        let (m, _) = coeff_pair(&i);
        out.add_term(i.parts().to_vec(), m);
    }
    out
}

/// P_{2N} = sum_{|I|=N} n_I M_{2I} as a free-algebra element over the M alphabet.
pub fn expand_p_in_m(n: u32) -> FreeAlgebraElement {
    let mut out = FreeAlgebraElement::zero();
    for i in compositions(n) {
        let (_, ni) = coeff_pair(&i);
        out.add_term(i.parts().to_vec(), ni);
    }
    out
}

/// Substitute one expansion into the other: each letter a of every word is
/// replaced by `letter_expansion(a)` and the results multiplied out.
fn substitute(
    element: &FreeAlgebraElement,
    letter_expansion: impl Fn(u32) -> FreeAlgebraElement,
) -> FreeAlgebraElement {
    let mut out = FreeAlgebraElement::zero();
    for (word, coeff) in element.terms() {
        let mut acc = FreeAlgebraElement::word(Vec::new(), ExactScalar::one());
        for &letter in word {
            acc = acc.mul(&letter_expansion(letter));
        }
        for (w, c) in acc.terms() {
            out.add_term(w.clone(), coeff.clone() * c.clone());
        }
    }
    out
}

/// Checks that the two expansions are mutually inverse at weight N: in both
/// substitution orders the result is the single weight-N word with
/// coefficient 1.
pub fn verify_inversion(n: u32) -> bool {
    let p_in_m = expand_p_in_m(n);
    let expanded = substitute(&p_in_m, expand_m_in_p);
    if !expanded.is_single_word(&[n]) {
        return false;
    }
    let m_in_p = expand_m_in_p(n);
    let expanded = substitute(&m_in_p, expand_p_in_m);
    expanded.is_single_word(&[n])
}

/// The telescoping identity
/// I_1(I_1+I_2) + (I_1+I_2)(I_2+I_3) + ... + (I_1+...+I_{r-1})(I_{r-1}+I_r)
/// = |I| (|I| - I_r), together with the full coefficient identity
/// -(N - I_r) m_I = sum_a binom(N-1, I_1+..+I_a - 1)^2 (N - I_1-..-I_a)
///                  m_{(I_1..I_a)} m_{(I_{a+1}..I_r)}.
pub fn bracket_identity_check(i: &Composition) -> bool {
    let parts = i.parts();
    let r = parts.len();
    if r < 2 {
        // empty sum = 0 = N * 0; vacuous
        return true;
    }
    let size = i.size() as i64;

    // telescoping sum
    let mut tele = 0i64;
    let mut prefix = 0i64;
    for a in 0..r - 1 {
        prefix += parts[a] as i64;
        tele += prefix * (parts[a] as i64 + parts[a + 1] as i64);
    }
    if tele != size * (size - parts[r - 1] as i64) {
        return false;
    }

    // full coefficient identity
    let (m_i, _) = coeff_pair(i);
    let lhs = -(ExactScalar::from_int(size - parts[r - 1] as i64)) * m_i;
    let mut rhs = ExactScalar::zero();
    let mut head_sum = 0i64;
    for a in 1..r {
        head_sum += parts[a - 1] as i64;
        let head = Composition::new(parts[..a].to_vec());
        let tail = Composition::new(parts[a..].to_vec());
        let (m_head, _) = coeff_pair(&head);
        let (m_tail, _) = coeff_pair(&tail);
        let binom = ExactScalar::binomial(size - 1, (head_sum - 1) as u32);
        rhs = rhs + binom.clone() * binom * ExactScalar::from_int(size - head_sum) * m_head * m_tail;
    }
    lhs == rhs
}

/// Sphere specialization: substituting M_{2k} -> (k-1)!^2 k x into
/// P_{2N} = sum n_I M_{2I} must give prod_{k=0}^{N-1} (x + k(k+1)).
pub fn sphere_factorization(n: u32) -> bool {
    let x = RingElement::sym(Sym::X);
    let mut sum = RingElement::zero();
    for i in compositions(n) {
        let (_, ni) = coeff_pair(&i);
        let mut term = RingElement::from_scalar(ni);
        for &a in i.parts() {
            let factor = ExactScalar::factorial(a - 1).pow(2) * ExactScalar::from_int(a as i64);
            term = &term * &x.scale(&factor);
        }
        sum = &sum + &term;
    }
    let mut product = RingElement::one();
    for k in 0..n as i64 {
        product = &product * &(&x + &RingElement::from_int(k * (k + 1)));
    }
    sum == product
}

/// Generating-function bookkeeping: the scalar weights of M_{2N} inside the
/// two generating functions. In H(r) the weight is 1/((N-1)!^2 4^{N-1}),
/// in K(r) it is 1/(N! (N-1)! 4^N).
pub fn generating_weights(n: u32) -> (ExactScalar, ExactScalar) {
    let four = ExactScalar::from_int(4);
    let h = (ExactScalar::factorial(n - 1).pow(2) * four.pow(n - 1)).recip();
    let k = (ExactScalar::factorial(n) * ExactScalar::factorial(n - 1) * four.pow(n)).recip();
    (h, k)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn comp(parts: &[u32]) -> Composition {
        Composition::new(parts.to_vec())
    }

    #[test]
    fn singleton_multiplicities() {
        for n in 1..=6 {
            let (m, ni) = coeff_pair(&comp(&[n]));
            assert!(m.is_one());
            assert!(ni.is_one());
        }
    }

    #[test]
    fn m4_coefficients() {
        // M_4 = P_4 - P_2^2
        let (m, n) = coeff_pair(&comp(&[1, 1]));
        assert_eq!(m, ExactScalar::from_int(-1));
        assert_eq!(n, ExactScalar::one());
        let e = expand_m_in_p(2);
        assert_eq!(e.terms().get(&vec![2u32]), Some(&ExactScalar::one()));
        assert_eq!(
            e.terms().get(&vec![1u32, 1]),
            Some(&ExactScalar::from_int(-1))
        );
        // P_4 = M_4 + M_2^2
        let p = expand_p_in_m(2);
        assert_eq!(p.terms().get(&vec![2u32]), Some(&ExactScalar::one()));
        assert_eq!(p.terms().get(&vec![1u32, 1]), Some(&ExactScalar::one()));
    }

    #[test]
    fn coeffs_one_two() {
        let (m, n) = coeff_pair(&comp(&[1, 2]));
        assert_eq!(m, ExactScalar::from_int(-2));
        assert_eq!(n, ExactScalar::from_int(2));
    }

    #[test]
    fn ones_have_unit_n() {
        for r in 1..=7 {
            let (_, n) = coeff_pair(&comp(&vec![1u32; r]));
            assert!(n.is_one(), "n_(1,..,1) = 1 for r = {}", r);
        }
    }

    #[test]
    fn m_reversal_symmetry() {
        for size in 1..=8 {
            for i in compositions(size) {
                let (m, _) = coeff_pair(&i);
                let (m_rev, _) = coeff_pair(&i.reversed());
                assert_eq!(m, m_rev, "m reversal failed at {:?}", i);
            }
        }
    }

    #[test]
    fn inversion_small() {
        assert!(verify_inversion(1));
        assert!(verify_inversion(2));
        assert!(verify_inversion(3));
        assert!(verify_inversion(4));
    }

    #[test]
    fn inversion_weight_eight() {
        assert!(verify_inversion(8));
    }

    #[test]
    fn p6_leading_terms() {
        let p = expand_p_in_m(3);
        assert_eq!(p.terms().get(&vec![3u32]), Some(&ExactScalar::one()));
        assert_eq!(p.terms().get(&vec![1u32, 1, 1]), Some(&ExactScalar::one()));
    }

    #[test]
    fn bracket_identities() {
        assert!(bracket_identity_check(&comp(&[1, 1])));
        assert!(bracket_identity_check(&comp(&[2, 3, 1])));
        assert!(bracket_identity_check(&comp(&[5])));
        for size in 2..=7 {
            for i in compositions(size) {
                assert!(bracket_identity_check(&i), "failed at {:?}", i);
            }
        }
    }

    #[test]
    fn sphere_factorization_small() {
        // N=1: x; N=2: x(x+2); up to N=6
        for n in 1..=6 {
            assert!(sphere_factorization(n), "factorization failed at N = {}", n);
        }
    }

    #[test]
    fn generating_weight_table() {
        let (h1, k1) = generating_weights(1);
        assert!(h1.is_one());
        assert_eq!(k1, ExactScalar::ratio(1, 4));
        for n in 1..=10u32 {
            let (h, k) = generating_weights(n);
            // K-weight = H-weight / (4N)
            assert_eq!(k, h / ExactScalar::from_int(4 * n as i64));
        }
        // the H-weights satisfy H(N+1) = H(N) / (4 N^2)
        for n in 1..=9u32 {
            let (h, _) = generating_weights(n);
            let (h_next, _) = generating_weights(n + 1);
            assert_eq!(h_next, h / ExactScalar::from_int(4 * (n as i64) * (n as i64)));
        }
    }
}
