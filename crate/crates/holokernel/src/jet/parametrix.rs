//! The resolvent-symbol recursion to order r_{-4} and the exact evaluation
//! of the second heat coefficient of -(Lap_g + g(d eta, d) + b) through
//! contour-free Cauchy and Gaussian reductions.

use super::tensor::{det_tensor, invert_metric, JetMetric};
use super::xpoly::{integrate_xi, rat_int, CRat, Rat, Scalar, VarSpec, XPoly};
use num_traits::Zero;
use std::collections::BTreeMap;

/// Sum over k of (p_2 - lambda)^{-k} q_k(x, xi) with polynomial q_k.
/// Closed under the operations of the symbol recursion.
#[derive(Clone, Debug)]
pub struct ResolventPoly {
    pub terms: BTreeMap<u32, XPoly<CRat>>,
}

impl ResolventPoly {
    pub fn zero() -> Self {
        ResolventPoly {
            terms: BTreeMap::new(),
        }
    }

    pub fn single(k: u32, q: XPoly<CRat>) -> Self {
        let mut terms = BTreeMap::new();
        if !q.is_zero() {
            terms.insert(k, q);
        }
        ResolventPoly { terms }
    }

    fn insert(&mut self, k: u32, q: XPoly<CRat>) {
        if q.is_zero() {
            return;
        }
        match self.terms.get_mut(&k) {
            Some(existing) => {
                let sum = existing.add(&q);
                if sum.is_zero() {
                    self.terms.remove(&k);
                } else {
                    *existing = sum;
                }
            }
            None => {
                self.terms.insert(k, q);
            }
        }
    }

    pub fn add(&self, rhs: &ResolventPoly) -> ResolventPoly {
        let mut out = self.clone();
        for (k, q) in &rhs.terms {
            out.insert(*k, q.clone());
        }
        out
    }

    pub fn neg(&self) -> ResolventPoly {
        ResolventPoly {
            terms: self.terms.iter().map(|(k, q)| (*k, q.neg())).collect(),
        }
    }

    /// Multiply by a plain polynomial.
    pub fn mul_poly(&self, p: &XPoly<CRat>, spec: &VarSpec) -> ResolventPoly {
        let mut out = ResolventPoly::zero();
        for (k, q) in &self.terms {
            out.insert(*k, q.mul(p, spec));
        }
        out
    }

    /// Multiply by (p_2 - lambda)^{-1}.
    pub fn mul_resolvent(&self) -> ResolventPoly {
        ResolventPoly {
            terms: self.terms.iter().map(|(k, q)| (k + 1, q.clone())).collect(),
        }
    }

    /// Partial derivative with respect to a variable: the resolvent factor
    /// contributes -k (p_2 - lambda)^{-(k+1)} d(p_2).
    pub fn derive(&self, var: usize, p2: &XPoly<CRat>, spec: &VarSpec) -> ResolventPoly {
        let dp2 = p2.derive(var);
        let mut out = ResolventPoly::zero();
        for (k, q) in &self.terms {
            out.insert(*k, q.derive(var));
            let extra = dp2.mul(q, spec).scale(&CRat::from_int(-(*k as i64)));
            out.insert(k + 1, extra);
        }
        out
    }

    /// D_x = -i d_x applied along a manifold direction.
    pub fn d_x(&self, i: usize, p2: &XPoly<CRat>, spec: &VarSpec) -> ResolventPoly {
        let d = self.derive(spec.x_index(i), p2, spec);
        ResolventPoly {
            terms: d
                .terms
                .into_iter()
                .map(|(k, q)| (k, q.scale(&CRat::new(rat_int(0), rat_int(-1)))))
                .collect(),
        }
    }
}

/// Complete symbol data of the operator -(Lap_g + g(d eta, d) + b): the
/// pieces p_2 = g^{ij} xi_i xi_j, p_1 = -i (c^j + g^{jk} eta_k) xi_j,
/// p_0 = -b, with c^j the first-order symbol piece of the Laplacian.
pub struct OperatorSymbols {
    pub p2: XPoly<CRat>,
    pub p1: XPoly<CRat>,
    pub p0: XPoly<CRat>,
}

pub fn operator_symbols(
    m: &JetMetric,
    eta: &XPoly<Rat>,
    b: &XPoly<Rat>,
) -> OperatorSymbols {
    let jets = m.spec;
    let n = m.n();
    let spec = VarSpec {
        nx: n,
        nxi: n,
        has_rho: false,
        deg_x: jets.deg_x,
        deg_rho: 0,
    };
    let widen = |p: &XPoly<Rat>| -> XPoly<CRat> {
        let mut out = XPoly::zero(&spec);
        for (e, c) in p.terms() {
            let mut e2 = e[..n].to_vec();
            e2.extend(std::iter::repeat(0).take(n));
            out = out.add(&XPoly::monomial(&spec, e2, CRat::from_rat(c)));
        }
        out
    };
    let ginv = invert_metric(&m.g, &jets);
    let det = det_tensor(&m.g, &jets);
    let det_inv = det.inverse_unit(&jets);
    let mut p2 = XPoly::zero(&spec);
    let mut p1 = XPoly::zero(&spec);
    for j in 0..n {
        // c^j = d_i g^{ij} + (1/2) g^{ij} (d_i det g)/det g
        let mut cj = XPoly::zero(&jets);
        for i in 0..n {
            cj = cj.add(&ginv.get(&[i, j]).derive(jets.x_index(i)));
            let dlog = det.derive(jets.x_index(i)).mul(&det_inv, &jets);
            cj = cj.add(
                &ginv
                    .get(&[i, j])
                    .mul(&dlog, &jets)
                    .scale(&super::xpoly::rat(1, 2)),
            );
        }
        // A^j = g^{jk} eta_k
        let mut aj = XPoly::zero(&jets);
        for k in 0..n {
            aj = aj.add(&ginv.get(&[j, k]).mul(&eta.derive(jets.x_index(k)), &jets));
        }
        let xi_j = XPoly::<CRat>::var(&spec, spec.xi_index(j));
        let coeff = widen(&cj.add(&aj));
        // p_1 = -i (c^j + A^j) xi_j
        p1 = p1.add(
            &coeff
                .mul(&xi_j, &spec)
                .scale(&CRat::new(rat_int(0), rat_int(-1))),
        );
        for i in 0..n {
            let xi_i = XPoly::<CRat>::var(&spec, spec.xi_index(i));
            p2 = p2.add(&widen(ginv.get(&[i, j])).mul(&xi_i.mul(&xi_j, &spec), &spec));
        }
    }
    let p0 = widen(b).neg();
    OperatorSymbols { p2, p1, p0 }
}

/// The resolvent symbols r_{-2}, r_{-3}, r_{-4} from the parametrix
/// recursion
/// r_{-2-j} = -r_{-2} sum_{a+b-|alpha| = -j} (1/alpha!)
///            d_xi^alpha(p_b) D_x^alpha(r_a).
pub fn resolvent_symbols(sym: &OperatorSymbols, spec: &VarSpec) -> Vec<ResolventPoly> {
    let p = [&sym.p0, &sym.p1, &sym.p2];
    let r2 = ResolventPoly::single(1, XPoly::one(spec));
    let mut rs = vec![r2];
    for j in 1..=2usize {
        let mut sum = ResolventPoly::zero();
        for m in 0..j {
            let r_a = rs[m].clone();
            for b in 0..=2usize {
                let order = b as i64 + (j as i64 - m as i64) - 2;
                if order < 0 || order > 2 {
                    continue;
                }
                match order {
                    0 => {
                        sum = sum.add(&r_a.mul_poly(p[b], spec));
                    }
                    1 => {
                        for i in 0..spec.nx {
                            let dxi_p = p[b].derive(spec.xi_index(i));
                            if dxi_p.is_zero() {
                                continue;
                            }
                            let dx_r = r_a.d_x(i, &sym.p2, spec);
                            sum = sum.add(&dx_r.mul_poly(&dxi_p, spec));
                        }
                    }
                    2 => {
                        for i in 0..spec.nx {
                            for k in i..spec.nx {
                                let dxi2 = p[b].derive(spec.xi_index(i)).derive(spec.xi_index(k));
                                if dxi2.is_zero() {
                                    continue;
                                }
                                // 1/alpha! is 1/2 for repeated indices, 1 for mixed
                                let factor = if i == k {
                                    CRat::from_rat(&super::xpoly::rat(1, 2))
                                } else {
                                    CRat::from_int(1)
                                };
                                let dx2_r =
                                    r_a.d_x(i, &sym.p2, spec).d_x(k, &sym.p2, spec);
                                sum = sum.add(&dx2_r.mul_poly(&dxi2.scale(&factor), spec));
                            }
                        }
                    }
                    _ => unreachable!(),
                }
            }
        }
        rs.push(sum.neg().mul_resolvent());
    }
    rs
}

/// a_2 of the operator -(Lap_g + g(d eta, d) + b) at the origin of a
/// normal-form metric, via the order r_{-4} symbol: the contour integral of
/// (p_2 - lambda)^{-k} e^{-lambda} contributes 1/(k-1)! and the fiber
/// integral reduces to exact Gaussian moments.
pub fn parametrix_a2(m: &JetMetric, eta: &XPoly<Rat>, b: &XPoly<Rat>) -> Rat {
    assert!(
        m.is_normal_form(),
        "the parametrix evaluation needs normal-form jets"
    );
    let n = m.n();
    let spec = VarSpec {
        nx: n,
        nxi: n,
        has_rho: false,
        deg_x: m.spec.deg_x,
        deg_rho: 0,
    };
    let sym = operator_symbols(m, eta, b);
    let rs = resolvent_symbols(&sym, &spec);
    let r4 = &rs[2];
    let mut acc = CRat::from_int(0);
    for (k, q) in &r4.terms {
        // (1/2 pi i) Int (p_2 - lambda)^{-k} e^{-lambda} d lambda = e^{-p_2}/(k-1)!
        let q0 = q.at_x0(&spec);
        // at the origin p_2 = |xi|^2, so the fiber integral is a plain moment
        let moment = integrate_xi(&q0, &spec).constant_term();
        let mut fact = rat_int(1);
        for i in 1..*k as i64 {
            fact *= rat_int(i);
        }
        acc = acc.add_ref(&moment.mul_ref(&CRat::from_rat(&fact.recip())));
    }
    assert!(
        Zero::is_zero(&acc.im),
        "the heat coefficient must be real, got imaginary part {}",
        acc.im
    );
    acc.re
}

/// Closed form for the same coefficient:
/// a_2 = scal/6 - (1/2) Lap eta - (1/4) |d eta|^2 + b at the origin.
pub fn a2_closed_form(m: &JetMetric, eta: &XPoly<Rat>, b: &XPoly<Rat>) -> Rat {
    let spec = m.spec;
    let n = m.n();
    let pkg = super::tensor::curvature_package(m);
    let lap_eta =
        super::tensor::laplacian_scalar(eta, &pkg.ginv, &pkg.gamma, &spec).constant_term();
    let mut grad2 = XPoly::zero(&spec);
    for i in 0..n {
        for j in 0..n {
            grad2 = grad2.add(
                &pkg.ginv
                    .get(&[i, j])
                    .mul(&eta.derive(spec.x_index(i)), &spec)
                    .mul(&eta.derive(spec.x_index(j)), &spec),
            );
        }
    }
    pkg.scal.constant_term() / rat_int(6) - lap_eta / rat_int(2)
        - grad2.constant_term() / rat_int(4)
        + b.constant_term()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::jet::rng::SmallRng;
    use crate::jet::tensor::{normal_jets_from_curvature, random_curvature, random_poly};
    use crate::jet::xpoly::rat;

    #[test]
    fn pure_curvature_gives_scal_over_six() {
        let spec = VarSpec::jets(3, 2);
        let mut rng = SmallRng::new(8);
        let r0 = random_curvature(&spec, 3, &mut rng);
        let m = normal_jets_from_curvature(spec, &r0);
        let eta = XPoly::zero(&spec);
        let b = XPoly::zero(&spec);
        let got = parametrix_a2(&m, &eta, &b);
        let pkg = crate::jet::tensor::curvature_package(&m);
        assert_eq!(got, pkg.scal.constant_term() / rat_int(6));
    }

    #[test]
    fn flat_with_quadratic_drift() {
        // flat metric, eta = x_1^2, b = 0: a_2 = -(1/2) Lap eta = -1
        let spec = VarSpec::jets(3, 2);
        let m = JetMetric::flat(spec, 3);
        let x0 = XPoly::<Rat>::var(&spec, 0);
        let eta = x0.mul(&x0, &spec);
        let b = XPoly::zero(&spec);
        let got = parametrix_a2(&m, &eta, &b);
        assert_eq!(got, rat(-1, 1));
        assert_eq!(got, a2_closed_form(&m, &eta, &b));
    }

    #[test]
    fn random_instances_match_closed_form() {
        let mut rng = SmallRng::new(12);
        for trial in 0..10 {
            let n = if trial % 2 == 0 { 3 } else { 4 };
            let spec = VarSpec::jets(n, 2);
            let r0 = random_curvature(&spec, n, &mut rng);
            let m = normal_jets_from_curvature(spec, &r0);
            let mut eta = random_poly(&spec, n, 2, &mut rng);
            eta = eta.sub(&XPoly::constant(&spec, eta.constant_term()));
            let b = random_poly(&spec, n, 2, &mut rng);
            let got = parametrix_a2(&m, &eta, &b);
            let expect = a2_closed_form(&m, &eta, &b);
            assert_eq!(got, expect, "trial {} (n = {})", trial, n);
        }
    }
}
