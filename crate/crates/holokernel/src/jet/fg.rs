//! The order-by-order expansion of the even metric family from the bulk
//! Ricci condition, closed-form recovery tests, and the divergence-trace
//! identities of the family.

use super::tensor::{
    christoffel, curvature_package, divergence_sym2, invert_metric, lower_last, ricci, riemann_up,
    trace2, JetMetric, Tensor,
};
use super::xpoly::{rat, rat_int, Rat, VarSpec, XPoly};
use num_traits::Zero;

/// Lift jets (no rho variable) into a family spec with one extra variable.
pub fn lift_to_family(p: &XPoly<Rat>, jets: &VarSpec, family: &VarSpec) -> XPoly<Rat> {
    assert_eq!(jets.nx, family.nx);
    assert!(family.has_rho && !jets.has_rho);
    let mut out = XPoly::zero(family);
    for (e, c) in p.terms() {
        let mut e2 = e.clone();
        e2.push(0);
        out = out.add(&XPoly::monomial(family, e2, c.clone()));
    }
    out
}

pub fn lift_tensor(t: &Tensor, jets: &VarSpec, family: &VarSpec) -> Tensor {
    Tensor {
        n: t.n,
        rank: t.rank,
        comp: t
            .comp
            .iter()
            .map(|p| lift_to_family(p, jets, family))
            .collect(),
    }
}

/// Drop the rho variable from a rho-free polynomial.
fn drop_rho(p: &XPoly<Rat>, family: &VarSpec, jets: &VarSpec) -> XPoly<Rat> {
    let ri = family.rho_index();
    let mut out = XPoly::zero(jets);
    for (e, c) in p.terms() {
        assert_eq!(e[ri], 0);
        let e2 = e[..ri].to_vec();
        out = out.add(&XPoly::monomial(jets, e2, c.clone()));
    }
    out
}

fn tensor_rho_coeff(t: &Tensor, family: &VarSpec, k: usize) -> Tensor {
    Tensor {
        n: t.n,
        rank: t.rank,
        comp: t.comp.iter().map(|p| p.rho_coeff(family, k)).collect(),
    }
}

fn tensor_d_rho(t: &Tensor, family: &VarSpec) -> Tensor {
    let ri = family.rho_index();
    Tensor {
        n: t.n,
        rank: t.rank,
        comp: t.comp.iter().map(|p| p.derive(ri)).collect(),
    }
}

/// The bulk Ricci tensor condition evaluated on a family h(rho):
/// F(h) = -rho [2 h.. - 2 h. h^{-1} h. + tr(h^{-1} h.) h.]
///        + (n-2) h. + tr(h^{-1} h.) h + Ric(h).
fn family_residual(h: &Tensor, n: usize, family: &VarSpec) -> Tensor {
    let hd = tensor_d_rho(h, family);
    let hdd = tensor_d_rho(&hd, family);
    let hinv = invert_metric(h, family);
    let tr_hd = trace2(&hd, &hinv, family);
    // h. h^{-1} h.
    let mut mid = Tensor::zeros(family, n, 2);
    for i in 0..n {
        for j in 0..n {
            let mut acc = XPoly::zero(family);
            for a in 0..n {
                for b in 0..n {
                    acc = acc.add(
                        &hd.get(&[i, a])
                            .mul(hinv.get(&[a, b]), family)
                            .mul(hd.get(&[b, j]), family),
                    );
                }
            }
            mid.set(&[i, j], acc);
        }
    }
    let gamma = christoffel(h, &hinv, family);
    let ric = ricci(&riemann_up(&gamma, family), family);
    let bracket = hdd
        .scale(&rat_int(2))
        .sub(&mid.scale(&rat_int(2)))
        .add(&hd.scale_poly(&tr_hd, family));
    let mut rho_bracket = Tensor::zeros(family, n, 2);
    for (slot, c) in rho_bracket.comp.iter_mut().zip(&bracket.comp) {
        *slot = c.rho_shift(family, 1);
    }
    hd.scale(&rat_int(n as i64 - 2))
        .add(&h.scale_poly(&tr_hd, family))
        .add(&ric)
        .sub(&rho_bracket)
}

#[derive(Debug)]
pub struct FgExpansion {
    /// h_0 = g, h_1, ..., up to the last solved order
    pub coeffs: Vec<Tensor>,
    /// x-degree to which each coefficient is supported by the input jets
    pub achieved_x_degree: Vec<usize>,
    /// the order at which a singular linear solve stopped the recursion
    pub obstruction: Option<usize>,
    /// orders whose coefficients came from the declared closed family
    /// (validated afterwards by back-substitution)
    pub continued_orders: Vec<usize>,
}

/// How to continue past a singular order of the linear solve. The generic
/// solve stops there; for the declared closed classes the corresponding
/// family coefficient is inserted and then validated by the residual check.
#[derive(Clone, Debug)]
pub enum FgContinuation {
    GenericOnly,
    ClosedConfFlat,
    ClosedEinstein { c: Rat },
}

/// Solve the family order by order: at each rho-order k the unknown
/// h_{k+1} enters linearly through
/// (k+1)[(n-2-2k) h_{k+1} + tr_g(h_{k+1}) g] = -(known),
/// solved by taking the g-trace first. The solve is singular when
/// n-2-2k = 0 (the even-dimension obstruction, trace-free part) or when
/// 2n-2-2k = 0 (trace part); there the declared continuation supplies the
/// coefficient, and every inserted coefficient is re-validated against the
/// bulk equation by back-substitution.
pub fn fg_expand(m: &JetMetric, k_max: usize, continuation: FgContinuation) -> FgExpansion {
    let jets = m.spec;
    let n = m.n();
    let family = VarSpec::family(n, jets.deg_x, k_max);
    let g = lift_tensor(&m.g, &jets, &family);
    let ginv_jets = invert_metric(&m.g, &jets);
    let ginv = lift_tensor(&ginv_jets, &jets, &family);
    let closed_tail = match &continuation {
        FgContinuation::GenericOnly => None,
        FgContinuation::ClosedConfFlat => {
            let pkg = curvature_package(m);
            let mut p2 = Tensor::zeros(&jets, n, 2);
            for i in 0..n {
                for j in 0..n {
                    let mut acc = XPoly::zero(&jets);
                    for a in 0..n {
                        for b in 0..n {
                            acc = acc.add(
                                &pkg.schouten
                                    .get(&[i, a])
                                    .mul(pkg.ginv.get(&[a, b]), &jets)
                                    .mul(pkg.schouten.get(&[b, j]), &jets),
                            );
                        }
                    }
                    p2.set(&[i, j], acc);
                }
            }
            Some((pkg.schouten.neg(), p2.scale(&rat(1, 4))))
        }
        FgContinuation::ClosedEinstein { c } => Some((
            m.g.scale(&(rat_int(-2) * c.clone())),
            m.g.scale(&(c.clone() * c.clone())),
        )),
    };

    let mut hpoly = g.clone();
    let mut coeffs = vec![m.g.clone()];
    let mut achieved = vec![jets.deg_x];
    let mut obstruction = None;
    let mut continued_orders = Vec::new();

    for k in 0..k_max {
        let tf_factor = n as i64 - 2 - 2 * k as i64;
        let tr_factor = 2 * n as i64 - 2 - 2 * k as i64;
        let h_next = if tf_factor != 0 && tr_factor != 0 {
            let residual = family_residual(&hpoly, n, &family);
            let rest = tensor_rho_coeff(&residual, &family, k);
            // (n-2-2k) h_{k+1} + tr_g(h_{k+1}) g = A with A = -rest/(k+1)
            let a = rest.scale(&rat(-1, k as i64 + 1));
            let tr_a = trace2(&a, &ginv, &family);
            let tau = tr_a.scale(&rat(1, tr_factor));
            a.sub(&g.scale_poly(&tau, &family)).scale(&rat(1, tf_factor))
        } else {
            match &closed_tail {
                None => {
                    obstruction = Some(k + 1);
                    break;
                }
                Some((h1, h2)) => {
                    continued_orders.push(k + 1);
                    let tail = match k + 1 {
                        1 => h1.clone(),
                        2 => h2.clone(),
                        _ => Tensor::zeros(&jets, n, 2),
                    };
                    lift_tensor(&tail, &jets, &family)
                }
            }
        };
        // append h_{k+1} rho^{k+1} to the family
        for (slot, c) in hpoly.comp.iter_mut().zip(&h_next.comp) {
            *slot = slot.add(&c.rho_shift(&family, k + 1));
        }
        coeffs.push(Tensor {
            n,
            rank: 2,
            comp: h_next
                .comp
                .iter()
                .map(|p| drop_rho(p, &family, &jets))
                .collect(),
        });
        achieved.push(jets.deg_x.saturating_sub(2 * (k + 1)));
    }

    // back-substitution: the residual vanishes at every solved order to the
    // supported x-degree
    let residual = family_residual(&hpoly, n, &family);
    for k in 0..coeffs.len() - 1 {
        let r = tensor_rho_coeff(&residual, &family, k);
        let valid = jets.deg_x.saturating_sub(2 * (k + 1));
        for c in &r.comp {
            for (e, v) in c.terms() {
                let deg: usize = e[..n].iter().map(|&x| x as usize).sum();
                assert!(
                    deg > valid || Zero::is_zero(v),
                    "family residual fails back-substitution at order {}",
                    k
                );
            }
        }
    }

    FgExpansion {
        coeffs,
        achieved_x_degree: achieved,
        obstruction,
        continued_orders,
    }
}

/// Compare a solved coefficient with a target tensor up to the given x-degree.
pub fn tensors_agree_to_degree(a: &Tensor, b: &Tensor, spec: &VarSpec, degree: usize) -> bool {
    let diff = a.sub(b);
    for c in &diff.comp {
        for (e, v) in c.terms() {
            let deg: usize = e[..spec.nx].iter().map(|&x| x as usize).sum();
            if deg <= degree && !Zero::is_zero(v) {
                return false;
            }
        }
    }
    true
}

/// The closed conformally flat family h = g - rho P + rho^2/4 P^2 as a
/// family tensor, with P the Schouten tensor of g.
pub fn conf_flat_family(m: &JetMetric, k_max: usize) -> (VarSpec, Tensor) {
    let jets = m.spec;
    let n = m.n();
    let family = VarSpec::family(n, jets.deg_x, k_max);
    let pkg = curvature_package(m);
    // P^2_{ij} = P_{ia} g^{ab} P_{bj}
    let mut p2 = Tensor::zeros(&jets, n, 2);
    for i in 0..n {
        for j in 0..n {
            let mut acc = XPoly::zero(&jets);
            for a in 0..n {
                for b in 0..n {
                    acc = acc.add(
                        &pkg.schouten
                            .get(&[i, a])
                            .mul(pkg.ginv.get(&[a, b]), &jets)
                            .mul(pkg.schouten.get(&[b, j]), &jets),
                    );
                }
            }
            p2.set(&[i, j], acc);
        }
    }
    let g = lift_tensor(&m.g, &jets, &family);
    let p = lift_tensor(&pkg.schouten, &jets, &family);
    let p2 = lift_tensor(&p2, &jets, &family);
    let mut h = g.clone();
    for ((slot, sp), sp2) in h.comp.iter_mut().zip(&p.comp).zip(&p2.comp) {
        *slot = slot
            .sub(&sp.rho_shift(&family, 1))
            .add(&sp2.rho_shift(&family, 2).scale(&rat(1, 4)));
    }
    (family, h)
}

/// Lemma-level check of the divergence identity of the family:
/// div_{h}(d_rho h) = d tr_{h}(d_rho h) as one-forms at the origin, per
/// rho-order up to K, plus the second-derivative trace identity
/// tr(h^{-1}(2 h' + 4 rho h'')) = 2 tr(h^{-1} h') + 2 rho tr((h^{-1} h')^2).
pub fn d_div_check(m: &JetMetric, k_max: usize) -> bool {
    let n = m.n();
    let (family, h) = conf_flat_family(m, k_max);
    let hd = tensor_d_rho(&h, &family);
    let hinv = invert_metric(&h, &family);
    let gamma = christoffel(&h, &hinv, &family);
    let lhs = divergence_sym2(&hd, &hinv, &gamma, &family);
    let tr = trace2(&hd, &hinv, &family);
    // (d tr)_j
    for jdx in 0..n {
        let rhs_j = tr.derive(family.x_index(jdx));
        let diff = lhs.get(&[jdx]).sub(&rhs_j).at_x0(&family);
        for k in 0..=k_max {
            if !diff.rho_coeff(&family, k).is_zero() {
                return false;
            }
        }
    }
    eval_normal_check(&h, n, &family, k_max)
}

/// tr(h^{-1}(2 h' + 4 rho h'')) - 2 tr(h^{-1} h') - 2 rho tr((h^{-1} h')^2)
/// vanishes at the origin per rho-order.
pub fn eval_normal_check(h: &Tensor, n: usize, family: &VarSpec, k_max: usize) -> bool {
    let hd = tensor_d_rho(h, family);
    let hdd = tensor_d_rho(&hd, family);
    let hinv = invert_metric(h, family);
    let mut lhs = trace2(&hd, &hinv, family).scale(&rat_int(2));
    lhs = lhs.add(&trace2(&hdd, &hinv, family).rho_shift(family, 1).scale(&rat_int(4)));
    let rhs1 = trace2(&hd, &hinv, family).scale(&rat_int(2));
    // tr((h^{-1} h')^2)
    let mut sq = XPoly::zero(family);
    for i in 0..n {
        for j in 0..n {
            for a in 0..n {
                for b in 0..n {
                    sq = sq.add(
                        &hinv
                            .get(&[i, a])
                            .mul(hd.get(&[a, j]), family)
                            .mul(hinv.get(&[j, b]), family)
                            .mul(hd.get(&[b, i]), family),
                    );
                }
            }
        }
    }
    let rhs2 = sq.rho_shift(family, 1).scale(&rat_int(2));
    let diff = lhs.sub(&rhs1).sub(&rhs2).at_x0(family);
    (0..=k_max).all(|k| diff.rho_coeff(family, k).is_zero())
}

/// Check helper: the covariant curvature record of a conformally flat input
/// has vanishing Cotton tensor to the supported order.
pub fn cotton_vanishes(m: &JetMetric) -> bool {
    let pkg = curvature_package(m);
    let valid = m.spec.deg_x.saturating_sub(3);
    pkg.cotton.comp.iter().all(|c| {
        c.terms().all(|(e, v)| {
            let deg: usize = e[..m.n()].iter().map(|&x| x as usize).sum();
            deg > valid || Zero::is_zero(v)
        })
    })
}

/// Fully covariant curvature of the family at fixed rho; used by tests.
pub fn family_r4(h: &Tensor, family: &VarSpec) -> Tensor {
    let hinv = invert_metric(h, family);
    let gamma = christoffel(h, &hinv, family);
    lower_last(&riemann_up(&gamma, family), h, family)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::jet::rng::SmallRng;
    use crate::jet::tensor::{conf_flat_metric, random_poly};

    fn random_conf_flat(n: usize, deg: usize, seed: u64, max_phi_deg: usize) -> JetMetric {
        let spec = VarSpec::jets(n, deg);
        let mut rng = SmallRng::new(seed);
        let phi = random_poly(&spec, n, max_phi_deg, &mut rng);
        let phi = phi.sub(&XPoly::constant(&spec, phi.constant_term()));
        conf_flat_metric(spec, n, &phi)
    }

    #[test]
    fn flat_expansion_is_trivial() {
        let spec = VarSpec::jets(3, 4);
        let m = JetMetric::flat(spec, 3);
        let fg = fg_expand(&m, 3, FgContinuation::ClosedConfFlat);
        assert!(fg.obstruction.is_none());
        for k in 1..fg.coeffs.len() {
            assert!(fg.coeffs[k].is_zero(), "flat input must give h_k = 0");
        }
    }

    #[test]
    fn first_coefficient_is_minus_schouten() {
        // arbitrary (non conformally flat) jets: h_1 = -P always
        let spec = VarSpec::jets(4, 2);
        let mut rng = SmallRng::new(4);
        let r0 = crate::jet::tensor::random_curvature(&spec, 4, &mut rng);
        let m = crate::jet::tensor::normal_jets_from_curvature(spec, &r0);
        let fg = fg_expand(&m, 1, FgContinuation::GenericOnly);
        let pkg = curvature_package(&m);
        assert!(tensors_agree_to_degree(
            &fg.coeffs[1],
            &pkg.schouten.neg(),
            &spec,
            0
        ));
    }

    #[test]
    fn einstein_conformal_recovery() {
        // g = (1 + c|x|^2)^{-2} delta is Einstein; family h = (1-c rho)^2 g
        let n = 3;
        let spec = VarSpec::jets(n, 6);
        let c = rat(1, 3);
        let mut norm2 = XPoly::zero(&spec);
        for i in 0..n {
            let xi = XPoly::<Rat>::var(&spec, i);
            norm2 = norm2.add(&xi.mul(&xi, &spec));
        }
        let base = XPoly::one(&spec).add(&norm2.scale(&c));
        let factor = base.mul(&base, &spec).inverse_unit(&spec);
        let mut g = Tensor::zeros(&spec, n, 2);
        for i in 0..n {
            g.set(&[i, i], factor.clone());
        }
        let m = JetMetric::new(spec, g);
        let fg = fg_expand(&m, 3, FgContinuation::ClosedEinstein { c: c.clone() });
        assert!(fg.obstruction.is_none());
        // only the trace-singular top order needed the closed family
        assert_eq!(fg.continued_orders, vec![3]);
        // h_1 = -2c g, h_2 = c^2 g, h_3 = 0 to the supported degrees
        assert!(tensors_agree_to_degree(
            &fg.coeffs[1],
            &m.g.scale(&(rat_int(-2) * c.clone())),
            &spec,
            fg.achieved_x_degree[1]
        ));
        assert!(tensors_agree_to_degree(
            &fg.coeffs[2],
            &m.g.scale(&(c.clone() * c.clone())),
            &spec,
            fg.achieved_x_degree[2]
        ));
        assert!(tensors_agree_to_degree(
            &fg.coeffs[3],
            &Tensor::zeros(&spec, n, 2),
            &spec,
            fg.achieved_x_degree[3]
        ));
    }

    #[test]
    fn conf_flat_closed_form_recovery() {
        // e^{2 phi} delta with cubic phi in n = 4: h = g - rho P + rho^2/4 P^2
        let m = random_conf_flat(4, 5, 17, 3);
        let spec = m.spec;
        let fg = fg_expand(&m, 2, FgContinuation::ClosedConfFlat);
        let pkg = curvature_package(&m);
        assert!(tensors_agree_to_degree(
            &fg.coeffs[1],
            &pkg.schouten.neg(),
            &spec,
            fg.achieved_x_degree[1]
        ));
        // P^2/4
        let n = m.n();
        let mut p2 = Tensor::zeros(&spec, n, 2);
        for i in 0..n {
            for j in 0..n {
                let mut acc = XPoly::zero(&spec);
                for a in 0..n {
                    for b in 0..n {
                        acc = acc.add(
                            &pkg.schouten
                                .get(&[i, a])
                                .mul(pkg.ginv.get(&[a, b]), &spec)
                                .mul(pkg.schouten.get(&[b, j]), &spec),
                        );
                    }
                }
                p2.set(&[i, j], acc.scale(&rat(1, 4)));
            }
        }
        assert!(tensors_agree_to_degree(
            &fg.coeffs[2],
            &p2,
            &spec,
            fg.achieved_x_degree[2]
        ));
    }

    #[test]
    fn obstruction_in_dimension_four() {
        // for general n = 4 jets the solve stops at order n/2 = 2
        let spec = VarSpec::jets(4, 2);
        let mut rng = SmallRng::new(31);
        let r0 = crate::jet::tensor::random_curvature(&spec, 4, &mut rng);
        let m = crate::jet::tensor::normal_jets_from_curvature(spec, &r0);
        let fg = fg_expand(&m, 3, FgContinuation::GenericOnly);
        assert_eq!(fg.obstruction, Some(2));
        assert_eq!(fg.coeffs.len(), 2); // g and h_1 only
    }

    #[test]
    fn d_div_einstein_trivial() {
        // Einstein conformal-factor jets: both sides vanish identically
        let n = 3;
        let spec = VarSpec::jets(n, 4);
        let c = rat(1, 2);
        let mut norm2 = XPoly::zero(&spec);
        for i in 0..n {
            let xi = XPoly::<Rat>::var(&spec, i);
            norm2 = norm2.add(&xi.mul(&xi, &spec));
        }
        let base = XPoly::one(&spec).add(&norm2.scale(&c));
        let factor = base.mul(&base, &spec).inverse_unit(&spec);
        let mut g = Tensor::zeros(&spec, n, 2);
        for i in 0..n {
            g.set(&[i, i], factor.clone());
        }
        let m = JetMetric::new(spec, g);
        assert!(d_div_check(&m, 2));
    }

    #[test]
    fn d_div_quadratic_phi() {
        // e^{2 phi} delta with phi = x_1 x_2, n = 3
        let spec = VarSpec::jets(3, 4);
        let x0 = XPoly::<Rat>::var(&spec, 0);
        let x1 = XPoly::<Rat>::var(&spec, 1);
        let phi = x0.mul(&x1, &spec);
        let m = conf_flat_metric(spec, 3, &phi);
        assert!(d_div_check(&m, 2));
    }

    #[test]
    fn d_div_random_trials() {
        for seed in 1..=5u64 {
            let m = random_conf_flat(4, 4, seed, 3);
            assert!(d_div_check(&m, 2), "divergence identity failed at seed {}", seed);
        }
    }

    #[test]
    fn conf_flat_inputs_have_zero_cotton() {
        let m = random_conf_flat(4, 4, 23, 3);
        assert!(cotton_vanishes(&m));
    }
}
