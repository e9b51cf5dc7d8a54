//! The holographic Gaussian-integral identity: the normalized expectation of
//! the double Poisson bracket of the family symbol equals the family
//! Laplacian of the logarithmic volume derivative, computed through two
//! pipelines that share only the polynomial core.

use super::fg::{conf_flat_family, eval_normal_check};
use super::symbol::poisson_poly;
use super::tensor::{
    christoffel, det_tensor, divergence_oneform, divergence_sym2, invert_metric, laplacian_scalar,
    trace2, JetMetric, Tensor,
};
use super::xpoly::{integrate_xi, rat_int, Rat, VarSpec, XPoly};

/// rho-coefficients of a polynomial evaluated at the origin of x.
fn rho_profile(p: &XPoly<Rat>, spec: &VarSpec, k_max: usize) -> Vec<Rat> {
    let at0 = p.at_x0(spec);
    (0..=k_max)
        .map(|k| at0.rho_coeff(spec, k).constant_term())
        .collect()
}

fn series_div(num: &[Rat], den: &[Rat]) -> Vec<Rat> {
    assert!(den[0] == rat_int(1), "normalized denominator expected");
    let mut out = vec![rat_int(0); num.len()];
    for k in 0..num.len() {
        let mut acc = num[k].clone();
        for j in 1..=k.min(den.len() - 1) {
            acc -= den[j].clone() * out[k - j].clone();
        }
        out[k] = acc;
    }
    out
}

/// Normalized Gaussian expectation of Phi against exp(-H) at the origin,
/// as a rho-profile. H must have fiber form |xi|^2 at (x, rho) = 0.
fn gaussian_expectation(
    phi: &XPoly<Rat>,
    h_symbol: &XPoly<Rat>,
    spec: &VarSpec,
    k_max: usize,
) -> Vec<Rat> {
    // Delta H = H(0, xi, rho) - |xi|^2 has minimum rho-degree 1
    let mut xi_sq = XPoly::zero(spec);
    for i in 0..spec.nxi {
        let xi = XPoly::<Rat>::var(spec, spec.xi_index(i));
        xi_sq = xi_sq.add(&xi.mul(&xi, spec));
    }
    let dh = h_symbol.at_x0(spec).sub(&xi_sq);
    assert!(
        dh.min_xrho_degree(spec).map_or(true, |d| d >= 1),
        "fiber form must be euclidean at the base point"
    );
    // exp(-Delta H) truncated by the rho cap
    let mut weight = XPoly::one(spec);
    let mut pow = XPoly::one(spec);
    for m in 1..=k_max {
        pow = pow.mul(&dh.neg(), spec);
        if pow.is_zero() {
            break;
        }
        weight = weight.add(&pow.scale(&(rat_int(1) / factorial_rat(m))));
    }
    let numerator = integrate_xi(&phi.at_x0(spec).mul(&weight, spec), spec);
    let denominator = integrate_xi(&weight, spec);
    // internal convention check: the Gaussian normalization reproduces
    // sqrt(det) of the family fiber form inverse
    let num_profile = rho_profile(&numerator, spec, k_max);
    let den_profile = rho_profile(&denominator, spec, k_max);
    series_div(&num_profile, &den_profile)
}

fn factorial_rat(k: usize) -> Rat {
    let mut acc = rat_int(1);
    for i in 1..=k as i64 {
        acc *= rat_int(i);
    }
    acc
}

/// Report of the identity check and of the Gaussian-normalization assertion.
pub struct GaussianBracketReport {
    pub identity: bool,
    pub gaussian_convention: bool,
    pub eval_normal: bool,
    pub achieved_order: usize,
}

/// Check the identity
/// (1/3!) < {H, {H, H'}} > = - Lap_{g(r)} ((v'/v)(r))
/// on the conformally flat family of the given metric; both sides are odd in
/// r, and the comparison is of the even profiles to rho-order `k_max`.
pub fn gaussian_bracket_check(m: &JetMetric, k_max: usize) -> GaussianBracketReport {
    let n = m.n();
    let jets = m.spec;
    // symbols need two extra rho orders for the derivative and the products
    let (family_spec, h_family) = conf_flat_family(m, k_max + 2);
    let spec = VarSpec {
        nx: family_spec.nx,
        nxi: n,
        has_rho: true,
        deg_x: jets.deg_x,
        deg_rho: family_spec.deg_rho,
    };
    // widen the family tensors into the symbol variable layout
    let widen = |p: &XPoly<Rat>| -> XPoly<Rat> {
        let mut out = XPoly::zero(&spec);
        for (e, c) in p.terms() {
            let mut e2 = e[..n].to_vec();
            e2.extend(std::iter::repeat(0).take(n));
            e2.push(e[n]);
            out = out.add(&XPoly::monomial(&spec, e2, c.clone()));
        }
        out
    };
    let widen_tensor = |t: &Tensor| -> Tensor {
        Tensor {
            n: t.n,
            rank: t.rank,
            comp: t.comp.iter().map(&widen).collect(),
        }
    };
    let h = widen_tensor(&h_family);
    let hinv = invert_metric(&h, &spec);

    // principal symbol H(x, xi, rho) = sum h^{ij} xi_i xi_j
    let mut h_symbol = XPoly::zero(&spec);
    for i in 0..n {
        for j in 0..n {
            let xi_i = XPoly::<Rat>::var(&spec, spec.xi_index(i));
            let xi_j = XPoly::<Rat>::var(&spec, spec.xi_index(j));
            h_symbol = h_symbol.add(&hinv.get(&[i, j]).mul(&xi_i.mul(&xi_j, &spec), &spec));
        }
    }
    let h_dot = h_symbol.derive(spec.rho_index());

    // left side: (1/3) < {H, {H, d_rho H}} > as the even profile
    let double = poisson_poly(&h_symbol, &poisson_poly(&h_symbol, &h_dot, &spec), &spec);
    let lhs = gaussian_expectation(&double, &h_symbol, &spec, k_max)
        .into_iter()
        .map(|c| c / rat_int(3))
        .collect::<Vec<_>>();

    // Gaussian convention: the raw fiber integral of exp(-H) against the
    // normalized measure reproduces sqrt(det h) at x = 0
    let det_h = det_tensor(&h, &spec);
    let det_g = det_h.rho_coeff(&spec, 0);
    let gaussian_convention = {
        let mut xi_sq = XPoly::zero(&spec);
        for i in 0..n {
            let xi = XPoly::<Rat>::var(&spec, spec.xi_index(i));
            xi_sq = xi_sq.add(&xi.mul(&xi, &spec));
        }
        let dh = h_symbol.at_x0(&spec).sub(&xi_sq);
        let mut weight = XPoly::one(&spec);
        let mut pow = XPoly::one(&spec);
        for m in 1..=spec.deg_rho {
            pow = pow.mul(&dh.neg(), &spec);
            if pow.is_zero() {
                break;
            }
            weight = weight.add(&pow.scale(&(rat_int(1) / factorial_rat(m))));
        }
        let raw = integrate_xi(&weight, &spec);
        let sqrt_det_x0 = det_h.at_x0(&spec).sqrt_unit(&spec);
        rho_profile(&raw, &spec, k_max) == rho_profile(&sqrt_det_x0, &spec, k_max)
    };

    // right side: -2 Lap_{h}(V'/V) with V = sqrt(det h / det g)
    let v = det_h
        .mul(&det_g.inverse_unit(&spec), &spec)
        .sqrt_unit(&spec);
    let vp = v.derive(spec.rho_index());
    let log_der = vp.mul(&v.inverse_unit(&spec), &spec);
    let gamma = christoffel(&h, &hinv, &spec);
    let rhs_poly = laplacian_scalar(&log_der, &hinv, &gamma, &spec).scale(&rat_int(-2));
    let rhs = rho_profile(&rhs_poly, &spec, k_max);

    let identity = lhs == rhs;
    let eval_normal = eval_normal_check(&h_family, n, &family_spec, k_max);
    GaussianBracketReport {
        identity,
        gaussian_convention,
        eval_normal,
        achieved_order: k_max,
    }
}

/// The pre-divergence identity for arbitrary symmetric variations: with G in
/// normal form at the origin and k an arbitrary symmetric form, setting
/// k^{-1}-variation = -G^{-1} k G^{-1},
/// sum_a d_a d_a (kv_{bb}) + 2 sum_{ab} d_a d_b (kv_{ab})
///   = -Lap_G(tr_G k) - 2 div_G(div_G k) at the origin.
pub fn sum2_identity_check(g: &JetMetric, k: &Tensor) -> bool {
    assert!(g.is_normal_form(), "metric must be in normal form");
    let spec = g.spec;
    let n = g.n();
    let ginv = invert_metric(&g.g, &spec);
    // kv = -G^{-1} k G^{-1}
    let mut kv = Tensor::zeros(&spec, n, 2);
    for i in 0..n {
        for j in 0..n {
            let mut acc = XPoly::zero(&spec);
            for a in 0..n {
                for b in 0..n {
                    acc = acc.add(
                        &ginv
                            .get(&[i, a])
                            .mul(k.get(&[a, b]), &spec)
                            .mul(ginv.get(&[b, j]), &spec),
                    );
                }
            }
            kv.set(&[i, j], acc.neg());
        }
    }
    let mut lhs = rat_int(0);
    for a in 0..n {
        for b in 0..n {
            lhs += kv
                .get(&[b, b])
                .derive(spec.x_index(a))
                .derive(spec.x_index(a))
                .constant_term();
            lhs += rat_int(2)
                * kv.get(&[a, b])
                    .derive(spec.x_index(a))
                    .derive(spec.x_index(b))
                    .constant_term();
        }
    }
    let gamma = christoffel(&g.g, &ginv, &spec);
    let tr = trace2(k, &ginv, &spec);
    let lap_tr = laplacian_scalar(&tr, &ginv, &gamma, &spec).constant_term();
    let div_k = divergence_sym2(k, &ginv, &gamma, &spec);
    let divdiv = divergence_oneform(&div_k, &ginv, &gamma, &spec).constant_term();
    lhs == -lap_tr - rat_int(2) * divdiv
}

/// Einstein families have x-independent symbols; both sides of the identity
/// vanish identically.
pub fn gaussian_bracket_einstein_trivial(n: usize, c: &Rat, k_max: usize) -> bool {
    // constant-curvature conformal factor jets
    let spec = VarSpec::jets(n, 4);
    let mut norm2 = XPoly::zero(&spec);
    for i in 0..n {
        let xi = XPoly::<Rat>::var(&spec, i);
        norm2 = norm2.add(&xi.mul(&xi, &spec));
    }
    let base = XPoly::one(&spec).add(&norm2.scale(c));
    let factor = base.mul(&base, &spec).inverse_unit(&spec);
    let mut g = Tensor::zeros(&spec, n, 2);
    for i in 0..n {
        g.set(&[i, i], factor.clone());
    }
    let m = JetMetric::new(spec, g);
    let report = gaussian_bracket_check(&m, k_max);
    report.identity && report.gaussian_convention
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::jet::rng::SmallRng;
    use crate::jet::tensor::{conf_flat_metric, normal_jets_from_curvature, random_curvature, random_symmetric_jets};
    use crate::jet::xpoly::rat;

    #[test]
    fn einstein_family_trivial() {
        assert!(gaussian_bracket_einstein_trivial(3, &rat(1, 2), 1));
    }

    #[test]
    fn flagship_quadratic_conformal_factor() {
        // e^{2 phi} delta with phi = x_1^2, n = 3, to rho-order 1
        let spec = VarSpec::jets(3, 4);
        let x0 = XPoly::<Rat>::var(&spec, 0);
        let phi = x0.mul(&x0, &spec);
        let m = conf_flat_metric(spec, 3, &phi);
        let report = gaussian_bracket_check(&m, 1);
        assert!(report.gaussian_convention, "fiber measure convention broken");
        assert!(report.eval_normal);
        assert!(report.identity, "the Gaussian-integral identity failed");
    }

    #[test]
    fn mixed_quadratic_factor() {
        let spec = VarSpec::jets(3, 4);
        let x0 = XPoly::<Rat>::var(&spec, 0);
        let x1 = XPoly::<Rat>::var(&spec, 1);
        let phi = x0.mul(&x1, &spec).add(&x1.mul(&x1, &spec).scale(&rat(1, 2)));
        let m = conf_flat_metric(spec, 3, &phi);
        let report = gaussian_bracket_check(&m, 1);
        assert!(report.identity && report.gaussian_convention && report.eval_normal);
    }

    #[test]
    fn deeper_family_orders() {
        // the conformally flat family is an exact polynomial in rho, so the
        // identity extends to higher orders of the analytic family
        let spec = VarSpec::jets(3, 6);
        let x0 = XPoly::<Rat>::var(&spec, 0);
        let x1 = XPoly::<Rat>::var(&spec, 1);
        let phi = x0.mul(&x0, &spec).add(&x0.mul(&x1, &spec).scale(&rat(1, 2)));
        let m = conf_flat_metric(spec, 3, &phi);
        let report = gaussian_bracket_check(&m, 3);
        assert!(report.identity && report.gaussian_convention && report.eval_normal);
    }

    #[test]
    fn sum2_arbitrary_variations() {
        let mut rng = SmallRng::new(6);
        for n in [3usize, 4] {
            let spec = VarSpec::jets(n, 2);
            for _ in 0..5 {
                let r0 = random_curvature(&spec, n, &mut rng);
                let g = normal_jets_from_curvature(spec, &r0);
                let k = random_symmetric_jets(&spec, n, 2, &mut rng);
                assert!(sum2_identity_check(&g, &k), "sum2 failed at n = {}", n);
            }
        }
    }
}
