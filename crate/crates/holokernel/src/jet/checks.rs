//! Pointwise curvature-gradient identities at the origin: the Weyl
//! contraction identity behind the ambient invariant, the Weyl divergence
//! law, and the trace-free-Ricci gradient identity for conformally flat
//! metrics.

use super::tensor::{covariant_derivative, curvature_package, JetMetric, Tensor};
use super::xpoly::{rat, rat_int, Rat, VarSpec, XPoly};
use num_traits::Zero;

fn origin(t: &Tensor, idx: &[usize]) -> Rat {
    t.get(idx).constant_term()
}

fn truncated(spec: &VarSpec, deg: usize) -> VarSpec {
    let mut s = *spec;
    s.deg_x = deg;
    s
}

fn truncate_tensor(t: &Tensor, spec: &VarSpec) -> Tensor {
    Tensor {
        n: t.n,
        rank: t.rank,
        comp: t
            .comp
            .iter()
            .map(|p| {
                let mut out = XPoly::zero(spec);
                for (e, c) in p.terms() {
                    out = out.add(&XPoly::monomial(spec, e.clone(), c.clone()));
                }
                out
            })
            .collect(),
    }
}

/// The divergence law nabla^m W_{mjkl} = (n-3) C_{jkl} at the origin.
/// Requires g(0) = delta so that raising indices is a plain sum.
pub fn div_w_check(m: &JetMetric) -> bool {
    let n = m.n();
    let pkg = curvature_package(m);
    let spec0 = truncated(&m.spec, 0);
    let nw = covariant_derivative(
        &truncate_tensor(&pkg.weyl, &truncated(&m.spec, 1)),
        &truncate_tensor(&pkg.gamma, &truncated(&m.spec, 1)),
        &spec0,
    );
    for j in 0..n {
        for k in 0..n {
            for l in 0..n {
                let mut div = rat_int(0);
                for mm in 0..n {
                    div += origin(&nw, &[mm, j, k, l, mm]);
                }
                let rhs = rat_int(n as i64 - 3) * origin(&pkg.cotton, &[j, k, l]);
                if div != rhs {
                    return false;
                }
            }
        }
    }
    true
}

/// The contraction identity at the origin:
/// -(1/2)(W, Lap W) + (n-2) W^{ijkl} nabla_i C_{jkl}
///   = -(1/2) I_1 - 2 I_2 - (n-2) P^m_i W^{ijkl} W_{mjkl} - J |W|^2,
/// with I_1 and I_2 the two cubic Weyl contractions. Requires g(0) = delta.
pub fn weyl_identity_check(m: &JetMetric) -> bool {
    let n = m.n();
    assert!(m.spec.deg_x >= 4, "second derivatives of W need degree 4 jets");
    let pkg = curvature_package(m);
    let w = &pkg.weyl;
    // only origin values of the second derivatives are needed, so the
    // intermediate jets are truncated aggressively
    let spec1 = truncated(&m.spec, 1);
    let spec0 = truncated(&m.spec, 0);
    let gamma1 = truncate_tensor(&pkg.gamma, &spec1);
    let nw = truncate_tensor(
        &covariant_derivative(&truncate_tensor(w, &truncated(&m.spec, 2)), &gamma1, &spec1),
        &spec1,
    );
    let nnw = covariant_derivative(&nw, &gamma1, &spec0);
    let nc = covariant_derivative(
        &truncate_tensor(&pkg.cotton, &spec1),
        &gamma1,
        &spec0,
    );

    // (W, Lap W) with Lap W_{ijkl} = g^{ab} (nabla nabla W)_{ijkl,a,b}
    let mut w_lapw = rat_int(0);
    let mut w_nabla_c = rat_int(0);
    let mut i1 = rat_int(0);
    let mut i2 = rat_int(0);
    let mut p_w_w = rat_int(0);
    let mut w_norm2 = rat_int(0);
    let ginv0: Vec<Vec<Rat>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| pkg.ginv.get(&[i, j]).constant_term())
                .collect()
        })
        .collect();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                for l in 0..n {
                    let wijkl = origin(w, &[i, j, k, l]);
                    if Zero::is_zero(&wijkl) {
                        continue;
                    }
                    let mut lap = rat_int(0);
                    for a in 0..n {
                        for b in 0..n {
                            if !Zero::is_zero(&ginv0[a][b]) {
                                lap += ginv0[a][b].clone() * origin(&nnw, &[i, j, k, l, a, b]);
                            }
                        }
                    }
                    w_lapw += wijkl.clone() * lap;
                    w_nabla_c += wijkl.clone() * origin(&nc, &[j, k, l, i]);
                    w_norm2 += wijkl.clone() * wijkl.clone();
                    for mm in 0..n {
                        p_w_w += origin(&pkg.schouten, &[mm, i])
                            * wijkl.clone()
                            * origin(w, &[mm, j, k, l]);
                    }
                }
            }
        }
    }
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                for l in 0..n {
                    for mm in 0..n {
                        for nn2 in 0..n {
                            let a = origin(w, &[i, j, k, l]);
                            if Zero::is_zero(&a) {
                                continue;
                            }
                            i1 += a.clone()
                                * origin(w, &[k, l, mm, nn2])
                                * origin(w, &[mm, nn2, i, j]);
                            i2 += a
                                * origin(w, &[j, mm, l, nn2])
                                * origin(w, &[i, mm, k, nn2]);
                        }
                    }
                }
            }
        }
    }
    let j0 = pkg.j.constant_term();
    let nm2 = rat_int(n as i64 - 2);
    let lhs = rat(-1, 2) * w_lapw + nm2.clone() * w_nabla_c;
    let rhs = rat(-1, 2) * i1 - rat_int(2) * i2 - nm2 * p_w_w - j0 * w_norm2;
    lhs == rhs
}

/// Conformally flat gradient identity at the origin:
/// |nabla B|^2 - nabla_i B_{jk} nabla_k B_{ij}
///   = (n-2)^2 / (4 n^2 (n-1)) |nabla scal|^2,
/// with B the trace-free Ricci tensor. The input must have vanishing Cotton
/// tensor to the working order.
pub fn ricci_gradient_check(m: &JetMetric) -> Result<bool, String> {
    let n = m.n();
    let spec = m.spec;
    if !super::fg::cotton_vanishes(m) {
        return Err("input is not conformally flat to the working order".into());
    }
    let pkg = curvature_package(m);
    // B = Ric - (scal/n) g
    let mut b = Tensor::zeros(&spec, n, 2);
    for i in 0..n {
        for j in 0..n {
            b.set(
                &[i, j],
                pkg.ric.get(&[i, j]).sub(
                    &pkg.scal
                        .mul(m.g.get(&[i, j]), &spec)
                        .scale(&rat(1, n as i64)),
                ),
            );
        }
    }
    let nb = covariant_derivative(&b, &pkg.gamma, &spec);
    let mut b3 = rat_int(0);
    let mut b4 = rat_int(0);
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let v = origin(&nb, &[j, k, i]);
                b3 += v.clone() * v.clone();
                b4 += v * origin(&nb, &[i, j, k]);
            }
        }
    }
    let mut grad_scal2 = rat_int(0);
    for i in 0..n {
        let d = pkg.scal.derive(spec.x_index(i)).constant_term();
        grad_scal2 += d.clone() * d;
    }
    let nn = n as i64;
    let factor = rat((nn - 2) * (nn - 2), 4 * nn * nn * (nn - 1));
    Ok(b3 - b4 == factor * grad_scal2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::jet::rng::SmallRng;
    use crate::jet::tensor::conf_flat_metric;

    /// Random metric delta + (terms of degree 2..=4); g(0) = delta and the
    /// first derivatives vanish at the origin.
    pub fn random_perturbed_metric(n: usize, deg: usize, seed: u64) -> JetMetric {
        let spec = VarSpec::jets(n, deg);
        let mut rng = SmallRng::new(seed);
        let mut g = Tensor::zeros(&spec, n, 2);
        for i in 0..n {
            for j in 0..=i {
                let mut p = if i == j {
                    XPoly::one(&spec)
                } else {
                    XPoly::zero(&spec)
                };
                // sparse terms of degree 2..=deg
                for _ in 0..2 {
                    let mut expo = vec![0u8; spec.nvars()];
                    let d = 2 + rng.below(deg - 1);
                    for _ in 0..d {
                        expo[spec.x_index(rng.below(n))] += 1;
                    }
                    p = p.add(&XPoly::monomial(&spec, expo, rng.small_rational()));
                }
                g.set(&[i, j], p.clone());
                if i != j {
                    g.set(&[j, i], p);
                }
            }
        }
        JetMetric::new(spec, g)
    }

    #[test]
    fn weyl_identity_trivial_cases() {
        // conformally flat jets: both sides vanish
        let spec = VarSpec::jets(5, 4);
        let mut rng = SmallRng::new(3);
        let phi = crate::jet::tensor::random_poly(&spec, 5, 3, &mut rng);
        let phi = phi.sub(&XPoly::constant(&spec, phi.constant_term()));
        let m = conf_flat_metric(spec, 5, &phi);
        assert!(weyl_identity_check(&m));
        // flat
        let m = JetMetric::flat(VarSpec::jets(5, 4), 5);
        assert!(weyl_identity_check(&m));
    }

    #[test]
    fn weyl_identity_random_n5() {
        for seed in [1u64, 2, 3] {
            let m = random_perturbed_metric(5, 4, seed);
            assert!(div_w_check(&m), "divergence law failed at seed {}", seed);
            assert!(weyl_identity_check(&m), "contraction identity failed at seed {}", seed);
        }
    }

    #[test]
    fn ricci_gradient_trivial_and_cubic() {
        // constant curvature: 0 = 0
        let spec = VarSpec::jets(4, 3);
        let m = JetMetric::flat(spec, 4);
        assert!(ricci_gradient_check(&m).unwrap());
        // e^{2 phi} delta with phi = x_1^3, n = 4
        let x0 = XPoly::<Rat>::var(&spec, 0);
        let phi = x0.mul(&x0, &spec).mul(&x0, &spec);
        let m = conf_flat_metric(spec, 4, &phi);
        assert!(ricci_gradient_check(&m).unwrap());
    }

    #[test]
    fn ricci_gradient_random_n5() {
        let spec = VarSpec::jets(5, 3);
        let mut rng = SmallRng::new(19);
        for _ in 0..3 {
            let phi = crate::jet::tensor::random_poly(&spec, 5, 3, &mut rng);
            let phi = phi.sub(&XPoly::constant(&spec, phi.constant_term()));
            let m = conf_flat_metric(spec, 5, &phi);
            assert!(ricci_gradient_check(&m).unwrap());
        }
    }

    #[test]
    fn ricci_gradient_rejects_generic_metrics() {
        let m = random_perturbed_metric(5, 3, 77);
        assert!(ricci_gradient_check(&m).is_err());
    }
}
