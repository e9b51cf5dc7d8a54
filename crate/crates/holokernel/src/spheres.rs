//! Heat kernel coefficients on round spheres and hyperbolic spaces: the
//! beta-combinatorics route, closed forms, the conformal-Laplacian shift,
//! duality and Euler-characteristic checks.

use crate::scalar::ExactScalar;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum SphereOperator {
    Laplacian,
    ConformalLaplacian,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum CoeffSource {
    BetaCombinatorics,
    ClosedForm,
}

#[derive(Clone, Debug)]
pub struct SphereCoeffTable {
    pub n: i64,
    pub operator: SphereOperator,
    pub coeffs: Vec<ExactScalar>,
    pub sources: Vec<CoeffSource>,
}

/// The numbers beta_{k,n} and b_k.
///
/// For even n, beta comes from expanding the product over half-integers
/// j in {1/2, ..., (n-3)/2} of (j^2 - t^2); for odd n the product runs over
/// integers j in {1, ..., (n-3)/2}. Both with the displayed prefactors.
pub fn beta_b(n: i64) -> (Vec<ExactScalar>, Vec<ExactScalar>) {
    assert!(n >= 2);
    let roots: Vec<ExactScalar> = if n % 2 == 0 {
        // j = 1/2, 3/2, ..., (n-3)/2: (n-2)/2 factors
        (0..(n - 2) / 2)
            .map(|i| ExactScalar::ratio(2 * i + 1, 2))
            .collect()
    } else {
        // j = 1, ..., (n-3)/2
        (1..=(n - 3) / 2).map(ExactScalar::from_int).collect()
    };
    let mut beta = vec![ExactScalar::one()];
    for j in &roots {
        // multiply by (j^2 - t^2); coefficients indexed by powers of t^2
        let j2 = j.clone() * j.clone();
        let mut next = vec![ExactScalar::zero(); beta.len() + 1];
        for (k, c) in beta.iter().enumerate() {
            next[k] = next[k].clone() + c.clone() * j2.clone();
            next[k + 1] = next[k + 1].clone() - c.clone();
        }
        beta = next;
    }
    let top = beta.len() - 1; // n/2 - 1 for even n, (n-3)/2 for odd n
    let sign = if top % 2 == 0 {
        ExactScalar::one()
    } else {
        ExactScalar::from_int(-1)
    };
    let mut bs = Vec::with_capacity(top + 1);
    for k in 0..=top {
        // prefactor 1 / ((n/2 - 1)(n/2 - 2) ... (n/2 - k)), empty for k = 0
        let mut denom = ExactScalar::one();
        for i in 1..=k as i64 {
            denom = denom * (ExactScalar::ratio(n, 2) - ExactScalar::from_int(i));
        }
        bs.push(sign.clone() * beta[top - k].clone() / denom);
    }
    (beta, bs)
}

/// Closed forms for the Laplacian on the curvature-one sphere.
pub fn laplace_closed_form(n: i64, k: usize) -> Option<ExactScalar> {
    let nn = ExactScalar::from_int(n);
    let nm1 = ExactScalar::from_int(n - 1);
    match k {
        0 => Some(ExactScalar::one()),
        1 => Some(nn * nm1 / ExactScalar::from_int(6)),
        2 => {
            let poly = ExactScalar::from_int(5 * n * n - 7 * n + 6);
            Some(nn * nm1 * poly / ExactScalar::from_int(3 * 120))
        }
        3 => {
            let n2 = n * n;
            let poly =
                ExactScalar::from_int(35 * n2 * n2 - 112 * n2 * n + 187 * n2 - 110 * n + 96);
            Some(nn * nm1 * poly / ExactScalar::from_int(9 * 5040))
        }
        _ => None,
    }
}

/// Closed forms for the conformal Laplacian on the curvature-one sphere.
pub fn conformal_closed_form(n: i64, k: usize) -> Option<ExactScalar> {
    let nn = ExactScalar::from_int(n);
    match k {
        0 => Some(ExactScalar::one()),
        1 => Some(-(nn * ExactScalar::from_int(n - 4)) / ExactScalar::from_int(12)),
        2 => {
            let poly = ExactScalar::from_int(5 * n * n - 18 * n + 4);
            Some(nn * ExactScalar::from_int(n - 6) * poly / ExactScalar::from_int(1440))
        }
        3 => {
            let n2 = n * n;
            let poly =
                ExactScalar::from_int(35 * n2 * n2 - 308 * n2 * n + 688 * n2 - 184 * n - 96);
            Some(-(nn * ExactScalar::from_int(n - 8) * poly) / ExactScalar::from_int(362880))
        }
        _ => None,
    }
}

/// Heat kernel coefficients of the Laplacian on S^n.
///
/// The beta route is used on its stated range 0 <= 2k <= n-2 and must match
/// the closed forms there; outside that range the closed forms are
/// authoritative.
pub fn laplace_sphere_coeffs(n: i64, kmax: usize) -> SphereCoeffTable {
    let (_, bs) = beta_b(n);
    let half = ExactScalar::ratio(n - 1, 2);
    let half2 = half.clone() * half;
    let mut coeffs = Vec::new();
    let mut sources = Vec::new();
    for k in 0..=kmax {
        let beta_valid = 2 * k as i64 <= n - 2 && k < bs.len();
        if beta_valid {
            // a_{2k} = b_k + ((n-1)/2)^2 b_{k-1} + ... + (1/k!) ((n-1)/2)^{2k} b_0
            let mut acc = ExactScalar::zero();
            for m in 0..=k {
                let term = half2.pow(m as u32) / ExactScalar::factorial(m as u32);
                acc = acc + term * bs[k - m].clone();
            }
            if let Some(cf) = laplace_closed_form(n, k) {
                assert_eq!(acc, cf, "beta route disagrees with closed form at 2k={}", 2 * k);
            }
            coeffs.push(acc);
            sources.push(CoeffSource::BetaCombinatorics);
        } else {
            let cf = laplace_closed_form(n, k)
                .unwrap_or_else(|| panic!("no closed form for a_{} on S^{}", 2 * k, n));
            coeffs.push(cf);
            sources.push(CoeffSource::ClosedForm);
        }
    }
    SphereCoeffTable {
        n,
        operator: SphereOperator::Laplacian,
        coeffs,
        sources,
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Space {
    Sphere,
    Hyperbolic,
}

/// Heat kernel coefficients of the conformal Laplacian on S^n or H^n.
///
/// Obtained from the Laplacian table by the zeroth-order shift
/// P_2 = Delta - (n/2)(n/2-1); hyperbolic values by the duality
/// a_{2N}(S^n) = (-1)^N a_{2N}(H^n).
pub fn conformal_sphere_coeffs(n: i64, kmax: usize, space: Space) -> SphereCoeffTable {
    let base = laplace_sphere_coeffs(n, kmax);
    let shift = -(ExactScalar::ratio(n, 2) * (ExactScalar::ratio(n, 2) - ExactScalar::one()));
    let mut coeffs = Vec::new();
    for k in 0..=kmax {
        // a^P_{2k} = sum_j a^Delta_{2j} shift^{k-j} / (k-j)!
        let mut acc = ExactScalar::zero();
        for j in 0..=k {
            acc = acc
                + base.coeffs[j].clone() * shift.pow((k - j) as u32)
                    / ExactScalar::factorial((k - j) as u32);
        }
        if let Some(cf) = conformal_closed_form(n, k) {
            assert_eq!(acc, cf, "conformal shift disagrees with closed form at 2k={}", 2 * k);
        }
        if space == Space::Hyperbolic && k % 2 == 1 {
            acc = -acc;
        }
        coeffs.push(acc);
    }
    SphereCoeffTable {
        n,
        operator: SphereOperator::ConformalLaplacian,
        coeffs,
        sources: base.sources,
    }
}

/// Volume of the round curvature-one sphere S^n for n = 2, 4, 6 (pi-typed).
pub fn sphere_volume(n: i64) -> ExactScalar {
    match n {
        2 => ExactScalar::pi_times(4, 1, 1),
        4 => ExactScalar::pi_times(8, 3, 2),
        6 => ExactScalar::pi_times(16, 15, 3),
        _ => panic!("volume table covers n = 2, 4, 6"),
    }
}

/// Euler-characteristic check in the critical dimension:
/// (4 pi)^{-n/2} Int a_n dvol equals the stated chi(S^n)-multiple exactly.
pub fn euler_check(n: i64) -> bool {
    let k = (n / 2) as usize;
    let a_crit = conformal_sphere_coeffs(n, k, Space::Sphere).coeffs[k].clone();
    let normalization = ExactScalar::pi_times(4, 1, 1).pow((n / 2) as u32).recip();
    let lhs = normalization * a_crit * sphere_volume(n);
    let multiple = match n {
        2 => ExactScalar::ratio(1, 6),
        4 => ExactScalar::ratio(-1, 180),
        6 => ExactScalar::ratio(1, 1512),
        _ => return false,
    };
    lhs == multiple * ExactScalar::from_int(2)
}

/// Bernoulli numbers B_{2k} for small k.
fn bernoulli_2k(k: usize) -> ExactScalar {
    match k {
        0 => ExactScalar::one(),
        1 => ExactScalar::ratio(1, 6),
        2 => ExactScalar::ratio(-1, 30),
        3 => ExactScalar::ratio(1, 42),
        4 => ExactScalar::ratio(-1, 30),
        _ => panic!("Bernoulli table exhausted"),
    }
}

/// The classical S^2 coefficients b_k = (-1)^k (1/k!) (2^{1-2k} - 1) B_{2k};
/// asserted to reproduce the closed forms on S^2 only.
pub fn s2_bernoulli_b(k: usize) -> ExactScalar {
    let sign = if k % 2 == 0 {
        ExactScalar::one()
    } else {
        ExactScalar::from_int(-1)
    };
    let two_pow = ExactScalar::from_int(2).pow(2 * k as u32).recip() * ExactScalar::from_int(2);
    sign * (two_pow - ExactScalar::one()) * bernoulli_2k(k) / ExactScalar::factorial(k as u32)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn beta_small_dims() {
        // n=3: empty product, beta_0 = 1
        let (beta, _) = beta_b(3);
        assert_eq!(beta, vec![ExactScalar::one()]);
        // n=4: 1/4 - t^2
        let (beta, _) = beta_b(4);
        assert_eq!(beta[0], ExactScalar::ratio(1, 4));
        assert_eq!(beta[1], ExactScalar::from_int(-1));
        // n=6: (1/4 - t^2)(9/4 - t^2)
        let (beta, _) = beta_b(6);
        assert_eq!(beta[0], ExactScalar::ratio(9, 16));
        assert_eq!(beta[1], ExactScalar::ratio(-10, 4));
        assert_eq!(beta[2], ExactScalar::one());
    }

    #[test]
    fn laplace_tables() {
        for n in [3, 4, 6, 7, 12] {
            let t = laplace_sphere_coeffs(n, 0);
            assert!(t.coeffs[0].is_one());
        }
        // n=6: a_2 = 5
        let t = laplace_sphere_coeffs(6, 1);
        assert_eq!(t.coeffs[1], ExactScalar::from_int(5));
        // n=7: a_4 by both routes
        let t = laplace_sphere_coeffs(7, 2);
        assert_eq!(t.coeffs[2], ExactScalar::ratio(707, 30));
        assert_eq!(t.sources[2], CoeffSource::BetaCombinatorics);
    }

    #[test]
    fn beta_route_matches_closed_forms() {
        // the route assertions inside the builders fire on disagreement
        for n in 2..=12 {
            let _ = laplace_sphere_coeffs(n, 3);
        }
    }

    #[test]
    fn conformal_shift_n4() {
        // a_2(P_2) on S^4 vanishes: 2 + (-2)
        let t = conformal_sphere_coeffs(4, 1, Space::Sphere);
        assert!(t.coeffs[1].is_zero());
    }

    #[test]
    fn critical_values() {
        assert_eq!(
            conformal_sphere_coeffs(2, 1, Space::Sphere).coeffs[1],
            ExactScalar::ratio(1, 3)
        );
        assert_eq!(
            conformal_sphere_coeffs(4, 2, Space::Sphere).coeffs[2],
            ExactScalar::ratio(-1, 15)
        );
        assert_eq!(
            conformal_sphere_coeffs(6, 3, Space::Sphere).coeffs[3],
            ExactScalar::ratio(5, 63)
        );
    }

    #[test]
    fn a_v_relations() {
        // a_2 = -(2/3) v_2, a_4 = -(8/45) v_4, a_6 = -(16/63) v_6 at critical n
        use crate::models::ModelGeometry;
        let v2 = ModelGeometry::sphere(2).volume_series(1).0.coeff(1).constant_term();
        let v4 = ModelGeometry::sphere(4).volume_series(2).0.coeff(2).constant_term();
        let v6 = ModelGeometry::sphere(6).volume_series(3).0.coeff(3).constant_term();
        assert_eq!(
            conformal_sphere_coeffs(2, 1, Space::Sphere).coeffs[1],
            ExactScalar::ratio(-2, 3) * v2
        );
        assert_eq!(
            conformal_sphere_coeffs(4, 2, Space::Sphere).coeffs[2],
            ExactScalar::ratio(-8, 45) * v4
        );
        assert_eq!(
            conformal_sphere_coeffs(6, 3, Space::Sphere).coeffs[3],
            ExactScalar::ratio(-16, 63) * v6
        );
    }

    #[test]
    fn duality_involution() {
        for n in [5, 8, 9] {
            let s = conformal_sphere_coeffs(n, 3, Space::Sphere);
            let h = conformal_sphere_coeffs(n, 3, Space::Hyperbolic);
            for k in 0..=3 {
                let sign = if k % 2 == 0 {
                    ExactScalar::one()
                } else {
                    ExactScalar::from_int(-1)
                };
                assert_eq!(s.coeffs[k], sign * h.coeffs[k].clone());
            }
        }
    }

    #[test]
    fn euler_checks() {
        assert!(euler_check(2));
        assert!(euler_check(4));
        assert!(euler_check(6));
    }

    #[test]
    fn s2_bernoulli_route() {
        // the even-n construction at n=2 agrees with the Bernoulli formula
        // where the former is defined, and the Bernoulli route reproduces the
        // closed forms on S^2 for k <= 3
        let (_, bs) = beta_b(2);
        assert_eq!(bs[0], s2_bernoulli_b(0));
        let half2 = ExactScalar::ratio(1, 4);
        for k in 0..=3usize {
            let mut acc = ExactScalar::zero();
            for m in 0..=k {
                acc = acc
                    + half2.pow(m as u32) / ExactScalar::factorial(m as u32)
                        * s2_bernoulli_b(k - m);
            }
            assert_eq!(acc, laplace_closed_form(2, k).unwrap(), "k = {}", k);
        }
    }

    #[test]
    fn shift_then_inverse_shift_is_identity() {
        // applying the zeroth-order shift by +c and then by -c returns the
        // original table, k <= 6 (dimensions where the combinatorial route
        // covers the whole range)
        for n in [14i64, 15, 16] {
            let base = laplace_sphere_coeffs(n, 6);
            let shift = -(ExactScalar::ratio(n, 2) * (ExactScalar::ratio(n, 2) - ExactScalar::one()));
            let forward: Vec<ExactScalar> = (0..=6usize)
                .map(|k| {
                    let mut acc = ExactScalar::zero();
                    for j in 0..=k {
                        acc = acc
                            + base.coeffs[j].clone() * shift.pow((k - j) as u32)
                                / ExactScalar::factorial((k - j) as u32);
                    }
                    acc
                })
                .collect();
            let back: Vec<ExactScalar> = (0..=6usize)
                .map(|k| {
                    let mut acc = ExactScalar::zero();
                    for j in 0..=k {
                        acc = acc
                            + forward[j].clone() * (-shift.clone()).pow((k - j) as u32)
                                / ExactScalar::factorial((k - j) as u32);
                    }
                    acc
                })
                .collect();
            assert_eq!(back, base.coeffs[..=6].to_vec());
        }
    }

    #[test]
    fn hyperbolic_signs() {
        // a_2(H^n) = +n(n-4)/12
        let t = conformal_sphere_coeffs(5, 1, Space::Hyperbolic);
        assert_eq!(t.coeffs[1], ExactScalar::ratio(5, 12));
    }
}
