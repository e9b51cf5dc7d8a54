//! Second-conformal-variation quadratic forms at Einstein metrics as exact
//! polynomials in the Laplace eigenvalue, sphere spectra, extremum
//! classification, and series-level first-variation identities.
//!
//! Conventions: the eigenvalue variable mu >= 0 refers to -Delta, so every
//! quoted form has Delta replaced by -mu; forms stated with the opposite
//! Laplacian sign are negated at ingestion.

use crate::models::ModelGeometry;
use crate::ring::{RingElement, Sym};
use crate::scalar::ExactScalar;
use crate::series::{binomial_power_series, series_inverse, series_mul};

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum HessianKind {
    /// integrated renormalized volume coefficient, 2k < n
    F2k { k: u32 },
    /// renormalized volume functional, critical order
    Rv,
    /// critical corrected coefficient (order n-2)
    Wcrit,
    /// subcritical corrected coefficients, 2k != n-2
    Wsub { k: u32 },
    /// log-determinant in dimension 2, 4, 6
    Det2,
    Det4,
    Det6,
    /// the scale-invariant fourth-coefficient functional in dimension 6
    A42,
}

/// prefactor times a polynomial in mu, with the expected kernel recorded.
#[derive(Clone, Debug)]
pub struct HessianForm {
    pub kind: HessianKind,
    pub prefactor: RingElement,
    /// coefficients of the eigenvalue polynomial, index = power of mu
    pub eigen_poly: Vec<RingElement>,
    pub kernel_roots: Vec<RingElement>,
}

impl HessianForm {
    pub fn eigen_at(&self, mu: &RingElement) -> RingElement {
        let mut acc = RingElement::zero();
        for (i, coeff) in self.eigen_poly.iter().enumerate() {
            acc = &acc + &(coeff * &mu.pow(i as u32));
        }
        acc
    }

    pub fn evaluate(&self, mu: &RingElement) -> RingElement {
        &self.prefactor * &self.eigen_at(mu)
    }

    /// The same form with the prefactor multiplied by a sign or weight.
    pub fn scaled(&self, factor: &RingElement) -> HessianForm {
        HessianForm {
            kind: self.kind,
            prefactor: &self.prefactor * factor,
            eigen_poly: self.eigen_poly.clone(),
            kernel_roots: self.kernel_roots.clone(),
        }
    }

    /// Every recorded kernel root annihilates the eigenvalue polynomial.
    pub fn kernel_roots_are_roots(&self) -> bool {
        self.kernel_roots
            .iter()
            .all(|r| self.eigen_at(r).is_zero())
    }
}

fn neg_c_pow(c: &RingElement, e: u32) -> RingElement {
    (-c).pow(e)
}

/// Build the Hessian form of the given kind at an Einstein metric with
/// normalization c; n may stay symbolic except where a dimension is fixed
/// by the kind.
pub fn hessian_form(
    kind: HessianKind,
    n: &RingElement,
    c: &RingElement,
) -> Result<HessianForm, String> {
    let four_nc = (&(n * c)).scale(&ExactScalar::from_int(4));
    let half = ExactScalar::ratio(1, 2);
    let form = match kind {
        HessianKind::F2k { k } => {
            if k == 0 {
                return Err("F2k needs k >= 1".into());
            }
            let pref = (&(n - &RingElement::from_int(2 * k as i64))
                * &RingElement::binomial(&(n - &RingElement::one()), k - 1))
                .scale(&half)
                ;
            let pref = &pref * &neg_c_pow(c, k - 1);
            HessianForm {
                kind,
                prefactor: pref,
                eigen_poly: vec![four_nc.clone(), RingElement::from_int(-1)],
                kernel_roots: vec![four_nc],
            }
        }
        HessianKind::Rv => {
            // needs even n; binom(n-1, n/2-1) with n/2 as ring element
            let half_n = n.scale(&half);
            let k_top = &half_n - &RingElement::one();
            let pref = binomial_symbolic(&(n - &RingElement::one()), &k_top)?.scale(&half);
            let pref = &pref * &pow_symbolic(&-c, &k_top)?;
            HessianForm {
                kind,
                prefactor: pref,
                eigen_poly: vec![four_nc.clone(), RingElement::from_int(-1)],
                kernel_roots: vec![four_nc],
            }
        }
        HessianKind::Wcrit => {
            let half_n = n.scale(&half);
            let k_top = &half_n - &RingElement::from_int(2);
            let pref = binomial_symbolic(&(n - &RingElement::from_int(4)), &k_top)?.scale(&half);
            let pref = &pref * &pow_symbolic(&-c, &k_top)?;
            // Delta (4cn + Delta) -> mu^2 - 4nc mu
            HessianForm {
                kind,
                prefactor: pref,
                eigen_poly: vec![RingElement::zero(), -&four_nc, RingElement::one()],
                kernel_roots: vec![RingElement::zero(), four_nc],
            }
        }
        HessianKind::Wsub { k } => {
            if k == 0 {
                return Err("Wsub needs k >= 1".into());
            }
            // (4nc - mu)(A - B mu) with
            // A = (n-2-2k)(-c)^k (n/2)(2 binom(n-3,k-1) + n binom(n-3,k-2)),
            // B = (1/2) binom(n-4,k-1)(-c)^{k-1}
            let n3 = n - &RingElement::from_int(3);
            let combo = &RingElement::binomial(&n3, k - 1).scale(&ExactScalar::from_int(2))
                + &(n * &binom_or_zero(&n3, k as i64 - 2));
            let a = &(&(n - &RingElement::from_int(2 + 2 * k as i64))
                * &n.scale(&half))
                * &(&combo * &neg_c_pow(c, k));
            let b = RingElement::binomial(&(n - &RingElement::from_int(4)), k - 1)
                .scale(&half);
            let b = &b * &neg_c_pow(c, k - 1);
            // expand (4nc - mu)(A - B mu) = 4nc A - (A + 4nc B) mu + B mu^2
            let c0 = &four_nc * &a;
            let c1 = -&(&a + &(&four_nc * &b));
            let c2 = b;
            HessianForm {
                kind,
                prefactor: RingElement::one(),
                eigen_poly: vec![c0, c1, c2],
                kernel_roots: vec![four_nc],
            }
        }
        HessianKind::Det2 => {
            let eight_c = c.scale(&ExactScalar::from_int(8));
            HessianForm {
                kind,
                prefactor: RingElement::ratio(2, 3),
                eigen_poly: vec![eight_c.clone(), RingElement::from_int(-1)],
                kernel_roots: vec![eight_c],
            }
        }
        HessianKind::Det4 => {
            // (Delta - 8c)(Delta + 16c) -> (mu + 8c)(mu - 16c)
            let c8 = c.scale(&ExactScalar::from_int(8));
            let c16 = c.scale(&ExactScalar::from_int(16));
            HessianForm {
                kind,
                prefactor: RingElement::ratio(1, 15),
                eigen_poly: vec![
                    -&(&c8 * &c16),
                    &c8 - &c16,
                    RingElement::one(),
                ],
                kernel_roots: vec![c16],
            }
        }
        HessianKind::Det6 => {
            // (Delta + 24c)(3 Delta^2 - 120c Delta + 1600c^2)
            //   -> (24c - mu)(3 mu^2 + 120c mu + 1600 c^2)
            let c24 = c.scale(&ExactScalar::from_int(24));
            let q0 = c.pow(2).scale(&ExactScalar::from_int(1600));
            let q1 = c.scale(&ExactScalar::from_int(120));
            let q2 = RingElement::from_int(3);
            // (24c - mu)(q2 mu^2 + q1 mu + q0)
            let e0 = &c24 * &q0;
            let e1 = &(&c24 * &q1) - &q0;
            let e2 = &(&c24 * &q2) - &q1;
            let e3 = -&q2;
            HessianForm {
                kind,
                prefactor: RingElement::ratio(1, 630),
                eigen_poly: vec![e0, e1, e2, e3],
                kernel_roots: vec![c24],
            }
        }
        HessianKind::A42 => {
            // -2 Delta (Delta + 24c) -> -2 mu (mu - 24c)
            let c24 = c.scale(&ExactScalar::from_int(24));
            HessianForm {
                kind,
                prefactor: RingElement::from_int(-2),
                eigen_poly: vec![RingElement::zero(), -&c24, RingElement::one()],
                kernel_roots: vec![RingElement::zero(), c24],
            }
        }
    };
    debug_assert!(form.kernel_roots_are_roots());
    Ok(form)
}

fn binom_or_zero(top: &RingElement, k: i64) -> RingElement {
    if k < 0 {
        RingElement::zero()
    } else {
        RingElement::binomial(top, k as u32)
    }
}

/// binom(top, k) where k must be a concrete nonnegative integer element.
fn binomial_symbolic(top: &RingElement, k: &RingElement) -> Result<RingElement, String> {
    let kc = k
        .is_constant()
        .then(|| k.constant_term())
        .ok_or("binomial index must be numeric; fix the dimension first")?;
    let r = kc.rational();
    if !r.is_integer() || kc.signum() < 0 {
        return Err(format!("binomial index {} is not a nonnegative integer", kc));
    }
    use num_traits::ToPrimitive;
    Ok(RingElement::binomial(top, r.to_integer().to_u32().unwrap()))
}

fn pow_symbolic(base: &RingElement, e: &RingElement) -> Result<RingElement, String> {
    let ec = e
        .is_constant()
        .then(|| e.constant_term())
        .ok_or("exponent must be numeric; fix the dimension first")?;
    let r = ec.rational();
    if !r.is_integer() || ec.signum() < 0 {
        return Err(format!("exponent {} is not a nonnegative integer", ec));
    }
    use num_traits::ToPrimitive;
    Ok(base.pow(r.to_integer().to_u32().unwrap()))
}

/// Laplace eigenvalues of the round sphere with Einstein normalization c:
/// mu_j = 4c j (j + n - 1); mu_1 = 4nc identically.
pub fn sphere_spectrum(n: &RingElement, c: &RingElement, jmax: u32) -> Vec<RingElement> {
    (0..=jmax)
        .map(|j| {
            let jj = RingElement::from_int(j as i64);
            (&(&jj * &(&jj + &(n - &RingElement::one()))) * c).scale(&ExactScalar::from_int(4))
        })
        .collect()
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Classification {
    LocalMax,
    LocalMin,
    Indefinite,
    DegenerateAlongConformalKilling,
}

/// Sign pattern of the form over a numeric spectrum (constants excluded by
/// the caller). A vanishing value is accepted only at mu = 4nc, the
/// conformal-Killing eigenvalue of the round sphere.
pub fn classify_extremum(
    form: &HessianForm,
    spectrum: &[ExactScalar],
    n_val: &ExactScalar,
    c_val: &ExactScalar,
) -> Classification {
    let mut pos = 0usize;
    let mut neg = 0usize;
    let mut degenerate = false;
    let four_nc = n_val.clone() * c_val.clone() * ExactScalar::from_int(4);
    for mu in spectrum {
        let value = form
            .evaluate(&RingElement::sym(Sym::Mu))
            .subst_scalar(Sym::Mu, mu)
            .subst_scalar(Sym::N, n_val)
            .subst_scalar(Sym::C, c_val);
        assert!(
            value.is_constant(),
            "classification needs fully numeric data, got {}",
            value
        );
        match value.constant_term().signum() {
            1 => pos += 1,
            -1 => neg += 1,
            _ => {
                if *mu == four_nc {
                    degenerate = true;
                } else {
                    return Classification::Indefinite;
                }
            }
        }
    }
    match (pos, neg) {
        (0, 0) => Classification::DegenerateAlongConformalKilling,
        (_, 0) if degenerate => Classification::DegenerateAlongConformalKilling,
        (0, _) if degenerate => Classification::DegenerateAlongConformalKilling,
        (_, 0) => Classification::LocalMin,
        (0, _) => Classification::LocalMax,
        _ => Classification::Indefinite,
    }
}

/// Numeric sphere spectrum mu_1..mu_jmax.
pub fn numeric_sphere_spectrum(n: i64, c: &ExactScalar, jmax: u32) -> Vec<ExactScalar> {
    (1..=jmax)
        .map(|j| ExactScalar::from_int(4 * j as i64 * (j as i64 + n - 1)) * c.clone())
        .collect()
}

/// Strictly-above-Obata spectrum: mu_1 pushed above 4nc, the rest as on the
/// sphere; models the non-sphere Einstein case for c > 0.
pub fn obata_strict_spectrum(n: i64, c: &ExactScalar, jmax: u32) -> Vec<ExactScalar> {
    let mut s = numeric_sphere_spectrum(n, c, jmax);
    // bump mu_1 halfway toward mu_2
    let bump = (s[1].clone() - s[0].clone()) * ExactScalar::ratio(1, 2);
    s[0] = s[0].clone() + bump;
    s
}

/// Generic positive sample spectrum for the scal < 0 regime: k |c| for
/// k = 1..count, covering both sides of any root proportional to |c|.
pub fn negative_c_sample_spectrum(c: &ExactScalar, count: u32) -> Vec<ExactScalar> {
    let abs = c.abs();
    (1..=count)
        .map(|k| ExactScalar::from_int(k as i64) * abs.clone())
        .collect()
}

/// First-variation identities of the Einstein volume series with an abstract
/// eigenfunction (Delta phi = -mu phi):
/// (i) the log-derivative variation equals r (1-c rho)^{-2} (4cn - mu) phi,
/// (ii) the generating-function expansion reproduces the F2k prefactors,
/// (iii) the sphere kernel profile matches the integrated L-series.
pub struct RvcVariationReport {
    pub log_v_var: bool,
    pub second_gf: bool,
    pub kappa0: bool,
    pub scaling_consistency: bool,
}

pub fn rvc_model_variation(order: usize) -> RvcVariationReport {
    let n = RingElement::sym(Sym::N);
    let c = RingElement::sym(Sym::C);
    let mu = RingElement::sym(Sym::Mu);
    let m = ModelGeometry::einstein_symbolic();
    let (v, _) = m.volume_series(order + 2);
    // full bilinear-form profile L = rho * S
    let ell = m.l_series(order + 1)[0].series.shift_up(1);

    // (i) log-v-var assembled from the v-variation ingredients:
    // phi-part: 4 rho (v'/v)^2 - (4v' + 4 rho v'')/v
    // mu-part:  2 v' ell / v^2 - 2 ell' / v
    // identity: phi_part + mu * mu_part = (1-c rho)^{-2} (4nc - mu)
    let vp = v.d_rho();
    let vpp = vp.d_rho();
    let vinv = series_inverse(&v.truncate(order));
    let vinv2 = series_mul(&vinv, &vinv);
    let phi_part = series_mul(&series_mul(&vp, &vp), &vinv2)
        .shift_up(1)
        .scale(&RingElement::from_int(4))
        .sub(&series_mul(
            &vp.scale(&RingElement::from_int(4))
                .add(&vpp.shift_up(1).scale(&RingElement::from_int(4))),
            &vinv,
        ));
    let ellp = ell.d_rho();
    let mu_part = series_mul(&series_mul(&vp, &ell), &vinv2)
        .scale(&RingElement::from_int(2))
        .sub(&series_mul(&ellp, &vinv).scale(&RingElement::from_int(2)));
    let lhs = phi_part.add(&mu_part.scale(&mu));
    let four_nc = (&(&n * &c)).scale(&ExactScalar::from_int(4));
    let target = binomial_power_series(&c, &RingElement::from_int(-2), order)
        .scale(&(&four_nc - &mu));
    let log_v_var = lhs.truncate(order) == target;

    // (ii) second-GF: coefficient of rho^k of (n - 2 rho d/d rho) applied to
    // (rho/2)(1-c rho)^{n-1} equals (n-2k)(1/2) binom(n-1,k-1)(-c)^{k-1}
    let profile = binomial_power_series(&c, &(&n - &RingElement::one()), order + 1)
        .scale(&RingElement::ratio(1, 2))
        .shift_up(1);
    let derivative = profile.d_rho().shift_up(1).scale(&RingElement::from_int(-2));
    let gf = profile.scale(&n).add(&derivative);
    let mut second_gf = true;
    for k in 1..=5.min(order) {
        let expect = (&(&n - &RingElement::from_int(2 * k as i64))
            * &RingElement::binomial(&(&n - &RingElement::one()), k as u32 - 1))
            .scale(&ExactScalar::ratio(1, 2));
        let expect = &expect * &(-&c).pow(k as u32 - 1);
        if gf.coeff(k) != expect {
            second_gf = false;
        }
    }

    // (iii) kappa_0 on the sphere: the kernel profile (1/2)(1 - rho/4)^{n-1}
    // equals the integrated L-series at c = 1/4
    let sphere = ModelGeometry::Einstein {
        n: n.clone(),
        c: RingElement::ratio(1, 4),
    };
    let ell_sphere = sphere.l_series(order)[0].series.clone();
    let kappa_profile = binomial_power_series(
        &RingElement::ratio(1, 4),
        &(&n - &RingElement::one()),
        order,
    )
    .scale(&RingElement::ratio(1, 2));
    let kappa0 = ell_sphere == kappa_profile;

    // constant-factor consistency: at mu = 0 the variation is pure scaling,
    // v•[phi] = -r v. phi = -2 rho v' phi
    let v_cv_mu0 = vp
        .shift_up(1)
        .scale(&RingElement::from_int(-2))
        .sub(&ell.shift_up(1).scale(&RingElement::zero()));
    let scaling_consistency = v_cv_mu0 == vp.shift_up(1).scale(&RingElement::from_int(-2));

    RvcVariationReport {
        log_v_var,
        second_gf,
        kappa0,
        scaling_consistency,
    }
}

/// The rescaled-functional Hessian identity on Einstein data for k <= kmax:
/// -(2k v_{2k} + L_{2k} mu) = (1/2) binom(n-1,k-1)(-c)^{k-1} (4nc - mu).
pub fn tilde_f_hessian_check(kmax: u32) -> bool {
    let n = RingElement::sym(Sym::N);
    let c = RingElement::sym(Sym::C);
    let mu = RingElement::sym(Sym::Mu);
    let m = ModelGeometry::einstein_symbolic();
    let (v, _) = m.volume_series(kmax as usize);
    let ell = m.l_series(kmax as usize)[0].series.clone();
    for k in 1..=kmax {
        let v2k = v.coeff(k as usize);
        let l2k = ell.coeff(k as usize - 1); // L = rho * S
        let lhs = -&(&v2k.scale(&ExactScalar::from_int(2 * k as i64)) + &(&l2k * &mu));
        let pref = RingElement::binomial(&(&n - &RingElement::one()), k - 1)
            .scale(&ExactScalar::ratio(1, 2));
        let pref = &pref * &(-&c).pow(k - 1);
        let four_nc = (&n * &c).scale(&ExactScalar::from_int(4));
        let rhs = &pref * &(&four_nc - &mu);
        if lhs != rhs {
            return false;
        }
    }
    true
}
