//! Named verification suites exposed through the batch interface. Every
//! check is exact; failures carry the first differing coefficient.

use crate::heat::{
    a0_series, a22_check, a2_series, a42_confflat, a4_series_model, a6_multiroute,
    holographic_q_check, lambda_omega_coeffs, pv_rescaling_check, q_a4_identities, q_einstein,
    scaling_weight_check, seeded_conf_flat, CoeffReport, PvKind,
};
use crate::hessian::{
    classify_extremum, hessian_form, negative_c_sample_spectrum, numeric_sphere_spectrum,
    obata_strict_spectrum, rvc_model_variation, tilde_f_hessian_check, Classification,
    HessianKind,
};
use crate::jet::checks::{div_w_check, ricci_gradient_check, weyl_identity_check};
use crate::jet::fg::{
    cotton_vanishes, d_div_check, fg_expand, tensors_agree_to_degree, FgContinuation,
};
use crate::jet::parametrix::{a2_closed_form, parametrix_a2};
use crate::jet::rng::SmallRng;
use crate::jet::symbol::{dpb_check, random_symbol_poly};
use crate::jet::tensor::{
    conf_flat_metric, curvature_package, normal_der_check, normal_jets_from_curvature,
    random_curvature, random_poly, random_symmetric_jets, JetMetric, Tensor,
};
use crate::jet::gaussian_identity::{sum2_identity_check, gaussian_bracket_check, gaussian_bracket_einstein_trivial};
use crate::jet::xpoly::{gaussian_moment, rat, VarSpec, XPoly};
use crate::models::{einstein_normalization_check, einstein_potential_check, ModelGeometry};
use crate::report::{expect_true, CheckResult, SuiteReport};
use crate::ring::{RingElement, Sym};
use crate::scalar::ExactScalar;
use crate::series::{binomial_power_series, series_mul};
use crate::spheres::{
    beta_b, conformal_closed_form, conformal_sphere_coeffs, euler_check, laplace_closed_form,
    laplace_sphere_coeffs, s2_bernoulli_b, Space,
};

/// Caps shared by the randomized jet checks.
#[derive(Clone, Copy, Debug)]
pub struct SuiteParams {
    pub seed: u64,
    pub n_cap: usize,
    pub order_cap: usize,
}

impl Default for SuiteParams {
    fn default() -> Self {
        SuiteParams {
            seed: 1,
            n_cap: 4,
            order_cap: 2,
        }
    }
}

pub const SUITES: [&str; 6] = ["gjms", "models", "heat", "sphere", "hessians", "jets"];

pub fn run_suite(name: &str, params: SuiteParams) -> Result<SuiteReport, String> {
    let checks = match name {
        "gjms" => gjms_checks(),
        "models" => model_checks(params.seed),
        "heat" => heat_checks(params.seed),
        "sphere" => sphere_checks(),
        "hessians" => hessian_checks(),
        "jets" => jet_checks(params),
        "all" => {
            let mut all = gjms_checks();
            all.extend(model_checks(params.seed));
            all.extend(heat_checks(params.seed));
            all.extend(sphere_checks());
            all.extend(hessian_checks());
            all.extend(jet_checks(params));
            all
        }
        _ => return Err(format!("unknown suite '{}'", name)),
    };
    Ok(SuiteReport::new(name, params.seed, checks))
}

fn report_outcome(r: &CoeffReport) -> Result<(), String> {
    if r.agree {
        Ok(())
    } else {
        Err(r.discrepancy.clone().unwrap_or_else(|| "routes differ".into()))
    }
}

pub fn gjms_checks() -> Vec<CheckResult> {
    let mut out = Vec::new();
    for n in 1..=8u32 {
        out.push(CheckResult::from_outcome(
            &format!("inversion N={}", n),
            "basis-inversion",
            expect_true(crate::gjms::verify_inversion(n), "inversion"),
        ));
    }
    let mut bracket_ok = true;
    let mut witness = String::new();
    for size in 2..=7u32 {
        for i in crate::gjms::compositions(size) {
            if !crate::gjms::bracket_identity_check(&i) {
                bracket_ok = false;
                witness = format!("{:?}", i);
            }
        }
    }
    out.push(CheckResult::from_outcome(
        "bracket identities size<=7",
        "telescoping-multiplicity",
        if bracket_ok {
            Ok(())
        } else {
            Err(format!("failed at {}", witness))
        },
    ));
    let mut rev_ok = true;
    for size in 1..=8u32 {
        for i in crate::gjms::compositions(size) {
            let (m, _) = crate::gjms::coeff_pair(&i);
            let (mr, _) = crate::gjms::coeff_pair(&i.reversed());
            if m != mr {
                rev_ok = false;
            }
        }
    }
    out.push(CheckResult::from_outcome(
        "multiplicity reversal size<=8",
        "m-reversal",
        expect_true(rev_ok, "reversal symmetry"),
    ));
    for n in 1..=6u32 {
        out.push(CheckResult::from_outcome(
            &format!("sphere factorization N={}", n),
            "sphere-product-form",
            expect_true(crate::gjms::sphere_factorization(n), "factorization"),
        ));
    }
    let mut gf_ok = true;
    for n in 1..=10u32 {
        let (h, k) = crate::gjms::generating_weights(n);
        if k != h / ExactScalar::from_int(4 * n as i64) {
            gf_ok = false;
        }
    }
    out.push(CheckResult::from_outcome(
        "generating weights N<=10",
        "generating-function-weights",
        expect_true(gf_ok, "weight bookkeeping"),
    ));
    out
}

fn catalog(seed: u64) -> Vec<ModelGeometry> {
    vec![
        ModelGeometry::einstein_symbolic(),
        ModelGeometry::product_symbolic(),
        ModelGeometry::sphere(6),
        ModelGeometry::hyperbolic(5),
        seeded_conf_flat(seed, 4),
        seeded_conf_flat(seed.wrapping_add(1), 6),
    ]
}

pub fn model_checks(seed: u64) -> Vec<CheckResult> {
    let mut out = Vec::new();
    for m in catalog(seed) {
        let inv = m.volume_invariants();
        out.push(CheckResult::from_outcome(
            &format!("volume invariants on {}", m.label()),
            "v2k-invariant-forms",
            expect_true(inv.agree, "invariant cross-check"),
        ));
        let (v, w) = m.volume_series(6);
        out.push(CheckResult::from_outcome(
            &format!("w^2 = v on {}", m.label()),
            "square-root",
            expect_true(series_mul(&w, &w) == v, "square root"),
        ));
        out.push(CheckResult::from_outcome(
            &format!("trace identity on {}", m.label()),
            "family-trace-identity",
            expect_true(m.trace_identity_check(5), "trace identity"),
        ));
        // E expansion through the stated first two coefficients
        let n = m.dim();
        let e = m.e_series(2);
        let e0 = &(&n - &RingElement::from_int(2)) * &inv.v2;
        let e1 = &(&(&n - &RingElement::from_int(4)) * &inv.v4)
            .scale(&ExactScalar::from_int(2))
            - &(&(&n - &RingElement::from_int(3)) * &inv.v2.pow(2));
        out.push(CheckResult::from_outcome(
            &format!("potential expansion on {}", m.label()),
            "potential-low-orders",
            expect_true(e.coeff(0) == e0 && e.coeff(1) == e1, "potential expansion"),
        ));
        // scal(0) = 2(n-1) J
        let s0 = m.scal_gr_series(1).coeff(0);
        let expect = &(&n - &RingElement::one()) * &inv.j.scale(&ExactScalar::from_int(2));
        out.push(CheckResult::from_outcome(
            &format!("scalar curvature trace on {}", m.label()),
            "scal-j-normalization",
            expect_true(s0 == expect, "scal(0) = 2(n-1)J"),
        ));
    }
    out.push(CheckResult::from_outcome(
        "einstein normalization translation",
        "family-normalizations",
        expect_true(einstein_normalization_check(6), "normalization"),
    ));
    out.push(CheckResult::from_outcome(
        "einstein potential closed form",
        "einstein-family-potential",
        expect_true(einstein_potential_check(6), "potential"),
    ));
    out.push(CheckResult::from_outcome(
        "product block scalar curvature",
        "block-scaling-sum",
        expect_true(
            {
                let m = ModelGeometry::product_symbolic();
                m.scal_gr_series(5) == m.scal_gr_blocks(5)
            },
            "block route",
        ),
    ));
    out
}

pub fn heat_checks(seed: u64) -> Vec<CheckResult> {
    let mut out = Vec::new();
    for m in catalog(seed) {
        out.push(CheckResult::from_outcome(
            &format!("a0 routes on {}", m.label()),
            "leading-coefficient",
            report_outcome(&a0_series(&m, 6)),
        ));
        out.push(CheckResult::from_outcome(
            &format!("a2 routes on {}", m.label()),
            "subleading-coefficient",
            report_outcome(&a2_series(&m, 6)),
        ));
        out.push(CheckResult::from_outcome(
            &format!("lambda/omega ladder on {}", m.label()),
            "lambda-relation",
            report_outcome(&lambda_omega_coeffs(&m, 6)),
        ));
    }
    for seed2 in 1..=10u64 {
        let m = seeded_conf_flat(seed.wrapping_add(seed2), 3 + (seed2 as usize % 6));
        out.push(CheckResult::from_outcome(
            &format!("lambda ladder conf-flat seed {}", seed2),
            "lambda-relation",
            report_outcome(&lambda_omega_coeffs(&m, 6)),
        ));
    }
    out.push(CheckResult::from_outcome(
        "a4 routes einstein symbolic",
        "fourth-coefficient-family",
        report_outcome(&a4_series_model(&ModelGeometry::einstein_symbolic(), 5).unwrap()),
    ));
    out.push(CheckResult::from_outcome(
        "a4 routes product symbolic",
        "fourth-coefficient-functoriality",
        report_outcome(&a4_series_model(&ModelGeometry::product_symbolic(), 4).unwrap()),
    ));
    out.push(CheckResult::from_outcome(
        "a4 value on the four-sphere",
        "fourth-coefficient-value",
        {
            let r = a4_series_model(&ModelGeometry::sphere(4), 2).unwrap();
            let v = r
                .first_series()
                .unwrap()
                .coeff(0)
                .subst_scalar(Sym::W2, &ExactScalar::zero());
            if r.agree && v.constant_term() == ExactScalar::ratio(-1, 15) {
                Ok(())
            } else {
                Err(format!("got {}", v))
            }
        },
    ));
    out.push(CheckResult::from_outcome(
        "fourth-order taylor identity",
        "a22-product-form",
        expect_true(a22_check(), "polynomial identity"),
    ));
    out.push(CheckResult::from_outcome(
        "a42 einstein symbolic",
        "a42-family-relation",
        report_outcome(&a42_confflat(&ModelGeometry::einstein_symbolic(), true).unwrap()),
    ));
    out.push(CheckResult::from_outcome(
        "a42 product symbolic",
        "a42-functoriality",
        report_outcome(&a42_confflat(&ModelGeometry::product_symbolic(), false).unwrap()),
    ));
    for n in (4..=12i64).step_by(2) {
        out.push(CheckResult::from_outcome(
            &format!("a6 routes sphere n={}", n),
            "sixth-coefficient",
            report_outcome(&a6_multiroute(&ModelGeometry::sphere(n)).unwrap()),
        ));
    }
    for n in [5i64, 7, 9, 11] {
        out.push(CheckResult::from_outcome(
            &format!("a6 routes hyperbolic n={}", n),
            "sixth-coefficient",
            report_outcome(&a6_multiroute(&ModelGeometry::hyperbolic(n)).unwrap()),
        ));
    }
    for p in 3..=9i64 {
        for q in 3..=(12 - p) {
            out.push(CheckResult::from_outcome(
                &format!("a6 routes product p={} q={}", p, q),
                "sixth-coefficient-functoriality",
                report_outcome(
                    &a6_multiroute(&ModelGeometry::product(p, q, ExactScalar::ratio(1, 4)))
                        .unwrap(),
                ),
            ));
        }
    }
    // Q-curvature recursion values
    let n = RingElement::sym(Sym::N);
    let c = RingElement::sym(Sym::C);
    out.push(CheckResult::from_outcome(
        "q recursion low orders",
        "q-recursion",
        {
            let q2 = q_einstein(&n, &c, 1);
            let q4 = q_einstein(&n, &c, 2);
            let e2 = (&n * &c).scale(&ExactScalar::from_int(2));
            let e4 = (&(&(&n * &c.pow(2)) * &(&n - &RingElement::from_int(2)))
                * &(&n + &RingElement::from_int(2)))
                .scale(&ExactScalar::from_int(2));
            expect_true(q2 == e2 && q4 == e4, "low-order values")
        },
    ));
    for nn in [4i64, 6, 8, 10] {
        out.push(CheckResult::from_outcome(
            &format!("critical q value n={}", nn),
            "critical-q-product-form",
            {
                let q = q_einstein(&RingElement::from_int(nn), &c, (nn / 2) as u32);
                let expect = c
                    .scale(&ExactScalar::from_int(4))
                    .pow((nn / 2) as u32)
                    .scale(&ExactScalar::factorial((nn - 1) as u32));
                expect_true(q == expect, "critical value")
            },
        ));
    }
    out.push(CheckResult::from_outcome(
        "holographic q formula N=2",
        "holographic-q",
        expect_true(holographic_q_check(&n, &c, 2).unwrap(), "symbolic N=2"),
    ));
    out.push(CheckResult::from_outcome(
        "holographic q formula N=3 symbolic",
        "holographic-q",
        expect_true(holographic_q_check(&n, &c, 3).unwrap(), "symbolic N=3"),
    ));
    for nn in [8i64, 10, 12] {
        out.push(CheckResult::from_outcome(
            &format!("holographic q formula N=3 n={}", nn),
            "holographic-q",
            expect_true(
                holographic_q_check(&RingElement::from_int(nn), &c, 3).unwrap(),
                "N=3",
            ),
        ));
    }
    out.push(CheckResult::from_outcome(
        "q against low heat coefficients",
        "q-heat-relations",
        expect_true(q_a4_identities(), "identities"),
    ));
    out.push(CheckResult::from_outcome(
        "scaling weights through order 8",
        "rescaling-weights",
        expect_true(scaling_weight_check(4), "homogeneity"),
    ));
    for kind in PvKind::ALL {
        let r = pv_rescaling_check(kind);
        out.push(CheckResult::from_outcome(
            &format!("rescaling identity {}", kind.label()),
            "volume-determinant-rescaling",
            if r.agree {
                Ok(())
            } else {
                Err(format!("{} vs {}", r.lhs, r.rhs))
            },
        ));
    }
    out
}

pub fn sphere_checks() -> Vec<CheckResult> {
    let mut out = Vec::new();
    let mut beta_ok = true;
    for n in 2..=12i64 {
        let t = laplace_sphere_coeffs(n, 3);
        for k in 0..=3usize {
            if let Some(cf) = laplace_closed_form(n, k) {
                if t.coeffs[k] != cf {
                    beta_ok = false;
                }
            }
        }
    }
    out.push(CheckResult::from_outcome(
        "beta route vs closed forms n<=12",
        "beta-combinatorics",
        expect_true(beta_ok, "beta route"),
    ));
    out.push(CheckResult::from_outcome(
        "critical conformal values",
        "critical-values",
        {
            let v2 = conformal_sphere_coeffs(2, 1, Space::Sphere).coeffs[1].clone();
            let v4 = conformal_sphere_coeffs(4, 2, Space::Sphere).coeffs[2].clone();
            let v6 = conformal_sphere_coeffs(6, 3, Space::Sphere).coeffs[3].clone();
            expect_true(
                v2 == ExactScalar::ratio(1, 3)
                    && v4 == ExactScalar::ratio(-1, 15)
                    && v6 == ExactScalar::ratio(5, 63),
                "critical values",
            )
        },
    ));
    for n in [2i64, 4, 6] {
        out.push(CheckResult::from_outcome(
            &format!("euler check n={}", n),
            "euler-characteristic",
            expect_true(euler_check(n), "chi multiple"),
        ));
    }
    out.push(CheckResult::from_outcome(
        "volume-coefficient relations",
        "a-v-relations",
        {
            let v2 = ModelGeometry::sphere(2).volume_series(1).0.coeff(1).constant_term();
            let v4 = ModelGeometry::sphere(4).volume_series(2).0.coeff(2).constant_term();
            let v6 = ModelGeometry::sphere(6).volume_series(3).0.coeff(3).constant_term();
            let a2 = conformal_sphere_coeffs(2, 1, Space::Sphere).coeffs[1].clone();
            let a4 = conformal_sphere_coeffs(4, 2, Space::Sphere).coeffs[2].clone();
            let a6 = conformal_sphere_coeffs(6, 3, Space::Sphere).coeffs[3].clone();
            expect_true(
                a2 == ExactScalar::ratio(-2, 3) * v2
                    && a4 == ExactScalar::ratio(-8, 45) * v4
                    && a6 == ExactScalar::ratio(-16, 63) * v6,
                "a-v relations",
            )
        },
    ));
    out.push(CheckResult::from_outcome(
        "duality involution",
        "sphere-hyperbolic-duality",
        {
            let mut ok = true;
            for n in [5i64, 8, 9, 12] {
                let s = conformal_sphere_coeffs(n, 3, Space::Sphere);
                let h = conformal_sphere_coeffs(n, 3, Space::Hyperbolic);
                for k in 0..=3usize {
                    let sign = if k % 2 == 0 { 1 } else { -1 };
                    if s.coeffs[k] != ExactScalar::from_int(sign) * h.coeffs[k].clone() {
                        ok = false;
                    }
                }
            }
            expect_true(ok, "duality")
        },
    ));
    out.push(CheckResult::from_outcome(
        "two-sphere bernoulli route",
        "bernoulli-coefficients",
        {
            let (_, bs) = beta_b(2);
            let mut ok = bs[0] == s2_bernoulli_b(0);
            let half2 = ExactScalar::ratio(1, 4);
            for k in 0..=3usize {
                let mut acc = ExactScalar::zero();
                for m in 0..=k {
                    acc = acc
                        + half2.pow(m as u32) / ExactScalar::factorial(m as u32)
                            * s2_bernoulli_b(k - m);
                }
                ok = ok && acc == laplace_closed_form(2, k).unwrap();
            }
            expect_true(ok, "bernoulli route")
        },
    ));
    // family consistency at j = 0, 1: the sphere family profiles match the
    // series routes
    for n in [5i64, 6, 7] {
        out.push(CheckResult::from_outcome(
            &format!("family profile match n={}", n),
            "sphere-family-profiles",
            {
                let m = ModelGeometry::sphere(n);
                let quarter = RingElement::ratio(1, 4);
                let a0 = a0_series(&m, 4);
                let prof0 = binomial_power_series(&quarter, &RingElement::from_int(n), 4);
                let a2r = a2_series(&m, 4);
                let a2_val = conformal_closed_form(n, 1).unwrap();
                let prof2 = binomial_power_series(&quarter, &RingElement::from_int(n - 2), 4)
                    .scale(&RingElement::from_scalar(a2_val));
                expect_true(
                    a0.agree
                        && *a0.first_series().unwrap() == prof0
                        && a2r.agree
                        && *a2r.first_series().unwrap() == prof2,
                    "profiles",
                )
            },
        ));
    }
    out
}

pub fn hessian_checks() -> Vec<CheckResult> {
    let mut out = Vec::new();
    let n = RingElement::sym(Sym::N);
    let c = RingElement::sym(Sym::C);
    // kernel at the conformal-Killing eigenvalue for every catalog kind
    out.push(CheckResult::from_outcome(
        "kernel at conformal killing eigenvalue",
        "hessian-kernels",
        {
            let four_nc = (&n * &c).scale(&ExactScalar::from_int(4));
            let mut ok = true;
            for k in 1..=4u32 {
                let f = hessian_form(HessianKind::F2k { k }, &n, &c).unwrap();
                ok = ok && f.evaluate(&four_nc).is_zero();
                let w = hessian_form(HessianKind::Wsub { k }, &n, &c).unwrap();
                ok = ok && w.evaluate(&four_nc).is_zero();
            }
            for (kind, dim) in [
                (HessianKind::Rv, 8),
                (HessianKind::Wcrit, 8),
                (HessianKind::Det2, 2),
                (HessianKind::Det4, 4),
                (HessianKind::Det6, 6),
                (HessianKind::A42, 6),
            ] {
                let nn = RingElement::from_int(dim);
                let f = hessian_form(kind, &nn, &c).unwrap();
                let root = (&nn * &c).scale(&ExactScalar::from_int(4));
                ok = ok && f.evaluate(&root).is_zero() && f.kernel_roots_are_roots();
            }
            expect_true(ok, "kernels")
        },
    ));

    let cpos = ExactScalar::one();
    let cneg = ExactScalar::from_int(-1);
    let num = ExactScalar::from_int;
    // volume-coefficient functionals, both regimes
    out.push(CheckResult::from_outcome(
        "volume functionals extremal pattern",
        "extremal-volume-coefficients",
        {
            let mut ok = true;
            for nn in [5i64, 6, 8, 10] {
                for k in 1..=3u32 {
                    if 2 * k as i64 >= nn {
                        continue;
                    }
                    let form =
                        hessian_form(HessianKind::F2k { k }, &RingElement::from_int(nn), &c)
                            .unwrap();
                    let sign = if k % 2 == 0 { 1 } else { -1 };
                    let twisted = form.scaled(&RingElement::from_int(sign));
                    ok = ok
                        && classify_extremum(
                            &twisted,
                            &obata_strict_spectrum(nn, &cpos, 6),
                            &num(nn),
                            &cpos,
                        ) == Classification::LocalMin
                        && classify_extremum(
                            &twisted,
                            &numeric_sphere_spectrum(nn, &cpos, 6),
                            &num(nn),
                            &cpos,
                        ) == Classification::DegenerateAlongConformalKilling
                        && classify_extremum(
                            &form,
                            &negative_c_sample_spectrum(&cneg, 6),
                            &num(nn),
                            &cneg,
                        ) == Classification::LocalMax;
                }
            }
            expect_true(ok, "sign pattern")
        },
    ));
    out.push(CheckResult::from_outcome(
        "renormalized volume extremal pattern",
        "extremal-renormalized-volume",
        {
            let mut ok = true;
            for nn in [4i64, 6, 8] {
                let form = hessian_form(HessianKind::Rv, &RingElement::from_int(nn), &c).unwrap();
                let sign = if (nn / 2) % 2 == 0 { 1 } else { -1 };
                let twisted = form.scaled(&RingElement::from_int(sign));
                ok = ok
                    && classify_extremum(
                        &twisted,
                        &obata_strict_spectrum(nn, &cpos, 6),
                        &num(nn),
                        &cpos,
                    ) == Classification::LocalMin
                    && classify_extremum(
                        &form,
                        &negative_c_sample_spectrum(&cneg, 6),
                        &num(nn),
                        &cneg,
                    ) == Classification::LocalMax;
            }
            expect_true(ok, "sign pattern")
        },
    ));
    out.push(CheckResult::from_outcome(
        "corrected functionals extremal pattern",
        "extremal-corrected-coefficients",
        {
            let mut ok = true;
            // subcritical, scal > 0
            for (nn, k) in [(6i64, 1u32), (8, 2), (10, 3)] {
                let form =
                    hessian_form(HessianKind::Wsub { k }, &RingElement::from_int(nn), &c).unwrap();
                let sign = if k % 2 == 0 { 1 } else { -1 };
                let twisted = form.scaled(&RingElement::from_int(sign));
                ok = ok
                    && classify_extremum(
                        &twisted,
                        &obata_strict_spectrum(nn, &cpos, 6),
                        &num(nn),
                        &cpos,
                    ) == Classification::LocalMax;
            }
            // supercritical, scal < 0
            for (nn, k) in [(6i64, 3u32), (8, 4)] {
                let form =
                    hessian_form(HessianKind::Wsub { k }, &RingElement::from_int(nn), &c).unwrap();
                ok = ok
                    && classify_extremum(
                        &form,
                        &negative_c_sample_spectrum(&cneg, 8),
                        &num(nn),
                        &cneg,
                    ) == Classification::LocalMin;
            }
            // critical coefficient
            for nn in [6i64, 8, 10] {
                let form =
                    hessian_form(HessianKind::Wcrit, &RingElement::from_int(nn), &c).unwrap();
                let sign = if (nn / 2 - 1) % 2 == 0 { 1 } else { -1 };
                let twisted = form.scaled(&RingElement::from_int(sign));
                ok = ok
                    && classify_extremum(
                        &twisted,
                        &obata_strict_spectrum(nn, &cpos, 6),
                        &num(nn),
                        &cpos,
                    ) == Classification::LocalMax
                    && classify_extremum(
                        &form,
                        &negative_c_sample_spectrum(&cneg, 6),
                        &num(nn),
                        &cneg,
                    ) == Classification::LocalMin;
            }
            expect_true(ok, "sign pattern")
        },
    ));
    out.push(CheckResult::from_outcome(
        "determinant hessians",
        "determinant-extrema",
        {
            let det4 = hessian_form(HessianKind::Det4, &RingElement::from_int(4), &c).unwrap();
            let det6 = hessian_form(HessianKind::Det6, &RingElement::from_int(6), &c).unwrap();
            let det2 = hessian_form(HessianKind::Det2, &RingElement::from_int(2), &c).unwrap();
            let ok = classify_extremum(&det4, &obata_strict_spectrum(4, &cpos, 6), &num(4), &cpos)
                == Classification::LocalMin
                && classify_extremum(
                    &det4,
                    &negative_c_sample_spectrum(&cneg, 20),
                    &num(4),
                    &cneg,
                ) == Classification::Indefinite
                && classify_extremum(&det6, &obata_strict_spectrum(6, &cpos, 6), &num(6), &cpos)
                    == Classification::LocalMax
                && classify_extremum(
                    &det6,
                    &negative_c_sample_spectrum(&cneg, 30),
                    &num(6),
                    &cneg,
                ) == Classification::LocalMax
                && classify_extremum(&det2, &obata_strict_spectrum(2, &cpos, 6), &num(2), &cpos)
                    == Classification::LocalMax
                && classify_extremum(
                    &det2,
                    &negative_c_sample_spectrum(&cneg, 10),
                    &num(2),
                    &cneg,
                ) == Classification::LocalMax;
            expect_true(ok, "determinant classifications")
        },
    ));
    out.push(CheckResult::from_outcome(
        "scale-invariant coefficient hessian",
        "a42-extremum",
        {
            let a42 = hessian_form(HessianKind::A42, &RingElement::from_int(6), &c).unwrap();
            let ok = classify_extremum(
                &a42,
                &numeric_sphere_spectrum(6, &cpos, 6),
                &num(6),
                &cpos,
            ) == Classification::DegenerateAlongConformalKilling
                && classify_extremum(&a42, &obata_strict_spectrum(6, &cpos, 6), &num(6), &cpos)
                    == Classification::LocalMax
                && classify_extremum(
                    &a42,
                    &negative_c_sample_spectrum(&cneg, 30),
                    &num(6),
                    &cneg,
                ) == Classification::LocalMax;
            expect_true(ok, "classification")
        },
    ));
    let var = rvc_model_variation(6);
    out.push(CheckResult::from_outcome(
        "log-derivative variation",
        "first-variation-series",
        expect_true(var.log_v_var && var.scaling_consistency, "series identity"),
    ));
    out.push(CheckResult::from_outcome(
        "generating-function expansion",
        "second-variation-prefactors",
        expect_true(var.second_gf, "prefactors k<=5"),
    ));
    out.push(CheckResult::from_outcome(
        "sphere kernel profile",
        "kernel-profile",
        expect_true(var.kappa0, "profile identity"),
    ));
    out.push(CheckResult::from_outcome(
        "rescaled functional hessians",
        "normalized-hessians",
        expect_true(tilde_f_hessian_check(4), "identity k<=4"),
    ));
    out
}

pub fn jet_checks(params: SuiteParams) -> Vec<CheckResult> {
    let mut out = Vec::new();
    let n_lo = 3usize;
    let n_hi = params.n_cap.clamp(3, 5);
    let seeds: Vec<u64> = (params.seed..params.seed + 5).collect();

    // normal-derivative law and round trips
    out.push(CheckResult::from_outcome(
        "normal derivative law",
        "normal-coordinates",
        {
            let mut ok = true;
            for &s in &seeds {
                for n in n_lo..=n_hi.min(4) {
                    let spec = VarSpec::jets(n, 2);
                    let mut rng = SmallRng::new(s);
                    let r0 = random_curvature(&spec, n, &mut rng);
                    let m = normal_jets_from_curvature(spec, &r0);
                    ok = ok && normal_der_check(&m);
                    let pkg = curvature_package(&m);
                    ok = ok && pkg.r4.at_origin() == r0.at_origin();
                }
            }
            expect_true(ok, "round trips")
        },
    ));
    out.push(CheckResult::from_outcome(
        "normal-form identities",
        "trace-divergence-identities",
        {
            let mut ok = true;
            for &s in &seeds {
                for n in n_lo..=n_hi.min(4) {
                    let spec = VarSpec::jets(n, 2);
                    let mut rng = SmallRng::new(s.wrapping_add(100));
                    let r0 = random_curvature(&spec, n, &mut rng);
                    let m = normal_jets_from_curvature(spec, &r0);
                    let h = random_symmetric_jets(&spec, n, 2, &mut rng);
                    ok = ok && crate::jet::tensor::normal_form_identities_check(&m, &h);
                    let k = random_symmetric_jets(&spec, n, 2, &mut rng);
                    ok = ok && sum2_identity_check(&m, &k);
                }
            }
            expect_true(ok, "identities")
        },
    ));
    out.push(CheckResult::from_outcome(
        "quartic moments",
        "gaussian-moments",
        expect_true(
            gaussian_moment(&[2, 2]) == rat(1, 4)
                && gaussian_moment(&[4]) == rat(3, 4)
                && gaussian_moment(&[2, 2, 2]) == rat(1, 8)
                && gaussian_moment(&[1, 2]) == rat(0, 1),
            "moments",
        ),
    ));
    out.push(CheckResult::from_outcome(
        "double bracket reduction",
        "poisson-reduction",
        {
            let spec = VarSpec::symbols(3, 60);
            let mut rng = SmallRng::new(params.seed.wrapping_add(7));
            let mut ok = true;
            for _ in 0..5 {
                let mut g = XPoly::zero(&spec);
                for i in 0..3 {
                    let xi = XPoly::var(&spec, spec.xi_index(i));
                    g = g.add(&xi.mul(&xi, &spec));
                }
                for _ in 0..3 {
                    let xi_i = XPoly::var(&spec, spec.xi_index(rng.below(3)));
                    let xi_j = XPoly::var(&spec, spec.xi_index(rng.below(3)));
                    let x_k = XPoly::var(&spec, spec.x_index(rng.below(3)));
                    g = g.add(&xi_i.mul(&xi_j, &spec).mul(&x_k, &spec).scale(&rng.small_rational()));
                }
                let h = random_symbol_poly(&spec, 2, 3, 4, &mut rng);
                ok = ok && dpb_check(&g, &h, &spec);
            }
            expect_true(ok, "reduction")
        },
    ));
    // family recursion recoveries
    out.push(CheckResult::from_outcome(
        "family recursion first coefficient",
        "family-first-order",
        {
            let mut ok = true;
            for &s in &seeds {
                let spec = VarSpec::jets(4, 2);
                let mut rng = SmallRng::new(s.wrapping_add(11));
                let r0 = random_curvature(&spec, 4, &mut rng);
                let m = normal_jets_from_curvature(spec, &r0);
                let fg = fg_expand(&m, 1, FgContinuation::GenericOnly);
                let pkg = curvature_package(&m);
                ok = ok
                    && tensors_agree_to_degree(&fg.coeffs[1], &pkg.schouten.neg(), &spec, 0);
            }
            expect_true(ok, "first coefficient")
        },
    ));
    out.push(CheckResult::from_outcome(
        "family recursion conf-flat recovery",
        "family-closed-form",
        {
            let mut ok = true;
            // genuine third-order solve in dimension five
            let spec = VarSpec::jets(5, 4);
            let mut rng = SmallRng::new(params.seed.wrapping_add(13));
            let phi = random_poly(&spec, 5, 2, &mut rng);
            let phi = phi.sub(&XPoly::constant(&spec, phi.constant_term()));
            let m = conf_flat_metric(spec, 5, &phi);
            let fg = fg_expand(&m, 3, FgContinuation::GenericOnly);
            ok = ok && fg.obstruction.is_none() && fg.continued_orders.is_empty();
            let pkg = curvature_package(&m);
            ok = ok
                && tensors_agree_to_degree(
                    &fg.coeffs[1],
                    &pkg.schouten.neg(),
                    &spec,
                    fg.achieved_x_degree[1],
                );
            let n = 5;
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
            ok = ok
                && tensors_agree_to_degree(&fg.coeffs[2], &p2, &spec, fg.achieved_x_degree[2])
                && tensors_agree_to_degree(
                    &fg.coeffs[3],
                    &Tensor::zeros(&spec, n, 2),
                    &spec,
                    fg.achieved_x_degree[3],
                );
            // singular orders in low dimensions validated by back-substitution
            for n in [3usize, 4] {
                let spec = VarSpec::jets(n, 4);
                let mut rng = SmallRng::new(params.seed.wrapping_add(17));
                let phi = random_poly(&spec, n, 2, &mut rng);
                let phi = phi.sub(&XPoly::constant(&spec, phi.constant_term()));
                let m = conf_flat_metric(spec, n, &phi);
                let fg = fg_expand(&m, 3, FgContinuation::ClosedConfFlat);
                ok = ok && fg.obstruction.is_none();
            }
            expect_true(ok, "closed family")
        },
    ));
    out.push(CheckResult::from_outcome(
        "family recursion einstein recovery",
        "family-einstein-form",
        {
            let n = 3;
            let spec = VarSpec::jets(n, 6);
            let cc = rat(1, 3);
            let mut norm2 = XPoly::zero(&spec);
            for i in 0..n {
                let xi = XPoly::<crate::jet::Rat>::var(&spec, i);
                norm2 = norm2.add(&xi.mul(&xi, &spec));
            }
            let base = XPoly::one(&spec).add(&norm2.scale(&cc));
            let factor = base.mul(&base, &spec).inverse_unit(&spec);
            let mut g = Tensor::zeros(&spec, n, 2);
            for i in 0..n {
                g.set(&[i, i], factor.clone());
            }
            let m = JetMetric::new(spec, g);
            let fg = fg_expand(&m, 3, FgContinuation::ClosedEinstein { c: cc.clone() });
            let ok = fg.obstruction.is_none()
                && tensors_agree_to_degree(
                    &fg.coeffs[1],
                    &m.g.scale(&(rat(-2, 1) * cc.clone())),
                    &spec,
                    fg.achieved_x_degree[1],
                )
                && tensors_agree_to_degree(
                    &fg.coeffs[2],
                    &m.g.scale(&(cc.clone() * cc.clone())),
                    &spec,
                    fg.achieved_x_degree[2],
                )
                && tensors_agree_to_degree(
                    &fg.coeffs[3],
                    &Tensor::zeros(&spec, n, 2),
                    &spec,
                    fg.achieved_x_degree[3],
                );
            expect_true(ok, "einstein family")
        },
    ));
    out.push(CheckResult::from_outcome(
        "family divergence identity",
        "divergence-trace-forms",
        {
            let mut ok = true;
            for &s in &seeds {
                let spec = VarSpec::jets(4, 4);
                let mut rng = SmallRng::new(s.wrapping_add(23));
                let phi = random_poly(&spec, 4, 3, &mut rng);
                let phi = phi.sub(&XPoly::constant(&spec, phi.constant_term()));
                let m = conf_flat_metric(spec, 4, &phi);
                ok = ok && cotton_vanishes(&m) && d_div_check(&m, params.order_cap.max(2));
            }
            expect_true(ok, "identity")
        },
    ));
    out.push(CheckResult::from_outcome(
        "holographic gaussian identity",
        "double-bracket-expectation",
        {
            let spec = VarSpec::jets(3, 4);
            let x0 = XPoly::<crate::jet::Rat>::var(&spec, 0);
            let x1 = XPoly::<crate::jet::Rat>::var(&spec, 1);
            let phi = x0.mul(&x0, &spec).add(&x0.mul(&x1, &spec).scale(&rat(1, 2)));
            let m = conf_flat_metric(spec, 3, &phi);
            let rep = gaussian_bracket_check(&m, params.order_cap.min(1).max(1));
            let ok = rep.identity
                && rep.gaussian_convention
                && rep.eval_normal
                && gaussian_bracket_einstein_trivial(3, &rat(1, 2), 1);
            expect_true(ok, "identity")
        },
    ));
    out.push(CheckResult::from_outcome(
        "parametrix second coefficient",
        "parametrix-a2",
        {
            let mut rng = SmallRng::new(params.seed.wrapping_add(29));
            let mut ok = true;
            for trial in 0..10 {
                let n = if trial % 2 == 0 { 3 } else { 4 };
                let spec = VarSpec::jets(n, 2);
                let r0 = random_curvature(&spec, n, &mut rng);
                let m = normal_jets_from_curvature(spec, &r0);
                let mut eta = random_poly(&spec, n, 2, &mut rng);
                eta = eta.sub(&XPoly::constant(&spec, eta.constant_term()));
                let b = random_poly(&spec, n, 2, &mut rng);
                ok = ok && parametrix_a2(&m, &eta, &b) == a2_closed_form(&m, &eta, &b);
            }
            expect_true(ok, "ten random instances")
        },
    ));
    out.push(CheckResult::from_outcome(
        "gradient identity conf-flat",
        "trace-free-ricci-gradients",
        {
            let mut ok = true;
            for &s in &seeds[..3] {
                let spec = VarSpec::jets(5, 3);
                let mut rng = SmallRng::new(s.wrapping_add(37));
                let phi = random_poly(&spec, 5, 3, &mut rng);
                let phi = phi.sub(&XPoly::constant(&spec, phi.constant_term()));
                let m = conf_flat_metric(spec, 5, &phi);
                ok = ok && ricci_gradient_check(&m).unwrap_or(false);
            }
            expect_true(ok, "identity")
        },
    ));
    out.push(CheckResult::from_outcome(
        "weyl contraction identity",
        "weyl-gradient-contraction",
        {
            let mut ok = true;
            for &s in &seeds[..3] {
                let m = random_perturbed_metric(5, 4, s.wrapping_add(41));
                ok = ok && div_w_check(&m) && weyl_identity_check(&m);
            }
            expect_true(ok, "identity at n = 5")
        },
    ));
    out
}

/// Random metric delta plus sparse terms of degree 2..=deg; used by the
/// Weyl-identity trials.
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
