//! Heat kernel coefficients a_0(r), a_2(r), a_4(r), a_6 and Q-curvatures on
//! model geometries, each by independent routes, plus the Q-recursion,
//! holographic-formula checks at Einstein metrics and the Polyakov-volume
//! rescaling identities.

use crate::models::ModelGeometry;
use crate::ring::{RingElement, Sym};
use crate::scalar::ExactScalar;
use crate::series::{
    binomial_power_series, radial_second_derivative, series_inverse, series_mul, series_sqrt,
    wdot_squared, EvenSeries,
};

/// One route of a multi-route computation.
#[derive(Clone, Debug)]
pub enum RouteValue {
    Series(EvenSeries),
    Scalar(RingElement),
}

impl RouteValue {
    fn matches(&self, other: &RouteValue) -> Result<(), String> {
        match (self, other) {
            (RouteValue::Series(a), RouteValue::Series(b)) => {
                let order = a.order().min(b.order());
                for k in 0..=order {
                    if a.coeff(k) != b.coeff(k) {
                        return Err(format!("rho^{}: {} vs {}", k, a.coeff(k), b.coeff(k)));
                    }
                }
                Ok(())
            }
            (RouteValue::Scalar(a), RouteValue::Scalar(b)) => {
                if a == b {
                    Ok(())
                } else {
                    Err(format!("{} vs {}", a, b))
                }
            }
            _ => Err("route kinds differ".into()),
        }
    }
}

/// A quantity computed along several independent routes; `agree` records
/// whether every route matches the first to the common truncation order.
#[derive(Clone, Debug)]
pub struct CoeffReport {
    pub name: String,
    pub routes: Vec<(String, RouteValue)>,
    pub agree: bool,
    pub discrepancy: Option<String>,
}

impl CoeffReport {
    pub fn new(name: &str, routes: Vec<(String, RouteValue)>) -> Self {
        let mut agree = true;
        let mut discrepancy = None;
        for (label, value) in routes.iter().skip(1) {
            if let Err(d) = routes[0].1.matches(value) {
                agree = false;
                discrepancy = Some(format!("{} vs {}: {}", routes[0].0, label, d));
                break;
            }
        }
        CoeffReport {
            name: name.into(),
            routes,
            agree,
            discrepancy,
        }
    }

    pub fn first_series(&self) -> Option<&EvenSeries> {
        self.routes.iter().find_map(|(_, v)| match v {
            RouteValue::Series(s) => Some(s),
            RouteValue::Scalar(_) => None,
        })
    }

    pub fn first_scalar(&self) -> Option<&RingElement> {
        self.routes.iter().find_map(|(_, v)| match v {
            RouteValue::Scalar(s) => Some(s),
            RouteValue::Series(_) => None,
        })
    }
}

/// a_0(r): the volume series route against the Gaussian-integral route
/// sqrt(det g(r))/sqrt(det g) rebuilt from the inverse metric entries.
pub fn a0_series(m: &ModelGeometry, order: usize) -> CoeffReport {
    let (v, _) = m.volume_series(order);
    // det g(r)^{-1} = prod over blocks of ((1 - e rho/2)^{-2})^{mult}
    let mut det_inv = EvenSeries::one(order);
    for (e, mult) in m.schouten_blocks() {
        let exp = mult.scale(&ExactScalar::from_int(-2));
        let factor = binomial_power_series(&e.scale(&ExactScalar::ratio(1, 2)), &exp, order);
        det_inv = series_mul(&det_inv, &factor);
    }
    let gaussian = series_sqrt(&series_inverse(&det_inv));
    CoeffReport::new(
        &format!("a0(r) on {}", m.label()),
        vec![
            ("volume".into(), RouteValue::Series(v)),
            ("gaussian".into(), RouteValue::Series(gaussian)),
        ],
    )
}

/// Divergence contributions of the quoted formulas vanish identically on
/// the curvature-homogeneous catalog; each dropped term is represented by
/// this marker so the formulas keep their full shape.
pub fn dropped_divergence(_label: &str) -> RingElement {
    RingElement::zero()
}

/// The correction-term series (dw/dr)^2 of a model.
pub fn wdot_omega_series(m: &ModelGeometry, order: usize) -> EvenSeries {
    let (_, w) = m.volume_series(order);
    wdot_squared(&w)
}

/// The corrected coefficient Lambda(r) = -(1/3)(v'' - (n/2-1) v'/r).
pub fn lambda_series(m: &ModelGeometry, order: usize) -> EvenSeries {
    let n = m.dim();
    let (v, _) = m.volume_series(order + 1);
    let a = &n.scale(&ExactScalar::ratio(1, 2)) - &RingElement::one();
    radial_second_derivative(&v, &a).scale(&RingElement::ratio(-1, 3))
}

/// a_2(r) by two routes: the closed v/w formula and the Gilkey form
/// (scal(g(r))/6 + E(r)) v(r).
pub fn a2_series(m: &ModelGeometry, order: usize) -> CoeffReport {
    let (v, w) = m.volume_series(order + 1);
    let route1 = lambda_series(m, order).add(&wdot_squared(&w).truncate(order));
    let scal = m.scal_gr_series(order);
    let e = m.e_series(order);
    let inner = scal.scale(&RingElement::ratio(1, 6)).add(&e);
    let route2 = series_mul(&inner, &v.truncate(order));
    CoeffReport::new(
        &format!("a2(r) on {}", m.label()),
        vec![
            ("v-w-closed".into(), RouteValue::Series(route1)),
            ("scal-E-gilkey".into(), RouteValue::Series(route2)),
        ],
    )
}

/// The correction-term polynomials omega_{2k} in the renormalized volume
/// coefficients, for k <= 4.
pub fn omega_polynomial(k: usize, v: &EvenSeries) -> RingElement {
    let v2 = v.coeff(1);
    let v4 = v.coeff(2);
    let v6 = v.coeff(3);
    let v8 = v.coeff(4);
    match k {
        0 => RingElement::zero(),
        1 => v2.pow(2),
        2 => &(&v2 * &v4).scale(&ExactScalar::from_int(4)) - &v2.pow(3),
        3 => {
            let t1 = (&v2 * &v6).scale(&ExactScalar::from_int(6));
            let t2 = v4.pow(2).scale(&ExactScalar::from_int(4));
            let t3 = (&v4 * &v2.pow(2)).scale(&ExactScalar::from_int(-5));
            &(&(&t1 + &t2) + &t3) + &v2.pow(4)
        }
        4 => {
            let t1 = (&v2 * &v8).scale(&ExactScalar::from_int(8));
            let t2 = (&v4 * &v6).scale(&ExactScalar::from_int(12));
            let t3 = (&v2 * &v4.pow(2)).scale(&ExactScalar::from_int(-8));
            let t4 = (&v6 * &v2.pow(2)).scale(&ExactScalar::from_int(-7));
            let t5 = (&v4 * &v2.pow(3)).scale(&ExactScalar::from_int(6));
            &(&(&(&(&t1 + &t2) + &t3) + &t4) + &t5) - &v2.pow(5)
        }
        _ => panic!("omega table covers k <= 4"),
    }
}

/// Lambda/omega ladder: Lambda_{2k-2} = (1/3) k (n-4k) v_{2k} for k <= kmax,
/// and omega_{2k} against the correction-term polynomials for k <= 4.
pub fn lambda_omega_coeffs(m: &ModelGeometry, kmax: usize) -> CoeffReport {
    let n = m.dim();
    let (v, w) = m.volume_series(kmax.max(4) + 1);
    let lambda = lambda_series(m, kmax);
    let mut ladder = vec![RingElement::zero(); kmax];
    for (k, slot) in ladder.iter_mut().enumerate() {
        let kk = k + 1;
        let factor = (&n - &RingElement::from_int(4 * kk as i64))
            .scale(&ExactScalar::ratio(kk as i64, 3));
        *slot = &factor * &v.coeff(kk);
    }
    let ladder_series = EvenSeries::from_coeffs(ladder);
    let omega = wdot_squared(&w).truncate(4);
    let omega_table =
        EvenSeries::from_coeffs((0..=4).map(|k| omega_polynomial(k, &v)).collect());
    let lambda_report = CoeffReport::new(
        "lambda",
        vec![
            ("lambda-series".into(), RouteValue::Series(lambda.truncate(kmax - 1))),
            ("lambda-ladder".into(), RouteValue::Series(ladder_series)),
        ],
    );
    let omega_report = CoeffReport::new(
        "omega",
        vec![
            ("omega-series".into(), RouteValue::Series(omega)),
            ("omega-table".into(), RouteValue::Series(omega_table)),
        ],
    );
    let agree = lambda_report.agree && omega_report.agree;
    let discrepancy = lambda_report
        .discrepancy
        .or(omega_report.discrepancy);
    let mut routes = lambda_report.routes;
    routes.extend(omega_report.routes);
    CoeffReport {
        name: format!("lambda/omega on {}", m.label()),
        routes,
        agree,
        discrepancy,
    }
}

/// Block curvature invariants of a constant-curvature Einstein factor of
/// dimension d and normalization c: (|R|^2, |Ric|^2, scal).
fn block_invariants(d: &RingElement, c: &RingElement) -> (RingElement, RingElement, RingElement) {
    let d1 = &(d * d) - d; // d(d-1)
    let r2 = (&d1 * &c.pow(2)).scale(&ExactScalar::from_int(32));
    let ric2 =
        (&(d * &(d - &RingElement::one()).pow(2)) * &c.pow(2)).scale(&ExactScalar::from_int(16));
    let scal = (&d1 * c).scale(&ExactScalar::from_int(4));
    (r2, ric2, scal)
}

/// Conformal-Laplacian heat coefficient of a constant-curvature block,
/// symbolic in the dimension and rescaled to Einstein normalization c:
/// (4c)^k a_{2k}(round sphere of dimension d).
pub fn conformal_block_coeff(d: &RingElement, c: &RingElement, k: usize) -> RingElement {
    let unit = match k {
        0 => RingElement::one(),
        1 => (d * &(d - &RingElement::from_int(4))).scale(&ExactScalar::ratio(-1, 12)),
        2 => {
            let poly = &(&(d * d).scale(&ExactScalar::from_int(5))
                - &d.scale(&ExactScalar::from_int(18)))
                + &RingElement::from_int(4);
            (&(d * &(d - &RingElement::from_int(6))) * &poly).scale(&ExactScalar::ratio(1, 1440))
        }
        3 => {
            let d2 = d * d;
            let poly = &(&(&(&d2.pow(2).scale(&ExactScalar::from_int(35))
                - &(&d2 * d).scale(&ExactScalar::from_int(308)))
                + &d2.scale(&ExactScalar::from_int(688)))
                - &d.scale(&ExactScalar::from_int(184)))
                - &RingElement::from_int(96);
            (&(d * &(d - &RingElement::from_int(8))) * &poly)
                .scale(&ExactScalar::ratio(-1, 362880))
        }
        _ => panic!("conformal block coefficients cover k <= 3"),
    };
    &c.scale(&ExactScalar::from_int(4)).pow(k as u32) * &unit
}

/// a_4(r) on Einstein or Product models: the Gilkey assembly from block
/// scaling laws against the Einstein family law (1-c rho)^{n-4} a_4 or the
/// three-term product functoriality.
pub fn a4_series_model(m: &ModelGeometry, order: usize) -> Result<CoeffReport, String> {
    let (v, _) = m.volume_series(order);
    let e = m.e_series(order);

    // Gilkey route: 360 a_4(r) = (2|R(r)|^2 - 2|Ric(r)|^2 + 5 scal(r)^2
    //                             + 60 scal(r) E(r) + 180 E(r)^2) v(r);
    // derivative terms vanish on homogeneous data.
    let mut r2 = EvenSeries::zero(order);
    let mut ric2 = EvenSeries::zero(order);
    let mut scal = EvenSeries::zero(order);
    for (eigen, mult) in m.schouten_blocks() {
        let cb = eigen.scale(&ExactScalar::ratio(1, 2));
        let (br2, bric2, bscal) = block_invariants(&mult, &cb);
        let f4 = binomial_power_series(&cb, &RingElement::from_int(-4), order);
        let f2 = binomial_power_series(&cb, &RingElement::from_int(-2), order);
        r2 = r2.add(&f4.scale(&br2));
        ric2 = ric2.add(&f4.scale(&bric2));
        scal = scal.add(&f2.scale(&bscal));
    }
    if let ModelGeometry::Einstein { .. } = m {
        // allow a Weyl contribution, kept symbolic: |R|^2 = |W|^2 + 32 n(n-1) c^2
        let w2 = RingElement::sym(Sym::W2);
        let cb = m.schouten_blocks()[0].0.scale(&ExactScalar::ratio(1, 2));
        let f4 = binomial_power_series(&cb, &RingElement::from_int(-4), order);
        r2 = r2.add(&f4.scale(&w2));
    }
    let mut gilkey = r2.scale(&RingElement::from_int(2));
    gilkey = gilkey.sub(&ric2.scale(&RingElement::from_int(2)));
    gilkey = gilkey.add(&series_mul(&scal, &scal).scale(&RingElement::from_int(5)));
    gilkey = gilkey.add(&series_mul(&scal, &e).scale(&RingElement::from_int(60)));
    gilkey = gilkey.add(&series_mul(&e, &e).scale(&RingElement::from_int(180)));
    let gilkey = series_mul(&gilkey, &v.truncate(order)).scale(&RingElement::ratio(1, 360));

    let other = match m {
        ModelGeometry::Einstein { n: nn, c } => {
            // family law: a_4(r) = (1-c rho)^{n-4} a_4, with a_4 from the
            // conformal-Laplacian display in (J, |P|^2, |W|^2)
            let j = (nn * c).scale(&ExactScalar::from_int(2));
            let p2 = (nn * &c.pow(2)).scale(&ExactScalar::from_int(4));
            let (_, a4) =
                cl_low_coeffs(nn, &j, &p2, &RingElement::zero(), &RingElement::sym(Sym::W2));
            let profile = binomial_power_series(c, &(nn - &RingElement::from_int(4)), order);
            ("einstein-family", profile.scale(&a4))
        }
        ModelGeometry::Product { p, q, lam } => {
            // a_4(r) = A^{p-4} B^q a_4(1) + A^{p-2} B^{q-2} a_2(1) a_2(2)
            //          + A^p B^{q-4} a_4(2), A = (1 - lam rho), B = (1 + lam rho)
            let neg = -lam;
            let a4_1 = conformal_block_coeff(p, lam, 2);
            let a4_2 = conformal_block_coeff(q, &neg, 2);
            let a2_1 = conformal_block_coeff(p, lam, 1);
            let a2_2 = conformal_block_coeff(q, &neg, 1);
            let term1 = series_mul(
                &binomial_power_series(lam, &(p - &RingElement::from_int(4)), order),
                &binomial_power_series(&neg, q, order),
            )
            .scale(&a4_1);
            let term2 = series_mul(
                &binomial_power_series(lam, &(p - &RingElement::from_int(2)), order),
                &binomial_power_series(&neg, &(q - &RingElement::from_int(2)), order),
            )
            .scale(&(&a2_1 * &a2_2));
            let term3 = series_mul(
                &binomial_power_series(lam, p, order),
                &binomial_power_series(&neg, &(q - &RingElement::from_int(4)), order),
            )
            .scale(&a4_2);
            ("functoriality", term1.add(&term2).add(&term3))
        }
        ModelGeometry::ConfFlatDiagonal { .. } => {
            return Err("a4 routes need an Einstein or Product model".into())
        }
    };
    Ok(CoeffReport::new(
        &format!("a4(r) on {}", m.label()),
        vec![
            ("gilkey-blocks".into(), RouteValue::Series(gilkey)),
            (other.0.into(), RouteValue::Series(other.1)),
        ],
    ))
}

/// a_2 and a_4 of the conformal Laplacian from homogeneous data, each by the
/// curvature form and the renormalized-volume form; the two are asserted
/// equal and the common values returned.
pub fn cl_low_coeffs(
    n: &RingElement,
    j: &RingElement,
    p2: &RingElement,
    _tr_p3: &RingElement,
    w2: &RingElement,
) -> (RingElement, RingElement) {
    let n4 = n - &RingElement::from_int(4);
    let n6 = n - &RingElement::from_int(6);
    let n2 = n - &RingElement::from_int(2);
    // curvature form
    let a2 = (&n4 * j).scale(&ExactScalar::ratio(-1, 6));
    let inner = &(&(&n2 * p2).scale(&ExactScalar::from_int(2))
        - &(&(&n.scale(&ExactScalar::from_int(5)) - &RingElement::from_int(16)) * &j.pow(2)))
        - &dropped_divergence("6 lap J").scale(&ExactScalar::from_int(6));
    let a4 =
        (&-&(&n6 * &inner) + &w2.scale(&ExactScalar::from_int(2))).scale(&ExactScalar::ratio(1, 360));
    // renormalized-volume form
    let v2 = j.scale(&ExactScalar::ratio(-1, 2));
    let v4 = (&j.pow(2) - p2).scale(&ExactScalar::ratio(1, 8));
    let a2_v = (&n4 * &v2).scale(&ExactScalar::ratio(1, 3));
    let inner_v = &(&(&n2 * &v4).scale(&ExactScalar::from_int(8))
        + &(&n4 * &v2.pow(2)).scale(&ExactScalar::from_int(6)))
        - &dropped_divergence("6 lap v2").scale(&ExactScalar::from_int(6));
    let a4_v = (&(&n6 * &inner_v) + w2).scale(&ExactScalar::ratio(1, 180));
    assert_eq!(a2, a2_v, "a2 forms disagree");
    assert_eq!(a4, a4_v, "a4 forms disagree");
    (a2, a4)
}

/// The coefficient of rho in a_2(r): the closed fourth-order invariant
/// (n-5)/12 J^2 - (n-8)/12 |P|^2 against the product functoriality route,
/// plus the variational-coefficient relation 2(a+b) + (n-4)c = 0 for the
/// relevant invariant triples.
pub fn a22_check() -> bool {
    let n = RingElement::sym(Sym::N);
    let p = RingElement::sym(Sym::P);
    let lam = RingElement::sym(Sym::Lam);

    // product invariants with q = n - p
    let q = &n - &p;
    let j = (&lam * &(&p - &q)).scale(&ExactScalar::from_int(2));
    let p2 = (&lam.pow(2) * &n).scale(&ExactScalar::from_int(4));
    let a22 = &(&(&n - &RingElement::from_int(5)) * &j.pow(2)).scale(&ExactScalar::ratio(1, 12))
        - &(&(&n - &RingElement::from_int(8)) * &p2).scale(&ExactScalar::ratio(1, 12));

    // rho-coefficient of the a_2(r) routes on the symbolic product
    let m = ModelGeometry::Product {
        p: p.clone(),
        q: q.clone(),
        lam: lam.clone(),
    };
    let a2 = a2_series(&m, 2);
    if !a2.agree {
        return false;
    }
    if a22 != a2.first_series().unwrap().coeff(1) {
        return false;
    }

    // displayed cubic: (1/3) lambda^2 ((n^3-6n^2+8n) - p(4n-20)n + p^2(4n-20))
    let n2 = &n * &n;
    let four_n20 = &n.scale(&ExactScalar::from_int(4)) - &RingElement::from_int(20);
    let cubic = &(&(&(&n2 * &n) - &n2.scale(&ExactScalar::from_int(6)))
        + &n.scale(&ExactScalar::from_int(8)))
        - &(&(&p * &n) * &four_n20);
    let cubic = &cubic + &(&p.pow(2) * &four_n20);
    let cubic = (&cubic * &lam.pow(2)).scale(&ExactScalar::ratio(1, 3));
    if a22 != cubic {
        return false;
    }

    // Einstein specialization via the family law: a_{(2,2)} = -c(n-2) a_2
    let c = RingElement::sym(Sym::C);
    let j_e = (&n * &c).scale(&ExactScalar::from_int(2));
    let p2_e = (&n * &c.pow(2)).scale(&ExactScalar::from_int(4));
    let a22_e = &(&(&n - &RingElement::from_int(5)) * &j_e.pow(2)).scale(&ExactScalar::ratio(1, 12))
        - &(&(&n - &RingElement::from_int(8)) * &p2_e).scale(&ExactScalar::ratio(1, 12));
    let a2_e = (&(&n - &RingElement::from_int(4)) * &j_e).scale(&ExactScalar::ratio(-1, 6));
    let family = -&(&(&c * &(&n - &RingElement::from_int(2))) * &a2_e);
    if a22_e != family {
        return false;
    }

    // variational triples (a, b, c) with 2(a+b) + (n-4) c = 0:
    // Lambda_2 = a_{(2,2)} - v_2^2, 8 v_4 and Q_4
    let rel_inv = |a: RingElement, b: RingElement, cc: RingElement| -> bool {
        let lhs = &(&a + &b).scale(&ExactScalar::from_int(2))
            + &(&(&n - &RingElement::from_int(4)) * &cc);
        lhs.is_zero()
    };
    let n8_12 = (&n - &RingElement::from_int(8)).scale(&ExactScalar::ratio(1, 12));
    if !rel_inv(n8_12.clone(), -&n8_12, RingElement::zero()) {
        return false;
    }
    if !rel_inv(
        RingElement::one(),
        RingElement::from_int(-1),
        RingElement::zero(),
    ) {
        return false;
    }
    rel_inv(
        n.scale(&ExactScalar::ratio(1, 2)),
        RingElement::from_int(-2),
        RingElement::from_int(-1),
    )
}

/// a_{(4,2)} on conformally flat homogeneous data: the closed cubic in the
/// renormalized volume coefficients, cross-checked against the Einstein
/// family law and the product functoriality route.
pub fn a42_confflat(m: &ModelGeometry, full: bool) -> Result<CoeffReport, String> {
    let n = m.dim();
    let inv = m.volume_invariants();
    let n4 = &n - &RingElement::from_int(4);
    let n6 = &n - &RingElement::from_int(6);
    // 360 a_{(4,2)} = 48(n-4)(n-6) v6 + 48(n-4)(n-12) v2 v4 - 12(n-4)(n-16) v2^3
    let t1 = (&(&n4 * &n6) * &inv.v6).scale(&ExactScalar::from_int(48));
    let t2 = (&(&n4 * &(&n - &RingElement::from_int(12))) * &(&inv.v2 * &inv.v4))
        .scale(&ExactScalar::from_int(48));
    let t3 = (&(&n4 * &(&n - &RingElement::from_int(16))) * &inv.v2.pow(3))
        .scale(&ExactScalar::from_int(-12));
    let divs = &(&dropped_divergence("24(n-12) lap v4")
        + &dropped_divergence("-6(n-16) lap v2^2"))
        + &dropped_divergence("-12(n-6) div(P d v2)");
    let mut a42 = (&(&(&t1 + &t2) + &t3) + &divs).scale(&ExactScalar::ratio(1, 360));

    let mut routes = Vec::new();
    match m {
        ModelGeometry::Einstein { n: nn, c } => {
            if full {
                // Weyl extension at Einstein metrics: extra -2c(n-4)|W|^2/360
                let extra = (&(c * &n4) * &RingElement::sym(Sym::W2))
                    .scale(&ExactScalar::ratio(-2, 360));
                a42 = &a42 + &extra;
            }
            routes.push(("volume-cubic".into(), RouteValue::Scalar(a42.clone())));
            // family law: a_{(4,2)} = -c(n-4) a_4
            let j = (nn * c).scale(&ExactScalar::from_int(2));
            let p2 = (nn * &c.pow(2)).scale(&ExactScalar::from_int(4));
            let w2 = if full {
                RingElement::sym(Sym::W2)
            } else {
                RingElement::zero()
            };
            let (_, a4) = cl_low_coeffs(nn, &j, &p2, &RingElement::zero(), &w2);
            let family = -&(&(c * &n4) * &a4);
            routes.push(("einstein-family".into(), RouteValue::Scalar(family)));
        }
        ModelGeometry::Product { .. } => {
            routes.push(("volume-cubic".into(), RouteValue::Scalar(a42.clone())));
            let a4 = a4_series_model(m, 2)?;
            let func = a4
                .routes
                .iter()
                .find(|(name, _)| name == "functoriality")
                .and_then(|(_, v)| match v {
                    RouteValue::Series(s) => Some(s.coeff(1)),
                    _ => None,
                })
                .ok_or_else(|| "no functoriality route".to_string())?;
            routes.push(("functoriality-rho".into(), RouteValue::Scalar(func)));
        }
        ModelGeometry::ConfFlatDiagonal { .. } => {
            routes.push(("volume-cubic".into(), RouteValue::Scalar(a42.clone())));
        }
    }
    Ok(CoeffReport::new(&format!("a42 on {}", m.label()), routes))
}

fn require_numeric(x: &RingElement, what: &str) -> Result<ExactScalar, String> {
    if x.is_constant() {
        Ok(x.constant_term())
    } else {
        Err(format!("{} must be numeric", what))
    }
}

fn as_i64(x: &ExactScalar) -> i64 {
    use num_traits::ToPrimitive;
    let r = x.rational();
    assert!(r.is_integer(), "expected an integer, got {}", x);
    r.to_integer().to_i64().expect("dimension out of range")
}

/// a_6 on conformally flat homogeneous data by several independent routes:
/// the cubic curvature form, the renormalized-volume form, the tabulated
/// trace-free-Ricci basis, product functoriality and (for Einstein models)
/// the rescaled sphere closed form. All routes must agree exactly.
pub fn a6_multiroute(m: &ModelGeometry) -> Result<CoeffReport, String> {
    let n = as_i64(&require_numeric(&m.dim(), "dimension")?);
    let inv = m.volume_invariants();
    let j = require_numeric(&inv.j, "J")?;
    let p2 = require_numeric(&inv.p_norm2, "|P|^2")?;
    let p3 = require_numeric(&inv.p_tr3, "tr P^3")?;
    let v2 = require_numeric(&inv.v2, "v2")?;
    let v4 = require_numeric(&inv.v4, "v4")?;
    let v6 = require_numeric(&inv.v6, "v6")?;
    let ni = ExactScalar::from_int;
    let seven_fact = ExactScalar::factorial(7);

    // route 1: cubic curvature form; |dJ|^2 = 0 on homogeneous data
    let b1 = {
        let q3 = ni(35 * n * n - 266 * n + 456);
        let q2 = ni(7 * n - 30) * ni(n - 1);
        let q1 = ni(5 * n * n - 2 * n - 48);
        let grad_j2 = dropped_divergence("3(n-6) |dJ|^2").constant_term();
        let sum = -(q3 * j.pow(3)) / ni(9)
            + ExactScalar::ratio(2, 3) * q2 * j.clone() * p2.clone()
            - ExactScalar::ratio(2, 9) * q1 * p3.clone()
            - ni(3 * (n - 6)) * grad_j2;
        ni(n - 8) * sum / seven_fact.clone()
    };

    // route 2: renormalized-volume form; |d v2|^2 = 0 on homogeneous data
    let b2 = {
        let grad_v2 = dropped_divergence("(9/2) |d v2|^2").constant_term();
        let lead = ni(10 * n * n - 4 * n - 96) * v6.clone();
        let tail = ni(n - 6)
            * (ni(18 * (n - 2)) * v2.clone() * v4.clone() + ni(n - 10) * v2.pow(3)
                - ExactScalar::ratio(9, 2) * grad_v2);
        ni(n - 8) * ExactScalar::ratio(8, 3) * (lead + tail) / seven_fact.clone()
    };

    // route 3: tabulated trace-free-Ricci basis; only the underived
    // invariants survive on homogeneous data
    let b3 = {
        let scal = ni(2 * (n - 1)) * j.clone();
        let bnorm2 = ni((n - 2) * (n - 2)) * (p2.clone() - j.pow(2) / ni(n));
        let btr3 = ni(n - 2).pow(3)
            * (p3.clone() - ni(3) * j.clone() * p2.clone() / ni(n)
                + ni(2) * j.pow(3) / ni(n * n));
        let n2 = n * n;
        let c10 = -(ni(n - 8) * ni(35 * n2 * n2 - 308 * n2 * n + 688 * n2 - 184 * n - 96))
            / (ni(72) * ni(n2) * ni(n - 1).pow(3));
        let c11 = ni(n - 8) * ni(7 * n2 * n - 17 * n2 - 2 * n + 24)
            / (ni(3 * n) * ni(n - 1).pow(2) * ni(n - 2));
        let c13 = ni(4) * ni(n - 8) * ni(11 * n2 * n - 28 * n2 + 32 * n - 24)
            / (ni(9) * ni(n - 1) * ni(n - 2).pow(3));
        (c10 * scal.pow(3) + c11 * scal * bnorm2 + c13 * btr3) / seven_fact.clone()
    };

    // Realizability: closed homogeneous conformally flat structures satisfy
    // the integral constraint n tr(P^3) = J |P|^2 (partial integration of
    // |grad P|^2 with vanishing Cotton tensor). The trace-free-Ricci table
    // and the cubic curvature form are formal extensions that differ off
    // that surface by an exactly known multiple of the defect; the relation
    // is asserted always, and the table route joins the comparison exactly
    // on realizable data.
    let defect = ni(n) * p3.clone() - j.clone() * p2.clone();
    let kappa = ni(2 * (n - 8)) * ni(3 * n - 1) * ni(n - 2)
        / (ni(n - 1) * seven_fact.clone());
    if b3.clone() - b1.clone() != kappa * defect.clone() {
        return Ok(CoeffReport {
            name: format!("a6 on {}", m.label()),
            routes: vec![
                ("curvature-cubic".into(), RouteValue::Scalar(RingElement::from_scalar(b1))),
                ("ricci-table".into(), RouteValue::Scalar(RingElement::from_scalar(b3))),
            ],
            agree: false,
            discrepancy: Some("table defect relation violated".into()),
        });
    }

    let mut routes = vec![
        (
            "curvature-cubic".to_string(),
            RouteValue::Scalar(RingElement::from_scalar(b1)),
        ),
        (
            "volume-form".to_string(),
            RouteValue::Scalar(RingElement::from_scalar(b2)),
        ),
    ];
    if defect.is_zero() {
        routes.push((
            "ricci-table".to_string(),
            RouteValue::Scalar(RingElement::from_scalar(b3)),
        ));
    }

    match m {
        ModelGeometry::Product { p, q, lam } => {
            let pd = RingElement::from_scalar(require_numeric(p, "p")?);
            let qd = RingElement::from_scalar(require_numeric(q, "q")?);
            let lv = RingElement::from_scalar(require_numeric(lam, "lambda")?);
            let neg = -&lv;
            let func = &(&conformal_block_coeff(&pd, &lv, 3)
                + &(&conformal_block_coeff(&pd, &lv, 2) * &conformal_block_coeff(&qd, &neg, 1)))
                + &(&(&conformal_block_coeff(&pd, &lv, 1) * &conformal_block_coeff(&qd, &neg, 2))
                    + &conformal_block_coeff(&qd, &neg, 3));
            routes.push(("functoriality".into(), RouteValue::Scalar(func)));
        }
        ModelGeometry::Einstein { n: nn, c } => {
            let cv = RingElement::from_scalar(require_numeric(c, "c")?);
            let closed = conformal_block_coeff(nn, &cv, 3);
            routes.push(("sphere-closed".into(), RouteValue::Scalar(closed)));
        }
        ModelGeometry::ConfFlatDiagonal { .. } => {}
    }
    Ok(CoeffReport::new(&format!("a6 on {}", m.label()), routes))
}

/// Q_{2N} at an Einstein metric via the recursion over compositions; all
/// operators act on constants through P_{2k}(1) = (n/2 - k)(-1)^k Q_{2k}.
/// The recursion sum ranges over a >= 1.
pub fn q_einstein(n: &RingElement, c: &RingElement, big_n: u32) -> RingElement {
    use crate::gjms::{coeff_pair, compositions, Composition};
    assert!(big_n >= 1);
    let mut q: Vec<RingElement> = vec![RingElement::zero()]; // Q_0 slot, never used
    let half_n = n.scale(&ExactScalar::ratio(1, 2));
    for nn in 1..=big_n {
        if nn == 1 {
            q.push((n * c).scale(&ExactScalar::from_int(2)));
            continue;
        }
        // w_{2N} at Einstein: binom(n/2, N) (-c)^N
        let w = &RingElement::binomial(&half_n, nn) * &(-c).pow(nn);
        let prefactor = ExactScalar::factorial(nn)
            * ExactScalar::factorial(nn - 1)
            * ExactScalar::from_int(4).pow(nn);
        let mut sum = RingElement::zero();
        for a in 1..nn {
            for i in compositions(nn - a) {
                let mut parts = i.parts().to_vec();
                parts.push(a);
                let (m_ia, _) = coeff_pair(&Composition::new(parts));
                // P_{2I}(Q_{2a}) = Q_{2a} prod_j (n/2 - I_j)(-1)^{I_j} Q_{2 I_j}
                let mut term = q[a as usize].clone();
                for &ij in i.parts() {
                    let factor = &half_n - &RingElement::from_int(ij as i64);
                    let signed = if ij % 2 == 0 {
                        q[ij as usize].clone()
                    } else {
                        -&q[ij as usize]
                    };
                    term = &term * &(&factor * &signed);
                }
                let signed_a = if a % 2 == 0 { term } else { -&term };
                sum = &sum + &signed_a.scale(&m_ia);
            }
        }
        // (-1)^N Q_{2N} = -sum + N!(N-1)! 2^{2N} w_{2N}
        let rhs = &-&sum + &w.scale(&prefactor);
        let qn = if nn % 2 == 0 { rhs } else { -&rhs };
        q.push(qn);
    }
    q[big_n as usize].clone()
}

/// Holographic formula check at Einstein metrics:
/// 2N c_{2N} Q_{2N} = 2N v_{2N} + sum_j (2N-2j) T*_{2j}(n/2 - N)(v_{2N-2j}).
///
/// Supported for N = 2 (symbolic) and N = 3; N = 1 reports the pole.
pub fn holographic_q_check(n: &RingElement, c: &RingElement, big_n: u32) -> Result<bool, String> {
    if big_n == 1 {
        return Err("evaluation parameter hits the pole of the first operator".into());
    }
    let j = (n * c).scale(&ExactScalar::from_int(2));
    let p2 = (n * &c.pow(2)).scale(&ExactScalar::from_int(4));
    let half_n = n.scale(&ExactScalar::ratio(1, 2));
    // v_{2k} at Einstein: binom(n, k) (-c)^k
    let vk = |k: u32| -> RingElement { &RingElement::binomial(n, k) * &(-c).pow(k) };
    // c_{2N} = (-1)^N / (2^{2N-1} N! (N-1)!)
    let c2n = {
        let denom = ExactScalar::from_int(2).pow(2 * big_n - 1)
            * ExactScalar::factorial(big_n)
            * ExactScalar::factorial(big_n - 1);
        ExactScalar::from_int(if big_n % 2 == 0 { 1 } else { -1 }) / denom
    };
    let lam = &half_n - &RingElement::from_int(big_n as i64);
    // n - 2 - 2 lambda = 2N - 2 at the evaluation parameter
    let t2_denom = ExactScalar::from_int(2 * (2 * big_n as i64 - 2));
    let t2_star = |u: &RingElement| -> RingElement {
        // T*_2(lambda) on constants: -lambda J u / (2(n-2-2 lambda))
        (&(&lam * &j) * u).scale(&(ExactScalar::from_int(-1) / t2_denom.clone()))
    };
    let q = q_einstein(n, c, big_n);
    let lhs = q.scale(&(ExactScalar::from_int(2 * big_n as i64) * c2n));
    let rhs = match big_n {
        2 => {
            &vk(2).scale(&ExactScalar::from_int(4))
                + &t2_star(&vk(1)).scale(&ExactScalar::from_int(2))
        }
        3 => {
            let t4_denom =
                ExactScalar::from_int(8 * (2 * big_n as i64 - 2) * (2 * big_n as i64 - 4));
            let t4_star = |u: &RingElement| -> RingElement {
                // T*_4(lambda) on constants:
                // [lambda(lambda+2) J^2 - lambda (n-2-2 lambda) |P|^2] u / denom
                let first = &(&lam * &(&lam + &RingElement::from_int(2))) * &j.pow(2);
                let second = (&lam * &p2).scale(&ExactScalar::from_int(2 * big_n as i64 - 2));
                (&(&first - &second) * u).scale(&(ExactScalar::one() / t4_denom.clone()))
            };
            let t = &vk(3).scale(&ExactScalar::from_int(6))
                + &t2_star(&vk(2)).scale(&ExactScalar::from_int(4));
            &t + &t4_star(&vk(1)).scale(&ExactScalar::from_int(2))
        }
        _ => {
            return Err(format!(
                "holographic check implemented for N in {{2,3}}, got {}",
                big_n
            ))
        }
    };
    Ok(lhs == rhs)
}

/// Identities tying Q-curvature to the low-order heat coefficients on
/// homogeneous conformally flat data: Q_2 = -6 a_2/(n-4) and
/// Q_4 = 60 a_4/(n-6) - 4 Lambda_2, as polynomial identities.
pub fn q_a4_identities() -> bool {
    // J and |P|^2 as free symbols (reusing the p and q slots)
    let n = RingElement::sym(Sym::N);
    let j = RingElement::sym(Sym::P);
    let p2 = RingElement::sym(Sym::Q);
    let (a2, a4) = cl_low_coeffs(&n, &j, &p2, &RingElement::zero(), &RingElement::zero());
    // -6 a_2 = (n-4) Q_2 with Q_2 = J
    let lhs2 = a2.scale(&ExactScalar::from_int(-6));
    let rhs2 = &(&n - &RingElement::from_int(4)) * &j;
    if lhs2 != rhs2 {
        return false;
    }
    // (n-6) Q_4 = 60 a_4 - 4 (n-6) Lambda_2, Lambda_2 = (2/3)(n-8) v_4
    let q4 =
        &(&n * &j.pow(2)).scale(&ExactScalar::ratio(1, 2)) - &p2.scale(&ExactScalar::from_int(2));
    let v4 = (&j.pow(2) - &p2).scale(&ExactScalar::ratio(1, 8));
    let lambda2 = (&(&n - &RingElement::from_int(8)) * &v4).scale(&ExactScalar::ratio(2, 3));
    let n6 = &n - &RingElement::from_int(6);
    let lhs4 = &q4 * &n6;
    let rhs4 =
        &a4.scale(&ExactScalar::from_int(60)) - &(&lambda2 * &n6).scale(&ExactScalar::from_int(4));
    lhs4 == rhs4
}

/// Scaling-weight check: replacing c by s^2 c multiplies a_{(2j,2k)} by
/// s^{2j+2k}; verified as weighted homogeneity of the symbolic Einstein
/// coefficients, with |W|^2 carrying weight 2.
pub fn scaling_weight_check(max_total: usize) -> bool {
    let m = ModelGeometry::einstein_symbolic();
    let weights = [(Sym::C, 1u32), (Sym::W2, 2u32)];
    let order = max_total;
    let (v, _) = m.volume_series(order);
    for k in 0..=order {
        if !v.coeff(k).is_weighted_homogeneous(&weights, k as u32) {
            return false;
        }
    }
    let a2 = a2_series(&m, order);
    let a2s = a2.first_series().unwrap();
    for k in 0..=a2s.order().min(max_total.saturating_sub(1)) {
        if !a2s.coeff(k).is_weighted_homogeneous(&weights, (1 + k) as u32) {
            return false;
        }
    }
    let a4 = a4_series_model(&m, order).unwrap();
    let a4s = a4.first_series().unwrap();
    for k in 0..=a4s.order().min(max_total.saturating_sub(2)) {
        if !a4s.coeff(k).is_weighted_homogeneous(&weights, (2 + k) as u32) {
            return false;
        }
    }
    true
}

/// Rescaling identities tying renormalized volumes, Q-curvature and the
/// functional determinant on the critical-dimension sphere, for a constant
/// conformal factor phi; both sides are exact in (phi, pi).
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum PvKind {
    Pv2,
    Pv4,
    Pv6,
    Fdv4,
    Fdv6,
}

impl PvKind {
    pub const ALL: [PvKind; 5] = [
        PvKind::Pv2,
        PvKind::Pv4,
        PvKind::Pv6,
        PvKind::Fdv4,
        PvKind::Fdv6,
    ];

    pub fn label(self) -> &'static str {
        match self {
            PvKind::Pv2 => "pv2",
            PvKind::Pv4 => "pv4",
            PvKind::Pv6 => "pv6",
            PvKind::Fdv4 => "fdv4",
            PvKind::Fdv6 => "fdv6",
        }
    }
}

/// Difference of hat and unhat integrals of a weight-w invariant against a
/// constant conformal factor: the conformal factors cancel exactly when the
/// weight matches the dimension.
fn weight_matched_difference(weight: i64, n: i64) -> RingElement {
    assert_eq!(
        weight, n,
        "integrand weight must match the dimension for exact cancellation"
    );
    RingElement::zero()
}

pub struct PvReport {
    pub lhs: RingElement,
    pub rhs: RingElement,
    pub agree: bool,
}

pub fn pv_rescaling_check(kind: PvKind) -> PvReport {
    let phi = RingElement::sym(Sym::Phi);
    let quarter = RingElement::ratio(1, 4);
    let (lhs, rhs) = match kind {
        PvKind::Pv2 => {
            // volume route: Int (phi v_2 - 1/4 |d phi|^2) with d phi = 0
            let v2 = ModelGeometry::sphere(2).volume_series(1).0.coeff(1);
            let vol = RingElement::from_scalar(crate::spheres::sphere_volume(2));
            let lhs = &(&phi * &v2) * &vol;
            // Q route: -(1/4)(phi Q_2 vol + phi Q_2 vol); weight-2 integrand
            let q2 = q_einstein(&RingElement::from_int(2), &quarter, 1);
            let rhs = (&(&phi * &q2) * &vol).scale(&ExactScalar::ratio(-2, 4));
            (lhs, rhs)
        }
        PvKind::Pv4 => {
            let v4 = ModelGeometry::sphere(4).volume_series(2).0.coeff(2);
            let vol = RingElement::from_scalar(crate::spheres::sphere_volume(4));
            let lhs = &(&phi * &v4) * &vol;
            let q4 = q_einstein(&RingElement::from_int(4), &quarter, 2);
            let rhs = &(&(&phi * &q4) * &vol).scale(&ExactScalar::ratio(2, 32))
                - &weight_matched_difference(4, 4).scale(&ExactScalar::ratio(1, 8));
            (lhs, rhs)
        }
        PvKind::Pv6 => {
            let v6 = ModelGeometry::sphere(6).volume_series(3).0.coeff(3);
            let vol = RingElement::from_scalar(crate::spheres::sphere_volume(6));
            let lhs = &(&phi * &v6) * &vol;
            let q6 = q_einstein(&RingElement::from_int(6), &quarter, 3);
            let rhs = &(&(&phi * &q6) * &vol).scale(&ExactScalar::ratio(-2, 768))
                + &weight_matched_difference(6, 6).scale(&ExactScalar::ratio(1, 192));
            (lhs, rhs)
        }
        PvKind::Fdv4 => {
            // determinant route: -2 phi a_4 vol
            let a4 = crate::spheres::conformal_sphere_coeffs(4, 2, crate::spheres::Space::Sphere)
                .coeffs[2]
                .clone();
            let vol = RingElement::from_scalar(crate::spheres::sphere_volume(4));
            let lhs = (&phi * &vol).scale(&(ExactScalar::from_int(-2) * a4));
            let v4 = ModelGeometry::sphere(4).volume_series(2).0.coeff(2);
            let rhs = &(&(&phi * &v4) * &vol).scale(&ExactScalar::ratio(16, 45))
                + &weight_matched_difference(4, 4).scale(&ExactScalar::ratio(2, 15));
            (lhs, rhs)
        }
        PvKind::Fdv6 => {
            let a6 = crate::spheres::conformal_sphere_coeffs(6, 3, crate::spheres::Space::Sphere)
                .coeffs[3]
                .clone();
            let vol = RingElement::from_scalar(crate::spheres::sphere_volume(6));
            let lhs = (&phi * &vol).scale(&(ExactScalar::from_int(-2) * a6));
            let v6 = ModelGeometry::sphere(6).volume_series(3).0.coeff(3);
            let rhs = &(&(&phi * &v6) * &vol).scale(&ExactScalar::ratio(32, 63))
                + &weight_matched_difference(6, 6)
                    .scale(&(ExactScalar::ratio(16, 3) / ExactScalar::factorial(7)));
            (lhs, rhs)
        }
    };
    let agree = lhs == rhs;
    PvReport { lhs, rhs, agree }
}

/// A deterministic seeded generator for small-rational conformally flat
/// models (splitmix64 driven).
pub fn seeded_conf_flat(seed: u64, dim: usize) -> ModelGeometry {
    let mut state = seed.wrapping_mul(0x9E3779B97F4A7C15).wrapping_add(1);
    let mut next = move || {
        state = state.wrapping_add(0x9E3779B97F4A7C15);
        let mut z = state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58476D1CE4E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D049BB133111EB);
        z ^ (z >> 31)
    };
    let eigs = (0..dim)
        .map(|_| {
            let num = (next() % 11) as i64 - 5;
            let den = (next() % 4) as i64 + 1;
            ExactScalar::ratio(num, den)
        })
        .collect();
    ModelGeometry::conf_flat(eigs)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn n() -> RingElement {
        RingElement::sym(Sym::N)
    }

    fn c() -> RingElement {
        RingElement::sym(Sym::C)
    }

    #[test]
    fn a0_routes() {
        for m in [
            ModelGeometry::einstein_symbolic(),
            ModelGeometry::product_symbolic(),
            seeded_conf_flat(3, 5),
        ] {
            let r = a0_series(&m, 6);
            assert!(r.agree, "{:?}", r.discrepancy);
        }
    }

    #[test]
    fn a2_routes_and_einstein_closed_form() {
        let m = ModelGeometry::einstein_symbolic();
        let r = a2_series(&m, 6);
        assert!(r.agree, "{:?}", r.discrepancy);
        // a_2(r) = -(1/6)(n-4) J (1-c rho)^{n-2}, J = 2nc
        let jj = (&n() * &c()).scale(&ExactScalar::from_int(2));
        let coeff = (&(&n() - &RingElement::from_int(4)) * &jj).scale(&ExactScalar::ratio(-1, 6));
        let expect =
            binomial_power_series(&c(), &(&n() - &RingElement::from_int(2)), 6).scale(&coeff);
        assert_eq!(*r.first_series().unwrap(), expect);
    }

    #[test]
    fn a2_sphere_closed_form() {
        // -n(n-4)/12 (1 - rho/4)^{n-2}
        let m = ModelGeometry::Einstein {
            n: n(),
            c: RingElement::ratio(1, 4),
        };
        let r = a2_series(&m, 4);
        assert!(r.agree);
        let coeff =
            (&n() * &(&n() - &RingElement::from_int(4))).scale(&ExactScalar::ratio(-1, 12));
        let expect = binomial_power_series(
            &RingElement::ratio(1, 4),
            &(&n() - &RingElement::from_int(2)),
            4,
        )
        .scale(&coeff);
        assert_eq!(*r.first_series().unwrap(), expect);
    }

    #[test]
    fn a2_generic_low_coefficients() {
        // a_2(r) = (n-4)/3 v2 + rho (2(n-8)/3 v4 + v2^2)
        //          + rho^2 ((n-12) v6 + 4 v2 v4 - v2^3) + ...
        for m in [ModelGeometry::product_symbolic(), seeded_conf_flat(7, 6)] {
            let nn = m.dim();
            let inv = m.volume_invariants();
            let r = a2_series(&m, 3);
            assert!(r.agree);
            let s = r.first_series().unwrap();
            let c0 =
                (&(&nn - &RingElement::from_int(4)) * &inv.v2).scale(&ExactScalar::ratio(1, 3));
            assert_eq!(s.coeff(0), c0);
            let c1 = &(&(&nn - &RingElement::from_int(8)) * &inv.v4)
                .scale(&ExactScalar::ratio(2, 3))
                + &inv.v2.pow(2);
            assert_eq!(s.coeff(1), c1);
            let c2 = &(&(&(&nn - &RingElement::from_int(12)) * &inv.v6)
                + &(&inv.v2 * &inv.v4).scale(&ExactScalar::from_int(4)))
                - &inv.v2.pow(3);
            assert_eq!(s.coeff(2), c2);
        }
    }

    #[test]
    fn lambda_ladder_and_omega() {
        for m in [
            ModelGeometry::einstein_symbolic(),
            ModelGeometry::product_symbolic(),
        ] {
            let r = lambda_omega_coeffs(&m, 6);
            assert!(r.agree, "{:?}", r.discrepancy);
        }
        for seed in 1..=10u64 {
            let m = seeded_conf_flat(seed, 3 + (seed as usize % 6));
            let r = lambda_omega_coeffs(&m, 6);
            assert!(r.agree, "seed {}: {:?}", seed, r.discrepancy);
        }
    }

    #[test]
    fn omega_einstein_value() {
        // omega_4 = n^2 c^3 (2 - n) equals 4 v2 v4 - v2^3
        let m = ModelGeometry::einstein_symbolic();
        let (_, w) = m.volume_series(3);
        let omega = wdot_squared(&w);
        let expect = &(&n().pow(2) * &c().pow(3)) * &(&RingElement::from_int(2) - &n());
        assert_eq!(omega.coeff(2), expect);
    }

    #[test]
    fn a4_einstein_routes() {
        let m = ModelGeometry::einstein_symbolic();
        let r = a4_series_model(&m, 5).unwrap();
        assert!(r.agree, "{:?}", r.discrepancy);
    }

    #[test]
    fn a4_sphere4_value() {
        // 360 a_4 = 48 - 72 + 720 - 1440 + 720 = -24 on S^4
        let m = ModelGeometry::sphere(4);
        let r = a4_series_model(&m, 2).unwrap();
        assert!(r.agree);
        let a4_0 = r
            .first_series()
            .unwrap()
            .coeff(0)
            .subst_scalar(Sym::W2, &ExactScalar::zero());
        assert_eq!(a4_0.constant_term(), ExactScalar::ratio(-1, 15));
    }

    #[test]
    fn a4_product_routes_symbolic() {
        let m = ModelGeometry::product_symbolic();
        let r = a4_series_model(&m, 4).unwrap();
        assert!(r.agree, "{:?}", r.discrepancy);
    }

    #[test]
    fn a22_polynomial_identities() {
        assert!(a22_check());
    }

    #[test]
    fn a42_einstein_symbolic() {
        let m = ModelGeometry::einstein_symbolic();
        let r = a42_confflat(&m, false).unwrap();
        assert!(r.agree, "{:?}", r.discrepancy);
        // closed value: 360 a_{(4,2)} = -4 c^3 n (n-4)(n-6)(5n^2 - 18n + 4)
        let v = r.first_scalar().unwrap();
        let poly = &(&n().pow(2).scale(&ExactScalar::from_int(5))
            - &n().scale(&ExactScalar::from_int(18)))
            + &RingElement::from_int(4);
        let expect = (&(&(&c().pow(3) * &n())
            * &(&(&n() - &RingElement::from_int(4)) * &(&n() - &RingElement::from_int(6))))
            * &poly)
            .scale(&ExactScalar::ratio(-4, 360));
        assert_eq!(*v, expect);
        // Weyl-extended version also matches the family law
        let r = a42_confflat(&m, true).unwrap();
        assert!(r.agree, "{:?}", r.discrepancy);
    }

    #[test]
    fn a42_product_and_balanced() {
        let r = a42_confflat(&ModelGeometry::product_symbolic(), false).unwrap();
        assert!(r.agree, "{:?}", r.discrepancy);
        // p = q: v2 = 0, value carried by the v6 term alone
        let m = ModelGeometry::product(4, 4, ExactScalar::ratio(1, 3));
        let r = a42_confflat(&m, false).unwrap();
        assert!(r.agree);
    }

    #[test]
    fn a42_vanishes_in_dimension_four() {
        let m = ModelGeometry::conf_flat(vec![
            ExactScalar::from_int(1),
            ExactScalar::ratio(1, 2),
            ExactScalar::from_int(-2),
            ExactScalar::ratio(3, 4),
        ]);
        let r = a42_confflat(&m, false).unwrap();
        assert!(r.first_scalar().unwrap().is_zero());
    }

    #[test]
    fn cl_low_sphere_values() {
        // a_2 = -n(n-4)/12, a_4 = n(n-6)(5n^2-18n+4)/1440 on the sphere
        let j = n().scale(&ExactScalar::ratio(1, 2));
        let p2 = n().scale(&ExactScalar::ratio(1, 4));
        let (a2, a4) = cl_low_coeffs(&n(), &j, &p2, &RingElement::zero(), &RingElement::zero());
        let e2 = (&n() * &(&n() - &RingElement::from_int(4))).scale(&ExactScalar::ratio(-1, 12));
        assert_eq!(a2, e2);
        let poly = &(&n().pow(2).scale(&ExactScalar::from_int(5))
            - &n().scale(&ExactScalar::from_int(18)))
            + &RingElement::from_int(4);
        let e4 = (&(&n() * &(&n() - &RingElement::from_int(6))) * &poly)
            .scale(&ExactScalar::ratio(1, 1440));
        assert_eq!(a4, e4);
        // hyperbolic values by the sign flip of J
        let (a2h, a4h) = cl_low_coeffs(&n(), &-&j, &p2, &RingElement::zero(), &RingElement::zero());
        assert_eq!(a2h, -&e2);
        assert_eq!(a4h, e4);
    }

    #[test]
    fn a6_sphere_values() {
        let r = a6_multiroute(&ModelGeometry::sphere(6)).unwrap();
        assert!(r.agree, "{:?}", r.discrepancy);
        assert_eq!(
            r.first_scalar().unwrap().constant_term(),
            ExactScalar::ratio(5, 63)
        );
    }

    #[test]
    fn a6_products() {
        for (p, q) in [(3, 3), (3, 4), (4, 5), (5, 3), (6, 6)] {
            let m = ModelGeometry::product(p, q, ExactScalar::ratio(1, 4));
            let r = a6_multiroute(&m).unwrap();
            assert!(r.agree, "(p,q)=({},{}) {:?}", p, q, r.discrepancy);
        }
        // the block normalization is free, not tied to unit curvature
        for lam in [ExactScalar::ratio(1, 3), ExactScalar::ratio(2, 5)] {
            let m = ModelGeometry::product(4, 3, lam);
            let r = a6_multiroute(&m).unwrap();
            assert!(r.agree, "{:?}", r.discrepancy);
        }
    }

    #[test]
    fn a6_on_generic_conformally_flat_data() {
        // arbitrary eigenvalue data: the two formula routes agree, and the
        // trace-free-Ricci table obeys the exact defect relation off the
        // realizability surface n tr(P^3) = J |P|^2
        for seed in 1..=5u64 {
            let m = seeded_conf_flat(seed, 3 + (seed as usize % 5));
            let r = a6_multiroute(&m).unwrap();
            assert!(r.agree, "seed {}: {:?}", seed, r.discrepancy);
        }
        // constraint-satisfying spectra beyond products: balanced pairs
        // (J = 0, tr P^3 = 0) and the two-value antisymmetric case
        let balanced = ModelGeometry::conf_flat(vec![
            ExactScalar::ratio(3, 2),
            ExactScalar::ratio(-3, 2),
            ExactScalar::ratio(1, 3),
            ExactScalar::ratio(-1, 3),
        ]);
        let r = a6_multiroute(&balanced).unwrap();
        assert_eq!(r.routes.len(), 3, "table route must join on realizable data");
        assert!(r.agree, "{:?}", r.discrepancy);
        let two_value = ModelGeometry::conf_flat(vec![
            ExactScalar::one(),
            ExactScalar::one(),
            ExactScalar::from_int(-1),
        ]);
        let r = a6_multiroute(&two_value).unwrap();
        assert_eq!(r.routes.len(), 3);
        assert!(r.agree, "{:?}", r.discrepancy);
    }

    #[test]
    fn block_coefficients_match_sphere_tables() {
        // the symbolic block closed forms and the spectral-shift tables are
        // independent transcriptions; they must agree at unit curvature
        use crate::spheres::{conformal_sphere_coeffs, Space};
        let quarter = RingElement::ratio(1, 4);
        for nn in 3..=12i64 {
            let table = conformal_sphere_coeffs(nn, 3, Space::Sphere);
            for k in 0..=3usize {
                let block = conformal_block_coeff(&RingElement::from_int(nn), &quarter, k);
                assert_eq!(
                    block.constant_term(),
                    table.coeffs[k],
                    "n = {}, k = {}",
                    nn,
                    k
                );
            }
        }
    }

    #[test]
    fn q_small_values() {
        assert_eq!(
            q_einstein(&n(), &c(), 1),
            (&n() * &c()).scale(&ExactScalar::from_int(2))
        );
        // Q_4 = 2 n c^2 (n-2)(n+2)
        let q4 = q_einstein(&n(), &c(), 2);
        let expect = (&(&(&n() * &c().pow(2)) * &(&n() - &RingElement::from_int(2)))
            * &(&n() + &RingElement::from_int(2)))
            .scale(&ExactScalar::from_int(2));
        assert_eq!(q4, expect);
        // n=4, N=2: 96 c^2
        let v = q4.subst_scalar(Sym::N, &ExactScalar::from_int(4));
        assert_eq!(v, c().pow(2).scale(&ExactScalar::from_int(96)));
    }

    #[test]
    fn q_critical_values() {
        // critical Q_n = (n-1)! (4c)^{n/2}
        for nn in [4i64, 6, 8, 10] {
            let q = q_einstein(&RingElement::from_int(nn), &c(), (nn / 2) as u32);
            let expect = c()
                .scale(&ExactScalar::from_int(4))
                .pow((nn / 2) as u32)
                .scale(&ExactScalar::factorial((nn - 1) as u32));
            assert_eq!(q, expect, "critical Q at n = {}", nn);
        }
    }

    #[test]
    fn holographic_checks() {
        assert!(holographic_q_check(&n(), &c(), 2).unwrap());
        // the third-order identity also closes symbolically in (n, c)
        assert!(holographic_q_check(&n(), &c(), 3).unwrap());
        // numeric spot value: n = 4, N = 2 gives 24 c^2 on both sides,
        // i.e. 4 * (1/16) * Q_4 with Q_4 = 96 c^2
        let q4 = q_einstein(&RingElement::from_int(4), &c(), 2);
        assert_eq!(
            q4.scale(&ExactScalar::ratio(4, 16)),
            c().pow(2).scale(&ExactScalar::from_int(24))
        );
        for nn in [8i64, 10, 12] {
            assert!(
                holographic_q_check(&RingElement::from_int(nn), &c(), 3).unwrap(),
                "N=3 at n={}",
                nn
            );
        }
        assert!(holographic_q_check(&n(), &c(), 1).is_err());
    }

    #[test]
    fn q_a4_relations() {
        assert!(q_a4_identities());
    }

    #[test]
    fn scaling_weights() {
        assert!(scaling_weight_check(4));
    }

    #[test]
    fn pv_values() {
        let phi = RingElement::sym(Sym::Phi);
        let r = pv_rescaling_check(PvKind::Pv2);
        assert!(r.agree);
        assert_eq!(r.lhs, phi.scale(&ExactScalar::pi_times(-2, 1, 1)));
        let r = pv_rescaling_check(PvKind::Pv4);
        assert!(r.agree);
        assert_eq!(r.lhs, phi.scale(&ExactScalar::pi_times(1, 1, 2)));
        let r = pv_rescaling_check(PvKind::Pv6);
        assert!(r.agree);
        assert_eq!(r.lhs, phi.scale(&ExactScalar::pi_times(-1, 3, 3)));
        let r = pv_rescaling_check(PvKind::Fdv4);
        assert!(r.agree);
        assert_eq!(r.lhs, phi.scale(&ExactScalar::pi_times(16, 45, 2)));
        let r = pv_rescaling_check(PvKind::Fdv6);
        assert!(r.agree);
        assert_eq!(r.lhs, phi.scale(&ExactScalar::pi_times(-32, 189, 3)));
    }
}
