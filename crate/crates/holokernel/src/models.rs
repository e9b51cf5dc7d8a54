//! Closed-form Poincare-Einstein data for the catalog of model metrics:
//! the series v, w, g(r)^{-1}, L(r), E(r), scal(g(r)) and pointwise
//! curvature invariants, all computed per Schouten eigendirection.

use crate::ring::{RingElement, Sym};
use crate::scalar::ExactScalar;
use crate::series::{
    binomial_power_series, half_integral, radial_second_derivative, series_inverse, series_mul,
    series_sqrt, EvenSeries,
};

/// Catalog entry. All entries are curvature homogeneous with g-diagonalizable
/// Schouten tensor; metric factors per eigendirection are (1 - e rho / 2)^2
/// for Schouten eigenvalue e.
#[derive(Clone, Debug)]
pub enum ModelGeometry {
    Einstein { n: RingElement, c: RingElement },
    Product {
        p: RingElement,
        q: RingElement,
        lam: RingElement,
    },
    ConfFlatDiagonal { eigs: Vec<ExactScalar> },
}

/// One Schouten eigendirection block with an even series per direction and a
/// (possibly symbolic) multiplicity.
#[derive(Clone, Debug)]
pub struct DiagonalBlock {
    pub series: EvenSeries,
    pub multiplicity: RingElement,
}

/// Pointwise curvature invariants of a catalog entry.
#[derive(Clone, Debug)]
pub struct VolumeInvariants {
    pub j: RingElement,
    pub p_norm2: RingElement,
    pub p_tr3: RingElement,
    pub v2: RingElement,
    pub v4: RingElement,
    pub v6: RingElement,
    /// v_{2k} from the invariant formulas agree with the volume series.
    pub agree: bool,
}

impl ModelGeometry {
    pub fn sphere(n: i64) -> Self {
        ModelGeometry::Einstein {
            n: RingElement::from_int(n),
            c: RingElement::ratio(1, 4),
        }
    }

    pub fn hyperbolic(n: i64) -> Self {
        ModelGeometry::Einstein {
            n: RingElement::from_int(n),
            c: RingElement::ratio(-1, 4),
        }
    }

    pub fn einstein_symbolic() -> Self {
        ModelGeometry::Einstein {
            n: RingElement::sym(Sym::N),
            c: RingElement::sym(Sym::C),
        }
    }

    pub fn product_symbolic() -> Self {
        ModelGeometry::Product {
            p: RingElement::sym(Sym::P),
            q: RingElement::sym(Sym::Q),
            lam: RingElement::sym(Sym::Lam),
        }
    }

    pub fn product(p: i64, q: i64, lam: ExactScalar) -> Self {
        assert!(p >= 3 && q >= 3, "product blocks need dimension >= 3");
        ModelGeometry::Product {
            p: RingElement::from_int(p),
            q: RingElement::from_int(q),
            lam: RingElement::from_scalar(lam),
        }
    }

    pub fn conf_flat(eigs: Vec<ExactScalar>) -> Self {
        assert!(!eigs.is_empty());
        ModelGeometry::ConfFlatDiagonal { eigs }
    }

    /// Manifold dimension, possibly symbolic.
    pub fn dim(&self) -> RingElement {
        match self {
            ModelGeometry::Einstein { n, .. } => n.clone(),
            ModelGeometry::Product { p, q, .. } => p + q,
            ModelGeometry::ConfFlatDiagonal { eigs } => {
                RingElement::from_int(eigs.len() as i64)
            }
        }
    }

    /// Schouten eigenvalue blocks as (eigenvalue, multiplicity) pairs.
    pub fn schouten_blocks(&self) -> Vec<(RingElement, RingElement)> {
        match self {
            ModelGeometry::Einstein { n, c } => {
                vec![(c.scale(&ExactScalar::from_int(2)), n.clone())]
            }
            ModelGeometry::Product { p, q, lam } => vec![
                (lam.scale(&ExactScalar::from_int(2)), p.clone()),
                (lam.scale(&ExactScalar::from_int(-2)), q.clone()),
            ],
            ModelGeometry::ConfFlatDiagonal { eigs } => eigs
                .iter()
                .map(|e| (RingElement::from_scalar(e.clone()), RingElement::one()))
                .collect(),
        }
    }

    /// v(r) = sqrt(det g(r)) / sqrt(det g) and its square root w(r).
    pub fn volume_series(&self, order: usize) -> (EvenSeries, EvenSeries) {
        let v = match self {
            ModelGeometry::Einstein { n, c } => binomial_power_series(c, n, order),
            ModelGeometry::Product { p, q, lam } => {
                let a = binomial_power_series(lam, p, order);
                let b = binomial_power_series(&-lam, q, order);
                series_mul(&a, &b)
            }
            ModelGeometry::ConfFlatDiagonal { eigs } => {
                let mut v = EvenSeries::one(order);
                for e in eigs {
                    let half = RingElement::from_scalar(e.clone() * ExactScalar::ratio(1, 2));
                    v = series_mul(&v, &binomial_power_series(&half, &RingElement::one(), order));
                }
                v
            }
        };
        let w = series_sqrt(&v);
        (v, w)
    }

    /// Curvature invariants and the v_{2k} cross-check against the series.
    pub fn volume_invariants(&self) -> VolumeInvariants {
        let mut j = RingElement::zero();
        let mut p2 = RingElement::zero();
        let mut p3 = RingElement::zero();
        for (e, m) in self.schouten_blocks() {
            j = &j + &(&m * &e);
            p2 = &p2 + &(&m * &e.pow(2));
            p3 = &p3 + &(&m * &e.pow(3));
        }
        let v2 = j.scale(&ExactScalar::ratio(-1, 2));
        let v4 = (&j.pow(2) - &p2).scale(&ExactScalar::ratio(1, 8));
        // v6 = -(1/8) tr(wedge^3 P) = -(1/48)(J^3 - 3 J |P|^2 + 2 tr P^3)
        let v6 = (&(&j.pow(3) - &(&j * &p2).scale(&ExactScalar::from_int(3)))
            + &p3.scale(&ExactScalar::from_int(2)))
            .scale(&ExactScalar::ratio(-1, 48));
        let (v, _) = self.volume_series(3);
        let agree = v.coeff(1) == v2 && v.coeff(2) == v4 && v.coeff(3) == v6;
        VolumeInvariants {
            j,
            p_norm2: p2,
            p_tr3: p3,
            v2,
            v4,
            v6,
            agree,
        }
    }

    /// Diagonal entries of g(r)^{-1} per eigendirection: (1 - e rho/2)^{-2}.
    pub fn inverse_metric_series(&self, order: usize) -> Vec<DiagonalBlock> {
        self.schouten_blocks()
            .into_iter()
            .map(|(e, m)| DiagonalBlock {
                series: binomial_power_series(
                    &e.scale(&ExactScalar::ratio(1, 2)),
                    &RingElement::from_int(-2),
                    order,
                ),
                multiplicity: m,
            })
            .collect()
    }

    /// Metric factor per eigendirection: (1 - e rho/2)^2.
    pub fn metric_factor_series(&self, order: usize) -> Vec<DiagonalBlock> {
        self.schouten_blocks()
            .into_iter()
            .map(|(e, m)| DiagonalBlock {
                series: binomial_power_series(
                    &e.scale(&ExactScalar::ratio(1, 2)),
                    &RingElement::from_int(2),
                    order,
                ),
                multiplicity: m,
            })
            .collect()
    }

    /// L(r) = v(r) int_0^r s g(s)^{-1} ds, stored as L = rho * S per
    /// eigendirection; the returned blocks hold S.
    pub fn l_series(&self, order: usize) -> Vec<DiagonalBlock> {
        let (v, _) = self.volume_series(order);
        self.inverse_metric_series(order)
            .into_iter()
            .map(|b| DiagonalBlock {
                series: series_mul(&v, &half_integral(&b.series)),
                multiplicity: b.multiplicity,
            })
            .collect()
    }

    /// E(r) = -w^{-1} (d^2/dr^2 - (n-1)/r d/dr)(w), exact to `order`.
    pub fn e_series(&self, order: usize) -> EvenSeries {
        let n = self.dim();
        let (_, w) = self.volume_series(order + 1);
        let num = radial_second_derivative(&w, &(&n - &RingElement::one()));
        let winv = series_inverse(&w.truncate(order));
        series_mul(&num, &winv).neg()
    }

    /// scal(g(r)) = (d^2/dr^2 - (2n-1)/r d/dr)(v) / v, exact to `order`.
    pub fn scal_gr_series(&self, order: usize) -> EvenSeries {
        let n = self.dim();
        let (v, _) = self.volume_series(order + 1);
        let a = &n.scale(&ExactScalar::from_int(2)) - &RingElement::one();
        let num = radial_second_derivative(&v, &a);
        let vinv = series_inverse(&v.truncate(order));
        series_mul(&num, &vinv)
    }

    /// scal(g(r)) assembled block-wise from the scaling law
    /// scal(s g) = s^{-1} scal, with block scalar curvatures from the
    /// per-block Einstein data. Only meaningful when every block is a
    /// constant-curvature factor.
    pub fn scal_gr_blocks(&self, order: usize) -> EvenSeries {
        let mut acc = EvenSeries::zero(order);
        for (e, m) in self.schouten_blocks() {
            // block Einstein normalization c_b = e/2, dimension d = multiplicity
            let cb = e.scale(&ExactScalar::ratio(1, 2));
            let scal_b = (&(&m.pow(2) - &m) * &cb).scale(&ExactScalar::from_int(4));
            let inv2 = binomial_power_series(
                &e.scale(&ExactScalar::ratio(1, 2)),
                &RingElement::from_int(-2),
                order,
            );
            acc = acc.add(&inv2.scale(&scal_b));
        }
        acc
    }

    /// Trace identity tr_{g(r)}(g..) = r^{-1} tr(g.) + 1/2 tr(g. g.) as an
    /// even series identity summed over eigendirections.
    pub fn trace_identity_check(&self, order: usize) -> bool {
        let mut acc = EvenSeries::zero(order);
        for b in self.metric_factor_series(order + 2) {
            let f = b.series;
            let finv = series_inverse(&f.truncate(order + 1));
            let df = f.d_rho(); // order+1
            let ddf = df.d_rho(); // order
            // g.. = 2 f' + 4 rho f''; r^{-1} g. = 2 f'; both traced against f^{-1}
            let lhs = df
                .scale(&RingElement::from_int(2))
                .add(&ddf.shift_up(1).scale(&RingElement::from_int(4)));
            let rhs1 = df.scale(&RingElement::from_int(2));
            // (1/2) tr(g. g.) per direction: 2 rho (f'/f)^2
            let ratio = series_mul(&df, &finv);
            let rhs2 = series_mul(&ratio, &ratio)
                .shift_up(1)
                .scale(&RingElement::from_int(2));
            let diff = series_mul(&lhs.sub(&rhs1), &finv).sub(&rhs2);
            acc = acc.add(&diff.scale(&b.multiplicity));
        }
        acc.is_zero()
    }

    /// Short display name for reports.
    pub fn label(&self) -> String {
        match self {
            ModelGeometry::Einstein { n, c } => format!("einstein(n={}, c={})", n, c),
            ModelGeometry::Product { p, q, lam } => {
                format!("product(p={}, q={}, lambda={})", p, q, lam)
            }
            ModelGeometry::ConfFlatDiagonal { eigs } => {
                let list: Vec<String> = eigs.iter().map(|e| e.to_string()).collect();
                format!("confflat(p=[{}])", list.join(","))
            }
        }
    }
}

/// Checks the two Einstein normalizations against each other:
/// with lambda_hol = 4c, the family factor (1 - lambda_hol rho/4)^{-2}
/// coincides with (1 - c rho)^{-2}.
pub fn einstein_normalization_check(order: usize) -> bool {
    let c = RingElement::sym(Sym::C);
    let lam_hol = c.scale(&ExactScalar::from_int(4));
    let a = binomial_power_series(&c, &RingElement::from_int(-2), order);
    let b = binomial_power_series(
        &lam_hol.scale(&ExactScalar::ratio(1, 4)),
        &RingElement::from_int(-2),
        order,
    );
    a == b
}

/// Einstein potential consistency: E(r) (1 - c rho)^2 is the constant
/// -(n/2 - 1) J with J = 2nc, reproducing the closed form of the
/// holographic Laplacian at Einstein metrics.
pub fn einstein_potential_check(order: usize) -> bool {
    let m = ModelGeometry::einstein_symbolic();
    let n = RingElement::sym(Sym::N);
    let c = RingElement::sym(Sym::C);
    let e = m.e_series(order);
    let sq = binomial_power_series(&c, &RingElement::from_int(2), order);
    let lhs = series_mul(&e, &sq);
    let j = (&n * &c).scale(&ExactScalar::from_int(2));
    let target = -&(&(&n.scale(&ExactScalar::ratio(1, 2)) - &RingElement::one()) * &j);
    lhs == EvenSeries::constant(target, order)
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
    fn sphere_volume() {
        // v = (1 - rho/4)^n
        let m = ModelGeometry::Einstein {
            n: n(),
            c: RingElement::ratio(1, 4),
        };
        let (v, w) = m.volume_series(4);
        let expect = binomial_power_series(&RingElement::ratio(1, 4), &n(), 4);
        assert_eq!(v, expect);
        assert_eq!(series_mul(&w, &w), v);
    }

    #[test]
    fn product_volume() {
        let m = ModelGeometry::product_symbolic();
        let (v, _) = m.volume_series(4);
        let lam = RingElement::sym(Sym::Lam);
        let expect = series_mul(
            &binomial_power_series(&lam, &RingElement::sym(Sym::P), 4),
            &binomial_power_series(&-&lam, &RingElement::sym(Sym::Q), 4),
        );
        assert_eq!(v, expect);
    }

    #[test]
    fn conf_flat_simple() {
        // eigenvalues (2,0,0): v = 1 - rho, v2 = -1 = -J/2 with J = 2
        let m = ModelGeometry::conf_flat(vec![
            ExactScalar::from_int(2),
            ExactScalar::zero(),
            ExactScalar::zero(),
        ]);
        let (v, _) = m.volume_series(3);
        assert_eq!(v.coeff(0), RingElement::one());
        assert_eq!(v.coeff(1), RingElement::from_int(-1));
        assert_eq!(v.coeff(2), RingElement::zero());
        let inv = m.volume_invariants();
        assert!(inv.agree);
        assert_eq!(inv.j, RingElement::from_int(2));
        assert_eq!(inv.v2, RingElement::from_int(-1));
    }

    #[test]
    fn invariants_symbolic() {
        // Einstein: J = 2nc, v4 = binom(n,2) c^2; Product: J = 2 lambda (p-q)
        let m = ModelGeometry::einstein_symbolic();
        let inv = m.volume_invariants();
        assert!(inv.agree);
        assert_eq!(inv.j, (&n() * &c()).scale(&ExactScalar::from_int(2)));
        assert_eq!(inv.v4, &RingElement::binomial(&n(), 2) * &c().pow(2));

        let m = ModelGeometry::product_symbolic();
        let inv = m.volume_invariants();
        assert!(inv.agree);
        let lam = RingElement::sym(Sym::Lam);
        let expect = (&lam * &(&RingElement::sym(Sym::P) - &RingElement::sym(Sym::Q)))
            .scale(&ExactScalar::from_int(2));
        assert_eq!(inv.j, expect);
    }

    #[test]
    fn sphere_critical_v_values() {
        // v2(S^2) = -1/2, v4(S^4) = 3/8, v6(S^6) = -5/16
        let v2 = ModelGeometry::sphere(2).volume_series(1).0.coeff(1);
        assert_eq!(v2, RingElement::ratio(-1, 2));
        let v4 = ModelGeometry::sphere(4).volume_series(2).0.coeff(2);
        assert_eq!(v4, RingElement::ratio(3, 8));
        let v6 = ModelGeometry::sphere(6).volume_series(3).0.coeff(3);
        assert_eq!(v6, RingElement::ratio(-5, 16));
    }

    #[test]
    fn inverse_metric_entries() {
        // Einstein: (1-c rho)^{-2} = 1 + 2c rho + 3c^2 rho^2 + ...
        let m = ModelGeometry::einstein_symbolic();
        let blocks = m.inverse_metric_series(2);
        assert_eq!(blocks.len(), 1);
        let s = &blocks[0].series;
        assert_eq!(s.coeff(1), c().scale(&ExactScalar::from_int(2)));
        assert_eq!(s.coeff(2), c().pow(2).scale(&ExactScalar::from_int(3)));

        // conf-flat entry: (1 - rho p_i/2)^{-2} = 1 + p_i rho + (3/4) p_i^2 rho^2
        let m = ModelGeometry::conf_flat(vec![ExactScalar::from_int(2)]);
        let s = &m.inverse_metric_series(2)[0].series;
        assert_eq!(s.coeff(1), RingElement::from_int(2));
        assert_eq!(s.coeff(2), RingElement::from_int(3));
    }

    #[test]
    fn l_series_einstein() {
        // L = (rho/2)(1 - c rho)^{n-1}
        let m = ModelGeometry::einstein_symbolic();
        let blocks = m.l_series(5);
        let expect = binomial_power_series(&c(), &(&n() - &RingElement::one()), 5)
            .scale(&RingElement::ratio(1, 2));
        assert_eq!(blocks[0].series, expect);
        // leading coefficient 1/2 for every model
        for m in [
            ModelGeometry::product_symbolic(),
            ModelGeometry::conf_flat(vec![ExactScalar::ratio(1, 3), ExactScalar::from_int(-2)]),
        ] {
            for b in m.l_series(3) {
                assert_eq!(b.series.coeff(0), RingElement::ratio(1, 2));
            }
        }
    }

    #[test]
    fn e_series_einstein_closed_form() {
        // E = -c n (n-2) (1-c rho)^{-2}; E(0) = (n-2) v2 with v2 = -nc
        let m = ModelGeometry::einstein_symbolic();
        let e = m.e_series(5);
        let coeff = -&(&c() * &(&n() * &(&n() - &RingElement::from_int(2))));
        let expect = binomial_power_series(&c(), &RingElement::from_int(-2), 5).scale(&coeff);
        assert_eq!(e, expect);
    }

    #[test]
    fn potential_expansion_low_orders() {
        // E(0) = (n-2) v2 and E[1] = 2(n-4) v4 - (n-3) v2^2 for every model
        let models = [
            ModelGeometry::einstein_symbolic(),
            ModelGeometry::product_symbolic(),
            ModelGeometry::conf_flat(vec![
                ExactScalar::ratio(2, 3),
                ExactScalar::from_int(-1),
                ExactScalar::ratio(1, 2),
                ExactScalar::from_int(4),
            ]),
        ];
        for m in models {
            let n = m.dim();
            let inv = m.volume_invariants();
            let e = m.e_series(2);
            let e0_expect = &(&n - &RingElement::from_int(2)) * &inv.v2;
            assert_eq!(e.coeff(0), e0_expect, "E(0) failed for {}", m.label());
            let e2_expect = &(&(&n - &RingElement::from_int(4)) * &inv.v4)
                .scale(&ExactScalar::from_int(2))
                - &(&(&n - &RingElement::from_int(3)) * &inv.v2.pow(2));
            assert_eq!(e.coeff(1), e2_expect, "E[1] failed for {}", m.label());
        }
    }

    #[test]
    fn einstein_potential_second_coefficient() {
        // 4 * (rho-coefficient of the potential) = -8 n c^2 (n-2), which is
        // -J^2 - (n-4)|P|^2 evaluated on Einstein data (derivative terms zero)
        let m = ModelGeometry::einstein_symbolic();
        let e = m.e_series(2);
        let mu4 = e.coeff(1).scale(&ExactScalar::from_int(4));
        let expect = (&(&n() * &c().pow(2)) * &(&n() - &RingElement::from_int(2)))
            .scale(&ExactScalar::from_int(-8));
        assert_eq!(mu4, expect);
        let inv = m.volume_invariants();
        let formula = &-&inv.j.pow(2) - &(&(&n() - &RingElement::from_int(4)) * &inv.p_norm2);
        assert_eq!(mu4, formula);
    }

    #[test]
    fn scal_scaling_law_einstein() {
        // scal(g(r)) = 4n(n-1)c (1-c rho)^{-2}
        let m = ModelGeometry::einstein_symbolic();
        let s = m.scal_gr_series(5);
        let scal0 = (&(&n().pow(2) - &n()) * &c()).scale(&ExactScalar::from_int(4));
        let expect = binomial_power_series(&c(), &RingElement::from_int(-2), 5).scale(&scal0);
        assert_eq!(s, expect);
    }

    #[test]
    fn scal_block_sum_product() {
        // the series route and the block route agree, symbolically in (p,q,lambda)
        let m = ModelGeometry::product_symbolic();
        assert_eq!(m.scal_gr_series(5), m.scal_gr_blocks(5));
        // scal(0) = 2(n-1) J
        let inv = m.volume_invariants();
        let n = m.dim();
        let expect = &(&n - &RingElement::one()) * &inv.j.scale(&ExactScalar::from_int(2));
        assert_eq!(m.scal_gr_series(1).coeff(0), expect);
    }

    #[test]
    fn sphere_scal_at_zero() {
        // scal(S^n) = n(n-1); J = n/2
        let m = ModelGeometry::Einstein {
            n: n(),
            c: RingElement::ratio(1, 4),
        };
        let s = m.scal_gr_series(1);
        assert_eq!(s.coeff(0), &n().pow(2) - &n());
    }

    #[test]
    fn trace_identity_models() {
        assert!(ModelGeometry::einstein_symbolic().trace_identity_check(5));
        assert!(ModelGeometry::product_symbolic().trace_identity_check(5));
        let eigs = vec![
            ExactScalar::ratio(1, 2),
            ExactScalar::from_int(-3),
            ExactScalar::ratio(5, 4),
        ];
        assert!(ModelGeometry::conf_flat(eigs).trace_identity_check(5));
    }

    #[test]
    fn normalization_and_potential() {
        assert!(einstein_normalization_check(6));
        assert!(einstein_potential_check(6));
    }

    #[test]
    fn l_series_matches_bracket_sum() {
        // coefficient of rho^N in L equals
        // (1/2) v_{2N-2} invcoef_0 + ... + (1/(2N)) v_0 invcoef_{N-1}
        let m = ModelGeometry::conf_flat(vec![
            ExactScalar::ratio(3, 2),
            ExactScalar::from_int(-1),
            ExactScalar::ratio(1, 4),
            ExactScalar::from_int(2),
        ]);
        let order = 4;
        let (v, _) = m.volume_series(order);
        let inv_blocks = m.inverse_metric_series(order);
        let l_blocks = m.l_series(order);
        for (ib, lb) in inv_blocks.iter().zip(&l_blocks) {
            for bign in 1..=order {
                // L = rho*S: coefficient of rho^N in L is S_{N-1}
                let got = lb.series.coeff(bign - 1);
                let mut expect = RingElement::zero();
                for k in 0..bign {
                    let term = (&v.coeff(bign - 1 - k) * &ib.series.coeff(k))
                        .scale(&ExactScalar::ratio(1, 2 * (k as i64 + 1)));
                    expect = &expect + &term;
                }
                assert_eq!(got, expect);
            }
        }
    }
}
