//! Rational symbol expressions on the cotangent fibers, Poisson brackets and
//! the double-bracket reduction identity.

use super::rng::SmallRng;
use super::xpoly::{Rat, VarSpec, XPoly};

/// A rational symbol p / G^k with a fixed nonvanishing base symbol G; the
/// derivative rule d(1/G) = -G^{-2} dG keeps the family closed under
/// Poisson brackets without any simplification.
#[derive(Clone, Debug)]
pub struct SymbolExpr {
    pub num: XPoly<Rat>,
    pub base: XPoly<Rat>,
    pub pow: u32,
}

impl SymbolExpr {
    pub fn poly(p: XPoly<Rat>, base: &XPoly<Rat>) -> Self {
        SymbolExpr {
            num: p,
            base: base.clone(),
            pow: 0,
        }
    }

    fn with_num(base: &XPoly<Rat>, num: XPoly<Rat>, pow: u32) -> Self {
        SymbolExpr {
            num,
            base: base.clone(),
            pow,
        }
    }

    /// Align two expressions over the common power of the base.
    fn aligned(&self, rhs: &SymbolExpr, spec: &VarSpec) -> (XPoly<Rat>, XPoly<Rat>, u32) {
        let pow = self.pow.max(rhs.pow);
        let mut a = self.num.clone();
        for _ in self.pow..pow {
            a = a.mul(&self.base, spec);
        }
        let mut b = rhs.num.clone();
        for _ in rhs.pow..pow {
            b = b.mul(&self.base, spec);
        }
        (a, b, pow)
    }

    pub fn add(&self, rhs: &SymbolExpr, spec: &VarSpec) -> SymbolExpr {
        let (a, b, pow) = self.aligned(rhs, spec);
        SymbolExpr::with_num(&self.base, a.add(&b), pow)
    }

    pub fn sub(&self, rhs: &SymbolExpr, spec: &VarSpec) -> SymbolExpr {
        let (a, b, pow) = self.aligned(rhs, spec);
        SymbolExpr::with_num(&self.base, a.sub(&b), pow)
    }

    pub fn mul(&self, rhs: &SymbolExpr, spec: &VarSpec) -> SymbolExpr {
        SymbolExpr::with_num(&self.base, self.num.mul(&rhs.num, spec), self.pow + rhs.pow)
    }

    /// d/d(var): (p / G^k)' = (p' G - k p G') / G^{k+1}.
    pub fn derive(&self, var: usize, spec: &VarSpec) -> SymbolExpr {
        let dnum = self.num.derive(var);
        let dbase = self.base.derive(var);
        let first = dnum.mul(&self.base, spec);
        let second = self
            .num
            .mul(&dbase, spec)
            .scale(&Rat::from_integer((self.pow as i64).into()));
        SymbolExpr::with_num(&self.base, first.sub(&second), self.pow + 1)
    }

    /// Structural equality via cross multiplication.
    pub fn equals(&self, rhs: &SymbolExpr, spec: &VarSpec) -> bool {
        let (a, b, _) = self.aligned(rhs, spec);
        a == b
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

/// Poisson bracket {f, g} = sum_i df/dx_i dg/dxi_i - df/dxi_i dg/dx_i.
pub fn poisson(f: &SymbolExpr, g: &SymbolExpr, spec: &VarSpec) -> SymbolExpr {
    let mut acc = SymbolExpr::with_num(&f.base, XPoly::zero(spec), 0);
    for i in 0..spec.nx {
        let term1 = f
            .derive(spec.x_index(i), spec)
            .mul(&g.derive(spec.xi_index(i), spec), spec);
        let term2 = f
            .derive(spec.xi_index(i), spec)
            .mul(&g.derive(spec.x_index(i), spec), spec);
        acc = acc.add(&term1.sub(&term2, spec), spec);
    }
    acc
}

/// Polynomial Poisson bracket (no denominators).
pub fn poisson_poly(f: &XPoly<Rat>, g: &XPoly<Rat>, spec: &VarSpec) -> XPoly<Rat> {
    let mut acc = XPoly::zero(spec);
    for i in 0..spec.nx {
        acc = acc.add(&f.derive(spec.x_index(i)).mul(&g.derive(spec.xi_index(i)), spec));
        acc = acc.sub(&f.derive(spec.xi_index(i)).mul(&g.derive(spec.x_index(i)), spec));
    }
    acc
}

/// The double-bracket reduction: {1/G, {1/G, H}} = G^{-4} {G, {G, H}},
/// verified structurally by cross multiplication.
pub fn dpb_check(g: &XPoly<Rat>, h: &XPoly<Rat>, spec: &VarSpec) -> bool {
    assert!(
        !g.constant_term().eq(&Rat::from_integer(0.into())) || !g.is_zero(),
        "base symbol must not be structurally zero"
    );
    let g_expr = SymbolExpr::poly(g.clone(), g);
    let h_expr = SymbolExpr::poly(h.clone(), g);
    let inv_g = SymbolExpr::with_num(g, XPoly::one(spec), 1);
    let lhs = poisson(&inv_g, &poisson(&inv_g, &h_expr, spec), spec);
    let inner = poisson(&g_expr, &poisson(&g_expr, &h_expr, spec), spec);
    let rhs = SymbolExpr::with_num(g, inner.num, inner.pow + 4);
    lhs.equals(&rhs, spec)
}

/// Random polynomial with bounded degree in x and xi separately.
pub fn random_symbol_poly(
    spec: &VarSpec,
    x_deg: usize,
    xi_deg: usize,
    monomials: usize,
    rng: &mut SmallRng,
) -> XPoly<Rat> {
    let mut p = XPoly::zero(spec);
    for _ in 0..monomials {
        let mut expo = vec![0u8; spec.nvars()];
        for _ in 0..rng.below(x_deg + 1) {
            expo[spec.x_index(rng.below(spec.nx))] += 1;
        }
        for _ in 0..rng.below(xi_deg + 1) {
            expo[spec.xi_index(rng.below(spec.nxi))] += 1;
        }
        p = p.add(&XPoly::monomial(spec, expo, rng.small_rational()));
    }
    p
}

#[cfg(test)]
mod tests {
    use super::*;
    use super::super::xpoly::rat_int;

    fn norm_xi_sq(spec: &VarSpec) -> XPoly<Rat> {
        let mut acc = XPoly::zero(spec);
        for i in 0..spec.nxi {
            let xi = XPoly::<Rat>::var(spec, spec.xi_index(i));
            acc = acc.add(&xi.mul(&xi, spec));
        }
        acc
    }

    #[test]
    fn bracket_canonical_pair() {
        // {x_1, xi_1} = ... the polynomial bracket of xi_1 x_1 with itself
        // vanishes; {|xi|^2, x_1} = -2 xi_1
        let spec = VarSpec::symbols(2, 60);
        let g = norm_xi_sq(&spec);
        let x1 = XPoly::<Rat>::var(&spec, spec.x_index(0));
        let b = poisson_poly(&g, &x1, &spec);
        let xi1 = XPoly::<Rat>::var(&spec, spec.xi_index(0));
        assert_eq!(b, xi1.scale(&rat_int(-2)));
    }

    #[test]
    fn dpb_flat_quadratic() {
        // G = |xi|^2, H = xi_1 x_1
        let spec = VarSpec::symbols(3, 60);
        let g = norm_xi_sq(&spec);
        let x1 = XPoly::<Rat>::var(&spec, spec.x_index(0));
        let xi1 = XPoly::<Rat>::var(&spec, spec.xi_index(0));
        let h = xi1.mul(&x1, &spec);
        assert!(dpb_check(&g, &h, &spec));
    }

    #[test]
    fn dpb_constant_h() {
        let spec = VarSpec::symbols(2, 60);
        let g = norm_xi_sq(&spec);
        let h = XPoly::constant(&spec, rat_int(7));
        let inv_g = SymbolExpr::with_num(&g, XPoly::one(&spec), 1);
        let h_expr = SymbolExpr::poly(h.clone(), &g);
        let inner = poisson(&inv_g, &h_expr, &spec);
        assert!(inner.is_zero());
        assert!(dpb_check(&g, &h, &spec));
    }

    #[test]
    fn dpb_random_trials() {
        // random quadratic G = |xi|^2 + x-perturbation terms, random cubic H
        let spec = VarSpec::symbols(3, 60);
        let mut rng = SmallRng::new(41);
        for trial in 0..5 {
            let mut g = norm_xi_sq(&spec);
            // sparse x-dependent quadratic perturbation of the fiber form
            for _ in 0..3 {
                let xi_i = XPoly::<Rat>::var(&spec, spec.xi_index(rng.below(3)));
                let xi_j = XPoly::<Rat>::var(&spec, spec.xi_index(rng.below(3)));
                let x_k = XPoly::<Rat>::var(&spec, spec.x_index(rng.below(3)));
                let coeff = rng.small_rational();
                g = g.add(&xi_i.mul(&xi_j, &spec).mul(&x_k, &spec).scale(&coeff));
            }
            let h = random_symbol_poly(&spec, 2, 3, 4, &mut rng);
            assert!(dpb_check(&g, &h, &spec), "trial {} failed", trial);
        }
    }
}
