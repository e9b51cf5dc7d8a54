//! Jet tensors and the curvature machinery: Christoffel symbols, curvature,
//! Schouten, Weyl and Cotton tensors, covariant derivatives, Laplacians and
//! divergences, all as exact truncated jets centered at the origin.

use super::rng::SmallRng;
use super::xpoly::{rat, rat_int, Rat, VarSpec, XPoly};
use num_traits::Zero;

/// Dense tensor of jets; component index is row-major over `rank` slots of
/// size n (the manifold dimension).
#[derive(Clone, PartialEq, Debug)]
pub struct Tensor {
    pub n: usize,
    pub rank: usize,
    pub comp: Vec<XPoly<Rat>>,
}

impl Tensor {
    pub fn zeros(spec: &VarSpec, n: usize, rank: usize) -> Self {
        Tensor {
            n,
            rank,
            comp: vec![XPoly::zero(spec); n.pow(rank as u32)],
        }
    }

    pub fn flat_index(&self, idx: &[usize]) -> usize {
        debug_assert_eq!(idx.len(), self.rank);
        let mut flat = 0usize;
        for &i in idx {
            debug_assert!(i < self.n);
            flat = flat * self.n + i;
        }
        flat
    }

    pub fn get(&self, idx: &[usize]) -> &XPoly<Rat> {
        &self.comp[self.flat_index(idx)]
    }

    pub fn set(&mut self, idx: &[usize], value: XPoly<Rat>) {
        let f = self.flat_index(idx);
        self.comp[f] = value;
    }

    pub fn add(&self, rhs: &Tensor) -> Tensor {
        assert_eq!(self.rank, rhs.rank);
        Tensor {
            n: self.n,
            rank: self.rank,
            comp: self
                .comp
                .iter()
                .zip(&rhs.comp)
                .map(|(a, b)| a.add(b))
                .collect(),
        }
    }

    pub fn sub(&self, rhs: &Tensor) -> Tensor {
        assert_eq!(self.rank, rhs.rank);
        Tensor {
            n: self.n,
            rank: self.rank,
            comp: self
                .comp
                .iter()
                .zip(&rhs.comp)
                .map(|(a, b)| a.sub(b))
                .collect(),
        }
    }

    pub fn neg(&self) -> Tensor {
        Tensor {
            n: self.n,
            rank: self.rank,
            comp: self.comp.iter().map(|a| a.neg()).collect(),
        }
    }

    pub fn scale(&self, c: &Rat) -> Tensor {
        Tensor {
            n: self.n,
            rank: self.rank,
            comp: self.comp.iter().map(|a| a.scale(c)).collect(),
        }
    }

    pub fn scale_poly(&self, p: &XPoly<Rat>, spec: &VarSpec) -> Tensor {
        Tensor {
            n: self.n,
            rank: self.rank,
            comp: self.comp.iter().map(|a| a.mul(p, spec)).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.comp.iter().all(|c| c.is_zero())
    }

    /// Values at the origin (all variables zero).
    pub fn at_origin(&self) -> Vec<Rat> {
        self.comp.iter().map(|c| c.constant_term()).collect()
    }

    /// Iterate over all index tuples.
    pub fn indices(&self) -> MultiIndexIter {
        MultiIndexIter::new(self.n, self.rank)
    }
}

pub struct MultiIndexIter {
    n: usize,
    rank: usize,
    next: Option<Vec<usize>>,
}

impl MultiIndexIter {
    pub fn new(n: usize, rank: usize) -> Self {
        MultiIndexIter {
            n,
            rank,
            next: Some(vec![0; rank]),
        }
    }
}

impl Iterator for MultiIndexIter {
    type Item = Vec<usize>;
    fn next(&mut self) -> Option<Vec<usize>> {
        let current = self.next.clone()?;
        let mut bump = current.clone();
        let mut pos = self.rank;
        loop {
            if pos == 0 {
                self.next = None;
                break;
            }
            pos -= 1;
            bump[pos] += 1;
            if bump[pos] < self.n {
                self.next = Some(bump);
                break;
            }
            bump[pos] = 0;
        }
        Some(current)
    }
}

/// Metric jets centered at the origin.
#[derive(Clone, Debug)]
pub struct JetMetric {
    pub spec: VarSpec,
    pub g: Tensor,
}

impl JetMetric {
    pub fn new(spec: VarSpec, g: Tensor) -> Self {
        assert_eq!(g.rank, 2);
        for i in 0..g.n {
            for j in 0..i {
                assert_eq!(
                    g.get(&[i, j]),
                    g.get(&[j, i]),
                    "metric jets must be symmetric"
                );
            }
        }
        let m = JetMetric { spec, g };
        assert!(
            m.positive_definite_at_origin(),
            "metric must be positive definite at the origin"
        );
        m
    }

    pub fn n(&self) -> usize {
        self.g.n
    }

    pub fn flat(spec: VarSpec, n: usize) -> Self {
        let mut g = Tensor::zeros(&spec, n, 2);
        for i in 0..n {
            g.set(&[i, i], XPoly::one(&spec));
        }
        JetMetric::new(spec, g)
    }

    /// Leading principal minors of g(0) are positive.
    fn positive_definite_at_origin(&self) -> bool {
        let n = self.n();
        let g0: Vec<Vec<Rat>> = (0..n)
            .map(|i| (0..n).map(|j| self.g.get(&[i, j]).constant_term()).collect())
            .collect();
        for k in 1..=n {
            let det = det_rat(&g0, k);
            if !num_traits::Signed::is_positive(&det) {
                return false;
            }
        }
        true
    }

    /// First derivatives of the metric vanish at the origin.
    pub fn is_normal_form(&self) -> bool {
        let n = self.n();
        for i in 0..n {
            for j in 0..n {
                for a in 0..n {
                    let d = self
                        .g
                        .get(&[i, j])
                        .derive(self.spec.x_index(a))
                        .constant_term();
                    if !Zero::is_zero(&d) {
                        return false;
                    }
                }
            }
        }
        true
    }
}

fn det_rat(m: &[Vec<Rat>], k: usize) -> Rat {
    // Leibniz over permutations; k <= 6 here
    let mut perm: Vec<usize> = (0..k).collect();
    let mut total = rat_int(0);
    permute(&mut perm, 0, &mut |p, sign| {
        let mut prod = rat_int(sign);
        for (i, &j) in p.iter().enumerate() {
            prod *= m[i][j].clone();
        }
        total += prod;
    });
    total
}

fn permute(perm: &mut Vec<usize>, start: usize, f: &mut impl FnMut(&[usize], i64)) {
    let k = perm.len();
    if start == k {
        // parity by counting inversions
        let mut inv = 0;
        for i in 0..k {
            for j in i + 1..k {
                if perm[i] > perm[j] {
                    inv += 1;
                }
            }
        }
        f(perm, if inv % 2 == 0 { 1 } else { -1 });
        return;
    }
    for i in start..k {
        perm.swap(start, i);
        permute(perm, start + 1, f);
        perm.swap(start, i);
    }
}

/// Determinant of a rank-2 tensor of jets.
pub fn det_tensor(t: &Tensor, spec: &VarSpec) -> XPoly<Rat> {
    let n = t.n;
    let mut perm: Vec<usize> = (0..n).collect();
    let mut total = XPoly::zero(spec);
    permute(&mut perm, 0, &mut |p, sign| {
        let mut prod = XPoly::constant(spec, rat_int(sign));
        for (i, &j) in p.iter().enumerate() {
            prod = prod.mul(t.get(&[i, j]), spec);
        }
        total = total.add(&prod);
    });
    total
}

/// Inverse of a metric-like rank-2 tensor with invertible constant part,
/// by a finite Neumann expansion around the constant-part inverse.
pub fn invert_metric(t: &Tensor, spec: &VarSpec) -> Tensor {
    let n = t.n;
    // constant part and its rational inverse
    let a0: Vec<Vec<Rat>> = (0..n)
        .map(|i| (0..n).map(|j| t.get(&[i, j]).constant_term()).collect())
        .collect();
    let a0_inv = invert_rat_matrix(&a0);
    let mut a0i = Tensor::zeros(spec, n, 2);
    for i in 0..n {
        for j in 0..n {
            a0i.set(&[i, j], XPoly::constant(spec, a0_inv[i][j].clone()));
        }
    }
    // N = t - A0 has no constant part; inverse = sum (-A0^{-1} N)^k A0^{-1}
    let mut a0t = Tensor::zeros(spec, n, 2);
    for i in 0..n {
        for j in 0..n {
            a0t.set(
                &[i, j],
                t.get(&[i, j])
                    .sub(&XPoly::constant(spec, a0[i][j].clone())),
            );
        }
    }
    let m = mat_mul(&a0i, &a0t, spec).neg(); // -A0^{-1} N
    let bound = spec.deg_x + spec.deg_rho;
    let mut acc = a0i.clone();
    let mut pow = a0i.clone();
    for _ in 1..=bound {
        pow = mat_mul(&m, &pow, spec);
        if pow.is_zero() {
            break;
        }
        acc = acc.add(&pow);
    }
    acc
}

fn invert_rat_matrix(a: &[Vec<Rat>]) -> Vec<Vec<Rat>> {
    let n = a.len();
    let mut aug: Vec<Vec<Rat>> = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            for j in 0..n {
                r.push(if i == j { rat_int(1) } else { rat_int(0) });
            }
            r
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n)
            .find(|&r| !aug[r][col].is_zero())
            .expect("singular matrix");
        aug.swap(col, pivot);
        let p = aug[col][col].clone();
        for v in aug[col].iter_mut() {
            *v /= p.clone();
        }
        for r in 0..n {
            if r != col && !aug[r][col].is_zero() {
                let f = aug[r][col].clone();
                for c in 0..2 * n {
                    let sub = f.clone() * aug[col][c].clone();
                    aug[r][c] -= sub;
                }
            }
        }
    }
    aug.into_iter().map(|row| row[n..].to_vec()).collect()
}

fn mat_mul(a: &Tensor, b: &Tensor, spec: &VarSpec) -> Tensor {
    let n = a.n;
    let mut out = Tensor::zeros(spec, n, 2);
    for i in 0..n {
        for j in 0..n {
            let mut acc = XPoly::zero(spec);
            for k in 0..n {
                acc = acc.add(&a.get(&[i, k]).mul(b.get(&[k, j]), spec));
            }
            out.set(&[i, j], acc);
        }
    }
    out
}

/// Christoffel symbols Gamma^k_{ij}, stored with layout [k, i, j].
pub fn christoffel(g: &Tensor, ginv: &Tensor, spec: &VarSpec) -> Tensor {
    let n = g.n;
    let mut gamma = Tensor::zeros(spec, n, 3);
    let half = rat(1, 2);
    for k in 0..n {
        for i in 0..n {
            for j in 0..=i {
                let mut acc = XPoly::zero(spec);
                for l in 0..n {
                    let term = g
                        .get(&[j, l])
                        .derive(spec.x_index(i))
                        .add(&g.get(&[i, l]).derive(spec.x_index(j)))
                        .sub(&g.get(&[i, j]).derive(spec.x_index(l)));
                    acc = acc.add(&ginv.get(&[k, l]).mul(&term, spec));
                }
                let value = acc.scale(&half);
                gamma.set(&[k, i, j], value.clone());
                if i != j {
                    gamma.set(&[k, j, i], value);
                }
            }
        }
    }
    gamma
}

/// Riemann tensor R_{ijk}{}^l = d_i Gamma^l_{jk} - d_j Gamma^l_{ik}
/// + Gamma^l_{im} Gamma^m_{jk} - Gamma^l_{jm} Gamma^m_{ik}; layout [i,j,k,l].
pub fn riemann_up(gamma: &Tensor, spec: &VarSpec) -> Tensor {
    let n = gamma.n;
    let mut r = Tensor::zeros(spec, n, 4);
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            for k in 0..n {
                for l in 0..n {
                    let mut acc = gamma
                        .get(&[l, j, k])
                        .derive(spec.x_index(i))
                        .sub(&gamma.get(&[l, i, k]).derive(spec.x_index(j)));
                    for m in 0..n {
                        acc = acc.add(&gamma.get(&[l, i, m]).mul(gamma.get(&[m, j, k]), spec));
                        acc = acc.sub(&gamma.get(&[l, j, m]).mul(gamma.get(&[m, i, k]), spec));
                    }
                    r.set(&[i, j, k, l], acc);
                }
            }
        }
    }
    r
}

/// Lower the last index: R_{ijkl} = g_{lm} R_{ijk}{}^m.
pub fn lower_last(r_up: &Tensor, g: &Tensor, spec: &VarSpec) -> Tensor {
    let n = r_up.n;
    let mut out = Tensor::zeros(spec, n, 4);
    for idx in Tensor::zeros(spec, n, 4).indices() {
        let (i, j, k, l) = (idx[0], idx[1], idx[2], idx[3]);
        let mut acc = XPoly::zero(spec);
        for m in 0..n {
            acc = acc.add(&g.get(&[l, m]).mul(r_up.get(&[i, j, k, m]), spec));
        }
        out.set(&[i, j, k, l], acc);
    }
    out
}

/// Ricci tensor Ric_{jk} = R_{ijk}{}^i.
pub fn ricci(r_up: &Tensor, spec: &VarSpec) -> Tensor {
    let n = r_up.n;
    let mut out = Tensor::zeros(spec, n, 2);
    for j in 0..n {
        for k in 0..n {
            let mut acc = XPoly::zero(spec);
            for i in 0..n {
                acc = acc.add(r_up.get(&[i, j, k, i]));
            }
            out.set(&[j, k], acc);
        }
    }
    out
}

pub fn trace2(h: &Tensor, ginv: &Tensor, spec: &VarSpec) -> XPoly<Rat> {
    let n = h.n;
    let mut acc = XPoly::zero(spec);
    for i in 0..n {
        for j in 0..n {
            acc = acc.add(&ginv.get(&[i, j]).mul(h.get(&[i, j]), spec));
        }
    }
    acc
}

/// Kulkarni-Nomizu product of symmetric bilinear forms:
/// (a KN b)_{ijkl} = a_{ik} b_{jl} - a_{jk} b_{il} + a_{jl} b_{ik} - a_{il} b_{jk}.
pub fn kulkarni_nomizu(a: &Tensor, b: &Tensor, spec: &VarSpec) -> Tensor {
    let n = a.n;
    let mut out = Tensor::zeros(spec, n, 4);
    for idx in Tensor::zeros(spec, n, 4).indices() {
        let (i, j, k, l) = (idx[0], idx[1], idx[2], idx[3]);
        let t = a
            .get(&[i, k])
            .mul(b.get(&[j, l]), spec)
            .sub(&a.get(&[j, k]).mul(b.get(&[i, l]), spec))
            .add(&a.get(&[j, l]).mul(b.get(&[i, k]), spec))
            .sub(&a.get(&[i, l]).mul(b.get(&[j, k]), spec));
        out.set(&[i, j, k, l], t);
    }
    out
}

/// Covariant derivative of a fully covariant tensor; the new index is LAST:
/// (nabla T)_{i1..ir, m} = d_m T_{i1..ir} - sum_a Gamma^s_{m i_a} T_{..s..}.
pub fn covariant_derivative(t: &Tensor, gamma: &Tensor, spec: &VarSpec) -> Tensor {
    let n = t.n;
    let mut out = Tensor::zeros(spec, n, t.rank + 1);
    for idx in Tensor::zeros(spec, n, t.rank).indices() {
        for m in 0..n {
            let mut acc = t.get(&idx).derive(spec.x_index(m));
            for slot in 0..t.rank {
                for s in 0..n {
                    let mut idx2 = idx.clone();
                    idx2[slot] = s;
                    acc = acc.sub(&gamma.get(&[s, m, idx[slot]]).mul(t.get(&idx2), spec));
                }
            }
            let mut full = idx.clone();
            full.push(m);
            out.set(&full, acc);
        }
    }
    out
}

/// Scalar Laplacian (geometer's sign: sum of plain second derivatives in the
/// flat case): g^{ab}(d_a d_b f - Gamma^s_{ab} d_s f).
pub fn laplacian_scalar(
    f: &XPoly<Rat>,
    ginv: &Tensor,
    gamma: &Tensor,
    spec: &VarSpec,
) -> XPoly<Rat> {
    let n = ginv.n;
    let mut acc = XPoly::zero(spec);
    for a in 0..n {
        for b in 0..n {
            let mut term = f.derive(spec.x_index(a)).derive(spec.x_index(b));
            for s in 0..n {
                term = term.sub(&gamma.get(&[s, a, b]).mul(&f.derive(spec.x_index(s)), spec));
            }
            acc = acc.add(&ginv.get(&[a, b]).mul(&term, spec));
        }
    }
    acc
}

/// Divergence of a symmetric bilinear form: (div h)_k = g^{jm} (nabla h)_{jk,m}.
pub fn divergence_sym2(h: &Tensor, ginv: &Tensor, gamma: &Tensor, spec: &VarSpec) -> Tensor {
    let n = h.n;
    let nh = covariant_derivative(h, gamma, spec);
    let mut out = Tensor::zeros(spec, n, 1);
    for k in 0..n {
        let mut acc = XPoly::zero(spec);
        for j in 0..n {
            for m in 0..n {
                acc = acc.add(&ginv.get(&[j, m]).mul(nh.get(&[j, k, m]), spec));
            }
        }
        out.set(&[k], acc);
    }
    out
}

/// Divergence of a one-form: g^{km} (nabla w)_{k,m}.
pub fn divergence_oneform(w: &Tensor, ginv: &Tensor, gamma: &Tensor, spec: &VarSpec) -> XPoly<Rat> {
    let n = w.n;
    let nw = covariant_derivative(w, gamma, spec);
    let mut acc = XPoly::zero(spec);
    for k in 0..n {
        for m in 0..n {
            acc = acc.add(&ginv.get(&[k, m]).mul(nw.get(&[k, m]), spec));
        }
    }
    acc
}

/// The full curvature package of a jet metric.
pub struct CurvaturePackage {
    pub ginv: Tensor,
    pub gamma: Tensor,
    /// fully covariant curvature R_{ijkl}
    pub r4: Tensor,
    pub ric: Tensor,
    pub scal: XPoly<Rat>,
    pub j: XPoly<Rat>,
    pub schouten: Tensor,
    pub weyl: Tensor,
    pub cotton: Tensor,
}

pub fn curvature_package(m: &JetMetric) -> CurvaturePackage {
    let spec = &m.spec;
    let n = m.n();
    assert!(n >= 3, "Schouten tensor needs dimension >= 3");
    let ginv = invert_metric(&m.g, spec);
    let gamma = christoffel(&m.g, &ginv, spec);
    let r_up = riemann_up(&gamma, spec);
    let r4 = lower_last(&r_up, &m.g, spec);
    let ric = ricci(&r_up, spec);
    let scal = trace2(&ric, &ginv, spec);
    let j = scal.scale(&rat(1, 2 * (n as i64 - 1)));
    // Schouten: P = (Ric - J g)/(n-2)
    let mut schouten = Tensor::zeros(spec, n, 2);
    for i in 0..n {
        for k in 0..n {
            let t = ric
                .get(&[i, k])
                .sub(&m.g.get(&[i, k]).mul(&j, spec))
                .scale(&rat(1, n as i64 - 2));
            schouten.set(&[i, k], t);
        }
    }
    // Weyl: W = R + (P KN g)
    let weyl = r4.add(&kulkarni_nomizu(&schouten, &m.g, spec));
    // Cotton: C_{ijk} = nabla_k P_{ij} - nabla_j P_{ik}
    let np = covariant_derivative(&schouten, &gamma, spec);
    let mut cotton = Tensor::zeros(spec, n, 3);
    for idx in Tensor::zeros(spec, n, 3).indices() {
        let (i, jj, k) = (idx[0], idx[1], idx[2]);
        let t = np.get(&[i, jj, k]).sub(np.get(&[i, k, jj]));
        cotton.set(&[i, jj, k], t);
    }
    CurvaturePackage {
        ginv,
        gamma,
        r4,
        ric,
        scal,
        j,
        schouten,
        weyl,
        cotton,
    }
}

/// A conformally flat metric e^{2 phi} delta; phi must vanish at the origin.
pub fn conf_flat_metric(spec: VarSpec, n: usize, phi: &XPoly<Rat>) -> JetMetric {
    assert!(phi.constant_term().is_zero(), "phi must vanish at the origin");
    let factor = phi.scale(&rat_int(2)).exp_nilpotent(&spec);
    let mut g = Tensor::zeros(&spec, n, 2);
    for i in 0..n {
        g.set(&[i, i], factor.clone());
    }
    JetMetric::new(spec, g)
}

/// Scalar curvature of e^{2 phi} delta by the conformal transformation law:
/// scal = e^{-2 phi} (-2(n-1) Delta_flat phi - (n-1)(n-2) |d phi|^2).
pub fn conf_flat_scal_closed_form(spec: &VarSpec, n: usize, phi: &XPoly<Rat>) -> XPoly<Rat> {
    let mut lap = XPoly::zero(spec);
    let mut grad2 = XPoly::zero(spec);
    for i in 0..n {
        let di = phi.derive(spec.x_index(i));
        lap = lap.add(&di.derive(spec.x_index(i)));
        grad2 = grad2.add(&di.mul(&di, spec));
    }
    let inner = lap
        .scale(&rat_int(-2 * (n as i64 - 1)))
        .add(&grad2.scale(&rat_int(-(n as i64 - 1) * (n as i64 - 2))));
    let factor = phi.scale(&rat_int(-2)).exp_nilpotent(spec);
    factor.mul(&inner, spec)
}

/// Validate the algebraic curvature symmetries of an n^4 array.
pub fn curvature_symmetries_ok(r0: &Tensor) -> bool {
    let n = r0.n;
    for idx in Tensor::zeros(&VarSpec::jets(1, 0), n, 4).indices() {
        let (i, j, k, l) = (idx[0], idx[1], idx[2], idx[3]);
        if r0.get(&[i, j, k, l]).constant_term() != -r0.get(&[j, i, k, l]).constant_term() {
            return false;
        }
        if r0.get(&[i, j, k, l]).constant_term() != -r0.get(&[i, j, l, k]).constant_term() {
            return false;
        }
        if r0.get(&[i, j, k, l]).constant_term() != r0.get(&[k, l, i, j]).constant_term() {
            return false;
        }
        // first Bianchi
        let b = r0.get(&[i, j, k, l]).constant_term()
            + r0.get(&[j, k, i, l]).constant_term()
            + r0.get(&[k, i, j, l]).constant_term();
        if !Zero::is_zero(&b) {
            return false;
        }
    }
    true
}

/// Degree-2 normal-form jets with the prescribed curvature at the origin:
/// g_{ij} = delta_{ij} + (1/3) x_r x_s R_{risj}.
pub fn normal_jets_from_curvature(spec: VarSpec, r0: &Tensor) -> JetMetric {
    assert!(curvature_symmetries_ok(r0), "curvature symmetries violated");
    let n = r0.n;
    let third = rat(1, 3);
    let mut g = Tensor::zeros(&spec, n, 2);
    for i in 0..n {
        for j in 0..n {
            let mut acc = if i == j {
                XPoly::one(&spec)
            } else {
                XPoly::zero(&spec)
            };
            for r in 0..n {
                for s in 0..n {
                    let c = r0.get(&[r, i, s, j]).constant_term() * third.clone();
                    if !Zero::is_zero(&c) {
                        let xr = XPoly::var(&spec, spec.x_index(r));
                        let xs = XPoly::var(&spec, spec.x_index(s));
                        acc = acc.add(&xr.mul(&xs, &spec).scale(&c));
                    }
                }
            }
            g.set(&[i, j], acc);
        }
    }
    JetMetric::new(spec, g)
}

/// Random algebraic curvature tensor as a combination of Kulkarni-Nomizu
/// products of random symmetric forms (symmetrized to restore pair symmetry).
pub fn random_curvature(spec: &VarSpec, n: usize, rng: &mut SmallRng) -> Tensor {
    let h = random_symmetric_matrix(n, rng);
    let k = random_symmetric_matrix(n, rng);
    let mut hm = Tensor::zeros(spec, n, 2);
    let mut km = Tensor::zeros(spec, n, 2);
    for i in 0..n {
        for j in 0..n {
            hm.set(&[i, j], XPoly::constant(spec, h[i][j].clone()));
            km.set(&[i, j], XPoly::constant(spec, k[i][j].clone()));
        }
    }
    let hk = kulkarni_nomizu(&hm, &km, spec);
    let kh = kulkarni_nomizu(&km, &hm, spec);
    hk.add(&kh).scale(&rat(1, 2))
}

pub fn random_symmetric_matrix(n: usize, rng: &mut SmallRng) -> Vec<Vec<Rat>> {
    let mut m = vec![vec![rat_int(0); n]; n];
    for i in 0..n {
        for j in 0..=i {
            let v = rng.small_rational();
            m[i][j] = v.clone();
            m[j][i] = v;
        }
    }
    m
}

/// Random symmetric tensor of polynomial jets up to the given degree.
pub fn random_symmetric_jets(
    spec: &VarSpec,
    n: usize,
    degree: usize,
    rng: &mut SmallRng,
) -> Tensor {
    let mut t = Tensor::zeros(spec, n, 2);
    for i in 0..n {
        for j in 0..=i {
            let p = random_poly(spec, n, degree, rng);
            t.set(&[i, j], p.clone());
            if i != j {
                t.set(&[i, j], p.clone());
                t.set(&[j, i], p);
            }
        }
    }
    t
}

/// Random polynomial in the x variables with total degree <= degree; sparse
/// (a handful of monomials).
pub fn random_poly(spec: &VarSpec, n: usize, degree: usize, rng: &mut SmallRng) -> XPoly<Rat> {
    let mut p = XPoly::zero(spec);
    let monos = 3 + rng.below(3);
    for _ in 0..monos {
        let mut expo = vec![0u8; spec.nvars()];
        let d = rng.below(degree + 1);
        for _ in 0..d {
            let v = rng.below(n);
            expo[spec.x_index(v)] += 1;
        }
        p = p.add(&XPoly::monomial(
            spec,
            expo,
            rng.small_rational(),
        ));
    }
    p
}

/// Normal-derivative law: d_a d_b g_{ij}(0) = (1/3)(R_{aibj} + R_{ajbi})
/// for any metric whose first derivatives vanish at the origin.
pub fn normal_der_check(m: &JetMetric) -> bool {
    if !m.is_normal_form() {
        return false;
    }
    let pkg = curvature_package(m);
    let spec = &m.spec;
    let n = m.n();
    let third = rat(1, 3);
    for a in 0..n {
        for b in 0..n {
            for i in 0..n {
                for j in 0..n {
                    let dd = m
                        .g
                        .get(&[i, j])
                        .derive(spec.x_index(a))
                        .derive(spec.x_index(b))
                        .constant_term();
                    let rr = (pkg.r4.get(&[a, i, b, j]).constant_term()
                        + pkg.r4.get(&[a, j, b, i]).constant_term())
                        * third.clone();
                    if dd != rr {
                        return false;
                    }
                }
            }
        }
    }
    true
}

/// The two origin identities for a symmetric form h on a normal-form metric:
/// sum_{ab} d_a d_a h_{bb} = Lap(tr h) - (2/3) sum h_{ab} R_{cabc} and
/// sum_{ab} d_a d_b h_{ab} = div(div h) + (1/3) sum h_{ab} R_{cabc},
/// together with their sum.
pub fn normal_form_identities_check(m: &JetMetric, h: &Tensor) -> bool {
    assert!(m.is_normal_form(), "metric must be in normal form");
    let spec = &m.spec;
    let n = m.n();
    let pkg = curvature_package(m);

    let mut lhs1 = rat_int(0);
    let mut lhs2 = rat_int(0);
    for a in 0..n {
        for b in 0..n {
            lhs1 += h
                .get(&[b, b])
                .derive(spec.x_index(a))
                .derive(spec.x_index(a))
                .constant_term();
            lhs2 += h
                .get(&[a, b])
                .derive(spec.x_index(a))
                .derive(spec.x_index(b))
                .constant_term();
        }
    }
    // curvature pairing sum_{abc} h_{ab} R_{cabc} at the origin
    let mut pairing = rat_int(0);
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                pairing += h.get(&[a, b]).constant_term()
                    * pkg.r4.get(&[c, a, b, c]).constant_term();
            }
        }
    }
    let tr = trace2(h, &pkg.ginv, spec);
    let lap_tr = laplacian_scalar(&tr, &pkg.ginv, &pkg.gamma, spec).constant_term();
    let div_h = divergence_sym2(h, &pkg.ginv, &pkg.gamma, spec);
    let divdiv = divergence_oneform(&div_h, &pkg.ginv, &pkg.gamma, spec).constant_term();

    let id1 = lhs1 == lap_tr.clone() - rat(2, 3) * pairing.clone();
    let id2 = lhs2 == divdiv.clone() + rat(1, 3) * pairing;
    // combined identity
    let id3 = lhs1 + rat_int(2) * lhs2 == lap_tr + rat_int(2) * divdiv;
    id1 && id2 && id3
}
