//! Sparse multivariate polynomials over ℂ and square polynomial systems.
//!
//! `MultiPoly` is a canonical sparse representation (sorted exponent vectors,
//! merged terms, no explicit zeros), sufficient for building the degree ≤ 4
//! systems in this crate symbolically. `PolySystem` bundles equations with
//! variable names, a gauge note, and the collision factors whose zeros must be
//! excluded from solution counts; it precompiles a flat term table and the
//! symbolic Jacobian so path tracking can evaluate without allocation.

use num_complex::Complex64;
use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};

/// A term: exponent vector (length = number of variables) and coefficient.
#[derive(Clone, Debug, PartialEq)]
struct Term {
    exps: Vec<u32>,
    coeff: Complex64,
}

/// Sparse multivariate polynomial with complex coefficients.
///
/// Invariants: terms are sorted by exponent vector (lexicographic), exponent
/// vectors are unique, and no stored coefficient is exactly zero.
#[derive(Clone, Debug, PartialEq)]
pub struct MultiPoly {
    nvars: usize,
    terms: Vec<Term>,
}

impl MultiPoly {
    /// The zero polynomial in `nvars` variables.
    pub fn zero(nvars: usize) -> Self {
        MultiPoly { nvars, terms: Vec::new() }
    }

    /// The constant polynomial `c`.
    pub fn constant(nvars: usize, c: Complex64) -> Self {
        let mut m = BTreeMap::new();
        m.insert(vec![0u32; nvars], c);
        Self::from_map(nvars, m)
    }

    /// The single variable `x_i` (0-based).
    pub fn var(nvars: usize, i: usize) -> Self {
        assert!(i < nvars, "variable index {i} out of range for {nvars} variables");
        Self::monomial(nvars, Complex64::new(1.0, 0.0), &[(i, 1)])
    }

    /// A monomial `coeff · Π x_v^e` given sparse `(variable, exponent)` pairs.
    pub fn monomial(nvars: usize, coeff: Complex64, vars: &[(usize, u32)]) -> Self {
        let mut exps = vec![0u32; nvars];
        for &(v, e) in vars {
            assert!(v < nvars, "variable index {v} out of range for {nvars} variables");
            exps[v] += e;
        }
        let mut m = BTreeMap::new();
        m.insert(exps, coeff);
        Self::from_map(nvars, m)
    }

    /// Build from an exponent-vector map, dropping exact-zero coefficients.
    fn from_map(nvars: usize, map: BTreeMap<Vec<u32>, Complex64>) -> Self {
        let terms = map
            .into_iter()
            .filter(|(_, c)| c.re != 0.0 || c.im != 0.0)
            .map(|(exps, coeff)| {
                debug_assert_eq!(exps.len(), nvars);
                Term { exps, coeff }
            })
            .collect();
        MultiPoly { nvars, terms }
    }

    fn to_map(&self) -> BTreeMap<Vec<u32>, Complex64> {
        self.terms.iter().map(|t| (t.exps.clone(), t.coeff)).collect()
    }

    /// Number of variables.
    pub fn nvars(&self) -> usize {
        self.nvars
    }

    /// Number of stored (nonzero) terms.
    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// True if this is the zero polynomial.
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Total degree (0 for the zero polynomial).
    pub fn degree(&self) -> usize {
        self.terms
            .iter()
            .map(|t| t.exps.iter().map(|&e| e as usize).sum())
            .max()
            .unwrap_or(0)
    }

    /// Sum of two polynomials over the same variables.
    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.nvars, other.nvars);
        let mut m = self.to_map();
        for t in &other.terms {
            *m.entry(t.exps.clone()).or_insert(Complex64::new(0.0, 0.0)) += t.coeff;
        }
        Self::from_map(self.nvars, m)
    }

    /// Difference `self − other`.
    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(Complex64::new(-1.0, 0.0)))
    }

    /// Product of two polynomials over the same variables.
    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.nvars, other.nvars);
        let mut m: BTreeMap<Vec<u32>, Complex64> = BTreeMap::new();
        for a in &self.terms {
            for b in &other.terms {
                let exps: Vec<u32> =
                    a.exps.iter().zip(&b.exps).map(|(x, y)| x + y).collect();
                *m.entry(exps).or_insert(Complex64::new(0.0, 0.0)) += a.coeff * b.coeff;
            }
        }
        Self::from_map(self.nvars, m)
    }

    /// Scalar multiple `c · self`.
    pub fn scale(&self, c: Complex64) -> Self {
        if c.re == 0.0 && c.im == 0.0 {
            return Self::zero(self.nvars);
        }
        let terms = self
            .terms
            .iter()
            .map(|t| Term { exps: t.exps.clone(), coeff: t.coeff * c })
            .collect();
        MultiPoly { nvars: self.nvars, terms }
    }

    /// Partial derivative with respect to variable `i`.
    pub fn partial(&self, i: usize) -> Self {
        assert!(i < self.nvars);
        let mut m = BTreeMap::new();
        for t in &self.terms {
            let e = t.exps[i];
            if e == 0 {
                continue;
            }
            let mut exps = t.exps.clone();
            exps[i] = e - 1;
            *m.entry(exps).or_insert(Complex64::new(0.0, 0.0)) +=
                t.coeff * Complex64::new(e as f64, 0.0);
        }
        Self::from_map(self.nvars, m)
    }

    /// Evaluate at a point (length must equal `nvars`).
    pub fn eval(&self, x: &[Complex64]) -> Complex64 {
        assert_eq!(x.len(), self.nvars);
        let mut acc = Complex64::new(0.0, 0.0);
        for t in &self.terms {
            let mut v = t.coeff;
            for (xi, &e) in x.iter().zip(&t.exps) {
                for _ in 0..e {
                    v *= xi;
                }
            }
            acc += v;
        }
        acc
    }

    /// Substitute `w_j := z_j`: fold the second half of the variables onto the
    /// first. Requires an even variable count `2m`; returns a polynomial in the
    /// first `m` variables with exponents added pairwise.
    pub fn fold_second_half(&self) -> Self {
        assert!(self.nvars % 2 == 0, "fold_second_half needs an even variable count");
        let m = self.nvars / 2;
        let mut map: BTreeMap<Vec<u32>, Complex64> = BTreeMap::new();
        for t in &self.terms {
            let mut exps = vec![0u32; m];
            for v in 0..m {
                exps[v] = t.exps[v] + t.exps[v + m];
            }
            *map.entry(exps).or_insert(Complex64::new(0.0, 0.0)) += t.coeff;
        }
        Self::from_map(m, map)
    }

    /// Homogenize to total degree `d` with a fresh last variable: each term
    /// gains the power of the new variable that lifts it to degree `d`.
    /// Requires `d >= self.degree()`.
    pub fn homogenize(&self, d: usize) -> Self {
        let mut terms = Vec::with_capacity(self.terms.len());
        for t in &self.terms {
            let td: u32 = t.exps.iter().sum();
            assert!(
                td as usize <= d,
                "homogenize: term degree {td} exceeds target {d}"
            );
            let mut exps = Vec::with_capacity(self.nvars + 1);
            exps.extend_from_slice(&t.exps);
            exps.push(d as u32 - td);
            terms.push(Term { exps, coeff: t.coeff });
        }
        MultiPoly { nvars: self.nvars + 1, terms }
    }

    /// Iterate terms as `(exponents, coefficient)` pairs in canonical order.
    pub fn terms(&self) -> impl Iterator<Item = (&[u32], Complex64)> {
        self.terms.iter().map(|t| (t.exps.as_slice(), t.coeff))
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, t) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({:.4}{:+.4}i)", t.coeff.re, t.coeff.im)?;
            for (v, &e) in t.exps.iter().enumerate() {
                match e {
                    0 => {}
                    1 => write!(f, "·x{v}")?,
                    _ => write!(f, "·x{v}^{e}")?,
                }
            }
        }
        Ok(())
    }
}

/// Flat term layout for fast repeated evaluation: per term, a coefficient and
/// sparse `(variable, exponent)` pairs indexing a powers table.
#[derive(Clone, Debug)]
struct FlatPoly {
    /// `(coeff, start, len)` into `pairs`.
    terms: Vec<(Complex64, u32, u32)>,
    pairs: Vec<(u16, u16)>,
}

impl FlatPoly {
    fn compile(p: &MultiPoly) -> Self {
        let mut terms = Vec::with_capacity(p.terms.len());
        let mut pairs = Vec::new();
        for t in &p.terms {
            let start = pairs.len() as u32;
            for (v, &e) in t.exps.iter().enumerate() {
                if e > 0 {
                    pairs.push((v as u16, e as u16));
                }
            }
            terms.push((t.coeff, start, pairs.len() as u32 - start));
        }
        FlatPoly { terms, pairs }
    }

    #[inline]
    fn eval(&self, pows: &[Complex64], stride: usize) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for &(c, start, len) in &self.terms {
            let mut v = c;
            let s = start as usize;
            for &(var, e) in &self.pairs[s..s + len as usize] {
                v *= pows[var as usize * stride + e as usize];
            }
            acc += v;
        }
        acc
    }
}

/// Scratch buffers for allocation-free system evaluation.
#[derive(Clone, Debug)]
pub struct EvalWorkspace {
    pows: Vec<Complex64>,
    stride: usize,
}

impl EvalWorkspace {
    /// Powers table sized for `sys`.
    pub fn new(sys: &PolySystem) -> Self {
        let stride = sys.max_exp as usize + 1;
        EvalWorkspace { pows: vec![Complex64::new(0.0, 0.0); sys.nvars * stride], stride }
    }

    #[inline]
    fn fill(&mut self, x: &[Complex64]) {
        let one = Complex64::new(1.0, 0.0);
        for (v, &xv) in x.iter().enumerate() {
            let row = &mut self.pows[v * self.stride..(v + 1) * self.stride];
            row[0] = one;
            for e in 1..row.len() {
                row[e] = row[e - 1] * xv;
            }
        }
    }
}

/// A system of polynomial equations over a shared variable list.
///
/// Not necessarily square; the homotopy solver requires squareness. Collision
/// factors are polynomials whose vanishing marks an excluded (collision)
/// solution, e.g. pairwise differences z_j − z_k.
#[derive(Clone, Debug)]
pub struct PolySystem {
    nvars: usize,
    polys: Vec<MultiPoly>,
    var_names: Vec<String>,
    gauge_note: String,
    collision_factors: Vec<MultiPoly>,
    jacobian: Vec<Vec<MultiPoly>>,
    flat: Vec<FlatPoly>,
    flat_jac: Vec<FlatPoly>,
    max_exp: u32,
}

impl PolySystem {
    /// Bundle equations into a system. All polynomials (equations and collision
    /// factors) must share `var_names.len()` variables.
    pub fn new(
        polys: Vec<MultiPoly>,
        var_names: Vec<String>,
        gauge_note: impl Into<String>,
        collision_factors: Vec<MultiPoly>,
    ) -> Result<Self> {
        let nvars = var_names.len();
        for p in polys.iter().chain(collision_factors.iter()) {
            if p.nvars() != nvars {
                return Err(Error::Dimension { expected: nvars, got: p.nvars() });
            }
        }
        let jacobian: Vec<Vec<MultiPoly>> =
            polys.iter().map(|p| (0..nvars).map(|v| p.partial(v)).collect()).collect();
        let flat = polys.iter().map(FlatPoly::compile).collect();
        let flat_jac = jacobian.iter().flatten().map(FlatPoly::compile).collect();
        let max_exp = polys
            .iter()
            .flat_map(|p| p.terms.iter())
            .flat_map(|t| t.exps.iter().copied())
            .max()
            .unwrap_or(0);
        Ok(PolySystem {
            nvars,
            polys,
            var_names,
            gauge_note: gauge_note.into(),
            collision_factors,
            jacobian,
            flat,
            flat_jac,
            max_exp,
        })
    }

    /// Number of variables.
    pub fn nvars(&self) -> usize {
        self.nvars
    }

    /// Number of equations.
    pub fn num_equations(&self) -> usize {
        self.polys.len()
    }

    /// The equations.
    pub fn polys(&self) -> &[MultiPoly] {
        &self.polys
    }

    /// Variable names in evaluation order.
    pub fn var_names(&self) -> &[String] {
        &self.var_names
    }

    /// Human-readable note describing the gauge/normalization baked in.
    pub fn gauge_note(&self) -> &str {
        &self.gauge_note
    }

    /// Polynomials whose zeros mark collision (excluded) solutions.
    pub fn collision_factors(&self) -> &[MultiPoly] {
        &self.collision_factors
    }

    /// Per-equation total degrees.
    pub fn degrees(&self) -> Vec<usize> {
        self.polys.iter().map(|p| p.degree()).collect()
    }

    /// Product of the equation degrees (the Bézout path count).
    pub fn total_degree(&self) -> usize {
        self.polys.iter().map(|p| p.degree()).product()
    }

    /// Evaluate all equations at `x` (allocating convenience form).
    pub fn eval_all(&self, x: &[Complex64]) -> Vec<Complex64> {
        let mut ws = EvalWorkspace::new(self);
        let mut out = vec![Complex64::new(0.0, 0.0); self.polys.len()];
        self.eval_into(x, &mut out, &mut ws);
        out
    }

    /// Evaluate all equations into `out` using scratch space `ws`.
    pub fn eval_into(&self, x: &[Complex64], out: &mut [Complex64], ws: &mut EvalWorkspace) {
        assert_eq!(x.len(), self.nvars);
        assert_eq!(out.len(), self.polys.len());
        ws.fill(x);
        for (o, fp) in out.iter_mut().zip(&self.flat) {
            *o = fp.eval(&ws.pows, ws.stride);
        }
    }

    /// Jacobian matrix at `x` (allocating convenience form; row-major).
    pub fn jacobian_at(&self, x: &[Complex64]) -> Vec<Vec<Complex64>> {
        let mut ws = EvalWorkspace::new(self);
        let mut flat = vec![Complex64::new(0.0, 0.0); self.polys.len() * self.nvars];
        self.jacobian_into(x, &mut flat, &mut ws);
        flat.chunks(self.nvars).map(|r| r.to_vec()).collect()
    }

    /// Jacobian at `x` written row-major into `out` (length `neq·nvars`).
    pub fn jacobian_into(&self, x: &[Complex64], out: &mut [Complex64], ws: &mut EvalWorkspace) {
        assert_eq!(x.len(), self.nvars);
        assert_eq!(out.len(), self.polys.len() * self.nvars);
        ws.fill(x);
        for (o, fp) in out.iter_mut().zip(&self.flat_jac) {
            *o = fp.eval(&ws.pows, ws.stride);
        }
    }

    /// The symbolic Jacobian entry ∂p_i/∂x_j.
    pub fn jacobian_poly(&self, i: usize, j: usize) -> &MultiPoly {
        &self.jacobian[i][j]
    }

    /// Max |p_i(x)| over all equations.
    pub fn residual(&self, x: &[Complex64]) -> f64 {
        self.eval_all(x).iter().map(|v| v.norm()).fold(0.0, f64::max)
    }

    /// Min |f(x)| over collision factors; `None` if there are none.
    pub fn min_collision_factor(&self, x: &[Complex64]) -> Option<f64> {
        self.collision_factors
            .iter()
            .map(|p| p.eval(x).norm())
            .min_by(|a, b| a.total_cmp(b))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num::{BigRational, FromPrimitive, Zero};
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn constructor_merges_and_drops_zero_terms() {
        let x = MultiPoly::var(2, 0);
        let sum = x.add(&x); // 2x
        assert_eq!(sum.num_terms(), 1);
        assert_eq!(sum.eval(&[c(3.0, 0.0), c(0.0, 0.0)]), c(6.0, 0.0));
        let zero = sum.sub(&x.scale(c(2.0, 0.0)));
        assert!(zero.is_zero());
        assert_eq!(zero.degree(), 0);
    }

    #[test]
    fn degree_and_eval_basics() {
        // p = x0²·x1 − 3
        let p = MultiPoly::monomial(2, c(1.0, 0.0), &[(0, 2), (1, 1)])
            .add(&MultiPoly::constant(2, c(-3.0, 0.0)));
        assert_eq!(p.degree(), 3);
        assert_eq!(p.eval(&[c(2.0, 0.0), c(3.0, 0.0)]), c(9.0, 0.0));
        assert_eq!(MultiPoly::constant(3, c(5.0, 0.0)).degree(), 0);
    }

    #[test]
    fn product_and_partial() {
        let x = MultiPoly::var(1, 0);
        // (x+1)(x−1) = x² − 1
        let p = x.add(&MultiPoly::constant(1, c(1.0, 0.0)));
        let q = x.sub(&MultiPoly::constant(1, c(1.0, 0.0)));
        let pq = p.mul(&q);
        assert_eq!(pq.eval(&[c(3.0, 0.0)]), c(8.0, 0.0));
        // d/dx (x²−1) = 2x, at 3 → 6
        assert_eq!(pq.partial(0).eval(&[c(3.0, 0.0)]), c(6.0, 0.0));
    }

    #[test]
    fn fold_second_half_substitutes_w_for_z() {
        // p = z0·w0 + w1² in 4 vars (z0,z1,w0,w1) → z0² + z1²
        let p = MultiPoly::monomial(4, c(1.0, 0.0), &[(0, 1), (2, 1)])
            .add(&MultiPoly::monomial(4, c(1.0, 0.0), &[(3, 2)]));
        let q = p.fold_second_half();
        assert_eq!(q.nvars(), 2);
        assert_eq!(q.eval(&[c(2.0, 0.0), c(3.0, 0.0)]), c(13.0, 0.0));
    }

    #[test]
    fn system_total_degree_examples() {
        let degs = [1usize, 1, 2, 1, 3, 3, 4, 4];
        let polys: Vec<MultiPoly> = degs
            .iter()
            .map(|&d| {
                MultiPoly::monomial(8, c(1.0, 0.0), &[(0, d as u32)])
                    .add(&MultiPoly::constant(8, c(-1.0, 0.0)))
            })
            .collect();
        let names = (0..8).map(|i| format!("x{i}")).collect();
        let sys = PolySystem::new(polys, names, "none", vec![]).unwrap();
        assert_eq!(sys.degrees(), degs.to_vec());
        assert_eq!(sys.total_degree(), 288);

        let degs2 = [1usize, 2, 3, 4];
        let polys2: Vec<MultiPoly> = degs2
            .iter()
            .map(|&d| MultiPoly::monomial(4, c(1.0, 0.0), &[(0, d as u32)]))
            .collect();
        let names2 = (0..4).map(|i| format!("z{i}")).collect();
        let sys2 = PolySystem::new(polys2, names2, "none", vec![]).unwrap();
        assert_eq!(sys2.total_degree(), 24);
    }

    #[test]
    fn compiled_eval_matches_direct_eval() {
        let mut rng = StdRng::seed_from_u64(11);
        for _ in 0..20 {
            let nv = rng.random_range(1..=8);
            let p = random_poly(&mut rng, nv, 4, 12);
            let q = random_poly(&mut rng, nv, 3, 9);
            let sys = PolySystem::new(
                vec![p.clone(), q.clone()],
                (0..nv).map(|i| format!("x{i}")).collect(),
                "none",
                vec![],
            )
            .unwrap();
            let x: Vec<Complex64> =
                (0..nv).map(|_| c(rng.random_range(-2.0..2.0), rng.random_range(-2.0..2.0))).collect();
            let out = sys.eval_all(&x);
            assert!((out[0] - p.eval(&x)).norm() < 1e-12);
            assert!((out[1] - q.eval(&x)).norm() < 1e-12);
        }
    }

    /// Exact complex rational: (re, im) as big rationals.
    #[derive(Clone)]
    struct ExactC(BigRational, BigRational);

    impl ExactC {
        fn from_c(z: Complex64) -> Self {
            ExactC(
                BigRational::from_f64(z.re).expect("finite"),
                BigRational::from_f64(z.im).expect("finite"),
            )
        }
        fn zero() -> Self {
            ExactC(BigRational::zero(), BigRational::zero())
        }
        fn add(&self, o: &Self) -> Self {
            ExactC(&self.0 + &o.0, &self.1 + &o.1)
        }
        fn mul(&self, o: &Self) -> Self {
            ExactC(&self.0 * &o.0 - &self.1 * &o.1, &self.0 * &o.1 + &self.1 * &o.0)
        }
        fn to_c(&self) -> Complex64 {
            use num::ToPrimitive;
            c(self.0.to_f64().unwrap(), self.1.to_f64().unwrap())
        }
    }

    fn random_poly(rng: &mut StdRng, nvars: usize, max_deg: u32, nterms: usize) -> MultiPoly {
        let mut p = MultiPoly::zero(nvars);
        for _ in 0..nterms {
            let mut budget = max_deg;
            let mut vars = Vec::new();
            for v in 0..nvars {
                if budget == 0 {
                    break;
                }
                let e = rng.random_range(0..=budget.min(2));
                if e > 0 {
                    vars.push((v, e));
                    budget -= e;
                }
            }
            let coeff = c(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0));
            p = p.add(&MultiPoly::monomial(nvars, coeff, &vars));
        }
        p
    }

    #[test]
    fn eval_matches_exact_rational_arithmetic() {
        // Independent oracle: recompute term-by-term in exact rational
        // arithmetic (f64 inputs are exact dyadic rationals).
        let mut rng = StdRng::seed_from_u64(20260823);
        for _ in 0..10 {
            let nvars = rng.random_range(1..=8);
            let p = random_poly(&mut rng, nvars, 3, 20);
            let x: Vec<Complex64> = (0..nvars)
                .map(|_| c(rng.random_range(-2.0..2.0), rng.random_range(-2.0..2.0)))
                .collect();
            let approx = p.eval(&x);

            let xe: Vec<ExactC> = x.iter().map(|&xi| ExactC::from_c(xi)).collect();
            let mut exact = ExactC::zero();
            for (exps, coeff) in p.terms() {
                let mut term = ExactC::from_c(coeff);
                for (v, &e) in exps.iter().enumerate() {
                    for _ in 0..e {
                        term = term.mul(&xe[v]);
                    }
                }
                exact = exact.add(&term);
            }
            let reference = exact.to_c();
            let scale = reference.norm().max(1.0);
            assert!(
                (approx - reference).norm() <= 1e-12 * scale,
                "eval mismatch: {approx} vs exact {reference}"
            );
        }
    }

    #[test]
    fn jacobian_matches_finite_differences() {
        let mut rng = StdRng::seed_from_u64(5);
        let nv = 4;
        let polys: Vec<MultiPoly> = (0..nv).map(|_| random_poly(&mut rng, nv, 4, 10)).collect();
        let sys = PolySystem::new(
            polys.clone(),
            (0..nv).map(|i| format!("x{i}")).collect(),
            "none",
            vec![],
        )
        .unwrap();
        let x: Vec<Complex64> =
            (0..nv).map(|_| c(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))).collect();
        let jac = sys.jacobian_at(&x);
        let h = 1e-6;
        for i in 0..nv {
            for j in 0..nv {
                let mut xp = x.clone();
                let mut xm = x.clone();
                xp[j] += c(h, 0.0);
                xm[j] -= c(h, 0.0);
                let fd = (polys[i].eval(&xp) - polys[i].eval(&xm)) / c(2.0 * h, 0.0);
                let tol = 1e-6 * (1.0 + jac[i][j].norm());
                assert!(
                    (jac[i][j] - fd).norm() <= tol,
                    "J[{i}][{j}] = {} vs fd {}",
                    jac[i][j],
                    fd
                );
            }
        }
    }

    #[test]
    fn dimension_mismatch_rejected() {
        let p = MultiPoly::var(3, 0);
        let err = PolySystem::new(vec![p], vec!["x".into(), "y".into()], "none", vec![]);
        assert!(err.is_err());
    }

    #[test]
    fn homogenize_scales_by_degree() {
        // p(x, y) = x^2·y + 3x − 1, degree 3. Its degree-3 homogenization q in
        // (x, y, h) satisfies q(λx, λy, λh) = λ^3 q(x, y, h) and q(x, y, 1) = p.
        let x = MultiPoly::var(2, 0);
        let y = MultiPoly::var(2, 1);
        let p = x
            .mul(&x)
            .mul(&y)
            .add(&x.scale(c(3.0, 0.0)))
            .sub(&MultiPoly::constant(2, c(1.0, 0.0)));
        let q = p.homogenize(3);
        assert_eq!(q.nvars(), 3);
        assert_eq!(q.degree(), 3);
        let pt = [c(0.7, -0.3), c(-1.2, 0.5), c(0.4, 0.9)];
        let lam = c(1.3, -0.8);
        let scaled: Vec<Complex64> = pt.iter().map(|v| v * lam).collect();
        let lhs = q.eval(&scaled);
        let rhs = lam * lam * lam * q.eval(&pt);
        assert!((lhs - rhs).norm() <= 1e-12 * rhs.norm());
        let affine = [pt[0], pt[1], c(1.0, 0.0)];
        assert!((q.eval(&affine) - p.eval(&pt[..2])).norm() <= 1e-14);
    }
}
