//! Builders for the polynomial systems whose solutions are the stationary
//! configurations: relative equilibria, collinear relative equilibria,
//! self-similar collapse, equilibria, and rigid translation — plus the
//! separation-reciprocal residual used to cross-check solutions against the
//! pairwise form of the stationarity equations.
//!
//! Variable order for the complexified systems is (z_1..z_4, w_1..w_4); the
//! gauge-fixed equilibrium/translating systems use (z_3, z_4) with z_1 = 0,
//! z_2 = 1 substituted.

use num_complex::Complex64;
use serde::Serialize;

use crate::config::{StationaryKind, Tolerances, Vorticities};
use crate::error::{Error, Result};
use crate::poly::{MultiPoly, PolySystem};

const NV: usize = 8;

fn c_re(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

/// Rotation sense of a relative equilibrium in the normalized system.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum LambdaSign {
    Plus,
    Minus,
}

impl LambdaSign {
    pub fn value(self) -> f64 {
        match self {
            LambdaSign::Plus => 1.0,
            LambdaSign::Minus => -1.0,
        }
    }
}

/// Which system a solve ran on; carries the fixed multiplier data.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(tag = "tag", rename_all = "snake_case")]
pub enum SystemKind {
    RelativeEquilibrium { sign: LambdaSign },
    Collinear,
    Collapse { theta: f64 },
    Equilibrium,
    Translating,
    /// The 14-equation separation-reciprocal check (residual only, not solved).
    ZwCheck,
}

impl SystemKind {
    /// The multiplier Λ of V_n = Λ·z_n for this kind (0 where inapplicable).
    pub fn lambda(&self) -> Complex64 {
        match self {
            SystemKind::RelativeEquilibrium { sign } => c_re(sign.value()),
            SystemKind::Collinear => c_re(1.0),
            SystemKind::Collapse { theta } => Complex64::from_polar(1.0, *theta),
            SystemKind::Equilibrium | SystemKind::Translating => c_re(0.0),
            SystemKind::ZwCheck => c_re(1.0),
        }
    }

    /// The configuration kind produced by solving this system.
    pub fn stationary_kind(&self) -> StationaryKind {
        match self {
            SystemKind::RelativeEquilibrium { .. } | SystemKind::Collinear | SystemKind::ZwCheck => {
                StationaryKind::RelativeEquilibrium
            }
            SystemKind::Collapse { .. } => StationaryKind::Collapse,
            SystemKind::Equilibrium => StationaryKind::Equilibrium,
            SystemKind::Translating => StationaryKind::Translating,
        }
    }
}

// ---------------------------------------------------------------------------
// Shared symbols over (z_1..z_4, w_1..w_4)
// ---------------------------------------------------------------------------

/// M_z = ΣΓ_j z_j.
pub fn m_z(g: &Vorticities) -> MultiPoly {
    (0..4).fold(MultiPoly::zero(NV), |p, j| {
        p.add(&MultiPoly::monomial(NV, c_re(g.g(j)), &[(j, 1)]))
    })
}

/// M_w = ΣΓ_j w_j.
pub fn m_w(g: &Vorticities) -> MultiPoly {
    (0..4).fold(MultiPoly::zero(NV), |p, j| {
        p.add(&MultiPoly::monomial(NV, c_re(g.g(j)), &[(j + 4, 1)]))
    })
}

/// I = ΣΓ_j z_j w_j.
pub fn i_zw(g: &Vorticities) -> MultiPoly {
    (0..4).fold(MultiPoly::zero(NV), |p, j| {
        p.add(&MultiPoly::monomial(NV, c_re(g.g(j)), &[(j, 1), (j + 4, 1)]))
    })
}

/// Cubic symbol F_z = ΣΓ_j z_j² w_j.
pub fn f3_z(g: &Vorticities) -> MultiPoly {
    (0..4).fold(MultiPoly::zero(NV), |p, j| {
        p.add(&MultiPoly::monomial(NV, c_re(g.g(j)), &[(j, 2), (j + 4, 1)]))
    })
}

/// Cubic symbol F_w = ΣΓ_j z_j w_j².
pub fn f3_w(g: &Vorticities) -> MultiPoly {
    (0..4).fold(MultiPoly::zero(NV), |p, j| {
        p.add(&MultiPoly::monomial(NV, c_re(g.g(j)), &[(j, 1), (j + 4, 2)]))
    })
}

/// Linear symbol f_z = Σ_{j<k}Γ_jΓ_k(z_j + z_k).
pub fn f1_z(g: &Vorticities) -> MultiPoly {
    let mut p = MultiPoly::zero(NV);
    for j in 0..4 {
        for k in (j + 1)..4 {
            let gg = c_re(g.g(j) * g.g(k));
            p = p
                .add(&MultiPoly::monomial(NV, gg, &[(j, 1)]))
                .add(&MultiPoly::monomial(NV, gg, &[(k, 1)]));
        }
    }
    p
}

/// Linear symbol f_w = Σ_{j<k}Γ_jΓ_k(w_j + w_k).
pub fn f1_w(g: &Vorticities) -> MultiPoly {
    let mut p = MultiPoly::zero(NV);
    for j in 0..4 {
        for k in (j + 1)..4 {
            let gg = c_re(g.g(j) * g.g(k));
            p = p
                .add(&MultiPoly::monomial(NV, gg, &[(j + 4, 1)]))
                .add(&MultiPoly::monomial(NV, gg, &[(k + 4, 1)]));
        }
    }
    p
}

/// Quartic symbol G_z = Σ_j Γ_j w_j Π_{k≠j} z_k.
pub fn g4_z(g: &Vorticities) -> MultiPoly {
    let mut p = MultiPoly::zero(NV);
    for j in 0..4 {
        let mut vars = vec![(j + 4, 1u32)];
        for k in 0..4 {
            if k != j {
                vars.push((k, 1));
            }
        }
        p = p.add(&MultiPoly::monomial(NV, c_re(g.g(j)), &vars));
    }
    p
}

/// Quartic symbol G_w = Σ_j Γ_j z_j Π_{k≠j} w_k.
pub fn g4_w(g: &Vorticities) -> MultiPoly {
    let mut p = MultiPoly::zero(NV);
    for j in 0..4 {
        let mut vars = vec![(j, 1u32)];
        for k in 0..4 {
            if k != j {
                vars.push((k + 4, 1));
            }
        }
        p = p.add(&MultiPoly::monomial(NV, c_re(g.g(j)), &vars));
    }
    p
}

/// Quadratic symbol g_z = Σ_{j<k}Γ_jΓ_k z_l z_m over complementary pairs
/// {j,k} ∪ {l,m} = {1,2,3,4}.
pub fn g2_z(g: &Vorticities) -> MultiPoly {
    let mut p = MultiPoly::zero(NV);
    for j in 0..4 {
        for k in (j + 1)..4 {
            let rest: Vec<usize> = (0..4).filter(|&x| x != j && x != k).collect();
            p = p.add(&MultiPoly::monomial(
                NV,
                c_re(g.g(j) * g.g(k)),
                &[(rest[0], 1), (rest[1], 1)],
            ));
        }
    }
    p
}

/// Quadratic symbol g_w, the w-side of [`g2_z`].
pub fn g2_w(g: &Vorticities) -> MultiPoly {
    let mut p = MultiPoly::zero(NV);
    for j in 0..4 {
        for k in (j + 1)..4 {
            let rest: Vec<usize> = (0..4).filter(|&x| x != j && x != k).collect();
            p = p.add(&MultiPoly::monomial(
                NV,
                c_re(g.g(j) * g.g(k)),
                &[(rest[0] + 4, 1), (rest[1] + 4, 1)],
            ));
        }
    }
    p
}

fn zw_var_names() -> Vec<String> {
    (1..=4)
        .map(|i| format!("z{i}"))
        .chain((1..=4).map(|i| format!("w{i}")))
        .collect()
}

fn zw_collision_factors() -> Vec<MultiPoly> {
    let mut out = Vec::with_capacity(12);
    for base in [0usize, 4] {
        for j in 0..4 {
            for k in (j + 1)..4 {
                out.push(
                    MultiPoly::var(NV, base + j).sub(&MultiPoly::var(NV, base + k)),
                );
            }
        }
    }
    out
}

/// Rotation gauge equation (z_2 − z_1) − (w_2 − w_1).
fn gauge_row() -> MultiPoly {
    MultiPoly::var(NV, 1)
        .sub(&MultiPoly::var(NV, 0))
        .sub(&MultiPoly::var(NV, 5))
        .add(&MultiPoly::var(NV, 4))
}

// ---------------------------------------------------------------------------
// Builders
// ---------------------------------------------------------------------------

/// The normalized relative-equilibrium system at Λ = ±1: eight equations in
/// (z, w) of degrees (1,1,2,1,3,3,4,4), total degree 288.
pub fn build_relative_equilibrium(g: &Vorticities, sign: LambdaSign) -> PolySystem {
    let lam = c_re(sign.value());
    let l = c_re(g.l_total());
    let polys = vec![
        m_z(g),
        m_w(g),
        MultiPoly::constant(NV, l).sub(&i_zw(g).scale(lam)),
        gauge_row(),
        f3_z(g).scale(lam).sub(&f1_z(g)),
        f3_w(g).scale(lam).sub(&f1_w(g)),
        g4_z(g).scale(lam).add(&g2_z(g)),
        g4_w(g).scale(lam).add(&g2_w(g)),
    ];
    let sys = PolySystem::new(
        polys,
        zw_var_names(),
        "translation fixed by M_z = M_w = 0; rotation slice z_2 - z_1 = w_2 - w_1; scale fixed by |Lambda| = 1",
        zw_collision_factors(),
    )
    .expect("relative-equilibrium system is well-formed");
    debug_assert_eq!(sys.degrees(), vec![1, 1, 2, 1, 3, 3, 4, 4]);
    sys
}

/// The self-similar collapse system at Λ = e^{iθ}, Im Λ ≠ 0. Requires L = 0.
pub fn build_collapse(g: &Vorticities, theta: f64, tol: &Tolerances) -> Result<PolySystem> {
    let l = g.l_total();
    if l.abs() > tol.exact_zero * g.max_abs_pair() {
        return Err(Error::Precondition(format!(
            "collapse requires L = 0 (collapse configurations satisfy S = I = L = 0); got L = {l:.3e}"
        )));
    }
    if !(0.0..2.0 * std::f64::consts::PI).contains(&theta)
        || theta.min((theta - std::f64::consts::PI).abs()) < 1e-6
        || (2.0 * std::f64::consts::PI - theta) < 1e-6
    {
        return Err(Error::Precondition(format!(
            "collapse multiplier must have Im Lambda != 0: theta = {theta} is on the real axis"
        )));
    }
    let lam = Complex64::from_polar(1.0, theta);
    let lam_bar = lam.conj();
    let polys = vec![
        m_z(g),
        m_w(g),
        i_zw(g),
        gauge_row(),
        f3_z(g).scale(lam_bar).sub(&f1_z(g)),
        f3_w(g).scale(lam).sub(&f1_w(g)),
        g4_z(g).scale(lam_bar).add(&g2_z(g)),
        g4_w(g).scale(lam).add(&g2_w(g)),
    ];
    let sys = PolySystem::new(
        polys,
        zw_var_names(),
        "translation fixed by M_z = M_w = 0; rotation slice z_2 - z_1 = w_2 - w_1; scale fixed by |Lambda| = 1",
        zw_collision_factors(),
    )
    .expect("collapse system is well-formed");
    debug_assert_eq!(sys.degrees(), vec![1, 1, 2, 1, 3, 3, 4, 4]);
    Ok(sys)
}

/// The collinear relative-equilibrium system: the w = z restriction, four
/// equations in (z_1..z_4) of degrees (1,2,3,4), total degree 24.
pub fn build_collinear(g: &Vorticities) -> PolySystem {
    let l = c_re(g.l_total());
    let polys = vec![
        m_z(g).fold_second_half(),
        MultiPoly::constant(4, l).sub(&i_zw(g).fold_second_half()),
        f3_z(g).fold_second_half().sub(&f1_z(g).fold_second_half()),
        g4_z(g).fold_second_half().add(&g2_z(g).fold_second_half()),
    ];
    let mut collision = Vec::with_capacity(6);
    for j in 0..4 {
        for k in (j + 1)..4 {
            collision.push(MultiPoly::var(4, j).sub(&MultiPoly::var(4, k)));
        }
    }
    let sys = PolySystem::new(
        polys,
        (1..=4).map(|i| format!("z{i}")).collect(),
        "w = z substituted; translation fixed by M_z = 0; scale fixed by I = L at Lambda = 1",
        collision,
    )
    .expect("collinear system is well-formed");
    debug_assert_eq!(sys.degrees(), vec![1, 2, 3, 4]);
    sys
}

fn gauge2_var_names() -> Vec<String> {
    vec!["z3".into(), "z4".into()]
}

fn gauge2_collision_factors() -> Vec<MultiPoly> {
    let z3 = MultiPoly::var(2, 0);
    let z4 = MultiPoly::var(2, 1);
    let one = MultiPoly::constant(2, c_re(1.0));
    vec![z3.clone(), z4.clone(), z3.sub(&one), z4.sub(&one), z3.sub(&z4)]
}

/// The equilibrium system under the gauge z_1 = 0, z_2 = 1: the cleared
/// numerators of U_3 = 0 and U_4 = 0 in (z_3, z_4), degrees (2,2).
/// U_1 = U_2 = 0 follow from ΣΓ_nU_n = 0 and ΣΓ_n z_n U_n = L = 0 and are
/// re-checked as residuals by the classifier. Requires L = 0.
pub fn build_equilibrium(g: &Vorticities, tol: &Tolerances) -> Result<PolySystem> {
    let l = g.l_total();
    if l.abs() > tol.exact_zero * g.max_abs_pair() {
        return Err(Error::Precondition(format!(
            "equilibria require L = 0; got L = {l:.3e}"
        )));
    }
    let z3 = MultiPoly::var(2, 0);
    let z4 = MultiPoly::var(2, 1);
    let one = MultiPoly::constant(2, c_re(1.0));
    let (g1, g2, g3, g4) = (c_re(g.g(0)), c_re(g.g(1)), c_re(g.g(2)), c_re(g.g(3)));

    // U_3·z_3(z_3−1)(z_3−z_4) = Γ1(z3−1)(z3−z4) + Γ2·z3(z3−z4) + Γ4·z3(z3−1)
    let p3 = z3
        .sub(&one)
        .mul(&z3.sub(&z4))
        .scale(g1)
        .add(&z3.mul(&z3.sub(&z4)).scale(g2))
        .add(&z3.mul(&z3.sub(&one)).scale(g4));
    // U_4·z_4(z_4−1)(z_4−z_3) = Γ1(z4−1)(z4−z3) + Γ2·z4(z4−z3) + Γ3·z4(z4−1)
    let p4 = z4
        .sub(&one)
        .mul(&z4.sub(&z3))
        .scale(g1)
        .add(&z4.mul(&z4.sub(&z3)).scale(g2))
        .add(&z4.mul(&z4.sub(&one)).scale(g3));

    let sys = PolySystem::new(
        vec![p3, p4],
        gauge2_var_names(),
        "z_1 = 0, z_2 = 1",
        gauge2_collision_factors(),
    )
    .expect("equilibrium system is well-formed");
    if sys.degrees() != vec![2, 2] {
        return Err(Error::Precondition(
            "degenerate leading coefficients in the equilibrium system".into(),
        ));
    }
    Ok(sys)
}

/// The rigid-translation system under the gauge z_1 = 0, z_2 = 1: the cleared
/// numerators of U_3 − U_1 = 0 and U_4 − U_1 = 0 in (z_3, z_4), degrees (4,4).
/// U_2 − U_1 = 0 follows from ΣΓ_n(U_n − U_1) = −Γ·U_1 with Γ = 0 and is
/// re-checked as a residual. Requires Γ = 0.
pub fn build_translating(g: &Vorticities, tol: &Tolerances) -> Result<PolySystem> {
    let gamma = g.total();
    if gamma.abs() > tol.exact_zero * g.max_abs() {
        return Err(Error::Precondition(format!(
            "rigid translation requires total vorticity 0; got {gamma:.3e}"
        )));
    }
    let z3 = MultiPoly::var(2, 0);
    let z4 = MultiPoly::var(2, 1);
    let one = MultiPoly::constant(2, c_re(1.0));
    let (g1, g2, g3, g4) = (c_re(g.g(0)), c_re(g.g(1)), c_re(g.g(2)), c_re(g.g(3)));

    // (U_3 − U_1)·z_3(z_3−1)(z_3−z_4)z_4
    //   = (Γ1+Γ3)(z3−1)(z3−z4)z4 + Γ2·z3²(z3−z4)z4 + Γ4·z3²(z3−1)
    let q3 = z3
        .sub(&one)
        .mul(&z3.sub(&z4))
        .mul(&z4)
        .scale(g1 + g3)
        .add(&z3.mul(&z3).mul(&z3.sub(&z4)).mul(&z4).scale(g2))
        .add(&z3.mul(&z3).mul(&z3.sub(&one)).scale(g4));
    // (U_4 − U_1)·z_4(z_4−1)(z_4−z_3)z_3
    //   = (Γ1+Γ4)(z4−1)(z4−z3)z3 + Γ2·z4²(z4−z3)z3 + Γ3·z4²(z4−1)
    let q4 = z4
        .sub(&one)
        .mul(&z4.sub(&z3))
        .mul(&z3)
        .scale(g1 + g4)
        .add(&z4.mul(&z4).mul(&z4.sub(&z3)).mul(&z3).scale(g2))
        .add(&z4.mul(&z4).mul(&z4.sub(&one)).scale(g3));

    let sys = PolySystem::new(
        vec![q3, q4],
        gauge2_var_names(),
        "z_1 = 0, z_2 = 1",
        gauge2_collision_factors(),
    )
    .expect("translating system is well-formed");
    if sys.degrees() != vec![4, 4] {
        return Err(Error::Precondition(
            "degenerate leading coefficients in the translating system".into(),
        ));
    }
    Ok(sys)
}

// ---------------------------------------------------------------------------
// Pairwise field and velocity helpers
// ---------------------------------------------------------------------------

/// U_n = Σ_{j≠n} Γ_j/(z_n − z_j), the holomorphic companion of the velocity
/// field (the physical velocity is V_n = conj(U_n)).
pub fn u_field(z: &[Complex64; 4], g: &Vorticities) -> Result<[Complex64; 4]> {
    let scale = z.iter().fold(1.0_f64, |m, v| m.max(v.norm()));
    let threshold = 1e-12 * scale;
    let mut u = [Complex64::new(0.0, 0.0); 4];
    for n in 0..4 {
        for j in 0..4 {
            if j == n {
                continue;
            }
            let d = z[n] - z[j];
            if d.norm() < threshold {
                return Err(Error::Collision { min_sep: d.norm(), threshold });
            }
            u[n] += c_re(g.g(j)) / d;
        }
    }
    Ok(u)
}

/// The common velocity of a translating solution (z_3, z_4) under the gauge,
/// reported as U_1 so that z(T) = z(0) − i·conj(U_1)·T.
pub fn translating_velocity(z3: Complex64, z4: Complex64, g: &Vorticities) -> Result<Complex64> {
    let z = [Complex64::new(0.0, 0.0), c_re(1.0), z3, z4];
    Ok(u_field(&z, g)?[0])
}

// ---------------------------------------------------------------------------
// Separation-reciprocal residual (the 14-equation pairwise system)
// ---------------------------------------------------------------------------

/// Pair order used for the reciprocal variables: (1,2),(1,3),(1,4),(2,3),(2,4),(3,4).
pub const ZW_PAIRS: [(usize, usize); 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];

/// Homogeneity weights of the 14 residuals under (z,w,Λ,Λ*) →
/// (az, aw, Λ/a², Λ*/a²): residual k scales by a^{weight_k}.
pub const ZW_HOMOGENEITY_WEIGHTS: [i32; 14] =
    [-2, -2, -2, -2, -2, -2, -2, -2, -2, -2, -2, -2, -3, -1];

fn signed(recip: &[Complex64; 6], l: usize, k: usize) -> Complex64 {
    // Signed reciprocal X_lk with X_kl = −X_lk, stored for l<k in pair order.
    let (idx, sign) = if l < k {
        (ZW_PAIRS.iter().position(|&p| p == (l, k)).unwrap(), 1.0)
    } else {
        (ZW_PAIRS.iter().position(|&p| p == (k, l)).unwrap(), -1.0)
    };
    c_re(sign) * recip[idx]
}

/// The bracket B_jk = (Γ_j+Γ_k)·X_jk + Σ_{l≠j,k} Γ_l·(X_lk − X_lj) over
/// signed reciprocals X.
fn bracket(recip: &[Complex64; 6], g: &Vorticities, j: usize, k: usize) -> Complex64 {
    let mut b = c_re(g.g(j) + g.g(k)) * signed(recip, j, k);
    for l in 0..4 {
        if l == j || l == k {
            continue;
        }
        b += c_re(g.g(l)) * (signed(recip, l, k) - signed(recip, l, j));
    }
    b
}

/// The 14 residuals of the pairwise separation-reciprocal system at a point,
/// with Λ and Λ* as independent parameters. Order: the six Z_jk·B^W_jk − Λ*
/// equations, the six W_jk·B^Z_jk − Λ equations, the symmetrized coupling
/// Λ*·B^Z_12 − Λ·B^W_12, and the gauge Z_12 − W_12.
pub fn zw_residuals_raw(
    z: &[Complex64; 4],
    w: &[Complex64; 4],
    lambda: Complex64,
    lambda_star: Complex64,
    g: &Vorticities,
) -> Result<[Complex64; 14]> {
    let scale = z
        .iter()
        .chain(w.iter())
        .fold(1.0_f64, |m, v| m.max(v.norm()));
    let threshold = 1e-12 * scale;

    let mut w_recip = [Complex64::new(0.0, 0.0); 6]; // W_jk = 1/z_jk
    let mut z_recip = [Complex64::new(0.0, 0.0); 6]; // Z_jk = 1/w_jk
    for (i, &(j, k)) in ZW_PAIRS.iter().enumerate() {
        let dz = z[j] - z[k];
        let dw = w[j] - w[k];
        if dz.norm() < threshold || dw.norm() < threshold {
            return Err(Error::Collision {
                min_sep: dz.norm().min(dw.norm()),
                threshold,
            });
        }
        w_recip[i] = c_re(1.0) / dz;
        z_recip[i] = c_re(1.0) / dw;
    }

    let mut out = [Complex64::new(0.0, 0.0); 14];
    for (i, &(j, k)) in ZW_PAIRS.iter().enumerate() {
        out[i] = z_recip[i] * bracket(&w_recip, g, j, k) - lambda_star;
        out[6 + i] = w_recip[i] * bracket(&z_recip, g, j, k) - lambda;
    }
    out[12] = lambda_star * bracket(&z_recip, g, 0, 1) - lambda * bracket(&w_recip, g, 0, 1);
    out[13] = z_recip[0] - w_recip[0];
    Ok(out)
}

/// Max-abs residual of the pairwise system for a configuration with a
/// unit-modulus multiplier (Λ* = conj Λ). Errors on collisions or if the
/// configuration's kind has no unit multiplier.
pub fn zw_residual(cfg: &crate::config::Configuration, g: &Vorticities) -> Result<f64> {
    if (cfg.lambda.norm() - 1.0).abs() > 1e-9 {
        return Err(Error::InvalidArgument(format!(
            "pairwise residual needs |Lambda| = 1; got |Lambda| = {}",
            cfg.lambda.norm()
        )));
    }
    let res = zw_residuals_raw(&cfg.z, &cfg.w, cfg.lambda, cfg.lambda.conj(), g)?;
    Ok(res.iter().map(|v| v.norm()).fold(0.0, f64::max))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn gv(v: [f64; 4]) -> Vorticities {
        Vorticities::new(v).unwrap()
    }
    fn tol() -> Tolerances {
        Tolerances::default()
    }
    fn rand_c(rng: &mut StdRng) -> Complex64 {
        Complex64::new(rng.random_range(-1.5..1.5), rng.random_range(-1.5..1.5))
    }

    #[test]
    fn total_degrees() {
        let g = gv([-2.0, 1.0, 1.0, 1.0]);
        assert_eq!(build_relative_equilibrium(&g, LambdaSign::Plus).total_degree(), 288);
        assert_eq!(build_relative_equilibrium(&g, LambdaSign::Minus).total_degree(), 288);
        assert_eq!(build_collinear(&g).total_degree(), 24);

        let g0 = gv([1.0, 1.0, 1.0, -1.0]);
        let collapse = build_collapse(&g0, std::f64::consts::FRAC_PI_2, &tol()).unwrap();
        assert_eq!(collapse.total_degree(), 288);
        assert_eq!(build_equilibrium(&g0, &tol()).unwrap().total_degree(), 4);

        let gt = gv([1.0, 1.0, 1.0, -3.0]);
        assert_eq!(build_translating(&gt, &tol()).unwrap().total_degree(), 16);
    }

    #[test]
    fn m_z_examples() {
        let g = gv([1.0, 1.0, 1.0, -3.0]);
        let p = m_z(&g);
        let ones = [Complex64::new(1.0, 0.0); 8];
        assert_eq!(p.eval(&ones).norm(), 0.0);
        let zeros = [Complex64::new(0.0, 0.0); 8];
        assert_eq!(p.eval(&zeros).norm(), 0.0);
    }

    #[test]
    fn collinear_at_origin() {
        let g = gv([1.0, 2.0, 3.0, 4.0]);
        let sys = build_collinear(&g);
        let vals = sys.eval_all(&[Complex64::new(0.0, 0.0); 4]);
        assert_eq!(vals[0].norm(), 0.0);
        assert!((vals[1] - Complex64::new(g.l_total(), 0.0)).norm() < 1e-14);
        assert_eq!(vals[2].norm(), 0.0);
        assert_eq!(vals[3].norm(), 0.0);
    }

    #[test]
    fn collapse_preconditions() {
        let t = tol();
        assert!(build_collapse(&gv([1.0, 2.0, 3.0, 4.0]), 1.0, &t).is_err());
        let g0 = gv([1.0, 1.0, 1.0, -1.0]);
        assert!(build_collapse(&g0, std::f64::consts::PI, &t).is_err());
        assert!(build_collapse(&g0, 0.0, &t).is_err());
        assert!(build_collapse(&g0, 1.0, &t).is_ok());
        assert!(build_equilibrium(&gv([1.0, 2.0, 3.0, 4.0]), &t).is_err());
        assert!(build_translating(&gv([1.0, 2.0, 3.0, 4.0]), &t).is_err());
    }

    #[test]
    fn u_field_identities() {
        // ΣΓ_nU_n = 0 and ΣΓ_n z_n U_n = L exactly (rational identities).
        let mut rng = StdRng::seed_from_u64(3);
        for gset in [[1.0, 2.0, 3.0, 4.0], [-2.0, 1.0, 1.0, 1.0], [0.5, -1.25, 2.0, 0.75]] {
            let g = gv(gset);
            for _ in 0..5 {
                let z = [rand_c(&mut rng), rand_c(&mut rng), rand_c(&mut rng), rand_c(&mut rng)];
                let u = u_field(&z, &g).unwrap();
                let s0: Complex64 = (0..4).map(|n| Complex64::new(g.g(n), 0.0) * u[n]).sum();
                let s1: Complex64 =
                    (0..4).map(|n| Complex64::new(g.g(n), 0.0) * z[n] * u[n]).sum();
                assert!(s0.norm() < 1e-10, "sum Gamma U = {s0}");
                assert!((s1 - Complex64::new(g.l_total(), 0.0)).norm() < 1e-9, "sum Gamma z U = {s1}");
            }
        }
    }

    #[test]
    fn equilibrium_clearing_matches_u_field() {
        let g = gv([1.0, 1.0, 1.0, -1.0]);
        let sys = build_equilibrium(&g, &tol()).unwrap();
        let mut rng = StdRng::seed_from_u64(9);
        for _ in 0..10 {
            let z3 = rand_c(&mut rng);
            let z4 = rand_c(&mut rng);
            let z = [Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0), z3, z4];
            let u = u_field(&z, &g).unwrap();
            let one = Complex64::new(1.0, 0.0);
            let cleared3 = u[2] * z3 * (z3 - one) * (z3 - z4);
            let cleared4 = u[3] * z4 * (z4 - one) * (z4 - z3);
            let vals = sys.eval_all(&[z3, z4]);
            assert!((vals[0] - cleared3).norm() < 1e-9 * (1.0 + cleared3.norm()));
            assert!((vals[1] - cleared4).norm() < 1e-9 * (1.0 + cleared4.norm()));
        }
    }

    #[test]
    fn translating_clearing_matches_u_field() {
        let g = gv([1.0, 1.0, 1.0, -3.0]);
        let sys = build_translating(&g, &tol()).unwrap();
        let mut rng = StdRng::seed_from_u64(10);
        for _ in 0..10 {
            let z3 = rand_c(&mut rng);
            let z4 = rand_c(&mut rng);
            let z = [Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0), z3, z4];
            let u = u_field(&z, &g).unwrap();
            let one = Complex64::new(1.0, 0.0);
            let cleared3 = (u[2] - u[0]) * z3 * (z3 - one) * (z3 - z4) * z4;
            let cleared4 = (u[3] - u[0]) * z4 * (z4 - one) * (z4 - z3) * z3;
            let vals = sys.eval_all(&[z3, z4]);
            assert!((vals[0] - cleared3).norm() < 1e-9 * (1.0 + cleared3.norm()));
            assert!((vals[1] - cleared4).norm() < 1e-9 * (1.0 + cleared4.norm()));
        }
    }

    #[test]
    fn lambda_sign_systems_related_by_i_map() {
        // Evaluating the Λ=+1 system at (iz, iw) gives, row by row, a
        // unit-modulus multiple of the Λ=−1 system at (z, w).
        let g = gv([-2.0, 1.0, 1.0, 1.0]);
        let plus = build_relative_equilibrium(&g, LambdaSign::Plus);
        let minus = build_relative_equilibrium(&g, LambdaSign::Minus);
        let mut rng = StdRng::seed_from_u64(4);
        let x: Vec<Complex64> = (0..8).map(|_| rand_c(&mut rng)).collect();
        let ix: Vec<Complex64> = x.iter().map(|v| Complex64::new(0.0, 1.0) * v).collect();
        let vp = plus.eval_all(&ix);
        let vm = minus.eval_all(&x);
        for (a, b) in vp.iter().zip(&vm) {
            assert!(
                (a.norm() - b.norm()).abs() <= 1e-10 * (1.0 + b.norm()),
                "row magnitudes differ: {a} vs {b}"
            );
        }
    }

    #[test]
    fn collapse_theta_mirror_swaps_z_and_w() {
        // The system at 2π−θ evaluated at (w, z) reproduces the system at θ
        // at (z, w) up to row permutation (1↔2, 5↔6, 7↔8) and a sign on the
        // gauge row.
        let g = gv([1.0, 1.0, 1.0, -1.0]);
        let t = tol();
        let theta = 1.1;
        let a = build_collapse(&g, theta, &t).unwrap();
        let b = build_collapse(&g, 2.0 * std::f64::consts::PI - theta, &t).unwrap();
        let mut rng = StdRng::seed_from_u64(6);
        let x: Vec<Complex64> = (0..8).map(|_| rand_c(&mut rng)).collect();
        let swapped: Vec<Complex64> = x[4..8].iter().chain(x[0..4].iter()).copied().collect();
        let va = a.eval_all(&x);
        let vb = b.eval_all(&swapped);
        let perm = [1usize, 0, 2, 3, 5, 4, 7, 6];
        for (i, &pi) in perm.iter().enumerate() {
            let (lhs, rhs) = (va[i], vb[pi]);
            let rhs = if i == 3 { -rhs } else { rhs };
            assert!((lhs - rhs).norm() <= 1e-12 * (1.0 + rhs.norm()), "row {i}: {lhs} vs {rhs}");
        }
    }

    #[test]
    fn zw_scaling_weights() {
        let g = gv([-2.0, 1.0, 1.0, 1.0]);
        let mut rng = StdRng::seed_from_u64(8);
        let z: [Complex64; 4] = std::array::from_fn(|_| rand_c(&mut rng));
        let w: [Complex64; 4] = std::array::from_fn(|_| rand_c(&mut rng));
        let lambda = Complex64::from_polar(1.0, 0.7);
        let lambda_star = Complex64::from_polar(1.0, -0.7);
        let base = zw_residuals_raw(&z, &w, lambda, lambda_star, &g).unwrap();

        let a = 2.0;
        let az: [Complex64; 4] = std::array::from_fn(|i| Complex64::new(a, 0.0) * z[i]);
        let aw: [Complex64; 4] = std::array::from_fn(|i| Complex64::new(a, 0.0) * w[i]);
        let scaled = zw_residuals_raw(
            &az,
            &aw,
            lambda / Complex64::new(a * a, 0.0),
            lambda_star / Complex64::new(a * a, 0.0),
            &g,
        )
        .unwrap();
        for (k, (&s, &b)) in scaled.iter().zip(base.iter()).enumerate() {
            let predicted = b * Complex64::new(a.powi(ZW_HOMOGENEITY_WEIGHTS[k]), 0.0);
            assert!(
                (s - predicted).norm() <= 1e-12 * (1.0 + predicted.norm()),
                "equation {k}: {s} vs predicted {predicted}"
            );
        }
    }

    #[test]
    fn zw_residual_large_at_random_points() {
        // A random non-solution should sit far above the solution threshold.
        let g = gv([-2.0, 1.0, 1.0, 1.0]);
        let mut rng = StdRng::seed_from_u64(12);
        let z: [Complex64; 4] = std::array::from_fn(|_| rand_c(&mut rng));
        let w: [Complex64; 4] = std::array::from_fn(|_| rand_c(&mut rng));
        let cfg = crate::config::Configuration {
            z,
            w,
            lambda: Complex64::new(1.0, 0.0),
            kind: StationaryKind::RelativeEquilibrium,
        };
        let r = zw_residual(&cfg, &g).unwrap();
        assert!(r > 1e-7, "random point residual unexpectedly small: {r}");
    }

    #[test]
    fn zw_residual_rejects_collisions_and_bad_lambda() {
        let g = gv([1.0, 1.0, 1.0, -1.0]);
        let z = [
            Complex64::new(0.0, 0.0),
            Complex64::new(0.0, 0.0),
            Complex64::new(1.0, 0.0),
            Complex64::new(2.0, 0.0),
        ];
        let cfg = crate::config::Configuration::real(
            z,
            Complex64::new(1.0, 0.0),
            StationaryKind::RelativeEquilibrium,
        );
        assert!(matches!(zw_residual(&cfg, &g), Err(Error::Collision { .. })));

        let z2 = [
            Complex64::new(0.0, 0.0),
            Complex64::new(1.0, 0.0),
            Complex64::new(2.0, 0.0),
            Complex64::new(3.0, 0.0),
        ];
        let cfg2 = crate::config::Configuration::real(
            z2,
            Complex64::new(0.0, 0.0),
            StationaryKind::Equilibrium,
        );
        assert!(zw_residual(&cfg2, &g).is_err());
    }
}
