//! Vorticity vectors, stationary-configuration records, and tolerance knobs.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};

/// The four vortex strengths Γ_1..Γ_4. All entries finite and nonzero.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Vorticities([f64; 4]);

impl Vorticities {
    pub fn new(g: [f64; 4]) -> Result<Self> {
        for (i, &gi) in g.iter().enumerate() {
            if !gi.is_finite() {
                return Err(Error::InvalidVorticity(format!("Γ_{} is not finite", i + 1)));
            }
            if gi == 0.0 {
                return Err(Error::InvalidVorticity(format!("Γ_{} is zero", i + 1)));
            }
        }
        Ok(Vorticities(g))
    }

    /// Strength Γ_j by 0-based index.
    pub fn g(&self, j: usize) -> f64 {
        self.0[j]
    }

    pub fn as_array(&self) -> [f64; 4] {
        self.0
    }

    /// Total vorticity Γ = ΣΓ_j.
    pub fn total(&self) -> f64 {
        self.0.iter().sum()
    }

    /// Total vortex angular momentum L = Σ_{j<k} Γ_jΓ_k.
    pub fn l_total(&self) -> f64 {
        let g = &self.0;
        let mut l = 0.0;
        for j in 0..4 {
            for k in (j + 1)..4 {
                l += g[j] * g[k];
            }
        }
        l
    }

    /// Largest |Γ_j|.
    pub fn max_abs(&self) -> f64 {
        self.0.iter().fold(0.0_f64, |m, &v| m.max(v.abs()))
    }

    /// Largest |Γ_jΓ_k| over pairs.
    pub fn max_abs_pair(&self) -> f64 {
        let mut m = 0.0_f64;
        for j in 0..4 {
            for k in (j + 1)..4 {
                m = m.max((self.0[j] * self.0[k]).abs());
            }
        }
        m
    }

    /// Relabeled strengths: entry `i` becomes `Γ_{perm[i]}`.
    pub fn permuted(&self, perm: [usize; 4]) -> Self {
        Vorticities([self.0[perm[0]], self.0[perm[1]], self.0[perm[2]], self.0[perm[3]]])
    }
}

/// Which stationary regime a configuration belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum StationaryKind {
    /// Uniform rotation: V_n = Λ·z_n with Λ real.
    RelativeEquilibrium,
    /// Self-similar collapse/expansion: V_n = Λ·z_n with Im Λ ≠ 0.
    Collapse,
    /// All velocities vanish (Λ = 0).
    Equilibrium,
    /// Common nonzero velocity for all vortices.
    Translating,
}

/// A (possibly complexified) stationary configuration.
///
/// `z` holds the positions; `w` the conjugate-side coordinates. For a real
/// (physical) configuration `w_n = conj(z_n)`. `lambda` is the multiplier of
/// the self-similar law V_n = Λ·z_n; it is 0 for equilibria and translating
/// configurations (where the law does not apply) and unit-modulus for
/// relative equilibria and collapse.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct Configuration {
    pub z: [Complex64; 4],
    pub w: [Complex64; 4],
    pub lambda: Complex64,
    pub kind: StationaryKind,
}

impl Configuration {
    /// A real configuration: positions `z`, with `w = conj(z)`.
    pub fn real(z: [Complex64; 4], lambda: Complex64, kind: StationaryKind) -> Self {
        let w = [z[0].conj(), z[1].conj(), z[2].conj(), z[3].conj()];
        Configuration { z, w, lambda, kind }
    }

    /// Coordinate scale: max absolute coordinate, floored at 1.
    pub fn scale(&self) -> f64 {
        let m = self
            .z
            .iter()
            .chain(self.w.iter())
            .fold(0.0_f64, |m, v| m.max(v.norm()));
        m.max(1.0)
    }

    /// M_z = ΣΓ_j z_j.
    pub fn m_z(&self, g: &Vorticities) -> Complex64 {
        (0..4).map(|j| g.g(j) * self.z[j]).sum()
    }

    /// M_w = ΣΓ_j w_j.
    pub fn m_w(&self, g: &Vorticities) -> Complex64 {
        (0..4).map(|j| g.g(j) * self.w[j]).sum()
    }

    /// Angular impulse I = ΣΓ_j z_j w_j (equals ΣΓ_j|z_j|² when real).
    pub fn impulse(&self, g: &Vorticities) -> Complex64 {
        (0..4).map(|j| g.g(j) * self.z[j] * self.w[j]).sum()
    }

    /// S = Γ·I − M_z·M_w.
    pub fn s_value(&self, g: &Vorticities) -> Complex64 {
        g.total() * self.impulse(g) - self.m_z(g) * self.m_w(g)
    }

    /// Minimum pairwise |z_j − z_k|.
    pub fn min_separation_z(&self) -> f64 {
        let mut m = f64::INFINITY;
        for j in 0..4 {
            for k in (j + 1)..4 {
                m = m.min((self.z[j] - self.z[k]).norm());
            }
        }
        m
    }

    /// Minimum pairwise |w_j − w_k|.
    pub fn min_separation_w(&self) -> f64 {
        let mut m = f64::INFINITY;
        for j in 0..4 {
            for k in (j + 1)..4 {
                m = m.min((self.w[j] - self.w[k]).norm());
            }
        }
        m
    }

    /// Max_n |w_n − conj(z_n)|, the defect from being a real configuration.
    pub fn realness_defect(&self) -> f64 {
        (0..4)
            .map(|n| (self.w[n] - self.z[n].conj()).norm())
            .fold(0.0, f64::max)
    }

    /// True when the realness defect is below `tol` relative to scale.
    pub fn is_real(&self, tol: f64) -> bool {
        self.realness_defect() <= tol * self.scale()
    }
}

/// Numeric thresholds used across analysis, classification, and solving.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct Tolerances {
    /// "Exactly zero" tests on user inputs (L = 0, Γ = 0): relative 1e−12.
    pub exact_zero: f64,
    /// Ratio/equality detection on vorticities (diagrams, exceptional sets): 1e−9.
    pub ratio: f64,
    /// Residual acceptance for verified solutions: 1e−8.
    pub residual: f64,
    /// Realness test ‖w − conj(z)‖∞ ≤ realness·scale: 1e−8.
    pub realness: f64,
    /// Collision-factor cutoff |f| ≤ collision·scale: 1e−8.
    pub collision: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            exact_zero: 1e-12,
            ratio: 1e-9,
            residual: 1e-8,
            realness: 1e-8,
            collision: 1e-8,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_zero_and_nonfinite_strengths() {
        assert!(Vorticities::new([0.0, 1.0, 1.0, 1.0]).is_err());
        assert!(Vorticities::new([f64::NAN, 1.0, 1.0, 1.0]).is_err());
        assert!(Vorticities::new([1.0, 1.0, 1.0, -1.0]).is_ok());
    }

    #[test]
    fn totals_examples() {
        let g = Vorticities::new([-2.0, 1.0, 1.0, 1.0]).unwrap();
        assert_eq!(g.total(), 1.0);
        assert_eq!(g.l_total(), -3.0);

        let g = Vorticities::new([1.0, 1.0, 1.0, -1.0]).unwrap();
        assert_eq!(g.total(), 2.0);
        assert_eq!(g.l_total(), 0.0);

        let g = Vorticities::new([1.0, 1.0, 1.0, -3.0]).unwrap();
        assert_eq!(g.total(), 0.0);
        assert_eq!(g.l_total(), -6.0);
    }

    #[test]
    fn scale_is_floored_at_one() {
        let z = [Complex64::new(0.1, 0.0); 4];
        let cfg = Configuration::real(z, Complex64::new(1.0, 0.0), StationaryKind::RelativeEquilibrium);
        assert_eq!(cfg.scale(), 1.0);
    }

    #[test]
    fn real_constructor_gives_zero_defect() {
        let z = [
            Complex64::new(1.0, 2.0),
            Complex64::new(-0.5, 0.25),
            Complex64::new(0.0, -1.0),
            Complex64::new(3.0, 0.0),
        ];
        let cfg = Configuration::real(z, Complex64::new(1.0, 0.0), StationaryKind::RelativeEquilibrium);
        assert_eq!(cfg.realness_defect(), 0.0);
        assert!(cfg.is_real(1e-12));
        // I real and equal to ΣΓ|z|² for real configurations
        let g = Vorticities::new([1.0, 2.0, 0.5, -1.0]).unwrap();
        let i = cfg.impulse(&g);
        let direct: f64 = (0..4).map(|j| g.g(j) * z[j].norm_sqr()).sum();
        assert!((i.re - direct).abs() < 1e-12 && i.im.abs() < 1e-12);
    }

    #[test]
    fn permuted_relabels() {
        let g = Vorticities::new([1.0, 2.0, 3.0, 4.0]).unwrap();
        let p = g.permuted([3, 2, 1, 0]);
        assert_eq!(p.as_array(), [4.0, 3.0, 2.0, 1.0]);
        assert_eq!(p.l_total(), g.l_total());
        assert_eq!(p.total(), g.total());
    }
}
