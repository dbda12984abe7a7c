//! Vorticity-level analysis: totals, necessary conditions for the stationary
//! regimes, exceptional strength sets, and the singular-diagram compatibility
//! predicates that feed the finiteness certificate.

use serde::Serialize;

use crate::config::{Tolerances, Vorticities};

/// Γ and L for a strength vector.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Totals {
    /// Total vorticity Γ = ΣΓ_j.
    pub gamma: f64,
    /// Total vortex angular momentum L = Σ_{j<k}Γ_jΓ_k.
    pub l: f64,
}

/// Which stationary regimes the strength vector admits at all.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct NecessaryConditions {
    /// Equilibria require L = 0.
    pub equilibria_possible: bool,
    /// Rigid translation requires Γ = 0.
    pub translating_possible: bool,
}

/// Strength sets excluded from (or highlighted by) the finiteness results.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ExceptionalFlags {
    /// Two equal pairs with cross ratio in {√3−2, −√3−2} (note the two values
    /// are reciprocal: (√3−2)·(−√3−2) = 1, both roots of κ² + 4κ + 1 = 0).
    pub exceptional_sqrt3: bool,
    /// Three equal strengths, each −½ of the fourth (e.g. (−2,1,1,1)).
    pub exceptional_minus_half: bool,
}

/// Identifier of a singular-diagram constraint set. Diagrams with identical
/// printed constraints share one identifier.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum DiagramId {
    #[serde(rename = "I")]
    I,
    #[serde(rename = "II")]
    II,
    #[serde(rename = "III_A")]
    IiiA,
    #[serde(rename = "III_B")]
    IiiB,
    #[serde(rename = "III'/IV")]
    IiiPrimeIv,
    #[serde(rename = "V")]
    V,
    #[serde(rename = "VI/IX")]
    ViIx,
    #[serde(rename = "VII")]
    Vii,
    #[serde(rename = "VIII")]
    Viii,
}

/// One satisfied diagram constraint set together with the index assignment
/// that satisfies it (1-based vortex labels).
///
/// Index layout: pair-based diagrams store `[a, b, c, d]` for the two pairs
/// {a,b} and {c,d} (the constraint couples labels within each stored pair);
/// triple-based diagrams store `[a, b, c]`; diagram VIII stores `[a, b, c, d]`
/// with `c` the distinguished label that must equal `Γ_d`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DiagramMatch {
    pub diagram: DiagramId,
    pub indices: Vec<u8>,
}

/// Full analysis report for one strength vector.
#[derive(Clone, Debug, Serialize)]
pub struct VorticityReport {
    pub gammas: [f64; 4],
    pub totals: Totals,
    pub necessary: NecessaryConditions,
    pub exceptional: ExceptionalFlags,
    pub diagram_compat: Vec<DiagramMatch>,
    /// True when no diagram constraint set is satisfiable: every singular
    /// sequence is excluded, so the solver's solution counts are complete.
    pub finiteness_certified: bool,
}

/// Γ and L.
pub fn totals(g: &Vorticities) -> Totals {
    Totals { gamma: g.total(), l: g.l_total() }
}

/// Relative equality |x − y| ≤ tol·max(|x|, |y|); exact zeros compare equal.
fn rel_eq(x: f64, y: f64, tol: f64) -> bool {
    let scale = x.abs().max(y.abs());
    if scale == 0.0 {
        return true;
    }
    (x - y).abs() <= tol * scale
}

/// |sum| ≤ tol·scale for a sum whose terms set the scale.
fn rel_zero(sum: f64, scale: f64, tol: f64) -> bool {
    sum.abs() <= tol * scale.max(f64::MIN_POSITIVE)
}

/// Necessary conditions at the `exact_zero` tolerance.
pub fn necessary_conditions(g: &Vorticities, tol: &Tolerances) -> NecessaryConditions {
    NecessaryConditions {
        equilibria_possible: rel_zero(g.l_total(), g.max_abs_pair(), tol.exact_zero),
        translating_possible: rel_zero(g.total(), g.max_abs(), tol.exact_zero),
    }
}

/// The three ways to split {0,1,2,3} into two unordered pairs.
const PAIR_PARTITIONS: [[usize; 4]; 3] = [[0, 1, 2, 3], [0, 2, 1, 3], [0, 3, 1, 2]];

/// The four 3-element subsets of {0,1,2,3} (each with its complement last).
const TRIPLES: [[usize; 4]; 4] = [[0, 1, 2, 3], [0, 1, 3, 2], [0, 2, 3, 1], [1, 2, 3, 0]];

/// Exceptional strength-set detection at the `ratio` tolerance.
pub fn exceptional_flags(g: &Vorticities, tol: &Tolerances) -> ExceptionalFlags {
    let kappa = 3.0_f64.sqrt() - 2.0;
    let kappa_conj = -(3.0_f64.sqrt()) - 2.0;

    let mut sqrt3 = false;
    for part in PAIR_PARTITIONS {
        let [a, b, c, d] = part;
        if !rel_eq(g.g(a), g.g(b), tol.ratio) || !rel_eq(g.g(c), g.g(d), tol.ratio) {
            continue;
        }
        let ratio = g.g(c) / g.g(a);
        if rel_eq(ratio, kappa, tol.ratio) || rel_eq(ratio, kappa_conj, tol.ratio) {
            sqrt3 = true;
        }
        // The reciprocal pairing is covered because the value set {κ, κ⁻¹}
        // is closed under inversion, but test it explicitly for robustness.
        let inv = g.g(a) / g.g(c);
        if rel_eq(inv, kappa, tol.ratio) || rel_eq(inv, kappa_conj, tol.ratio) {
            sqrt3 = true;
        }
    }

    let mut minus_half = false;
    for t in TRIPLES {
        let [a, b, c, d] = t;
        let equal_triple = rel_eq(g.g(a), g.g(b), tol.ratio) && rel_eq(g.g(b), g.g(c), tol.ratio);
        if equal_triple && rel_eq(g.g(a), -0.5 * g.g(d), tol.ratio) {
            minus_half = true;
        }
    }

    ExceptionalFlags { exceptional_sqrt3: sqrt3, exceptional_minus_half: minus_half }
}

/// Evaluate every diagram constraint set over all index assignments and
/// collect the satisfied ones. Equalities are tested at the `ratio` tolerance.
pub fn diagram_constraints(g: &Vorticities, tol: &Tolerances) -> Vec<DiagramMatch> {
    let t = tol.ratio;
    let gamma = g.total();
    let l = g.l_total();
    let gamma_zero = rel_zero(gamma, g.max_abs(), t);
    let l_zero = rel_zero(l, g.max_abs_pair(), t);
    let mut out = Vec::new();

    let push = |out: &mut Vec<DiagramMatch>, diagram: DiagramId, idx: &[usize]| {
        out.push(DiagramMatch { diagram, indices: idx.iter().map(|&i| i as u8 + 1).collect() });
    };

    for part in PAIR_PARTITIONS {
        let [a, b, c, d] = part;
        let (ga, gb, gc, gd) = (g.g(a), g.g(b), g.g(c), g.g(d));

        // I: Γ_aΓ_b = Γ_cΓ_d, L = 0, Γ ≠ 0, Γ_a+Γ_b ≠ 0, Γ_c+Γ_d ≠ 0
        if rel_eq(ga * gb, gc * gd, t)
            && l_zero
            && !gamma_zero
            && !rel_zero(ga + gb, ga.abs().max(gb.abs()), t)
            && !rel_zero(gc + gd, gc.abs().max(gd.abs()), t)
        {
            push(&mut out, DiagramId::I, &[a, b, c, d]);
        }
        // III_A: equal pair products across the two pairs, Γ ≠ 0
        if rel_eq(ga * gb, gc * gd, t) && !gamma_zero {
            push(&mut out, DiagramId::IiiA, &[a, b, c, d]);
        }
        // III_B: equal strengths within each pair, Γ = 0, L ≠ 0
        if rel_eq(ga, gb, t) && rel_eq(gc, gd, t) && gamma_zero && !l_zero {
            push(&mut out, DiagramId::IiiB, &[a, b, c, d]);
        }
        // III′ and IV: Γ_a+Γ_b = 0, Γ_c+Γ_d = 0, Γ = 0, L ≠ 0
        if rel_zero(ga + gb, ga.abs().max(gb.abs()), t)
            && rel_zero(gc + gd, gc.abs().max(gd.abs()), t)
            && gamma_zero
            && !l_zero
        {
            push(&mut out, DiagramId::IiiPrimeIv, &[a, b, c, d]);
        }
    }

    // II: L = 0, Γ ≠ 0
    if l_zero && !gamma_zero {
        push(&mut out, DiagramId::II, &[]);
    }
    // V: Γ = 0, L ≠ 0
    if gamma_zero && !l_zero {
        push(&mut out, DiagramId::V, &[]);
    }

    for tr in TRIPLES {
        let [a, b, c, d] = tr;
        let (ga, gb, gc, gd) = (g.g(a), g.g(b), g.g(c), g.g(d));
        let recip_sum = 1.0 / ga + 1.0 / gb + 1.0 / gc;
        let recip_scale = (1.0 / ga.abs()).max(1.0 / gb.abs()).max(1.0 / gc.abs());
        let recip_zero = rel_zero(recip_sum, recip_scale, t);

        // VI and IX: 1/Γ_a+1/Γ_b+1/Γ_c = 0, L ≠ 0, Γ ≠ 0
        if recip_zero && !l_zero && !gamma_zero {
            push(&mut out, DiagramId::ViIx, &[a, b, c]);
        }
        // VII: Γ_a+Γ_b+Γ_c = 0, L ≠ 0, Γ ≠ 0
        if rel_zero(ga + gb + gc, ga.abs().max(gb.abs()).max(gc.abs()), t)
            && !l_zero
            && !gamma_zero
        {
            push(&mut out, DiagramId::Vii, &[a, b, c]);
        }
        // VIII: 1/Γ_a+1/Γ_b+1/Γ_c = 0 and Γ_c = Γ_d, L ≠ 0, Γ ≠ 0.
        // The distinguished label c ranges over the triple.
        if recip_zero && !l_zero && !gamma_zero {
            let triple = [a, b, c];
            for ci in 0..3 {
                let cc = triple[ci];
                if rel_eq(g.g(cc), gd, t) {
                    let others: Vec<usize> =
                        triple.iter().copied().filter(|&x| x != cc).collect();
                    push(&mut out, DiagramId::Viii, &[others[0], others[1], cc, d]);
                }
            }
        }
    }

    out
}

/// Run the whole analysis.
pub fn report(g: &Vorticities, tol: &Tolerances) -> VorticityReport {
    let diagram_compat = diagram_constraints(g, tol);
    let finiteness_certified = diagram_compat.is_empty();
    VorticityReport {
        gammas: g.as_array(),
        totals: totals(g),
        necessary: necessary_conditions(g, tol),
        exceptional: exceptional_flags(g, tol),
        diagram_compat,
        finiteness_certified,
    }
}
