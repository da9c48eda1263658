//! Multivalued square roots and second-degree equations.
//!
//! In the idempotent coordinates `(p, m) = (re + im, re - im)` a square
//! root exists iff both components are non-negative; the generic count is
//! four (all sign pairs), collapsing to two when exactly one component
//! vanishes and to one at zero. The four-sheet structure is indexed by the
//! sign pairs, chosen so positive reals map to `R+`, `R-`, `iR+`, `iR-`
//! on sheets 1 through 4.

use serde::{Deserialize, Serialize};

use crate::number::{HNumber, IdempotentPair, NumberError};

/// Relative tolerance for merging duplicate roots.
pub const DEDUP_REL_TOL: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum RootsError {
    #[error("branch {sheet} unavailable: the root set has {available} elements")]
    BranchUnavailable { sheet: u8, available: usize },
    #[error("leading coefficient {0} is not invertible")]
    NotInvertible(HNumber),
}

impl From<NumberError> for RootsError {
    fn from(e: NumberError) -> Self {
        match e {
            NumberError::NotInvertible(z) | NumberError::OnDiagonal(z) => {
                RootsError::NotInvertible(z)
            }
        }
    }
}

/// A finite set of roots with their branch sign pairs.
///
/// The parallel `branches` list stores `(s+, s-)` as `[1, 1]`, `[-1, -1]`,
/// `[1, -1]` or `[-1, 1]`; `degenerate` marks sets produced from a value
/// with exactly one vanishing idempotent component.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RootSet {
    roots: Vec<HNumber>,
    branches: Vec<[i8; 2]>,
    degenerate: bool,
}

impl RootSet {
    fn new(roots: Vec<HNumber>, branches: Vec<[i8; 2]>, degenerate: bool) -> Self {
        RootSet { roots, branches, degenerate }
    }

    pub fn empty() -> Self {
        RootSet::new(Vec::new(), Vec::new(), false)
    }

    pub fn roots(&self) -> &[HNumber] {
        &self.roots
    }

    pub fn branches(&self) -> &[[i8; 2]] {
        &self.branches
    }

    pub fn degenerate(&self) -> bool {
        self.degenerate
    }

    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    pub fn contains(&self, z: HNumber, tol: f64) -> bool {
        self.roots.iter().any(|&r| (r - z).euclid_norm() <= tol)
    }
}

/// Sheet order: the sign pairs applied to `(sqrt(p), sqrt(m))`.
const SHEET_SIGNS: [[i8; 2]; 4] = [[1, 1], [-1, -1], [1, -1], [-1, 1]];

/// All square roots of `z`.
pub fn sqrt_all(z: HNumber) -> RootSet {
    let IdempotentPair { plus: p, minus: m } = z.into();
    if p < 0.0 || m < 0.0 {
        return RootSet::empty();
    }
    if p == 0.0 && m == 0.0 {
        return RootSet::new(vec![HNumber::ZERO], vec![[1, 1]], false);
    }
    let (sp, sm) = (p.sqrt(), m.sqrt());
    if p == 0.0 || m == 0.0 {
        // One idempotent line collapses; only the sign of the other matters.
        let r = HNumber::from(IdempotentPair::new(sp, sm));
        return RootSet::new(vec![r, -r], vec![[1, 1], [-1, -1]], true);
    }
    let mut roots = Vec::with_capacity(4);
    let mut branches = Vec::with_capacity(4);
    for signs in SHEET_SIGNS {
        let root = HNumber::from(IdempotentPair::new(
            f64::from(signs[0]) * sp,
            f64::from(signs[1]) * sm,
        ));
        roots.push(root);
        branches.push(signs);
    }
    RootSet::new(roots, branches, false)
}

/// The root on one of the four sheets; requires the full four-element set.
pub fn sqrt_branch(z: HNumber, sheet: u8) -> Result<HNumber, RootsError> {
    let set = sqrt_all(z);
    if !(1..=4).contains(&sheet) || set.len() != 4 {
        return Err(RootsError::BranchUnavailable { sheet, available: set.len() });
    }
    Ok(set.roots[sheet as usize - 1])
}

/// Solves `a z^2 + b z + c = 0` over the ring.
///
/// The solution set is `{(-b + r) / 2a : r in sqrt_all(b^2 - 4ac)}` after
/// deduplication; the classical `±` is absorbed by branch negation. Counts
/// follow the discriminant: four when both idempotent components are
/// positive, one when it vanishes, zero when no square root exists, and
/// two in the degenerate one-component case.
pub fn quadratic_solve(a: HNumber, b: HNumber, c: HNumber) -> Result<RootSet, RootsError> {
    let inv_2a = a.scale(2.0).inverse()?;
    let disc = b * b - (a * c).scale(4.0);
    let sqrts = sqrt_all(disc);
    let scale = [a, b, c]
        .iter()
        .map(|w| w.euclid_norm())
        .fold(1.0f64, f64::max);
    let mut out = RootSet::new(Vec::new(), Vec::new(), sqrts.degenerate());
    for (&r, &label) in sqrts.roots.iter().zip(&sqrts.branches) {
        let z = (r - b) * inv_2a;
        if !out.contains(z, DEDUP_REL_TOL * scale.max(z.euclid_norm())) {
            out.roots.push(z);
            out.branches.push(label);
        }
    }
    Ok(out)
}

/// Residual `||a z^2 + b z + c||` used by the substitution checks.
pub fn quadratic_residual(a: HNumber, b: HNumber, c: HNumber, z: HNumber) -> f64 {
    (a * z * z + b * z + c).euclid_norm()
}

/// One stored counterexample polynomial with its full root set.
#[derive(Clone, Debug)]
pub struct WitnessPoly {
    pub a: HNumber,
    pub b: HNumber,
    pub c: HNumber,
    pub roots: RootSet,
}

/// The two stored witnesses against unique degree-n factorization:
/// `z^2 - 1` has four roots, `z^2 + 1` has none.
pub fn no_go_witness() -> (WitnessPoly, WitnessPoly) {
    let build = |c: f64| {
        let (a, b, c) = (HNumber::ONE, HNumber::ZERO, HNumber::from_real(c));
        WitnessPoly { a, b, c, roots: quadratic_solve(a, b, c).expect("a = 1 is invertible") }
    };
    (build(-1.0), build(1.0))
}
