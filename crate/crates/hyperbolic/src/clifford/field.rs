//! Dirac-type operators on multivector fields sampled over planar grids.

use super::algebra::{CliffordError, Multivector, Signature};
use crate::diff::Field2;

/// Interior node positions paired with the local derivative norm.
pub type NodeResiduals = Vec<((f64, f64), f64)>;

/// Multivector values on a uniform rectangular lattice.
#[derive(Clone, Debug)]
pub struct SampledField {
    sig: Signature,
    x0: f64,
    y0: f64,
    h: f64,
    nx: usize,
    ny: usize,
    values: Vec<Multivector>,
}

impl SampledField {
    /// Samples `f` on the `nx x ny` lattice with spacing `h` from `(x0, y0)`.
    pub fn sample(
        sig: Signature,
        origin: (f64, f64),
        h: f64,
        nx: usize,
        ny: usize,
        f: impl Fn(f64, f64) -> Multivector,
    ) -> Self {
        assert!(h > 0.0 && h.is_finite(), "grid spacing must be positive");
        let mut values = Vec::with_capacity(nx * ny);
        for j in 0..ny {
            for i in 0..nx {
                let v = f(origin.0 + h * i as f64, origin.1 + h * j as f64);
                assert!(*v.signature() == sig, "sampled value departs from the field signature");
                values.push(v);
            }
        }
        SampledField { sig, x0: origin.0, y0: origin.1, h, nx, ny, values }
    }

    pub fn signature(&self) -> &Signature {
        &self.sig
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.nx, self.ny)
    }

    pub fn spacing(&self) -> f64 {
        self.h
    }

    pub fn node_pos(&self, i: usize, j: usize) -> (f64, f64) {
        (self.x0 + self.h * i as f64, self.y0 + self.h * j as f64)
    }

    pub fn value(&self, i: usize, j: usize) -> &Multivector {
        &self.values[j * self.nx + i]
    }

    /// Row-major iteration over `(i, j, value)`.
    pub fn nodes(&self) -> impl Iterator<Item = (usize, usize, &Multivector)> + '_ {
        self.values
            .iter()
            .enumerate()
            .map(move |(k, v)| (k % self.nx, k / self.nx, v))
    }
}

/// The operator applied by [`dirac_apply`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DiracKind {
    /// `D = e_1 d/dx + e_2 d/dy`; needs a two-generator signature.
    Dirac,
    /// `D̄`: as `Dirac` with conjugated basis vectors (sign-flipped).
    DiracAdjoint,
    /// `∂ = d/dx + e_1 d/dy`; the x axis is the scalar direction, so the
    /// signature carries a single generator.
    CauchyFueter,
    /// `∂̄ = d/dx - e_1 d/dy`.
    CauchyFueterAdjoint,
}

/// Applies the operator by central differences on the interior nodes.
///
/// The returned field is trimmed by one node on every side.
pub fn dirac_apply(field: &SampledField, kind: DiracKind) -> Result<SampledField, CliffordError> {
    if field.nx < 3 || field.ny < 3 {
        return Err(CliffordError::GridTooSmall);
    }
    let sig = field.sig.clone();
    let dim = sig.dim();
    let (units, with_scalar_dx): (Vec<Multivector>, bool) = match kind {
        DiracKind::Dirac | DiracKind::DiracAdjoint => {
            if dim != 2 {
                return Err(CliffordError::SignatureMismatch);
            }
            let sign = if kind == DiracKind::DiracAdjoint { -1.0 } else { 1.0 };
            (
                vec![
                    Multivector::generator(sig.clone(), 0).scale(sign),
                    Multivector::generator(sig.clone(), 1).scale(sign),
                ],
                false,
            )
        }
        DiracKind::CauchyFueter | DiracKind::CauchyFueterAdjoint => {
            if dim != 1 {
                return Err(CliffordError::SignatureMismatch);
            }
            let sign = if kind == DiracKind::CauchyFueterAdjoint { -1.0 } else { 1.0 };
            (vec![Multivector::generator(sig.clone(), 0).scale(sign)], true)
        }
    };
    let inv_2h = 1.0 / (2.0 * field.h);
    let (nx, ny) = (field.nx, field.ny);
    let mut values = Vec::with_capacity((nx - 2) * (ny - 2));
    for j in 1..ny - 1 {
        for i in 1..nx - 1 {
            let ddx = field
                .value(i + 1, j)
                .sub(field.value(i - 1, j))?
                .scale(inv_2h);
            let ddy = field
                .value(i, j + 1)
                .sub(field.value(i, j - 1))?
                .scale(inv_2h);
            let out = if with_scalar_dx {
                // Cauchy-Fueter: scalar d/dx plus e_1 d/dy.
                ddx.add(&units[0].geometric_product(&ddy)?)?
            } else {
                units[0]
                    .geometric_product(&ddx)?
                    .add(&units[1].geometric_product(&ddy)?)?
            };
            values.push(out);
        }
    }
    Ok(SampledField {
        sig,
        x0: field.x0 + field.h,
        y0: field.y0 + field.h,
        h: field.h,
        nx: nx - 2,
        ny: ny - 2,
        values,
    })
}

/// Samples `u e0 + v e1` (the vector image of `f`) over the grid and applies
/// the Minkowski-plane Dirac operator; returns interior node residuals.
pub fn hs_analytic_residuals(
    f: &Field2,
    origin: (f64, f64),
    h: f64,
    nx: usize,
    ny: usize,
) -> Result<NodeResiduals, CliffordError> {
    let sig = Signature::g2_hyp();
    let embedded = SampledField::sample(sig.clone(), origin, h, nx, ny, |x, y| {
        Multivector::generator(sig.clone(), 0)
            .scale(f.u(x, y))
            .add(&Multivector::generator(sig.clone(), 1).scale(f.v(x, y)))
            .expect("same signature by construction")
    });
    let nabla = dirac_apply(&embedded, DiracKind::Dirac)?;
    Ok(nabla
        .nodes()
        .map(|(i, j, v)| (nabla.node_pos(i, j), v.coeff_norm()))
        .collect())
}

/// True iff the Minkowski-plane Dirac derivative of the embedded field
/// vanishes (below `tol`) at every interior node.
pub fn hs_analytic_check(
    f: &Field2,
    origin: (f64, f64),
    h: f64,
    nx: usize,
    ny: usize,
    tol: f64,
) -> Result<bool, CliffordError> {
    Ok(hs_analytic_residuals(f, origin, h, nx, ny)?
        .iter()
        .all(|&(_, r)| r.is_finite() && r < tol))
}
