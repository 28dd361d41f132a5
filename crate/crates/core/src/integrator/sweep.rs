//! One directional sweep along a grid line.
//!
//! A line holds `n` interior cells plus three ghost cells on each side, in the
//! same layout as a 1D field (cell `i` at index `i + 2`). Face `k` lies between
//! cells `k` and `k + 1`.

use crate::error::{CellIndex, HwenoError};
use crate::flux::{central_corrections, central_corrections_inner, lf_combine, mixed_face_flux, CorrectionStencil, CorrectionVariant, InnerCorrectionStencil};
use crate::hweno::{interpolate_face_minus, interpolate_face_plus, mirrored_stencil, modified_derivative, modified_derivative_with_beta, StencilData};
use crate::mesh::GHOST;
use crate::models::{Axis, ConservationLaw};
use crate::scalar::Real;

use super::SchemeOptions;

/// Inputs copied from the field plus per-line work arrays.
#[derive(Debug, Clone)]
pub struct LineScratch<T, const M: usize> {
    pub u: Vec<[T; M]>,
    /// Derivative along the sweep direction.
    pub along: Vec<[T; M]>,
    /// Derivative across the sweep direction (2D only).
    pub cross: Vec<[T; M]>,
    flux: Vec<[T; M]>,
    hflux: Vec<[T; M]>,
    eta: Vec<[T; M]>,
    fhat: Vec<[T; M]>,
    hhat: Vec<[T; M]>,
    etahat: Vec<[T; M]>,
    beta: Vec<[[T; 3]; M]>,
}

impl<T: Real, const M: usize> LineScratch<T, M> {
    pub fn new() -> Self {
        Self {
            u: Vec::new(),
            along: Vec::new(),
            cross: Vec::new(),
            flux: Vec::new(),
            hflux: Vec::new(),
            eta: Vec::new(),
            fhat: Vec::new(),
            hhat: Vec::new(),
            etahat: Vec::new(),
            beta: Vec::new(),
        }
    }
}

/// Rates and limited derivatives for the `n` interior cells of a line.
#[derive(Debug, Clone, PartialEq)]
pub struct LineOutput<T, const M: usize> {
    pub du: Vec<[T; M]>,
    pub d_along: Vec<[T; M]>,
    pub tilde: Vec<[T; M]>,
    pub d_cross: Vec<[T; M]>,
}

impl<T: Real, const M: usize> LineOutput<T, M> {
    pub fn new() -> Self {
        Self {
            du: Vec::new(),
            d_along: Vec::new(),
            tilde: Vec::new(),
            d_cross: Vec::new(),
        }
    }

    fn reset(&mut self, n: usize, cross: bool) {
        let z = [T::zero(); M];
        self.du.clear();
        self.du.resize(n, z);
        self.d_along.clear();
        self.d_along.resize(n, z);
        self.tilde.clear();
        self.tilde.resize(n, z);
        self.d_cross.clear();
        if cross {
            self.d_cross.resize(n, z);
        }
    }
}

type Interpolated<T, const M: usize> = ([T; M], [T; M], [T; M], [T; M]);

/// Componentwise HWENO interpolation on four consecutive points (cells
/// `k-1..k+2`) giving `(u^-, v^-, u^+, v^+)` at face `k`.
#[inline(always)]
fn interpolate<T: Real, const M: usize>(
    u: &[[T; M]],
    v: &[[T; M]],
    h: T,
    opts: &SchemeOptions<T>,
    mut beta_out: Option<&mut [[T; 3]; M]>,
) -> Interpolated<T, M> {
    let mut um = [T::zero(); M];
    let mut vm = [T::zero(); M];
    let mut up = [T::zero(); M];
    let mut vp = [T::zero(); M];
    for c in 0..M {
        let minus = interpolate_face_minus(
            &StencilData::new([u[0][c], u[1][c], u[2][c]], [v[0][c], v[2][c]], h),
            &opts.weights,
        );
        let plus = interpolate_face_plus(
            &mirrored_stencil([u[1][c], u[2][c], u[3][c]], [v[1][c], v[3][c]], h),
            &opts.weights,
        );
        um[c] = minus.u_face;
        vm[c] = minus.v_face;
        up[c] = plus.u_face;
        vp[c] = plus.v_face;
        if let Some(b) = beta_out.as_deref_mut() {
            b[c] = minus.beta;
        }
    }
    (um, vm, up, vp)
}

fn non_finite(i: usize, what: &'static str) -> (usize, HwenoError) {
    (
        i,
        HwenoError::NonFinite {
            cell: CellIndex::Line(i as isize),
            at: Default::default(),
            what,
        },
    )
}

/// Computes the rates of one line. Errors carry the 1-based cell index along
/// the line.
#[allow(clippy::too_many_arguments)]
pub fn sweep_line<T: Real, const M: usize, L: ConservationLaw<T, M> + ?Sized>(
    model: &L,
    axis: Axis,
    h: T,
    alpha: T,
    opts: &SchemeOptions<T>,
    n: usize,
    has_cross: bool,
    s: &mut LineScratch<T, M>,
    out: &mut LineOutput<T, M>,
) -> Result<(), (usize, HwenoError)> {
    let len = n + 2 * GHOST;
    debug_assert_eq!(s.u.len(), len);
    debug_assert_eq!(s.along.len(), len);
    let z = [T::zero(); M];

    s.flux.clear();
    s.hflux.clear();
    for p in 0..len {
        s.flux.push(model.flux(&s.u[p], axis));
        s.hflux.push(model.jacobian_apply(&s.u[p], &s.along[p], axis));
    }

    // faces 0..=n; face k uses points k+1..k+4
    s.fhat.clear();
    s.fhat.resize(n + 1, z);
    s.hhat.clear();
    s.hhat.resize(n + 1, z);
    s.beta.clear();
    s.beta.resize(n + 2, [[T::zero(); 3]; M]);
    let mut projected = false;
    for k in 0..=n {
        let b = k + 1;
        let basis = if opts.characteristic {
            model
                .characteristic_basis(&s.u[b + 1], &s.u[b + 2], axis, opts.average)
                .map_err(|e| (k.max(1), e))?
        } else {
            None
        };
        let (um, vm, up, vp) = match basis {
            Some(basis) => {
                projected = true;
                let uq: [[T; M]; 4] = std::array::from_fn(|m| basis.to_characteristic(&s.u[b + m]));
                let vq: [[T; M]; 4] = std::array::from_fn(|m| basis.to_characteristic(&s.along[b + m]));
                let (um, vm, up, vp) = interpolate(&uq, &vq, h, opts, None);
                (
                    basis.to_physical(&um),
                    basis.to_physical(&vm),
                    basis.to_physical(&up),
                    basis.to_physical(&vp),
                )
            }
            None => interpolate(&s.u[b..b + 4], &s.along[b..b + 4], h, opts, Some(&mut s.beta[k])),
        };
        let fm = model.flux(&um, axis);
        let fp = model.flux(&up, axis);
        let hm = model.jacobian_apply(&um, &vm, axis);
        let hp = model.jacobian_apply(&up, &vp, axis);
        let f = &s.flux[b..b + 4];
        let hf = &s.hflux[b..b + 4];
        for c in 0..M {
            let (df, dh) = match opts.correction {
                CorrectionVariant::Outer => central_corrections(&CorrectionStencil {
                    f_m1: f[0][c],
                    f_0: f[1][c],
                    f_p1: f[2][c],
                    f_p2: f[3][c],
                    h_m1: hf[0][c],
                    h_p2: hf[3][c],
                    dx: h,
                }),
                CorrectionVariant::Inner => central_corrections_inner(&InnerCorrectionStencil {
                    f_m1: f[0][c],
                    f_0: f[1][c],
                    f_p1: f[2][c],
                    f_p2: f[3][c],
                    h_0: hf[1][c],
                    h_p1: hf[2][c],
                    dx: h,
                }),
            };
            let fh = lf_combine(fm[c], fp[c], um[c], up[c], alpha) + df;
            let hh = lf_combine(hm[c], hp[c], vm[c], vp[c], alpha) + dh;
            if !fh.is_finite() || !hh.is_finite() {
                return Err(non_finite(k.max(1), "numerical flux"));
            }
            s.fhat[k][c] = fh;
            s.hhat[k][c] = hh;
        }
    }

    out.reset(n, has_cross);
    for i in 1..=n {
        for c in 0..M {
            out.du[i - 1][c] = -(s.fhat[i][c] - s.fhat[i - 1][c]) / h;
            out.d_along[i - 1][c] = -(s.hhat[i][c] - s.hhat[i - 1][c]) / h;
        }
    }

    for i in 1..=n {
        let p = i + 2;
        if !opts.limit_derivatives {
            out.tilde[i - 1] = s.along[p];
            continue;
        }
        for c in 0..M {
            let st = StencilData::new(
                [s.u[p - 1][c], s.u[p][c], s.u[p + 1][c]],
                [s.along[p - 1][c], s.along[p + 1][c]],
                h,
            );
            out.tilde[i - 1][c] = if projected {
                modified_derivative(&st, &opts.weights)
            } else {
                // face i's left state came from this same stencil
                modified_derivative_with_beta(&st, &s.beta[i][c], &opts.weights)
            };
        }
    }

    if has_cross {
        s.eta.clear();
        for p in 0..len {
            s.eta.push(model.jacobian_apply(&s.u[p], &s.cross[p], axis));
        }
        s.etahat.clear();
        s.etahat.resize(n + 1, z);
        for k in 0..=n {
            let e = &s.eta[k + 1..k + 5];
            for c in 0..M {
                s.etahat[k][c] = mixed_face_flux(e[0][c], e[1][c], e[2][c], e[3][c]);
            }
        }
        for i in 1..=n {
            for c in 0..M {
                out.d_cross[i - 1][c] = -(s.etahat[i][c] - s.etahat[i - 1][c]) / h;
            }
        }
    }
    Ok(())
}
