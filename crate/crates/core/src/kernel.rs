//! Membership in `ker Θ_φ`, kernel lifts of transvections, and the
//! structure of the kernel in the two parity regimes.

use num_bigint::BigInt;
use num_traits::One;
use serde::Serialize;

use crate::bruteforce::{kernel_order_mod2, CountMethod};
use crate::error::{Error, Result};
use crate::framing::{arf_of_form, parity_p, spin_form, Framing, QForm};
use crate::lattice::AbsVec;
use crate::matrix::IntMatrix;
use crate::paut::{compose, transvection, PAutElem};
use crate::theta::theta;

pub fn kernel_test(a: &PAutElem, f: &Framing) -> Result<bool> {
    Ok(theta(a, f)?.is_zero())
}

/// A kernel element whose absolute part is the transvection `T_v`.
///
/// When `P(v) = 1` the twist is repaired by the point-push `(I, M)` with
/// `M e_j = v` for the lowest `j ≥ 2` with `κ_j` odd.
pub fn lift_transvection(v: &AbsVec, f: &Framing) -> Result<PAutElem> {
    let spec = f.spec();
    if v.len() != spec.abs_dim() {
        return Err(Error::DimensionMismatch {
            what: "absolute vector",
            expected: spec.abs_dim(),
            got: v.len(),
        });
    }
    if !v.is_primitive() {
        return Err(Error::NotPrimitive);
    }
    let t = PAutElem::from_symplectic(spec, transvection(v, &BigInt::one()))?;
    if parity_p(f, v) == 0 {
        return Ok(t);
    }
    let j = (2..=spec.n())
        .find(|&j| spec.kappa_at(j) % 2 != 0)
        .ok_or(Error::NoLiftExists)?;
    let mut m = IntMatrix::zeros(spec.abs_dim(), spec.n() - 1);
    for (r, vr) in v.coords().iter().enumerate() {
        m[(r, j - 2)] = vr.clone();
    }
    let lift = compose(&PAutElem::rel_aut(spec, m)?, &t)?;
    assert!(kernel_test(&lift, f)?, "point-push repair must land in the kernel");
    Ok(lift)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "regime", rename_all = "lowercase")]
pub enum Regime {
    /// Every `κ_i` even: the kernel is `Sp(2g, ℤ)[q] ⋉ RelAut`.
    Even { q: QFormData, arf: u8 },
    /// Some `κ_i` odd: the kernel surjects onto `Sp(2g, ℤ)` with kernel
    /// `ker v_κ*`.
    Odd { v_bar: Vec<u8> },
}

/// Basis values of a quadratic form, for reporting.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QFormData {
    pub qx: Vec<u8>,
    pub qy: Vec<u8>,
}

impl From<&QForm> for QFormData {
    fn from(q: &QForm) -> Self {
        Self { qx: q.qx(), qy: q.qy() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StructureReport {
    #[serde(flatten)]
    pub regime: Regime,
    pub gcd: i64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mod2_kernel_order: Option<u128>,
}

/// Regime data, with the mod-2 kernel order for `g ≤ 3`, `n ≤ 3`.
pub fn structure_report(f: &Framing) -> StructureReport {
    structure_report_with(f, true)
}

pub fn structure_report_with(f: &Framing, count: bool) -> StructureReport {
    let spec = f.spec();
    let regime = match spin_form(f) {
        Ok(q) => Regime::Even {
            q: QFormData::from(&q),
            arf: arf_of_form(&q),
        },
        Err(_) => Regime::Odd {
            v_bar: spec.v_kappa_mod2(),
        },
    };
    let mod2_kernel_order = if count {
        kernel_order_mod2(f, CountMethod::Histogram).ok()
    } else {
        None
    };
    StructureReport {
        regime,
        gcd: spec.kappa_gcd(),
        mod2_kernel_order,
    }
}
