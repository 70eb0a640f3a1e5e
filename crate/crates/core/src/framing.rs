//! Framings represented by their winding numbers on the distinguished
//! geometric basis, together with the ℤ/2 data derived from them.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::{AbsVec, PunctVec, SurfaceSpec};
use crate::mod2::{pack_bits, parity, unpack_bits};

/// Winding numbers `φ(x_i)`, `φ(y_i)` and (optionally) doubled arc windings
/// `2φ(a_i)`, `i = 2..n`. The signatures `φ(Δ_i) = −1 − κ_i` come from the
/// surface data.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Framing {
    spec: SurfaceSpec,
    wind_x: Vec<BigInt>,
    wind_y: Vec<BigInt>,
    arc2: Option<Vec<BigInt>>,
}

impl Framing {
    pub fn new(spec: SurfaceSpec, wind_x: Vec<BigInt>, wind_y: Vec<BigInt>, arc2: Option<Vec<BigInt>>) -> Result<Self> {
        let g = spec.g();
        for (what, v) in [("wind_x", &wind_x), ("wind_y", &wind_y)] {
            if v.len() != g {
                return Err(Error::DimensionMismatch {
                    what,
                    expected: g,
                    got: v.len(),
                });
            }
        }
        let arc2 = match arc2 {
            Some(a) if a.is_empty() && spec.n() == 1 => None,
            Some(a) => {
                if a.len() != spec.n() - 1 {
                    return Err(Error::DimensionMismatch {
                        what: "arc2",
                        expected: spec.n() - 1,
                        got: a.len(),
                    });
                }
                if let Some((index, value)) = a.iter().enumerate().find(|(_, v)| v.is_even()) {
                    return Err(Error::EvenArcWinding {
                        index: index + 2,
                        value: i64::try_from(value).unwrap_or(i64::MAX),
                    });
                }
                Some(a)
            }
            None => None,
        };
        Ok(Self {
            spec,
            wind_x,
            wind_y,
            arc2,
        })
    }

    pub fn from_i64(spec: SurfaceSpec, wind_x: &[i64], wind_y: &[i64], arc2: Option<&[i64]>) -> Result<Self> {
        let conv = |v: &[i64]| v.iter().map(|&c| BigInt::from(c)).collect::<Vec<_>>();
        Self::new(spec, conv(wind_x), conv(wind_y), arc2.map(conv))
    }

    /// All curve windings zero; arcs (when `n >= 2`) at winding `½`.
    pub fn zero(spec: SurfaceSpec, with_arcs: bool) -> Self {
        let g = spec.g();
        let arc2 = (with_arcs && spec.n() > 1).then(|| vec![BigInt::from(1); spec.n() - 1]);
        Self {
            wind_x: vec![BigInt::zero(); g],
            wind_y: vec![BigInt::zero(); g],
            arc2,
            spec,
        }
    }

    pub fn spec(&self) -> &SurfaceSpec {
        &self.spec
    }

    pub fn wind_x(&self) -> &[BigInt] {
        &self.wind_x
    }

    pub fn wind_y(&self) -> &[BigInt] {
        &self.wind_y
    }

    pub fn arc2(&self) -> Option<&[BigInt]> {
        self.arc2.as_deref()
    }

    pub fn has_arcs(&self) -> bool {
        self.arc2.is_some()
    }

    /// Winding of absolute basis element `b` in the order `x_1, y_1, …`.
    pub fn basis_winding(&self, b: usize) -> &BigInt {
        if b.is_multiple_of(2) {
            &self.wind_x[b / 2]
        } else {
            &self.wind_y[b / 2]
        }
    }

    /// `φ(Δ_i) = −1 − κ_i`.
    pub fn signature(&self, i: usize) -> i64 {
        -1 - self.spec.kappa_at(i)
    }

    pub(crate) fn set_basis_winding(&mut self, b: usize, w: BigInt) {
        if b.is_multiple_of(2) {
            self.wind_x[b / 2] = w;
        } else {
            self.wind_y[b / 2] = w;
        }
    }

    pub(crate) fn arc2_mut(&mut self) -> Option<&mut Vec<BigInt>> {
        self.arc2.as_mut()
    }

    /// Interleaved absolute windings `(φ(x_1), φ(y_1), …)`.
    pub fn abs_windings(&self) -> Vec<BigInt> {
        (0..self.spec.abs_dim())
            .map(|b| self.basis_winding(b).clone())
            .collect()
    }
}

/// A quadratic refinement of the mod-2 intersection form, recorded by its
/// values on the basis.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct QForm {
    g: usize,
    mask: u64,
}

impl QForm {
    pub fn new(qx: &[u8], qy: &[u8]) -> Self {
        assert_eq!(qx.len(), qy.len());
        let mask = qx.iter().zip(qy).enumerate().fold(0u64, |acc, (i, (&a, &b))| {
            acc | (((a & 1) as u64) << (2 * i)) | (((b & 1) as u64) << (2 * i + 1))
        });
        Self { g: qx.len(), mask }
    }

    /// Values on the basis packed as bits in the order `x_1, y_1, …`.
    pub fn from_mask(g: usize, mask: u64) -> Self {
        let m = if g >= 32 { u64::MAX } else { (1u64 << (2 * g)) - 1 };
        Self { g, mask: mask & m }
    }

    pub fn g(&self) -> usize {
        self.g
    }

    pub fn mask(&self) -> u64 {
        self.mask
    }

    pub fn qx(&self) -> Vec<u8> {
        (0..self.g).map(|i| ((self.mask >> (2 * i)) & 1) as u8).collect()
    }

    pub fn qy(&self) -> Vec<u8> {
        (0..self.g).map(|i| ((self.mask >> (2 * i + 1)) & 1) as u8).collect()
    }

    /// `q(v) = Σ_b v_b q(b) + #{i : v has both x_i and y_i}` mod 2.
    #[inline]
    pub fn eval(&self, v: u64) -> u8 {
        parity(v & self.mask) ^ parity(v & (v >> 1) & 0x5555_5555_5555_5555)
    }
}

/// Basis winding parities `(φ(x_1), …, φ(y_g)) mod 2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct QVector {
    len: usize,
    bits: u64,
}

impl QVector {
    pub fn bits(&self) -> u64 {
        self.bits
    }

    pub fn to_vec(&self) -> Vec<u8> {
        unpack_bits(self.bits, self.len)
    }
}

fn mod2(v: &BigInt) -> u8 {
    v.is_odd() as u8
}

/// Generalized Arf invariant
/// `Σ (φ(x_i)+1)(φ(y_i)+1) + Σ_{i≥2} (φ(a_i)+½)(φ(Δ_i)+1) mod 2`.
pub fn arf(f: &Framing) -> Result<u8> {
    let spec = f.spec();
    let mut acc = (0..spec.g())
        .map(|i| (1 ^ mod2(&f.wind_x[i])) & (1 ^ mod2(&f.wind_y[i])))
        .fold(0u8, |a, t| a ^ t);
    if spec.n() >= 2 {
        let arcs = f.arc2().ok_or(Error::MissingArcData)?;
        acc ^= relative_arf_terms(spec, arcs);
    }
    Ok(acc)
}

/// `Σ_{i≥2} (φ(a_i)+½)(φ(Δ_i)+1) mod 2` with `φ(a_i)+½ = (arc2_i + 1)/2`
/// and `φ(Δ_i)+1 = −κ_i`.
pub(crate) fn relative_arf_terms(spec: &SurfaceSpec, arcs: &[BigInt]) -> u8 {
    arcs.iter()
        .enumerate()
        .map(|(j, a2)| {
            let half: BigInt = (a2 + 1) / 2;
            mod2(&half) & (spec.kappa_at(j + 2).rem_euclid(2) as u8)
        })
        .fold(0u8, |a, t| a ^ t)
}

pub fn q_vector(f: &Framing) -> QVector {
    QVector {
        len: f.spec().abs_dim(),
        bits: pack_bits(&f.abs_windings()),
    }
}

/// The classical spin structure `q(x) = φ(x̃) + 1`; only defined when every
/// `κ_i` is even.
pub fn spin_form(f: &Framing) -> Result<QForm> {
    if !f.spec().all_kappa_even() {
        return Err(Error::SomeKappaOdd);
    }
    Ok(quadratic_extension(f))
}

/// The quadratic form with `q(b) = φ(b) + 1` on basis curves, for any
/// framing.
pub fn quadratic_extension(f: &Framing) -> QForm {
    let spec = f.spec();
    let full = if spec.abs_dim() == 64 {
        u64::MAX
    } else {
        (1u64 << spec.abs_dim()) - 1
    };
    QForm::from_mask(spec.g(), !pack_bits(&f.abs_windings()) & full)
}

/// Winding parity of a puncture-disjoint simple representative of `v`:
/// `P(v) = q_φ(v) + 1`.
pub fn parity_p(f: &Framing, v: &AbsVec) -> u8 {
    parity_p_mod2(f, v.mod2())
}

pub fn parity_p_mod2(f: &Framing, v: u64) -> u8 {
    quadratic_extension(f).eval(v) ^ 1
}

/// Winding parity of a simple closed curve in `Σ_g − Z` with punctured class
/// `c = v + Σ m_j d_j`: `P(v) + Σ_{j≥2} m_j κ_j mod 2`.
pub fn curve_parity(f: &Framing, c: &PunctVec) -> u8 {
    let spec = f.spec();
    let loops = c
        .loop_part(spec)
        .iter()
        .enumerate()
        .map(|(j, m)| mod2(m) & (spec.kappa_at(j + 2).rem_euclid(2) as u8))
        .fold(0u8, |a, t| a ^ t);
    parity_p(f, &c.abs_part(spec)) ^ loops
}

/// Classical Arf invariant `Σ q(x_i) q(y_i) mod 2`.
pub fn arf_of_form(q: &QForm) -> u8 {
    let m = q.mask();
    parity(m & (m >> 1) & 0x5555_5555_5555_5555)
}
