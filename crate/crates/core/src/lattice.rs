//! Coordinate model of the absolute, relative and punctured homology
//! lattices of a surface `Σ_g` with marked points `Z = {p_1, …, p_n}`.
//!
//! Basis orders are fixed once and for all:
//!
//! * absolute `H₁(Σ_g)`: `x_1, y_1, …, x_g, y_g`
//! * relative `H₁(Σ_g, Z)`: the absolute basis followed by arcs `a_2, …, a_n`
//! * punctured `H₁(Σ_g − Z)`: the absolute basis followed by loops `d_2, …, d_n`,
//!   with `d_1 = −(d_2 + … + d_n)`
//! * reduced `H̃₀(Z)`: `e_i = [p_i] − [p_1]`, `i = 2..n`
//!
//! Sign conventions: `⟨x_i, y_i⟩ = 1` and `⟨a_i, d_i⟩ = 1`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::IntMatrix;
use crate::mod2::pack_bits;

/// Genus, marked-point count and signature partition of a framed surface.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SurfaceSpec {
    g: usize,
    kappa: Vec<i64>,
}

impl SurfaceSpec {
    pub fn new(g: usize, kappa: Vec<i64>) -> Result<Self> {
        if g < 2 {
            return Err(Error::GenusTooSmall(g));
        }
        if g > 32 {
            return Err(Error::GenusUnsupported(g));
        }
        if kappa.is_empty() {
            return Err(Error::NoMarkedPoints);
        }
        let sum: i64 = kappa.iter().sum();
        let expected = 2 * g as i64 - 2;
        if sum != expected {
            return Err(Error::KappaSum { sum, expected });
        }
        Ok(Self { g, kappa })
    }

    pub fn g(&self) -> usize {
        self.g
    }

    pub fn n(&self) -> usize {
        self.kappa.len()
    }

    pub fn kappa(&self) -> &[i64] {
        &self.kappa
    }

    /// `κ_i` for a 1-based marked point index.
    pub fn kappa_at(&self, i: usize) -> i64 {
        self.kappa[i - 1]
    }

    /// Rank of the absolute lattice, `2g`.
    pub fn abs_dim(&self) -> usize {
        2 * self.g
    }

    /// Rank of the relative and punctured lattices, `2g + n − 1`.
    pub fn rel_dim(&self) -> usize {
        2 * self.g + self.n() - 1
    }

    pub fn all_kappa_even(&self) -> bool {
        self.kappa.iter().all(|k| k % 2 == 0)
    }

    /// `r = gcd(κ_1, …, κ_n)`.
    pub fn kappa_gcd(&self) -> i64 {
        self.kappa.iter().fold(0i64, |acc, &k| acc.gcd(&k))
    }

    /// `v̄_κ = (κ_2, …, κ_n) mod 2` in the reduced basis of `H̃₀(Z)`.
    pub fn v_kappa_mod2(&self) -> Vec<u8> {
        self.kappa[1..].iter().map(|k| k.rem_euclid(2) as u8).collect()
    }
}

macro_rules! lattice_vector {
    ($(#[$doc:meta])* $name:ident) => {
        $(#[$doc])*
        #[derive(Clone, Debug, PartialEq, Eq, Hash)]
        pub struct $name {
            coords: Vec<BigInt>,
        }

        impl $name {
            pub fn new(coords: Vec<BigInt>) -> Self {
                Self { coords }
            }

            pub fn from_i64(coords: &[i64]) -> Self {
                Self { coords: coords.iter().map(|&c| BigInt::from(c)).collect() }
            }

            pub fn zeros(len: usize) -> Self {
                Self { coords: vec![BigInt::zero(); len] }
            }

            pub fn coords(&self) -> &[BigInt] {
                &self.coords
            }

            pub fn into_coords(self) -> Vec<BigInt> {
                self.coords
            }

            pub fn len(&self) -> usize {
                self.coords.len()
            }

            pub fn is_empty(&self) -> bool {
                self.coords.is_empty()
            }

            pub fn is_zero(&self) -> bool {
                self.coords.iter().all(Zero::is_zero)
            }

            pub fn add(&self, other: &Self) -> Self {
                assert_eq!(self.len(), other.len(), "vector length");
                Self { coords: self.coords.iter().zip(&other.coords).map(|(a, b)| a + b).collect() }
            }

            pub fn scale(&self, k: &BigInt) -> Self {
                Self { coords: self.coords.iter().map(|a| a * k).collect() }
            }

            /// `self + k·other`, in place.
            pub fn add_scaled(&mut self, k: &BigInt, other: &Self) {
                assert_eq!(self.len(), other.len(), "vector length");
                if k.is_zero() {
                    return;
                }
                for (a, b) in self.coords.iter_mut().zip(&other.coords) {
                    if !b.is_zero() {
                        *a += k * b;
                    }
                }
            }
        }
    };
}

lattice_vector!(
    /// Class in `H₁(Σ_g; ℤ)`, coordinates `(x_1, y_1, …, x_g, y_g)`.
    AbsVec
);
lattice_vector!(
    /// Class in `H₁(Σ_g, Z; ℤ)`, coordinates `(x_1, …, y_g, a_2, …, a_n)`.
    RelVec
);
lattice_vector!(
    /// Class in `H₁(Σ_g − Z; ℤ)`, coordinates `(x_1, …, y_g, d_2, …, d_n)`.
    PunctVec
);
lattice_vector!(
    /// Class in `H̃₀(Z; ℤ)`, coordinates in the basis `e_i = [p_i] − [p_1]`.
    ZeroChain
);

impl AbsVec {
    /// Basis vector `x_i` (1-based).
    pub fn x(g: usize, i: usize) -> Self {
        let mut v = Self::zeros(2 * g);
        v.coords[2 * (i - 1)] = BigInt::one();
        v
    }

    /// Basis vector `y_i` (1-based).
    pub fn y(g: usize, i: usize) -> Self {
        let mut v = Self::zeros(2 * g);
        v.coords[2 * (i - 1) + 1] = BigInt::one();
        v
    }

    pub fn basis(g: usize, b: usize) -> Self {
        let mut v = Self::zeros(2 * g);
        v.coords[b] = BigInt::one();
        v
    }

    pub fn mod2(&self) -> u64 {
        pack_bits(&self.coords)
    }

    /// The 0/1 lift of a packed mod-2 vector.
    pub fn from_mod2(dim: usize, bits: u64) -> Self {
        Self {
            coords: (0..dim).map(|b| BigInt::from((bits >> b) & 1)).collect(),
        }
    }

    pub fn gcd(&self) -> BigInt {
        self.coords.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c))
    }

    pub fn is_primitive(&self) -> bool {
        self.gcd().is_one()
    }

    pub fn neg(&self) -> Self {
        self.scale(&BigInt::from(-1))
    }
}

impl RelVec {
    pub fn from_abs(spec: &SurfaceSpec, v: &AbsVec) -> Self {
        let mut coords = v.coords.clone();
        coords.resize(spec.rel_dim(), BigInt::zero());
        Self { coords }
    }

    /// Arc class `a_i`, `2 <= i <= n`.
    pub fn arc(spec: &SurfaceSpec, i: usize) -> Self {
        assert!(i >= 2 && i <= spec.n(), "arc index");
        let mut v = Self::zeros(spec.rel_dim());
        v.coords[spec.abs_dim() + i - 2] = BigInt::one();
        v
    }

    pub fn abs_part(&self, spec: &SurfaceSpec) -> AbsVec {
        AbsVec::new(self.coords[..spec.abs_dim()].to_vec())
    }

    pub fn arc_part(&self, spec: &SurfaceSpec) -> &[BigInt] {
        &self.coords[spec.abs_dim()..]
    }
}

impl PunctVec {
    pub fn from_abs(spec: &SurfaceSpec, v: &AbsVec) -> Self {
        let mut coords = v.coords.clone();
        coords.resize(spec.rel_dim(), BigInt::zero());
        Self { coords }
    }

    /// Loop class `d_i` around `p_i`, `1 <= i <= n`; `d_1 = −(d_2 + … + d_n)`.
    pub fn loop_class(spec: &SurfaceSpec, i: usize) -> Self {
        assert!(i >= 1 && i <= spec.n(), "marked point index");
        let mut v = Self::zeros(spec.rel_dim());
        if i == 1 {
            for c in &mut v.coords[spec.abs_dim()..] {
                *c = BigInt::from(-1);
            }
        } else {
            v.coords[spec.abs_dim() + i - 2] = BigInt::one();
        }
        v
    }

    pub fn abs_part(&self, spec: &SurfaceSpec) -> AbsVec {
        AbsVec::new(self.coords[..spec.abs_dim()].to_vec())
    }

    pub fn loop_part(&self, spec: &SurfaceSpec) -> &[BigInt] {
        &self.coords[spec.abs_dim()..]
    }
}

impl ZeroChain {
    /// `e_i = [p_i] − [p_1]`, `2 <= i <= n`.
    pub fn e(spec: &SurfaceSpec, i: usize) -> Self {
        let mut v = Self::zeros(spec.n() - 1);
        v.coords[i - 2] = BigInt::one();
        v
    }
}

fn check_len(what: &'static str, expected: usize, got: usize) -> Result<()> {
    if expected == got {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { what, expected, got })
    }
}

/// Standard symplectic form on coordinate slices (only the first `2g`
/// entries of each slice are read).
pub(crate) fn pair_abs(u: &[BigInt], v: &[BigInt], abs_dim: usize) -> BigInt {
    let mut acc = BigInt::zero();
    for h in 0..abs_dim / 2 {
        let (ux, uy) = (&u[2 * h], &u[2 * h + 1]);
        let (vx, vy) = (&v[2 * h], &v[2 * h + 1]);
        if !ux.is_zero() && !vy.is_zero() {
            acc += ux * vy;
        }
        if !uy.is_zero() && !vx.is_zero() {
            acc -= uy * vx;
        }
    }
    acc
}

/// `⟨u, v⟩` with `⟨x_i, y_i⟩ = 1` and all other basis pairs zero.
pub fn symplectic_pairing(u: &AbsVec, v: &AbsVec) -> Result<BigInt> {
    check_len("absolute vectors", u.len(), v.len())?;
    if !u.len().is_multiple_of(2) {
        return Err(Error::DimensionMismatch {
            what: "absolute vector of odd length",
            expected: u.len() + 1,
            got: u.len(),
        });
    }
    Ok(pair_abs(&u.coords, &v.coords, u.len()))
}

/// Perfect pairing `H₁(Σ, Z) × H₁(Σ − Z) → ℤ`.
pub fn rel_punct_pairing(spec: &SurfaceSpec, x: &RelVec, c: &PunctVec) -> Result<BigInt> {
    check_len("relative vector", spec.rel_dim(), x.len())?;
    check_len("punctured vector", spec.rel_dim(), c.len())?;
    Ok(rel_punct_unchecked(spec, x.coords(), c.coords()))
}

pub(crate) fn rel_punct_unchecked(spec: &SurfaceSpec, x: &[BigInt], c: &[BigInt]) -> BigInt {
    let d = spec.abs_dim();
    let mut acc = pair_abs(x, c, d);
    for (a, m) in x[d..].iter().zip(&c[d..]) {
        if !a.is_zero() && !m.is_zero() {
            acc += a * m;
        }
    }
    acc
}

/// Algebraic intersection of two closed curves in `Σ_g − Z`; the loop
/// classes `d_i` pair trivially with every closed curve.
pub fn closed_pairing(spec: &SurfaceSpec, b: &PunctVec, c: &PunctVec) -> Result<BigInt> {
    check_len("punctured vector", spec.rel_dim(), b.len())?;
    check_len("punctured vector", spec.rel_dim(), c.len())?;
    Ok(pair_abs(b.coords(), c.coords(), spec.abs_dim()))
}

/// Connecting map `∂: H₁(Σ, Z) → H̃₀(Z)`, `∂(a_i) = e_i`.
pub fn boundary(spec: &SurfaceSpec, x: &RelVec) -> Result<ZeroChain> {
    check_len("relative vector", spec.rel_dim(), x.len())?;
    Ok(ZeroChain::new(x.arc_part(spec).to_vec()))
}

/// The map `H₁(Σ − Z) → H₁(Σ)` that forgets the loop coordinates.
pub fn project_punct(spec: &SurfaceSpec, c: &PunctVec) -> Result<AbsVec> {
    check_len("punctured vector", spec.rel_dim(), c.len())?;
    Ok(c.abs_part(spec))
}

/// Gram matrix `J` of the symplectic form in the absolute basis.
pub fn symplectic_gram(g: usize) -> IntMatrix {
    let mut j = IntMatrix::zeros(2 * g, 2 * g);
    for h in 0..g {
        j[(2 * h, 2 * h + 1)] = BigInt::one();
        j[(2 * h + 1, 2 * h)] = BigInt::from(-1);
    }
    j
}

/// Gram matrix of [`rel_punct_pairing`] (rows: relative basis, columns:
/// punctured basis).
pub fn rel_punct_gram(spec: &SurfaceSpec) -> IntMatrix {
    let d = spec.abs_dim();
    let mut m = IntMatrix::zeros(spec.rel_dim(), spec.rel_dim());
    let j = symplectic_gram(spec.g());
    for r in 0..d {
        for c in 0..d {
            m[(r, c)] = j[(r, c)].clone();
        }
    }
    for k in d..spec.rel_dim() {
        m[(k, k)] = BigInt::one();
    }
    m
}
