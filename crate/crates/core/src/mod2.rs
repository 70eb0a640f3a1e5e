//! Bit-packed linear algebra over ℤ/2 for the absolute lattice.
//!
//! A mod-2 vector of length `2g` is a `u64` with bit `2i` holding the `x_{i+1}`
//! coordinate and bit `2i + 1` holding `y_{i+1}`.

use num_bigint::BigInt;
use num_integer::Integer;
use serde::{Deserialize, Serialize};

const EVEN_BITS: u64 = 0x5555_5555_5555_5555;

/// Reduces an integer vector mod 2 into a packed bit vector.
pub fn pack_bits(v: &[BigInt]) -> u64 {
    assert!(v.len() <= 64, "mod-2 vectors are limited to 64 coordinates");
    v.iter()
        .enumerate()
        .filter(|(_, c)| c.is_odd())
        .fold(0u64, |acc, (i, _)| acc | (1 << i))
}

pub fn unpack_bits(bits: u64, len: usize) -> Vec<u8> {
    (0..len).map(|i| ((bits >> i) & 1) as u8).collect()
}

/// Exchanges each `x_i` bit with its partner `y_i` bit.
#[inline]
pub fn swap_pairs(v: u64) -> u64 {
    ((v & EVEN_BITS) << 1) | ((v >> 1) & EVEN_BITS)
}

/// Mod-2 intersection pairing.
#[inline]
pub fn pairing(u: u64, v: u64) -> u8 {
    ((u & swap_pairs(v)).count_ones() & 1) as u8
}

#[inline]
pub fn parity(v: u64) -> u8 {
    (v.count_ones() & 1) as u8
}

fn mask(dim: usize) -> u64 {
    if dim == 64 {
        u64::MAX
    } else {
        (1u64 << dim) - 1
    }
}

/// Square matrix over ℤ/2 stored by columns.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Mod2Matrix {
    dim: usize,
    cols: Vec<u64>,
}

impl Mod2Matrix {
    pub fn identity(dim: usize) -> Self {
        Self {
            dim,
            cols: (0..dim).map(|i| 1u64 << i).collect(),
        }
    }

    pub fn from_columns(dim: usize, cols: Vec<u64>) -> Self {
        assert_eq!(cols.len(), dim);
        let m = mask(dim);
        Self {
            dim,
            cols: cols.into_iter().map(|c| c & m).collect(),
        }
    }

    /// The mod-2 transvection `x ↦ x + ⟨x, v⟩ v`.
    pub fn transvection(dim: usize, v: u64) -> Self {
        let cols = (0..dim)
            .map(|b| {
                let e = 1u64 << b;
                if pairing(e, v) == 1 {
                    e ^ v
                } else {
                    e
                }
            })
            .collect();
        Self::from_columns(dim, cols)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn columns(&self) -> &[u64] {
        &self.cols
    }

    #[inline]
    pub fn apply(&self, v: u64) -> u64 {
        let mut out = 0;
        let mut rest = v;
        while rest != 0 {
            let b = rest.trailing_zeros() as usize;
            out ^= self.cols[b];
            rest &= rest - 1;
        }
        out
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.dim, rhs.dim);
        Self {
            dim: self.dim,
            cols: rhs.cols.iter().map(|&c| self.apply(c)).collect(),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.cols.iter().enumerate().all(|(i, &c)| c == 1 << i)
    }

    pub fn is_symplectic(&self) -> bool {
        self.dim.is_multiple_of(2)
            && (0..self.dim)
                .all(|a| (a + 1..self.dim).all(|b| pairing(self.cols[a], self.cols[b]) == pairing(1 << a, 1 << b)))
    }

    /// Inverse of a symplectic matrix via the pairing identity
    /// `⟨x, S⁻¹y⟩ = ⟨Sx, y⟩`.
    pub fn symplectic_inverse(&self) -> Self {
        let g = self.dim / 2;
        let cols = (0..self.dim)
            .map(|b| {
                let e = 1u64 << b;
                (0..g).fold(0u64, |acc, i| {
                    let xi = pairing(self.cols[2 * i + 1], e) as u64;
                    let yi = pairing(self.cols[2 * i], e) as u64;
                    acc | (xi << (2 * i)) | (yi << (2 * i + 1))
                })
            })
            .collect();
        Self::from_columns(self.dim, cols)
    }

    /// Packs the matrix into a single word; requires `dim * dim <= 64`.
    pub fn pack(&self) -> u64 {
        assert!(self.dim * self.dim <= 64);
        self.cols
            .iter()
            .enumerate()
            .fold(0u64, |acc, (j, &c)| acc | (c << (j * self.dim)))
    }

    pub fn unpack(dim: usize, key: u64) -> Self {
        let m = mask(dim);
        Self {
            dim,
            cols: (0..dim).map(|j| (key >> (j * dim)) & m).collect(),
        }
    }
}

/// An element of `H¹(Σ_g; ℤ/2)`, stored as its values on the basis
/// `x_1, y_1, …, x_g, y_g`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CohomClass {
    dim: usize,
    bits: u64,
}

impl CohomClass {
    pub fn zero(dim: usize) -> Self {
        Self { dim, bits: 0 }
    }

    pub fn from_bits(dim: usize, bits: u64) -> Self {
        Self {
            dim,
            bits: bits & mask(dim),
        }
    }

    /// The functional `x ↦ ⟨x, v⟩ mod 2` (equal to `⟨v, ·⟩` mod 2).
    pub fn pairing_with(dim: usize, v: u64) -> Self {
        Self::from_bits(dim, swap_pairs(v))
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn bits(&self) -> u64 {
        self.bits
    }

    pub fn to_vec(&self) -> Vec<u8> {
        unpack_bits(self.bits, self.dim)
    }

    pub fn is_zero(&self) -> bool {
        self.bits == 0
    }

    #[inline]
    pub fn eval(&self, x: u64) -> u8 {
        parity(self.bits & x)
    }

    /// `(S̄*θ)(x) = θ(S̄x)`.
    pub fn pullback(&self, s: &Mod2Matrix) -> Self {
        debug_assert_eq!(s.dim(), self.dim);
        let bits = s
            .columns()
            .iter()
            .enumerate()
            .fold(0u64, |acc, (b, &c)| acc | ((self.eval(c) as u64) << b));
        Self { dim: self.dim, bits }
    }

    /// Pullback along the transvection `T̄_v`:
    /// `θ(x + ⟨x,v⟩v) = θ(x) + ⟨x,v⟩θ(v)`.
    #[inline]
    pub fn pullback_transvection(&self, v: u64) -> Self {
        if self.eval(v) == 1 {
            Self {
                dim: self.dim,
                bits: self.bits ^ swap_pairs(v),
            }
        } else {
            *self
        }
    }
}

impl std::ops::Add for CohomClass {
    type Output = CohomClass;

    fn add(self, rhs: CohomClass) -> CohomClass {
        debug_assert_eq!(self.dim, rhs.dim);
        CohomClass {
            dim: self.dim,
            bits: self.bits ^ rhs.bits,
        }
    }
}

impl std::ops::AddAssign for CohomClass {
    fn add_assign(&mut self, rhs: CohomClass) {
        *self = *self + rhs;
    }
}

/// Order of `Sp(2g, ℤ/2)` from the closed formula
/// `2^{g²} ∏_{i=1}^{g} (2^{2i} − 1)`.
pub fn sp2_order_formula(g: u32) -> u128 {
    (1..=g).fold(1u128 << (g * g), |acc, i| acc * ((1u128 << (2 * i)) - 1))
}
