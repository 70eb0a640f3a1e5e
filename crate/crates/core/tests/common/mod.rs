//! Independent oracles written directly from the defining formulas, using
//! plain `u8` vectors over ℤ/2 and no bit packing.

#![allow(dead_code)]

use num_bigint::BigInt;
use num_integer::Integer;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use relmono::{CohomClass, Framing, IntMatrix, PAutElem, SurfaceSpec};

pub type Bits = Vec<u8>;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn reduce(v: &BigInt) -> u8 {
    u8::from(v.is_odd())
}

pub fn unit(dim: usize, b: usize) -> Bits {
    (0..dim).map(|i| u8::from(i == b)).collect()
}

/// `⟨u, v⟩ mod 2` with `⟨x_i, y_i⟩ = 1`.
pub fn pairing(u: &[u8], v: &[u8]) -> u8 {
    (0..u.len() / 2).fold(0, |acc, h| acc ^ (u[2 * h] & v[2 * h + 1]) ^ (u[2 * h + 1] & v[2 * h]))
}

/// Quadratic refinement with basis values `q`, extended by
/// `q(u + w) = q(u) + q(w) + ⟨u, w⟩`.
pub fn q_value(q: &[u8], v: &[u8]) -> u8 {
    let dim = v.len();
    let mut acc = 0;
    for b in 0..dim {
        acc ^= v[b] & q[b];
        for c in b + 1..dim {
            acc ^= v[b] & v[c] & pairing(&unit(dim, b), &unit(dim, c));
        }
    }
    acc
}

/// `q(b) = φ(b) + 1` on basis curves.
pub fn extension_q(f: &Framing) -> Bits {
    f.abs_windings().iter().map(|w| 1 ^ reduce(w)).collect()
}

pub fn columns_mod2(s: &IntMatrix) -> Vec<Bits> {
    (0..s.cols())
        .map(|c| s.column(c).iter().map(reduce).collect())
        .collect()
}

pub fn apply(cols: &[Bits], x: &[u8]) -> Bits {
    let dim = cols.len();
    let mut out = vec![0; dim];
    for (b, &xb) in x.iter().enumerate() {
        if xb == 1 {
            for r in 0..dim {
                out[r] ^= cols[b][r];
            }
        }
    }
    out
}

/// Values of `q̂(S̄)` on the basis: `q(S̄e_b) − q(e_b)`.
pub fn q_hat(q: &[u8], cols: &[Bits]) -> Bits {
    let dim = cols.len();
    (0..dim)
        .map(|b| q_value(q, &cols[b]) ^ q_value(q, &unit(dim, b)))
        .collect()
}

/// `M v̄_κ mod 2`.
pub fn m_times_v_kappa(spec: &SurfaceSpec, m: &IntMatrix) -> Bits {
    let mut w = vec![0u8; spec.abs_dim()];
    for j in 0..spec.n() - 1 {
        if spec.kappa()[j + 1].rem_euclid(2) == 1 {
            for (r, c) in m.column(j).iter().enumerate() {
                w[r] ^= reduce(c);
            }
        }
    }
    w
}

/// Basis values of `v_κ*(M)`: `x ↦ ⟨M v̄_κ, x⟩`.
pub fn v_kappa_star(spec: &SurfaceSpec, m: &IntMatrix) -> Bits {
    let w = m_times_v_kappa(spec, m);
    (0..spec.abs_dim())
        .map(|b| pairing(&w, &unit(spec.abs_dim(), b)))
        .collect()
}

/// Closed form `Θ(A) = S̄*v_κ*(M) + q̂_φ(S̄)` with the quadratic extension
/// of `φ`.
pub fn theta(a: &PAutElem, f: &Framing) -> Bits {
    let spec = a.spec();
    let cols = columns_mod2(a.s());
    let w = m_times_v_kappa(spec, a.m());
    let qh = q_hat(&extension_q(f), &cols);
    (0..spec.abs_dim()).map(|b| pairing(&w, &cols[b]) ^ qh[b]).collect()
}

pub fn bits(c: &CohomClass) -> Bits {
    c.to_vec()
}
