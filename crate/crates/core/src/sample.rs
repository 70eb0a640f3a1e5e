//! Seeded random generation of surfaces, framings, words and automorphisms.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use rand::seq::SliceRandom;
use rand::Rng;

use crate::framing::{curve_parity, Framing};
use crate::lattice::{AbsVec, PunctVec, SurfaceSpec};
use crate::matrix::IntMatrix;
use crate::moves::{BasisElem, Move};
use crate::paut::{product_of_factors, PAutElem, TransvectionFactor};
use crate::word::{Generator, Word};

/// Parity regime requested from [`random_spec`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Parity {
    Any,
    AllEven,
    SomeOdd,
}

/// Random `κ` with `Σκ = 2g − 2`, entries roughly in `[−4, 4]`. `SomeOdd`
/// needs `n ≥ 2`.
pub fn random_spec<R: Rng + ?Sized>(rng: &mut R, g: usize, n: usize, parity: Parity) -> SurfaceSpec {
    assert!(n >= 1);
    assert!(
        parity != Parity::SomeOdd || n >= 2,
        "odd kappa entries need two marked points"
    );
    let mut kappa: Vec<i64> = (1..n)
        .map(|_| match parity {
            Parity::AllEven => 2 * rng.gen_range(-2..=2),
            _ => rng.gen_range(-4..=4),
        })
        .collect();
    let rest = 2 * g as i64 - 2 - kappa.iter().sum::<i64>();
    kappa.insert(0, rest);
    if parity == Parity::SomeOdd && kappa.iter().all(|k| k % 2 == 0) {
        kappa[0] -= 1;
        kappa[1] += 1;
    }
    SurfaceSpec::new(g, kappa).expect("valid by construction")
}

/// Random windings in `[−5, 5]`; doubled arc windings odd in `[−9, 9]`.
pub fn random_framing<R: Rng + ?Sized>(rng: &mut R, spec: &SurfaceSpec, with_arcs: bool) -> Framing {
    let g = spec.g();
    let mut wind = || (0..g).map(|_| BigInt::from(rng.gen_range(-5..=5))).collect::<Vec<_>>();
    let wx = wind();
    let wy = wind();
    let arcs = (with_arcs && spec.n() >= 2).then(|| {
        (1..spec.n())
            .map(|_| BigInt::from(2 * rng.gen_range(-5..=4) + 1))
            .collect()
    });
    Framing::new(spec.clone(), wx, wy, arcs).expect("valid by construction")
}

/// Random nonzero primitive vector with entries in `[−bound, bound]`.
pub fn random_primitive<R: Rng + ?Sized>(rng: &mut R, g: usize, bound: i64) -> AbsVec {
    loop {
        let v = AbsVec::new(
            (0..2 * g)
                .map(|_| BigInt::from(rng.gen_range(-bound..=bound)))
                .collect(),
        );
        if !v.is_zero() {
            let d = v.gcd();
            return AbsVec::new(v.coords().iter().map(|c| c / &d).collect());
        }
    }
}

/// Random primitive punctured class with entries in `[−bound, bound]`.
pub fn random_punct_class<R: Rng + ?Sized>(rng: &mut R, spec: &SurfaceSpec, bound: i64) -> PunctVec {
    let g = spec.g();
    let abs = random_primitive(rng, g, bound);
    let loops: Vec<BigInt> = (1..spec.n()).map(|_| BigInt::from(rng.gen_range(-1..=1))).collect();
    let mut coords = abs.into_coords();
    coords.extend(loops);
    PunctVec::new(coords)
}

/// Which letters [`random_word`] may use.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Alphabet {
    /// Twists about the basis curves `x_i`, `y_i`.
    BasisTwists,
    /// Basis twists, loop twists and twists about random classes.
    Twists,
    /// All twists and point-pushes.
    Full,
}

fn random_power<R: Rng + ?Sized>(rng: &mut R) -> i64 {
    *[-2, -1, 1, 2, 3].choose(rng).expect("nonempty")
}

/// A random letter whose declared windings are consistent with `f`.
pub fn random_letter<R: Rng + ?Sized>(rng: &mut R, f: &Framing, alphabet: Alphabet) -> Generator {
    let spec = f.spec();
    let g = spec.g();
    let n = spec.n();
    let k = random_power(rng);
    let choice = match alphabet {
        Alphabet::BasisTwists => 0,
        Alphabet::Twists => rng.gen_range(0..3),
        Alphabet::Full => rng.gen_range(0..4),
    };
    match choice {
        1 if n >= 2 => Generator::twist_loop(spec, rng.gen_range(2..=n), k),
        2 | 1 => {
            let c = random_punct_class(rng, spec, 2);
            let w = i64::from(curve_parity(f, &c)) + 2 * rng.gen_range(-2..=2);
            Generator::twist(c, k, w)
        }
        3 if n >= 2 => Generator::push(rng.gen_range(1..=n), random_primitive(rng, g, 1)),
        _ => {
            let i = rng.gen_range(1..=g);
            if rng.gen_bool(0.5) {
                Generator::twist_x(f, i, k)
            } else {
                Generator::twist_y(f, i, k)
            }
        }
    }
}

pub fn random_word<R: Rng + ?Sized>(rng: &mut R, f: &Framing, len: usize, alphabet: Alphabet) -> Word {
    let letters = (0..len).map(|_| random_letter(rng, f, alphabet)).collect();
    Word::new(f.spec().clone(), letters).expect("valid letters")
}

/// Product of `len` transvections about small primitive vectors.
pub fn random_symplectic<R: Rng + ?Sized>(rng: &mut R, g: usize, len: usize) -> IntMatrix {
    let factors: Vec<TransvectionFactor> = (0..len)
        .map(|_| TransvectionFactor {
            v: random_primitive(rng, g, 1),
            k: BigInt::from(random_power(rng)),
        })
        .collect();
    product_of_factors(2 * g, &factors)
}

pub fn random_m_block<R: Rng + ?Sized>(rng: &mut R, spec: &SurfaceSpec, bound: i64) -> IntMatrix {
    let mut m = IntMatrix::zeros(spec.abs_dim(), spec.n() - 1);
    for r in 0..m.rows() {
        for c in 0..m.cols() {
            m[(r, c)] = BigInt::from(rng.gen_range(-bound..=bound));
        }
    }
    m
}

pub fn random_paut<R: Rng + ?Sized>(rng: &mut R, spec: &SurfaceSpec, len: usize) -> PAutElem {
    let s = random_symplectic(rng, spec.g(), len);
    let m = random_m_block(rng, spec, 3);
    PAutElem::new(spec.clone(), s, m).expect("symplectic by construction")
}

/// A random move valid on `f`.
pub fn random_move<R: Rng + ?Sized>(rng: &mut R, f: &Framing) -> Move {
    let spec = f.spec();
    let g = spec.g();
    let n = spec.n();
    let odd: Vec<usize> = (2..=n).filter(|&j| spec.kappa_at(j) % 2 != 0).collect();
    let even: Vec<usize> = (2..=n).filter(|&j| spec.kappa_at(j) % 2 == 0).collect();
    let sign = if rng.gen_bool(0.5) { 1 } else { -1 };
    loop {
        match rng.gen_range(0..4) {
            0 | 1 => {
                let i = rng.gen_range(1..=g);
                let helper = (i + rng.gen_range(0..g - 1)) % g + 1;
                let target = if rng.gen_bool(0.5) {
                    BasisElem::X(i)
                } else {
                    BasisElem::Y(i)
                };
                return Move::ConnectSum { target, helper, sign };
            }
            2 if f.has_arcs() => {
                if rng.gen_bool(0.5) {
                    let j = rng.gen_range(2..=n);
                    return Move::ConnectSum {
                        target: BasisElem::A(j),
                        helper: rng.gen_range(1..=g),
                        sign,
                    };
                } else if let Some(&j) = even.choose(rng) {
                    return Move::BoundaryTwist { j };
                }
            }
            3 if f.has_arcs() && odd.len() >= 2 => {
                let pair: Vec<usize> = odd.choose_multiple(rng, 2).copied().collect();
                return Move::ArcParityTwist {
                    j1: pair[0],
                    j2: pair[1],
                };
            }
            _ => {}
        }
    }
}

/// Sum of the absolute winding differences, doubled arc gaps counted as is.
pub fn winding_gap(f: &Framing, h: &Framing) -> BigInt {
    let curves = f
        .abs_windings()
        .iter()
        .zip(h.abs_windings())
        .fold(BigInt::zero(), |acc, (a, b)| acc + (b - a).abs());
    let arcs = match (f.arc2(), h.arc2()) {
        (Some(a), Some(b)) => a.iter().zip(b).fold(BigInt::zero(), |acc, (x, y)| acc + (y - x).abs()),
        _ => BigInt::zero(),
    };
    curves + arcs
}
