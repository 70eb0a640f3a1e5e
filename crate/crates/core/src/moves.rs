//! Connect-sum and twist moves on framings. Every move changes winding data
//! only; its action on relative homology is the identity.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::framing::{arf, q_vector, Framing};
use crate::lattice::{PunctVec, SurfaceSpec};
use crate::word::{Generator, Word};

/// A basis element, 1-based: `X(i)`, `Y(i)` for curves, `A(j)` (`j ≥ 2`)
/// for arcs.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum BasisElem {
    X(usize),
    Y(usize),
    A(usize),
}

impl fmt::Display for BasisElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BasisElem::X(i) => write!(f, "x{i}"),
            BasisElem::Y(i) => write!(f, "y{i}"),
            BasisElem::A(j) => write!(f, "a{j}"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Move {
    /// Connect-sum of the target with a curve around handle `helper`:
    /// winding `±2` on a curve, `±2` (doubled `±4`) on an arc.
    ConnectSum { target: BasisElem, helper: usize, sign: i8 },
    /// Twist about the pants curve enclosing `p_{j1}` and `p_{j2}`; needs
    /// `κ_{j1}`, `κ_{j2}` odd.
    ArcParityTwist { j1: usize, j2: usize },
    /// Twist about the loop `Δ_j`; needs `κ_j` even.
    BoundaryTwist { j: usize },
}

fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidMove(msg.into())
}

fn check_arc(spec: &SurfaceSpec, j: usize) -> Result<()> {
    if j < 2 || j > spec.n() {
        Err(invalid(format!("arc index {j} outside 2..={}", spec.n())))
    } else {
        Ok(())
    }
}

/// Winding of the pants curve around `p_{j1}`, `p_{j2}`: `κ_{j1} + κ_{j2} + 1`.
pub fn pants_winding(spec: &SurfaceSpec, j1: usize, j2: usize) -> i64 {
    spec.kappa_at(j1) + spec.kappa_at(j2) + 1
}

fn validate(f: &Framing, m: &Move) -> Result<()> {
    let spec = f.spec();
    let g = spec.g();
    match *m {
        Move::ConnectSum { target, helper, sign } => {
            if sign != 1 && sign != -1 {
                return Err(invalid("sign must be +1 or -1"));
            }
            if helper < 1 || helper > g {
                return Err(invalid(format!("helper handle {helper} outside 1..={g}")));
            }
            match target {
                BasisElem::X(i) | BasisElem::Y(i) => {
                    if i < 1 || i > g {
                        return Err(invalid(format!("handle {i} outside 1..={g}")));
                    }
                    if i == helper {
                        return Err(invalid("helper handle must differ from the target's handle"));
                    }
                }
                BasisElem::A(j) => {
                    check_arc(spec, j)?;
                    if !f.has_arcs() {
                        return Err(Error::MissingArcData);
                    }
                }
            }
        }
        Move::ArcParityTwist { j1, j2 } => {
            check_arc(spec, j1)?;
            check_arc(spec, j2)?;
            if j1 == j2 {
                return Err(invalid("pants curve needs two distinct points"));
            }
            if spec.kappa_at(j1).is_even() || spec.kappa_at(j2).is_even() {
                return Err(invalid("pants twist needs both kappa entries odd"));
            }
            if !f.has_arcs() {
                return Err(Error::MissingArcData);
            }
        }
        Move::BoundaryTwist { j } => {
            check_arc(spec, j)?;
            if spec.kappa_at(j).is_odd() {
                return Err(invalid("boundary twist needs an even kappa entry"));
            }
            if !f.has_arcs() {
                return Err(Error::MissingArcData);
            }
        }
    }
    Ok(())
}

pub fn apply_move(f: &Framing, m: &Move) -> Result<Framing> {
    validate(f, m)?;
    let spec = f.spec().clone();
    let mut out = f.clone();
    match *m {
        Move::ConnectSum { target, sign, .. } => {
            let s = BigInt::from(sign);
            match target {
                BasisElem::X(i) => {
                    let b = 2 * (i - 1);
                    let w = f.basis_winding(b) + 2 * &s;
                    out.set_basis_winding(b, w);
                }
                BasisElem::Y(i) => {
                    let b = 2 * i - 1;
                    let w = f.basis_winding(b) + 2 * &s;
                    out.set_basis_winding(b, w);
                }
                BasisElem::A(j) => {
                    out.arc2_mut().expect("validated")[j - 2] += 4 * &s;
                }
            }
        }
        Move::ArcParityTwist { j1, j2 } => {
            let w = BigInt::from(2 * pants_winding(&spec, j1, j2));
            let arcs = out.arc2_mut().expect("validated");
            arcs[j1 - 2] += &w;
            arcs[j2 - 2] += &w;
        }
        Move::BoundaryTwist { j } => {
            out.arc2_mut().expect("validated")[j - 2] += 2 * (-1 - spec.kappa_at(j));
        }
    }
    Ok(out)
}

/// A word realizing a twist move, when the move is a single twist.
pub fn move_word(spec: &SurfaceSpec, m: &Move) -> Option<Word> {
    let letter = match *m {
        Move::ConnectSum { .. } => return None,
        Move::ArcParityTwist { j1, j2 } => {
            let c = PunctVec::loop_class(spec, j1)
                .add(&PunctVec::loop_class(spec, j2))
                .scale(&BigInt::from(-1));
            Generator::twist(c, 1, pants_winding(spec, j1, j2))
        }
        Move::BoundaryTwist { j } => Generator::twist(PunctVec::loop_class(spec, j), -1, -1 - spec.kappa_at(j)),
    };
    Word::new(spec.clone(), vec![letter]).ok()
}

fn connect_sums(target: BasisElem, helper: usize, diff: &BigInt, step: i64, out: &mut Vec<Move>) {
    let sign: i8 = if diff.is_negative() { -1 } else { 1 };
    let count = (diff.abs() / step).to_usize().expect("winding gap fits in memory");
    out.extend(std::iter::repeat_n(Move::ConnectSum { target, helper, sign }, count));
}

/// A move sequence taking `f` to `h`.
///
/// Curves are matched by `±2` connect-sums. Arcs whose doubled windings
/// differ by `2 mod 4` are first fixed by a boundary twist (even `κ_j`) or
/// in pairs by pants twists (odd `κ_j`), then matched by arc connect-sums.
pub fn match_framings(f: &Framing, h: &Framing) -> Result<Vec<Move>> {
    if f.spec() != h.spec() {
        return Err(Error::SpecMismatch);
    }
    let spec = f.spec();
    if spec.n() >= 2 && (!f.has_arcs() || !h.has_arcs()) {
        return Err(Error::MissingArcData);
    }
    let (qf, qh) = (q_vector(f), q_vector(h));
    if qf != qh {
        let pos = (qf.bits() ^ qh.bits()).trailing_zeros() as usize;
        return Err(Error::QVectorMismatch(pos));
    }
    if arf(f)? != arf(h)? {
        return Err(Error::ArfMismatch);
    }

    let g = spec.g();
    let mut moves = Vec::new();
    for b in 0..spec.abs_dim() {
        let i = b / 2 + 1;
        let target = if b % 2 == 0 { BasisElem::X(i) } else { BasisElem::Y(i) };
        let diff = h.basis_winding(b) - f.basis_winding(b);
        connect_sums(target, i % g + 1, &diff, 2, &mut moves);
    }

    let Some(arcs_h) = h.arc2() else {
        return Ok(moves);
    };
    let mut cur = f.clone();
    let mismatched: Vec<usize> = (2..=spec.n())
        .filter(|&j| {
            let d: BigInt = &arcs_h[j - 2] - &cur.arc2().expect("checked")[j - 2];
            !d.mod_floor(&BigInt::from(4)).is_zero()
        })
        .collect();
    let (odd, even): (Vec<usize>, Vec<usize>) = mismatched.into_iter().partition(|&j| spec.kappa_at(j).is_odd());
    let mut fixes: Vec<Move> = even.into_iter().map(|j| Move::BoundaryTwist { j }).collect();
    // Equal Arf invariants force an even number of odd-κ mismatches.
    debug_assert!(odd.len() % 2 == 0);
    fixes.extend(odd.chunks(2).map(|p| Move::ArcParityTwist { j1: p[0], j2: p[1] }));
    for m in fixes {
        cur = apply_move(&cur, &m)?;
        moves.push(m);
    }
    for j in 2..=spec.n() {
        let diff = &arcs_h[j - 2] - &cur.arc2().expect("checked")[j - 2];
        connect_sums(BasisElem::A(j), 1, &diff, 4, &mut moves);
    }
    Ok(moves)
}

/// Applies moves in order.
pub fn apply_moves(f: &Framing, moves: &[Move]) -> Result<Framing> {
    moves.iter().try_fold(f.clone(), |acc, m| apply_move(&acc, m))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::{act_framing, word_to_paut};

    fn spec(g: usize, kappa: &[i64]) -> SurfaceSpec {
        SurfaceSpec::new(g, kappa.to_vec()).unwrap()
    }

    #[test]
    fn connect_sum_example() {
        let f = Framing::zero(spec(2, &[2]), false);
        let m = Move::ConnectSum {
            target: BasisElem::X(1),
            helper: 2,
            sign: 1,
        };
        let h = apply_move(&f, &m).unwrap();
        assert_eq!(h.wind_x()[0], BigInt::from(2));
        assert_eq!(match_framings(&f, &h).unwrap(), vec![m]);
        assert!(match_framings(&f, &f).unwrap().is_empty());
    }

    #[test]
    fn boundary_twist_example() {
        let f = Framing::zero(spec(2, &[2, 0]), true);
        let h = apply_move(&f, &Move::BoundaryTwist { j: 2 }).unwrap();
        assert_eq!(h.arc2().unwrap()[0], BigInt::from(-1));
    }

    #[test]
    fn arc_parity_twist_example() {
        let f = Framing::zero(spec(2, &[0, 1, 1]), true);
        let h = apply_move(&f, &Move::ArcParityTwist { j1: 2, j2: 3 }).unwrap();
        assert_eq!(h.arc2().unwrap(), &[BigInt::from(7), BigInt::from(7)]);
    }

    #[test]
    fn twist_moves_match_their_words() {
        let s = spec(3, &[1, 2, 1, 3, -3]);
        let f = Framing::from_i64(s.clone(), &[1, 0, 2], &[3, 1, 1], Some(&[1, 3, -5, 7])).unwrap();
        let moves = [
            Move::BoundaryTwist { j: 2 },
            Move::ArcParityTwist { j1: 3, j2: 4 },
            Move::ArcParityTwist { j1: 5, j2: 4 },
        ];
        for m in moves {
            let w = move_word(&s, &m).unwrap();
            assert!(word_to_paut(&w).is_identity());
            assert_eq!(act_framing(&w, &f).unwrap(), apply_move(&f, &m).unwrap());
        }
    }

    #[test]
    fn preconditions() {
        let f = Framing::zero(spec(2, &[2, 0]), true);
        assert!(apply_move(&f, &Move::ArcParityTwist { j1: 2, j2: 2 }).is_err());
        assert!(apply_move(&f, &Move::BoundaryTwist { j: 1 }).is_err());
        let odd = Framing::zero(spec(2, &[1, 1]), true);
        assert!(apply_move(&odd, &Move::BoundaryTwist { j: 2 }).is_err());
        let cs = Move::ConnectSum {
            target: BasisElem::Y(1),
            helper: 1,
            sign: 1,
        };
        assert!(apply_move(&f, &cs).is_err());
    }

    #[test]
    fn mismatches_reported() {
        let s = spec(2, &[2]);
        let f = Framing::zero(s.clone(), false);
        let h = Framing::from_i64(s.clone(), &[1, 0], &[0, 0], None).unwrap();
        assert_eq!(match_framings(&f, &h), Err(Error::QVectorMismatch(0)));
        let other = Framing::zero(spec(2, &[1, 1]), true);
        assert_eq!(match_framings(&f, &other), Err(Error::SpecMismatch));
        let s11 = spec(2, &[1, 1]);
        let a = Framing::from_i64(s11.clone(), &[0, 0], &[0, 0], Some(&[1])).unwrap();
        let b = Framing::from_i64(s11, &[0, 0], &[0, 0], Some(&[3])).unwrap();
        assert_eq!(match_framings(&a, &b), Err(Error::ArfMismatch));
    }
}
