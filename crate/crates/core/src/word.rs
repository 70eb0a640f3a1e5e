//! Words in Dehn twists and point-pushes, acting on relative homology, on
//! punctured curve classes with exact winding numbers, and on framings.
//!
//! A word `[L_1, …, L_m]` denotes the composition `L_1 ∘ ⋯ ∘ L_m`: the
//! rightmost letter acts first.
//!
//! Letter conventions:
//!
//! * `Twist { c, power: k, w }` is `T_γ^k` for a simple closed curve `γ` in
//!   punctured class `c` with declared winding `φ(γ) = w`. It sends a curve
//!   class `b ↦ b + k⟨b,c⟩c` (winding `+ k⟨b,c⟩w`) and a relative class
//!   `x ↦ x + k⟨x,c⟩π(c)`.
//! * `PointPush { i, u }` drags `p_i` once around a loop in absolute class
//!   `u`. It sends `x ↦ x + (coefficient of [p_i] in ∂x)·u` on relative
//!   classes and `b ↦ b + ⟨b,u⟩d_i` (winding `− ⟨b,u⟩κ_i`) on curves.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::framing::Framing;
use crate::lattice::{pair_abs, rel_punct_unchecked, AbsVec, PunctVec, RelVec, SurfaceSpec};
use crate::matrix::IntMatrix;
use crate::mod2::{pack_bits, CohomClass, Mod2Matrix};
use crate::paut::{compose, transvection, PAutElem};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Generator {
    Twist { c: PunctVec, power: i64, w: BigInt },
    PointPush { i: usize, u: AbsVec },
}

impl Generator {
    pub fn twist(c: PunctVec, power: i64, w: impl Into<BigInt>) -> Self {
        Generator::Twist { c, power, w: w.into() }
    }

    pub fn push(i: usize, u: AbsVec) -> Self {
        Generator::PointPush { i, u }
    }

    /// Twist about the basis curve `x_i` with its winding read from `f`.
    pub fn twist_x(f: &Framing, i: usize, power: i64) -> Self {
        let spec = f.spec();
        let c = PunctVec::from_abs(spec, &AbsVec::x(spec.g(), i));
        Self::twist(c, power, f.wind_x()[i - 1].clone())
    }

    pub fn twist_y(f: &Framing, i: usize, power: i64) -> Self {
        let spec = f.spec();
        let c = PunctVec::from_abs(spec, &AbsVec::y(spec.g(), i));
        Self::twist(c, power, f.wind_y()[i - 1].clone())
    }

    /// Twist about the loop `Δ_i`, winding `−1 − κ_i`.
    pub fn twist_loop(spec: &SurfaceSpec, i: usize, power: i64) -> Self {
        Self::twist(PunctVec::loop_class(spec, i), power, -1 - spec.kappa_at(i))
    }

    pub fn inverse(&self) -> Self {
        match self {
            Generator::Twist { c, power, w } => Generator::Twist {
                c: c.clone(),
                power: -power,
                w: w.clone(),
            },
            Generator::PointPush { i, u } => Generator::PointPush { i: *i, u: u.neg() },
        }
    }

    fn validate(&self, spec: &SurfaceSpec) -> Result<()> {
        match self {
            Generator::Twist { c, power, .. } => {
                if c.len() != spec.rel_dim() {
                    return Err(Error::DimensionMismatch {
                        what: "twist class",
                        expected: spec.rel_dim(),
                        got: c.len(),
                    });
                }
                if *power == 0 {
                    return Err(Error::ZeroPower);
                }
                let gcd = c.coords().iter().fold(BigInt::zero(), |acc, v| acc.gcd(v));
                if !gcd.is_one() {
                    return Err(Error::NotPrimitive);
                }
            }
            Generator::PointPush { i, u } => {
                if *i < 1 || *i > spec.n() {
                    return Err(Error::PointIndex { index: *i, n: spec.n() });
                }
                if u.len() != spec.abs_dim() {
                    return Err(Error::DimensionMismatch {
                        what: "point-push class",
                        expected: spec.abs_dim(),
                        got: u.len(),
                    });
                }
                if !u.is_primitive() {
                    return Err(Error::NotPrimitive);
                }
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Word {
    spec: SurfaceSpec,
    letters: Vec<Generator>,
}

impl Word {
    pub fn new(spec: SurfaceSpec, letters: Vec<Generator>) -> Result<Self> {
        for l in &letters {
            l.validate(&spec)?;
        }
        Ok(Self { spec, letters })
    }

    pub fn empty(spec: &SurfaceSpec) -> Self {
        Self {
            spec: spec.clone(),
            letters: Vec::new(),
        }
    }

    pub fn spec(&self) -> &SurfaceSpec {
        &self.spec
    }

    pub fn letters(&self) -> &[Generator] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn has_point_push(&self) -> bool {
        self.letters.iter().any(|l| matches!(l, Generator::PointPush { .. }))
    }

    pub fn inverse(&self) -> Self {
        Self {
            spec: self.spec.clone(),
            letters: self.letters.iter().rev().map(Generator::inverse).collect(),
        }
    }

    /// `self ++ other`, i.e. the composition `self ∘ other`.
    pub fn concat(&self, other: &Word) -> Result<Self> {
        if self.spec != other.spec {
            return Err(Error::SpecMismatch);
        }
        let mut letters = self.letters.clone();
        letters.extend(other.letters.iter().cloned());
        Ok(Self {
            spec: self.spec.clone(),
            letters,
        })
    }

    pub fn push(&mut self, g: Generator) -> Result<()> {
        g.validate(&self.spec)?;
        self.letters.push(g);
        Ok(())
    }
}

fn check_spec(a: &SurfaceSpec, b: &SurfaceSpec) -> Result<()> {
    if a == b {
        Ok(())
    } else {
        Err(Error::SpecMismatch)
    }
}

fn apply_letter_rel(spec: &SurfaceSpec, letter: &Generator, x: &mut RelVec) {
    let d = spec.abs_dim();
    match letter {
        Generator::Twist { c, power, .. } => {
            let p = rel_punct_unchecked(spec, x.coords(), c.coords());
            if p.is_zero() {
                return;
            }
            let k = p * power;
            let image = RelVec::from_abs(spec, &c.abs_part(spec));
            x.add_scaled(&k, &image);
        }
        Generator::PointPush { i, u } => {
            let arcs = &x.coords()[d..];
            let coef: BigInt = if *i == 1 {
                -arcs.iter().sum::<BigInt>()
            } else {
                arcs[i - 2].clone()
            };
            x.add_scaled(&coef, &RelVec::from_abs(spec, u));
        }
    }
}

/// Image of a relative class under the word.
pub fn act_rel(wd: &Word, x: &RelVec) -> Result<RelVec> {
    let spec = wd.spec();
    if x.len() != spec.rel_dim() {
        return Err(Error::DimensionMismatch {
            what: "relative vector",
            expected: spec.rel_dim(),
            got: x.len(),
        });
    }
    let mut out = x.clone();
    for l in wd.letters().iter().rev() {
        apply_letter_rel(spec, l, &mut out);
    }
    Ok(out)
}

/// Block matrix of a single letter.
pub fn letter_paut(spec: &SurfaceSpec, letter: &Generator) -> PAutElem {
    let d = spec.abs_dim();
    let n1 = spec.n() - 1;
    match letter {
        Generator::Twist { c, power, .. } => {
            let v = c.abs_part(spec);
            let s = transvection(&v, &BigInt::from(*power));
            let mut m = IntMatrix::zeros(d, n1);
            for (j, mj) in c.loop_part(spec).iter().enumerate() {
                if mj.is_zero() {
                    continue;
                }
                let k = mj * power;
                for (r, vr) in v.coords().iter().enumerate() {
                    m[(r, j)] = &k * vr;
                }
            }
            PAutElem::new_unchecked(spec.clone(), s, m)
        }
        Generator::PointPush { i, u } => {
            let mut m = IntMatrix::zeros(d, n1);
            for j in 0..n1 {
                let coef: i64 = match *i {
                    1 => -1,
                    i if i == j + 2 => 1,
                    _ => 0,
                };
                if coef != 0 {
                    for (r, ur) in u.coords().iter().enumerate() {
                        m[(r, j)] = ur * coef;
                    }
                }
            }
            PAutElem::new_unchecked(spec.clone(), IntMatrix::identity(d), m)
        }
    }
}

/// Matrix of [`act_rel`]: the ordered product of the letters' matrices.
pub fn word_to_paut(wd: &Word) -> PAutElem {
    let spec = wd.spec();
    wd.letters().iter().fold(PAutElem::identity(spec), |acc, l| {
        compose(&acc, &letter_paut(spec, l)).expect("same surface")
    })
}

/// Mod-2 action of a letter on absolute homology, as an optional
/// transvection vector (`None` for the identity).
fn letter_abs_mod2(spec: &SurfaceSpec, letter: &Generator) -> Option<u64> {
    match letter {
        Generator::Twist { c, power, .. } if power % 2 != 0 => Some(pack_bits(&c.coords()[..spec.abs_dim()])),
        _ => None,
    }
}

/// Mod-2 absolute action of the whole word.
pub fn abs_action_mod2(wd: &Word) -> Mod2Matrix {
    let spec = wd.spec();
    wd.letters()
        .iter()
        .fold(Mod2Matrix::identity(spec.abs_dim()), |acc, l| {
            match letter_abs_mod2(spec, l) {
                Some(v) => acc.mul(&Mod2Matrix::transvection(spec.abs_dim(), v)),
                None => acc,
            }
        })
}

/// `Δ_φ` of a single letter as a class in `H¹(Σ; ℤ/2)`.
pub fn letter_delta(spec: &SurfaceSpec, letter: &Generator) -> CohomClass {
    let dim = spec.abs_dim();
    match letter {
        Generator::Twist { c, power, w } => {
            if power % 2 != 0 && w.is_odd() {
                CohomClass::pairing_with(dim, pack_bits(&c.coords()[..dim]))
            } else {
                CohomClass::zero(dim)
            }
        }
        Generator::PointPush { i, u } => {
            if spec.kappa_at(*i) % 2 != 0 {
                CohomClass::pairing_with(dim, u.mod2())
            } else {
                CohomClass::zero(dim)
            }
        }
    }
}

/// Accumulates `Δ_φ` over the word with `Θ(PL) = L̄*Θ(P) + Θ(L)`.
pub fn delta_word(wd: &Word, f: &Framing) -> Result<CohomClass> {
    check_spec(wd.spec(), f.spec())?;
    let spec = wd.spec();
    let mut theta = CohomClass::zero(spec.abs_dim());
    for l in wd.letters() {
        if let Some(v) = letter_abs_mod2(spec, l) {
            theta = theta.pullback_transvection(v);
        }
        theta += letter_delta(spec, l);
    }
    Ok(theta)
}

/// A closed curve tracked by punctured class and exact winding number.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TrackedCurve {
    pub class: PunctVec,
    pub winding: BigInt,
}

/// A legal arc tracked by relative class and doubled winding number.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TrackedArc {
    pub class: RelVec,
    pub winding2: BigInt,
}

fn apply_letter_curve(spec: &SurfaceSpec, letter: &Generator, b: &mut TrackedCurve) {
    let d = spec.abs_dim();
    match letter {
        Generator::Twist { c, power, w } => {
            let p = pair_abs(b.class.coords(), c.coords(), d);
            if p.is_zero() {
                return;
            }
            let k = p * power;
            b.winding += &k * w;
            b.class.add_scaled(&k, c);
        }
        Generator::PointPush { i, u } => {
            let p = pair_abs(b.class.coords(), u.coords(), d);
            if p.is_zero() {
                return;
            }
            b.winding -= &p * spec.kappa_at(*i);
            b.class.add_scaled(&p, &PunctVec::loop_class(spec, *i));
        }
    }
}

fn apply_letter_arc(spec: &SurfaceSpec, letter: &Generator, a: &mut TrackedArc) -> Result<()> {
    match letter {
        Generator::Twist { c, power, w } => {
            let p = rel_punct_unchecked(spec, a.class.coords(), c.coords());
            if p.is_zero() {
                return Ok(());
            }
            let k = p * power;
            a.winding2 += &k * w * 2;
            a.class.add_scaled(&k, &RelVec::from_abs(spec, &c.abs_part(spec)));
            Ok(())
        }
        Generator::PointPush { .. } => Err(Error::PointPushOnArcs),
    }
}

/// Image `wd(γ)` of a curve and its exact winding, by chained
/// twist-linearity.
pub fn trace_curve(wd: &Word, curve: &TrackedCurve) -> Result<TrackedCurve> {
    let spec = wd.spec();
    if curve.class.len() != spec.rel_dim() {
        return Err(Error::DimensionMismatch {
            what: "punctured vector",
            expected: spec.rel_dim(),
            got: curve.class.len(),
        });
    }
    let mut out = curve.clone();
    for l in wd.letters().iter().rev() {
        apply_letter_curve(spec, l, &mut out);
    }
    Ok(out)
}

/// Image of an arc and its exact doubled winding; twist letters only.
pub fn trace_arc(wd: &Word, arc: &TrackedArc) -> Result<TrackedArc> {
    let spec = wd.spec();
    let mut out = arc.clone();
    for l in wd.letters().iter().rev() {
        apply_letter_arc(spec, l, &mut out)?;
    }
    Ok(out)
}

/// Basis curve `x_i`/`y_i` (index `b` in `x_1, y_1, …`) with its winding.
pub fn basis_curve(f: &Framing, b: usize) -> TrackedCurve {
    let spec = f.spec();
    TrackedCurve {
        class: PunctVec::from_abs(spec, &AbsVec::basis(spec.g(), b)),
        winding: f.basis_winding(b).clone(),
    }
}

/// `(w·φ)(b) = φ(w⁻¹(b))` on every basis element.
pub fn act_framing(wd: &Word, f: &Framing) -> Result<Framing> {
    check_spec(wd.spec(), f.spec())?;
    if f.has_arcs() && wd.has_point_push() {
        return Err(Error::PointPushOnArcs);
    }
    let spec = f.spec();
    let inv = wd.inverse();
    let mut out = f.clone();
    for b in 0..spec.abs_dim() {
        let t = trace_curve(&inv, &basis_curve(f, b))?;
        out.set_basis_winding(b, t.winding);
    }
    if let Some(arcs) = f.arc2() {
        let images = arcs
            .iter()
            .enumerate()
            .map(|(j, a2)| {
                let arc = TrackedArc {
                    class: RelVec::arc(spec, j + 2),
                    winding2: a2.clone(),
                };
                trace_arc(&inv, &arc).map(|t| t.winding2)
            })
            .collect::<Result<Vec<_>>>()?;
        *out.arc2_mut().expect("arcs present") = images;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::framing::{curve_parity, q_vector};
    use crate::mod2::Mod2Matrix;

    fn spec(g: usize, kappa: &[i64]) -> SurfaceSpec {
        SurfaceSpec::new(g, kappa.to_vec()).unwrap()
    }

    fn b(v: i64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn act_rel_examples() {
        let s = spec(2, &[1, 1]);
        let f = Framing::zero(s.clone(), false);
        let x1 = RelVec::from_abs(&s, &AbsVec::x(2, 1));
        let y1 = RelVec::from_abs(&s, &AbsVec::y(2, 1));
        let a2 = RelVec::arc(&s, 2);
        let tx1 = Word::new(s.clone(), vec![Generator::twist_x(&f, 1, 1)]).unwrap();
        assert_eq!(act_rel(&tx1, &y1).unwrap(), y1.add(&x1.scale(&b(-1))));
        assert_eq!(act_rel(&tx1, &a2).unwrap(), a2);
        let push = Word::new(s.clone(), vec![Generator::push(2, AbsVec::x(2, 1))]).unwrap();
        assert_eq!(act_rel(&push, &a2).unwrap(), a2.add(&x1));
        // pushing p_1 moves every arc the other way
        let push1 = Word::new(s.clone(), vec![Generator::push(1, AbsVec::x(2, 1))]).unwrap();
        assert_eq!(act_rel(&push1, &a2).unwrap(), a2.add(&x1.scale(&b(-1))));
    }

    #[test]
    fn word_to_paut_examples() {
        let s = spec(2, &[1, 1]);
        let f = Framing::zero(s.clone(), false);
        assert!(word_to_paut(&Word::empty(&s)).is_identity());
        let a = word_to_paut(&Word::new(s.clone(), vec![Generator::twist_x(&f, 1, 1)]).unwrap());
        assert_eq!(a.s(), &transvection(&AbsVec::x(2, 1), &b(1)));
        assert!(a.m().is_zero());
        let a = word_to_paut(&Word::new(s.clone(), vec![Generator::push(2, AbsVec::x(2, 1))]).unwrap());
        assert!(a.s().is_identity());
        assert_eq!(a.m().column(0), AbsVec::x(2, 1).into_coords());
    }

    #[test]
    fn word_to_paut_matches_act_rel() {
        let s = spec(2, &[1, 0, 1]);
        let f = Framing::zero(s.clone(), false);
        let c = PunctVec::from_abs(&s, &AbsVec::from_i64(&[1, 1, 0, 1])).add(&PunctVec::loop_class(&s, 3));
        let wd = Word::new(
            s.clone(),
            vec![
                Generator::twist_y(&f, 2, -1),
                Generator::push(3, AbsVec::y(2, 1)),
                Generator::twist(c, 2, 1),
                Generator::push(1, AbsVec::x(2, 2)),
                Generator::twist_loop(&s, 2, 1),
            ],
        )
        .unwrap();
        let a = word_to_paut(&wd);
        for k in 0..s.rel_dim() {
            let mut e = RelVec::zeros(s.rel_dim());
            e.add_scaled(
                &b(1),
                &RelVec::new((0..s.rel_dim()).map(|j| b((j == k) as i64)).collect()),
            );
            assert_eq!(a.apply(&e).unwrap(), act_rel(&wd, &e).unwrap());
        }
    }

    #[test]
    fn act_framing_examples() {
        let s = spec(2, &[2]);
        let f = Framing::from_i64(s.clone(), &[4, 1], &[0, 2], None).unwrap();
        let x1_twist = Generator::twist(PunctVec::from_abs(&s, &AbsVec::x(2, 1)), 1, 3);
        let wd = Word::new(s.clone(), vec![x1_twist]).unwrap();
        let g = act_framing(&wd, &f).unwrap();
        assert_eq!(g.wind_x()[0], b(4));
        // (T·φ)(y_1) = φ(T⁻¹ y_1) = 0 − ⟨y_1, x_1⟩·3 = 3
        assert_eq!(g.wind_y()[0], b(3));
        // applying the inverse twist recovers the original value
        assert_eq!(act_framing(&wd.inverse(), &g).unwrap(), f);
    }

    #[test]
    fn squared_twists_preserve_q_vector() {
        let s = spec(3, &[2, 2]);
        let f = Framing::from_i64(s.clone(), &[1, 0, 3], &[2, 5, 0], Some(&[3])).unwrap();
        let c = PunctVec::from_abs(&s, &AbsVec::from_i64(&[1, -2, 0, 1, 1, 0]));
        let wd = Word::new(s.clone(), vec![Generator::twist(c, 2, 7)]).unwrap();
        assert_eq!(q_vector(&act_framing(&wd, &f).unwrap()), q_vector(&f));
    }

    #[test]
    fn point_pushes_rejected_with_arcs() {
        let s = spec(2, &[1, 1]);
        let f = Framing::zero(s.clone(), true);
        let wd = Word::new(s.clone(), vec![Generator::push(2, AbsVec::x(2, 1))]).unwrap();
        assert_eq!(act_framing(&wd, &f), Err(Error::PointPushOnArcs));
        assert!(act_framing(&wd, &Framing::zero(s, false)).is_ok());
    }

    #[test]
    fn delta_word_examples() {
        let s = spec(2, &[1, 1]);
        let f = Framing::zero(s.clone(), false);
        assert!(delta_word(&Word::empty(&s), &f).unwrap().is_zero());
        let sq = Generator::twist(PunctVec::from_abs(&s, &AbsVec::x(2, 1)), 2, 5);
        assert!(delta_word(&Word::new(s.clone(), vec![sq]).unwrap(), &f)
            .unwrap()
            .is_zero());
        let push = Word::new(s.clone(), vec![Generator::push(2, AbsVec::x(2, 1))]).unwrap();
        let d = delta_word(&push, &f).unwrap();
        assert_eq!(d, CohomClass::pairing_with(4, AbsVec::x(2, 1).mod2()));
        assert_eq!(d.eval(AbsVec::y(2, 1).mod2()), 1);
    }

    #[test]
    fn delta_matches_exact_winding_change() {
        let s = spec(2, &[3, -1]);
        let f = Framing::from_i64(s.clone(), &[1, 2], &[0, -3], None).unwrap();
        let c = PunctVec::from_abs(&s, &AbsVec::from_i64(&[1, 0, 1, 1])).add(&PunctVec::loop_class(&s, 2));
        let w = i64::from(curve_parity(&f, &c)) + 4;
        let wd = Word::new(
            s.clone(),
            vec![
                Generator::push(2, AbsVec::y(2, 2)),
                Generator::twist(c, 1, w),
                Generator::twist_x(&f, 2, -3),
                Generator::push(1, AbsVec::from_i64(&[1, 1, 0, 0])),
                Generator::twist_y(&f, 1, 1),
            ],
        )
        .unwrap();
        let delta = delta_word(&wd, &f).unwrap();
        for bb in 0..4 {
            let start = basis_curve(&f, bb);
            let end = trace_curve(&wd, &start).unwrap();
            let change = u8::from((&end.winding - &start.winding).is_odd());
            assert_eq!(delta.eval(1 << bb), change, "basis {bb}");
            let parity = if end.winding.is_odd() { 1 } else { 0 };
            assert_eq!(curve_parity(&f, &end.class), parity, "basis {bb}");
        }
    }

    #[test]
    fn abs_action_matches_paut() {
        let s = spec(2, &[2]);
        let f = Framing::zero(s.clone(), false);
        let wd = Word::new(
            s.clone(),
            vec![
                Generator::twist_x(&f, 1, 1),
                Generator::twist_y(&f, 2, 3),
                Generator::twist_x(&f, 2, 2),
            ],
        )
        .unwrap();
        assert_eq!(abs_action_mod2(&wd), word_to_paut(&wd).s_mod2());
        assert_eq!(abs_action_mod2(&Word::empty(&s)), Mod2Matrix::identity(4));
    }

    #[test]
    fn invalid_letters_rejected() {
        let s = spec(2, &[1, 1]);
        let zero_power = Generator::twist(PunctVec::loop_class(&s, 2), 0, -2);
        assert_eq!(Word::new(s.clone(), vec![zero_power]), Err(Error::ZeroPower));
        let bad_push = Generator::push(3, AbsVec::x(2, 1));
        assert_eq!(
            Word::new(s.clone(), vec![bad_push]),
            Err(Error::PointIndex { index: 3, n: 2 })
        );
        let non_primitive = Generator::push(2, AbsVec::from_i64(&[2, 0, 0, 0]));
        assert_eq!(Word::new(s, vec![non_primitive]), Err(Error::NotPrimitive));
    }
}
