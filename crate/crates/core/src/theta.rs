//! The crossed homomorphism `Θ_φ: PAut → H¹(Σ_g; ℤ/2)` and its two closed
//! forms `v_κ*` and `q̂`.

use num_integer::Integer;

use crate::error::{Error, Result};
use crate::framing::{parity_p, Framing, QForm};
use crate::lattice::SurfaceSpec;
use crate::matrix::IntMatrix;
use crate::mod2::{pack_bits, CohomClass, Mod2Matrix};
use crate::paut::{decompose, factor_sp, product_of_factors, PAutElem, TransvectionFactor};

/// `x ↦ ⟨M v̄_κ, x⟩ mod 2`, with `v̄_κ = (κ_2, …, κ_n) mod 2`.
pub fn v_kappa_star(m: &IntMatrix, spec: &SurfaceSpec) -> Result<CohomClass> {
    let d = spec.abs_dim();
    if m.rows() != d || m.cols() != spec.n() - 1 {
        return Err(Error::DimensionMismatch {
            what: "M block",
            expected: if m.rows() != d { d } else { spec.n() - 1 },
            got: if m.rows() != d { m.rows() } else { m.cols() },
        });
    }
    let w = (0..m.cols())
        .filter(|&j| spec.kappa_at(j + 2).is_odd())
        .fold(0u64, |acc, j| acc ^ pack_bits(&m.column(j)));
    Ok(CohomClass::pairing_with(d, w))
}

/// `q̂(S̄)(x) = q(S̄x) − q(x) mod 2`.
pub fn q_hat(q: &QForm, s: &Mod2Matrix) -> Result<CohomClass> {
    if s.dim() != 2 * q.g() {
        return Err(Error::DimensionMismatch {
            what: "mod-2 matrix",
            expected: 2 * q.g(),
            got: s.dim(),
        });
    }
    if !s.is_symplectic() {
        return Err(Error::NotSymplectic);
    }
    Ok(q_hat_unchecked(q, s))
}

pub(crate) fn q_hat_unchecked(q: &QForm, s: &Mod2Matrix) -> CohomClass {
    let bits = s
        .columns()
        .iter()
        .enumerate()
        .fold(0u64, |acc, (b, &c)| acc | (((q.eval(c) ^ q.eval(1 << b)) as u64) << b));
    CohomClass::from_bits(s.dim(), bits)
}

/// `Θ_φ(A)`, evaluated from the factorization returned by [`factor_sp`].
pub fn theta(a: &PAutElem, f: &Framing) -> Result<CohomClass> {
    let factors = factor_sp(a.s())?;
    theta_from_factors(a, f, &factors)
}

/// `Θ_φ(A)` from a caller-supplied factorization `S_A = ∏ T_{v_j}^{k_j}`.
///
/// With `A = (I, M)·(S, 0)`: `Θ(A) = S̄*v_κ*(M) + Θ(S, 0)`, and `Θ(S, 0)`
/// accumulates `Θ(T_v^k)(x) = k⟨x, v⟩P(v)` over the factors.
pub fn theta_from_factors(a: &PAutElem, f: &Framing, factors: &[TransvectionFactor]) -> Result<CohomClass> {
    if a.spec() != f.spec() {
        return Err(Error::SpecMismatch);
    }
    let spec = a.spec();
    let d = spec.abs_dim();
    if product_of_factors(d, factors) != *a.s() {
        return Err(Error::FactorizationMismatch);
    }
    let (r, _) = decompose(a);
    let mut acc = v_kappa_star(r.m(), spec)?;
    for t in factors {
        if t.k.is_even() {
            continue;
        }
        let v = t.v.mod2();
        acc = acc.pullback_transvection(v);
        if parity_p(f, &t.v) == 1 {
            acc += CohomClass::pairing_with(d, v);
        }
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::framing::{quadratic_extension, spin_form};
    use crate::lattice::AbsVec;
    use crate::mod2::pairing;
    use crate::paut::{compose, transvection};
    use num_bigint::BigInt;

    fn spec(g: usize, kappa: &[i64]) -> SurfaceSpec {
        SurfaceSpec::new(g, kappa.to_vec()).unwrap()
    }

    fn m_cols(d: usize, cols: &[&[i64]]) -> IntMatrix {
        let cols: Vec<Vec<BigInt>> = cols
            .iter()
            .map(|c| c.iter().map(|&v| BigInt::from(v)).collect())
            .collect();
        IntMatrix::from_columns(d, &cols)
    }

    #[test]
    fn v_kappa_star_examples() {
        let even = spec(2, &[2, 0]);
        assert!(v_kappa_star(&m_cols(4, &[&[1, 3, 0, 1]]), &even).unwrap().is_zero());
        let odd = spec(2, &[1, 1]);
        let th = v_kappa_star(&m_cols(4, &[&[1, 0, 0, 0]]), &odd).unwrap();
        assert_eq!(th, CohomClass::pairing_with(4, AbsVec::x(2, 1).mod2()));
        assert_eq!(th.eval(AbsVec::y(2, 1).mod2()), 1);
        assert!(v_kappa_star(&IntMatrix::zeros(4, 1), &odd).unwrap().is_zero());
        assert!(v_kappa_star(&IntMatrix::zeros(4, 0), &spec(2, &[2])).unwrap().is_zero());
    }

    #[test]
    fn q_hat_examples() {
        let s = spec(2, &[2]);
        let f = Framing::from_i64(s, &[1, 0], &[0, 0], None).unwrap();
        let q = spin_form(&f).unwrap();
        assert!(q_hat(&q, &Mod2Matrix::identity(4)).unwrap().is_zero());
        let t = Mod2Matrix::transvection(4, AbsVec::x(2, 1).mod2());
        let h = q_hat(&q, &t).unwrap();
        assert_eq!(h.eval(AbsVec::y(2, 1).mod2()), 1);
        for x in 0u64..16 {
            assert_eq!(h.eval(x), q.eval(t.apply(x)) ^ q.eval(x), "x = {x:04b}");
        }
    }

    #[test]
    fn q_hat_rejects_non_symplectic() {
        let q = QForm::from_mask(2, 0);
        let bad = Mod2Matrix::from_columns(4, vec![1, 1, 4, 8]);
        assert_eq!(q_hat(&q, &bad), Err(Error::NotSymplectic));
    }

    #[test]
    fn theta_examples() {
        let s = spec(2, &[1, 1]);
        let f = Framing::zero(s.clone(), false);
        assert!(theta(&PAutElem::identity(&s), &f).unwrap().is_zero());
        let rel = PAutElem::rel_aut(&s, m_cols(4, &[&[1, 0, 0, 0]])).unwrap();
        assert_eq!(
            theta(&rel, &f).unwrap(),
            CohomClass::pairing_with(4, AbsVec::x(2, 1).mod2())
        );

        let s2 = spec(2, &[2]);
        let f2 = Framing::from_i64(s2.clone(), &[1, 0], &[0, 0], None).unwrap();
        let t = PAutElem::from_symplectic(&s2, transvection(&AbsVec::x(2, 1), &BigInt::from(1))).unwrap();
        let th = theta(&t, &f2).unwrap();
        for x in 0u64..16 {
            assert_eq!(th.eval(x), pairing(x, 1));
        }
    }

    #[test]
    fn theta_is_crossed_on_transvection_pairs() {
        let s = spec(2, &[3, -1]);
        let f = Framing::from_i64(s.clone(), &[1, 2], &[0, 1], None).unwrap();
        let v1 = AbsVec::from_i64(&[1, 1, 0, 1]);
        let v2 = AbsVec::from_i64(&[0, 1, 2, 1]);
        let a = compose(
            &PAutElem::from_symplectic(&s, transvection(&v1, &BigInt::from(3))).unwrap(),
            &PAutElem::rel_aut(&s, m_cols(4, &[&[0, 1, 1, 0]])).unwrap(),
        )
        .unwrap();
        let b = PAutElem::from_symplectic(&s, transvection(&v2, &BigInt::from(-1))).unwrap();
        let ab = compose(&a, &b).unwrap();
        let lhs = theta(&ab, &f).unwrap();
        let rhs = theta(&a, &f).unwrap().pullback(&b.s_mod2()) + theta(&b, &f).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn theta_on_sp_part_is_q_hat_of_extension() {
        let s = spec(3, &[1, 3]);
        let f = Framing::from_i64(s.clone(), &[1, 0, 5], &[2, 1, 1], None).unwrap();
        let v = AbsVec::from_i64(&[1, -1, 0, 2, 1, 0]);
        let a = PAutElem::from_symplectic(&s, transvection(&v, &BigInt::from(1))).unwrap();
        let q = quadratic_extension(&f);
        assert_eq!(theta(&a, &f).unwrap(), q_hat(&q, &a.s_mod2()).unwrap());
    }

    #[test]
    fn rejects_wrong_factorization() {
        let s = spec(2, &[2]);
        let f = Framing::zero(s.clone(), false);
        let a = PAutElem::from_symplectic(&s, transvection(&AbsVec::x(2, 1), &BigInt::from(1))).unwrap();
        assert_eq!(theta_from_factors(&a, &f, &[]), Err(Error::FactorizationMismatch));
    }
}
