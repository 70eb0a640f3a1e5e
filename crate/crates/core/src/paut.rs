//! Pure automorphisms of relative homology as block matrices
//! `[[S, M], [0, I]]`, with `S ∈ Sp(2g, ℤ)` and `M ∈ Hom(H̃₀(Z), H₁(Σ))`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::lattice::{pair_abs, symplectic_gram, AbsVec, RelVec, SurfaceSpec};
use crate::matrix::IntMatrix;
use crate::mod2::{CohomClass, Mod2Matrix};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PAutElem {
    spec: SurfaceSpec,
    s: IntMatrix,
    m: IntMatrix,
}

impl PAutElem {
    /// Validates `SᵀJS = J` and the block shapes.
    pub fn new(spec: SurfaceSpec, s: IntMatrix, m: IntMatrix) -> Result<Self> {
        let d = spec.abs_dim();
        if s.rows() != d || s.cols() != d {
            return Err(Error::DimensionMismatch {
                what: "S block",
                expected: d,
                got: if s.rows() != d { s.rows() } else { s.cols() },
            });
        }
        if m.rows() != d || m.cols() != spec.n() - 1 {
            return Err(Error::DimensionMismatch {
                what: "M block",
                expected: if m.rows() != d { d } else { spec.n() - 1 },
                got: if m.rows() != d { m.rows() } else { m.cols() },
            });
        }
        if !is_symplectic(&s) {
            return Err(Error::NotSymplectic);
        }
        Ok(Self { spec, s, m })
    }

    pub(crate) fn new_unchecked(spec: SurfaceSpec, s: IntMatrix, m: IntMatrix) -> Self {
        debug_assert!(is_symplectic(&s));
        Self { spec, s, m }
    }

    pub fn identity(spec: &SurfaceSpec) -> Self {
        Self {
            s: IntMatrix::identity(spec.abs_dim()),
            m: IntMatrix::zeros(spec.abs_dim(), spec.n() - 1),
            spec: spec.clone(),
        }
    }

    /// The `RelAut` element `(I, M)`.
    pub fn rel_aut(spec: &SurfaceSpec, m: IntMatrix) -> Result<Self> {
        Self::new(spec.clone(), IntMatrix::identity(spec.abs_dim()), m)
    }

    /// The section element `(S, 0)`.
    pub fn from_symplectic(spec: &SurfaceSpec, s: IntMatrix) -> Result<Self> {
        Self::new(spec.clone(), s, IntMatrix::zeros(spec.abs_dim(), spec.n() - 1))
    }

    pub fn spec(&self) -> &SurfaceSpec {
        &self.spec
    }

    pub fn s(&self) -> &IntMatrix {
        &self.s
    }

    pub fn m(&self) -> &IntMatrix {
        &self.m
    }

    pub fn is_identity(&self) -> bool {
        self.s.is_identity() && self.m.is_zero()
    }

    /// Mod-2 reduction of the absolute block.
    pub fn s_mod2(&self) -> Mod2Matrix {
        self.s.to_mod2()
    }

    /// Full block matrix on relative coordinates.
    pub fn block_matrix(&self) -> IntMatrix {
        let d = self.spec.abs_dim();
        let r = self.spec.rel_dim();
        let mut out = IntMatrix::identity(r);
        for i in 0..d {
            for j in 0..d {
                out[(i, j)] = self.s[(i, j)].clone();
            }
            for j in d..r {
                out[(i, j)] = self.m[(i, j - d)].clone();
            }
        }
        out
    }

    pub fn apply(&self, x: &RelVec) -> Result<RelVec> {
        if x.len() != self.spec.rel_dim() {
            return Err(Error::DimensionMismatch {
                what: "relative vector",
                expected: self.spec.rel_dim(),
                got: x.len(),
            });
        }
        Ok(RelVec::new(self.block_matrix().mul_vec(x.coords())))
    }
}

pub fn is_symplectic(s: &IntMatrix) -> bool {
    if s.rows() != s.cols() || !s.rows().is_multiple_of(2) {
        return false;
    }
    let j = symplectic_gram(s.rows() / 2);
    s.transpose().mul(&j).mul(s) == j
}

fn same_spec(a: &PAutElem, b: &PAutElem) -> Result<()> {
    if a.spec == b.spec {
        Ok(())
    } else {
        Err(Error::SpecMismatch)
    }
}

/// `(S_A S_B, S_A M_B + M_A)`.
pub fn compose(a: &PAutElem, b: &PAutElem) -> Result<PAutElem> {
    same_spec(a, b)?;
    Ok(PAutElem {
        spec: a.spec.clone(),
        s: a.s.mul(&b.s),
        m: a.s.mul(&b.m).add(&a.m),
    })
}

/// `(S⁻¹, −S⁻¹M)`.
pub fn invert(a: &PAutElem) -> PAutElem {
    let s_inv = symplectic_inverse(&a.s);
    let m = s_inv.mul(&a.m).neg();
    PAutElem {
        spec: a.spec.clone(),
        s: s_inv,
        m,
    }
}

/// Inverse of an integer symplectic matrix, `S⁻¹ = −J Sᵀ J`.
pub fn symplectic_inverse(s: &IntMatrix) -> IntMatrix {
    let j = symplectic_gram(s.rows() / 2);
    j.mul(&s.transpose()).mul(&j).neg()
}

/// Splits `A = R · S̃` with `R = (I, M_A) ∈ RelAut` and `S̃ = (S_A, 0)`.
pub fn decompose(a: &PAutElem) -> (PAutElem, PAutElem) {
    let d = a.spec.abs_dim();
    let r = PAutElem {
        spec: a.spec.clone(),
        s: IntMatrix::identity(d),
        m: a.m.clone(),
    };
    let st = PAutElem {
        spec: a.spec.clone(),
        s: a.s.clone(),
        m: IntMatrix::zeros(d, a.spec.n() - 1),
    };
    (r, st)
}

/// Matrix of `x ↦ x + k⟨x, v⟩v`.
pub fn transvection(v: &AbsVec, k: &BigInt) -> IntMatrix {
    let d = v.len();
    let mut t = IntMatrix::identity(d);
    if k.is_zero() {
        return t;
    }
    // column b: e_b + k⟨e_b, v⟩ v
    for b in 0..d {
        let mut e = vec![BigInt::zero(); d];
        e[b] = BigInt::one();
        let p = pair_abs(&e, v.coords(), d);
        if p.is_zero() {
            continue;
        }
        let coef = k * p;
        for (i, vi) in v.coords().iter().enumerate() {
            if !vi.is_zero() {
                t[(i, b)] += &coef * vi;
            }
        }
    }
    t
}

/// One factor `T_v^k` of a transvection factorization.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TransvectionFactor {
    pub v: AbsVec,
    pub k: BigInt,
}

/// Ordered product `T_{v_1}^{k_1} ⋯ T_{v_m}^{k_m}`.
pub fn product_of_factors(dim: usize, factors: &[TransvectionFactor]) -> IntMatrix {
    factors
        .iter()
        .fold(IntMatrix::identity(dim), |acc, f| acc.mul(&transvection(&f.v, &f.k)))
}

/// Writes a symplectic integer matrix as an ordered product of
/// transvections about primitive vectors (basis vectors or sums of two basis
/// vectors).
///
/// The matrix is reduced to the identity by left multiplication, one
/// symplectic pair of columns at a time: the `x_i` column is brought to `x_i`
/// by Euclidean steps inside each handle and then across handles, after which
/// the `y_i` column is cleared using transvections fixing `x_i`. Handles
/// already reduced are never touched again.
pub fn factor_sp(s: &IntMatrix) -> Result<Vec<TransvectionFactor>> {
    if !is_symplectic(s) {
        return Err(Error::NotSymplectic);
    }
    let mut red = Reducer::new(s.clone());
    let g = s.rows() / 2;
    for i in 0..g {
        red.reduce_x_column(i);
        red.reduce_y_column(i);
    }
    debug_assert!(red.m.is_identity());
    // τ_m ⋯ τ_1 S = I  ⇒  S = τ_1⁻¹ ⋯ τ_m⁻¹
    Ok(red
        .applied
        .into_iter()
        .map(|f| TransvectionFactor { v: f.v, k: -f.k })
        .collect())
}

struct Reducer {
    m: IntMatrix,
    g: usize,
    applied: Vec<TransvectionFactor>,
}

#[derive(Clone, Copy)]
enum B {
    X(usize),
    Y(usize),
}

impl B {
    fn index(self) -> usize {
        match self {
            B::X(h) => 2 * h,
            B::Y(h) => 2 * h + 1,
        }
    }
}

impl Reducer {
    fn new(m: IntMatrix) -> Self {
        let g = m.rows() / 2;
        Self {
            m,
            g,
            applied: Vec::new(),
        }
    }

    fn basis(&self, b: B) -> AbsVec {
        AbsVec::basis(self.g, b.index())
    }

    fn entry(&self, b: B, col: usize) -> &BigInt {
        &self.m[(b.index(), col)]
    }

    fn apply(&mut self, v: AbsVec, k: BigInt) {
        if k.is_zero() {
            return;
        }
        self.m = transvection(&v, &k).mul(&self.m);
        self.applied.push(TransvectionFactor { v, k });
    }

    fn twist(&mut self, b: B, k: BigInt) {
        let v = self.basis(b);
        self.apply(v, k);
    }

    /// `E_{a,b}^k = T_{a+b}^k T_a^{−k} T_b^{−k}` for orthogonal basis
    /// vectors: `s ↦ s + k(⟨s,a⟩b + ⟨s,b⟩a)`.
    fn mixed(&mut self, a: B, b: B, k: BigInt) {
        if k.is_zero() {
            return;
        }
        let va = self.basis(a);
        let vb = self.basis(b);
        self.apply(vb.clone(), -&k);
        self.apply(va.clone(), -&k);
        self.apply(va.add(&vb), k);
    }

    fn reduce_x_column(&mut self, i: usize) {
        let col = 2 * i;
        // Euclid inside every handle h >= i until the y_h entry vanishes.
        for h in i..self.g {
            loop {
                let sx = self.entry(B::X(h), col).clone();
                let sy = self.entry(B::Y(h), col).clone();
                if sy.is_zero() {
                    break;
                }
                if sx.is_zero() {
                    // T_{x_h}^{-1}: s_x ← s_x + s_y
                    self.twist(B::X(h), BigInt::from(-1));
                } else if sx.abs() > sy.abs() {
                    // T_{x_h}^q: s_x ← s_x − q s_y
                    self.twist(B::X(h), sx.div_floor(&sy));
                } else {
                    // T_{y_h}^k: s_y ← s_y + k s_x
                    self.twist(B::Y(h), -sy.div_floor(&sx));
                }
            }
        }
        // Euclid across handles on the x entries; pivot = smallest nonzero
        // magnitude, ties to the lowest index.
        loop {
            let nonzero: Vec<usize> = (i..self.g).filter(|&h| !self.entry(B::X(h), col).is_zero()).collect();
            if nonzero.len() <= 1 {
                break;
            }
            let p = *nonzero
                .iter()
                .min_by_key(|&&h| self.entry(B::X(h), col).abs())
                .expect("nonempty");
            for &l in &nonzero {
                if l == p {
                    continue;
                }
                let q = self.entry(B::X(l), col).div_floor(self.entry(B::X(p), col));
                // s_{x_l} ← s_{x_l} − q s_{x_p} via E_{x_l, y_p}
                self.mixed(B::X(l), B::Y(p), -q);
            }
        }
        let p = (i..self.g)
            .find(|&h| !self.entry(B::X(h), col).is_zero())
            .expect("column of an invertible matrix is nonzero");
        if p != i {
            // s_{x_i} ← s_{x_i} + s_{x_p}, then s_{x_p} ← s_{x_p} − s_{x_i}
            self.mixed(B::X(i), B::Y(p), BigInt::one());
            self.mixed(B::X(p), B::Y(i), BigInt::from(-1));
        }
        let v = self.entry(B::X(i), col).clone();
        debug_assert!(v.abs().is_one(), "column of a unimodular matrix is primitive");
        if v.is_negative() {
            // −x_i → −x_i − y_i → x_i − y_i → x_i
            self.twist(B::Y(i), BigInt::one());
            self.twist(B::X(i), BigInt::from(2));
            self.twist(B::Y(i), BigInt::one());
        }
    }

    fn reduce_y_column(&mut self, i: usize) {
        let col = 2 * i + 1;
        debug_assert!(self.entry(B::Y(i), col).is_one());
        for j in i + 1..self.g {
            // t_{x_j} ← t_{x_j} − k t_{y_i}
            let k = self.entry(B::X(j), col).clone();
            self.mixed(B::X(i), B::X(j), k);
            // t_{y_j} ← t_{y_j} − k t_{y_i}
            let k = self.entry(B::Y(j), col).clone();
            self.mixed(B::X(i), B::Y(j), k);
        }
        // t_{x_i} ← t_{x_i} − k t_{y_i}
        let k = self.entry(B::X(i), col).clone();
        self.twist(B::X(i), k);
    }
}

/// `(S̄*θ)(x) = θ(S̄x)`.
pub fn pullback_h1(s: &Mod2Matrix, theta: &CohomClass) -> Result<CohomClass> {
    if !s.is_symplectic() {
        return Err(Error::NotSymplectic);
    }
    Ok(theta.pullback(s))
}
