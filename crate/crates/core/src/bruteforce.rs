//! Exhaustive mod-2 computations for genus 2 and 3: `Sp(2g, ℤ/2)` by
//! breadth-first closure, the census of quadratic forms, and exact kernel
//! counts in `Sp(2g, 2) ⋉ Hom((ℤ/2)^{n−1}, (ℤ/2)^{2g})`.

use std::collections::HashMap;
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::framing::{arf_of_form, parity_p_mod2, quadratic_extension, Framing, QForm};
use crate::mod2::{swap_pairs, CohomClass, Mod2Matrix};
use crate::theta::q_hat_unchecked;

pub const MAX_GENUS: usize = 3;
pub const MAX_POINTS: usize = 3;

/// A finite subgroup of `Sp(2g, ℤ/2)` listed in breadth-first order from
/// the identity, with the spanning tree of the search.
#[derive(Clone, Debug)]
pub struct Mod2Group {
    g: usize,
    generators: Vec<u64>,
    elements: Vec<u64>,
    index: HashMap<u64, u32>,
    parent: Vec<u32>,
    via: Vec<u8>,
}

impl Mod2Group {
    /// Closure of the transvections about `gens` under left multiplication.
    pub fn generated_by(g: usize, gens: &[u64]) -> Result<Self> {
        check_genus(g)?;
        let dim = 2 * g;
        let mats: Vec<Mod2Matrix> = gens.iter().map(|&v| Mod2Matrix::transvection(dim, v)).collect();
        let id = Mod2Matrix::identity(dim).pack();
        let mut elements = vec![id];
        let mut index = HashMap::from([(id, 0u32)]);
        let mut parent = vec![0u32];
        let mut via = vec![u8::MAX];
        let mut head = 0;
        while head < elements.len() {
            let cur = Mod2Matrix::unpack(dim, elements[head]);
            for (k, t) in mats.iter().enumerate() {
                let key = t.mul(&cur).pack();
                if let std::collections::hash_map::Entry::Vacant(e) = index.entry(key) {
                    e.insert(elements.len() as u32);
                    elements.push(key);
                    parent.push(head as u32);
                    via.push(k as u8);
                }
            }
            head += 1;
        }
        Ok(Self {
            g,
            generators: gens.to_vec(),
            elements,
            index,
            parent,
            via,
        })
    }

    pub fn g(&self) -> usize {
        self.g
    }

    pub fn dim(&self) -> usize {
        2 * self.g
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn generators(&self) -> &[u64] {
        &self.generators
    }

    pub fn element(&self, i: usize) -> Mod2Matrix {
        Mod2Matrix::unpack(self.dim(), self.elements[i])
    }

    pub fn index_of(&self, s: &Mod2Matrix) -> Option<usize> {
        self.index.get(&s.pack()).map(|&i| i as usize)
    }

    pub fn contains(&self, s: &Mod2Matrix) -> bool {
        self.index_of(s).is_some()
    }

    pub fn iter(&self) -> impl Iterator<Item = Mod2Matrix> + '_ {
        let dim = self.dim();
        self.elements.iter().map(move |&k| Mod2Matrix::unpack(dim, k))
    }

    /// Breadth-first tree edge into element `i`: `element(i) = T_v ·
    /// element(parent)`.
    pub fn tree_edge(&self, i: usize) -> Option<(usize, u64)> {
        (i != 0).then(|| (self.parent[i] as usize, self.generators[self.via[i] as usize]))
    }

    /// Evaluates a crossed homomorphism on every element from its values on
    /// the generating transvections, along the search tree, using
    /// `Θ(T·E) = Ē*Θ(T) + Θ(E)`.
    pub fn propagate(&self, on_generator: impl Fn(u64) -> CohomClass) -> Vec<CohomClass> {
        let dim = self.dim();
        let gen_values: Vec<CohomClass> = self.generators.iter().map(|&v| on_generator(v)).collect();
        let mut out = vec![CohomClass::zero(dim); self.len()];
        for i in 1..self.len() {
            let p = self.parent[i] as usize;
            let e = self.element(p);
            out[i] = gen_values[self.via[i] as usize].pullback(&e) + out[p];
        }
        out
    }

    /// Checks the values from [`Mod2Group::propagate`] against every edge of
    /// the Cayley graph, not only the tree edges.
    pub fn is_consistent(&self, values: &[CohomClass], on_generator: impl Fn(u64) -> CohomClass) -> bool {
        let dim = self.dim();
        let mats: Vec<Mod2Matrix> = self
            .generators
            .iter()
            .map(|&v| Mod2Matrix::transvection(dim, v))
            .collect();
        let gen_values: Vec<CohomClass> = self.generators.iter().map(|&v| on_generator(v)).collect();
        (0..self.len()).all(|i| {
            let e = self.element(i);
            mats.iter().zip(&gen_values).all(|(t, tv)| {
                let j = self.index[&t.mul(&e).pack()] as usize;
                values[j] == tv.pullback(&e) + values[i]
            })
        })
    }
}

fn check_genus(g: usize) -> Result<()> {
    if g < 2 {
        Err(Error::GenusTooSmall(g))
    } else if g > MAX_GENUS {
        Err(Error::GenusTooLarge { g, max: MAX_GENUS })
    } else {
        Ok(())
    }
}

/// Mod-2 classes of the Humphries-type curves `x_i`, `y_i` and `y_i + y_{i+1}`.
pub fn standard_generators(g: usize) -> Vec<u64> {
    let mut out = Vec::with_capacity(3 * g - 1);
    for i in 0..g {
        out.push(1 << (2 * i));
        out.push(1 << (2 * i + 1));
        if i + 1 < g {
            out.push((1 << (2 * i + 1)) | (1 << (2 * i + 3)));
        }
    }
    out
}

/// `Sp(2g, ℤ/2)` for `g ∈ {2, 3}` as the closure of the standard generators.
pub fn enumerate_sp2(g: usize) -> Result<Mod2Group> {
    Mod2Group::generated_by(g, &standard_generators(g))
}

/// Shared, lazily enumerated copy of [`enumerate_sp2`].
pub fn sp2_group(g: usize) -> Result<&'static Mod2Group> {
    static GROUPS: [OnceLock<Mod2Group>; MAX_GENUS + 1] = [const { OnceLock::new() }; MAX_GENUS + 1];
    check_genus(g)?;
    Ok(GROUPS[g].get_or_init(|| enumerate_sp2(g).expect("genus checked")))
}

/// Counts of quadratic forms by Arf invariant, and optionally the stabilizer
/// order of each form (indexed by its basis mask) under `q ↦ q ∘ S̄⁻¹`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QFormCensus {
    pub g: usize,
    pub even: usize,
    pub odd: usize,
    pub stabilizers: Option<Vec<usize>>,
}

impl QFormCensus {
    /// Stabilizer order of each Arf class, if computed and constant on it.
    pub fn class_stabilizers(&self) -> Option<(usize, usize)> {
        let stab = self.stabilizers.as_ref()?;
        let pick = |arf: u8| {
            let orders: Vec<usize> = (0..stab.len() as u64)
                .filter(|&m| arf_of_form(&QForm::from_mask(self.g, m)) == arf)
                .map(|m| stab[m as usize])
                .collect();
            orders.iter().all(|&o| o == orders[0]).then(|| orders[0])
        };
        Some((pick(0)?, pick(1)?))
    }
}

pub fn qform_census(g: usize, with_stabilizers: bool) -> Result<QFormCensus> {
    check_genus(g)?;
    let count = 1u64 << (2 * g);
    let odd = (0..count)
        .filter(|&m| arf_of_form(&QForm::from_mask(g, m)) == 1)
        .count();
    let stabilizers = if with_stabilizers {
        Some(stabilizer_orders(sp2_group(g)?))
    } else {
        None
    };
    Ok(QFormCensus {
        g,
        even: count as usize - odd,
        odd,
        stabilizers,
    })
}

/// `|{S̄ : q ∘ S̄ = q}|` for every form `q` (the stabilizers of `q ↦ q∘S̄` and
/// `q ↦ q∘S̄⁻¹` coincide).
pub fn stabilizer_orders(group: &Mod2Group) -> Vec<usize> {
    let g = group.g();
    let dim = group.dim();
    let count = 1usize << dim;
    let zero = QForm::from_mask(g, 0);
    let mut out = vec![0usize; count];
    for s in group.iter() {
        // q∘S̄ has basis values q0(S̄e_b) + λ(S̄e_b) with λ the mask of q.
        let q0: u64 = s
            .columns()
            .iter()
            .enumerate()
            .fold(0, |acc, (b, &c)| acc | ((zero.eval(c) as u64) << b));
        for (mask, slot) in out.iter_mut().enumerate() {
            let lam = CohomClass::from_bits(dim, mask as u64).pullback(&s).bits();
            if lam ^ q0 == mask as u64 {
                *slot += 1;
            }
        }
    }
    out
}

/// Checks `q̂(AB) = B̄*q̂(A) + q̂(B)` for every ordered pair of elements.
pub fn verify_qhat_crossed(group: &Mod2Group, q: &QForm) -> bool {
    let values: Vec<CohomClass> = group.iter().map(|s| q_hat_unchecked(q, &s)).collect();
    let mats: Vec<Mod2Matrix> = group.iter().collect();
    mats.iter().zip(&values).all(|(a, qa)| {
        mats.iter()
            .zip(&values)
            .all(|(b, qb)| q_hat_unchecked(q, &a.mul(b)) == qa.pullback(b) + *qb)
    })
}

/// How [`kernel_order_mod2`] counts the compatible `M̄` for each `S̄`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CountMethod {
    /// Tabulates `M̄ ↦ M̄v̄_κ` once and looks up the required value.
    Histogram,
    /// Evaluates `Θ̄(S̄, M̄)` on every pair.
    Direct,
}

fn check_framing(f: &Framing) -> Result<()> {
    let spec = f.spec();
    check_genus(spec.g())?;
    if spec.n() > MAX_POINTS {
        return Err(Error::TooLarge {
            n: spec.n(),
            max: MAX_POINTS,
        });
    }
    Ok(())
}

/// `Θ̄` on `Sp(2g, 2)`, propagated from the transvection values
/// `Θ(T_v)(x) = ⟨x, v⟩P(v)` along the search tree.
pub fn sp_theta_table(group: &Mod2Group, f: &Framing) -> Vec<CohomClass> {
    let dim = group.dim();
    group.propagate(|v| {
        if parity_p_mod2(f, v) == 1 {
            CohomClass::pairing_with(dim, v)
        } else {
            CohomClass::zero(dim)
        }
    })
}

/// Number of mod-2 pairs `(S̄, M̄)` with `Θ̄ = S̄*v_κ*(M̄) + Θ̄(S̄) = 0`.
pub fn kernel_order_mod2(f: &Framing, method: CountMethod) -> Result<u128> {
    check_framing(f)?;
    let spec = f.spec();
    let group = sp2_group(spec.g())?;
    let dim = group.dim();
    let cols = spec.n() - 1;
    let kappa_cols: Vec<usize> = (0..cols).filter(|&j| spec.kappa_at(j + 2) % 2 != 0).collect();
    let m_value = |code: u64| -> u64 {
        kappa_cols
            .iter()
            .fold(0, |acc, &j| acc ^ ((code >> (j * dim)) & ((1 << dim) - 1)))
    };
    let m_count = 1u64 << (dim * cols);
    let table = sp_theta_table(group, f);
    let mut total = 0u128;
    match method {
        CountMethod::Histogram => {
            let mut hist = vec![0u128; 1 << dim];
            for code in 0..m_count {
                hist[m_value(code) as usize] += 1;
            }
            // S̄*⟨·, w⟩ = ⟨·, S̄⁻¹w⟩, so Θ̄ = 0 iff w = S̄·swap(Θ̄(S̄)).
            for (s, th) in group.iter().zip(&table) {
                total += hist[s.apply(swap_pairs(th.bits())) as usize];
            }
        }
        CountMethod::Direct => {
            for (s, th) in group.iter().zip(&table) {
                for code in 0..m_count {
                    let vk = CohomClass::pairing_with(dim, m_value(code));
                    if (vk.pullback(&s) + *th).is_zero() {
                        total += 1;
                    }
                }
            }
        }
    }
    Ok(total)
}

/// The regime formula: `|Stab(q)|·2^{2g(n−1)}` when every `κ_i` is even,
/// `|Sp(2g, 2)|·2^{2g(n−2)}` otherwise.
pub fn kernel_order_formula(f: &Framing) -> Result<u128> {
    check_framing(f)?;
    let spec = f.spec();
    let group = sp2_group(spec.g())?;
    let dim = group.dim() as u32;
    let n = spec.n() as u32;
    if spec.all_kappa_even() {
        let q = quadratic_extension(f);
        let stab = group.iter().filter(|s| q_hat_unchecked(&q, s).is_zero()).count() as u128;
        Ok(stab << (dim * (n - 1)))
    } else {
        Ok((group.len() as u128) << (dim * (n - 2)))
    }
}
