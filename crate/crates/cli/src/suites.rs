//! Seeded verification suites behind `relmono verify`.

use num_bigint::BigInt;
use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use relmono::bruteforce::{
    kernel_order_formula, kernel_order_mod2, qform_census, sp2_group, verify_qhat_crossed, CountMethod, MAX_GENUS,
    MAX_POINTS,
};
use relmono::framing::{curve_parity, parity_p, quadratic_extension};
use relmono::mod2::sp2_order_formula;
use relmono::moves::{apply_move, match_framings};
use relmono::paut::transvection;
use relmono::sample::{
    random_framing, random_m_block, random_move, random_paut, random_primitive, random_punct_class, random_spec,
    random_word, Alphabet, Parity,
};
use relmono::word::{abs_action_mod2, basis_curve, trace_curve};
use relmono::{
    act_framing, arf, delta_word, kernel_test, lift_transvection, q_hat, spin_form, theta, v_kappa_star, word_to_paut,
    Error, Framing, Generator, PAutElem, SurfaceSpec, Word,
};

use crate::error::CliError;

pub const SUITES: [&str; 10] = [
    "cocycle",
    "well-defined",
    "stabilizer",
    "lift",
    "census",
    "kernel-order",
    "even-form",
    "relaut",
    "match",
    "parity",
];

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Report {
    pub suite: String,
    pub g: usize,
    pub trials: usize,
    pub seed: u64,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn failures(&self) -> usize {
        self.checks.iter().filter(|c| !c.passed).count()
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            let tag = if c.passed { "PASS" } else { "FAIL" };
            out.push_str(&format!("{tag} {}: {}\n", c.name, c.detail));
        }
        out.push_str(&format!(
            "{}: {} passed, {} failed (g={}, trials={}, seed={})\n",
            self.suite,
            self.checks.len() - self.failures(),
            self.failures(),
            self.g,
            self.trials,
            self.seed
        ));
        out
    }
}

/// Counts trials and keeps the first failure.
struct Tally {
    name: String,
    count: usize,
    failure: Option<String>,
}

impl Tally {
    fn new(name: &str) -> Self {
        Self {
            name: name.into(),
            count: 0,
            failure: None,
        }
    }

    fn record(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.count += 1;
        if !ok && self.failure.is_none() {
            self.failure = Some(format!("trial {}: {}", self.count, describe()));
        }
    }

    fn finish(self, unit: &str) -> Check {
        Check {
            name: self.name,
            passed: self.failure.is_none(),
            detail: self.failure.unwrap_or_else(|| format!("{} {unit}", self.count)),
        }
    }
}

fn fixed(name: &str, passed: bool, detail: String) -> Check {
    Check {
        name: name.into(),
        passed,
        detail,
    }
}

struct Ctx {
    g: usize,
    trials: usize,
    rng: ChaCha8Rng,
}

impl Ctx {
    fn spec(&mut self, max_n: usize, parity: Parity) -> SurfaceSpec {
        let min_n = if parity == Parity::SomeOdd { 2 } else { 1 };
        let n = self.rng.gen_range(min_n..=max_n.max(min_n));
        random_spec(&mut self.rng, self.g, n, parity)
    }
}

/// Runs one suite, or every suite for `"all"`.
pub fn run(suite: &str, g: usize, trials: usize, seed: u64) -> Result<Report, CliError> {
    if g < 2 {
        return Err(Error::GenusTooSmall(g).into());
    }
    let names: Vec<&str> = match suite {
        "all" => SUITES.to_vec(),
        s if SUITES.contains(&s) => vec![s],
        s => return Err(CliError::UnknownSuite(s.into())),
    };
    let mut checks = Vec::new();
    for (i, name) in names.iter().enumerate() {
        let mut ctx = Ctx {
            g,
            trials,
            rng: ChaCha8Rng::seed_from_u64(seed.wrapping_add(i as u64)),
        };
        checks.extend(match *name {
            "cocycle" => cocycle(&mut ctx),
            "well-defined" => well_defined(&mut ctx),
            "stabilizer" => stabilizer(&mut ctx),
            "lift" => lift(&mut ctx),
            "census" => census(&mut ctx)?,
            "kernel-order" => kernel_order(&mut ctx)?,
            "even-form" => even_form(&mut ctx),
            "relaut" => relaut(&mut ctx),
            "match" => matching(&mut ctx),
            "parity" => parity(&mut ctx),
            _ => unreachable!("suite names checked above"),
        });
    }
    Ok(Report {
        suite: suite.into(),
        g,
        trials,
        seed,
        checks,
    })
}

fn cocycle(ctx: &mut Ctx) -> Vec<Check> {
    let mut t = Tally::new("cocycle identity");
    for _ in 0..ctx.trials {
        let spec = ctx.spec(3, Parity::Any);
        let f = random_framing(&mut ctx.rng, &spec, false);
        let (l1, l2) = (ctx.rng.gen_range(0..8), ctx.rng.gen_range(0..8));
        let w1 = random_word(&mut ctx.rng, &f, l1, Alphabet::Full);
        let w2 = random_word(&mut ctx.rng, &f, l2, Alphabet::Full);
        let joined = w1.concat(&w2).and_then(|w| delta_word(&w, &f));
        let split = delta_word(&w1, &f).and_then(|d1| Ok(d1.pullback(&abs_action_mod2(&w2)) + delta_word(&w2, &f)?));
        t.record(joined.is_ok() && joined == split, || format!("{joined:?} != {split:?}"));
    }
    vec![t.finish("word pairs")]
}

fn well_defined(ctx: &mut Ctx) -> Vec<Check> {
    let mut t = Tally::new("theta agrees with word evaluation");
    for _ in 0..ctx.trials {
        let spec = ctx.spec(3, Parity::Any);
        let f = random_framing(&mut ctx.rng, &spec, false);
        let len = ctx.rng.gen_range(0..12);
        let w = random_word(&mut ctx.rng, &f, len, Alphabet::Full);
        let th = theta(&word_to_paut(&w), &f);
        let dw = delta_word(&w, &f);
        t.record(th.is_ok() && th == dw, || format!("{th:?} != {dw:?}"));
    }
    let mut inv = Tally::new("word times inverse has zero delta");
    for _ in 0..ctx.trials {
        let spec = ctx.spec(3, Parity::Any);
        let f = random_framing(&mut ctx.rng, &spec, false);
        let len = ctx.rng.gen_range(1..10);
        let w = random_word(&mut ctx.rng, &f, len, Alphabet::Full);
        let ww = w.concat(&w.inverse()).expect("same surface");
        let d = delta_word(&ww, &f);
        let ok = word_to_paut(&ww).is_identity() && d.as_ref().is_ok_and(|d| d.is_zero());
        inv.record(ok, || format!("delta {d:?}"));
    }
    vec![t.finish("words"), inv.finish("words")]
}

/// Twist about a class of winding zero.
fn zero_winding_letter(rng: &mut ChaCha8Rng, f: &Framing) -> Generator {
    let spec = f.spec();
    let k = [-2, -1, 1, 2][rng.gen_range(0..4)];
    loop {
        if rng.gen_bool(0.2) {
            if let Some(j) = (2..=spec.n()).find(|&j| spec.kappa_at(j) == -1) {
                return Generator::twist_loop(spec, j, k);
            }
        }
        let c = random_punct_class(rng, spec, 2);
        if curve_parity(f, &c) == 0 {
            return Generator::twist(c, k, 0);
        }
    }
}

fn stabilizer(ctx: &mut Ctx) -> Vec<Check> {
    let mut t = Tally::new("framing stabilizer lies in the kernel");
    for _ in 0..ctx.trials {
        let spec = ctx.spec(3, Parity::Any);
        let f = random_framing(&mut ctx.rng, &spec, true);
        let len = ctx.rng.gen_range(1..8);
        let letters = (0..len).map(|_| zero_winding_letter(&mut ctx.rng, &f)).collect();
        let w = Word::new(spec, letters).expect("valid letters");
        let fixes = act_framing(&w, &f).is_ok_and(|h| h == f);
        let inside = kernel_test(&word_to_paut(&w), &f).unwrap_or(false);
        t.record(fixes && inside, || format!("fixes framing {fixes}, in kernel {inside}"));
    }
    vec![t.finish("stabilizing words")]
}

fn lift(ctx: &mut Ctx) -> Vec<Check> {
    let mut t = Tally::new("transvection lifts");
    let (mut lifted, mut refused) = (0, 0);
    for i in 0..ctx.trials {
        let parity = if i % 2 == 0 { Parity::AllEven } else { Parity::SomeOdd };
        let spec = ctx.spec(3, parity);
        let f = random_framing(&mut ctx.rng, &spec, false);
        let v = random_primitive(&mut ctx.rng, ctx.g, 3);
        let tv = transvection(&v, &BigInt::one());
        let obstructed = spec.all_kappa_even() && parity_p(&f, &v) == 1;
        match lift_transvection(&v, &f) {
            Ok(a) => {
                let ok = a.s() == &tv && kernel_test(&a, &f).unwrap_or(false) && !obstructed;
                lifted += 1;
                t.record(ok, || format!("bad lift of {:?}", v.coords()));
            }
            Err(Error::NoLiftExists) => {
                refused += 1;
                t.record(obstructed, || format!("refused liftable {:?}", v.coords()));
            }
            Err(e) => t.record(false, || e.to_string()),
        }
    }
    let mut c = t.finish("vectors");
    if c.passed {
        c.detail = format!("{lifted} lifts, {refused} certified refusals");
    }
    vec![c]
}

fn census(ctx: &mut Ctx) -> Result<Vec<Check>, CliError> {
    let g = ctx.g;
    let group = sp2_group(g)?;
    let order = sp2_order_formula(g as u32);
    let half = 1usize << (g - 1);
    let (even, odd) = (half * ((1 << g) + 1), half * ((1 << g) - 1));
    let census = qform_census(g, true)?;
    let stab = census.class_stabilizers();
    let expected_stab = ((order / even as u128) as usize, (order / odd as u128) as usize);
    let mut out = vec![
        fixed(
            "symplectic group order",
            group.len() as u128 == order,
            format!("|Sp({},2)| = {}", 2 * g, group.len()),
        ),
        fixed(
            "quadratic forms by Arf invariant",
            (census.even, census.odd) == (even, odd),
            format!("({}, {}) even/odd", census.even, census.odd),
        ),
        fixed(
            "stabilizer orders",
            stab == Some(expected_stab),
            match stab {
                Some((a, b)) => format!("({a}, {b}) even/odd"),
                None => "not constant on Arf classes".into(),
            },
        ),
    ];
    let forms = [
        relmono::QForm::from_mask(g, 0),
        relmono::QForm::from_mask(g, (1 << (2 * g)) - 1),
    ];
    if g <= 2 {
        let ok = forms.iter().all(|q| verify_qhat_crossed(group, q));
        let n = group.len();
        out.push(fixed(
            "q-hat crossed identity",
            ok,
            format!("{n}x{n} pairs, both Arf classes"),
        ));
    } else {
        let mut t = Tally::new("q-hat crossed identity");
        for _ in 0..ctx.trials {
            let a = group.element(ctx.rng.gen_range(0..group.len()));
            let b = group.element(ctx.rng.gen_range(0..group.len()));
            for q in &forms {
                let lhs = q_hat(q, &a.mul(&b));
                let rhs = q_hat(q, &a).and_then(|qa| Ok(qa.pullback(&b) + q_hat(q, &b)?));
                t.record(lhs.is_ok() && lhs == rhs, || "identity fails".into());
            }
        }
        out.push(t.finish("sampled checks"));
    }
    Ok(out)
}

fn kernel_order(ctx: &mut Ctx) -> Result<Vec<Check>, CliError> {
    if ctx.g > MAX_GENUS {
        return Err(Error::GenusTooLarge {
            g: ctx.g,
            max: MAX_GENUS,
        }
        .into());
    }
    let mut t = Tally::new("kernel order: counts agree with the regime formula");
    let cases = ctx.trials.clamp(1, 20);
    for _ in 0..cases {
        let max_n = if ctx.g == 2 { MAX_POINTS } else { 2 };
        let spec = ctx.spec(max_n, Parity::Any);
        let f = random_framing(&mut ctx.rng, &spec, false);
        let hist = kernel_order_mod2(&f, CountMethod::Histogram)?;
        let formula = kernel_order_formula(&f)?;
        let direct = if ctx.g == 2 {
            Some(kernel_order_mod2(&f, CountMethod::Direct)?)
        } else {
            None
        };
        let ok = hist == formula && direct.is_none_or(|d| d == hist);
        t.record(ok, || {
            format!(
                "kappa {:?}: histogram {hist}, direct {direct:?}, formula {formula}",
                spec.kappa()
            )
        });
    }
    Ok(vec![t.finish("framings")])
}

fn even_form(ctx: &mut Ctx) -> Vec<Check> {
    let mut t = Tally::new("even regime: theta equals q-hat");
    for _ in 0..ctx.trials {
        let spec = ctx.spec(4, Parity::AllEven);
        let f = random_framing(&mut ctx.rng, &spec, false);
        let len = ctx.rng.gen_range(0..10);
        let a = random_paut(&mut ctx.rng, &spec, len);
        let th = theta(&a, &f);
        let qh = spin_form(&f).and_then(|q| q_hat(&q, &a.s_mod2()));
        let ext = q_hat(&quadratic_extension(&f), &a.s_mod2());
        t.record(th.is_ok() && th == qh && qh == ext, || format!("{th:?} != {qh:?}"));
    }
    vec![t.finish("elements")]
}

fn relaut(ctx: &mut Ctx) -> Vec<Check> {
    let mut t = Tally::new("RelAut: theta equals v_kappa*");
    for _ in 0..ctx.trials {
        let n = ctx.rng.gen_range(2..=4);
        let spec = random_spec(&mut ctx.rng, ctx.g, n, Parity::Any);
        let f = random_framing(&mut ctx.rng, &spec, false);
        let m = random_m_block(&mut ctx.rng, &spec, 5);
        let a = PAutElem::rel_aut(&spec, m.clone()).expect("shape by construction");
        let th = theta(&a, &f);
        let vk = v_kappa_star(&m, &spec);
        t.record(th.is_ok() && th == vk, || format!("{th:?} != {vk:?}"));
    }
    vec![t.finish("elements")]
}

fn matching(ctx: &mut Ctx) -> Vec<Check> {
    let mut arf_kept = Tally::new("moves preserve Arf");
    let mut round = Tally::new("matching reproduces the target");
    for _ in 0..ctx.trials {
        let spec = ctx.spec(4, Parity::Any);
        let f = random_framing(&mut ctx.rng, &spec, true);
        let mut h = f.clone();
        for _ in 0..ctx.rng.gen_range(0..10) {
            let m = random_move(&mut ctx.rng, &h);
            let next = apply_move(&h, &m).expect("valid move");
            arf_kept.record(arf(&next) == arf(&h), || format!("{m:?}"));
            h = next;
        }
        let result = match_framings(&f, &h).and_then(|moves| {
            moves.iter().try_fold(f.clone(), |cur, m| {
                let next = apply_move(&cur, m)?;
                arf_kept.record(arf(&next) == arf(&cur), || format!("{m:?}"));
                Ok(next)
            })
        });
        round.record(result.as_ref() == Ok(&h), || format!("{result:?}"));
    }
    vec![arf_kept.finish("moves"), round.finish("pairs")]
}

fn parity(ctx: &mut Ctx) -> Vec<Check> {
    let mut t = Tally::new("traced winding parity equals P");
    for _ in 0..ctx.trials {
        let spec = ctx.spec(3, Parity::Any);
        let f = random_framing(&mut ctx.rng, &spec, false);
        let len = ctx.rng.gen_range(1..15);
        let w = random_word(&mut ctx.rng, &f, len, Alphabet::BasisTwists);
        for b in 0..spec.abs_dim() {
            match trace_curve(&w, &basis_curve(&f, b)) {
                Ok(img) => {
                    let class = img.class.abs_part(&spec);
                    let got = u8::from(img.winding.bit(0));
                    let want = parity_p(&f, &class);
                    t.record(got == want, || format!("basis {b}: winding parity {got}, P = {want}"));
                }
                Err(e) => t.record(false, || e.to_string()),
            }
        }
    }
    vec![t.finish("curves")]
}
