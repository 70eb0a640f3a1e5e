//! Text syntax for vectors, words and partitions.
//!
//! Vectors are either coordinate lists (`[1,0,-2,0]` or `1,0,-2,0`) or
//! integer combinations of named basis elements (`x1 - 2y2 + d3`). Words
//! are whitespace-separated letters:
//!
//! * `T(<punct-vec>;w=<int>)^<k>`: twist about a class with declared winding,
//! * `Tx1`, `Ty2`, `Td2` (optionally `^<k>`): twists about basis curves and
//!   boundary loops, windings read from the framing,
//! * `P(<i>;<abs-vec>)`: point-push of `p_i` around a class.

use num_bigint::BigInt;

use relmono::{AbsVec, Framing, Generator, PunctVec, SurfaceSpec, Word};

use crate::error::CliError;

fn err(msg: impl Into<String>) -> CliError {
    CliError::Parse(msg.into())
}

fn parse_int<T: std::str::FromStr>(s: &str, what: &str) -> Result<T, CliError> {
    s.trim().parse().map_err(|_| err(format!("bad {what} {s:?}")))
}

/// Which named basis elements a vector may use.
#[derive(Clone, Copy, PartialEq, Eq)]
enum Kind {
    Abs,
    Punct,
}

fn parse_coords(spec: &SurfaceSpec, text: &str, kind: Kind) -> Result<Vec<BigInt>, CliError> {
    let len = match kind {
        Kind::Abs => spec.abs_dim(),
        Kind::Punct => spec.rel_dim(),
    };
    let t = text.trim();
    let inner = t.strip_prefix('[').and_then(|s| s.strip_suffix(']'));
    let looks_numeric = t.chars().all(|c| c.is_ascii_digit() || "-+, []".contains(c));
    let coords = if inner.is_some() || (looks_numeric && t.contains(',')) {
        inner
            .unwrap_or(t)
            .split(',')
            .map(|c| parse_int::<BigInt>(c, "coordinate"))
            .collect::<Result<Vec<_>, _>>()?
    } else {
        parse_combination(spec, t, kind, len)?
    };
    if coords.len() != len {
        return Err(err(format!("expected {len} coordinates, got {}", coords.len())));
    }
    Ok(coords)
}

fn parse_combination(spec: &SurfaceSpec, text: &str, kind: Kind, len: usize) -> Result<Vec<BigInt>, CliError> {
    let mut out = vec![BigInt::from(0); len];
    let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() {
        return Err(err("empty vector"));
    }
    let mut terms = Vec::new();
    let mut start = 0;
    for (i, c) in compact.char_indices() {
        if (c == '+' || c == '-') && i > 0 {
            terms.push(&compact[start..i]);
            start = i;
        }
    }
    terms.push(&compact[start..]);
    for term in terms {
        let (sign, body) = match term.strip_prefix('-') {
            Some(rest) => (-1, rest),
            None => (1, term.strip_prefix('+').unwrap_or(term)),
        };
        let split = body
            .find(|c: char| c.is_ascii_alphabetic())
            .ok_or_else(|| err(format!("term {term:?} names no basis element")))?;
        let coef: BigInt = if split == 0 {
            BigInt::from(1)
        } else {
            parse_int(&body[..split], "coefficient")?
        };
        let name = &body[split..];
        let letter = name.chars().next().expect("nonempty");
        let index: usize = parse_int(&name[1..], "basis index")?;
        let pos = match (letter, kind) {
            ('x', _) | ('y', _) if (1..=spec.g()).contains(&index) => 2 * (index - 1) + usize::from(letter == 'y'),
            ('d', Kind::Punct) if (2..=spec.n()).contains(&index) => spec.abs_dim() + index - 2,
            _ => return Err(err(format!("unknown basis element {name:?}"))),
        };
        out[pos] += sign * coef;
    }
    Ok(out)
}

pub fn parse_abs_vec(spec: &SurfaceSpec, text: &str) -> Result<AbsVec, CliError> {
    Ok(AbsVec::new(parse_coords(spec, text, Kind::Abs)?))
}

pub fn parse_punct_vec(spec: &SurfaceSpec, text: &str) -> Result<PunctVec, CliError> {
    Ok(PunctVec::new(parse_coords(spec, text, Kind::Punct)?))
}

/// Splits off a trailing `^<k>` power.
fn split_power(tok: &str) -> Result<(&str, i64), CliError> {
    match tok.rfind('^') {
        Some(p) if !tok[p..].contains(')') => Ok((&tok[..p], parse_int(&tok[p + 1..], "power")?)),
        _ => Ok((tok, 1)),
    }
}

fn parse_letter(f: &Framing, tok: &str) -> Result<Generator, CliError> {
    let spec = f.spec();
    if let Some(body) = tok.strip_prefix("P(").and_then(|s| s.strip_suffix(')')) {
        let (i, v) = body
            .split_once(';')
            .ok_or_else(|| err(format!("bad point-push {tok:?}")))?;
        return Ok(Generator::push(parse_int(i, "point index")?, parse_abs_vec(spec, v)?));
    }
    let (base, k) = split_power(tok)?;
    if let Some(body) = base.strip_prefix("T(").and_then(|s| s.strip_suffix(')')) {
        let (v, w) = body.split_once(';').ok_or_else(|| err(format!("bad twist {tok:?}")))?;
        let w = w
            .trim()
            .strip_prefix("w=")
            .ok_or_else(|| err(format!("twist {tok:?} needs w=<int>")))?;
        return Ok(Generator::twist(
            parse_punct_vec(spec, v)?,
            k,
            parse_int::<BigInt>(w, "winding")?,
        ));
    }
    let rest = base
        .strip_prefix('T')
        .ok_or_else(|| err(format!("unknown letter {tok:?}")))?;
    let mut chars = rest.chars();
    let which = chars.next().ok_or_else(|| err(format!("unknown letter {tok:?}")))?;
    let i: usize = parse_int(chars.as_str(), "letter index")?;
    match which {
        'x' | 'y' if (1..=spec.g()).contains(&i) => Ok(if which == 'x' {
            Generator::twist_x(f, i, k)
        } else {
            Generator::twist_y(f, i, k)
        }),
        'd' if (2..=spec.n()).contains(&i) => Ok(Generator::twist_loop(spec, i, k)),
        _ => Err(err(format!("unknown letter {tok:?}"))),
    }
}

/// Parses a word on the surface of `f`; basis twists take their windings
/// from `f`.
pub fn parse_word(f: &Framing, text: &str) -> Result<Word, CliError> {
    let letters = text
        .split_whitespace()
        .map(|tok| parse_letter(f, tok))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Word::new(f.spec().clone(), letters)?)
}

/// `"k1,k2,..."` with every `k_i ≥ 1` and an even sum of at least 2.
pub fn parse_partition(text: &str) -> Result<SurfaceSpec, CliError> {
    let kappa = text
        .split(',')
        .map(|k| parse_int::<i64>(k, "partition entry"))
        .collect::<Result<Vec<_>, _>>()?;
    if kappa.iter().any(|&k| k < 1) {
        return Err(err("partition entries must be positive"));
    }
    let sum: i64 = kappa.iter().sum();
    if sum % 2 != 0 || sum < 2 {
        return Err(err(format!("partition sum {sum} is not 2g-2 for any g >= 2")));
    }
    Ok(SurfaceSpec::new((sum / 2 + 1) as usize, kappa)?)
}
