//! Argument definitions and command dispatch.

use std::path::PathBuf;

use clap::{Parser, Subcommand};
use num_bigint::BigInt;
use serde::Serialize;
use serde_json::{json, Value};

use relmono::{
    act_framing, arf, delta_word, factor_sp, kernel_test, lift_transvection, match_framings, structure_report, theta,
    word_to_paut, Error, Framing, PAutElem,
};

use crate::error::CliError;
use crate::files::{load_framing, read_json, FramingFile, PAutFile};
use crate::parse::{parse_abs_vec, parse_partition, parse_word};
use crate::suites;

#[derive(Debug, Parser)]
#[command(
    name = "relmono",
    version,
    about = "Winding-number crossed homomorphism on framed surfaces"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Arf invariant of a framing.
    Arf {
        #[arg(long)]
        framing: PathBuf,
    },
    /// Theta of an automorphism file or of a word.
    Theta {
        #[arg(long)]
        framing: PathBuf,
        #[arg(long, required_unless_present = "word", conflicts_with = "word")]
        paut: Option<PathBuf>,
        #[arg(long)]
        word: Option<String>,
    },
    /// Whether an automorphism file or a word lies in the kernel of theta.
    KernelTest {
        #[arg(long)]
        framing: PathBuf,
        #[arg(long, required_unless_present = "word", conflicts_with = "word")]
        paut: Option<PathBuf>,
        #[arg(long)]
        word: Option<String>,
    },
    /// Kernel element over the transvection about a primitive class.
    Lift {
        #[arg(long)]
        framing: PathBuf,
        /// Primitive absolute class, e.g. `x1+y2` or `[1,0,0,1]`.
        #[arg(long = "vec", allow_hyphen_values = true)]
        vector: String,
    },
    /// Factor the symplectic block into transvections.
    FactorSp {
        #[arg(long)]
        paut: PathBuf,
    },
    /// Push a framing forward along a word.
    Act {
        #[arg(long)]
        framing: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        word: String,
    },
    /// Moves carrying one framing to another of the same Arf invariant.
    Match {
        #[arg(long)]
        framing: PathBuf,
        #[arg(long)]
        target: PathBuf,
    },
    /// Framing preset and kernel structure for a partition `k1,k2,...`.
    Stratum {
        partition: String,
        /// Skip the mod-2 kernel count.
        #[arg(long)]
        no_count: bool,
    },
    /// Run a verification suite, or `all`.
    Verify {
        suite: String,
        #[arg(long, default_value_t = 2)]
        g: usize,
        #[arg(long, default_value_t = 200)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Print the report as JSON.
        #[arg(long)]
        json: bool,
    },
}

/// Text to print and the exit code.
#[derive(Debug)]
pub struct Output {
    pub text: String,
    pub code: u8,
}

impl Output {
    fn json(v: &impl Serialize) -> Self {
        Self {
            text: format!("{}\n", serde_json::to_string(v).expect("serializable")),
            code: 0,
        }
    }
}

fn number(v: &BigInt) -> Value {
    Value::Number(v.to_string().parse().expect("integer literal"))
}

fn automorphism(f: &Framing, paut: Option<&PathBuf>, word: Option<&String>) -> Result<PAutElem, CliError> {
    match (paut, word) {
        (Some(p), _) => read_json::<PAutFile>(p)?.to_paut(f.spec()),
        (None, Some(w)) => Ok(word_to_paut(&parse_word(f, w)?)),
        (None, None) => Err(CliError::Validation("one of --paut or --word is required".into())),
    }
}

pub fn run(cli: &Cli) -> Result<Output, CliError> {
    match &cli.command {
        Command::Arf { framing } => {
            let f = load_framing(framing)?;
            Ok(Output::json(&json!({ "arf": arf(&f)? })))
        }
        Command::Theta { framing, paut, word } => {
            let f = load_framing(framing)?;
            let a = automorphism(&f, paut.as_ref(), word.as_ref())?;
            let th = theta(&a, &f)?;
            if let Some(w) = word {
                let d = delta_word(&parse_word(&f, w)?, &f)?;
                assert_eq!(d, th, "word evaluation disagrees with theta");
            }
            Ok(Output::json(&json!({ "theta": th.to_vec() })))
        }
        Command::KernelTest { framing, paut, word } => {
            let f = load_framing(framing)?;
            let a = automorphism(&f, paut.as_ref(), word.as_ref())?;
            Ok(Output::json(&json!({ "in_kernel": kernel_test(&a, &f)? })))
        }
        Command::Lift { framing, vector } => {
            let f = load_framing(framing)?;
            let v = parse_abs_vec(f.spec(), vector)?;
            match lift_transvection(&v, &f) {
                Ok(a) => Ok(Output::json(
                    &json!({ "exists": true, "lift": PAutFile::from_paut(&a) }),
                )),
                Err(Error::NoLiftExists) => Ok(Output::json(&json!({ "exists": false }))),
                Err(e) => Err(e.into()),
            }
        }
        Command::FactorSp { paut } => {
            let s = read_json::<PAutFile>(paut)?.symplectic_block()?;
            let factors: Vec<Value> = factor_sp(&s)?
                .iter()
                .map(|t| json!({ "v": t.v.coords().iter().map(number).collect::<Vec<_>>(), "k": number(&t.k) }))
                .collect();
            Ok(Output::json(&json!({ "factors": factors })))
        }
        Command::Act { framing, word } => {
            let f = load_framing(framing)?;
            let h = act_framing(&parse_word(&f, word)?, &f)?;
            Ok(Output::json(&FramingFile::from_framing(&h)))
        }
        Command::Match { framing, target } => {
            let f = load_framing(framing)?;
            let h = load_framing(target)?;
            let moves = match_framings(&f, &h)?;
            Ok(Output::json(&json!({ "count": moves.len(), "moves": moves })))
        }
        Command::Stratum { partition, no_count } => {
            let spec = parse_partition(partition)?;
            let f = Framing::zero(spec, false);
            let report = if *no_count {
                relmono::kernel::structure_report_with(&f, false)
            } else {
                structure_report(&f)
            };
            Ok(Output::json(
                &json!({ "framing": FramingFile::from_framing(&f), "report": report }),
            ))
        }
        Command::Verify {
            suite,
            g,
            trials,
            seed,
            json,
        } => {
            let report = suites::run(suite, *g, *trials, *seed)?;
            let code = u8::from(report.failures() > 0);
            let text = if *json {
                format!("{}\n", serde_json::to_string(&report).expect("serializable"))
            } else {
                report.to_text()
            };
            Ok(Output { text, code })
        }
    }
}
