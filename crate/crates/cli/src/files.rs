//! JSON file formats for framings and automorphisms.

use std::path::Path;

use num_bigint::BigInt;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use relmono::{Framing, IntMatrix, PAutElem, SurfaceSpec};

use crate::error::CliError;

/// Integers as plain JSON numbers of any size.
mod big {
    use super::*;
    use serde::de::Error as _;
    use serde::ser::Error as _;
    use serde_json::Number;

    fn to_number(v: &BigInt) -> Result<Number, String> {
        v.to_string().parse::<Number>().map_err(|e| e.to_string())
    }

    fn from_number(n: &Number) -> Result<BigInt, String> {
        n.to_string()
            .parse::<BigInt>()
            .map_err(|_| format!("expected an integer, got {n}"))
    }

    pub mod vec {
        use super::*;

        pub fn serialize<S: Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
            v.iter()
                .map(to_number)
                .collect::<Result<Vec<_>, _>>()
                .map_err(S::Error::custom)?
                .serialize(s)
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigInt>, D::Error> {
            Vec::<Number>::deserialize(d)?
                .iter()
                .map(from_number)
                .collect::<Result<_, _>>()
                .map_err(D::Error::custom)
        }
    }

    pub mod opt_vec {
        use super::*;

        pub fn serialize<S: Serializer>(v: &Option<Vec<BigInt>>, s: S) -> Result<S::Ok, S::Error> {
            match v {
                Some(v) => vec::serialize(v, s),
                None => s.serialize_none(),
            }
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Vec<BigInt>>, D::Error> {
            Option::<Vec<Number>>::deserialize(d)?
                .map(|v| v.iter().map(from_number).collect::<Result<_, _>>())
                .transpose()
                .map_err(D::Error::custom)
        }
    }

    pub mod mat {
        use super::*;

        pub fn serialize<S: Serializer>(m: &[Vec<BigInt>], s: S) -> Result<S::Ok, S::Error> {
            m.iter()
                .map(|r| r.iter().map(to_number).collect::<Result<Vec<_>, _>>())
                .collect::<Result<Vec<_>, _>>()
                .map_err(S::Error::custom)?
                .serialize(s)
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Vec<BigInt>>, D::Error> {
            Vec::<Vec<Number>>::deserialize(d)?
                .iter()
                .map(|r| r.iter().map(from_number).collect::<Result<_, _>>())
                .collect::<Result<_, _>>()
                .map_err(D::Error::custom)
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FramingFile {
    pub g: usize,
    pub kappa: Vec<i64>,
    #[serde(with = "big::vec")]
    pub wind_x: Vec<BigInt>,
    #[serde(with = "big::vec")]
    pub wind_y: Vec<BigInt>,
    #[serde(with = "big::opt_vec", default, skip_serializing_if = "Option::is_none")]
    pub arc2: Option<Vec<BigInt>>,
}

impl FramingFile {
    pub fn to_framing(&self) -> Result<Framing, CliError> {
        let spec = SurfaceSpec::new(self.g, self.kappa.clone())?;
        Ok(Framing::new(
            spec,
            self.wind_x.clone(),
            self.wind_y.clone(),
            self.arc2.clone(),
        )?)
    }

    pub fn from_framing(f: &Framing) -> Self {
        let spec = f.spec();
        Self {
            g: spec.g(),
            kappa: spec.kappa().to_vec(),
            wind_x: f.wind_x().to_vec(),
            wind_y: f.wind_y().to_vec(),
            arc2: f.arc2().map(<[BigInt]>::to_vec),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PAutFile {
    pub g: usize,
    pub n: usize,
    #[serde(rename = "S", with = "big::mat")]
    pub s: Vec<Vec<BigInt>>,
    #[serde(rename = "M", with = "big::mat")]
    pub m: Vec<Vec<BigInt>>,
}

impl PAutFile {
    fn dim_check(&self) -> Result<(IntMatrix, IntMatrix), CliError> {
        let d = 2 * self.g;
        if self.n == 0 {
            return Err(relmono::Error::NoMarkedPoints.into());
        }
        let s = IntMatrix::from_rows(&self.s, d)
            .filter(|s| s.rows() == d)
            .ok_or_else(|| CliError::Validation(format!("S must be a {d}x{d} matrix")))?;
        let m = if self.n == 1 && self.m.is_empty() {
            IntMatrix::zeros(d, 0)
        } else {
            IntMatrix::from_rows(&self.m, self.n - 1)
                .filter(|m| m.rows() == d)
                .ok_or_else(|| CliError::Validation(format!("M must be a {d}x{} matrix", self.n - 1)))?
        };
        Ok((s, m))
    }

    /// The integer symplectic block, validated.
    pub fn symplectic_block(&self) -> Result<IntMatrix, CliError> {
        let (s, _) = self.dim_check()?;
        if !relmono::paut::is_symplectic(&s) {
            return Err(relmono::Error::NotSymplectic.into());
        }
        Ok(s)
    }

    /// The automorphism on the surface of `spec`, which must share `g` and `n`.
    pub fn to_paut(&self, spec: &SurfaceSpec) -> Result<PAutElem, CliError> {
        let (s, m) = self.dim_check()?;
        if spec.g() != self.g || spec.n() != self.n {
            return Err(relmono::Error::SpecMismatch.into());
        }
        Ok(PAutElem::new(spec.clone(), s, m)?)
    }

    pub fn from_paut(a: &PAutElem) -> Self {
        let spec = a.spec();
        Self {
            g: spec.g(),
            n: spec.n(),
            s: a.s().row_vecs(),
            m: a.m().row_vecs(),
        }
    }
}

pub fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Validation(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| CliError::Validation(format!("{}: {e}", path.display())))
}

pub fn load_framing(path: &Path) -> Result<Framing, CliError> {
    read_json::<FramingFile>(path)?.to_framing()
}
