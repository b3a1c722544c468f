//! The JSON algebra file.
//!
//! ```json
//! {
//!   "name": "kt",
//!   "generators": ["alpha", "beta", "gamma", "delta"],
//!   "differential": { "gamma": [["-1", "alpha", "beta"]] },
//!   "action_generators": [[["-1","0","0","0"], ["0","-1","0","0"], ["0","0","1","0"], ["0","0","0","1"]]],
//!   "hull_datum": true,
//!   "metadata": { "note": "free-form" }
//! }
//! ```
//!
//! Each differential term `[c, a, b]` stands for `c·a∧b` with `a` before `b`
//! in generator order. Coefficients and matrix entries are integers or
//! `"p/q"` strings; they are always written back as strings. Matrix rows are
//! listed top to bottom, and column `j` is the image of generator `j`.

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;
use std::sync::Arc;

use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use sha2::{Digest, Sha256};

use crate::ce::LieAlgebra;
use crate::equivariant::ActionGenerators;
use crate::error::{Error, Result};
use crate::exterior::{Blade, DualBasis, ExteriorForm};
use crate::linalg::Matrix;
use crate::scalar::{self, Scalar};

/// A rational literal: a JSON integer or a `"p/q"` string.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Literal(pub Scalar);

impl Serialize for Literal {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&scalar::format(&self.0))
    }
}

impl<'de> Deserialize<'de> for Literal {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        struct LiteralVisitor;

        impl Visitor<'_> for LiteralVisitor {
            type Value = Literal;

            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("an integer or a rational string \"p/q\"")
            }

            fn visit_i64<E: de::Error>(self, v: i64) -> std::result::Result<Literal, E> {
                Ok(Literal(scalar::int(v)))
            }

            fn visit_u64<E: de::Error>(self, v: u64) -> std::result::Result<Literal, E> {
                Ok(Literal(Scalar::from_integer(v.into())))
            }

            fn visit_f64<E: de::Error>(self, v: f64) -> std::result::Result<Literal, E> {
                Err(E::custom(format!(
                    "bad rational literal {v}: write it as a \"p/q\" string"
                )))
            }

            fn visit_str<E: de::Error>(self, v: &str) -> std::result::Result<Literal, E> {
                scalar::parse(v)
                    .map(Literal)
                    .ok_or_else(|| E::custom(format!("bad rational literal {v:?}")))
            }
        }

        deserializer.deserialize_any(LiteralVisitor)
    }
}

/// `[coefficient, first generator, second generator]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Term(pub Literal, pub String, pub String);

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraFile {
    pub name: String,
    pub generators: Vec<String>,
    #[serde(default)]
    pub differential: BTreeMap<String, Vec<Term>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub action_generators: Vec<Vec<Vec<Literal>>>,
    /// The input is the unipotent part of an algebraic hull together with
    /// its reductive action, so verdicts transfer to the standard manifold.
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub hull_datum: bool,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub metadata: BTreeMap<String, serde_json::Value>,
}

impl AlgebraFile {
    pub fn new<S: AsRef<str>>(name: &str, generators: &[S]) -> Self {
        AlgebraFile {
            name: name.to_string(),
            generators: generators.iter().map(|g| g.as_ref().to_string()).collect(),
            differential: BTreeMap::new(),
            action_generators: Vec::new(),
            hull_datum: false,
            metadata: BTreeMap::new(),
        }
    }

    /// Sets `d generator = Σ c·a∧b`.
    pub fn with_differential(mut self, generator: &str, terms: &[(i64, &str, &str)]) -> Self {
        let terms = terms
            .iter()
            .map(|&(c, a, b)| Term(Literal(scalar::int(c)), a.to_string(), b.to_string()))
            .collect();
        self.differential.insert(generator.to_string(), terms);
        self
    }

    pub fn with_action(mut self, rows: &[&[i64]]) -> Self {
        let matrix = rows
            .iter()
            .map(|r| r.iter().map(|&x| Literal(scalar::int(x))).collect())
            .collect();
        self.action_generators.push(matrix);
        self
    }

    pub fn with_hull_datum(mut self) -> Self {
        self.hull_datum = true;
        self
    }

    pub fn with_note(mut self, key: &str, value: &str) -> Self {
        self.metadata
            .insert(key.to_string(), serde_json::Value::String(value.to_string()));
        self
    }

    pub fn parse_str(text: &str, origin: &str) -> Result<Self> {
        let file: AlgebraFile = serde_json::from_str(text)
            .map_err(|e| Error::parse(format!("{origin}:{}:{}", e.line(), e.column()), e.to_string()))?;
        file.validate_structure()?;
        Ok(file)
    }

    pub fn parse(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Self::parse_str(&text, &path.display().to_string())
    }

    pub fn to_json_pretty(&self) -> String {
        serde_json::to_string_pretty(self).expect("algebra files always serialize")
    }

    /// `sha256:` digest of the compact canonical serialization.
    pub fn digest(&self) -> String {
        let canonical = serde_json::to_string(self).expect("algebra files always serialize");
        format!("sha256:{}", hex::encode(Sha256::digest(canonical.as_bytes())))
    }

    /// Checks labels, term ordering and matrix shapes. Does not check the
    /// Jacobi identity or equivariance.
    pub fn validate_structure(&self) -> Result<()> {
        let basis = DualBasis::new(self.generators.iter().cloned())?;
        let n = basis.dim();
        let index = |context: &str, name: &str| {
            basis
                .index_of(name)
                .ok_or_else(|| Error::parse(context, format!("unknown generator {name:?}")))
        };
        for (generator, terms) in &self.differential {
            index(&format!("differential.{generator}"), generator)?;
            for (t, Term(_, a, b)) in terms.iter().enumerate() {
                let context = format!("differential.{generator}[{t}]");
                let i = index(&context, a)?;
                let j = index(&context, b)?;
                if i >= j {
                    return Err(Error::parse(
                        context,
                        format!("{a:?} must come before {b:?} in generator order"),
                    ));
                }
            }
        }
        for (g, matrix) in self.action_generators.iter().enumerate() {
            let context = format!("action_generators[{g}]");
            if matrix.len() != n || matrix.iter().any(|row| row.len() != n) {
                return Err(Error::parse(context, format!("matrix must be square of size {n}")));
            }
        }
        Ok(())
    }

    pub fn basis(&self) -> Result<Arc<DualBasis>> {
        DualBasis::new(self.generators.iter().cloned())
    }

    /// `generator index → d generator` for every listed generator.
    pub fn dual_differentials(&self, basis: &Arc<DualBasis>) -> Result<BTreeMap<usize, ExteriorForm>> {
        self.validate_structure()?;
        let mut out = BTreeMap::new();
        for (generator, terms) in &self.differential {
            let k = basis.index_of(generator).expect("validated");
            let mut form = ExteriorForm::zero(basis, 2);
            for Term(Literal(c), a, b) in terms {
                let blade = Blade::from_indices(&[
                    basis.index_of(a).expect("validated"),
                    basis.index_of(b).expect("validated"),
                ]);
                form = &form + &ExteriorForm::monomial(basis, blade, c.clone());
            }
            out.insert(k, form);
        }
        Ok(out)
    }

    /// The algebra, requiring `d² = 0`.
    pub fn algebra(&self) -> Result<LieAlgebra> {
        let basis = self.basis()?;
        LieAlgebra::from_dual_presentation(&basis, &self.dual_differentials(&basis)?)
    }

    /// The bracket read off the differentials, without the `d² = 0` check.
    pub fn algebra_unchecked(&self) -> Result<LieAlgebra> {
        let basis = self.basis()?;
        let entries = self
            .dual_differentials(&basis)?
            .into_iter()
            .flat_map(|(k, form)| {
                form.terms()
                    .map(|(blade, c)| {
                        let idx: Vec<usize> = blade.indices().collect();
                        (idx[0], idx[1], k, -c.clone())
                    })
                    .collect::<Vec<_>>()
            })
            .collect::<Vec<_>>();
        LieAlgebra::from_brackets(&basis, entries)
    }

    pub fn action(&self) -> ActionGenerators {
        ActionGenerators::new(
            self.action_generators
                .iter()
                .map(|m| Matrix::from_rows(m.iter().map(|r| r.iter().map(|x| x.0.clone()).collect()).collect()))
                .collect(),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, ratio};

    const GAMMA: &str = r#"{
        "name": "paper-gamma",
        "generators": ["alpha", "beta", "gamma", "delta"],
        "differential": { "gamma": [[-1, "alpha", "beta"]] },
        "action_generators": [[[-1, 0, 0, 0], [0, -1, 0, 0], [0, 0, 1, 0], [0, 0, 0, "1"]]]
    }"#;

    #[test]
    fn parses_presentation() {
        let file = AlgebraFile::parse_str(GAMMA, "inline").unwrap();
        assert_eq!(file.generators.len(), 4);
        let basis = file.basis().unwrap();
        let diffs = file.dual_differentials(&basis).unwrap();
        assert_eq!(diffs[&2].to_string(), "-alpha^beta");
        let action = file.action();
        assert_eq!(action.len(), 1);
        assert_eq!(
            action.matrices()[0],
            Matrix::from_i64_rows(&[&[-1, 0, 0, 0], &[0, -1, 0, 0], &[0, 0, 1, 0], &[0, 0, 0, 1]])
        );
        assert!(file.algebra().is_ok());
    }

    #[test]
    fn empty_differential_is_abelian() {
        let file = AlgebraFile::parse_str(r#"{"name":"t","generators":["x","y"]}"#, "inline").unwrap();
        assert!(file.algebra().unwrap().is_abelian());
    }

    #[test]
    fn unknown_generator_names_the_field() {
        let text = r#"{"name":"bad","generators":["alpha","beta"],"differential":{"beta":[[1,"alpha","epsilon"]]}}"#;
        match AlgebraFile::parse_str(text, "inline") {
            Err(Error::Parse { context, message }) => {
                assert_eq!(context, "differential.beta[0]");
                assert!(message.contains("epsilon"));
            }
            other => panic!("expected a parse error, got {other:?}"),
        }
    }

    #[test]
    fn structural_errors() {
        let non_square = r#"{"name":"m","generators":["x","y"],"action_generators":[[[1,0]]]}"#;
        assert!(matches!(
            AlgebraFile::parse_str(non_square, "inline"),
            Err(Error::Parse { context, .. }) if context == "action_generators[0]"
        ));
        let bad_literal = r#"{"name":"m","generators":["x","y","z"],"differential":{"z":[["1/0","x","y"]]}}"#;
        match AlgebraFile::parse_str(bad_literal, "f.json") {
            Err(Error::Parse { context, message }) => {
                assert!(context.starts_with("f.json:1:"));
                assert!(message.contains("bad rational literal"));
            }
            other => panic!("{other:?}"),
        }
        let float = r#"{"name":"m","generators":["x","y","z"],"differential":{"z":[[0.5,"x","y"]]}}"#;
        assert!(AlgebraFile::parse_str(float, "inline").is_err());
        let reversed = r#"{"name":"m","generators":["x","y","z"],"differential":{"z":[[1,"y","x"]]}}"#;
        assert!(AlgebraFile::parse_str(reversed, "inline").is_err());
        let duplicate = r#"{"name":"m","generators":["x","x"]}"#;
        assert!(AlgebraFile::parse_str(duplicate, "inline").is_err());
        assert!(AlgebraFile::parse_str("{not json", "inline").is_err());
        let unknown_field = r#"{"name":"m","generators":["x"],"extra":1}"#;
        assert!(AlgebraFile::parse_str(unknown_field, "inline").is_err());
    }

    #[test]
    fn literals_serialize_as_strings() {
        let mut file = AlgebraFile::new("q", &["x", "y", "z"]);
        file.differential
            .insert("z".into(), vec![Term(Literal(ratio(-3, 2)), "x".into(), "y".into())]);
        let json = serde_json::to_string(&file).unwrap();
        assert!(json.contains(r#"["-3/2","x","y"]"#), "{json}");
        let back = AlgebraFile::parse_str(&json, "inline").unwrap();
        assert_eq!(back, file);
        assert_eq!(back.differential["z"][0].0 .0, ratio(-3, 2));
        assert_ne!(back.digest(), AlgebraFile::new("q", &["x", "y", "z"]).digest());
        let _ = int(0);
    }
}
