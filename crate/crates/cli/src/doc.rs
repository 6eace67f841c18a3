//! JSON class documents.
//!
//! ```json
//! {"g": 2, "degree": 2, "coeffs": {"t1*t2": "4", "l^2": "1"}}
//! ```
//!
//! Keys are monomials `t1^i*t2^j*l^k` of total degree `degree` (factors with
//! exponent 0 may be omitted, `^1` may be dropped) or `omega` for the class
//! with top value 1 in degree `2g`. Values are rational strings `p` or `p/q`.

use std::collections::BTreeSet;
use std::fmt;

use abelcone::canring::{CanonicalClass, MAX_GENUS};
use abelcone::scalar::{format_rational, parse_rational};
use abelcone::{CanonicalRing, Monomial, Rational as Q};
use num_traits::Zero;
use serde::de::{self, MapAccess, Visitor};
use serde::ser::SerializeMap;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

const TOP_KEY: &str = "omega";

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Key {
    Monomial(Monomial),
    Top,
}

impl Key {
    fn parse(s: &str) -> Option<Key> {
        if s == TOP_KEY {
            return Some(Key::Top);
        }
        Monomial::parse_key(s).map(Key::Monomial)
    }
}

/// Coefficients in document order; keys are distinct as strings.
#[derive(Clone, Debug, PartialEq)]
pub struct Coeffs(pub Vec<(String, Key, Q)>);

impl<'de> Deserialize<'de> for Coeffs {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct V;
        impl<'de> Visitor<'de> for V {
            type Value = Coeffs;

            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("a map from monomial keys to rational strings")
            }

            fn visit_map<A: MapAccess<'de>>(self, mut map: A) -> Result<Coeffs, A::Error> {
                let mut seen = BTreeSet::new();
                let mut out = Vec::new();
                while let Some(k) = map.next_key::<String>()? {
                    if !seen.insert(k.clone()) {
                        return Err(de::Error::custom(format!("duplicate key `{k}`")));
                    }
                    let key = Key::parse(&k).ok_or_else(|| de::Error::custom(format!("unknown key `{k}`")))?;
                    let v: String = map.next_value()?;
                    let q = parse_rational(&v)
                        .ok_or_else(|| de::Error::custom(format!("invalid rational `{v}` for key `{k}`")))?;
                    out.push((k, key, q));
                }
                Ok(Coeffs(out))
            }
        }
        d.deserialize_map(V)
    }
}

impl Serialize for Coeffs {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut m = s.serialize_map(Some(self.0.len()))?;
        for (k, _, q) in &self.0 {
            m.serialize_entry(k, &format_rational(q))?;
        }
        m.end()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ClassDocument {
    pub g: usize,
    pub degree: usize,
    pub coeffs: Coeffs,
}

/// A rejected document. `line`/`column` are 1-based and present for syntax
/// and key errors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DocError {
    pub message: String,
    pub line: Option<usize>,
    pub column: Option<usize>,
}

impl fmt::Display for DocError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.line, self.column) {
            (Some(l), Some(c)) => write!(f, "line {l}, column {c}: {}", self.message),
            _ => f.write_str(&self.message),
        }
    }
}

impl DocError {
    fn semantic(message: String) -> Self {
        DocError { message, line: None, column: None }
    }
}

impl ClassDocument {
    pub fn parse(text: &str) -> Result<Self, DocError> {
        let doc: ClassDocument = serde_json::from_str(text).map_err(|e| {
            // serde_json appends " at line L column C"; keep the bare message
            let full = e.to_string();
            let message = match full.rfind(" at line ") {
                Some(i) => full[..i].to_string(),
                None => full,
            };
            DocError { message, line: Some(e.line()), column: Some(e.column()) }
        })?;
        doc.validate()?;
        Ok(doc)
    }

    fn validate(&self) -> Result<(), DocError> {
        if !(1..=MAX_GENUS).contains(&self.g) {
            return Err(DocError::semantic(format!("g = {} outside 1..={MAX_GENUS}", self.g)));
        }
        if self.degree > 2 * self.g {
            return Err(DocError::semantic(format!("degree {} exceeds 2g = {}", self.degree, 2 * self.g)));
        }
        for (k, key, _) in &self.coeffs.0 {
            match key {
                Key::Top if self.degree != 2 * self.g => {
                    return Err(DocError::semantic(format!("key `{k}` requires degree 2g = {}", 2 * self.g)))
                }
                Key::Monomial(m) if m.degree() != self.degree => {
                    return Err(DocError::semantic(format!(
                        "key `{k}` has degree {}, document degree is {}",
                        m.degree(),
                        self.degree
                    )))
                }
                _ => {}
            }
        }
        Ok(())
    }

    pub fn to_class(&self, ring: &CanonicalRing) -> abelcone::Result<CanonicalClass<Q>> {
        let mut acc = ring.zero(self.degree);
        for (_, key, q) in &self.coeffs.0 {
            let term = match key {
                Key::Monomial(m) => ring.monomial::<Q>(*m),
                Key::Top => ring.top(Q::from_integer(1.into())),
            };
            acc = acc.add(&term.scale(q))?;
        }
        Ok(acc)
    }

    /// The document listing the nonzero coordinates of `x` in the ring basis.
    pub fn from_class(ring: &CanonicalRing, x: &CanonicalClass<Q>) -> abelcone::Result<Self> {
        let keys = ring.basis_keys(x.degree())?;
        let coeffs = keys
            .into_iter()
            .zip(x.coeffs())
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| {
                let key = Key::parse(&k).expect("basis keys parse");
                (k, key, c.clone())
            })
            .collect();
        Ok(ClassDocument { g: x.g(), degree: x.degree(), coeffs: Coeffs(coeffs) })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("documents serialize")
    }
}

/// Parse a document and build its class.
pub fn load(text: &str) -> Result<(CanonicalRing, CanonicalClass<Q>), DocError> {
    let doc = ClassDocument::parse(text)?;
    let ring = CanonicalRing::new(doc.g).map_err(|e| DocError::semantic(e.to_string()))?;
    let x = doc.to_class(&ring).map_err(|e| DocError::semantic(e.to_string()))?;
    Ok((ring, x))
}
