//! Identity identifiers and their parameter sets, with the textual form
//! `CONJ1(n=5,r=3,s=2,form=SIGNED)`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CaseError {
    #[error("unknown identity `{0}`")]
    UnknownIdentity(String),
    #[error("unknown form `{0}` (expected SIGNED or UNSIGNED)")]
    UnknownForm(String),
    #[error("{id} requires parameter `{param}`")]
    Missing { id: IdentityId, param: &'static str },
    #[error("{id} does not take parameter `{param}`")]
    Unexpected { id: IdentityId, param: String },
    #[error("{id}: `{param}` must be at least {min}, got {value}")]
    OutOfRange {
        id: IdentityId,
        param: &'static str,
        min: u32,
        value: u32,
    },
    #[error("malformed case `{0}`")]
    Syntax(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum IdentityId {
    Classical,
    Conj1,
    Conj2,
    Conj3,
    Conj4,
    ConstTerm,
    TopCoeff,
    BinomialType,
    HockeyStick,
}

impl IdentityId {
    pub const ALL: [IdentityId; 9] = [
        IdentityId::Classical,
        IdentityId::Conj1,
        IdentityId::Conj2,
        IdentityId::Conj3,
        IdentityId::Conj4,
        IdentityId::ConstTerm,
        IdentityId::TopCoeff,
        IdentityId::BinomialType,
        IdentityId::HockeyStick,
    ];

    pub fn name(self) -> &'static str {
        match self {
            IdentityId::Classical => "CLASSICAL",
            IdentityId::Conj1 => "CONJ1",
            IdentityId::Conj2 => "CONJ2",
            IdentityId::Conj3 => "CONJ3",
            IdentityId::Conj4 => "CONJ4",
            IdentityId::ConstTerm => "CONST_TERM",
            IdentityId::TopCoeff => "TOP_COEFF",
            IdentityId::BinomialType => "BINOMIAL_TYPE",
            IdentityId::HockeyStick => "HOCKEY_STICK",
        }
    }

    pub fn takes_r(self) -> bool {
        matches!(
            self,
            IdentityId::Conj1
                | IdentityId::Conj3
                | IdentityId::Conj4
                | IdentityId::ConstTerm
                | IdentityId::TopCoeff
                | IdentityId::HockeyStick
        )
    }

    pub fn takes_s(self) -> bool {
        !matches!(self, IdentityId::Classical | IdentityId::HockeyStick)
    }

    pub fn takes_form(self) -> bool {
        matches!(
            self,
            IdentityId::Classical | IdentityId::Conj1 | IdentityId::Conj2
        )
    }

    /// Smallest admissible `s`. Zero is allowed where `(i)_0 = 1` or
    /// `[y]_0 = 1` gives a meaningful statement.
    pub fn min_s(self) -> u32 {
        match self {
            IdentityId::Conj3 | IdentityId::BinomialType => 0,
            _ => 1,
        }
    }
}

impl fmt::Display for IdentityId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for IdentityId {
    type Err = CaseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let upper = s.trim().to_ascii_uppercase();
        IdentityId::ALL
            .into_iter()
            .find(|id| id.name() == upper)
            .ok_or_else(|| CaseError::UnknownIdentity(s.trim().to_string()))
    }
}

impl Serialize for IdentityId {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(self.name())
    }
}

impl<'de> Deserialize<'de> for IdentityId {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        String::deserialize(deserializer)?
            .parse()
            .map_err(serde::de::Error::custom)
    }
}

/// Sign convention: SIGNED carries `(-1)^{...}` weights, UNSIGNED is the
/// `X -> -X` image.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Form {
    Signed,
    Unsigned,
}

impl Form {
    pub fn name(self) -> &'static str {
        match self {
            Form::Signed => "SIGNED",
            Form::Unsigned => "UNSIGNED",
        }
    }
}

impl fmt::Display for Form {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Form {
    type Err = CaseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_uppercase().as_str() {
            "SIGNED" => Ok(Form::Signed),
            "UNSIGNED" => Ok(Form::Unsigned),
            _ => Err(CaseError::UnknownForm(s.trim().to_string())),
        }
    }
}

/// One identity with concrete parameters. Fields that an identity does not
/// use are `None`; the constructors enforce this.
///
/// `BINOMIAL_TYPE(n, s)` checks `[X+s]_n = Σ_k C(n,k) [X]_{n-k} [s]_k`, and
/// `HOCKEY_STICK(n, r)` checks `C(n, r) = Σ_{i=1}^{n-1} C(i, r-1)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IdentityCase {
    id: IdentityId,
    n: u32,
    r: Option<u32>,
    s: Option<u32>,
    form: Option<Form>,
}

impl IdentityCase {
    pub fn new(
        id: IdentityId,
        n: u32,
        r: Option<u32>,
        s: Option<u32>,
        form: Option<Form>,
    ) -> Result<Self, CaseError> {
        check_min(id, "n", n, 1)?;
        match (id.takes_r(), r) {
            (true, None) => return Err(CaseError::Missing { id, param: "r" }),
            (false, Some(_)) => {
                return Err(CaseError::Unexpected {
                    id,
                    param: "r".into(),
                })
            }
            (true, Some(r)) => check_min(id, "r", r, 1)?,
            (false, None) => {}
        }
        match (id.takes_s(), s) {
            (true, None) => return Err(CaseError::Missing { id, param: "s" }),
            (false, Some(_)) => {
                return Err(CaseError::Unexpected {
                    id,
                    param: "s".into(),
                })
            }
            (true, Some(s)) => check_min(id, "s", s, id.min_s())?,
            (false, None) => {}
        }
        match (id.takes_form(), form) {
            (true, None) => return Err(CaseError::Missing { id, param: "form" }),
            (false, Some(_)) => {
                return Err(CaseError::Unexpected {
                    id,
                    param: "form".into(),
                })
            }
            _ => {}
        }
        Ok(IdentityCase { id, n, r, s, form })
    }

    pub fn classical(n: u32, form: Form) -> Result<Self, CaseError> {
        Self::new(IdentityId::Classical, n, None, None, Some(form))
    }

    pub fn conj1(n: u32, r: u32, s: u32, form: Form) -> Result<Self, CaseError> {
        Self::new(IdentityId::Conj1, n, Some(r), Some(s), Some(form))
    }

    pub fn conj2(n: u32, s: u32, form: Form) -> Result<Self, CaseError> {
        Self::new(IdentityId::Conj2, n, None, Some(s), Some(form))
    }

    pub fn conj3(n: u32, r: u32, s: u32) -> Result<Self, CaseError> {
        Self::new(IdentityId::Conj3, n, Some(r), Some(s), None)
    }

    pub fn conj4(n: u32, r: u32, s: u32) -> Result<Self, CaseError> {
        Self::new(IdentityId::Conj4, n, Some(r), Some(s), None)
    }

    pub fn const_term(n: u32, r: u32, s: u32) -> Result<Self, CaseError> {
        Self::new(IdentityId::ConstTerm, n, Some(r), Some(s), None)
    }

    pub fn top_coeff(n: u32, r: u32, s: u32) -> Result<Self, CaseError> {
        Self::new(IdentityId::TopCoeff, n, Some(r), Some(s), None)
    }

    pub fn binomial_type(n: u32, s: u32) -> Result<Self, CaseError> {
        Self::new(IdentityId::BinomialType, n, None, Some(s), None)
    }

    pub fn hockey_stick(n: u32, k: u32) -> Result<Self, CaseError> {
        Self::new(IdentityId::HockeyStick, n, Some(k), None, None)
    }

    pub fn id(&self) -> IdentityId {
        self.id
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn r(&self) -> Option<u32> {
        self.r
    }

    pub fn s(&self) -> Option<u32> {
        self.s
    }

    pub fn form(&self) -> Option<Form> {
        self.form
    }
}

fn check_min(id: IdentityId, param: &'static str, value: u32, min: u32) -> Result<(), CaseError> {
    if value < min {
        Err(CaseError::OutOfRange {
            id,
            param,
            min,
            value,
        })
    } else {
        Ok(())
    }
}

impl fmt::Display for IdentityCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}(n={}", self.id, self.n)?;
        if let Some(r) = self.r {
            write!(f, ",r={r}")?;
        }
        if let Some(s) = self.s {
            write!(f, ",s={s}")?;
        }
        if let Some(form) = self.form {
            write!(f, ",form={form}")?;
        }
        f.write_str(")")
    }
}

impl FromStr for IdentityCase {
    type Err = CaseError;

    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let syntax = || CaseError::Syntax(text.to_string());
        let trimmed = text.trim();
        let (name, rest) = trimmed.split_once('(').ok_or_else(syntax)?;
        let body = rest.strip_suffix(')').ok_or_else(syntax)?;
        let id: IdentityId = name.parse()?;

        let (mut n, mut r, mut s, mut form) = (None, None, None, None);
        for item in body.split(',').map(str::trim).filter(|t| !t.is_empty()) {
            let (key, value) = item.split_once('=').ok_or_else(syntax)?;
            let value = value.trim();
            let int = || value.parse::<u32>().map_err(|_| syntax());
            match key.trim() {
                "n" => n = Some(int()?),
                "r" | "k" => r = Some(int()?),
                "s" => s = Some(int()?),
                "form" => form = Some(value.parse()?),
                other => {
                    return Err(CaseError::Unexpected {
                        id,
                        param: other.to_string(),
                    })
                }
            }
        }
        let n = n.ok_or(CaseError::Missing { id, param: "n" })?;
        IdentityCase::new(id, n, r, s, form)
    }
}

impl Serialize for IdentityCase {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for IdentityCase {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        String::deserialize(deserializer)?
            .parse()
            .map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_round_trip() {
        let case = IdentityCase::conj1(5, 3, 2, Form::Signed).unwrap();
        assert_eq!(case.to_string(), "CONJ1(n=5,r=3,s=2,form=SIGNED)");
        assert_eq!(case.to_string().parse::<IdentityCase>().unwrap(), case);
        let c3 = IdentityCase::conj3(3, 2, 0).unwrap();
        assert_eq!(c3.to_string(), "CONJ3(n=3,r=2,s=0)");
        assert_eq!(
            " conj2( n=2, s=2, form=unsigned )"
                .parse::<IdentityCase>()
                .unwrap()
                .to_string(),
            "CONJ2(n=2,s=2,form=UNSIGNED)"
        );
    }

    #[test]
    fn applicability_is_enforced() {
        assert!(matches!(
            IdentityCase::new(IdentityId::Conj2, 3, Some(3), Some(1), Some(Form::Signed)),
            Err(CaseError::Unexpected { .. })
        ));
        assert!(matches!(
            "CONJ1(n=3,r=2,s=1)".parse::<IdentityCase>(),
            Err(CaseError::Missing { param: "form", .. })
        ));
        assert!(matches!(
            IdentityCase::conj1(3, 2, 0, Form::Signed),
            Err(CaseError::OutOfRange { param: "s", .. })
        ));
        assert!(matches!(
            IdentityCase::classical(0, Form::Signed),
            Err(CaseError::OutOfRange { param: "n", .. })
        ));
        assert!(IdentityCase::conj3(3, 2, 0).is_ok());
        assert!(matches!(
            "CONJ9(n=1)".parse::<IdentityCase>(),
            Err(CaseError::UnknownIdentity(_))
        ));
        assert!(matches!(
            "CONJ3 n=1".parse::<IdentityCase>(),
            Err(CaseError::Syntax(_))
        ));
        assert!(matches!(
            "CONJ3(n=1,r=1,s=1,q=2)".parse::<IdentityCase>(),
            Err(CaseError::Unexpected { .. })
        ));
    }
}
