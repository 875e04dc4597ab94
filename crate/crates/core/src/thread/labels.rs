use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;

/// A raw annotation code as entered by an annotator.
///
/// Codes `0..=6` follow the annotation scheme:
///
/// | code | meaning                              |
/// |------|--------------------------------------|
/// | 0    | cyber hate                           |
/// | 1    | support for the hateful remark       |
/// | 2    | disagreement with the hateful remark |
/// | 3    | insult                               |
/// | 4    | evidence provided in support         |
/// | 5    | evidence provided in disagreement    |
/// | 6    | general response                     |
///
/// `Undecided` marks posts the annotator could not place.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub enum LabelCode {
    Code(u8),
    Undecided,
}

impl LabelCode {
    pub const MAX_CODE: u8 = 6;

    pub const CYBER_HATE: LabelCode = LabelCode::Code(0);
    pub const SUPPORT: LabelCode = LabelCode::Code(1);
    pub const DISAGREE: LabelCode = LabelCode::Code(2);
    pub const INSULT: LabelCode = LabelCode::Code(3);
    pub const SUPPORT_EVIDENCE: LabelCode = LabelCode::Code(4);
    pub const DISAGREE_EVIDENCE: LabelCode = LabelCode::Code(5);
    pub const GENERAL: LabelCode = LabelCode::Code(6);

    /// Returns `None` for integers outside `0..=6`.
    pub fn new(code: u8) -> Option<Self> {
        (code <= Self::MAX_CODE).then_some(LabelCode::Code(code))
    }

    pub fn is_undecided(self) -> bool {
        matches!(self, LabelCode::Undecided)
    }

    /// The four-class bucket this single code folds into, `None` for `Undecided`.
    pub fn conflated(self) -> Option<ConflatedClass> {
        match self {
            LabelCode::Code(0) => Some(ConflatedClass::CyberHate),
            LabelCode::Code(1) | LabelCode::Code(4) => Some(ConflatedClass::SupportHate),
            LabelCode::Code(2) | LabelCode::Code(3) | LabelCode::Code(5) => {
                Some(ConflatedClass::DisagreeOrInsult)
            }
            LabelCode::Code(_) => Some(ConflatedClass::General),
            LabelCode::Undecided => None,
        }
    }
}

impl fmt::Display for LabelCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LabelCode::Code(c) => write!(f, "{c}"),
            LabelCode::Undecided => f.write_str("U"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown label code `{0}`")]
pub struct UnknownCode(pub String);

impl FromStr for LabelCode {
    type Err = UnknownCode;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s.eq_ignore_ascii_case("u") {
            return Ok(LabelCode::Undecided);
        }
        s.parse::<u8>()
            .ok()
            .and_then(LabelCode::new)
            .ok_or_else(|| UnknownCode(s.to_string()))
    }
}

impl From<LabelCode> for String {
    fn from(code: LabelCode) -> String {
        code.to_string()
    }
}

impl TryFrom<String> for LabelCode {
    type Error = UnknownCode;

    fn try_from(value: String) -> Result<Self, Self::Error> {
        value.parse()
    }
}

/// The four analysis classes obtained by merging raw codes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[repr(u8)]
pub enum ConflatedClass {
    CyberHate = 0,
    SupportHate = 1,
    DisagreeOrInsult = 2,
    General = 3,
}

impl ConflatedClass {
    pub const COUNT: usize = 4;
    pub const ALL: [ConflatedClass; 4] = [
        ConflatedClass::CyberHate,
        ConflatedClass::SupportHate,
        ConflatedClass::DisagreeOrInsult,
        ConflatedClass::General,
    ];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_index(index: usize) -> Option<Self> {
        Self::ALL.get(index).copied()
    }

    /// Conflict priority: lower value wins when a post carries several classes.
    pub(crate) fn priority(self) -> u8 {
        match self {
            ConflatedClass::CyberHate => 0,
            ConflatedClass::DisagreeOrInsult => 1,
            ConflatedClass::SupportHate => 2,
            ConflatedClass::General => 3,
        }
    }

    pub fn display_name(self) -> &'static str {
        match self {
            ConflatedClass::CyberHate => "Cyber Hate",
            ConflatedClass::SupportHate => "Support",
            ConflatedClass::DisagreeOrInsult => "Disagree&Insults",
            ConflatedClass::General => "General",
        }
    }
}

impl fmt::Display for ConflatedClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.index())
    }
}

/// Consensus label of one reply, reduced to what the thread statistics need.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PostLabel {
    pub class: ConflatedClass,
    /// A disagreement code (2 or 5) reached consensus.
    pub disagreement: bool,
    /// The insult code (3) reached consensus.
    pub insult: bool,
}

impl PostLabel {
    pub fn new(class: ConflatedClass) -> Self {
        PostLabel {
            class,
            disagreement: class == ConflatedClass::DisagreeOrInsult,
            insult: false,
        }
    }

    pub fn insult() -> Self {
        PostLabel {
            class: ConflatedClass::DisagreeOrInsult,
            disagreement: false,
            insult: true,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_codes_and_undecided() {
        assert_eq!("3".parse::<LabelCode>().unwrap(), LabelCode::INSULT);
        assert_eq!(" u ".parse::<LabelCode>().unwrap(), LabelCode::Undecided);
        assert!("7".parse::<LabelCode>().is_err());
        assert!("x".parse::<LabelCode>().is_err());
    }

    #[test]
    fn conflated_ordinals_are_fixed() {
        let codes: Vec<usize> = ConflatedClass::ALL.iter().map(|c| c.index()).collect();
        assert_eq!(codes, vec![0, 1, 2, 3]);
        assert_eq!(ConflatedClass::from_index(4), None);
    }
}
