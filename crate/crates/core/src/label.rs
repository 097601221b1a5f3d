//! Computational-basis labels.
//!
//! Qubit 0 is the least-significant bit of a basis index. Printed labels put
//! qubit `q - 1` leftmost, so the index `0b001` on three qubits prints as
//! `"001"` and has qubit 0 set.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// A basis state `|x⟩` of a fixed-width register.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BasisLabel {
    // Ordering is by width first, then index, so labels of one register sort
    // numerically.
    width: usize,
    index: usize,
}

impl BasisLabel {
    pub fn new(index: usize, width: usize) -> Result<Self> {
        if width == 0 || width >= usize::BITS as usize {
            return Err(Error::InvalidSize(format!("label width {width}")));
        }
        if index >> width != 0 {
            return Err(Error::InvalidLabel {
                label: index.to_string(),
                reason: format!("index does not fit in {width} bits"),
            });
        }
        Ok(Self { width, index })
    }

    /// Parses a label and checks it has exactly `width` characters.
    pub fn parse_with_width(s: &str, width: usize) -> Result<Self> {
        let label: Self = s.parse()?;
        if label.width != width {
            return Err(Error::InvalidLabel {
                label: s.to_string(),
                reason: format!("expected {width} bits, found {}", label.width),
            });
        }
        Ok(label)
    }

    pub fn index(&self) -> usize {
        self.index
    }

    pub fn width(&self) -> usize {
        self.width
    }

    /// Value of qubit `qubit` in this basis state.
    pub fn bit(&self, qubit: usize) -> bool {
        (self.index >> qubit) & 1 == 1
    }

    /// Number of qubits in `|0⟩`.
    pub fn zero_count(&self) -> usize {
        self.width - self.index.count_ones() as usize
    }
}

impl fmt::Display for BasisLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for q in (0..self.width).rev() {
            f.write_str(if self.bit(q) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl FromStr for BasisLabel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let s = s
            .strip_prefix('|')
            .and_then(|rest| rest.strip_suffix('⟩').or_else(|| rest.strip_suffix('>')))
            .unwrap_or(s);
        if s.is_empty() {
            return Err(Error::InvalidLabel {
                label: s.to_string(),
                reason: "empty label".into(),
            });
        }
        let mut index = 0usize;
        for c in s.chars() {
            let bit = match c {
                '0' => 0,
                '1' => 1,
                _ => {
                    return Err(Error::InvalidLabel {
                        label: s.to_string(),
                        reason: format!("unexpected character {c:?}"),
                    })
                }
            };
            index = index
                .checked_mul(2)
                .ok_or_else(|| Error::InvalidLabel {
                    label: s.to_string(),
                    reason: "too many bits".into(),
                })?
                | bit;
        }
        BasisLabel::new(index, s.len())
    }
}

impl Serialize for BasisLabel {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for BasisLabel {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Parses a comma-separated list such as `"000,111"`.
pub fn parse_label_list(s: &str, width: usize) -> Result<Vec<BasisLabel>> {
    s.split(',')
        .filter(|tok| !tok.trim().is_empty())
        .map(|tok| BasisLabel::parse_with_width(tok, width))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn register_zero_is_rightmost() {
        let l = BasisLabel::new(0b001, 3).unwrap();
        assert_eq!(l.to_string(), "001");
        assert!(l.bit(0));
        assert!(!l.bit(2));
        assert_eq!(l.zero_count(), 2);
    }

    #[test]
    fn parses_ket_notation() {
        assert_eq!("|101⟩".parse::<BasisLabel>().unwrap().index(), 5);
        assert_eq!("|10>".parse::<BasisLabel>().unwrap().index(), 2);
    }

    #[test]
    fn rejects_bad_tokens() {
        assert!("01x".parse::<BasisLabel>().is_err());
        assert!("".parse::<BasisLabel>().is_err());
        assert!(BasisLabel::parse_with_width("01", 3).is_err());
        assert!(BasisLabel::new(8, 3).is_err());
    }

    #[test]
    fn label_list() {
        let v = parse_label_list("000,111", 3).unwrap();
        assert_eq!(v.iter().map(|l| l.index()).collect::<Vec<_>>(), vec![0, 7]);
        assert!(parse_label_list("000,11", 3).is_err());
    }

    proptest! {
        #[test]
        fn index_round_trips(width in 1usize..20, raw in any::<u32>()) {
            let index = raw as usize & ((1 << width) - 1);
            let l = BasisLabel::new(index, width).unwrap();
            let back: BasisLabel = l.to_string().parse().unwrap();
            prop_assert_eq!(back, l);
        }
    }
}
