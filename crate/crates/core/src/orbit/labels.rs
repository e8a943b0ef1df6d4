use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// The 23 `SL(8)`-orbits on `∧^3 C^8`, numbered `I` to `XXIII`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OrbitLabel(u8);

const ROMAN: [&str; 23] = [
    "I", "II", "III", "IV", "V", "VI", "VII", "VIII", "IX", "X", "XI", "XII", "XIII", "XIV", "XV", "XVI", "XVII",
    "XVIII", "XIX", "XX", "XXI", "XXII", "XXIII",
];

impl OrbitLabel {
    pub const COUNT: usize = 23;

    /// Label with 1-based number `number`.
    pub fn new(number: usize) -> Result<Self> {
        if (1..=Self::COUNT).contains(&number) {
            Ok(OrbitLabel(number as u8))
        } else {
            Err(Error::Parse(format!("no orbit number {number}")))
        }
    }

    pub fn all() -> impl Iterator<Item = OrbitLabel> {
        (1..=Self::COUNT as u8).map(OrbitLabel)
    }

    pub fn number(&self) -> usize {
        self.0 as usize
    }

    pub fn index(&self) -> usize {
        self.0 as usize - 1
    }

    pub fn roman(&self) -> &'static str {
        ROMAN[self.index()]
    }
}

impl fmt::Display for OrbitLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.roman())
    }
}

impl FromStr for OrbitLabel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        ROMAN
            .iter()
            .position(|r| r.eq_ignore_ascii_case(s))
            .map(|i| OrbitLabel(i as u8 + 1))
            .ok_or_else(|| Error::Parse(format!("unknown orbit label `{s}`")))
    }
}

impl Serialize for OrbitLabel {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.roman())
    }
}

impl<'de> Deserialize<'de> for OrbitLabel {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}
