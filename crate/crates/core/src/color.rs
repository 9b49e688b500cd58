//! Vertex colors and colorings of fractional powers.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// A color in one of the structured palettes used by the constructions.
///
/// `Tuple { base, slot }` is the color `a_i` with `a = base` and `i = slot`,
/// both 1-based. `Index` colors come from exact search and from the
/// complete-graph construction; `Fresh` is the one extra color added when
/// inserting a vertex on every superedge.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Color {
    Zero,
    Heart,
    Diamond(u8),
    Tuple { base: u32, slot: u32 },
    Index(u32),
    Fresh,
}

impl Color {
    pub fn tuple(base: u32, slot: u32) -> Color {
        Color::Tuple { base, slot }
    }
}

impl fmt::Display for Color {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Color::Zero => write!(f, "0"),
            Color::Heart => write!(f, "heart"),
            Color::Diamond(i) => write!(f, "diamond{i}"),
            Color::Tuple { base, slot } => write!(f, "{base}_{slot}"),
            Color::Index(i) => write!(f, "c{i}"),
            Color::Fresh => write!(f, "new"),
        }
    }
}

impl FromStr for Color {
    type Err = Error;

    fn from_str(s: &str) -> Result<Color> {
        let bad = || Error::InvalidParameter(format!("bad color '{s}'"));
        match s {
            "0" => return Ok(Color::Zero),
            "heart" => return Ok(Color::Heart),
            "new" => return Ok(Color::Fresh),
            _ => {}
        }
        if let Some(d) = s.strip_prefix("diamond") {
            return d.parse().map(Color::Diamond).map_err(|_| bad());
        }
        if let Some(i) = s.strip_prefix('c') {
            return i.parse().map(Color::Index).map_err(|_| bad());
        }
        let (a, i) = s.split_once('_').ok_or_else(bad)?;
        Ok(Color::Tuple { base: a.parse().map_err(|_| bad())?, slot: i.parse().map_err(|_| bad())? })
    }
}

impl Serialize for Color {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Color {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// The color tuple `a = (a_1, ..., a_len)`.
pub fn tuple_colors(base: u32, len: usize) -> Vec<Color> {
    (1..=len as u32).map(|slot| Color::tuple(base, slot)).collect()
}

/// A total coloring of the vertices `0..len` of some graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexColoring {
    colors: Vec<Color>,
}

impl VertexColoring {
    pub fn new(colors: Vec<Color>) -> Self {
        Self { colors }
    }

    /// Converts a partial assignment, failing if any vertex is uncolored.
    pub fn from_partial(partial: Vec<Option<Color>>) -> Result<Self> {
        let expected = partial.len();
        let got = partial.iter().filter(|c| c.is_some()).count();
        if got != expected {
            return Err(Error::PartialColoring { got, expected });
        }
        Ok(Self { colors: partial.into_iter().map(Option::unwrap).collect() })
    }

    pub fn len(&self) -> usize {
        self.colors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colors.is_empty()
    }

    pub fn get(&self, v: usize) -> &Color {
        &self.colors[v]
    }

    pub fn set(&mut self, v: usize, c: Color) {
        self.colors[v] = c;
    }

    pub fn colors(&self) -> &[Color] {
        &self.colors
    }

    pub fn into_colors(self) -> Vec<Color> {
        self.colors
    }

    /// Distinct colors in use, sorted.
    pub fn palette(&self) -> Vec<Color> {
        self.colors.iter().copied().collect::<BTreeSet<_>>().into_iter().collect()
    }

    pub fn num_colors(&self) -> usize {
        self.palette().len()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn color_strings_parse_back() {
        for c in [
            Color::Zero,
            Color::Heart,
            Color::Diamond(1),
            Color::Diamond(2),
            Color::tuple(3, 2),
            Color::Index(7),
            Color::Fresh,
        ] {
            assert_eq!(c.to_string().parse::<Color>().unwrap(), c);
        }
        assert_eq!(Color::tuple(4, 1).to_string(), "4_1");
    }

    #[test]
    fn partial_coloring_rejected() {
        assert!(VertexColoring::from_partial(vec![Some(Color::Zero), None]).is_err());
    }
}
