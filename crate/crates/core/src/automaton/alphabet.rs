use std::fmt;

use super::AutomatonError;

/// A nonempty set of single-character input symbols, kept sorted by code point.
///
/// Symbols are addressed internally by their index in sorted order, so two
/// machines over the same alphabet agree on symbol indices.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Alphabet {
    symbols: Vec<char>,
}

impl Alphabet {
    /// Builds an alphabet, rejecting empty input, duplicates and whitespace or
    /// control characters.
    pub fn new<I: IntoIterator<Item = char>>(symbols: I) -> Result<Self, AutomatonError> {
        let mut symbols: Vec<char> = symbols.into_iter().collect();
        if symbols.is_empty() {
            return Err(AutomatonError::EmptyAlphabet);
        }
        if let Some(&c) = symbols.iter().find(|c| !is_valid_symbol(**c)) {
            return Err(AutomatonError::InvalidSymbol(c));
        }
        symbols.sort_unstable();
        if let Some(w) = symbols.windows(2).find(|w| w[0] == w[1]) {
            return Err(AutomatonError::DuplicateSymbol(w[0]));
        }
        Ok(Alphabet { symbols })
    }

    /// Parses symbols given as strings, each of which must hold exactly one character.
    pub fn from_strs<'a, I: IntoIterator<Item = &'a str>>(symbols: I) -> Result<Self, AutomatonError> {
        let chars = symbols
            .into_iter()
            .map(|s| single_char(s).ok_or_else(|| AutomatonError::MultiCharSymbol(s.to_string())))
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(chars)
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn symbols(&self) -> &[char] {
        &self.symbols
    }

    pub fn iter(&self) -> impl ExactSizeIterator<Item = char> + '_ {
        self.symbols.iter().copied()
    }

    pub fn index_of(&self, symbol: char) -> Option<usize> {
        self.symbols.binary_search(&symbol).ok()
    }

    pub fn contains(&self, symbol: char) -> bool {
        self.index_of(symbol).is_some()
    }

    pub fn symbol(&self, index: usize) -> char {
        self.symbols[index]
    }

    /// Maps a word onto symbol indices, failing on the first foreign character.
    pub fn encode(&self, word: &str) -> Result<Vec<usize>, AutomatonError> {
        word.chars()
            .map(|c| self.index_of(c).ok_or(AutomatonError::SymbolNotInAlphabet(c)))
            .collect()
    }

    pub fn decode(&self, indices: &[usize]) -> String {
        indices.iter().map(|&i| self.symbols[i]).collect()
    }
}

impl fmt::Display for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, c) in self.symbols.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "}}")
    }
}

/// Visible, non-whitespace, non-control characters only.
pub fn is_valid_symbol(c: char) -> bool {
    !c.is_whitespace() && !c.is_control()
}

/// Returns the character when `s` holds exactly one.
pub fn single_char(s: &str) -> Option<char> {
    let mut chars = s.chars();
    match (chars.next(), chars.next()) {
        (Some(c), None) => Some(c),
        _ => None,
    }
}
