//! Course-level regular expressions and Thompson's construction.
//!
//! Syntax: alphabet symbols are literals, juxtaposition concatenates, `|` is
//! union, `*` is Kleene star, parentheses group and `ε` is the empty word. An
//! empty operand (the empty pattern, `()`, `(0|)`) also denotes the empty word.
//! Operator characters are always operators, even if the alphabet contains them.

use std::fmt;

use thiserror::Error;

use super::{Alphabet, Nfa};

pub const EPSILON_LITERAL: char = 'ε';

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Regex {
    pattern: String,
}

impl Regex {
    pub fn new(pattern: impl Into<String>) -> Self {
        Regex {
            pattern: pattern.into(),
        }
    }

    pub fn pattern(&self) -> &str {
        &self.pattern
    }

    /// Checks syntax and symbol usage against `alphabet`.
    pub fn parse(&self, alphabet: &Alphabet) -> Result<Ast, RegexError> {
        Parser::new(&self.pattern, alphabet).parse()
    }
}

impl fmt::Display for Regex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.pattern)
    }
}

/// Error with the zero-based character offset where parsing stopped.
#[derive(Error, Debug, Clone, PartialEq, Eq)]
#[error("regex error at position {position}: {message}")]
pub struct RegexError {
    pub position: usize,
    pub message: String,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Ast {
    Empty,
    Symbol(usize),
    Concat(Vec<Ast>),
    Union(Vec<Ast>),
    Star(Box<Ast>),
}

struct Parser<'a> {
    chars: Vec<char>,
    pos: usize,
    alphabet: &'a Alphabet,
}

impl<'a> Parser<'a> {
    fn new(pattern: &str, alphabet: &'a Alphabet) -> Self {
        Parser {
            chars: pattern.chars().collect(),
            pos: 0,
            alphabet,
        }
    }

    fn error(&self, message: impl Into<String>) -> RegexError {
        RegexError {
            position: self.pos,
            message: message.into(),
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn parse(mut self) -> Result<Ast, RegexError> {
        let ast = self.union()?;
        match self.peek() {
            None => Ok(ast),
            Some(')') => Err(self.error("unmatched ')'")),
            Some(c) => Err(self.error(format!("unexpected '{c}'"))),
        }
    }

    fn union(&mut self) -> Result<Ast, RegexError> {
        let mut branches = vec![self.concat()?];
        while self.peek() == Some('|') {
            self.pos += 1;
            branches.push(self.concat()?);
        }
        Ok(if branches.len() == 1 {
            branches.pop().unwrap()
        } else {
            Ast::Union(branches)
        })
    }

    fn concat(&mut self) -> Result<Ast, RegexError> {
        let mut parts = Vec::new();
        while let Some(c) = self.peek() {
            if c == '|' || c == ')' {
                break;
            }
            parts.push(self.starred()?);
        }
        Ok(match parts.len() {
            0 => Ast::Empty,
            1 => parts.pop().unwrap(),
            _ => Ast::Concat(parts),
        })
    }

    fn starred(&mut self) -> Result<Ast, RegexError> {
        let mut atom = self.atom()?;
        while self.peek() == Some('*') {
            self.pos += 1;
            atom = Ast::Star(Box::new(atom));
        }
        Ok(atom)
    }

    fn atom(&mut self) -> Result<Ast, RegexError> {
        let c = self.peek().ok_or_else(|| self.error("unexpected end of pattern"))?;
        match c {
            '(' => {
                self.pos += 1;
                let inner = self.union()?;
                if self.peek() != Some(')') {
                    return Err(self.error("expected ')'"));
                }
                self.pos += 1;
                Ok(inner)
            }
            '*' => Err(self.error("'*' has nothing to repeat")),
            EPSILON_LITERAL => {
                self.pos += 1;
                Ok(Ast::Empty)
            }
            c => match self.alphabet.index_of(c) {
                Some(a) => {
                    self.pos += 1;
                    Ok(Ast::Symbol(a))
                }
                None => Err(self.error(format!("symbol '{c}' is not in the alphabet {}", self.alphabet))),
            },
        }
    }
}

/// Thompson construction: one start and one accepting state per fragment,
/// glued with epsilon moves. States are named by creation order.
pub fn regex_to_nfa(regex: &Regex, alphabet: &Alphabet) -> Result<Nfa, RegexError> {
    let ast = regex.parse(alphabet)?;
    let mut nfa = Nfa::with_states(Vec::new(), alphabet.clone(), 0);
    let (start, accept) = build(&mut nfa, &ast);
    nfa.set_initial(start);
    nfa.set_final(accept, true);
    nfa.normalize();
    Ok(nfa)
}

fn fresh(nfa: &mut Nfa) -> usize {
    let id = nfa.num_states();
    nfa.add_state(id.to_string())
}

fn build(nfa: &mut Nfa, ast: &Ast) -> (usize, usize) {
    match ast {
        Ast::Empty => {
            let (s, f) = (fresh(nfa), fresh(nfa));
            nfa.add_epsilon(s, f);
            (s, f)
        }
        Ast::Symbol(a) => {
            let (s, f) = (fresh(nfa), fresh(nfa));
            nfa.add_transition(s, *a, f);
            (s, f)
        }
        Ast::Concat(parts) => {
            let mut frags = parts.iter().map(|p| build(nfa, p)).collect::<Vec<_>>().into_iter();
            let (start, mut end) = frags.next().expect("concat has parts");
            for (s, f) in frags {
                nfa.add_epsilon(end, s);
                end = f;
            }
            (start, end)
        }
        Ast::Union(branches) => {
            let s = fresh(nfa);
            let frags: Vec<_> = branches.iter().map(|b| build(nfa, b)).collect();
            let f = fresh(nfa);
            for (bs, bf) in frags {
                nfa.add_epsilon(s, bs);
                nfa.add_epsilon(bf, f);
            }
            (s, f)
        }
        Ast::Star(inner) => {
            let s = fresh(nfa);
            let (is, inf) = build(nfa, inner);
            let f = fresh(nfa);
            nfa.add_epsilon(s, is);
            nfa.add_epsilon(s, f);
            nfa.add_epsilon(inf, is);
            nfa.add_epsilon(inf, f);
            (s, f)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automaton::Acceptor;

    fn bin() -> Alphabet {
        Alphabet::new(['0', '1']).unwrap()
    }

    fn nfa(p: &str) -> Nfa {
        regex_to_nfa(&Regex::new(p), &bin()).unwrap()
    }

    #[test]
    fn star_of_symbol() {
        let n = nfa("0*");
        for w in ["", "0", "00", "0000"] {
            assert!(n.accepts(w).unwrap(), "{w}");
        }
        for w in ["1", "01", "10", "001"] {
            assert!(!n.accepts(w).unwrap(), "{w}");
        }
    }

    #[test]
    fn empty_pattern_is_empty_word() {
        let n = nfa("");
        assert!(n.accepts("").unwrap());
        assert!(!n.accepts("0").unwrap());
        assert!(!n.accepts("1").unwrap());
        let e = nfa("ε");
        assert!(e.accepts("").unwrap() && !e.accepts("0").unwrap());
    }

    #[test]
    fn unions_and_groups() {
        let n = nfa("(0|1)*000(0|1)*");
        assert!(n.accepts("1000").unwrap());
        assert!(!n.accepts("0010").unwrap());
        let opt = nfa("1(0|)1");
        assert!(opt.accepts("11").unwrap() && opt.accepts("101").unwrap());
        assert!(!opt.accepts("1001").unwrap());
        let stars = nfa("(01)**");
        assert!(stars.accepts("0101").unwrap() && !stars.accepts("010").unwrap());
    }

    #[test]
    fn positioned_errors() {
        let err = |p: &str| Regex::new(p).parse(&bin()).unwrap_err();
        assert_eq!(err("(01").position, 3);
        assert_eq!(err("01)").position, 2);
        assert_eq!(err("*0").position, 0);
        assert_eq!(err("0|(*)").position, 3);
        let e = err("012");
        assert_eq!(e.position, 2);
        assert!(e.message.contains("'2'"));
    }
}
