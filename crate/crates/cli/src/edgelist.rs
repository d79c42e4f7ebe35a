//! The `n=<int>;edges=a-b,...` text format.

use circle_genus_core::{CircleGraph, Error as CoreError};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParseError {
    #[error("at position {position}: {message}")]
    Syntax { position: usize, message: String },
    #[error(transparent)]
    Graph(#[from] CoreError),
}

struct Cursor<'a> {
    /// Input with whitespace removed, paired with original byte offsets.
    chars: Vec<(usize, char)>,
    at: usize,
    source: &'a str,
}

impl<'a> Cursor<'a> {
    fn new(source: &'a str) -> Self {
        let chars = source.char_indices().filter(|(_, c)| !c.is_whitespace()).collect();
        Cursor { chars, at: 0, source }
    }

    fn position(&self) -> usize {
        self.chars.get(self.at).map_or(self.source.len(), |&(i, _)| i)
    }

    fn fail<T>(&self, message: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError::Syntax { position: self.position(), message: message.into() })
    }

    fn expect(&mut self, literal: &str) -> Result<(), ParseError> {
        for want in literal.chars() {
            match self.chars.get(self.at) {
                Some(&(_, c)) if c == want => self.at += 1,
                _ => return self.fail(format!("expected `{literal}`")),
            }
        }
        Ok(())
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.at).map(|&(_, c)| c)
    }

    fn number(&mut self) -> Result<usize, ParseError> {
        let start = self.at;
        let mut digits = String::new();
        while let Some(c) = self.peek().filter(char::is_ascii_digit) {
            digits.push(c);
            self.at += 1;
        }
        if digits.is_empty() {
            return self.fail("expected a number");
        }
        digits.parse().or_else(|_| {
            self.at = start;
            self.fail("number too large")
        })
    }
}

/// Parses the text format. Whitespace anywhere is ignored.
pub fn parse(text: &str) -> Result<CircleGraph, ParseError> {
    let mut cur = Cursor::new(text);
    cur.expect("n=")?;
    let n = cur.number()?;
    cur.expect(";edges=")?;
    let mut edges = Vec::new();
    if cur.peek().is_some() {
        loop {
            let a = cur.number()?;
            cur.expect("-")?;
            let b = cur.number()?;
            edges.push((a, b));
            match cur.peek() {
                None => break,
                Some(',') => cur.at += 1,
                Some(_) => return cur.fail("expected `,` or end of input"),
            }
        }
    }
    Ok(CircleGraph::new(n, edges)?)
}

/// Inverse of [`parse`].
pub fn format(g: &CircleGraph) -> String {
    g.to_edge_list()
}
