//! Character cursor shared by the DSL, the scalar literal syntax and the PBW
//! presentation format.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct Span {
    pub line: usize,
    pub col: usize,
}

#[derive(Clone, Debug)]
pub struct Cursor<'a> {
    src: &'a str,
    pos: usize,
    line: usize,
    col: usize,
}

impl<'a> Cursor<'a> {
    pub fn new(src: &'a str) -> Self {
        Cursor {
            src,
            pos: 0,
            line: 1,
            col: 1,
        }
    }

    pub fn span(&self) -> Span {
        Span {
            line: self.line,
            col: self.col,
        }
    }

    pub fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    pub fn at_end(&self) -> bool {
        self.pos >= self.src.len()
    }

    pub fn peek(&self) -> Option<char> {
        self.rest().chars().next()
    }

    pub fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.pos += c.len_utf8();
        if c == '\n' {
            self.line += 1;
            self.col = 1;
        } else {
            self.col += 1;
        }
        Some(c)
    }

    pub fn error(&self, message: impl Into<String>) -> Error {
        Error::syntax(self.line, self.col, message)
    }

    pub fn error_at(span: Span, message: impl Into<String>) -> Error {
        Error::syntax(span.line, span.col, message)
    }

    /// Skips whitespace and `#` comments, including newlines.
    pub fn skip_ws(&mut self) {
        loop {
            match self.peek() {
                Some(c) if c.is_whitespace() => {
                    self.bump();
                }
                Some('#') => {
                    while let Some(c) = self.peek() {
                        if c == '\n' {
                            break;
                        }
                        self.bump();
                    }
                }
                _ => break,
            }
        }
    }

    /// Skips spaces, tabs and comments but stops at a newline.
    pub fn skip_inline_ws(&mut self) {
        loop {
            match self.peek() {
                Some(' ') | Some('\t') | Some('\r') => {
                    self.bump();
                }
                Some('#') => {
                    while let Some(c) = self.peek() {
                        if c == '\n' {
                            break;
                        }
                        self.bump();
                    }
                }
                _ => break,
            }
        }
    }

    pub fn eat(&mut self, c: char) -> bool {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.bump();
            true
        } else {
            false
        }
    }

    pub fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error(format!("expected `{c}`, found {}", self.describe_next())))
        }
    }

    pub fn describe_next(&self) -> String {
        match self.peek() {
            None => "end of input".to_string(),
            Some(_) => {
                let word: String = self
                    .rest()
                    .chars()
                    .take_while(|c| !c.is_whitespace())
                    .take(16)
                    .collect();
                format!("`{word}`")
            }
        }
    }

    fn is_ident_start(c: char) -> bool {
        c.is_ascii_alphabetic() || c == '_'
    }

    fn is_ident_char(c: char) -> bool {
        c.is_ascii_alphanumeric() || c == '_' || c == '.' || c == '\''
    }

    pub fn peek_ident(&self) -> Option<&'a str> {
        let mut probe = self.clone();
        probe.skip_ws();
        let rest = probe.rest();
        let first = rest.chars().next()?;
        if !Self::is_ident_start(first) {
            return None;
        }
        let len = rest
            .char_indices()
            .find(|(_, c)| !Self::is_ident_char(*c))
            .map(|(i, _)| i)
            .unwrap_or(rest.len());
        Some(&rest[..len])
    }

    pub fn ident(&mut self) -> Result<String> {
        self.skip_ws();
        match self.peek_ident() {
            Some(id) => {
                let id = id.to_string();
                for _ in 0..id.chars().count() {
                    self.bump();
                }
                Ok(id)
            }
            None => Err(self.error(format!("expected identifier, found {}", self.describe_next()))),
        }
    }

    pub fn eat_keyword(&mut self, kw: &str) -> bool {
        if self.peek_ident() == Some(kw) {
            self.skip_ws();
            for _ in 0..kw.len() {
                self.bump();
            }
            true
        } else {
            false
        }
    }

    pub fn expect_keyword(&mut self, kw: &str) -> Result<()> {
        if self.eat_keyword(kw) {
            Ok(())
        } else {
            Err(self.error(format!("expected `{kw}`, found {}", self.describe_next())))
        }
    }

    pub fn unsigned(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let digits: String = self.rest().chars().take_while(|c| c.is_ascii_digit()).collect();
        if digits.is_empty() {
            return Err(self.error(format!("expected integer, found {}", self.describe_next())));
        }
        for _ in 0..digits.len() {
            self.bump();
        }
        Ok(digits.parse().expect("ascii digits"))
    }

    pub fn integer(&mut self) -> Result<BigInt> {
        let neg = self.eat('-');
        let v = self.unsigned()?;
        Ok(if neg { -v } else { v })
    }

    pub fn small_integer(&mut self) -> Result<i64> {
        let span = self.span();
        let v = self.integer()?;
        i64::try_from(v).map_err(|_| Self::error_at(span, "integer out of range"))
    }

    /// `['-'] INT ['/' INT]`
    pub fn rational(&mut self) -> Result<BigRational> {
        let neg = self.eat('-');
        let num = self.unsigned()?;
        let den = if self.eat('/') {
            let span = self.span();
            let d = self.unsigned()?;
            if d.is_zero() {
                return Err(Self::error_at(span, "zero denominator"));
            }
            d
        } else {
            BigInt::from(1)
        };
        let r = BigRational::new(num, den);
        Ok(if neg { -r } else { r })
    }

    pub fn peek_char_after_ws(&self) -> Option<char> {
        let mut probe = self.clone();
        probe.skip_ws();
        probe.peek()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn idents_and_comments() {
        let mut c = Cursor::new("  # hello\n  block b1 plus");
        assert!(c.eat_keyword("block"));
        assert_eq!(c.ident().unwrap(), "b1");
        assert!(!c.eat_keyword("minus"));
        assert!(c.eat_keyword("plus"));
        c.skip_ws();
        assert!(c.at_end());
    }

    #[test]
    fn rationals() {
        let mut c = Cursor::new("-3/4 7");
        assert_eq!(c.rational().unwrap(), BigRational::new((-3).into(), 4.into()));
        assert_eq!(c.rational().unwrap(), BigRational::from_integer(7.into()));
        let mut c = Cursor::new("1/0");
        assert!(c.rational().is_err());
    }

    #[test]
    fn error_positions() {
        let mut c = Cursor::new("\n  {");
        let err = c.ident().unwrap_err();
        assert_eq!(
            err,
            Error::Syntax {
                line: 2,
                col: 3,
                message: "expected identifier, found `{`".into()
            }
        );
    }
}
