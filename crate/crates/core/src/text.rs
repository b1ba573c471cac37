//! Minimal cursor used by the textual grammars (groups, reflection spaces,
//! specs, root lines). Errors carry the byte offset and the expected token.

use crate::error::{Error, Result};
use crate::rational::Q;

pub struct Cursor<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    pub fn new(src: &'a str) -> Self {
        Self { src, pos: 0 }
    }

    pub fn pos(&self) -> usize {
        self.pos
    }

    pub fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    pub fn at_end(&self) -> bool {
        self.pos >= self.src.len()
    }

    pub fn skip_ws(&mut self) {
        while let Some(c) = self.rest().chars().next() {
            if c.is_whitespace() {
                self.pos += c.len_utf8();
            } else {
                break;
            }
        }
    }

    pub fn err(&self, expected: &str) -> Error {
        let found: String = self.rest().chars().take(12).collect();
        Error::Parse {
            pos: self.pos,
            expected: expected.to_string(),
            found: if found.is_empty() {
                "end of input".into()
            } else {
                found
            },
        }
    }

    pub fn eat(&mut self, tok: &str) -> bool {
        if self.rest().starts_with(tok) {
            self.pos += tok.len();
            true
        } else {
            false
        }
    }

    pub fn expect(&mut self, tok: &str) -> Result<()> {
        if self.eat(tok) {
            Ok(())
        } else {
            Err(self.err(&format!("`{tok}`")))
        }
    }

    pub fn peek(&self) -> Option<char> {
        self.rest().chars().next()
    }

    pub fn integer(&mut self) -> Result<i128> {
        let start = self.pos;
        if self.peek() == Some('-') || self.peek() == Some('+') {
            self.pos += 1;
        }
        let digits = self
            .rest()
            .chars()
            .take_while(|c| c.is_ascii_digit())
            .count();
        if digits == 0 {
            self.pos = start;
            return Err(self.err("integer"));
        }
        self.pos += digits;
        self.src[start..self.pos].parse().map_err(|_| {
            self.pos = start;
            self.err("integer")
        })
    }

    pub fn natural(&mut self) -> Result<u64> {
        let start = self.pos;
        let n = self.integer()?;
        if n < 0 || n > u64::MAX as i128 {
            self.pos = start;
            return Err(self.err("natural number"));
        }
        Ok(n as u64)
    }

    pub fn rational(&mut self) -> Result<Q> {
        let start = self.pos;
        let n = self.integer()?;
        if self.eat("/") {
            let d = self.integer()?;
            if d == 0 {
                self.pos = start;
                return Err(self.err("nonzero denominator"));
            }
            Ok(Q::new(n, d))
        } else {
            Ok(Q::from_integer(n))
        }
    }

    pub fn ident(&mut self) -> &'a str {
        let start = self.pos;
        let n = self
            .rest()
            .chars()
            .take_while(|c| c.is_ascii_alphanumeric() || *c == '_')
            .count();
        self.pos += n;
        &self.src[start..self.pos]
    }

    pub fn finish(&mut self) -> Result<()> {
        self.skip_ws();
        if self.at_end() {
            Ok(())
        } else {
            Err(self.err("end of input"))
        }
    }
}
