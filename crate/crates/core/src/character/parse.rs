//! Text syntax for Laurent polynomials: `3*t1^2*t2^-1 - 2`, `(1 - t)^2`, `t^-1`.
//!
//! ```text
//! expr  := ['+'|'-'] term (('+'|'-') term)*
//! term  := power (['*'] power)*
//! power := atom ['^' ['+'|'-'] INT]
//! atom  := INT | VAR | '(' expr ')'
//! VAR   := 't' INT | 't'        (bare 't' only in rank 1)
//! ```

use num_bigint::BigInt;

use super::{CharacterError, CharacterRingElement};

pub fn parse_element(input: &str, rank: usize) -> Result<CharacterRingElement, CharacterError> {
    let mut p = Parser {
        input,
        chars: input.char_indices().collect(),
        pos: 0,
        rank,
    };
    let value = p.expr()?;
    p.skip_ws();
    if p.pos < p.chars.len() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(value)
}

struct Parser<'a> {
    input: &'a str,
    chars: Vec<(usize, char)>,
    pos: usize,
    rank: usize,
}

impl Parser<'_> {
    fn error(&self, reason: &str) -> CharacterError {
        CharacterError::ParseError {
            input: self.input.to_string(),
            position: self.chars.get(self.pos).map_or(self.input.len(), |c| c.0),
            reason: reason.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        while self.chars.get(self.pos).is_some_and(|c| c.1.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).map(|c| c.1)
    }

    fn eat(&mut self, ch: char) -> bool {
        if self.peek() == Some(ch) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<CharacterRingElement, CharacterError> {
        let negate = if self.eat('-') {
            true
        } else {
            self.eat('+');
            false
        };
        let mut acc = self.term()?;
        if negate {
            acc = acc.neg();
        }
        loop {
            if self.eat('+') {
                acc = acc.add(&self.term()?)?;
            } else if self.eat('-') {
                acc = acc.sub(&self.term()?)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<CharacterRingElement, CharacterError> {
        let mut acc = self.power()?;
        loop {
            if self.eat('*') || matches!(self.peek(), Some(c) if c.is_ascii_digit() || c == 't' || c == '(') {
                acc = acc.multiply(&self.power()?)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn power(&mut self) -> Result<CharacterRingElement, CharacterError> {
        let base = self.atom()?;
        if !self.eat('^') {
            return Ok(base);
        }
        let negative = if self.eat('-') {
            true
        } else {
            self.eat('+');
            false
        };
        let k = self.integer()?;
        let k: i64 = k.try_into().map_err(|_| self.error("exponent out of range"))?;
        base.pow(if negative { -k } else { k })
    }

    fn atom(&mut self) -> Result<CharacterRingElement, CharacterError> {
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if !self.eat(')') {
                    return Err(self.error("expected ')'"));
                }
                Ok(inner)
            }
            Some('t') => {
                self.pos += 1;
                let index = if self.chars.get(self.pos).is_some_and(|c| c.1.is_ascii_digit()) {
                    let i = self.integer()?;
                    usize::try_from(i).map_err(|_| self.error("variable index out of range"))?
                } else if self.rank == 1 {
                    1
                } else {
                    return Err(self.error("bare 't' is only allowed for torus rank 1; use t1..tr"));
                };
                if index == 0 || index > self.rank {
                    return Err(self.error(&format!(
                        "variable t{index} out of range for torus rank {}",
                        self.rank
                    )));
                }
                Ok(CharacterRingElement::variable(self.rank, index - 1))
            }
            Some(c) if c.is_ascii_digit() => Ok(CharacterRingElement::constant(self.rank, self.integer()?)),
            Some(_) => Err(self.error("expected a number, a variable or '('")),
            None => Err(self.error("unexpected end of input")),
        }
    }

    fn integer(&mut self) -> Result<BigInt, CharacterError> {
        self.skip_ws();
        let start = self.pos;
        while self.chars.get(self.pos).is_some_and(|c| c.1.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected an integer"));
        }
        let text: String = self.chars[start..self.pos].iter().map(|c| c.1).collect();
        Ok(text.parse().expect("ascii digits"))
    }
}
