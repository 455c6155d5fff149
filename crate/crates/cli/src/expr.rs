//! The group expression grammar:
//!
//! ```text
//! atom   := "0" | "Z" | "Z/" integer
//! term   := atom ["^" integer]
//! expr   := term { "+" term }
//! graded := "[" expr ";" expr "]"
//! ```
//!
//! Whitespace-insensitive; `+` is direct sum. Parsing canonicalizes, so
//! print-parse-print is a fixpoint on the canonical form.

use num_bigint::BigInt;
use num_traits::Zero;
use std::fmt;

use kkdual_core::fgab::FgAbGroup;
use kkdual_core::kkobj::GradedGroup;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub position: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "syntax error at position {}: {}", self.position, self.message)
    }
}

impl std::error::Error for ParseError {}

struct Cursor<'a> {
    text: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(text: &'a str) -> Self {
        Cursor {
            text: text.as_bytes(),
            pos: 0,
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.text.len() && self.text[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.text.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<u8> {
        let c = self.peek()?;
        self.pos += 1;
        Some(c)
    }

    fn expect(&mut self, c: u8) -> Result<(), ParseError> {
        match self.peek() {
            Some(got) if got == c => {
                self.pos += 1;
                Ok(())
            }
            got => Err(self.error(format!(
                "expected {:?}, found {}",
                c as char,
                describe(got)
            ))),
        }
    }

    fn error(&self, message: String) -> ParseError {
        ParseError {
            position: self.pos,
            message,
        }
    }

    fn integer(&mut self) -> Result<BigInt, ParseError> {
        self.skip_ws();
        let start = self.pos;
        let negative = self.text.get(self.pos) == Some(&b'-');
        if negative {
            self.pos += 1;
        }
        let digits_start = self.pos;
        while self
            .text
            .get(self.pos)
            .is_some_and(u8::is_ascii_digit)
        {
            self.pos += 1;
        }
        if self.pos == digits_start {
            self.pos = start;
            return Err(self.error("expected an integer".to_string()));
        }
        let s = std::str::from_utf8(&self.text[start..self.pos]).expect("digits are ascii");
        Ok(s.parse().expect("digit run parses"))
    }

    fn at_end(&mut self) -> bool {
        self.peek().is_none()
    }
}

fn describe(c: Option<u8>) -> String {
    match c {
        Some(c) => format!("{:?}", c as char),
        None => "end of input".to_string(),
    }
}

/// One parsed term: a cyclic order (0 for `Z`) and a repetition count.
fn term(cur: &mut Cursor) -> Result<(BigInt, usize), ParseError> {
    let order = match cur.peek() {
        Some(b'0') => {
            cur.bump();
            BigInt::from(1) // the trivial group contributes nothing
        }
        Some(b'Z') => {
            cur.bump();
            if cur.peek() == Some(b'/') {
                cur.bump();
                let pos = cur.pos;
                let n = cur.integer()?;
                if n < BigInt::from(2) {
                    return Err(ParseError {
                        position: pos,
                        message: format!("Z/{} is not allowed; the modulus must be at least 2", n),
                    });
                }
                n
            } else {
                BigInt::zero()
            }
        }
        got => return Err(cur.error(format!("expected '0' or 'Z', found {}", describe(got)))),
    };
    let reps = if cur.peek() == Some(b'^') {
        cur.bump();
        let pos = cur.pos;
        let e = cur.integer()?;
        if e < BigInt::zero() {
            return Err(ParseError {
                position: pos,
                message: "negative exponent".to_string(),
            });
        }
        usize::try_from(&e).map_err(|_| ParseError {
            position: pos,
            message: format!("exponent {} is too large", e),
        })?
    } else {
        1
    };
    Ok((order, reps))
}

fn expr(cur: &mut Cursor) -> Result<FgAbGroup, ParseError> {
    let mut orders: Vec<BigInt> = Vec::new();
    loop {
        let (order, reps) = term(cur)?;
        for _ in 0..reps {
            orders.push(order.clone());
        }
        if cur.peek() == Some(b'+') {
            cur.bump();
        } else {
            break;
        }
    }
    // an order of 1 (the "0" atom) presents the trivial group and drops out
    Ok(FgAbGroup::from_cyclic_orders(&orders))
}

/// Parses a group expression, canonicalizing the result.
pub fn parse_group(text: &str) -> Result<FgAbGroup, ParseError> {
    let mut cur = Cursor::new(text);
    let g = expr(&mut cur)?;
    if !cur.at_end() {
        return Err(cur.error("trailing input after expression".to_string()));
    }
    Ok(g)
}

/// Parses a graded expression `[expr ; expr]`.
pub fn parse_graded(text: &str) -> Result<GradedGroup, ParseError> {
    let mut cur = Cursor::new(text);
    cur.expect(b'[')?;
    let g0 = expr(&mut cur)?;
    cur.expect(b';')?;
    let g1 = expr(&mut cur)?;
    cur.expect(b']')?;
    if !cur.at_end() {
        return Err(cur.error("trailing input after graded expression".to_string()));
    }
    Ok(GradedGroup::new(g0, g1))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_canonicalizes() {
        let g = parse_group("Z^2 + Z/4 + Z/6").unwrap();
        assert_eq!(g.rank(), 2);
        assert_eq!(g.torsion(), &[BigInt::from(2), BigInt::from(12)]);
    }

    #[test]
    fn parse_trivial_and_units() {
        assert!(parse_group("0").unwrap().is_trivial());
        assert_eq!(parse_group("Z").unwrap(), FgAbGroup::free(1));
        assert_eq!(parse_group("0 + Z/5 + 0").unwrap(), FgAbGroup::cyclic(5));
        assert_eq!(parse_group("Z^0").unwrap(), FgAbGroup::trivial());
    }

    #[test]
    fn parse_rejects_bad_moduli() {
        assert!(parse_group("Z/1").is_err());
        assert!(parse_group("Z/0").is_err());
        assert!(parse_group("Z/-3").is_err());
    }

    #[test]
    fn parse_rejects_negative_exponent() {
        let err = parse_group("Z^-1").unwrap_err();
        assert!(err.message.contains("negative exponent"), "{}", err);
    }

    #[test]
    fn parse_rejects_garbage() {
        assert!(parse_group("Z +").is_err());
        assert!(parse_group("Z Z").is_err());
        assert!(parse_group("").is_err());
        assert!(parse_graded("[Z ; Z") .is_err());
        assert!(parse_graded("[Z ; Z] junk").is_err());
    }

    #[test]
    fn graded_round_trip() {
        let g = parse_graded("[ Z/3 ; 0 ]").unwrap();
        assert_eq!(g.to_string(), "[Z/3 ; 0]");
        assert_eq!(parse_graded(&g.to_string()).unwrap(), g);
    }

    #[test]
    fn whitespace_is_ignored() {
        assert_eq!(
            parse_group("Z ^ 2+Z/ 4"),
            parse_group("Z^2 + Z/4")
        );
    }
}
