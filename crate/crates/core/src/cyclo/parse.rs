use num_bigint::BigInt;
use num_rational::BigRational;

use super::CycloElem;

/// Parses the scalar syntax: rational literals, `z` for `ζₙ`, `^` integer
/// powers, `+ - * /` and parentheses. Example: `1/2*z^3 - z + 2`.
pub fn parse_scalar(src: &str, n: u32) -> Result<CycloElem, String> {
    if n == 0 {
        return Err("conductor must be positive".into());
    }
    let mut p = Parser {
        s: src.as_bytes(),
        pos: 0,
        n,
    };
    let v = p.expr()?;
    p.skip_ws();
    if p.pos != p.s.len() {
        return Err(format!("unexpected '{}' at column {}", p.s[p.pos] as char, p.pos + 1));
    }
    Ok(v)
}

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
    n: u32,
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<CycloElem, String> {
        let mut acc = self.term()?;
        while let Some(c) = self.peek() {
            match c {
                b'+' => {
                    self.pos += 1;
                    acc = &acc + &self.term()?;
                }
                b'-' => {
                    self.pos += 1;
                    acc = &acc - &self.term()?;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<CycloElem, String> {
        let mut acc = self.unary()?;
        while let Some(c) = self.peek() {
            match c {
                b'*' => {
                    self.pos += 1;
                    acc = &acc * &self.unary()?;
                }
                b'/' => {
                    self.pos += 1;
                    let d = self.unary()?;
                    acc = acc.checked_div(&d).map_err(|e| e.to_string())?;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<CycloElem, String> {
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                Ok(-self.unary()?)
            }
            Some(b'+') => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<CycloElem, String> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            let e = self.exponent()?;
            return base.pow(e).map_err(|e| e.to_string());
        }
        Ok(base)
    }

    fn exponent(&mut self) -> Result<i64, String> {
        let paren = self.peek() == Some(b'(');
        if paren {
            self.pos += 1;
        }
        let neg = if self.peek() == Some(b'-') {
            self.pos += 1;
            true
        } else {
            false
        };
        self.skip_ws();
        let digits = self.digits()?;
        let v: i64 = digits.parse().map_err(|_| format!("exponent '{digits}' out of range"))?;
        if paren {
            if self.peek() != Some(b')') {
                return Err("missing ')' in exponent".into());
            }
            self.pos += 1;
        }
        Ok(if neg { -v } else { v })
    }

    fn digits(&mut self) -> Result<String, String> {
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(format!("expected a number at column {}", start + 1));
        }
        Ok(String::from_utf8_lossy(&self.s[start..self.pos]).into_owned())
    }

    fn atom(&mut self) -> Result<CycloElem, String> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let v = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err("missing ')'".into());
                }
                self.pos += 1;
                Ok(v)
            }
            Some(b'z') => {
                self.pos += 1;
                Ok(CycloElem::zeta(self.n, 1))
            }
            Some(c) if c.is_ascii_digit() => {
                let d = self.digits()?;
                let v: BigInt = d.parse().map_err(|_| format!("bad integer '{d}'"))?;
                Ok(CycloElem::from_rational(BigRational::from_integer(v)))
            }
            Some(c) => Err(format!("unexpected '{}' at column {}", c as char, self.pos + 1)),
            None => Err("unexpected end of expression".into()),
        }
    }
}
