//! Line-oriented curve description format.
//!
//! ```text
//! field 2 4
//! cab 4 5
//! term 5 0 1
//! term 0 1 1
//! ```
//!
//! `line` replaces `cab` for the projective line. Coefficients are integers for
//! prime fields and comma-separated low-to-high coefficient tuples otherwise.
//! Blank lines and `#` comments are ignored.

use super::{CabCurve, CurveError};
use crate::algebra::Field;

fn perr(line: usize, msg: impl Into<String>) -> CurveError {
    CurveError::Parse { line, msg: msg.into() }
}

fn num<T: std::str::FromStr>(tok: Option<&str>, line: usize, what: &str) -> Result<T, CurveError> {
    tok.ok_or_else(|| perr(line, format!("missing {what}")))?
        .parse()
        .map_err(|_| perr(line, format!("bad {what}")))
}

impl CabCurve {
    pub fn parse(text: &str) -> Result<CabCurve, CurveError> {
        let mut field: Option<Field> = None;
        let mut shape: Option<(u32, u32)> = None;
        let mut line_kind = false;
        let mut terms = Vec::new();
        for (n, raw) in text.lines().enumerate() {
            let ln = n + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let mut toks = content.split_whitespace();
            match toks.next().unwrap_or("") {
                "field" => {
                    let p: u32 = num(toks.next(), ln, "characteristic")?;
                    let k: u32 = num(toks.next(), ln, "degree")?;
                    field = Some(Field::new(p, k).map_err(|e| perr(ln, e.to_string()))?);
                }
                "cab" => {
                    let a: u32 = num(toks.next(), ln, "a")?;
                    let b: u32 = num(toks.next(), ln, "b")?;
                    shape = Some((a, b));
                }
                "line" => line_kind = true,
                "term" => {
                    let f = field.as_ref().ok_or_else(|| perr(ln, "term before field"))?;
                    let i: u32 = num(toks.next(), ln, "x exponent")?;
                    let j: u32 = num(toks.next(), ln, "y exponent")?;
                    let c = toks.next().ok_or_else(|| perr(ln, "missing coefficient"))?;
                    let c = f.parse_elem(c).map_err(|e| perr(ln, e.to_string()))?;
                    terms.push(((i, j), c));
                }
                other => return Err(perr(ln, format!("unknown keyword {other:?}"))),
            }
            if toks.next().is_some() {
                return Err(perr(ln, "trailing tokens"));
            }
        }
        let field = field.ok_or_else(|| perr(0, "missing field line"))?;
        match (line_kind, shape) {
            (true, None) if terms.is_empty() => Ok(CabCurve::line(&field)),
            (false, Some((a, b))) => CabCurve::new(&field, a, b, &terms),
            _ => Err(perr(
                0,
                "exactly one of `cab` or `line` is required (and `line` takes no terms)",
            )),
        }
    }

    pub fn to_text(&self) -> String {
        let f = self.field();
        let mut s = format!("field {} {}\n", f.p(), f.k());
        if self.is_line() {
            s.push_str("line\n");
            return s;
        }
        s.push_str(&format!("cab {} {}\n", self.a(), self.b()));
        for &((i, j), c) in self.terms() {
            s.push_str(&format!("term {i} {j} {}\n", f.format_elem(c)));
        }
        s
    }
}
