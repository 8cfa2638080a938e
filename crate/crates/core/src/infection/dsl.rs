//! Text pipelines for building surgery expressions:
//!
//! ```text
//! trivial(2) |> infect([x1,x2], knot:"trefoil") |> sum(knot("figure8"))
//! ```
//!
//! A pipeline starts from a stage and chains operators with `|>`. Stages:
//! `trivial(m)`, `knot("name")`, and `stack(p1, p2, ...)` whose arguments
//! are themselves pipelines of a trivial link plus infections. Operators:
//! `infect(word, knot:"name")` and `sum(pipeline)`. Knot names go through
//! the registry, so `"twist(4)"`, `"mirror(trefoil)"` and `"a # b"` work.

use crate::error::{Error, Result};
use crate::freegroup::parse_word;
use crate::infection::expr::{BoundaryLinkExpr, ManifoldExpr};
use crate::seifert::registry::knot_by_name;

pub fn parse_dsl(input: &str) -> Result<ManifoldExpr> {
    let mut cur = Cursor { s: input, pos: 0 };
    let expr = parse_pipeline(&mut cur)?;
    cur.skip_ws();
    if !cur.at_end() {
        return Err(cur.fail("unexpected trailing input"));
    }
    Ok(expr)
}

struct Cursor<'a> {
    s: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn rest(&self) -> &'a str {
        &self.s[self.pos..]
    }

    fn at_end(&self) -> bool {
        self.pos >= self.s.len()
    }

    fn peek(&self) -> Option<char> {
        self.rest().chars().next()
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.peek() {
            if c.is_whitespace() {
                self.pos += c.len_utf8();
            } else {
                break;
            }
        }
    }

    fn eat(&mut self, tok: &str) -> bool {
        self.skip_ws();
        if self.rest().starts_with(tok) {
            self.pos += tok.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, tok: &str) -> Result<()> {
        if self.eat(tok) {
            Ok(())
        } else {
            Err(self.fail(&format!("expected {tok:?}")))
        }
    }

    fn ident(&mut self) -> Result<&'a str> {
        self.skip_ws();
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_alphabetic() || c == '_') {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.fail("expected a name"));
        }
        Ok(&self.s[start..self.pos])
    }

    fn integer(&mut self) -> Result<usize> {
        self.skip_ws();
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        self.s[start..self.pos]
            .parse()
            .map_err(|_| self.fail("expected an integer"))
    }

    fn quoted(&mut self) -> Result<&'a str> {
        self.expect("\"")?;
        let start = self.pos;
        while let Some(c) = self.peek() {
            if c == '"' {
                let text = &self.s[start..self.pos];
                self.pos += 1;
                return Ok(text);
            }
            self.pos += c.len_utf8();
        }
        Err(self.fail("unterminated string"))
    }

    /// Text up to the next comma outside square brackets. Serves the first
    /// argument of `infect`, where the word itself may contain commas.
    fn until_word_break(&mut self) -> Result<&'a str> {
        self.skip_ws();
        let start = self.pos;
        let mut brackets = 0usize;
        while let Some(c) = self.peek() {
            match c {
                '[' => brackets += 1,
                ']' => {
                    if brackets == 0 {
                        return Err(self.fail("unbalanced ']' in word"));
                    }
                    brackets -= 1;
                }
                ',' if brackets == 0 => return Ok(&self.s[start..self.pos]),
                ')' if brackets == 0 => return Err(self.fail("expected \",\" after the word")),
                _ => {}
            }
            self.pos += c.len_utf8();
        }
        Err(self.fail("expected \",\" after the word"))
    }

    fn fail(&self, msg: &str) -> Error {
        let shown: String = self.rest().chars().take(24).collect();
        Error::Parse(format!("{msg} at {shown:?} (offset {})", self.pos))
    }
}

fn parse_pipeline(cur: &mut Cursor) -> Result<ManifoldExpr> {
    let mut expr = parse_stage(cur)?;
    while cur.eat("|>") {
        expr = parse_op(cur, expr)?;
    }
    Ok(expr)
}

fn parse_stage(cur: &mut Cursor) -> Result<ManifoldExpr> {
    let name = cur.ident()?;
    match name {
        "trivial" => {
            cur.expect("(")?;
            let m = cur.integer()?;
            cur.expect(")")?;
            ManifoldExpr::trivial_link(m)
        }
        "knot" => {
            cur.expect("(")?;
            let name = cur.quoted()?;
            cur.expect(")")?;
            Ok(ManifoldExpr::knot(knot_by_name(name)?))
        }
        "stack" => {
            cur.expect("(")?;
            let mut links = vec![];
            loop {
                let pipeline = parse_pipeline(cur)?;
                links.push(as_boundary_link(&pipeline)?);
                if cur.eat(",") {
                    continue;
                }
                cur.expect(")")?;
                break;
            }
            ManifoldExpr::boundary_stack(links)
        }
        other => Err(Error::Parse(format!(
            "unknown stage {other:?}; expected trivial, knot, or stack"
        ))),
    }
}

fn parse_op(cur: &mut Cursor, receiver: ManifoldExpr) -> Result<ManifoldExpr> {
    let name = cur.ident()?;
    match name {
        "infect" => {
            cur.expect("(")?;
            let word_text = cur.until_word_break()?;
            let eta = parse_word(word_text)?;
            cur.expect(",")?;
            let key = cur.ident()?;
            if key != "knot" {
                return Err(Error::Parse(format!(
                    "expected \"knot:\" in infect, found {key:?}"
                )));
            }
            cur.expect(":")?;
            let knot = knot_by_name(cur.quoted()?)?;
            cur.expect(")")?;
            ManifoldExpr::infect(receiver, eta, knot)
        }
        "sum" => {
            cur.expect("(")?;
            let arg = parse_pipeline(cur)?;
            cur.expect(")")?;
            Ok(ManifoldExpr::connected_sum(receiver, arg))
        }
        other => Err(Error::Parse(format!(
            "unknown operator {other:?}; expected infect or sum"
        ))),
    }
}

/// Stack arguments must be a trivial link followed by infections only.
fn as_boundary_link(expr: &ManifoldExpr) -> Result<BoundaryLinkExpr> {
    BoundaryLinkExpr::from_expr(expr)
        .map_err(|_| Error::Parse("stack arguments must be trivial(m) plus infections".into()))
}
