//! The profile expression language for `compose` and `bound --profile`:
//!
//! ```text
//! expr := meet(expr, expr) | join(expr, expr) | dual(expr) | kappa(expr)
//!       | iota | const:0 | const:1 | lex:<rational-or-float> | table:<path>
//! ```

use anyhow::{anyhow, bail, Context, Result};
use fei_core::bf::BooleanFunction;
use fei_core::lex;
use fei_core::FunctionProfile;

pub fn parse_profile_expr(text: &str, bits: u32) -> Result<FunctionProfile> {
    let mut p = Parser { text, pos: 0, bits };
    let value = p.expr()?;
    p.skip_ws();
    if p.pos != p.text.len() {
        bail!("trailing input at byte {} in profile expression", p.pos);
    }
    Ok(value)
}

struct Parser<'a> {
    text: &'a str,
    pos: usize,
    bits: u32,
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while self.rest().starts_with(char::is_whitespace) {
            self.pos += 1;
        }
    }

    fn rest(&self) -> &str {
        &self.text[self.pos..]
    }

    fn eat(&mut self, token: char) -> Result<()> {
        self.skip_ws();
        if self.rest().starts_with(token) {
            self.pos += token.len_utf8();
            Ok(())
        } else {
            bail!("expected `{token}` at byte {} in profile expression", self.pos)
        }
    }

    fn expr(&mut self) -> Result<FunctionProfile> {
        self.skip_ws();
        for (name, arity) in [("meet", 2), ("join", 2), ("dual", 1), ("kappa", 1)] {
            if self.rest().starts_with(name)
                && self.rest()[name.len()..].trim_start().starts_with('(')
            {
                self.pos += name.len();
                self.eat('(')?;
                let a = self.expr()?;
                let out = if arity == 2 {
                    self.eat(',')?;
                    let b = self.expr()?;
                    match name {
                        "meet" => a.meet(&b),
                        _ => a.join(&b),
                    }
                } else {
                    match name {
                        "dual" => a.dual(),
                        _ => a.solve_kappa()?,
                    }
                };
                self.eat(')')?;
                return Ok(out);
            }
        }
        self.atom()
    }

    fn atom(&mut self) -> Result<FunctionProfile> {
        self.skip_ws();
        let rest = self.rest();
        let end = rest
            .find(|c: char| c == ',' || c == ')' || c.is_whitespace())
            .unwrap_or(rest.len());
        let token = rest[..end].to_string();
        if token.is_empty() {
            bail!("expected a profile atom at byte {}", self.pos);
        }
        self.pos += end;
        match token.as_str() {
            "iota" => Ok(FunctionProfile::iota()),
            "const:0" => Ok(FunctionProfile::constant(false)),
            "const:1" => Ok(FunctionProfile::constant(true)),
            _ if token.starts_with("lex:") => {
                // fractions are exact, decimals go through truncation
                let arg = &token[4..];
                if arg.contains('/') {
                    let r = super::parse_rational(arg)?;
                    Ok(lex::lex_profile_exact(&r)?.to_function_profile())
                } else {
                    let v: f64 =
                        arg.parse().with_context(|| format!("bad lex measure `{arg}`"))?;
                    Ok(lex::lex_profile_truncated(v, self.bits)?.to_function_profile())
                }
            }
            _ if token.starts_with("table:") => {
                let path = &token[6..];
                let text = std::fs::read_to_string(path)
                    .with_context(|| format!("reading {path}"))?;
                Ok(BooleanFunction::from_table_text(&text)?.profile())
            }
            other => Err(anyhow!("unknown profile atom `{other}`")),
        }
    }
}
