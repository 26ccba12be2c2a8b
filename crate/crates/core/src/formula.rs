//! Boolean formula language: parsing, printing, evaluation to truth tables,
//! and the named constructions used throughout the bounds pipelines.
//!
//! Surface syntax: variables `x1..x24`, `!` (not), `&` (and), `|` (or),
//! parentheses; the Unicode spellings `¬ ∧ ∨` are accepted as aliases.
//! Precedence is `!` > `&` > `|`, both binary operators left-associative.

use crate::bf::BooleanFunction;
use crate::error::{Error, Result};
use crate::MAX_VARS;

/// Formula AST. Variable indices are 1-based.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FormulaAst {
    Var(u32),
    Not(Box<FormulaAst>),
    And(Box<FormulaAst>, Box<FormulaAst>),
    Or(Box<FormulaAst>, Box<FormulaAst>),
}

impl FormulaAst {
    pub fn var(i: u32) -> Self {
        FormulaAst::Var(i)
    }

    // constructor named after the node, like `var`/`and`/`or`
    #[allow(clippy::should_implement_trait)]
    pub fn not(a: FormulaAst) -> Self {
        FormulaAst::Not(Box::new(a))
    }

    pub fn and(a: FormulaAst, b: FormulaAst) -> Self {
        FormulaAst::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: FormulaAst, b: FormulaAst) -> Self {
        FormulaAst::Or(Box::new(a), Box::new(b))
    }

    /// Largest variable index appearing in the formula.
    pub fn max_var(&self) -> u32 {
        match self {
            FormulaAst::Var(i) => *i,
            FormulaAst::Not(a) => a.max_var(),
            FormulaAst::And(a, b) | FormulaAst::Or(a, b) => a.max_var().max(b.max_var()),
        }
    }

    /// True when the formula contains no negation.
    pub fn is_monotone_syntax(&self) -> bool {
        match self {
            FormulaAst::Var(_) => true,
            FormulaAst::Not(_) => false,
            FormulaAst::And(a, b) | FormulaAst::Or(a, b) => {
                a.is_monotone_syntax() && b.is_monotone_syntax()
            }
        }
    }

    /// Swaps every `&` and `|`; on a monotone formula this computes the dual.
    pub fn swap_ops(&self) -> Self {
        match self {
            FormulaAst::Var(i) => FormulaAst::Var(*i),
            FormulaAst::Not(a) => FormulaAst::not(a.swap_ops()),
            FormulaAst::And(a, b) => FormulaAst::or(a.swap_ops(), b.swap_ops()),
            FormulaAst::Or(a, b) => FormulaAst::and(a.swap_ops(), b.swap_ops()),
        }
    }

    /// Evaluates to a truth table on `n >= max_var` variables. Subtrees are
    /// evaluated word-wise over the whole index range at once.
    pub fn eval(&self, n: u32) -> Result<BooleanFunction> {
        if !(1..=MAX_VARS).contains(&n) {
            return Err(Error::VarCountOutOfRange(n, MAX_VARS));
        }
        let mv = self.max_var();
        if n < mv {
            return Err(Error::InvalidArgument(format!(
                "formula uses x{mv} but n = {n}"
            )));
        }
        let nwords = (1usize << n).div_ceil(64);
        let words = self.eval_words(n, nwords);
        let bits: Vec<bool> = (0..(1u64 << n))
            .map(|i| (words[(i >> 6) as usize] >> (i & 63)) & 1 == 1)
            .collect();
        BooleanFunction::from_bits(n, &bits)
    }

    fn eval_words(&self, n: u32, nwords: usize) -> Vec<u64> {
        match self {
            FormulaAst::Var(j) => var_words(n, *j, nwords),
            FormulaAst::Not(a) => {
                let mut w = a.eval_words(n, nwords);
                for x in &mut w {
                    *x = !*x;
                }
                if (1u64 << n) < 64 {
                    w[0] &= (1u64 << (1u64 << n)) - 1;
                }
                w
            }
            FormulaAst::And(a, b) => {
                let mut w = a.eval_words(n, nwords);
                for (x, y) in w.iter_mut().zip(b.eval_words(n, nwords)) {
                    *x &= y;
                }
                w
            }
            FormulaAst::Or(a, b) => {
                let mut w = a.eval_words(n, nwords);
                for (x, y) in w.iter_mut().zip(b.eval_words(n, nwords)) {
                    *x |= y;
                }
                w
            }
        }
    }
}

/// Bitset of `x_j = true`, i.e. indices whose bit `n-j` is 0.
fn var_words(n: u32, j: u32, nwords: usize) -> Vec<u64> {
    let b = n - j;
    let mut words = vec![0u64; nwords];
    for (w, word) in words.iter_mut().enumerate() {
        for bit in 0..64u64 {
            let i = ((w as u64) << 6) | bit;
            if i < (1u64 << n) && (i >> b) & 1 == 0 {
                *word |= 1u64 << bit;
            }
        }
    }
    words
}

impl std::fmt::Display for FormulaAst {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        // precedence levels: Or = 0, And = 1, Not = 2, Var = 3
        fn go(ast: &FormulaAst, parent: u8, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
            let level = match ast {
                FormulaAst::Or(..) => 0,
                FormulaAst::And(..) => 1,
                FormulaAst::Not(_) => 2,
                FormulaAst::Var(_) => 3,
            };
            let need_parens = level < parent;
            if need_parens {
                write!(f, "(")?;
            }
            match ast {
                FormulaAst::Var(i) => write!(f, "x{i}")?,
                FormulaAst::Not(a) => {
                    write!(f, "!")?;
                    go(a, 3, f)?;
                }
                FormulaAst::And(a, b) => {
                    go(a, 1, f)?;
                    write!(f, " & ")?;
                    // right child needs parens when it is another And to keep
                    // the printed tree left-associative on re-parse
                    go(b, 2, f)?;
                }
                FormulaAst::Or(a, b) => {
                    go(a, 0, f)?;
                    write!(f, " | ")?;
                    go(b, 1, f)?;
                }
            }
            if need_parens {
                write!(f, ")")?;
            }
            Ok(())
        }
        go(self, 0, f)
    }
}

/// Parses the surface syntax into an AST.
pub fn parse(text: &str) -> Result<FormulaAst> {
    let mut p = Parser { chars: text.char_indices().peekable(), text };
    let ast = p.or_expr()?;
    p.skip_ws();
    if let Some(&(pos, c)) = p.chars.peek() {
        return Err(Error::Syntax { pos, msg: format!("unexpected `{c}`") });
    }
    Ok(ast)
}

struct Parser<'a> {
    chars: std::iter::Peekable<std::str::CharIndices<'a>>,
    text: &'a str,
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while matches!(self.chars.peek(), Some(&(_, c)) if c.is_whitespace()) {
            self.chars.next();
        }
    }

    fn or_expr(&mut self) -> Result<FormulaAst> {
        let mut lhs = self.and_expr()?;
        loop {
            self.skip_ws();
            match self.chars.peek() {
                Some(&(_, '|')) | Some(&(_, '∨')) => {
                    self.chars.next();
                    let rhs = self.and_expr()?;
                    lhs = FormulaAst::or(lhs, rhs);
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn and_expr(&mut self) -> Result<FormulaAst> {
        let mut lhs = self.factor()?;
        loop {
            self.skip_ws();
            match self.chars.peek() {
                Some(&(_, '&')) | Some(&(_, '∧')) => {
                    self.chars.next();
                    let rhs = self.factor()?;
                    lhs = FormulaAst::and(lhs, rhs);
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn factor(&mut self) -> Result<FormulaAst> {
        self.skip_ws();
        match self.chars.peek().copied() {
            Some((_, '!')) | Some((_, '¬')) => {
                self.chars.next();
                Ok(FormulaAst::not(self.factor()?))
            }
            Some((_, '(')) => {
                self.chars.next();
                let inner = self.or_expr()?;
                self.skip_ws();
                match self.chars.next() {
                    Some((_, ')')) => Ok(inner),
                    Some((pos, c)) => {
                        Err(Error::Syntax { pos, msg: format!("expected `)`, found `{c}`") })
                    }
                    None => Err(Error::Syntax {
                        pos: self.text.len(),
                        msg: "expected `)`, found end of input".into(),
                    }),
                }
            }
            Some((pos, 'x')) => {
                self.chars.next();
                let mut digits = String::new();
                while matches!(self.chars.peek(), Some(&(_, c)) if c.is_ascii_digit()) {
                    digits.push(self.chars.next().unwrap().1);
                }
                if digits.is_empty() {
                    return Err(Error::Syntax { pos, msg: "expected digits after `x`".into() });
                }
                let idx: u32 = digits
                    .parse()
                    .map_err(|_| Error::Syntax { pos, msg: "variable index overflow".into() })?;
                if idx == 0 || idx > MAX_VARS {
                    return Err(Error::Syntax {
                        pos,
                        msg: format!("variable index must be 1..={MAX_VARS}, got {idx}"),
                    });
                }
                Ok(FormulaAst::Var(idx))
            }
            Some((pos, c)) => Err(Error::Syntax { pos, msg: format!("unexpected `{c}`") }),
            None => Err(Error::Syntax {
                pos: self.text.len(),
                msg: "unexpected end of input".into(),
            }),
        }
    }
}

/// `G_m(y_1, .., y_{2m-1})` over the given variable list:
/// `G_1(y1) = y1`, `G_{m+1}(y1, ..) = y1 ∨ (y2 ∧ G_m(y3, ..))`.
pub(crate) fn g_upper_on(vars: &[u32]) -> FormulaAst {
    if vars.len() == 1 {
        return FormulaAst::var(vars[0]);
    }
    FormulaAst::or(
        FormulaAst::var(vars[0]),
        FormulaAst::and(FormulaAst::var(vars[1]), g_upper_on(&vars[2..])),
    )
}

/// Named constructions.
pub fn builtin(name: &str, param: u64) -> Result<FormulaAst> {
    let chain_and = |idxs: &[u32]| {
        idxs[1..]
            .iter()
            .fold(FormulaAst::var(idxs[0]), |acc, &i| FormulaAst::and(acc, FormulaAst::var(i)))
    };
    let clause = |vars: &[u32]| {
        vars[1..]
            .iter()
            .fold(FormulaAst::var(vars[0]), |acc, &i| FormulaAst::or(acc, FormulaAst::var(i)))
    };
    let cnf = |clauses: &[&[u32]]| {
        clauses[1..]
            .iter()
            .fold(clause(clauses[0]), |acc, c| FormulaAst::and(acc, clause(c)))
    };
    match name {
        "AND" => {
            let n = param as u32;
            if !(1..=MAX_VARS).contains(&n) {
                return Err(Error::BuiltinParam(param, "AND"));
            }
            Ok(chain_and(&(1..=n).collect::<Vec<_>>()))
        }
        "OR" => {
            let n = param as u32;
            if !(1..=MAX_VARS).contains(&n) {
                return Err(Error::BuiltinParam(param, "OR"));
            }
            Ok(clause(&(1..=n).collect::<Vec<_>>()))
        }
        "g" => {
            let m = param as u32;
            if m < 1 || 2 * m > MAX_VARS {
                return Err(Error::BuiltinParam(param, "g"));
            }
            let mut vars: Vec<u32> = (3..=2 * m).collect();
            vars.push(1);
            Ok(FormulaAst::and(
                FormulaAst::or(FormulaAst::var(1), FormulaAst::var(2)),
                g_upper_on(&vars),
            ))
        }
        "G" => {
            let m = param as u32;
            if m < 1 || 2 * m - 1 > MAX_VARS {
                return Err(Error::BuiltinParam(param, "G"));
            }
            Ok(g_upper_on(&(1..=2 * m - 1).collect::<Vec<_>>()))
        }
        "gprime3" => Ok(cnf(&[&[1, 2], &[3, 4], &[1, 3, 5], &[2, 4, 6]])),
        "gprime4" => Ok(cnf(&[&[1, 2], &[3, 4], &[3, 5, 6], &[1, 3, 5, 7], &[2, 3, 6, 8]])),
        "tau" => Ok(FormulaAst::not(FormulaAst::and(FormulaAst::var(1), FormulaAst::var(2)))),
        "iota" => Ok(FormulaAst::var(1)),
        other => Err(Error::UnknownBuiltin(other.to_string())),
    }
}

/// Monotonicity scan of a truth table: no false→true input flip lowers the
/// output. In index terms, clearing a bit (turning a variable true) never
/// turns the output from true to false.
pub fn is_monotone_table(f: &BooleanFunction) -> bool {
    for i in 0..f.size() {
        if f.get(i) {
            for b in 0..f.n() {
                if (i >> b) & 1 == 1 && !f.get(i & !(1u64 << b)) {
                    return false;
                }
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat;
    use num::One;

    const G3_CNF: &str = "(x1 | x2) & (x3 | x4) & (x1 | x3 | x5) & (x3 | x5 | x6)";

    #[test]
    fn precedence() {
        let ast = parse("x1 | x2 & x3").unwrap();
        assert_eq!(
            ast,
            FormulaAst::or(FormulaAst::var(1), FormulaAst::and(FormulaAst::var(2), FormulaAst::var(3)))
        );
    }

    #[test]
    fn unicode_aliases() {
        assert_eq!(parse("x1 ∨ x2 ∧ ¬x3").unwrap(), parse("x1 | x2 & !x3").unwrap());
    }

    #[test]
    fn tau_parses() {
        assert_eq!(parse("!(x1 & x2)").unwrap(), builtin("tau", 0).unwrap());
    }

    #[test]
    fn syntax_errors_carry_position() {
        match parse("x1 & (x2 | ") {
            Err(Error::Syntax { pos, .. }) => assert_eq!(pos, 11),
            other => panic!("expected syntax error, got {other:?}"),
        }
        assert!(parse("x0").is_err());
        assert!(parse("x25").is_err());
    }

    #[test]
    fn eval_needs_enough_vars() {
        let ast = parse("x3").unwrap();
        assert!(ast.eval(2).is_err());
        assert!(ast.eval(3).is_ok());
    }

    #[test]
    fn g3_cnf_matches_builtin_chain_form() {
        let cnf = parse(G3_CNF).unwrap().eval(6).unwrap();
        let chain = builtin("g", 3).unwrap().eval(6).unwrap();
        assert_eq!(cnf, chain);
        let p = cnf.profile();
        assert!(p.p_exact().unwrap().eq(&rat(1, 2)));
        assert_eq!(p.i_exact().unwrap(), &rat(13, 8));
    }

    #[test]
    fn gprime3_values() {
        let f = builtin("gprime3", 0).unwrap().eval(6).unwrap();
        let p = f.profile();
        assert_eq!(p.p_exact().unwrap(), &rat(1, 2));
        assert_eq!(p.i_exact().unwrap(), &rat(13, 8));
        assert!(p.h() > 3.9669);
    }

    #[test]
    fn g4_cnf_matches_builtin_chain_form() {
        let cnf = parse(
            "(x1 | x2) & (x3 | x4) & (x3 | x5 | x6) & (x1 | x3 | x5 | x7) & (x3 | x5 | x7 | x8)",
        )
        .unwrap()
        .eval(8)
        .unwrap();
        assert_eq!(cnf, builtin("g", 4).unwrap().eval(8).unwrap());
    }

    #[test]
    fn gprime4_values() {
        let f = builtin("gprime4", 0).unwrap().eval(8).unwrap();
        let p = f.profile();
        assert_eq!(p.p_exact().unwrap(), &rat(1, 2));
        assert_eq!(p.i_exact().unwrap(), &rat(53, 32));
        assert!(p.h() > 4.17635);
    }

    #[test]
    fn g1_reduces_to_dictator() {
        let f = builtin("g", 1).unwrap().eval(2).unwrap();
        let p = f.profile();
        assert_eq!(p.i_exact().unwrap(), &Rat::one());
        assert!(p.h().abs() < 1e-15);
    }

    #[test]
    fn g2_row() {
        let f = builtin("g", 2).unwrap().eval(4).unwrap();
        let p = f.profile();
        assert_eq!(p.i_exact().unwrap(), &rat(3, 2));
        assert!((p.h() - 3.0).abs() < 1e-12);
    }

    #[test]
    fn g_upper_matches_lex_two_thirds() {
        for m in 1..=10u32 {
            let n = 2 * m - 1;
            let g = builtin("G", m as u64).unwrap().eval(n).unwrap();
            let s = (2 * (1u64 << n)) / 3;
            let lex = crate::lex::lex_truth_table(n, s).unwrap();
            assert_eq!(g, lex, "m={m}");
        }
    }

    #[test]
    fn print_parse_round_trip_builtins() {
        for (name, param) in [
            ("AND", 4),
            ("OR", 5),
            ("g", 3),
            ("g", 4),
            ("G", 5),
            ("gprime3", 0),
            ("gprime4", 0),
            ("tau", 0),
            ("iota", 0),
        ] {
            let ast = builtin(name, param).unwrap();
            let printed = ast.to_string();
            assert_eq!(parse(&printed).unwrap(), ast, "{name} printed as {printed}");
        }
    }

    #[test]
    fn monotone_formulas_give_monotone_tables() {
        for (name, param, n) in [("g", 3, 6), ("g", 5, 10), ("gprime4", 0, 8), ("G", 4, 7)] {
            let ast = builtin(name, param).unwrap();
            assert!(ast.is_monotone_syntax());
            assert!(is_monotone_table(&ast.eval(n).unwrap()), "{name}");
        }
        assert!(!is_monotone_table(&builtin("tau", 0).unwrap().eval(2).unwrap()));
    }

    #[test]
    fn syntactic_duality() {
        let g3 = parse(G3_CNF).unwrap();
        let dual_table = g3.swap_ops().eval(6).unwrap();
        assert_eq!(dual_table, g3.eval(6).unwrap().dual());
    }

    #[test]
    fn g_m_balanced() {
        for m in 1..=8u64 {
            let f = builtin("g", m).unwrap().eval(2 * m as u32).unwrap();
            assert_eq!(f.prob_true(), rat(1, 2), "m={m}");
        }
    }

    use crate::Rat;
}
