//! Text syntax for segments, atoms and induced expressions.
//!
//! ```text
//! expr   := factor (" x " factor)* " |x " atom  |  atom
//! factor := "d(" half "," half ")"
//! atom   := "sigma" | "sigma_a{" half "}" | "ds{b=" half ",c=" half "," sign "}"
//!         | "ds3{a=" half ",b=" half ",c=" half "," tag "}" | "T{" half "," half "," sign "}"
//!         | "L(" factor (" x " factor)* " ; " atom ")"
//! ```
//!
//! Half-integers may be written `n`, `-n`, `n/2`, `-n/2`. Inside the fact
//! catalog they may also be parameter names with integer offsets (`b+1`).

use std::collections::BTreeMap;

use crate::atom::{ClassAtom, Ds3Tag, InducedLabel, Sign};
use crate::error::{Error, Result};
use crate::half::HalfInt;
use crate::segment::{mk_segment, Segment};

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Num(i64),
    Ident(String),
    Sym(&'static str),
}

const SYMBOLS: [&str; 14] = [
    "|x", "(", ")", "{", "}", ",", ";", "=", "+", "-", "/", "*", "·", "<",
];

fn tokenize(s: &str) -> Result<Vec<(usize, Tok)>> {
    let mut out = Vec::new();
    let mut it = s.char_indices().peekable();
    'outer: while let Some(&(pos, ch)) = it.peek() {
        if ch.is_whitespace() {
            it.next();
            continue;
        }
        if ch.is_ascii_digit() {
            let mut n: i64 = 0;
            while let Some(&(_, d)) = it.peek() {
                let Some(v) = d.to_digit(10) else { break };
                n = n
                    .checked_mul(10)
                    .and_then(|n| n.checked_add(v as i64))
                    .ok_or(Error::Parse {
                        pos,
                        msg: "number too large".into(),
                    })?;
                it.next();
            }
            out.push((pos, Tok::Num(n)));
            continue;
        }
        if ch.is_alphabetic() || ch == '_' {
            let mut id = String::new();
            while let Some(&(_, d)) = it.peek() {
                if d.is_alphanumeric() || d == '_' {
                    id.push(d);
                    it.next();
                } else {
                    break;
                }
            }
            out.push((pos, Tok::Ident(id)));
            continue;
        }
        for sym in SYMBOLS {
            if s[pos..].starts_with(sym) {
                for _ in sym.chars() {
                    it.next();
                }
                out.push((pos, Tok::Sym(sym)));
                continue 'outer;
            }
        }
        return Err(Error::Parse {
            pos,
            msg: format!("unexpected character {ch:?}"),
        });
    }
    Ok(out)
}

/// Resolves parameter names; the empty environment accepts none.
pub type Env<'a> = &'a dyn Fn(&str) -> Option<HalfInt>;

fn no_env(_: &str) -> Option<HalfInt> {
    None
}

struct Parser<'a> {
    toks: Vec<(usize, Tok)>,
    at: usize,
    end: usize,
    env: Env<'a>,
}

impl<'a> Parser<'a> {
    fn new(s: &str, env: Env<'a>) -> Result<Self> {
        Ok(Parser {
            toks: tokenize(s)?,
            at: 0,
            end: s.len(),
            env,
        })
    }

    fn pos(&self) -> usize {
        self.toks.get(self.at).map_or(self.end, |t| t.0)
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            pos: self.pos(),
            msg: msg.into(),
        })
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|t| &t.1)
    }

    fn peek2(&self) -> Option<&Tok> {
        self.toks.get(self.at + 1).map(|t| &t.1)
    }

    fn eat_sym(&mut self, s: &str) -> bool {
        if matches!(self.peek(), Some(Tok::Sym(x)) if *x == s) {
            self.at += 1;
            true
        } else {
            false
        }
    }

    fn expect_sym(&mut self, s: &str) -> Result<()> {
        if self.eat_sym(s) {
            Ok(())
        } else {
            self.err(format!("expected {s:?}"))
        }
    }

    fn eat_ident(&mut self, s: &str) -> bool {
        if matches!(self.peek(), Some(Tok::Ident(x)) if x == s) {
            self.at += 1;
            true
        } else {
            false
        }
    }

    fn expect_ident(&mut self, s: &str) -> Result<()> {
        if self.eat_ident(s) {
            Ok(())
        } else {
            self.err(format!("expected {s:?}"))
        }
    }

    fn done(&self) -> Result<()> {
        if self.at == self.toks.len() {
            Ok(())
        } else {
            self.err("trailing input")
        }
    }

    fn half_term(&mut self) -> Result<HalfInt> {
        let neg = self.eat_sym("-");
        let v = match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.at += 1;
                if self.eat_sym("/") {
                    match self.peek() {
                        Some(Tok::Num(2)) => {
                            self.at += 1;
                            HalfInt::from_twice(n)
                        }
                        _ => return self.err("only halves are allowed"),
                    }
                } else {
                    HalfInt::from_int(n)
                }
            }
            Some(Tok::Ident(name)) => {
                let Some(v) = (self.env)(&name) else {
                    return self.err(format!("unknown parameter {name:?}"));
                };
                self.at += 1;
                v
            }
            _ => return self.err("expected a half-integer"),
        };
        Ok(if neg { -v } else { v })
    }

    fn half(&mut self) -> Result<HalfInt> {
        let mut v = self.half_term()?;
        loop {
            // a sign followed by `}` is a sign marker, not arithmetic
            let sign_marker = matches!(self.peek2(), Some(Tok::Sym("}")));
            if !sign_marker && self.eat_sym("+") {
                v = v + self.half_term()?;
            } else if !sign_marker && matches!(self.peek(), Some(Tok::Sym("-"))) {
                self.at += 1;
                v = v - self.half_term()?;
            } else {
                return Ok(v);
            }
        }
    }

    fn sign(&mut self) -> Result<Sign> {
        if self.eat_sym("+") {
            Ok(Sign::Plus)
        } else if self.eat_sym("-") {
            Ok(Sign::Minus)
        } else {
            self.err("expected + or -")
        }
    }

    fn keyed_half(&mut self, key: &str) -> Result<HalfInt> {
        self.expect_ident(key)?;
        self.expect_sym("=")?;
        self.half()
    }

    fn factor(&mut self) -> Result<Segment> {
        self.expect_ident("d")?;
        self.expect_sym("(")?;
        let lo = self.half()?;
        self.expect_sym(",")?;
        let hi = self.half()?;
        self.expect_sym(")")?;
        mk_segment(lo, hi)?.ok_or(Error::EmptySegment)
    }

    fn factors(&mut self) -> Result<Vec<Segment>> {
        let mut v = vec![self.factor()?];
        while self.eat_ident("x") {
            v.push(self.factor()?);
        }
        Ok(v)
    }

    fn atom(&mut self) -> Result<ClassAtom> {
        let Some(Tok::Ident(id)) = self.peek().cloned() else {
            return self.err("expected an atom");
        };
        self.at += 1;
        match id.as_str() {
            "sigma" => Ok(ClassAtom::Cusp),
            "sigma_a" => {
                self.expect_sym("{")?;
                let a = self.half()?;
                self.expect_sym("}")?;
                ClassAtom::sigma(a)
            }
            "ds" => {
                self.expect_sym("{")?;
                let b = self.keyed_half("b")?;
                self.expect_sym(",")?;
                let c = self.keyed_half("c")?;
                self.expect_sym(",")?;
                let s = self.sign()?;
                self.expect_sym("}")?;
                ClassAtom::signed_seg(b, c, s)
            }
            "ds3" => {
                self.expect_sym("{")?;
                let a = self.keyed_half("a")?;
                self.expect_sym(",")?;
                let b = self.keyed_half("b")?;
                self.expect_sym(",")?;
                let c = self.keyed_half("c")?;
                self.expect_sym(",")?;
                let tag = match self.peek().cloned() {
                    Some(Tok::Ident(t)) => match Ds3Tag::from_name(&t) {
                        Some(tag) => {
                            self.at += 1;
                            tag
                        }
                        None => return self.err(format!("unknown tag {t:?}")),
                    },
                    _ => return self.err("expected a tag"),
                };
                self.expect_sym("}")?;
                ClassAtom::ds3(a, b, c, tag)
            }
            "T" => {
                self.expect_sym("{")?;
                let a = self.half()?;
                self.expect_sym(",")?;
                let c = self.half()?;
                self.expect_sym(",")?;
                let s = self.sign()?;
                self.expect_sym("}")?;
                ClassAtom::temp(a, c, s)
            }
            "L" => {
                self.expect_sym("(")?;
                let segs = self.factors()?;
                self.expect_sym(";")?;
                let tau = self.atom()?;
                self.expect_sym(")")?;
                ClassAtom::lang(segs, tau)
            }
            other => {
                self.at -= 1;
                self.err(format!("unknown atom {other:?}"))
            }
        }
    }

    fn expr(&mut self) -> Result<InducedLabel> {
        if matches!(self.peek(), Some(Tok::Ident(d)) if d == "d") {
            let segs = self.factors()?;
            self.expect_sym("|x")?;
            let base = self.atom()?;
            Ok(InducedLabel::new(segs, base))
        } else {
            Ok(InducedLabel::atom(self.atom()?))
        }
    }

    /// `term (+ term)*` with `term := [n ("*"|"·")] atom`.
    fn combination(&mut self) -> Result<Vec<(ClassAtom, i64)>> {
        let mut out = Vec::new();
        loop {
            let mut n = 1;
            if let (Some(Tok::Num(k)), Some(Tok::Sym("*" | "·"))) =
                (self.peek().cloned(), self.peek2())
            {
                n = k;
                self.at += 2;
            }
            out.push((self.atom()?, n));
            if !self.eat_sym("+") {
                return Ok(out);
            }
        }
    }
}

pub fn parse_half(s: &str) -> Result<HalfInt> {
    let mut p = Parser::new(s, &no_env)?;
    let v = p.half()?;
    p.done()?;
    Ok(v)
}

/// `a,b,c` as three half-integers. Ordering is not checked here.
pub fn parse_triple(s: &str) -> Result<(HalfInt, HalfInt, HalfInt)> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    let [a, b, c] = parts[..] else {
        return Err(Error::Parse {
            pos: 0,
            msg: format!("expected a,b,c, found {s:?}"),
        });
    };
    Ok((parse_half(a)?, parse_half(b)?, parse_half(c)?))
}

pub fn parse_atom(s: &str) -> Result<ClassAtom> {
    parse_atom_with(s, &no_env)
}

pub fn parse_atom_with(s: &str, env: Env) -> Result<ClassAtom> {
    let mut p = Parser::new(s, env)?;
    let a = p.atom()?;
    p.done()?;
    Ok(a)
}

/// Parses `expr` and canonicalizes it.
pub fn parse_expression(s: &str) -> Result<InducedLabel> {
    parse_expression_with(s, &no_env)
}

pub fn parse_expression_with(s: &str, env: Env) -> Result<InducedLabel> {
    let mut p = Parser::new(s, env)?;
    let e = p.expr()?;
    p.done()?;
    Ok(e)
}

pub fn parse_combination_with(s: &str, env: Env) -> Result<Vec<(ClassAtom, i64)>> {
    let mut p = Parser::new(s, env)?;
    let c = p.combination()?;
    p.done()?;
    Ok(c)
}

/// A tensor term `g ⊗ τ`, written `d(..) x d(..) @ atom` with `@` spelled `|o`.
pub fn parse_tensor_term_with(s: &str, env: Env) -> Result<(Vec<Segment>, ClassAtom)> {
    let Some((gl, cl)) = s.split_once("(x)") else {
        return Err(Error::Parse {
            pos: 0,
            msg: "expected `gl (x) atom`".into(),
        });
    };
    let mut p = Parser::new(gl, env)?;
    let segs = p.factors()?;
    p.done()?;
    let atom = parse_atom_with(cl, env).map_err(|e| match e {
        Error::Parse { pos, msg } => Error::Parse {
            pos: pos + gl.len() + 3,
            msg,
        },
        e => e,
    })?;
    Ok((segs, atom))
}

/// Parses a chain such as `a < b < c` into consecutive strict pairs.
pub fn parse_chain_with(s: &str, env: Env) -> Result<Vec<(HalfInt, HalfInt)>> {
    let mut p = Parser::new(s, env)?;
    let mut vals = vec![p.half()?];
    while p.eat_sym("<") {
        vals.push(p.half()?);
    }
    p.done()?;
    Ok(vals.windows(2).map(|w| (w[0], w[1])).collect())
}

/// Splits `key: value` records separated by blank lines. Lines starting
/// with `#` are comments.
pub fn key_value_records(text: &str) -> std::result::Result<Vec<BTreeMap<String, String>>, String> {
    let mut out = Vec::new();
    let mut fields = BTreeMap::new();
    for (n, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.starts_with('#') {
            continue;
        }
        if line.is_empty() {
            if !fields.is_empty() {
                out.push(std::mem::take(&mut fields));
            }
            continue;
        }
        let (k, v) = line
            .split_once(':')
            .ok_or_else(|| format!("line {}: expected `key: value`", n + 1))?;
        if fields
            .insert(k.trim().to_string(), v.trim().to_string())
            .is_some()
        {
            return Err(format!("line {}: repeated key {:?}", n + 1, k.trim()));
        }
    }
    if !fields.is_empty() {
        out.push(fields);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::half::h;

    #[test]
    fn triples() {
        assert_eq!(parse_triple("1/2, 3/2,5/2").unwrap(), (h(1), h(3), h(5)));
        assert!(parse_triple("1/2,3/2").unwrap_err().is_syntax());
        assert!(parse_triple("1/2,3/2,x").is_err());
    }

    #[test]
    fn expressions_round_trip() {
        let e = parse_expression("d(1/2,5/2) x d(-1/2,3/2) |x sigma").unwrap();
        assert_eq!(
            e.segments(),
            &[
                Segment::new(h(-1), h(3)).unwrap(),
                Segment::new(h(1), h(5)).unwrap()
            ]
        );
        assert_eq!(parse_expression(&e.to_string()).unwrap(), e);

        let e = parse_expression("d(1/2,5/2) |x ds{b=3/2,c=5/2,+}").unwrap();
        assert_eq!(
            e.base(),
            &ClassAtom::signed_seg(h(3), h(5), Sign::Plus).unwrap()
        );
        assert_eq!(parse_expression(&e.to_string()).unwrap(), e);
    }

    #[test]
    fn semantic_versus_syntax_errors() {
        let e = parse_expression("d(1/2,2) |x sigma").unwrap_err();
        assert!(!e.is_syntax(), "{e}");
        let e = parse_expression("d(1/2,5/2) |x").unwrap_err();
        assert!(e.is_syntax());
        let e = parse_expression("d(1/2,5/2) |x sigma_b").unwrap_err();
        assert!(matches!(e, Error::Parse { pos: 14, .. }), "{e:?}");
        assert!(parse_atom("ds{b=-1/2,c=1/2,-}").is_err());
    }

    #[test]
    fn atoms_round_trip() {
        for s in [
            "sigma",
            "sigma_a{3/2}",
            "ds{b=3/2,c=5/2,-}",
            "ds3{a=1/2,b=3/2,c=5/2,minus_abc}",
            "T{1/2,5/2,+}",
            "L(d(1/2,3/2) ; sigma)",
            "L(d(-3/2,5/2) x d(1/2,1/2) ; sigma)",
            "L(d(1/2,1/2) ; ds{b=3/2,c=5/2,+})",
        ] {
            let a = parse_atom(s).unwrap();
            assert_eq!(parse_atom(&a.to_string()).unwrap(), a, "{s}");
        }
    }

    #[test]
    fn parameters() {
        let env = |n: &str| match n {
            "a" => Some(h(1)),
            "b" => Some(h(3)),
            _ => None,
        };
        let e = parse_expression_with("d(b+1,b+2) x d(-a,b) |x sigma_a{b}", &env).unwrap();
        assert_eq!(e.to_string(), "d(-1/2,3/2) x d(5/2,7/2) |x sigma_a{3/2}");
        let c = parse_combination_with("2*sigma_a{a} + ds{b=a,c=b,-}", &env).unwrap();
        assert_eq!(c[0].1, 2);
        assert_eq!(parse_chain_with("a < b", &env).unwrap(), vec![(h(1), h(3))]);
    }
}
