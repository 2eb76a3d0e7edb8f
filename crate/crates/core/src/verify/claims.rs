//! The claims catalog: one record per checked statement, with templated
//! expectations and a required citation.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::gl::GlIrr;
use crate::half::HalfInt;
use crate::parse::{key_value_records, parse_atom_with, parse_tensor_term_with, Env};
use crate::rulebase::JTerm;

use super::value::{Count, Value};

const BUILTIN: &str = include_str!("../../data/claims.txt");

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ParamKind {
    Triple,
    Pairs,
}

#[derive(Clone, Debug)]
pub struct Claim {
    pub id: String,
    pub params: ParamKind,
    pub citation: String,
    expect: Vec<(String, String)>,
}

#[derive(Clone, Debug)]
pub struct ClaimCatalog {
    claims: Vec<Claim>,
}

impl Claim {
    /// Expectation names, in catalog order.
    pub fn keys(&self) -> impl Iterator<Item = &str> {
        self.expect.iter().map(|(k, _)| k.as_str())
    }

    /// The expected value with the parameters substituted.
    pub fn expected(&self, env: Env) -> Result<Value> {
        let mut t = BTreeMap::new();
        for (k, v) in &self.expect {
            let parsed = parse_value(v, env)
                .map_err(|e| Error::Catalog(format!("{}: expect.{k}: {e}", self.id)))?;
            t.insert(k.clone(), parsed);
        }
        Ok(Value::Table(t))
    }
}

impl ClaimCatalog {
    pub fn builtin() -> Self {
        Self::parse(BUILTIN).expect("the built-in claims catalog is valid")
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut claims: Vec<Claim> = Vec::new();
        for r in key_value_records(text).map_err(Error::Catalog)? {
            let id = r
                .get("id")
                .cloned()
                .ok_or_else(|| Error::Catalog("claim without id".into()))?;
            let citation = r
                .get("citation")
                .filter(|c| !c.trim().is_empty())
                .cloned()
                .ok_or_else(|| Error::Catalog(format!("{id}: every claim needs a citation")))?;
            let params = match r.get("params").map(String::as_str) {
                Some("triple") => ParamKind::Triple,
                Some("pairs") => ParamKind::Pairs,
                other => return Err(Error::Catalog(format!("{id}: unknown params {other:?}"))),
            };
            let expect: Vec<(String, String)> = r
                .iter()
                .filter_map(|(k, v)| {
                    k.strip_prefix("expect.")
                        .map(|k| (k.to_string(), v.clone()))
                })
                .collect();
            if expect.is_empty() {
                return Err(Error::Catalog(format!("{id}: no expectations")));
            }
            if let Some(k) = r.keys().find(|k| {
                !k.starts_with("expect.") && !["id", "params", "citation"].contains(&k.as_str())
            }) {
                return Err(Error::Catalog(format!("{id}: unknown field {k:?}")));
            }
            if claims.iter().any(|c| c.id == id) {
                return Err(Error::Catalog(format!("duplicate claim id {id}")));
            }
            claims.push(Claim {
                id,
                params,
                citation,
                expect,
            });
        }
        claims.sort_by(|x, y| x.id.cmp(&y.id));
        Ok(ClaimCatalog { claims })
    }

    pub fn claims(&self) -> &[Claim] {
        &self.claims
    }

    pub fn get(&self, id: &str) -> Result<&Claim> {
        self.claims
            .iter()
            .find(|c| c.id == id)
            .ok_or_else(|| Error::UnknownClaim(id.to_string()))
    }

    /// Claims whose id matches a shell-style glob, sorted by id.
    pub fn select(&self, pattern: &str) -> Result<Vec<&Claim>> {
        let p = glob::Pattern::new(pattern).map_err(|e| Error::Parse {
            pos: e.pos,
            msg: e.msg.to_string(),
        })?;
        Ok(self.claims.iter().filter(|c| p.matches(&c.id)).collect())
    }
}

/// Splits on `sep` outside brackets.
fn split_top(s: &str, sep: char) -> Vec<&str> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, ch) in s.char_indices() {
        match ch {
            '(' | '{' => depth += 1,
            ')' | '}' => depth -= 1,
            c if c == sep && depth == 0 => {
                out.push(&s[start..i]);
                start = i + ch.len_utf8();
            }
            _ => {}
        }
    }
    out.push(&s[start..]);
    out
}

/// The canonical printed form of an atom, a Jacquet term, or a plain name.
pub fn normalize_key(s: &str, env: Env) -> Result<String> {
    let s = s.trim();
    if s.contains("(x)") {
        let (segs, tau) = parse_tensor_term_with(s, env)?;
        let [seg] = segs[..] else {
            return Err(Error::Domain(format!(
                "{s}: a Jacquet term needs one segment"
            )));
        };
        return Ok(JTerm::new(GlIrr::Delta(seg), tau).to_string());
    }
    if !s.is_empty() && s.chars().all(|c| c.is_ascii_lowercase() || c == '-') && s != "sigma" {
        return Ok(s.to_string());
    }
    Ok(parse_atom_with(s, env)?.to_string())
}

fn parse_count(s: &str) -> Result<u64> {
    s.trim().parse().map_err(|_| Error::Parse {
        pos: 0,
        msg: format!("expected a count, found {s:?}"),
    })
}

fn parse_multiset(s: &str, env: Env) -> Result<Value> {
    let inner = s
        .trim()
        .strip_prefix('{')
        .and_then(|r| r.strip_suffix('}'))
        .ok_or_else(|| Error::Parse {
            pos: 0,
            msg: format!("expected {{ .. }}, found {s:?}"),
        })?;
    let mut t: BTreeMap<String, Value> = BTreeMap::new();
    for item in split_top(inner, ';') {
        if item.trim().is_empty() {
            continue;
        }
        let k = parse_atom_with(item.trim(), env)?.to_string();
        let e = t.entry(k).or_insert(Value::Count(Count::exact(0)));
        if let Value::Count(c) = e {
            *c = c.add(Count::exact(1));
        }
    }
    Ok(Value::Table(t))
}

pub fn parse_value(s: &str, env: Env) -> Result<Value> {
    let s = s.trim();
    match s {
        "true" => return Ok(Value::Flag(true)),
        "false" => return Ok(Value::Flag(false)),
        _ => {}
    }
    if let Ok(n) = s.parse::<u64>() {
        return Ok(Value::Count(Count::exact(n)));
    }
    if s.starts_with('{') {
        let layers = split_top(s, '|');
        if layers.len() == 1 {
            return parse_multiset(s, env);
        }
        return layers
            .into_iter()
            .map(|l| parse_multiset(l, env))
            .collect::<Result<_>>()
            .map(Value::Layers);
    }
    let mut t = BTreeMap::new();
    for item in split_top(s, ';') {
        let (k, v) = if let Some((k, n)) = item.rsplit_once(" >= ") {
            (k, Count::at_least(parse_count(n)?))
        } else if let Some((k, n)) = item.rsplit_once(" = ") {
            (k, Count::exact(parse_count(n)?))
        } else {
            return Err(Error::Parse {
                pos: 0,
                msg: format!("expected `key = n` or `key >= n`, found {item:?}"),
            });
        };
        t.insert(normalize_key(k, env)?, Value::Count(v));
    }
    Ok(Value::Table(t))
}

/// Parameter environment for a triple.
pub fn triple_env(a: HalfInt, b: HalfInt, c: HalfInt) -> impl Fn(&str) -> Option<HalfInt> {
    move |n| match n {
        "a" => Some(a),
        "b" => Some(b),
        "c" => Some(c),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::half::h;

    #[test]
    fn builtin_loads() {
        let cat = ClaimCatalog::builtin();
        assert_eq!(cat.claims().len(), 14);
        let env = triple_env(h(1), h(3), h(5));
        for c in cat.claims() {
            if c.params == ParamKind::Triple {
                c.expected(&env).unwrap();
            }
        }
    }

    #[test]
    fn citation_is_required() {
        let text = "id: x\nparams: triple\nexpect.v: true\n";
        assert!(ClaimCatalog::parse(text)
            .unwrap_err()
            .to_string()
            .contains("citation"));
        let text = "id: x\nparams: triple\nexpect.v: true\ncitation:   \n";
        assert!(ClaimCatalog::parse(text).is_err());
    }

    #[test]
    fn glob_selection() {
        let cat = ClaimCatalog::builtin();
        let ids: Vec<&str> = cat
            .select("t*")
            .unwrap()
            .iter()
            .map(|c| c.id.as_str())
            .collect();
        assert_eq!(
            ids,
            [
                "tempered-in-big",
                "tempered-jacquet",
                "two-segment-quotient"
            ]
        );
        assert!(cat.select("nothing-*").unwrap().is_empty());
        assert!(matches!(cat.get("nope"), Err(Error::UnknownClaim(_))));
    }

    #[test]
    fn values() {
        let env = triple_env(h(1), h(3), h(5));
        let v = parse_value("{ sigma_a{a} ; sigma_a{a} } | { }", &env).unwrap();
        assert_eq!(
            v.flattened(),
            Value::table([("sigma_a{1/2}", Value::Count(Count::exact(2)))])
        );
        let v = parse_value("L(d(1/2,a) ; sigma_a{c}) = 1 ; psi >= 2", &env).unwrap();
        let Value::Table(t) = v else { panic!() };
        assert_eq!(t["psi"], Value::Count(Count::at_least(2)));
        assert_eq!(t.len(), 2);
    }
}
