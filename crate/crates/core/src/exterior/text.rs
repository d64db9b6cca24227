//! Text form of exterior forms.
//!
//! Rendering: terms joined by `" + "`, each as `coefficient monomial` where
//! the coefficient is `p/q` (or `p` when the denominator is 1) and the
//! monomial is generator names joined by `^`, e.g.
//! `3/2 e1^e3 + -1 e2^e4`. A constant term is just its coefficient and the
//! zero form is `0`.
//!
//! Parsing accepts the same grammar with arbitrary whitespace, and is a bit
//! more lenient: coefficients may be omitted (`e1^e2`), `-` may be used
//! between terms, and monomial factors may be listed in any order (the sign
//! of the reordering is applied).

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{Form, IndexSet};
use crate::error::{Error, Result};
use crate::ratlin::Rational;

pub fn render_form(form: &Form, names: &[String]) -> String {
    if form.is_zero() {
        return "0".to_string();
    }
    form.terms()
        .map(|(s, c)| {
            if s.is_empty() {
                c.to_string()
            } else {
                let mono: Vec<&str> = s.indices().map(|i| names[i].as_str()).collect();
                format!("{} {}", c, mono.join("^"))
            }
        })
        .collect::<Vec<_>>()
        .join(" + ")
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(BigInt),
    Name(String),
    Caret,
    Slash,
    Plus,
    Minus,
}

fn tokenize(text: &str) -> Result<Vec<(Tok, usize)>> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        match c {
            c if c.is_whitespace() => i += 1,
            '^' | '∧' => {
                out.push((Tok::Caret, col));
                i += 1;
            }
            '/' => {
                out.push((Tok::Slash, col));
                i += 1;
            }
            '+' => {
                out.push((Tok::Plus, col));
                i += 1;
            }
            '-' | '−' => {
                out.push((Tok::Minus, col));
                i += 1;
            }
            c if c.is_ascii_digit() => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let s: String = chars[start..i].iter().collect();
                out.push((Tok::Int(s.parse().expect("digits")), col));
            }
            c if c.is_alphabetic() || c == '_' => {
                let start = i;
                while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                out.push((Tok::Name(chars[start..i].iter().collect()), col));
            }
            other => return Err(Error::parse(1, col, format!("unexpected character `{other}`"))),
        }
    }
    Ok(out)
}

/// Parses a form over the given generator names. Errors carry line 1 and
/// the 1-based column within `text`.
pub fn parse_form(text: &str, names: &[String]) -> Result<Form> {
    let toks = tokenize(text)?;
    let end_col = text.chars().count() + 1;
    let ambient = names.len();
    let mut form = Form::zero(ambient);
    let mut pos = 0;
    let col_at = |p: usize| toks.get(p).map_or(end_col, |t| t.1);
    if toks.is_empty() {
        return Err(Error::parse(1, end_col, "empty form"));
    }

    let mut first = true;
    while pos < toks.len() {
        let mut negative = false;
        if !first {
            match &toks[pos].0 {
                Tok::Plus => {}
                Tok::Minus => negative = true,
                _ => return Err(Error::parse(1, col_at(pos), "expected `+` or `-` between terms")),
            }
            pos += 1;
        }
        first = false;
        while let Some((Tok::Minus | Tok::Plus, _)) = toks.get(pos) {
            if toks[pos].0 == Tok::Minus {
                negative = !negative;
            }
            pos += 1;
        }

        let term_col = col_at(pos);
        let mut coeff: Option<Rational> = None;
        if let Some((Tok::Int(n), _)) = toks.get(pos) {
            let n = n.clone();
            pos += 1;
            let mut d = BigInt::one();
            if let Some((Tok::Slash, _)) = toks.get(pos) {
                pos += 1;
                match toks.get(pos) {
                    Some((Tok::Int(x), _)) => {
                        d = x.clone();
                        pos += 1;
                    }
                    _ => return Err(Error::parse(1, col_at(pos), "expected denominator after `/`")),
                }
                if d.is_zero() {
                    return Err(Error::parse(1, col_at(pos - 1), "zero denominator"));
                }
            }
            coeff = Some(Rational::new(n, d));
        }

        let mut mono: Option<(IndexSet, bool)> = None;
        if let Some((Tok::Name(_), _)) = toks.get(pos) {
            let mut set = IndexSet::EMPTY;
            let mut sign_neg = false;
            let mut vanished = false;
            loop {
                let (name, col) = match toks.get(pos) {
                    Some((Tok::Name(n), c)) => (n.clone(), *c),
                    _ => return Err(Error::parse(1, col_at(pos), "expected generator name after `^`")),
                };
                let idx = names
                    .iter()
                    .position(|n| *n == name)
                    .ok_or_else(|| Error::parse(1, col, format!("unknown generator `{name}`")))?;
                pos += 1;
                let g = IndexSet::singleton(idx);
                match set.merge_sign(g) {
                    Some(s) => {
                        sign_neg ^= s < 0;
                        set = set.union(g);
                    }
                    None => vanished = true,
                }
                if let Some((Tok::Caret, _)) = toks.get(pos) {
                    pos += 1;
                } else {
                    break;
                }
            }
            if !vanished {
                mono = Some((set, sign_neg));
            } else {
                mono = Some((IndexSet::EMPTY, false));
                coeff = Some(Rational::zero());
            }
        }

        if coeff.is_none() && mono.is_none() {
            return Err(Error::parse(1, term_col, "expected a coefficient or a monomial"));
        }
        let mut c = coeff.unwrap_or_else(Rational::one);
        let (set, mono_neg) = mono.unwrap_or((IndexSet::EMPTY, false));
        if negative ^ mono_neg {
            c = -c;
        }
        form.add_term(set, c);
    }
    Ok(form)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratlin::rat;

    fn names(n: usize) -> Vec<String> {
        (1..=n).map(|i| format!("e{i}")).collect()
    }

    #[test]
    fn render_example() {
        let ns = names(4);
        let mut f = Form::zero(4);
        f.add_term(IndexSet::from_indices(&[0, 2]), rat(3, 2));
        f.add_term(IndexSet::from_indices(&[1, 3]), rat(-1, 1));
        assert_eq!(render_form(&f, &ns), "3/2 e1^e3 + -1 e2^e4");
        assert_eq!(render_form(&Form::zero(4), &ns), "0");
        assert_eq!(render_form(&Form::constant(4, rat(5, 1)), &ns), "5");
    }

    #[test]
    fn parse_round_trip_and_leniency() {
        let ns = names(4);
        let f = parse_form("3/2 e1^e3 + -1 e2^e4", &ns).unwrap();
        assert_eq!(render_form(&f, &ns), "3/2 e1^e3 + -1 e2^e4");
        let g = parse_form("  3 / 2   e1 ^ e3+-1e2^e4 ", &ns).unwrap();
        assert_eq!(f, g);
        let h = parse_form("e3^e1 - e2^e4", &ns).unwrap();
        assert_eq!(render_form(&h, &ns), "-1 e1^e3 + -1 e2^e4");
        assert!(parse_form("e1^e1", &ns).unwrap().is_zero());
        assert_eq!(parse_form("0", &ns).unwrap(), Form::zero(4));
        assert_eq!(parse_form("-2", &ns).unwrap(), Form::constant(4, rat(-2, 1)));
    }

    #[test]
    fn parse_errors_carry_columns() {
        let ns = names(2);
        match parse_form("e1 + e7", &ns) {
            Err(Error::Parse { column, .. }) => assert_eq!(column, 6),
            other => panic!("unexpected {other:?}"),
        }
        assert!(parse_form("", &ns).is_err());
        assert!(parse_form("e1^", &ns).is_err());
        assert!(parse_form("1/0 e1", &ns).is_err());
        assert!(parse_form("e1 e2", &ns).is_err());
        assert!(parse_form("e1 $", &ns).is_err());
    }
}
