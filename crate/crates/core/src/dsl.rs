//! Text format for monodromy factorizations.
//!
//! ```text
//! # Matsumoto's genus-2 fibration
//! genus 2
//! base 0
//! curve B1 = b1 b2 kind nonsep
//! curve B2 = a1 b1 a1^-1 b1^-1 kind sep 1
//! curve B3 = b2 a2 b2^-1 a1 kind nonsep
//! curve B4 = b2 a2 a1 b1 kind nonsep
//! word (B1 B2 B3 B4)^2
//! ```
//!
//! `word` lines concatenate; groups take nonnegative integer exponents.

use std::collections::HashMap;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::fibration::{CycleKind, MonodromyFactorization, VanishingCycle};
use crate::words::{resolve_surface, FreeWord, Word};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseWarning {
    pub line: usize,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParsedFactorization {
    pub factorization: MonodromyFactorization,
    pub warnings: Vec<ParseWarning>,
}

fn syntax(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Syntax {
        line,
        column,
        message: message.into(),
    }
}

fn relocate(e: Error, line: usize) -> Error {
    match e {
        Error::Syntax {
            column, message, ..
        } => Error::Syntax {
            line,
            column,
            message,
        },
        other => syntax(line, 1, other.to_string()),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Token<'a> {
    Name(&'a str),
    Open,
    Close,
    Power(i64),
}

fn lex(text: &str, line: usize, offset: usize) -> Result<Vec<(usize, Token<'_>)>> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let col = offset + i + 1;
        match bytes[i] {
            c if c.is_ascii_whitespace() => i += 1,
            b'(' => {
                out.push((col, Token::Open));
                i += 1;
            }
            b')' => {
                out.push((col, Token::Close));
                i += 1;
            }
            b'^' => {
                let start = i + 1;
                let mut j = start;
                if j < bytes.len() && bytes[j] == b'-' {
                    j += 1;
                }
                while j < bytes.len() && bytes[j].is_ascii_digit() {
                    j += 1;
                }
                let exp = text[start..j]
                    .parse()
                    .map_err(|_| syntax(line, col, "expected an integer exponent after `^`"))?;
                out.push((col, Token::Power(exp)));
                i = j;
            }
            c if c.is_ascii_alphanumeric() || c == b'_' => {
                let start = i;
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                out.push((offset + start + 1, Token::Name(&text[start..i])));
            }
            c => {
                return Err(syntax(
                    line,
                    col,
                    format!("unexpected character `{}`", c as char),
                ))
            }
        }
    }
    Ok(out)
}

struct WordExpr<'a, 'b> {
    tokens: &'b [(usize, Token<'a>)],
    pos: usize,
    line: usize,
    curves: &'b HashMap<String, VanishingCycle>,
}

impl WordExpr<'_, '_> {
    fn sequence(&mut self, out: &mut Vec<VanishingCycle>) -> Result<()> {
        while let Some((col, tok)) = self.tokens.get(self.pos).cloned() {
            let mut item = Vec::new();
            match tok {
                Token::Name(name) => {
                    self.pos += 1;
                    let c = self.curves.get(name).ok_or_else(|| {
                        syntax(self.line, col, format!("undeclared curve `{name}`"))
                    })?;
                    item.push(c.clone());
                }
                Token::Open => {
                    self.pos += 1;
                    self.sequence(&mut item)?;
                    match self.tokens.get(self.pos) {
                        Some((_, Token::Close)) => self.pos += 1,
                        _ => return Err(syntax(self.line, col, "unclosed `(`")),
                    }
                }
                Token::Close => return Ok(()),
                Token::Power(_) => return Err(syntax(self.line, col, "exponent without a base")),
            }
            let mut reps = 1;
            if let Some((pcol, Token::Power(p))) = self.tokens.get(self.pos).cloned() {
                self.pos += 1;
                reps = usize::try_from(p).map_err(|_| {
                    syntax(
                        self.line,
                        pcol,
                        "negative exponents are not allowed in a factorization",
                    )
                })?;
            }
            for _ in 0..reps {
                out.extend(item.iter().cloned());
            }
        }
        Ok(())
    }
}

fn parse_kind(text: &str, line: usize, column: usize) -> Result<CycleKind> {
    let parts: Vec<&str> = text.split_whitespace().collect();
    match parts.as_slice() {
        ["nonsep"] => Ok(CycleKind::Nonseparating),
        ["sep", h] => h
            .parse()
            .map(CycleKind::Separating)
            .map_err(|_| syntax(line, column, format!("invalid separating type `{h}`"))),
        _ => Err(syntax(
            line,
            column,
            "expected `kind nonsep` or `kind sep <h>`",
        )),
    }
}

fn parse_int<T: std::str::FromStr>(arg: &str, line: usize, column: usize, what: &str) -> Result<T> {
    arg.trim()
        .parse()
        .map_err(|_| syntax(line, column, format!("invalid {what} `{}`", arg.trim())))
}

/// Parses the factorization text format. Cycles whose declared kind
/// disagrees with their homology class are kept and reported as warnings.
pub fn parse_factorization(text: &str) -> Result<ParsedFactorization> {
    let mut genus: Option<u32> = None;
    let mut base: Option<u32> = None;
    let mut curves: HashMap<String, VanishingCycle> = HashMap::new();
    let mut cycles = Vec::new();
    let mut warnings = Vec::new();

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("");
        let trimmed = content.trim_start();
        if trimmed.trim().is_empty() {
            continue;
        }
        let indent = content.len() - trimmed.len();
        let (keyword, rest) = trimmed
            .split_once(char::is_whitespace)
            .unwrap_or((trimmed, ""));
        let rest_col = indent + keyword.len() + 2;

        match keyword.trim() {
            "genus" => {
                if genus.is_some() {
                    return Err(syntax(line, indent + 1, "genus declared twice"));
                }
                let g: u32 = parse_int(rest, line, rest_col, "genus")?;
                if g == 0 {
                    return Err(syntax(line, rest_col, "genus must be at least 1"));
                }
                genus = Some(g);
            }
            "base" => {
                if base.is_some() {
                    return Err(syntax(line, indent + 1, "base declared twice"));
                }
                base = Some(parse_int(rest, line, rest_col, "base genus")?);
            }
            "curve" => {
                let g = genus
                    .ok_or_else(|| syntax(line, indent + 1, "`genus` must come before curves"))?;
                let (name, body) = rest.split_once('=').ok_or_else(|| {
                    syntax(line, rest_col, "expected `curve NAME = <word> kind ...`")
                })?;
                let name = name.trim();
                if name.is_empty() || !name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') {
                    return Err(syntax(
                        line,
                        rest_col,
                        format!("invalid curve name `{name}`"),
                    ));
                }
                if curves.contains_key(name) {
                    return Err(syntax(
                        line,
                        rest_col,
                        format!("curve `{name}` declared twice"),
                    ));
                }
                let body_col = rest_col + rest.find('=').unwrap_or(0) + 1;
                let kind_at = body
                    .match_indices("kind")
                    .map(|(i, _)| i)
                    .filter(|&i| {
                        let before_ok = i == 0 || body.as_bytes()[i - 1].is_ascii_whitespace();
                        let after = body.as_bytes().get(i + 4);
                        before_ok && after.is_none_or(|c| c.is_ascii_whitespace())
                    })
                    .last()
                    .ok_or_else(|| {
                        syntax(line, body_col, "missing `kind nonsep` or `kind sep <h>`")
                    })?;
                let word_text = &body[..kind_at];
                let kind = parse_kind(&body[kind_at + 4..], line, body_col + kind_at)?;
                let free = FreeWord::parse_with(word_text, body_col - 1, |n| resolve_surface(n, g))
                    .map_err(|e| relocate(e, line))?;
                let word = Word::from_free(free, g).map_err(|e| relocate(e, line))?;
                let cycle = VanishingCycle::new(word, kind).map_err(|e| relocate(e, line))?;
                if !cycle.kind_consistent() {
                    warnings.push(ParseWarning {
                        line,
                        message: format!(
                            "curve `{name}` is declared {} but its homology class is {}",
                            cycle.kind,
                            if cycle.word.homology_class().is_zero() {
                                "zero"
                            } else {
                                "nonzero"
                            }
                        ),
                    });
                }
                curves.insert(name.to_string(), cycle);
            }
            "word" => {
                if genus.is_none() {
                    return Err(syntax(line, indent + 1, "`genus` must come before `word`"));
                }
                let tokens = lex(rest, line, rest_col - 1)?;
                let mut expr = WordExpr {
                    tokens: &tokens,
                    pos: 0,
                    line,
                    curves: &curves,
                };
                expr.sequence(&mut cycles)?;
                if let Some((col, _)) = tokens.get(expr.pos) {
                    return Err(syntax(line, *col, "unmatched `)`"));
                }
            }
            other => {
                return Err(syntax(
                    line,
                    indent + 1,
                    format!("unknown declaration `{other}`"),
                ));
            }
        }
    }

    let genus = genus.ok_or_else(|| syntax(1, 1, "missing `genus` declaration"))?;
    Ok(ParsedFactorization {
        factorization: MonodromyFactorization::new(genus, base.unwrap_or(0), cycles)?,
        warnings,
    })
}

/// Prints `f` in the text format; distinct cycles are named `C1, C2, ...`
/// in order of first appearance.
pub fn to_dsl(f: &MonodromyFactorization) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "genus {}", f.fiber_genus());
    let _ = writeln!(out, "base {}", f.base_genus());
    let mut names: Vec<&VanishingCycle> = Vec::new();
    let mut sequence = Vec::new();
    for c in f.cycles() {
        let idx = match names.iter().position(|&d| d == c) {
            Some(i) => i,
            None => {
                names.push(c);
                let _ = writeln!(out, "curve C{} = {} kind {}", names.len(), c.word, c.kind);
                names.len() - 1
            }
        };
        sequence.push(format!("C{}", idx + 1));
    }
    if !sequence.is_empty() {
        let _ = writeln!(out, "word {}", sequence.join(" "));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fibration::{build_bn, matsumoto_factorization};

    pub const MATSUMOTO: &str = "\
# Matsumoto's genus-2 fibration
genus 2
base 0
curve B1 = b1 b2 kind nonsep
curve B2 = a1 b1 a1^-1 b1^-1 kind sep 1
curve B3 = b2 a2 b2^-1 a1 kind nonsep
curve B4 = b2 a2 a1 b1 kind nonsep   # trailing comment

word (B1 B2 B3 B4)^2
";

    #[test]
    fn matsumoto_file() {
        let p = parse_factorization(MATSUMOTO).unwrap();
        assert!(p.warnings.is_empty());
        assert_eq!(p.factorization, matsumoto_factorization());
    }

    #[test]
    fn zeroth_power_is_empty() {
        let p =
            parse_factorization("genus 2\ncurve B1 = b1 b2 kind nonsep\nword (B1)^0\n").unwrap();
        assert!(p.factorization.is_empty());
        assert_eq!(p.factorization.fiber_genus(), 2);
    }

    #[test]
    fn nested_groups_and_multiple_lines() {
        let text = "genus 1\ncurve A = a1 kind nonsep\ncurve B = b1 kind nonsep\nword ((A B)^2 A)^2\nword B\n";
        let f = parse_factorization(text).unwrap().factorization;
        let seq: Vec<String> = f.cycles().iter().map(|c| c.word.to_string()).collect();
        assert_eq!(seq.join(" "), "a1 b1 a1 b1 a1 a1 b1 a1 b1 a1 b1");
    }

    #[test]
    fn kind_inconsistency_is_a_warning() {
        let p = parse_factorization("genus 2\ncurve X = a1 kind sep 1\nword X\n").unwrap();
        assert_eq!(p.warnings.len(), 1);
        assert_eq!(p.warnings[0].line, 2);
        assert!(p.warnings[0].message.contains("sep 1"));
        assert_eq!(p.factorization.len(), 1);
    }

    #[test]
    fn errors_carry_positions() {
        let cases = [
            ("genus 2\nword B1\n", 2, 6),
            ("genus 2\ncurve X = a1 a3 kind nonsep\n", 2, 14),
            ("curve X = a1 kind nonsep\n", 1, 1),
            ("genus 2\ncurve X = a1\n", 2, 10),
            ("genus 2\nfoo 3\n", 2, 1),
            ("genus 2\ncurve X = a1 kind nonsep\nword (X\n", 3, 6),
            ("genus 2\ncurve X = a1 kind nonsep\nword X)\n", 3, 7),
            ("genus 2\ncurve X = a1 kind nonsep\nword X^-1\n", 3, 7),
            ("genus x\n", 1, 7),
            ("genus 2\ncurve X = a1 kind sep 2\n", 2, 1),
        ];
        for (text, line, column) in cases {
            match parse_factorization(text) {
                Err(Error::Syntax {
                    line: l,
                    column: c,
                    message,
                }) => {
                    assert_eq!((l, c), (line, column), "{text:?}: {message}")
                }
                other => panic!("{text:?}: {other:?}"),
            }
        }
        assert!(parse_factorization("").is_err());
        assert!(parse_factorization(
            "genus 2\ncurve X = a1 kind nonsep\ncurve X = b1 kind nonsep\n"
        )
        .is_err());
    }

    #[test]
    fn builtins_round_trip() {
        let mut all = vec![
            matsumoto_factorization(),
            MonodromyFactorization::empty(2).unwrap(),
        ];
        all.extend((1..=5).map(|n| build_bn(n).unwrap()));
        for f in all {
            let text = to_dsl(&f);
            let back = parse_factorization(&text).unwrap();
            assert!(back.warnings.is_empty());
            assert_eq!(back.factorization, f, "{text}");
        }
    }
}
