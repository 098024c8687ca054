//! Line-oriented `.curve` files.
//!
//! ```text
//! # comments run to the end of the line
//! reference Z(x)
//! branch C1 = x^(3/2) + x^(7/4)
//! support
//!   (0,5) 1
//!   (3,3) -4
//! ```
//!
//! A `support` header opens a block of `(a,b) coeff` lines that lasts until
//! the next keyword.

use std::collections::BTreeSet;

use lotus_core::lattice::parse_rat;
use lotus_core::polygon::{Support, SupportPoint};
use lotus_core::{Branch, PhasedRational};

use crate::CliError;

#[derive(Clone, Debug, Default, PartialEq)]
pub struct CurveFile {
    pub branches: Vec<Branch>,
    pub support: Option<Support>,
}

impl CurveFile {
    pub fn branch(&self, label: &str) -> Result<&Branch, CliError> {
        self.branches
            .iter()
            .find(|b| b.label == label)
            .ok_or_else(|| CliError::Domain(format!("no branch labelled `{label}`")))
    }

    pub fn require_branches(&self) -> Result<&[Branch], CliError> {
        if self.branches.is_empty() {
            return Err(CliError::Domain("the input declares no branch".into()));
        }
        Ok(&self.branches)
    }
}

fn parse_err(line: usize, col: usize, msg: impl Into<String>) -> CliError {
    CliError::Parse { line, col, msg: msg.into() }
}

fn valid_label(s: &str) -> bool {
    !s.is_empty() && s.chars().all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '\'')
}

/// Strips a trailing comment, keeping the byte offset of the content.
fn content(line: &str) -> &str {
    line.split('#').next().unwrap_or("")
}

fn parse_coefficient(text: &str, line: usize, col: usize) -> Result<PhasedRational, CliError> {
    let t = text.trim();
    let c = if let Some(inner) = t.strip_prefix('(').and_then(|r| r.strip_suffix(')')) {
        let (m, p) = inner.split_once('@').ok_or_else(|| parse_err(line, col, "expected `(m@phase)`"))?;
        let m = parse_rat(m).map_err(|_| parse_err(line, col, format!("invalid magnitude `{m}`")))?;
        let p = parse_rat(p).map_err(|_| parse_err(line, col, format!("invalid phase `{p}`")))?;
        PhasedRational::new(m, p).map_err(|e| parse_err(line, col, e.to_string()))?
    } else {
        PhasedRational::from_rational(
            parse_rat(t).map_err(|_| parse_err(line, col, format!("invalid coefficient `{t}`")))?,
        )
    };
    if c.is_zero() {
        return Err(parse_err(line, col, "zero coefficient"));
    }
    Ok(c)
}

fn parse_support_line(text: &str, line: usize) -> Result<SupportPoint, CliError> {
    let t = text.trim_start();
    let col = text.len() - t.len() + 1;
    let close = t.find(')').ok_or_else(|| parse_err(line, col, "expected `(a,b) coeff`"))?;
    let inner = &t[1..close];
    let (a, b) = inner.split_once(',').ok_or_else(|| parse_err(line, col, "expected `(a,b)`"))?;
    let a = parse_rat(a).map_err(|_| parse_err(line, col, format!("invalid exponent `{}`", a.trim())))?;
    let b = parse_rat(b).map_err(|_| parse_err(line, col, format!("invalid exponent `{}`", b.trim())))?;
    let rest = &t[close + 1..];
    if rest.trim().is_empty() {
        return Err(parse_err(line, col + close + 1, "missing coefficient"));
    }
    let coeff = parse_coefficient(rest, line, col + close + 1)?;
    Ok(SupportPoint { a, b, coeff: Some(coeff) })
}

pub fn parse_curve(text: &str) -> Result<CurveFile, CliError> {
    let mut out = CurveFile::default();
    let mut labels = BTreeSet::new();
    let mut support: Option<Vec<(usize, SupportPoint)>> = None;
    let mut in_support = false;
    for (k, raw) in text.lines().enumerate() {
        let line = k + 1;
        let body = content(raw);
        let trimmed = body.trim();
        if trimmed.is_empty() {
            continue;
        }
        let indent = body.len() - body.trim_start().len();
        let (word, rest) = trimmed.split_once(char::is_whitespace).unwrap_or((trimmed, ""));
        match word {
            "reference" => {
                in_support = false;
                let r: String = rest.chars().filter(|c| !c.is_whitespace()).collect();
                if r != "Z(x)" {
                    return Err(parse_err(
                        line,
                        indent + 11,
                        format!("the reference branch must be Z(x), found `{}`", rest.trim()),
                    ));
                }
            }
            "branch" => {
                in_support = false;
                let (label, series) = rest
                    .split_once('=')
                    .ok_or_else(|| parse_err(line, indent + 1, "expected `branch <label> = <series>`"))?;
                let label = label.trim();
                if !valid_label(label) {
                    return Err(parse_err(line, indent + 8, format!("invalid label `{label}`")));
                }
                if !labels.insert(label.to_string()) {
                    return Err(CliError::Domain(format!("line {line}: label `{label}` used twice")));
                }
                let offset = body.find('=').expect("split on `=`") + 1;
                let b = Branch::parse(label, series).map_err(|e| match e {
                    lotus_core::Error::Parse { pos, msg } => parse_err(line, offset + pos + 1, msg),
                    other => CliError::from(other),
                })?;
                out.branches.push(b);
            }
            "support" => {
                if !rest.trim().is_empty() {
                    return Err(parse_err(line, indent + 9, "unexpected text after `support`"));
                }
                if support.is_some() {
                    return Err(parse_err(line, indent + 1, "second `support` block"));
                }
                support = Some(Vec::new());
                in_support = true;
            }
            _ if in_support && trimmed.starts_with('(') => {
                let p = parse_support_line(body, line)?;
                support.as_mut().expect("inside a block").push((line, p));
            }
            _ => return Err(parse_err(line, indent + 1, format!("unexpected `{word}`"))),
        }
    }
    if let Some(points) = support {
        let mut seen = BTreeSet::new();
        for (line, p) in &points {
            if !seen.insert((p.a.clone(), p.b.clone())) {
                return Err(parse_err(*line, 1, "repeated exponent in the support"));
            }
        }
        out.support = Some(Support::new(points.into_iter().map(|(_, p)| p))?);
    }
    Ok(out)
}
