//! The line-oriented ray file format.
//!
//! ```text
//! # comment
//! dim 3
//! ray a  1 0  0 0  0 0        # id, then re/im pairs
//! ray b  0 0  1/2 0  0 -1/2   # decimal or p/q literals
//! ctx a b c                   # optional explicit context
//! span ab a b                 # optional named span of rays
//! ```
//!
//! `dim` must be the first non-comment line. Rays need not be normalized;
//! the ids of rays that were rescaled are collected in
//! [`RayFile::normalized`].

use crate::error::{Error, Result};
use crate::hilbert::{StateVector, Tolerance, C64};

/// A labeled unit ray.
#[derive(Debug, Clone, PartialEq)]
pub struct Ray {
    pub id: String,
    pub vector: StateVector,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DeclaredContext {
    pub line: usize,
    pub rays: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct NamedSpan {
    pub line: usize,
    pub id: String,
    pub rays: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RayFile {
    pub dim: usize,
    pub rays: Vec<Ray>,
    /// Source line of each ray.
    pub ray_lines: Vec<usize>,
    pub contexts: Vec<DeclaredContext>,
    pub spans: Vec<NamedSpan>,
    pub normalized: Vec<String>,
}

impl RayFile {
    pub fn ray_index(&self, id: &str) -> Option<usize> {
        self.rays.iter().position(|r| r.id == id)
    }
}

/// A decimal or `p/q` literal.
pub fn parse_literal(token: &str) -> Option<f64> {
    let value = match token.split_once('/') {
        Some((p, q)) => {
            let p: i64 = p.parse().ok()?;
            let q: i64 = q.parse().ok()?;
            if q == 0 {
                return None;
            }
            p as f64 / q as f64
        }
        None => {
            if !token.starts_with(|c: char| c.is_ascii_digit() || matches!(c, '-' | '+' | '.')) {
                return None;
            }
            token.parse().ok()?
        }
    };
    value.is_finite().then_some(value)
}

fn malformed(line: usize, message: impl Into<String>) -> Error {
    Error::MalformedLine {
        line,
        message: message.into(),
    }
}

fn parse_numbers<'a>(tokens: impl Iterator<Item = &'a str>, line: usize) -> Result<Vec<f64>> {
    tokens
        .map(|t| parse_literal(t).ok_or_else(|| malformed(line, format!("invalid number `{t}`"))))
        .collect()
}

/// Components for a state or inline vector: `d` reals, or `2d` numbers
/// read as re/im pairs. Commas and whitespace both separate.
pub fn parse_components(text: &str, dim: usize) -> Result<(StateVector, f64)> {
    let tokens: Vec<&str> = text
        .split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .collect();
    let mut numbers = Vec::with_capacity(tokens.len());
    for t in &tokens {
        numbers.push(parse_literal(t).ok_or_else(|| Error::InvalidArgument {
            token: t.to_string(),
            message: "not a decimal or p/q literal".into(),
        })?);
    }
    let components: Vec<C64> = if numbers.len() == dim {
        numbers.iter().map(|&x| C64::new(x, 0.0)).collect()
    } else if numbers.len() == 2 * dim {
        numbers.chunks(2).map(|p| C64::new(p[0], p[1])).collect()
    } else {
        return Err(Error::InvalidArgument {
            token: text.to_string(),
            message: format!(
                "expected {dim} real or {} re/im numbers, found {}",
                2 * dim,
                numbers.len()
            ),
        });
    };
    StateVector::with_norm(components).map_err(|e| Error::InvalidArgument {
        token: text.to_string(),
        message: e.to_string(),
    })
}

pub fn parse(text: &str, tol: Tolerance) -> Result<RayFile> {
    let mut dim: Option<usize> = None;
    let mut file = RayFile {
        dim: 0,
        rays: Vec::new(),
        ray_lines: Vec::new(),
        contexts: Vec::new(),
        spans: Vec::new(),
        normalized: Vec::new(),
    };
    let mut last_line = 0;

    for (index, raw) in text.lines().enumerate() {
        let line = index + 1;
        last_line = line;
        let content = raw.split('#').next().unwrap_or("");
        let mut tokens = content.split_whitespace();
        let Some(keyword) = tokens.next() else {
            continue;
        };

        let Some(d) = dim else {
            if keyword != "dim" {
                return Err(malformed(
                    line,
                    format!("expected `dim <d>` before `{keyword}`"),
                ));
            }
            let value = tokens
                .next()
                .ok_or_else(|| malformed(line, "missing dimension"))?;
            let d: usize = value
                .parse()
                .ok()
                .filter(|&d| d > 0)
                .ok_or_else(|| malformed(line, format!("invalid dimension `{value}`")))?;
            if let Some(extra) = tokens.next() {
                return Err(malformed(line, format!("unexpected token `{extra}`")));
            }
            dim = Some(d);
            file.dim = d;
            continue;
        };

        match keyword {
            "dim" => return Err(malformed(line, "duplicate `dim` line")),
            "ray" => {
                let id = tokens
                    .next()
                    .ok_or_else(|| malformed(line, "missing ray id"))?;
                let numbers = parse_numbers(tokens, line)?;
                if numbers.len() != 2 * d {
                    return Err(malformed(
                        line,
                        format!(
                            "ray `{id}` has {} numbers, expected {} (re/im pairs)",
                            numbers.len(),
                            2 * d
                        ),
                    ));
                }
                let components = numbers.chunks(2).map(|p| C64::new(p[0], p[1])).collect();
                let (vector, norm) = StateVector::with_norm(components)
                    .map_err(|_| malformed(line, format!("ray `{id}` is the zero vector")))?;
                for existing in &file.rays {
                    if existing.id == id {
                        return Err(Error::DuplicateRay {
                            line,
                            id: id.into(),
                            existing: existing.id.clone(),
                        });
                    }
                    if existing.vector.inner(&vector)?.norm() >= 1.0 - tol.eps() {
                        return Err(Error::DuplicateRay {
                            line,
                            id: id.into(),
                            existing: existing.id.clone(),
                        });
                    }
                }
                if (norm - 1.0).abs() > tol.eps() {
                    file.normalized.push(id.to_string());
                }
                file.rays.push(Ray {
                    id: id.to_string(),
                    vector,
                });
                file.ray_lines.push(line);
            }
            "ctx" | "span" => {
                let span_id = if keyword == "span" {
                    Some(
                        tokens
                            .next()
                            .ok_or_else(|| malformed(line, "missing span id"))?,
                    )
                } else {
                    None
                };
                let mut members = Vec::new();
                for t in tokens {
                    let i = file
                        .ray_index(t)
                        .ok_or_else(|| malformed(line, format!("unknown ray `{t}`")))?;
                    if members.contains(&i) {
                        return Err(malformed(line, format!("ray `{t}` listed twice")));
                    }
                    members.push(i);
                }
                match span_id {
                    Some(id) => {
                        if members.is_empty() {
                            return Err(malformed(line, format!("span `{id}` lists no rays")));
                        }
                        if file.ray_index(id).is_some() || file.spans.iter().any(|s| s.id == id) {
                            return Err(malformed(line, format!("span id `{id}` already in use")));
                        }
                        file.spans.push(NamedSpan {
                            line,
                            id: id.to_string(),
                            rays: members,
                        });
                    }
                    None => {
                        if members.len() != d {
                            return Err(malformed(
                                line,
                                format!("context has {} rays, expected {d}", members.len()),
                            ));
                        }
                        for (k, &a) in members.iter().enumerate() {
                            for &b in &members[k + 1..] {
                                if file.rays[a].vector.inner(&file.rays[b].vector)?.norm()
                                    > tol.eps()
                                {
                                    return Err(Error::NonOrthogonalContext {
                                        line,
                                        first: file.rays[a].id.clone(),
                                        second: file.rays[b].id.clone(),
                                    });
                                }
                            }
                        }
                        file.contexts.push(DeclaredContext {
                            line,
                            rays: members,
                        });
                    }
                }
            }
            other => return Err(malformed(line, format!("unknown directive `{other}`"))),
        }
    }

    if dim.is_none() {
        return Err(malformed(last_line.max(1), "missing `dim <d>` line"));
    }
    Ok(file)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tol() -> Tolerance {
        Tolerance::default()
    }

    #[test]
    fn literals() {
        assert_eq!(parse_literal("1/2"), Some(0.5));
        assert_eq!(parse_literal("-3/4"), Some(-0.75));
        assert_eq!(parse_literal("1.5e-1"), Some(0.15));
        assert_eq!(parse_literal("1/0"), None);
        assert_eq!(parse_literal("inf"), None);
        assert_eq!(parse_literal("nan"), None);
        assert_eq!(parse_literal("x"), None);
    }

    #[test]
    fn qubit_file() {
        let f = parse(include_str!("../data/qubit.rays"), tol()).unwrap();
        assert_eq!(f.dim, 2);
        assert_eq!(f.rays.len(), 4);
        assert_eq!(f.contexts.len(), 2);
        assert_eq!(f.normalized, vec!["Xp", "Xm"]);
    }

    #[test]
    fn rejects_missing_dim() {
        assert!(matches!(
            parse("", tol()),
            Err(Error::MalformedLine { line: 1, .. })
        ));
        assert!(matches!(
            parse("# only a comment\n", tol()),
            Err(Error::MalformedLine { .. })
        ));
        assert!(matches!(
            parse("ray a 1 0\n", tol()),
            Err(Error::MalformedLine { line: 1, .. })
        ));
    }

    #[test]
    fn rejects_bad_rays() {
        let e = parse("dim 2\nray a 1 0 0\n", tol());
        assert!(matches!(e, Err(Error::MalformedLine { line: 2, .. })));
        let e = parse("dim 2\nray a 1 0 zz 0\n", tol());
        assert!(
            matches!(e, Err(Error::MalformedLine { line: 2, ref message }) if message.contains("zz"))
        );
        let e = parse("dim 2\nray a 0 0 0 0\n", tol());
        assert!(matches!(e, Err(Error::MalformedLine { line: 2, .. })));
        let e = parse("dim 2\nray a 1 0 0 0\nray b 0 2 0 0\n", tol());
        assert!(matches!(e, Err(Error::DuplicateRay { line: 3, .. })));
        let e = parse("dim 2\nray a 1 0 0 0\nray a 0 0 1 0\n", tol());
        assert!(matches!(e, Err(Error::DuplicateRay { line: 3, .. })));
    }

    #[test]
    fn rejects_non_orthogonal_context() {
        let text = "dim 3\nray a 1 0 0 0 0 0\nray b 0 0 1 0 0 0\nray c 1 0 1 0 0 0\nctx a b c\n";
        assert!(matches!(
            parse(text, tol()),
            Err(Error::NonOrthogonalContext { line: 5, ref first, ref second }) if first == "a" && second == "c"
        ));
    }

    #[test]
    fn spans() {
        let text = "dim 3\nray a 1 0 0 0 0 0\nray b 0 0 1 0 0 0\nspan ab a b\n";
        let f = parse(text, tol()).unwrap();
        assert_eq!(f.spans[0].rays, vec![0, 1]);
        assert!(parse("dim 3\nray a 1 0 0 0 0 0\nspan a a\n", tol()).is_err());
    }

    #[test]
    fn components() {
        let (v, norm) = parse_components("1, 1", 2).unwrap();
        assert!((norm - 2f64.sqrt()).abs() < 1e-15);
        assert_eq!(v.dim(), 2);
        let (v, _) = parse_components("0 1 1 0", 2).unwrap();
        assert!((v.amplitudes()[0].im - 0.5f64.sqrt()).abs() < 1e-15);
        assert!(parse_components("1 2 3", 2).is_err());
        assert!(parse_components("0 0", 2).is_err());
    }
}
