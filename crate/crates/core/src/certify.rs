//! Certificates: machine-checkable lists of identities and witnesses.
//!
//! `.cert` files are line oriented, `#` starts a comment:
//!
//! ```text
//! certificate grigorchuk_nea
//! group grigorchuk
//! normal k = (a b)^2
//! trivial a a
//! equal b = c d
//! coords c a => (a, d) (1 2)
//! in-level-stab (a b)^2 @ 1
//! supported-only-at (a b a d)^2 @ 2
//! transitive 7
//! projection (a b)^2 @ 1 => c a
//! member (a b a d)^2 = k d^-1 k^-1 d
//! distinct-positive-words a, b ; 10 => 2046
//! ```
//!
//! `member W = E` holds when `E` expands to `W` and `E` with every normal
//! generator deleted is trivial; then `W` maps to the identity modulo the
//! normal closure, so it lies in it. A normal generator may appear in `E` by
//! name, by its defining expression, or as a power of that expression.

use std::collections::{HashMap, HashSet};
use std::sync::Arc;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::Serialize;

use crate::ball::{ball_sizes_pairwise, enumerate_ball, DEFAULT_BALL_CAP};
use crate::decide::{canonical_key, equals, is_trivial, CanonicalKey};
use crate::element::{Element, Letter, Vertex, Word};
use crate::error::{Error, Result};
use crate::group::GroupDef;
use crate::groupfile::parse_cycles;
use crate::perm::Perm;
use crate::subgroups::{is_rist_witness, GenSet, LevelAction};
use crate::word::{generator_resolver, parse_expr_at, Expr};

#[derive(Clone, Debug, PartialEq)]
pub enum Assertion {
    Equal(Expr, Expr),
    Coords {
        word: Expr,
        slots: Vec<Expr>,
        /// Cycle text, resolved against the group's degree when run.
        perm: String,
    },
    Trivial(Expr),
    InLevelStab(Expr, usize),
    SupportedOnlyAt(Expr, String),
    Transitive {
        depth: usize,
        gens: Option<Vec<Expr>>,
    },
    ProjectionWitness {
        stab: Expr,
        vertex: String,
        target: Expr,
    },
    MemberByExpression(Expr, Expr),
    DistinctPositiveWords {
        gens: Vec<Expr>,
        max_len: usize,
        expected: usize,
    },
}

impl Assertion {
    pub fn kind(&self) -> &'static str {
        match self {
            Assertion::Equal(..) => "EQUAL",
            Assertion::Coords { .. } => "COORDS",
            Assertion::Trivial(_) => "TRIVIAL",
            Assertion::InLevelStab(..) => "IN_LEVEL_STAB",
            Assertion::SupportedOnlyAt(..) => "SUPPORTED_ONLY_AT",
            Assertion::Transitive { .. } => "TRANSITIVE",
            Assertion::ProjectionWitness { .. } => "PROJECTION_WITNESS",
            Assertion::MemberByExpression(..) => "MEMBER_BY_EXPRESSION",
            Assertion::DistinctPositiveWords { .. } => "DISTINCT_POSITIVE_WORDS",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CertLine {
    pub line: usize,
    pub text: String,
    pub assertion: Assertion,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Certificate {
    pub name: String,
    pub group: String,
    pub normals: Vec<(String, Expr)>,
    pub assertions: Vec<CertLine>,
}

fn strip_comment(line: &str) -> &str {
    match line.find('#') {
        Some(i) => &line[..i],
        None => line,
    }
}

/// Splits at the first top-level (outside brackets) occurrence of `sep`.
fn split_top<'a>(text: &'a str, sep: &str) -> Option<(&'a str, &'a str)> {
    let mut depth = 0i32;
    let bytes = text.as_bytes();
    let mut i = 0;
    while i < bytes.len() {
        match bytes[i] {
            b'(' | b'[' => depth += 1,
            b')' | b']' => depth -= 1,
            _ => {
                if depth == 0 && text[i..].starts_with(sep) {
                    return Some((&text[..i], &text[i + sep.len()..]));
                }
            }
        }
        i += 1;
    }
    None
}

fn split_all_top<'a>(text: &'a str, sep: &str) -> Vec<&'a str> {
    let mut out = Vec::new();
    let mut rest = text;
    while let Some((a, b)) = split_top(rest, sep) {
        out.push(a);
        rest = b;
    }
    out.push(rest);
    out
}

struct LineCtx<'a> {
    line: usize,
    full: &'a str,
}

impl LineCtx<'_> {
    fn col_of(&self, part: &str) -> usize {
        // part is a subslice of full
        (part.as_ptr() as usize).saturating_sub(self.full.as_ptr() as usize)
    }

    fn expr(&self, part: &str) -> Result<Expr> {
        let offset = self.col_of(part);
        parse_expr_at(part, self.line).map_err(|e| match e {
            Error::Parse {
                line,
                column,
                message,
            } => Error::Parse {
                line,
                column: column + offset,
                message,
            },
            other => other,
        })
    }

    fn err(&self, part: &str, msg: impl Into<String>) -> Error {
        Error::parse(self.line, self.col_of(part) + 1, msg)
    }

    fn split<'b>(&self, text: &'b str, sep: &str, what: &str) -> Result<(&'b str, &'b str)> {
        split_top(text, sep).ok_or_else(|| self.err(text, format!("expected `{sep}` {what}")))
    }

    fn number(&self, part: &str) -> Result<usize> {
        part.trim()
            .parse()
            .map_err(|_| self.err(part, format!("expected a number, found `{}`", part.trim())))
    }
}

pub fn parse_certificate(text: &str) -> Result<Certificate> {
    let mut name = None;
    let mut group = None;
    let mut normals = Vec::new();
    let mut assertions = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let body = strip_comment(raw);
        let trimmed = body.trim();
        if trimmed.is_empty() {
            continue;
        }
        let ctx = LineCtx { line, full: raw };
        let (keyword, rest) = match trimmed.find(char::is_whitespace) {
            Some(i) => (&trimmed[..i], trimmed[i..].trim()),
            None => (trimmed, ""),
        };
        let assertion = match keyword {
            "certificate" => {
                name = Some(rest.to_string());
                continue;
            }
            "group" => {
                group = Some(rest.to_string());
                continue;
            }
            "normal" => {
                let (n, w) = ctx.split(rest, "=", "in `normal NAME = WORD`")?;
                normals.push((n.trim().to_string(), ctx.expr(w)?));
                continue;
            }
            "trivial" => Assertion::Trivial(ctx.expr(rest)?),
            "equal" => {
                let (a, b) = ctx.split(rest, "=", "between the two words")?;
                Assertion::Equal(ctx.expr(a)?, ctx.expr(b)?)
            }
            "coords" => {
                let (w, c) = ctx.split(rest, "=>", "before the coordinates")?;
                let c = c.trim();
                if !c.starts_with('(') {
                    return Err(ctx.err(c, "expected `(` opening the slot tuple"));
                }
                let mut depth = 0;
                let mut close = None;
                for (i, ch) in c.char_indices() {
                    match ch {
                        '(' | '[' => depth += 1,
                        ')' | ']' => {
                            depth -= 1;
                            if depth == 0 {
                                close = Some(i);
                                break;
                            }
                        }
                        _ => {}
                    }
                }
                let close = close.ok_or_else(|| ctx.err(c, "unterminated slot tuple"))?;
                let slots = split_all_top(&c[1..close], ",")
                    .into_iter()
                    .map(|s| ctx.expr(s))
                    .collect::<Result<Vec<_>>>()?;
                Assertion::Coords {
                    word: ctx.expr(w)?,
                    slots,
                    perm: c[close + 1..].trim().to_string(),
                }
            }
            "in-level-stab" => {
                let (w, n) = ctx.split(rest, "@", "before the level")?;
                Assertion::InLevelStab(ctx.expr(w)?, ctx.number(n)?)
            }
            "supported-only-at" => {
                let (w, v) = ctx.split(rest, "@", "before the vertex")?;
                Assertion::SupportedOnlyAt(ctx.expr(w)?, v.trim().to_string())
            }
            "transitive" => match split_top(rest, ":") {
                Some((n, gens)) => Assertion::Transitive {
                    depth: ctx.number(n)?,
                    gens: Some(
                        split_all_top(gens, ",")
                            .into_iter()
                            .map(|g| ctx.expr(g))
                            .collect::<Result<_>>()?,
                    ),
                },
                None => Assertion::Transitive {
                    depth: ctx.number(rest)?,
                    gens: None,
                },
            },
            "projection" => {
                let (w, rhs) = ctx.split(rest, "@", "before the vertex")?;
                let (v, t) = ctx.split(rhs, "=>", "before the target")?;
                Assertion::ProjectionWitness {
                    stab: ctx.expr(w)?,
                    vertex: v.trim().to_string(),
                    target: ctx.expr(t)?,
                }
            }
            "member" => {
                let (w, e) = ctx.split(rest, "=", "before the expression")?;
                Assertion::MemberByExpression(ctx.expr(w)?, ctx.expr(e)?)
            }
            "distinct-positive-words" => {
                let (gens, rhs) = ctx.split(rest, ";", "after the generators")?;
                let (len, count) = ctx.split(rhs, "=>", "before the expected count")?;
                Assertion::DistinctPositiveWords {
                    gens: split_all_top(gens, ",")
                        .into_iter()
                        .map(|g| ctx.expr(g))
                        .collect::<Result<_>>()?,
                    max_len: ctx.number(len)?,
                    expected: ctx.number(count)?,
                }
            }
            other => {
                return Err(Error::parse(
                    line,
                    1,
                    format!("unknown assertion `{other}`"),
                ));
            }
        };
        assertions.push(CertLine {
            line,
            text: trimmed.to_string(),
            assertion,
        });
    }
    Ok(Certificate {
        name: name.unwrap_or_default(),
        group: group.ok_or_else(|| Error::parse(1, 1, "missing `group NAME` line"))?,
        normals,
        assertions,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct AssertionResult {
    pub line: usize,
    pub kind: &'static str,
    pub text: String,
    pub passed: bool,
    /// Computed values, present on failure.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub certificate: String,
    pub group: String,
    pub passed: bool,
    pub results: Vec<AssertionResult>,
    #[serde(skip)]
    pub elapsed: Duration,
}

impl Report {
    pub fn failures(&self) -> impl Iterator<Item = &AssertionResult> {
        self.results.iter().filter(|r| !r.passed)
    }
}

/// Names of the certificate resolved against a group.
struct Scope<'a> {
    group: &'a Arc<GroupDef>,
    normals: HashMap<String, Word>,
    normal_defs: Vec<&'a Expr>,
}

/// Structural equality ignoring source positions.
fn same_shape(a: &Expr, b: &Expr) -> bool {
    match (a, b) {
        (Expr::Identity, Expr::Identity) => true,
        (Expr::Name { name: x, .. }, Expr::Name { name: y, .. }) => x == y,
        (Expr::Product(xs), Expr::Product(ys)) => {
            xs.len() == ys.len() && xs.iter().zip(ys).all(|(x, y)| same_shape(x, y))
        }
        (Expr::Power(x, n), Expr::Power(y, m)) => n == m && same_shape(x, y),
        (Expr::Conjugate(x1, y1), Expr::Conjugate(x2, y2))
        | (Expr::Commutator(x1, y1), Expr::Commutator(x2, y2)) => {
            same_shape(x1, x2) && same_shape(y1, y2)
        }
        _ => false,
    }
}

/// Replaces every occurrence of a normal generator (by name, by its defining
/// expression, or as a power of it) with the identity.
fn strip_normals(e: &Expr, defs: &[&Expr]) -> Expr {
    if defs.iter().any(|d| same_shape(d, e)) {
        return Expr::Identity;
    }
    match e {
        Expr::Power(base, n) => {
            let is_power_of_def = defs.iter().any(|d| match d {
                Expr::Power(db, m) => *m != 0 && n % m == 0 && same_shape(db, base),
                _ => false,
            });
            if is_power_of_def {
                Expr::Identity
            } else {
                Expr::Power(Box::new(strip_normals(base, defs)), *n)
            }
        }
        Expr::Product(fs) => Expr::Product(fs.iter().map(|f| strip_normals(f, defs)).collect()),
        Expr::Conjugate(x, y) => Expr::Conjugate(
            Box::new(strip_normals(x, defs)),
            Box::new(strip_normals(y, defs)),
        ),
        Expr::Commutator(x, y) => Expr::Commutator(
            Box::new(strip_normals(x, defs)),
            Box::new(strip_normals(y, defs)),
        ),
        other => other.clone(),
    }
}

impl Scope<'_> {
    /// Normal generator names may be used anywhere a word is expected.
    fn word(&self, e: &Expr) -> Result<Element> {
        self.with_normals(e, false)
    }

    fn with_normals(&self, e: &Expr, delete: bool) -> Result<Element> {
        let base = generator_resolver(self.group);
        let resolve = |name: &str| -> Option<Word> {
            match self.normals.get(name) {
                Some(_) if delete => Some(Vec::new()),
                Some(w) => Some(w.clone()),
                None => base(name),
            }
        };
        let w = if delete {
            strip_normals(e, &self.normal_defs).expand(&resolve)?
        } else {
            e.expand(&resolve)?
        };
        Ok(Element::from_letters(self.group, w))
    }

    fn vertex(&self, text: &str) -> Result<Vertex> {
        Vertex::parse(text, self.group.degree())
    }
}

fn outcome(passed: bool, detail: impl FnOnce() -> String) -> (bool, Option<String>) {
    if passed {
        (true, None)
    } else {
        (false, Some(detail()))
    }
}

fn evaluate(scope: &Scope, a: &Assertion) -> Result<(bool, Option<String>)> {
    Ok(match a {
        Assertion::Trivial(w) => {
            let g = scope.word(w)?;
            outcome(is_trivial(&g), || {
                format!("{g} is nontrivial; coords {}", g.coords())
            })
        }
        Assertion::Equal(x, y) => {
            let (g, h) = (scope.word(x)?, scope.word(y)?);
            outcome(equals(&g, &h)?, || {
                format!(
                    "{g} has coords {}, {h} has coords {}",
                    g.coords(),
                    h.coords()
                )
            })
        }
        Assertion::Coords { word, slots, perm } => {
            let g = scope.word(word)?;
            let d = scope.group.degree();
            let expected_perm: Perm = parse_cycles(perm, d, 0)?;
            let expected = slots
                .iter()
                .map(|s| scope.word(s))
                .collect::<Result<Vec<_>>>()?;
            let c = g.coords();
            let ok = expected.len() == d
                && c.perm == expected_perm
                && c.slots
                    .iter()
                    .zip(&expected)
                    .try_fold(true, |acc, (x, y)| Ok::<_, Error>(acc && equals(x, y)?))?;
            outcome(ok, || format!("computed coords {c}"))
        }
        Assertion::InLevelStab(w, n) => {
            let g = scope.word(w)?;
            let p = LevelAction::new(scope.group, *n).word_perm(g.letters());
            let moved = p.iter().enumerate().find(|(i, &x)| *i as u32 != x);
            outcome(moved.is_none(), || {
                let (i, &x) = moved.unwrap();
                format!(
                    "{g} moves {} to {}",
                    Vertex::from_index(i, *n, scope.group.degree()),
                    Vertex::from_index(x as usize, *n, scope.group.degree())
                )
            })
        }
        Assertion::SupportedOnlyAt(w, v) => {
            let g = scope.word(w)?;
            let v = scope.vertex(v)?;
            outcome(is_rist_witness(&g, &v), || {
                let p = crate::decide::portrait(&g, v.len());
                let leaves: Vec<String> = p
                    .leaves()
                    .iter()
                    .map(|(u, e)| format!("{u}: {e}"))
                    .collect();
                format!("sections on level {}: {}", v.len(), leaves.join(", "))
            })
        }
        Assertion::Transitive { depth, gens } => {
            let s = match gens {
                None => GenSet::generators(scope.group),
                Some(gs) => GenSet::from_elements(
                    gs.iter()
                        .map(|g| scope.word(g))
                        .collect::<Result<Vec<_>>>()?,
                )?,
            };
            let table = crate::subgroups::orbits(&s, *depth);
            let counts = table.counts();
            outcome(counts.iter().all(|&c| c == 1), || {
                format!("orbit counts {counts:?}")
            })
        }
        Assertion::ProjectionWitness {
            stab,
            vertex,
            target,
        } => {
            let g = scope.word(stab)?;
            let v = scope.vertex(vertex)?;
            let t = scope.word(target)?;
            let image = g.act(&v)?;
            if image != v {
                (false, Some(format!("{g} moves {v} to {image}")))
            } else {
                let s = g.section(&v)?;
                outcome(equals(&s, &t)?, || format!("section at {v} is {s}"))
            }
        }
        Assertion::MemberByExpression(w, e) => {
            let g = scope.word(w)?;
            let expansion = scope.with_normals(e, false)?;
            let residue = scope.with_normals(e, true)?;
            if !is_trivial(&residue) {
                (
                    false,
                    Some(format!(
                        "residue {residue} is nontrivial after deleting the normal generators"
                    )),
                )
            } else {
                outcome(equals(&g, &expansion)?, || {
                    format!("expansion {expansion} differs from {g}")
                })
            }
        }
        Assertion::DistinctPositiveWords {
            gens,
            max_len,
            expected,
        } => {
            let s = GenSet::from_elements(
                gens.iter()
                    .map(|g| scope.word(g))
                    .collect::<Result<Vec<_>>>()?,
            )?;
            let r = free_semigroup_check(&s, *max_len);
            outcome(
                r.collision.is_none() && r.distinct == *expected,
                || match &r.collision {
                    Some((x, y)) => format!("collision: {x} = {y}; {} distinct", r.distinct),
                    None => format!("{} distinct words, expected {expected}", r.distinct),
                },
            )
        }
    })
}

/// Evaluates every assertion; the report passes iff all assertions pass.
pub fn run_suite(cert: &Certificate, group: &Arc<GroupDef>) -> Result<Report> {
    if cert.group != group.name() {
        return Err(Error::UnknownGroup(cert.group.clone()));
    }
    let start = Instant::now();
    let mut normals = HashMap::new();
    for (name, expr) in &cert.normals {
        if group.state_index(name).is_some() {
            return Err(Error::parse(
                0,
                0,
                format!("normal generator `{name}` shadows a state"),
            ));
        }
        normals.insert(name.clone(), expr.expand(&generator_resolver(group))?);
    }
    let scope = Scope {
        group,
        normals,
        normal_defs: cert.normals.iter().map(|(_, e)| e).collect(),
    };
    let evaluated: Vec<Result<(bool, Option<String>)>> = cert
        .assertions
        .par_iter()
        .map(|a| evaluate(&scope, &a.assertion))
        .collect();
    let mut results = Vec::with_capacity(evaluated.len());
    for (a, r) in cert.assertions.iter().zip(evaluated) {
        let (passed, detail) = r.map_err(|e| match e {
            Error::Parse {
                column, message, ..
            } => Error::Parse {
                line: a.line,
                column,
                message,
            },
            Error::UnknownGenerator(n) => {
                Error::parse(a.line, 1, format!("unknown generator `{n}`"))
            }
            other => other,
        })?;
        results.push(AssertionResult {
            line: a.line,
            kind: a.assertion.kind(),
            text: a.text.clone(),
            passed,
            detail,
        });
    }
    Ok(Report {
        certificate: cert.name.clone(),
        group: group.name().to_string(),
        passed: results.iter().all(|r| r.passed),
        results,
        elapsed: start.elapsed(),
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct FreeSemigroupResult {
    pub max_len: usize,
    /// Number of nonempty positive words enumerated.
    pub words: usize,
    /// Number of distinct elements among them.
    pub distinct: usize,
    /// Lexicographically first colliding pair (shorter word first).
    pub collision: Option<(String, String)>,
}

/// Enumerates all nonempty positive words of length ≤ `max_len` over `S` and
/// deduplicates them by canonical key.
pub fn free_semigroup_check(s: &GenSet, max_len: usize) -> FreeSemigroupResult {
    let group = s.group();
    let k = s.len();
    // words in shortlex order over generator indices
    let mut words: Vec<Vec<usize>> = Vec::new();
    let mut layer: Vec<Vec<usize>> = vec![Vec::new()];
    for _ in 0..max_len {
        let next: Vec<Vec<usize>> = layer
            .iter()
            .flat_map(|w| {
                (0..k).map(move |i| {
                    let mut x = w.clone();
                    x.push(i);
                    x
                })
            })
            .collect();
        words.extend(next.iter().cloned());
        layer = next;
    }
    let elements: Vec<Element> = words
        .iter()
        .map(|w| {
            let letters: Vec<Letter> = w
                .iter()
                .flat_map(|&i| s.elements()[i].letters().iter().copied())
                .collect();
            Element::from_letters(group, letters)
        })
        .collect();
    let keys: Vec<CanonicalKey> = elements.par_iter().map(canonical_key).collect();
    let mut first: HashMap<&CanonicalKey, usize> = HashMap::new();
    let mut collision: Option<(usize, usize)> = None;
    for (i, key) in keys.iter().enumerate() {
        match first.get(key) {
            Some(&j) => {
                if collision.is_none() {
                    collision = Some((j, i));
                }
            }
            None => {
                first.insert(key, i);
            }
        }
    }
    let show = |w: &Vec<usize>| -> String {
        w.iter()
            .map(|&i| s.names()[i].as_str())
            .collect::<Vec<_>>()
            .join(" ")
    };
    FreeSemigroupResult {
        max_len,
        words: words.len(),
        distinct: first.len(),
        collision: collision.map(|(j, i)| (show(&words[j]), show(&words[i]))),
    }
}

/// `|B(0)|, …, |B(R)|` over `S ∪ S⁻¹`, deduplicated by canonical keys.
pub fn ball_sizes(s: &GenSet, radius: usize) -> Result<Vec<usize>> {
    ball_sizes_capped(s, radius, DEFAULT_BALL_CAP)
}

pub fn ball_sizes_capped(s: &GenSet, radius: usize, cap: usize) -> Result<Vec<usize>> {
    Ok(enumerate_ball(s, radius, cap)?.sizes())
}

/// Ball sizes by both deduplication strategies; `Ok(true)` if they agree.
pub fn ball_strategies_agree(s: &GenSet, radius: usize) -> Result<bool> {
    Ok(ball_sizes(s, radius)? == ball_sizes_pairwise(s, radius)?)
}

/// Distinct elements in a list, by canonical key.
pub fn count_distinct(elements: &[Element]) -> usize {
    elements
        .iter()
        .map(canonical_key)
        .collect::<HashSet<_>>()
        .len()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    #[test]
    fn bundled_suites_pass() {
        for (file, text) in corpus::SUITES {
            let cert = parse_certificate(text).unwrap();
            let group = corpus::by_name(&cert.group).unwrap();
            let report = run_suite(&cert, &group).unwrap();
            for r in report.failures() {
                eprintln!("{file}:{}: {} -- {:?}", r.line, r.text, r.detail);
            }
            assert!(report.passed, "{file}");
        }
    }

    #[test]
    fn empty_certificate_passes() {
        let g = corpus::grigorchuk();
        let c = parse_certificate("certificate empty\ngroup grigorchuk\n").unwrap();
        let r = run_suite(&c, &g).unwrap();
        assert!(r.passed);
        assert!(r.results.is_empty());
    }

    #[test]
    fn unknown_group() {
        let g = corpus::grigorchuk();
        let c = parse_certificate("group basilica\n").unwrap();
        assert_eq!(
            run_suite(&c, &g).unwrap_err(),
            Error::UnknownGroup("basilica".into())
        );
    }

    #[test]
    fn member_by_expression() {
        let g = corpus::grigorchuk();
        let c = parse_certificate(
            "group grigorchuk\nnormal k = (a b)^2\nmember (a b a d)^2 = k d^-1 k^-1 d\n",
        )
        .unwrap();
        assert!(run_suite(&c, &g).unwrap().passed);
        // right value, but not written as a product of conjugates of k
        let c =
            parse_certificate("group grigorchuk\nnormal k = (a b)^2\nmember a a = a a\n").unwrap();
        // a a is trivial, so its residue is trivial: still a valid (empty) product
        assert!(run_suite(&c, &g).unwrap().passed);
        let c =
            parse_certificate("group grigorchuk\nnormal k = (a b)^2\nmember k a = k a\n").unwrap();
        let r = run_suite(&c, &g).unwrap();
        assert!(!r.passed);
        assert!(r.results[0].detail.as_deref().unwrap().contains("residue"));
    }

    #[test]
    fn member_recognizes_inline_normal_generators() {
        let g = corpus::grigorchuk();
        let text = "group grigorchuk\nnormal k = (a b)^2\n\
                    member (a b a d)^2 = (a b)^2 · d^-1 (a b)^-2 d\n\
                    member (a b)^4 = (a b)^4\n";
        let r = run_suite(&parse_certificate(text).unwrap(), &g).unwrap();
        assert!(r.passed, "{:?}", r.results);
        // an odd power of a b is not a power of the normal generator
        let text = "group grigorchuk\nnormal k = (a b)^2\nmember (a b)^3 = (a b)^3\n";
        assert!(
            !run_suite(&parse_certificate(text).unwrap(), &g)
                .unwrap()
                .passed
        );
    }

    #[test]
    fn coords_assertion() {
        let g = corpus::grigorchuk();
        let c = parse_certificate(
            "group grigorchuk\ncoords a c (c a)^d => (b, b)\ncoords c a => (a, d) (1 2)\ncoords c a => (a, d)\n",
        )
        .unwrap();
        let r = run_suite(&c, &g).unwrap();
        assert!(r.results[0].passed && r.results[1].passed);
        assert!(!r.results[2].passed);
        assert!(r.results[2].detail.as_deref().unwrap().contains("(1 2)"));
    }

    #[test]
    fn parse_errors_have_positions() {
        match parse_certificate("group g\nequal a = (b\n") {
            Err(Error::Parse { line: 2, .. }) => {}
            other => panic!("{other:?}"),
        }
        match parse_certificate("group g\nfrobnicate a\n") {
            Err(Error::Parse {
                line: 2, column: 1, ..
            }) => {}
            other => panic!("{other:?}"),
        }
        let g = corpus::grigorchuk();
        let c = parse_certificate("group grigorchuk\n\ntrivial a z\n").unwrap();
        assert!(matches!(
            run_suite(&c, &g),
            Err(Error::Parse { line: 3, .. })
        ));
    }

    #[test]
    fn free_semigroup_small() {
        let b = corpus::basilica();
        let r = free_semigroup_check(&GenSet::generators(&b), 1);
        assert_eq!((r.words, r.distinct), (2, 2));
        assert!(r.collision.is_none());

        let g = corpus::grigorchuk();
        let r = free_semigroup_check(&GenSet::parse(&g, &["a", "b"]).unwrap(), 4);
        assert!(r.collision.is_some());
        // first collision in shortlex order: a a = b b
        assert_eq!(r.collision.unwrap(), ("a a".to_string(), "b b".to_string()));
    }
}
