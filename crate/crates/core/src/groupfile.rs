//! `.agt` group files.
//!
//! ```text
//! # Grigorchuk group
//! group grigorchuk
//! alphabet 2
//! gen a = (1, 1) (1 2)
//! gen b = (a, c)
//! ```
//!
//! Slots are state names or `1`; the optional trailing cycles give the root
//! permutation (omitted means identity).

use crate::error::{Error, Result};
use crate::group::{is_identifier, make_group, Alphabet, GroupDef, StateSpec};
use crate::perm::Perm;

pub fn parse_group_file(text: &str) -> Result<GroupDef> {
    let mut name: Option<String> = None;
    let mut degree: Option<(usize, usize)> = None;
    let mut gens: Vec<(usize, usize, String, String)> = Vec::new();

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = strip_comment(raw);
        let trimmed = line.trim();
        if trimmed.is_empty() {
            continue;
        }
        let indent = line.len() - line.trim_start().len();
        let (keyword, rest) = split_keyword(trimmed);
        let rest_col = indent + keyword.len() + 2;
        match keyword {
            "group" => {
                if !is_identifier(rest) {
                    return Err(Error::parse(line_no, rest_col, "expected a group name"));
                }
                name = Some(rest.to_string());
            }
            "alphabet" => {
                let d: usize = rest
                    .parse()
                    .map_err(|_| Error::parse(line_no, rest_col, "expected alphabet size"))?;
                if d == 0 {
                    return Err(Error::EmptyAlphabet);
                }
                degree = Some((d, line_no));
            }
            "gen" => {
                let (lhs, rhs) = rest
                    .split_once('=')
                    .ok_or_else(|| Error::parse(line_no, rest_col, "expected `NAME = (slots)`"))?;
                let gname = lhs.trim();
                if !is_identifier(gname) || gname == "1" {
                    return Err(Error::parse(
                        line_no,
                        rest_col,
                        format!("bad state name `{gname}`"),
                    ));
                }
                let rhs_col = rest_col + lhs.len() + 1;
                gens.push((line_no, rhs_col, gname.to_string(), rhs.to_string()));
            }
            other => {
                return Err(Error::parse(
                    line_no,
                    indent + 1,
                    format!("unknown directive `{other}`"),
                ))
            }
        }
    }

    let name = name.ok_or_else(|| Error::parse(1, 1, "missing `group NAME` line"))?;
    let (d, _) = degree.ok_or_else(|| Error::parse(1, 1, "missing `alphabet D` line"))?;
    if gens.is_empty() {
        return Err(Error::EmptyGroup);
    }
    let mut table = Vec::with_capacity(gens.len());
    for (line_no, col, gname, rhs) in gens {
        let (slots, perm) = parse_slot_tuple(&rhs, d, line_no, col)?;
        table.push(StateSpec {
            name: gname,
            slots,
            perm,
        });
    }
    make_group(&name, Alphabet::new(d)?, &table)
}

fn strip_comment(line: &str) -> &str {
    match line.find('#') {
        Some(i) => &line[..i],
        None => line,
    }
}

fn split_keyword(line: &str) -> (&str, &str) {
    match line.find(char::is_whitespace) {
        Some(i) => (&line[..i], line[i..].trim()),
        None => (line, ""),
    }
}

/// Parses `(s1, …, sd) CYCLES` as it appears after `gen NAME =`; `col` is
/// the column where `text` starts.
fn parse_slot_tuple(
    text: &str,
    degree: usize,
    line: usize,
    col: usize,
) -> Result<(Vec<String>, Perm)> {
    let lead = text.len() - text.trim_start().len();
    let t = text.trim();
    let col = col + lead;
    if !t.starts_with('(') {
        return Err(Error::parse(
            line,
            col,
            "expected `(` opening the slot tuple",
        ));
    }
    let close = t
        .find(')')
        .ok_or_else(|| Error::parse(line, col, "unterminated slot tuple"))?;
    let slots: Vec<String> = t[1..close]
        .split(',')
        .map(|s| s.trim().to_string())
        .collect();
    if slots.iter().any(|s| s.is_empty()) {
        return Err(Error::parse(line, col, "empty slot"));
    }
    let perm = parse_cycles_at(&t[close + 1..], degree, line, col + close + 1)?;
    Ok((slots, perm))
}

/// Cycle notation on 1-based letters: `(1 2)(3 4 5)`, `id`, or nothing.
pub fn parse_cycles(text: &str, degree: usize, line: usize) -> Result<Perm> {
    parse_cycles_at(text, degree, line, 1)
}

fn parse_cycles_at(text: &str, degree: usize, line: usize, col: usize) -> Result<Perm> {
    let col = col + text.len() - text.trim_start().len();
    let t = text.trim();
    if t.is_empty() || t == "id" || t == "()" {
        return Ok(Perm::identity(degree));
    }
    let mut cycles = Vec::new();
    let mut rest = t;
    while !rest.is_empty() {
        let at = col + (t.len() - rest.len());
        if !rest.starts_with('(') {
            return Err(Error::parse(line, at, format!("bad cycle notation `{t}`")));
        }
        let close = rest
            .find(')')
            .ok_or_else(|| Error::parse(line, at, "unterminated cycle"))?;
        let cycle = rest[1..close]
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|s| !s.is_empty())
            .map(|s| {
                s.parse::<usize>()
                    .map_err(|_| Error::parse(line, at, format!("bad letter `{s}` in cycle")))
            })
            .collect::<Result<Vec<_>>>()?;
        if !cycle.is_empty() {
            cycles.push(cycle);
        }
        rest = rest[close + 1..].trim_start();
    }
    Perm::from_cycles(degree, &cycles).map_err(|e| match e {
        Error::BadPerm(msg) => Error::parse(line, col, format!("bad permutation: {msg}")),
        other => other,
    })
}
pub fn serialize_group(group: &GroupDef) -> String {
    let mut out = format!("group {}\nalphabet {}\n", group.name(), group.degree());
    for spec in group.table() {
        out.push_str(&format!("gen {} = ({})", spec.name, spec.slots.join(", ")));
        if !spec.perm.is_identity() {
            out.push(' ');
            out.push_str(&spec.perm.to_string());
        }
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    #[test]
    fn bundled_files_parse() {
        let g = parse_group_file(corpus::GRIGORCHUK_AGT).unwrap();
        assert_eq!(g.name(), "grigorchuk");
        assert_eq!(g.states().len(), 4);
        let b = parse_group_file(corpus::BASILICA_AGT).unwrap();
        assert_eq!(b.states().len(), 2);
        assert_eq!(b.degree(), 2);
    }

    #[test]
    fn round_trip() {
        for text in [
            corpus::GRIGORCHUK_AGT,
            corpus::BASILICA_AGT,
            corpus::ODOMETER_AGT,
        ] {
            let g = parse_group_file(text).unwrap();
            let again = parse_group_file(&serialize_group(&g)).unwrap();
            assert_eq!(g, again);
        }
    }

    #[test]
    fn no_generators_is_empty_group() {
        assert_eq!(
            parse_group_file("group x\nalphabet 2\n"),
            Err(Error::EmptyGroup)
        );
    }

    #[test]
    fn errors_carry_positions() {
        let err = parse_group_file("group x\nalphabet 2\nfoo bar\n").unwrap_err();
        assert!(matches!(
            err,
            Error::Parse {
                line: 3,
                column: 1,
                ..
            }
        ));
        let err = parse_group_file("group x\nalphabet two\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }));
        let err = parse_group_file("group x\nalphabet 2\ngen a = (1, z)\n").unwrap_err();
        assert!(matches!(err, Error::UnknownState { .. }));
        let err = parse_group_file("group x\nalphabet 2\ngen a = (1, 1) (1 3)\n").unwrap_err();
        assert!(
            matches!(
                err,
                Error::Parse {
                    line: 3,
                    column: 16,
                    ..
                }
            ),
            "{err:?}"
        );
    }

    #[test]
    fn cycles() {
        assert_eq!(parse_cycles("(1 2)", 2, 1).unwrap(), Perm::swap(2));
        assert!(parse_cycles("id", 3, 1).unwrap().is_identity());
        let p = parse_cycles("(1 2 3)", 3, 1).unwrap();
        assert_eq!(p.apply(2), 0);
    }
}
