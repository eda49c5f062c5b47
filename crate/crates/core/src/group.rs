//! Finite wreath-recursion presentations.
//!
//! A presentation lists named states; each state is a tuple of `d` slots
//! (state names or the identity) and a root permutation. Slot `k` is the
//! coordinate that lands on letter `k` after the root permutation acts, so
//! the coordinates of a generator are exactly its declared tuple.

use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::perm::Perm;

/// Symbol used for the identity in slot tables and words.
pub const IDENTITY: &str = "1";

/// Size of the alphabet `{x_1, …, x_d}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Alphabet(usize);

impl Alphabet {
    pub fn new(size: usize) -> Result<Self> {
        if size == 0 {
            return Err(Error::EmptyAlphabet);
        }
        Ok(Alphabet(size))
    }

    pub fn size(self) -> usize {
        self.0
    }
}

/// Unvalidated row of a state table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StateSpec {
    pub name: String,
    pub slots: Vec<String>,
    pub perm: Perm,
}

impl StateSpec {
    pub fn new(name: &str, slots: &[&str], perm: Perm) -> Self {
        StateSpec {
            name: name.to_string(),
            slots: slots.iter().map(|s| s.to_string()).collect(),
            perm,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StateDef {
    pub name: String,
    /// `None` is the identity.
    pub slots: Vec<Option<usize>>,
    pub perm: Perm,
    pub(crate) inverse_perm: Perm,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupDef {
    name: String,
    alphabet: Alphabet,
    states: Vec<StateDef>,
    index: HashMap<String, usize>,
}

/// Validates a state table and builds the presentation.
pub fn make_group(name: &str, alphabet: Alphabet, table: &[StateSpec]) -> Result<GroupDef> {
    if table.is_empty() {
        return Err(Error::EmptyGroup);
    }
    let d = alphabet.size();
    let mut index = HashMap::new();
    for (i, spec) in table.iter().enumerate() {
        if spec.name == IDENTITY || !is_identifier(&spec.name) {
            return Err(Error::parse(
                0,
                0,
                format!("`{}` is not a valid state name", spec.name),
            ));
        }
        if index.insert(spec.name.clone(), i).is_some() {
            return Err(Error::DuplicateState(spec.name.clone()));
        }
    }
    let mut states = Vec::with_capacity(table.len());
    for spec in table {
        if spec.slots.len() != d {
            return Err(Error::SlotCount {
                state: spec.name.clone(),
                got: spec.slots.len(),
                expected: d,
            });
        }
        if spec.perm.degree() != d {
            return Err(Error::BadPerm(format!(
                "state `{}` has a permutation of degree {}, alphabet has {d} letters",
                spec.name,
                spec.perm.degree()
            )));
        }
        let slots = spec
            .slots
            .iter()
            .map(|s| {
                if s == IDENTITY {
                    Ok(None)
                } else {
                    index
                        .get(s)
                        .copied()
                        .map(Some)
                        .ok_or_else(|| Error::UnknownState {
                            state: spec.name.clone(),
                            name: s.clone(),
                        })
                }
            })
            .collect::<Result<Vec<_>>>()?;
        states.push(StateDef {
            name: spec.name.clone(),
            slots,
            inverse_perm: spec.perm.inverse(),
            perm: spec.perm.clone(),
        });
    }
    Ok(GroupDef {
        name: name.to_string(),
        alphabet,
        states,
        index,
    })
}

pub(crate) fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '\'')
}

impl GroupDef {
    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    pub fn degree(&self) -> usize {
        self.alphabet.size()
    }

    pub fn states(&self) -> &[StateDef] {
        &self.states
    }

    #[inline]
    pub fn state(&self, i: usize) -> &StateDef {
        &self.states[i]
    }

    pub fn state_index(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    /// The state table this presentation was built from.
    pub fn table(&self) -> Vec<StateSpec> {
        self.states
            .iter()
            .map(|s| StateSpec {
                name: s.name.clone(),
                slots: s
                    .slots
                    .iter()
                    .map(|x| self.slot_name(*x).to_string())
                    .collect(),
                perm: s.perm.clone(),
            })
            .collect()
    }

    pub(crate) fn slot_name(&self, slot: Option<usize>) -> &str {
        match slot {
            Some(i) => &self.states[i].name,
            None => IDENTITY,
        }
    }

    /// A copy of this presentation with extra states appended; existing state
    /// indices are preserved so words carry over unchanged.
    pub fn extend(&self, name: &str, extra: &[StateSpec]) -> Result<GroupDef> {
        let mut table = self.table();
        table.extend_from_slice(extra);
        make_group(name, self.alphabet, &table)
    }

    /// A state name not already in use, derived from `base`.
    pub fn fresh_name(&self, base: &str) -> String {
        let mut name = base.to_string();
        while self.index.contains_key(&name) {
            name.push('\'');
        }
        name
    }
}

impl fmt::Display for GroupDef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::groupfile::serialize_group(self))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bin() -> Alphabet {
        Alphabet::new(2).unwrap()
    }

    #[test]
    fn grigorchuk_table_is_valid() {
        let sw = Perm::swap(2);
        let id = Perm::identity(2);
        let g = make_group(
            "grigorchuk",
            bin(),
            &[
                StateSpec::new("a", &["1", "1"], sw),
                StateSpec::new("b", &["a", "c"], id.clone()),
                StateSpec::new("c", &["a", "d"], id.clone()),
                StateSpec::new("d", &["1", "b"], id),
            ],
        )
        .unwrap();
        assert_eq!(g.states().len(), 4);
        assert_eq!(g.state(1).slots, vec![Some(0), Some(2)]);
    }

    #[test]
    fn basilica_table_is_valid() {
        let g = make_group(
            "basilica",
            bin(),
            &[
                StateSpec::new("a", &["1", "b"], Perm::identity(2)),
                StateSpec::new("b", &["1", "a"], Perm::swap(2)),
            ],
        )
        .unwrap();
        assert_eq!(g.degree(), 2);
    }

    #[test]
    fn validation_errors() {
        let id = Perm::identity(2);
        let err = make_group("x", bin(), &[StateSpec::new("a", &["1", "z"], id.clone())]);
        assert!(matches!(err, Err(Error::UnknownState { .. })));
        let err = make_group(
            "x",
            bin(),
            &[
                StateSpec::new("a", &["1", "1"], id.clone()),
                StateSpec::new("a", &["1", "1"], id.clone()),
            ],
        );
        assert_eq!(err, Err(Error::DuplicateState("a".into())));
        assert_eq!(make_group("x", bin(), &[]), Err(Error::EmptyGroup));
        let err = make_group("x", bin(), &[StateSpec::new("a", &["1"], id)]);
        assert!(matches!(err, Err(Error::SlotCount { .. })));
        assert_eq!(Alphabet::new(0), Err(Error::EmptyAlphabet));
    }

    #[test]
    fn degree_one_is_allowed() {
        let g = make_group(
            "trivial",
            Alphabet::new(1).unwrap(),
            &[StateSpec::new("t", &["t"], Perm::identity(1))],
        )
        .unwrap();
        assert_eq!(g.degree(), 1);
    }
}
