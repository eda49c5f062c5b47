//! Group elements as freely reduced words, and the wreath calculus on them.
//!
//! Conventions (all operations agree on these):
//!
//! * `multiply(g, h)` is the word `g h` and acts as `h` first, then `g`.
//! * `coords(g) = ((g_1, …, g_d), ε)` satisfies the product rule
//!   `(a)ε · (b)ν = (a_1 b_{ε⁻¹(1)}, …, a_d b_{ε⁻¹(d)}) εν`.
//! * The action is `g(x_i w) = x_{ε(i)} g_{ε(i)}(w)`, so the section of `g`
//!   at the letter `x_i` is the slot `g_{ε(i)}`. For elements fixing the
//!   first level, slot `k` and the section at `x_k` coincide.

use std::fmt;
use std::sync::Arc;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::group::{GroupDef, IDENTITY};
use crate::perm::Perm;

/// A generator or its inverse.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Letter {
    pub state: u32,
    pub inverse: bool,
}

impl Letter {
    pub fn new(state: usize, inverse: bool) -> Self {
        Letter {
            state: state as u32,
            inverse,
        }
    }

    #[inline]
    pub fn inv(self) -> Self {
        Letter {
            state: self.state,
            inverse: !self.inverse,
        }
    }
}

pub type Word = Vec<Letter>;

/// Appends `l` to a freely reduced word, keeping it reduced.
#[inline]
pub(crate) fn push_reduced(word: &mut Word, l: Letter) {
    if word.last() == Some(&l.inv()) {
        word.pop();
    } else {
        word.push(l);
    }
}

pub(crate) fn reduce(letters: impl IntoIterator<Item = Letter>) -> Word {
    let mut out = Vec::new();
    for l in letters {
        push_reduced(&mut out, l);
    }
    out
}

pub(crate) fn invert_word(word: &[Letter]) -> Word {
    word.iter().rev().map(|l| l.inv()).collect()
}

/// Wreath coordinates of a raw word: slot tuple and root permutation.
pub(crate) fn coords_raw(group: &GroupDef, word: &[Letter]) -> (Vec<Word>, Perm) {
    let d = group.degree();
    let mut slots: Vec<Word> = vec![Vec::new(); d];
    let mut perm = Perm::identity(d);
    for &l in word {
        let st = group.state(l.state as usize);
        if l.inverse {
            // (s_j)_j ν  inverts to  (s_{ν(j)}⁻¹)_j ν⁻¹
            for j in 0..d {
                if let Some(s) = st.slots[st.perm.apply(j)] {
                    push_reduced(&mut slots[perm.apply(j)], Letter::new(s, true));
                }
            }
            perm = perm.compose(&st.inverse_perm);
        } else {
            for j in 0..d {
                if let Some(s) = st.slots[j] {
                    push_reduced(&mut slots[perm.apply(j)], Letter::new(s, false));
                }
            }
            perm = perm.compose(&st.perm);
        }
    }
    (slots, perm)
}

/// Root permutation only; cheaper than full coordinates.
pub(crate) fn root_perm_raw(group: &GroupDef, word: &[Letter]) -> Perm {
    let mut perm = Perm::identity(group.degree());
    for &l in word {
        let st = group.state(l.state as usize);
        perm = perm.compose(if l.inverse {
            &st.inverse_perm
        } else {
            &st.perm
        });
    }
    perm
}

/// Section of a raw word at the first-level letter `letter` (0-based).
pub(crate) fn section_raw(group: &GroupDef, word: &[Letter], letter: usize) -> Word {
    let (mut slots, perm) = coords_raw(group, word);
    std::mem::take(&mut slots[perm.apply(letter)])
}

/// Applies one generator letter to a vertex in place (0-based letters).
pub(crate) fn act_letter(group: &GroupDef, letter: Letter, vertex: &mut [u8]) {
    let mut current = Some(letter);
    for x in vertex.iter_mut() {
        let Some(l) = current else { break };
        let st = group.state(l.state as usize);
        let i = *x as usize;
        if l.inverse {
            *x = st.inverse_perm.apply(i) as u8;
            current = st.slots[i].map(|s| Letter::new(s, true));
        } else {
            let j = st.perm.apply(i);
            *x = j as u8;
            current = st.slots[j].map(|s| Letter::new(s, false));
        }
    }
}

pub(crate) fn act_raw(group: &GroupDef, word: &[Letter], vertex: &mut [u8]) {
    for &l in word.iter().rev() {
        act_letter(group, l, vertex);
    }
}

/// A vertex of the tree `X*`, i.e. a finite sequence of letters.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Vertex(Vec<u8>);

impl Vertex {
    pub fn root() -> Self {
        Vertex(Vec::new())
    }

    /// From 0-based letters.
    pub fn from_letters(letters: Vec<u8>) -> Self {
        Vertex(letters)
    }

    /// Parses `"2.1.1"`; `""` and `"."` are the root.
    pub fn parse(text: &str, degree: usize) -> Result<Self> {
        let t = text.trim();
        if t.is_empty() || t == "." {
            return Ok(Vertex::root());
        }
        t.split('.')
            .map(|part| match part.trim().parse::<usize>() {
                Ok(x) if x >= 1 && x <= degree => Ok((x - 1) as u8),
                _ => Err(Error::BadVertex(text.to_string())),
            })
            .collect::<Result<Vec<_>>>()
            .map(Vertex)
    }

    pub fn letters(&self) -> &[u8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_root(&self) -> bool {
        self.0.is_empty()
    }

    pub fn child(&self, letter: u8) -> Vertex {
        let mut v = self.0.clone();
        v.push(letter);
        Vertex(v)
    }

    pub fn parent(&self) -> Option<Vertex> {
        if self.0.is_empty() {
            None
        } else {
            Some(Vertex(self.0[..self.0.len() - 1].to_vec()))
        }
    }

    pub fn concat(&self, other: &Vertex) -> Vertex {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Vertex(v)
    }

    pub(crate) fn check(&self, degree: usize) -> Result<()> {
        if self.0.iter().all(|&x| (x as usize) < degree) {
            Ok(())
        } else {
            Err(Error::BadVertex(self.to_string()))
        }
    }

    /// Index of this vertex among its level, letters read as base-`d` digits.
    pub fn index(&self, degree: usize) -> usize {
        self.0.iter().fold(0, |acc, &x| acc * degree + x as usize)
    }

    pub fn from_index(mut index: usize, level: usize, degree: usize) -> Vertex {
        let mut v = vec![0u8; level];
        for slot in v.iter_mut().rev() {
            *slot = (index % degree) as u8;
            index /= degree;
        }
        Vertex(v)
    }

    /// All vertices of a level in lexicographic order.
    pub fn level(level: usize, degree: usize) -> impl Iterator<Item = Vertex> {
        let count = degree.pow(level as u32);
        (0..count).map(move |i| Vertex::from_index(i, level, degree))
    }
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str(".");
        }
        let parts: Vec<String> = self.0.iter().map(|x| (x + 1).to_string()).collect();
        f.write_str(&parts.join("."))
    }
}

impl fmt::Debug for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Vertex({self})")
    }
}

/// An element of the group generated by the states of a presentation.
///
/// The word is kept freely reduced; that is a syntactic normal form only.
/// Semantic equality lives in [`crate::decide`].
#[derive(Clone)]
pub struct Element {
    group: Arc<GroupDef>,
    word: Word,
}

/// Slot tuple and root permutation of an element.
#[derive(Clone, Debug)]
pub struct WreathCoords {
    pub slots: Vec<Element>,
    pub perm: Perm,
}

impl Element {
    pub fn identity(group: &Arc<GroupDef>) -> Self {
        Element {
            group: Arc::clone(group),
            word: Vec::new(),
        }
    }

    pub fn generator(group: &Arc<GroupDef>, state: usize) -> Self {
        Element {
            group: Arc::clone(group),
            word: vec![Letter::new(state, false)],
        }
    }

    pub fn from_letters(group: &Arc<GroupDef>, letters: impl IntoIterator<Item = Letter>) -> Self {
        Element {
            group: Arc::clone(group),
            word: reduce(letters),
        }
    }

    pub(crate) fn from_reduced(group: &Arc<GroupDef>, word: Word) -> Self {
        Element {
            group: Arc::clone(group),
            word,
        }
    }

    pub fn group(&self) -> &Arc<GroupDef> {
        &self.group
    }

    pub fn letters(&self) -> &[Letter] {
        &self.word
    }

    pub fn len(&self) -> usize {
        self.word.len()
    }

    /// True for the empty word. Says nothing about semantic triviality.
    pub fn is_empty(&self) -> bool {
        self.word.is_empty()
    }

    pub fn same_group(&self, other: &Element) -> bool {
        Arc::ptr_eq(&self.group, &other.group) || *self.group == *other.group
    }

    pub fn multiply(&self, other: &Element) -> Result<Element> {
        if !self.same_group(other) {
            return Err(Error::MixedGroups);
        }
        let mut word = self.word.clone();
        for &l in &other.word {
            push_reduced(&mut word, l);
        }
        Ok(Element::from_reduced(&self.group, word))
    }

    pub fn invert(&self) -> Element {
        Element::from_reduced(&self.group, invert_word(&self.word))
    }

    pub fn pow(&self, n: i64) -> Element {
        let base = if n < 0 { self.invert() } else { self.clone() };
        let mut word = Vec::new();
        for _ in 0..n.unsigned_abs() {
            for &l in &base.word {
                push_reduced(&mut word, l);
            }
        }
        Element::from_reduced(&self.group, word)
    }

    /// `y⁻¹ x y`.
    pub fn conjugate(&self, by: &Element) -> Result<Element> {
        by.invert().multiply(self)?.multiply(by)
    }

    /// `[x, y] = x⁻¹ y⁻¹ x y`.
    pub fn commutator(&self, other: &Element) -> Result<Element> {
        self.invert()
            .multiply(&other.invert())?
            .multiply(self)?
            .multiply(other)
    }

    pub fn coords(&self) -> WreathCoords {
        let (slots, perm) = coords_raw(&self.group, &self.word);
        WreathCoords {
            slots: slots
                .into_iter()
                .map(|w| Element::from_reduced(&self.group, w))
                .collect(),
            perm,
        }
    }

    pub fn root_perm(&self) -> Perm {
        root_perm_raw(&self.group, &self.word)
    }

    /// The section `g|_v`.
    pub fn section(&self, v: &Vertex) -> Result<Element> {
        v.check(self.group.degree())?;
        let mut word = self.word.clone();
        for &x in v.letters() {
            word = section_raw(&self.group, &word, x as usize);
        }
        Ok(Element::from_reduced(&self.group, word))
    }

    /// The image `g(v)`.
    pub fn act(&self, v: &Vertex) -> Result<Vertex> {
        v.check(self.group.degree())?;
        let mut out = v.letters().to_vec();
        act_raw(&self.group, &self.word, &mut out);
        Ok(Vertex(out))
    }

    /// Rebinds the word to `group`, which must extend this element's group.
    pub(crate) fn lift_to(&self, group: &Arc<GroupDef>) -> Element {
        Element::from_reduced(group, self.word.clone())
    }
}

impl WreathCoords {
    /// Same permutation and semantically equal slots.
    pub fn matches(&self, other: &WreathCoords) -> bool {
        self.perm == other.perm
            && self
                .slots
                .iter()
                .zip(&other.slots)
                .all(|(a, b)| crate::decide::equals(a, b).unwrap_or(false))
    }
}

impl fmt::Display for Element {
    /// Runs of a repeated letter print as powers: `a b^-1 c^2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.word.is_empty() {
            return f.write_str(IDENTITY);
        }
        let mut first = true;
        let mut i = 0;
        while i < self.word.len() {
            let l = self.word[i];
            let mut run = 1;
            while i + run < self.word.len() && self.word[i + run] == l {
                run += 1;
            }
            if !first {
                f.write_str(" ")?;
            }
            first = false;
            let name = &self.group.state(l.state as usize).name;
            let exp = if l.inverse { -(run as i64) } else { run as i64 };
            if exp == 1 {
                write!(f, "{name}")?;
            } else {
                write!(f, "{name}^{exp}")?;
            }
            i += run;
        }
        Ok(())
    }
}

impl Serialize for Element {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl Serialize for Vertex {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl fmt::Debug for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Element({self})")
    }
}

impl fmt::Display for WreathCoords {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let slots: Vec<String> = self.slots.iter().map(|s| s.to_string()).collect();
        write!(f, "({}) {}", slots.join(", "), self.perm)
    }
}
