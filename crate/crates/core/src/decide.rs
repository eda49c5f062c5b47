//! Decision procedures on single elements.
//!
//! Everything here rests on one fact: the sections of a word `g` are words
//! whose total length never exceeds `|g|`, so the set of section words
//! reachable from `g` is finite. Triviality is "every reachable section has
//! identity root permutation"; semantic equality of two section words is
//! bisimilarity in the finite automaton of reachable section words.

use std::collections::{HashMap, HashSet, VecDeque};

use serde::Serialize;

use crate::element::{coords_raw, push_reduced, Element, Letter, Vertex, Word};
use crate::error::Result;
use crate::group::GroupDef;
use crate::perm::Perm;

/// Triviality of a raw word over `group`.
pub(crate) fn is_trivial_word(group: &GroupDef, word: &[Letter]) -> bool {
    if word.is_empty() {
        return true;
    }
    let mut seen: HashSet<Word> = HashSet::new();
    let mut queue = VecDeque::new();
    seen.insert(word.to_vec());
    queue.push_back(word.to_vec());
    while let Some(w) = queue.pop_front() {
        let (slots, perm) = coords_raw(group, &w);
        if !perm.is_identity() {
            return false;
        }
        for s in slots {
            if !s.is_empty() && !seen.contains(&s) {
                seen.insert(s.clone());
                queue.push_back(s);
            }
        }
    }
    true
}

pub fn is_trivial(g: &Element) -> bool {
    is_trivial_word(g.group(), g.letters())
}

pub fn equals(g: &Element, h: &Element) -> Result<bool> {
    Ok(is_trivial(&g.multiply(&h.invert())?))
}

/// Reachable section words of a start word, as a deterministic automaton.
/// Children are indexed by source letter: `children[n][i]` is the section at `x_i`.
struct SectionAutomaton {
    words: Vec<Word>,
    perms: Vec<Perm>,
    children: Vec<Vec<usize>>,
}

impl SectionAutomaton {
    fn explore(group: &GroupDef, start: &[Letter]) -> Self {
        let d = group.degree();
        let mut index: HashMap<Word, usize> = HashMap::new();
        let mut words = vec![start.to_vec()];
        index.insert(start.to_vec(), 0);
        let mut perms = Vec::new();
        let mut children = Vec::new();
        let mut next = 0;
        while next < words.len() {
            let (slots, perm) = coords_raw(group, &words[next]);
            let mut kids = Vec::with_capacity(d);
            for i in 0..d {
                let s = &slots[perm.apply(i)];
                let id = match index.get(s) {
                    Some(&id) => id,
                    None => {
                        let id = words.len();
                        index.insert(s.clone(), id);
                        words.push(s.clone());
                        id
                    }
                };
                kids.push(id);
            }
            perms.push(perm);
            children.push(kids);
            next += 1;
        }
        SectionAutomaton {
            words,
            perms,
            children,
        }
    }

    /// Coarsest partition compatible with root permutations and children
    /// (Moore refinement). Returns a class id per node.
    fn bisimulation_classes(&self) -> (Vec<usize>, usize) {
        let n = self.words.len();
        let mut by_perm: HashMap<&Perm, usize> = HashMap::new();
        let mut class: Vec<usize> = self
            .perms
            .iter()
            .map(|p| {
                let k = by_perm.len();
                *by_perm.entry(p).or_insert(k)
            })
            .collect();
        let mut count = by_perm.len();
        loop {
            let mut sig_ids: HashMap<(usize, Vec<usize>), usize> = HashMap::new();
            let mut next = vec![0; n];
            for node in 0..n {
                let sig = (
                    class[node],
                    self.children[node]
                        .iter()
                        .map(|&c| class[c])
                        .collect::<Vec<_>>(),
                );
                let k = sig_ids.len();
                next[node] = *sig_ids.entry(sig).or_insert(k);
            }
            let new_count = sig_ids.len();
            class = next;
            if new_count == count {
                return (class, count);
            }
            count = new_count;
        }
    }
}

/// Total-ordered key with `canonical_key(g) == canonical_key(h)` iff `g = h`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize)]
pub struct CanonicalKey(Vec<u32>);

/// One state of a section closure.
#[derive(Clone, Debug, Serialize)]
pub struct ClosureState {
    /// Shortest word representing this section.
    pub element: Element,
    pub perm: Perm,
    /// `children[i]` is the state of the section at letter `i + 1`.
    pub children: Vec<usize>,
}

/// The distinct sections `{g|_v : v ∈ X*}` of an element, as a minimal
/// Mealy automaton. State 0 is the element itself; states are numbered in
/// breadth-first order following letters `1..d`.
#[derive(Clone, Debug, Serialize)]
pub struct SectionClosure {
    pub states: Vec<ClosureState>,
}

impl SectionClosure {
    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    /// Index of the trivial section, if some section is trivial.
    pub fn trivial_state(&self) -> Option<usize> {
        self.states.iter().position(|s| s.element.is_empty())
    }

    fn key(&self) -> CanonicalKey {
        let mut out = Vec::new();
        for s in &self.states {
            out.extend(s.perm.images().map(|i| i as u32));
            out.extend(s.children.iter().map(|&c| c as u32));
        }
        CanonicalKey(out)
    }
}

pub fn section_closure(g: &Element) -> SectionClosure {
    let group = g.group();
    let aut = SectionAutomaton::explore(group, g.letters());
    let (class, count) = aut.bisimulation_classes();

    // shortest (then smallest) word per class
    let mut rep: Vec<Option<usize>> = vec![None; count];
    for (node, &c) in class.iter().enumerate() {
        let better = match rep[c] {
            None => true,
            Some(r) => {
                let (a, b) = (&aut.words[node], &aut.words[r]);
                (a.len(), a) < (b.len(), b)
            }
        };
        if better {
            rep[c] = Some(node);
        }
    }

    let mut number: Vec<Option<usize>> = vec![None; count];
    let mut order = vec![class[0]];
    number[class[0]] = Some(0);
    let mut i = 0;
    while i < order.len() {
        let node = rep[order[i]].unwrap();
        for &child in &aut.children[node] {
            let c = class[child];
            if number[c].is_none() {
                number[c] = Some(order.len());
                order.push(c);
            }
        }
        i += 1;
    }

    let states = order
        .iter()
        .map(|&c| {
            let node = rep[c].unwrap();
            ClosureState {
                element: Element::from_reduced(group, aut.words[node].clone()),
                perm: aut.perms[node].clone(),
                children: aut.children[node]
                    .iter()
                    .map(|&ch| number[class[ch]].unwrap())
                    .collect(),
            }
        })
        .collect();
    SectionClosure { states }
}

pub fn canonical_key(g: &Element) -> CanonicalKey {
    section_closure(g).key()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "value", rename_all = "snake_case")]
pub enum OrderResult {
    Exact(u64),
    ExceedsBound(u64),
}

pub const DEFAULT_ORDER_BOUND: u64 = 64;

/// Smallest `n ≤ bound` with `gⁿ = 1`.
///
/// Powers are built one multiplication at a time, so odd orders are found;
/// a repeated power `gⁿ = gᵐ` with `m < n` forces `g^{n-m} = 1`, so the first
/// repeat is always a return to the identity and the triviality test suffices.
pub fn order(g: &Element, bound: u64) -> OrderResult {
    let group = g.group();
    let mut power: Word = Vec::new();
    for n in 1..=bound {
        for &l in g.letters() {
            push_reduced(&mut power, l);
        }
        if is_trivial_word(group, &power) {
            return OrderResult::Exact(n);
        }
    }
    OrderResult::ExceedsBound(bound)
}

#[derive(Clone, Debug, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum PortraitNode {
    Internal {
        vertex: Vertex,
        perm: Perm,
        children: Vec<PortraitNode>,
    },
    Leaf {
        vertex: Vertex,
        residual: Element,
    },
}

impl PortraitNode {
    pub fn vertex(&self) -> &Vertex {
        match self {
            PortraitNode::Internal { vertex, .. } | PortraitNode::Leaf { vertex, .. } => vertex,
        }
    }
}

/// Root permutations of all sections down to `depth`, with the residual
/// sections at depth `depth` as leaves.
#[derive(Clone, Debug, Serialize)]
pub struct Portrait {
    pub depth: usize,
    pub root: PortraitNode,
}

impl Portrait {
    /// Permutation at `v`, if `v` is an internal node.
    pub fn perm_at(&self, v: &Vertex) -> Option<&Perm> {
        let mut node = &self.root;
        for &x in v.letters() {
            match node {
                PortraitNode::Internal { children, .. } => node = &children[x as usize],
                PortraitNode::Leaf { .. } => return None,
            }
        }
        match node {
            PortraitNode::Internal { perm, .. } => Some(perm),
            PortraitNode::Leaf { .. } => None,
        }
    }

    pub fn leaves(&self) -> Vec<(&Vertex, &Element)> {
        fn walk<'a>(n: &'a PortraitNode, out: &mut Vec<(&'a Vertex, &'a Element)>) {
            match n {
                PortraitNode::Internal { children, .. } => {
                    children.iter().for_each(|c| walk(c, out))
                }
                PortraitNode::Leaf { vertex, residual } => out.push((vertex, residual)),
            }
        }
        let mut out = Vec::new();
        walk(&self.root, &mut out);
        out
    }
}

pub fn portrait(g: &Element, depth: usize) -> Portrait {
    fn build(
        group: &std::sync::Arc<GroupDef>,
        word: Word,
        vertex: Vertex,
        left: usize,
    ) -> PortraitNode {
        if left == 0 {
            return PortraitNode::Leaf {
                vertex,
                residual: Element::from_reduced(group, word),
            };
        }
        let (mut slots, perm) = coords_raw(group, &word);
        let children = (0..group.degree())
            .map(|i| {
                let s = std::mem::take(&mut slots[perm.apply(i)]);
                build(group, s, vertex.child(i as u8), left - 1)
            })
            .collect();
        PortraitNode::Internal {
            vertex,
            perm,
            children,
        }
    }
    Portrait {
        depth,
        root: build(g.group(), g.letters().to_vec(), Vertex::root(), depth),
    }
}

/// `α_0, …, α_n`: the number of vertices on each level with nontrivial section.
pub fn activity_sequence(g: &Element, n: usize) -> Vec<u64> {
    let group = g.group();
    let mut trivial: HashMap<Word, bool> = HashMap::new();
    let mut is_triv = |w: &Word| -> bool {
        if let Some(&t) = trivial.get(w) {
            return t;
        }
        let t = is_trivial_word(group, w);
        trivial.insert(w.clone(), t);
        t
    };

    let mut out = Vec::with_capacity(n + 1);
    let mut level: HashMap<Word, u64> = HashMap::new();
    if !is_triv(&g.letters().to_vec()) {
        level.insert(g.letters().to_vec(), 1);
    }
    out.push(level.values().sum());
    for _ in 0..n {
        let mut next: HashMap<Word, u64> = HashMap::new();
        for (w, count) in &level {
            let (slots, _) = coords_raw(group, w);
            for s in slots {
                if !is_triv(&s) {
                    *next.entry(s).or_insert(0) += count;
                }
            }
        }
        level = next;
        out.push(level.values().sum());
    }
    out
}

/// Smallest `n ≤ max_depth` such that every section on level `n` is trivial.
pub fn finitary_depth(g: &Element, max_depth: usize) -> Option<usize> {
    activity_sequence(g, max_depth).iter().position(|&a| a == 0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::word::parse_word;

    #[test]
    fn triviality_examples() {
        let g = corpus::grigorchuk();
        assert!(is_trivial(&parse_word("a a", &g).unwrap()));
        assert!(is_trivial(&parse_word("b c d", &g).unwrap()));
        assert!(!is_trivial(&parse_word("(a b)^2", &g).unwrap()));
        for x in ["b b", "c c", "d d"] {
            assert!(is_trivial(&parse_word(x, &g).unwrap()));
        }
    }

    #[test]
    fn equality_examples() {
        let g = corpus::grigorchuk();
        let w = |t| parse_word(t, &g).unwrap();
        assert!(equals(&w("b"), &w("c d")).unwrap());
        assert!(equals(&w("a b c"), &w("a b c")).unwrap());
        let b = corpus::basilica();
        let w = |t| parse_word(t, &b).unwrap();
        assert!(!equals(&w("a b"), &w("b a")).unwrap());
    }

    #[test]
    fn canonical_keys() {
        let g = corpus::grigorchuk();
        let w = |t| parse_word(t, &g).unwrap();
        assert_eq!(canonical_key(&w("b c d")), canonical_key(&w("1")));
        assert_eq!(canonical_key(&w("a b a")), canonical_key(&w("a b a")));
        let keys: HashSet<_> = ["a", "b", "c", "d", "1"]
            .iter()
            .map(|t| canonical_key(&w(t)))
            .collect();
        assert_eq!(keys.len(), 5);
        assert_eq!(canonical_key(&w("b")), canonical_key(&w("d c")));
    }

    #[test]
    fn orders() {
        let g = corpus::grigorchuk();
        assert_eq!(
            order(&parse_word("a", &g).unwrap(), 10),
            OrderResult::Exact(2)
        );
        assert_eq!(
            order(&parse_word("a d", &g).unwrap(), 10),
            OrderResult::Exact(4)
        );
        assert_eq!(
            order(&parse_word("1", &g).unwrap(), 10),
            OrderResult::Exact(1)
        );
        let b = corpus::basilica();
        assert_eq!(
            order(&parse_word("a", &b).unwrap(), 64),
            OrderResult::ExceedsBound(64)
        );
    }

    #[test]
    fn portraits() {
        let g = corpus::grigorchuk();
        let p = portrait(&parse_word("a", &g).unwrap(), 1);
        assert_eq!(p.perm_at(&Vertex::root()), Some(&Perm::swap(2)));
        assert!(p.leaves().iter().all(|(_, e)| e.is_empty()));

        let id = portrait(&parse_word("1", &g).unwrap(), 3);
        for level in 0..3 {
            for v in Vertex::level(level, 2) {
                assert!(id.perm_at(&v).unwrap().is_identity());
            }
        }

        let b = corpus::basilica();
        let p = portrait(&parse_word("b", &b).unwrap(), 1);
        assert_eq!(p.perm_at(&Vertex::root()), Some(&Perm::swap(2)));
        let leaves: Vec<String> = p.leaves().iter().map(|(_, e)| e.to_string()).collect();
        // keyed by vertex: b|_1 = a, b|_2 = 1
        assert_eq!(leaves, vec!["a", "1"]);
    }

    #[test]
    fn activity() {
        let g = corpus::grigorchuk();
        assert_eq!(
            activity_sequence(&parse_word("a", &g).unwrap(), 4),
            vec![1, 0, 0, 0, 0]
        );
        assert_eq!(
            activity_sequence(&parse_word("1", &g).unwrap(), 3),
            vec![0, 0, 0, 0]
        );
        assert_eq!(
            activity_sequence(&parse_word("b", &g).unwrap(), 5),
            vec![1, 2, 2, 1, 2, 2]
        );
        assert_eq!(finitary_depth(&parse_word("a", &g).unwrap(), 5), Some(1));
        assert_eq!(finitary_depth(&parse_word("b", &g).unwrap(), 8), None);
    }

    #[test]
    fn closures() {
        let g = corpus::grigorchuk();
        let c = section_closure(&parse_word("b", &g).unwrap());
        let names: HashSet<String> = c.states.iter().map(|s| s.element.to_string()).collect();
        let expected: HashSet<String> = ["b", "a", "c", "d", "1"]
            .iter()
            .map(|s| s.to_string())
            .collect();
        assert_eq!(names, expected);
        assert_eq!(c.states[0].element.to_string(), "b");

        let id = section_closure(&parse_word("1", &g).unwrap());
        assert_eq!(id.len(), 1);

        let b = corpus::basilica();
        let c = section_closure(&parse_word("a", &b).unwrap());
        let names: HashSet<String> = c.states.iter().map(|s| s.element.to_string()).collect();
        assert_eq!(
            names,
            ["a", "b", "1"].iter().map(|s| s.to_string()).collect()
        );
    }

    #[test]
    fn closure_merges_equal_words() {
        let g = corpus::grigorchuk();
        // b·c·d is trivial; its closure collapses to the identity
        let c = section_closure(&parse_word("b c d", &g).unwrap());
        assert_eq!(c.len(), 1);
        assert!(c.states[0].perm.is_identity());
    }
}
