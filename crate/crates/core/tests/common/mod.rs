#![allow(dead_code)]

use std::sync::Arc;

use agt::{Element, GroupDef, Letter, Vertex};
use proptest::prelude::*;

pub fn word(g: &Arc<GroupDef>, text: &str) -> Element {
    agt::parse_word(text, g).unwrap()
}

/// Random words over the states and their inverses.
pub fn element(group: Arc<GroupDef>, max_len: usize) -> impl Strategy<Value = Element> {
    let n = group.states().len();
    prop::collection::vec((0..n, any::<bool>()), 0..=max_len).prop_map(move |letters| {
        Element::from_letters(
            &group,
            letters.into_iter().map(|(s, inv)| Letter::new(s, inv)),
        )
    })
}

pub fn vertex(degree: usize, max_len: usize) -> impl Strategy<Value = Vertex> {
    prop::collection::vec(0..degree as u8, 0..=max_len).prop_map(Vertex::from_letters)
}

/// Either corpus group, chosen by the flag.
pub fn corpus_group(grigorchuk: bool) -> Arc<GroupDef> {
    if grigorchuk {
        agt::corpus::grigorchuk()
    } else {
        agt::corpus::basilica()
    }
}

/// A random element of one of the corpus groups.
pub fn corpus_element(max_len: usize) -> impl Strategy<Value = Element> {
    any::<bool>().prop_flat_map(move |g| element(corpus_group(g), max_len))
}
pub mod props;
