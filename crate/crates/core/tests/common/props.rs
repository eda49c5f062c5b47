//! Property bodies shared by the property tests and the acceptance runner.
#![allow(dead_code)]

use std::sync::OnceLock;

use agt::subgroups::{
    commutator_witness, commute, is_rist_witness, orbits, rist_elements, stabilizer_gens,
    vertex_stabilizer_gens, GenSet,
};
use agt::{canonical_key, equals, Element, Vertex};
use proptest::prelude::*;
use proptest::test_runner::TestCaseError;

use super::{corpus_group, element, vertex, word};

type Check = Result<(), TestCaseError>;

/// Two elements and a vertex over the same corpus group.
pub fn pair_and_vertex(
    len: usize,
    depth: usize,
) -> impl Strategy<Value = (Element, Element, Vertex)> {
    any::<bool>().prop_flat_map(move |g| {
        let group = corpus_group(g);
        (
            element(group.clone(), len),
            element(group, len),
            vertex(2, depth),
        )
    })
}

pub fn element_and_two_vertices(
    len: usize,
    depth: usize,
) -> impl Strategy<Value = (Element, Vertex, Vertex)> {
    any::<bool>().prop_flat_map(move |b| {
        (
            element(corpus_group(b), len),
            vertex(2, depth),
            vertex(2, depth),
        )
    })
}

pub fn action_compatible((g, h, v): (Element, Element, Vertex)) -> Check {
    let gh = g.multiply(&h).unwrap();
    prop_assert_eq!(gh.act(&v).unwrap(), g.act(&h.act(&v).unwrap()).unwrap());
    Ok(())
}

pub fn path_splitting((g, v, w): (Element, Vertex, Vertex)) -> Check {
    let lhs = g.act(&v.concat(&w)).unwrap();
    let rhs = g
        .act(&v)
        .unwrap()
        .concat(&g.section(&v).unwrap().act(&w).unwrap());
    prop_assert_eq!(lhs, rhs);
    Ok(())
}

pub fn section_chain((g, v, w): (Element, Vertex, Vertex)) -> Check {
    let left = g.section(&v).unwrap().section(&w).unwrap();
    let right = g.section(&v.concat(&w)).unwrap();
    prop_assert!(equals(&left, &right).unwrap());
    Ok(())
}

pub fn key_matches_equals((g, h, _): (Element, Element, Vertex)) -> Check {
    prop_assert_eq!(
        equals(&g, &h).unwrap(),
        canonical_key(&g) == canonical_key(&h)
    );
    Ok(())
}

/// Generators, a level and a vertex over the same corpus group.
pub fn stabilizer_input() -> impl Strategy<Value = (Vec<Element>, usize, Vertex)> {
    any::<bool>().prop_flat_map(|b| {
        (
            prop::collection::vec(element(corpus_group(b), 4), 1..4),
            1..4usize,
            vertex(2, 4),
        )
    })
}

pub fn schreier_fix_targets((gens, level, v): (Vec<Element>, usize, Vertex)) -> Check {
    let s = GenSet::from_elements(gens).unwrap();
    let st = stabilizer_gens(&s, level).unwrap();
    prop_assert!(st.all_fix_target());
    let vs = vertex_stabilizer_gens(&s, &v).unwrap();
    prop_assert!(vs.all_fix_target());
    for g in &vs.generators {
        prop_assert_eq!(&g.act(&v).unwrap(), &v);
    }
    // one transversal element per orbit point
    let table = orbits(&s, v.len());
    let orbit = &table.levels[v.len()].orbits[table.orbit_of(&v).unwrap()];
    prop_assert_eq!(vs.transversal.len(), orbit.len());
    Ok(())
}

pub fn orbit_input() -> impl Strategy<Value = (Vec<Element>, usize)> {
    any::<bool>().prop_flat_map(|b| {
        (
            prop::collection::vec(element(corpus_group(b), 5), 1..4),
            1..7usize,
        )
    })
}

pub fn e_map_well_defined((gens, depth): (Vec<Element>, usize)) -> Check {
    let s = GenSet::from_elements(gens).unwrap();
    let t = orbits(&s, depth);
    prop_assert!(t.is_partition());
    prop_assert!(t.e_well_defined());
    prop_assert!(t.e_surjective());
    Ok(())
}

/// Short rigid-stabilizer witnesses of the Grigorchuk group below the first level.
pub fn rist_pool() -> &'static [(Element, Vertex)] {
    static POOL: OnceLock<Vec<(Element, Vertex)>> = OnceLock::new();
    POOL.get_or_init(|| {
        let g = agt::corpus::grigorchuk();
        let s = GenSet::generators(&g);
        let mut pool = Vec::new();
        for v in ["1", "2"] {
            let v = Vertex::parse(v, 2).unwrap();
            for x in rist_elements(&s, &v, 10).unwrap() {
                pool.push((x, v.clone()));
            }
        }
        assert!(pool.len() >= 8);
        pool
    })
}

pub fn rist_input() -> impl Strategy<Value = (usize, usize, Element, Element)> {
    let g = agt::corpus::grigorchuk();
    (0..64usize, 0..64usize, element(g.clone(), 5), element(g, 5))
}

/// Conjugates of two pool witnesses: each is supported below the conjugated
/// vertex, and they commute when those vertices are incomparable.
pub fn disjoint_rist_commute((i, j, cx, cy): (usize, usize, Element, Element)) -> Check {
    let pool = rist_pool();
    let (x, v) = &pool[i % pool.len()];
    let (y, u) = &pool[j % pool.len()];
    let x = x.conjugate(&cx).unwrap();
    let y = y.conjugate(&cy).unwrap();
    let v = cx.invert().act(v).unwrap();
    let u = cy.invert().act(u).unwrap();
    prop_assert!(is_rist_witness(&x, &v));
    prop_assert!(is_rist_witness(&y, &u));
    let comparable = v.letters().starts_with(u.letters()) || u.letters().starts_with(v.letters());
    if !comparable {
        prop_assert!(commute(&x, &y).unwrap());
    }
    Ok(())
}

pub fn witness_input() -> impl Strategy<Value = (Element, Element, usize)> {
    any::<bool>().prop_flat_map(|b| {
        let group = corpus_group(b);
        (element(group.clone(), 6), element(group, 6), 1..=2usize)
    })
}

/// `g²` fixes the first level; multiplying by a first-level-fixing element
/// with an active section makes the section at `k` move `m`.
pub fn commutator_witness_holds((g, w, m): (Element, Element, usize)) -> Check {
    let group = g.group().clone();
    let (fix, k) = if group.name() == "basilica" {
        ("a", 2)
    } else {
        ("b", 1)
    };
    let mut g = g.multiply(&g).unwrap();
    let kv = Vertex::from_letters(vec![(k - 1) as u8]);
    if g.section(&kv).unwrap().root_perm().is_identity() {
        g = g.multiply(&word(&group, fix)).unwrap();
    }
    let r = commutator_witness(&g, k, m, &w).unwrap();
    prop_assert!(r.verified);
    let target = Vertex::from_letters(vec![(k - 1) as u8, (m - 1) as u8]);
    prop_assert_eq!(&r.vertex, &target);
    let lifted = Element::from_letters(r.commutator.group(), w.letters().iter().copied());
    prop_assert!(equals(&r.commutator.section(&target).unwrap(), &lifted).unwrap());
    Ok(())
}
