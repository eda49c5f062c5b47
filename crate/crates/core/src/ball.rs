//! Balls in the Cayley graph with respect to `S ∪ S⁻¹`.

use std::collections::HashSet;

use rayon::prelude::*;

use crate::decide::{canonical_key, equals};
use crate::element::Element;
use crate::error::{Error, Result};
use crate::subgroups::GenSet;

pub const DEFAULT_BALL_CAP: usize = 500_000;

/// Spheres of a ball: `spheres[r]` holds one shortest word per element at
/// distance exactly `r`, in breadth-first discovery order.
#[derive(Clone, Debug)]
pub struct Ball {
    pub spheres: Vec<Vec<Element>>,
}

impl Ball {
    /// `|B(0)|, …, |B(R)|`.
    pub fn sizes(&self) -> Vec<usize> {
        self.spheres
            .iter()
            .scan(0, |acc, s| {
                *acc += s.len();
                Some(*acc)
            })
            .collect()
    }
}

fn steps(s: &GenSet) -> Vec<Element> {
    s.elements()
        .iter()
        .flat_map(|g| [g.clone(), g.invert()])
        .collect()
}

/// Breadth-first enumeration deduplicated by canonical keys.
pub fn enumerate_ball(s: &GenSet, radius: usize, cap: usize) -> Result<Ball> {
    let group = s.group();
    let steps = steps(s);
    let identity = Element::identity(group);
    let mut seen = HashSet::new();
    seen.insert(canonical_key(&identity));
    let mut spheres = vec![vec![identity]];
    let mut total = 1;
    for _ in 0..radius {
        let frontier = spheres.last().unwrap();
        let candidates: Vec<Element> = frontier
            .iter()
            .flat_map(|e| steps.iter().map(move |g| e.multiply(g)))
            .collect::<Result<_>>()?;
        let keys: Vec<_> = candidates.par_iter().map(canonical_key).collect();
        let mut sphere = Vec::new();
        for (c, k) in candidates.into_iter().zip(keys) {
            if seen.insert(k) {
                total += 1;
                if total > cap {
                    return Err(Error::BoundExceeded { cap });
                }
                sphere.push(c);
            }
        }
        let done = sphere.is_empty();
        spheres.push(sphere);
        if done {
            // group exhausted; remaining spheres are empty
            while spheres.len() <= radius {
                spheres.push(Vec::new());
            }
            break;
        }
    }
    Ok(Ball { spheres })
}

/// Same enumeration, deduplicated by pairwise `equals` against every element
/// found so far. Quadratic; meant for cross-checking small radii.
pub fn ball_sizes_pairwise(s: &GenSet, radius: usize) -> Result<Vec<usize>> {
    let steps = steps(s);
    let mut found: Vec<Element> = vec![Element::identity(s.group())];
    let mut frontier = found.clone();
    let mut sizes = vec![1];
    for _ in 0..radius {
        let mut next = Vec::new();
        for e in &frontier {
            for g in &steps {
                let c = e.multiply(g)?;
                let mut fresh = true;
                for x in found.iter() {
                    if equals(x, &c)? {
                        fresh = false;
                        break;
                    }
                }
                if fresh {
                    found.push(c.clone());
                    next.push(c);
                }
            }
        }
        sizes.push(found.len());
        frontier = next;
    }
    Ok(sizes)
}
