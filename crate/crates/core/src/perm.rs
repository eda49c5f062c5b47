//! Permutations of a finite alphabet.
//!
//! Letters are stored 0-based internally; everything user-facing (cycle
//! notation, vertices, JSON) is 1-based.

use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// A bijection of `0..d`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm {
    image: Vec<u8>,
}

impl Perm {
    pub fn identity(degree: usize) -> Self {
        Perm {
            image: (0..degree as u8).collect(),
        }
    }

    /// Builds a permutation from 0-based images, rejecting non-bijections.
    pub fn from_images(image: Vec<usize>) -> Result<Self> {
        let d = image.len();
        if d == 0 || d > u8::MAX as usize {
            return Err(Error::BadPerm(format!("unsupported degree {d}")));
        }
        let mut seen = vec![false; d];
        for &i in &image {
            if i >= d || seen[i] {
                return Err(Error::BadPerm(format!(
                    "images {:?} do not form a bijection of 1..{d}",
                    image.iter().map(|x| x + 1).collect::<Vec<_>>()
                )));
            }
            seen[i] = true;
        }
        Ok(Perm {
            image: image.into_iter().map(|i| i as u8).collect(),
        })
    }

    /// Builds a permutation from 1-based cycles such as `[[1, 2]]`.
    pub fn from_cycles(degree: usize, cycles: &[Vec<usize>]) -> Result<Self> {
        let mut image: Vec<usize> = (0..degree).collect();
        let mut used = vec![false; degree];
        for cycle in cycles {
            for (pos, &x) in cycle.iter().enumerate() {
                if x == 0 || x > degree {
                    return Err(Error::BadPerm(format!(
                        "letter {x} outside alphabet 1..{degree}"
                    )));
                }
                if used[x - 1] {
                    return Err(Error::BadPerm(format!("letter {x} repeated in cycles")));
                }
                used[x - 1] = true;
                let next = cycle[(pos + 1) % cycle.len()];
                if next == 0 || next > degree {
                    return Err(Error::BadPerm(format!(
                        "letter {next} outside alphabet 1..{degree}"
                    )));
                }
                image[x - 1] = next - 1;
            }
        }
        Perm::from_images(image)
    }

    /// The transposition of the first two letters; the `ε` of every binary example.
    pub fn swap(degree: usize) -> Self {
        let mut image: Vec<u8> = (0..degree as u8).collect();
        image.swap(0, 1);
        Perm { image }
    }

    pub fn degree(&self) -> usize {
        self.image.len()
    }

    #[inline]
    pub fn apply(&self, letter: usize) -> usize {
        self.image[letter] as usize
    }

    pub fn images(&self) -> impl Iterator<Item = usize> + '_ {
        self.image.iter().map(|&i| i as usize)
    }

    pub fn is_identity(&self) -> bool {
        self.image.iter().enumerate().all(|(i, &x)| i == x as usize)
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Perm) -> Perm {
        debug_assert_eq!(self.degree(), other.degree());
        Perm {
            image: other
                .image
                .iter()
                .map(|&i| self.image[i as usize])
                .collect(),
        }
    }

    pub fn inverse(&self) -> Perm {
        let mut image = vec![0u8; self.degree()];
        for (i, &x) in self.image.iter().enumerate() {
            image[x as usize] = i as u8;
        }
        Perm { image }
    }

    /// Disjoint cycles of length ≥ 2, 1-based, each starting at its smallest letter.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let d = self.degree();
        let mut seen = vec![false; d];
        let mut out = Vec::new();
        for start in 0..d {
            if seen[start] {
                continue;
            }
            let mut cycle = vec![];
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                cycle.push(x + 1);
                x = self.apply(x);
            }
            if cycle.len() > 1 {
                out.push(cycle);
            }
        }
        out
    }
}

impl fmt::Display for Perm {
    /// Cycle notation, `id` for the identity.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return f.write_str("id");
        }
        for c in cycles {
            let body: Vec<String> = c.iter().map(|x| x.to_string()).collect();
            write!(f, "({})", body.join(" "))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Perm{self}")
    }
}

impl Serialize for Perm {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.images().map(|i| i + 1))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cycles_round_trip() {
        let p = Perm::from_cycles(5, &[vec![1, 3, 5], vec![2, 4]]).unwrap();
        assert_eq!(p.to_string(), "(1 3 5)(2 4)");
        assert_eq!(Perm::from_cycles(5, &p.cycles()).unwrap(), p);
    }

    #[test]
    fn compose_applies_right_factor_first() {
        let a = Perm::from_cycles(3, &[vec![1, 2]]).unwrap();
        let b = Perm::from_cycles(3, &[vec![2, 3]]).unwrap();
        // (a∘b)(1) = a(b(1)) = a(1) = 2
        assert_eq!(a.compose(&b).apply(0), 1);
        // (a∘b)(2) = a(3) = 3
        assert_eq!(a.compose(&b).apply(1), 2);
        assert!(a.compose(&a.inverse()).is_identity());
    }

    #[test]
    fn rejects_non_bijections() {
        assert!(matches!(
            Perm::from_images(vec![0, 0]),
            Err(Error::BadPerm(_))
        ));
        assert!(matches!(
            Perm::from_cycles(2, &[vec![1, 3]]),
            Err(Error::BadPerm(_))
        ));
        assert!(matches!(
            Perm::from_cycles(3, &[vec![1, 2], vec![2, 3]]),
            Err(Error::BadPerm(_))
        ));
    }
}
