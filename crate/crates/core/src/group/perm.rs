use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};

use super::Group;

/// A permutation of `0..degree`, stored as its image list.
///
/// Products compose left to right: `(a * b)(x) = b(a(x))`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Permutation(Vec<u16>);

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation((0..degree as u16).collect())
    }

    /// Builds a permutation from 1-based cycles on `degree` points.
    pub fn from_cycles(degree: usize, cycles: &[Vec<usize>]) -> Option<Self> {
        let mut perm = Self::identity(degree);
        for cycle in cycles {
            let mut seen = std::collections::HashSet::new();
            if cycle
                .iter()
                .any(|&p| p == 0 || p > degree || !seen.insert(p))
            {
                return None;
            }
            let mut single = Self::identity(degree);
            for (i, &p) in cycle.iter().enumerate() {
                let q = cycle[(i + 1) % cycle.len()];
                single.0[p - 1] = (q - 1) as u16;
            }
            perm = perm.then(&single);
        }
        Some(perm)
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn image(&self, point: usize) -> usize {
        self.0[point] as usize
    }

    /// `self` followed by `other`.
    pub fn then(&self, other: &Self) -> Self {
        Permutation(self.0.iter().map(|&x| other.0[x as usize]).collect())
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &x)| i == x as usize)
    }
}

/// Cycle notation with 1-based points; the identity prints as `()`.
impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_identity() {
            return f.write_str("()");
        }
        let mut done = vec![false; self.degree()];
        for start in 0..self.degree() {
            if done[start] || self.image(start) == start {
                continue;
            }
            f.write_str("(")?;
            let mut p = start;
            let mut first = true;
            while !done[p] {
                done[p] = true;
                if !first {
                    f.write_str(",")?;
                }
                write!(f, "{}", p + 1)?;
                first = false;
                p = self.image(p);
            }
            f.write_str(")")?;
        }
        Ok(())
    }
}

/// The group generated by `gens`, indexed in breadth-first discovery order
/// from the identity with generators applied on the right in listed order.
pub(super) fn perm_group(
    name: &str,
    degree: usize,
    gens: &[Permutation],
    cap: usize,
) -> Result<Group> {
    let identity = Permutation::identity(degree);
    let mut index: HashMap<Permutation, usize> = HashMap::new();
    let mut elements = vec![identity.clone()];
    index.insert(identity, 0);
    let mut i = 0;
    while i < elements.len() {
        for g in gens {
            let y = elements[i].then(g);
            if !index.contains_key(&y) {
                if elements.len() == cap {
                    return Err(Error::TooLarge {
                        order: cap + 1,
                        cap,
                    });
                }
                index.insert(y.clone(), elements.len());
                elements.push(y);
            }
        }
        i += 1;
    }
    let table = elements
        .iter()
        .map(|a| elements.iter().map(|b| index[&a.then(b)]).collect())
        .collect();
    let labels = elements.iter().map(|p| p.to_string()).collect();
    Group::from_table(name, table, Some(labels))
}
