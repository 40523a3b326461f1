//! Exhaustive nim-values of every position of the achievement game.
//!
//! Positions are subsets of the group stored as bitmasks, so the table has
//! `2^|G|` entries. This is the independent check on the structure digraph:
//! it never looks at structure classes, only at which positions generate.

use std::collections::HashMap;

use serde::Serialize;

use crate::digraph::StructureDigraph;
use crate::error::{Error, Result};
use crate::lattice::SubgroupLattice;
use crate::set::ElementSet;

pub const DEFAULT_ORACLE_CAP: usize = 16;
pub const MAX_ORACLE_CAP: usize = 20;

/// Nim-values of all positions, indexed by position bitmask.
#[derive(Clone, Debug)]
pub struct NimTable {
    order: usize,
    values: Vec<u8>,
}

impl NimTable {
    /// Computes the table for `lattice`'s group.
    ///
    /// A position is terminal when it generates the group, which includes
    /// the empty position of the trivial group. Supersets have larger
    /// masks, so a single descending sweep over masks sees every option
    /// before the position itself.
    pub fn compute(lattice: &SubgroupLattice, cap: usize) -> Result<Self> {
        let order = lattice.group().order();
        let cap = cap.min(MAX_ORACLE_CAP);
        if order > cap {
            return Err(Error::TooLarge { order, cap });
        }
        let maximals: Vec<u32> = lattice.maximals().map(|m| m.low_mask() as u32).collect();
        let size = 1usize << order;
        let mut values = vec![0u8; size];
        for mask in (0..size).rev() {
            let p = mask as u32;
            if !maximals.iter().any(|&m| p & !m == 0) {
                continue;
            }
            let mut seen = 0u64;
            let mut free = !p & ((size - 1) as u32);
            while free != 0 {
                let bit = free & free.wrapping_neg();
                free ^= bit;
                seen |= 1 << values[(p | bit) as usize];
            }
            values[mask] = seen.trailing_ones() as u8;
        }
        Ok(NimTable { order, values })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn get(&self, position: &ElementSet) -> u32 {
        self.values[position.low_mask() as usize] as u32
    }

    pub fn get_mask(&self, mask: u32) -> u32 {
        self.values[mask as usize] as u32
    }

    /// The nim-value of the game, i.e. of the empty position.
    pub fn start(&self) -> u32 {
        self.values[0] as u32
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// JSON object mapping each position mask (decimal) to its nim-value.
    pub fn to_json(&self) -> String {
        #[derive(Serialize)]
        struct Dump<'a> {
            schema: u32,
            order: usize,
            values: &'a [u8],
        }
        let mut text = serde_json::to_string(&Dump {
            schema: crate::digraph::REPORT_SCHEMA,
            order: self.order,
            values: &self.values,
        })
        .expect("table serializes");
        text.push('\n');
        text
    }
}

/// Builds the nim table and returns the value of the start position.
pub fn oracle_nim(lattice: &SubgroupLattice, cap: usize) -> Result<u32> {
    Ok(NimTable::compute(lattice, cap)?.start())
}

/// Two structure-equivalent positions of equal parity with different
/// nim-values.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvarianceViolation {
    pub closure: ElementSet,
    pub first: ElementSet,
    pub second: ElementSet,
    pub values: (u32, u32),
}

fn closure_mask(maximals: &[u32], full: u32, p: u32) -> u32 {
    maximals
        .iter()
        .filter(|&&m| p & !m == 0)
        .fold(full, |acc, &m| acc & m)
}

/// Every position's value must depend only on its closure and the parity of
/// its size.
pub fn check_structure_invariance(
    lattice: &SubgroupLattice,
    table: &NimTable,
) -> Vec<InvarianceViolation> {
    let maximals: Vec<u32> = lattice.maximals().map(|m| m.low_mask() as u32).collect();
    let full = lattice.group().elements().low_mask() as u32;
    let mut first: HashMap<(u32, u32), (u32, u8)> = HashMap::new();
    let mut violations = Vec::new();
    for mask in 0..table.values.len() as u32 {
        let closure = closure_mask(&maximals, full, mask);
        let value = table.values[mask as usize];
        let key = (closure, mask.count_ones() % 2);
        let (witness, expected) = *first.entry(key).or_insert((mask, value));
        if expected != value {
            violations.push(InvarianceViolation {
                closure: ElementSet::from_mask(closure as u64),
                first: ElementSet::from_mask(witness as u64),
                second: ElementSet::from_mask(mask as u64),
                values: (expected as u32, value as u32),
            });
        }
    }
    violations
}

/// A position whose oracle value disagrees with its class's type.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientMismatch {
    pub position: ElementSet,
    pub class: usize,
    pub oracle: u32,
    pub predicted: u32,
}

/// Compares every position against `e` (even size) or `o` (odd size) of
/// its structure class in `digraph`.
pub fn check_quotient(
    lattice: &SubgroupLattice,
    digraph: &StructureDigraph,
    table: &NimTable,
) -> Vec<QuotientMismatch> {
    let maximals: Vec<u32> = lattice.maximals().map(|m| m.low_mask() as u32).collect();
    let full = lattice.group().elements().low_mask() as u32;
    let class_of: HashMap<u32, usize> = digraph
        .classes()
        .iter()
        .enumerate()
        .map(|(id, c)| (c.subgroup.low_mask() as u32, id))
        .collect();
    let mut mismatches = Vec::new();
    for mask in 0..table.values.len() as u32 {
        let closure = closure_mask(&maximals, full, mask);
        let class = class_of[&closure];
        let etype = digraph.class(class).etype;
        let predicted = if mask.count_ones() % 2 == 0 {
            etype.e
        } else {
            etype.o
        };
        let oracle = table.values[mask as usize] as u32;
        if oracle != predicted {
            mismatches.push(QuotientMismatch {
                position: ElementSet::from_mask(mask as u64),
                class,
                oracle,
                predicted,
            });
        }
    }
    mismatches
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::build_group;
    use std::sync::Arc;

    fn lattice(spec: &str) -> SubgroupLattice {
        SubgroupLattice::new(Arc::new(build_group(spec).unwrap()))
    }

    fn table(spec: &str) -> NimTable {
        NimTable::compute(&lattice(spec), DEFAULT_ORACLE_CAP).unwrap()
    }

    #[test]
    fn z2_by_hand() {
        let t = table("Z2");
        assert_eq!(
            [0b00, 0b01, 0b10, 0b11].map(|m| t.get_mask(m)),
            [2, 1, 0, 0]
        );
    }

    #[test]
    fn trivial_group_start_is_terminal() {
        let t = table("Z1");
        assert_eq!(t.len(), 2);
        assert_eq!(t.start(), 0);
        assert_eq!(t.get_mask(1), 0);
    }

    #[test]
    fn generating_position_is_terminal() {
        assert_eq!(table("Z6").get(&ElementSet::singleton(1)), 0);
    }

    #[test]
    fn start_values() {
        for (spec, nim) in [
            ("Z2", 2),
            ("Z4", 1),
            ("Z6", 4),
            ("Z3", 2),
            ("S3", 3),
            ("Z2^3", 0),
        ] {
            assert_eq!(table(spec).start(), nim, "{spec}");
        }
    }

    #[test]
    fn invariance_and_quotient() {
        for spec in ["Z6", "Z2^3", "S3", "Q8", "Z3^2"] {
            let l = lattice(spec);
            let t = NimTable::compute(&l, DEFAULT_ORACLE_CAP).unwrap();
            assert_eq!(check_structure_invariance(&l, &t), vec![], "{spec}");
            let d = StructureDigraph::build(&l);
            assert_eq!(check_quotient(&l, &d, &t), vec![], "{spec}");
        }
    }

    #[test]
    fn cap_is_enforced() {
        assert!(matches!(
            NimTable::compute(&lattice("Z17"), DEFAULT_ORACLE_CAP),
            Err(Error::TooLarge { order: 17, cap: 16 })
        ));
        assert!(matches!(
            NimTable::compute(&lattice("Z21"), 64),
            Err(Error::TooLarge { cap: 20, .. })
        ));
    }

    #[test]
    fn invariance_detects_a_tampered_table() {
        let l = lattice("Z6");
        let mut t = NimTable::compute(&l, DEFAULT_ORACLE_CAP).unwrap();
        // {1} and {5} both generate Z6 and have odd size.
        t.values[0b100000] = 7;
        let v = check_structure_invariance(&l, &t);
        assert_eq!(v.len(), 1);
        assert_eq!(v[0].second, ElementSet::singleton(5));
        assert_eq!(v[0].values, (0, 7));
    }
}
