//! Finite groups stored as Cayley tables.
//!
//! Every group has its identity at index `0`. Constructors index the
//! remaining elements deterministically so that labels, reports and
//! diagrams are reproducible from one run to the next.

mod perm;
mod spec;

pub use perm::Permutation;
pub use spec::{build_group, build_group_with_cap};

use crate::error::{Error, Result};
use crate::set::{ElementSet, MAX_ELEMENTS};

/// Default upper bound on group orders accepted by the constructors.
pub const DEFAULT_ORDER_CAP: usize = 512;

/// The parity `m mod 2`.
pub fn parity(m: usize) -> u8 {
    (m % 2) as u8
}

/// A finite group given by its multiplication table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Group {
    name: String,
    order: usize,
    // Row-major: table[a * order + b] = a·b.
    table: Vec<u16>,
    inverses: Vec<u16>,
    labels: Vec<String>,
}

impl Group {
    /// Validates `table` and wraps it as a group.
    ///
    /// Checks that index `0` is a two-sided identity, that the table is a
    /// Latin square, that every element has a two-sided inverse and that the
    /// operation is associative (exhaustively, `O(n³)`).
    pub fn from_table(
        name: impl Into<String>,
        table: Vec<Vec<usize>>,
        labels: Option<Vec<String>>,
    ) -> Result<Self> {
        let n = table.len();
        if n == 0 {
            return Err(Error::InvalidTable("empty table".into()));
        }
        if n > MAX_ELEMENTS {
            return Err(Error::TooLarge {
                order: n,
                cap: MAX_ELEMENTS,
            });
        }
        let mut flat = Vec::with_capacity(n * n);
        for (a, row) in table.iter().enumerate() {
            if row.len() != n {
                return Err(Error::InvalidTable(format!(
                    "row {a} has {} entries, expected {n}",
                    row.len()
                )));
            }
            for &c in row {
                if c >= n {
                    return Err(Error::InvalidTable(format!(
                        "entry {c} out of range in row {a}"
                    )));
                }
                flat.push(c as u16);
            }
        }
        let labels = match labels {
            Some(l) if l.len() != n => {
                return Err(Error::InvalidTable(format!(
                    "{} labels for {n} elements",
                    l.len()
                )))
            }
            Some(l) => l,
            None => (0..n).map(|i| i.to_string()).collect(),
        };
        let group = Group {
            name: name.into(),
            order: n,
            table: flat,
            inverses: Vec::new(),
            labels,
        };
        group.validate()
    }

    fn validate(mut self) -> Result<Self> {
        let n = self.order;
        for a in 0..n {
            if self.mul(0, a) != a || self.mul(a, 0) != a {
                return Err(Error::InvalidTable(format!("0 is not an identity for {a}")));
            }
        }
        let mut seen = vec![false; n];
        for a in 0..n {
            seen.iter_mut().for_each(|s| *s = false);
            for b in 0..n {
                let c = self.mul(a, b);
                if std::mem::replace(&mut seen[c], true) {
                    return Err(Error::InvalidTable(format!("row {a} repeats {c}")));
                }
            }
            seen.iter_mut().for_each(|s| *s = false);
            for b in 0..n {
                let c = self.mul(b, a);
                if std::mem::replace(&mut seen[c], true) {
                    return Err(Error::InvalidTable(format!("column {a} repeats {c}")));
                }
            }
        }
        for a in 0..n {
            for b in 0..n {
                let ab = self.mul(a, b);
                for c in 0..n {
                    if self.mul(ab, c) != self.mul(a, self.mul(b, c)) {
                        return Err(Error::InvalidTable(format!(
                            "not associative at ({a}, {b}, {c})"
                        )));
                    }
                }
            }
        }
        let mut inverses = Vec::with_capacity(n);
        for a in 0..n {
            let b = (0..n)
                .find(|&b| self.mul(a, b) == 0)
                .expect("Latin square rows contain the identity");
            if self.mul(b, a) != 0 {
                return Err(Error::InvalidTable(format!("{a} has no two-sided inverse")));
            }
            inverses.push(b as u16);
        }
        self.inverses = inverses;
        Ok(self)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn parity(&self) -> u8 {
        parity(self.order)
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b] as usize
    }

    pub fn inverse(&self, a: usize) -> usize {
        self.inverses[a] as usize
    }

    pub fn label(&self, a: usize) -> &str {
        &self.labels[a]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// The raw row-major table, `order * order` entries.
    pub fn table(&self) -> &[u16] {
        &self.table
    }

    pub fn elements(&self) -> ElementSet {
        ElementSet::full(self.order)
    }

    /// Smallest `k >= 1` with `g^k` equal to the identity.
    pub fn element_order(&self, g: usize) -> usize {
        assert!(g < self.order, "element {g} out of range");
        let mut k = 1;
        let mut power = g;
        while power != 0 {
            power = self.mul(power, g);
            k += 1;
        }
        k
    }

    /// The subgroup generated by `set`.
    ///
    /// Generators are taken greedily in index order, skipping any element
    /// already in the partial closure, so only a handful ever drive the
    /// breadth-first pass.
    pub fn generated_subgroup(&self, set: &ElementSet) -> ElementSet {
        self.closure_with_generators(set).0
    }

    /// Like [`generated_subgroup`](Self::generated_subgroup), also returning
    /// the generators that were actually used.
    pub fn closure_with_generators(&self, set: &ElementSet) -> (ElementSet, Vec<usize>) {
        let mut closed = ElementSet::singleton(0);
        let mut elements = vec![0];
        let mut gens = Vec::new();
        for g in set.iter() {
            assert!(g < self.order, "element {g} out of range");
            if closed.contains(g) {
                continue;
            }
            gens.push(g);
            let mut i = 0;
            while i < elements.len() {
                let x = elements[i];
                for &h in &gens {
                    let y = self.mul(x, h);
                    if closed.insert(y) {
                        elements.push(y);
                    }
                }
                i += 1;
            }
        }
        (closed, gens)
    }

    /// Whether `set` is a subgroup: contains the identity and is closed.
    pub fn is_subgroup(&self, set: &ElementSet) -> bool {
        set.contains(0)
            && set
                .iter()
                .all(|a| set.iter().all(|b| set.contains(self.mul(a, b))))
    }

    /// A short human-readable name for a subgroup: `<g1,g2,...>` using a
    /// greedy generating set, or `<e>` with the identity's label for the
    /// trivial subgroup.
    pub fn subgroup_label(&self, subgroup: &ElementSet) -> String {
        let (_, gens) = self.closure_with_generators(subgroup);
        let names: Vec<&str> = if gens.is_empty() {
            vec![self.label(0)]
        } else {
            gens.iter().map(|&g| self.label(g)).collect()
        };
        format!("<{}>", names.join(","))
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (0..a).all(|b| self.mul(a, b) == self.mul(b, a)))
    }
}
