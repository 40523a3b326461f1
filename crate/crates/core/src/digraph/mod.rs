//! The structure digraph of the achievement game.
//!
//! Two positions are structure equivalent when they have the same interval
//! closure `⌈P⌉`. The equivalence classes `X_I`, indexed by the closed
//! subgroup `I`, form a DAG whose arcs follow the game's moves. Types are
//! computed on this quotient instead of on the `2^|G|` positions.

mod dot;
mod report;
mod restrictions;

pub use report::{ClassReport, GroupReport, REPORT_SCHEMA};
pub use restrictions::{Rule, Violation};

use std::collections::{HashMap, VecDeque};
use std::path::Path;
use std::sync::Arc;

use crate::calculus::{emex_p, ExtendedType, Type};
use crate::error::{Error, Result};
use crate::group::{build_group, parity, Group};
use crate::lattice::SubgroupLattice;
use crate::set::ElementSet;

/// Index of a class within its [`StructureDigraph`].
pub type ClassId = usize;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructureClass {
    pub subgroup: ElementSet,
    pub parity: u8,
    /// Shortest distance to the terminal class.
    pub deficiency: usize,
    /// Sorted, without duplicates.
    pub options: Vec<ClassId>,
    pub etype: ExtendedType,
    /// Least `l` with the class in `D_{k,l}`: 0 when every option has lower
    /// deficiency, otherwise one more than the largest layer among
    /// same-deficiency options.
    pub layer: usize,
}

impl StructureClass {
    pub fn size(&self) -> usize {
        self.subgroup.len()
    }

    pub fn ty(&self) -> Type {
        self.etype.truncate()
    }

    pub fn smoothness(&self) -> u8 {
        self.etype.s
    }
}

/// Classes are stored sorted by `(deficiency, size, bit pattern)`, so the
/// terminal class `X_G` is always id 0.
#[derive(Clone, Debug)]
pub struct StructureDigraph {
    group: Arc<Group>,
    classes: Vec<StructureClass>,
    root: ClassId,
}

pub const TERMINAL: ClassId = 0;

impl StructureDigraph {
    /// Builds the digraph reachable from `X_Φ(G)` and computes extended types.
    pub fn build(lattice: &SubgroupLattice) -> Self {
        let group = lattice.group().clone();
        let whole = group.elements();
        let start = lattice.frattini();

        let mut index: HashMap<ElementSet, usize> = HashMap::from([(start, 0)]);
        let mut subgroups = vec![start];
        let mut arcs: Vec<Vec<usize>> = Vec::new();
        let mut i = 0;
        while i < subgroups.len() {
            let current = subgroups[i];
            let mut options = Vec::new();
            for g in whole.difference(&current).iter() {
                let mut next = current;
                next.insert(g);
                let closed = lattice.interval_closure(&next);
                let id = *index.entry(closed).or_insert_with(|| {
                    subgroups.push(closed);
                    subgroups.len() - 1
                });
                options.push(id);
            }
            options.sort_unstable();
            options.dedup();
            arcs.push(options);
            i += 1;
        }

        let terminal = index[&whole];
        let deficiency = distances_to(terminal, &arcs);

        let mut order: Vec<usize> = (0..subgroups.len()).collect();
        order.sort_by_key(|&c| (deficiency[c], subgroups[c].len(), subgroups[c]));
        let mut rank = vec![0; order.len()];
        for (new, &old) in order.iter().enumerate() {
            rank[old] = new;
        }
        let classes = order
            .iter()
            .map(|&old| {
                let mut options: Vec<ClassId> = arcs[old].iter().map(|&o| rank[o]).collect();
                options.sort_unstable();
                StructureClass {
                    subgroup: subgroups[old],
                    parity: parity(subgroups[old].len()),
                    deficiency: deficiency[old],
                    options,
                    etype: ExtendedType::new(0, 0, 0, 2),
                    layer: 0,
                }
            })
            .collect();

        let mut digraph = StructureDigraph {
            group,
            classes,
            root: rank[0],
        };
        debug_assert_eq!(rank[terminal], TERMINAL);
        digraph.compute_types();
        digraph
    }

    /// Builds the group from `spec` and analyses it, optionally through the
    /// lattice cache.
    pub fn from_spec(spec: &str, cache_dir: Option<&Path>) -> Result<Self> {
        let group = Arc::new(build_group(spec)?);
        let lattice = match cache_dir {
            Some(dir) => SubgroupLattice::cached(group, dir)?,
            None => SubgroupLattice::new(group),
        };
        Ok(Self::build(&lattice))
    }

    /// Recomputes types, smoothness and layers from the current arcs.
    ///
    /// Classes are processed in decreasing subgroup size, which is a
    /// topological order because every arc strictly enlarges the subgroup.
    pub fn compute_types(&mut self) {
        let mut order: Vec<ClassId> = (0..self.classes.len()).collect();
        order.sort_by_key(|&c| std::cmp::Reverse(self.classes[c].size()));
        for c in order {
            let class = &self.classes[c];
            let k = class.deficiency;
            let mut same = Vec::new();
            let mut lower = Vec::new();
            let mut layer = 0;
            for &o in &class.options {
                let option = &self.classes[o];
                if option.deficiency == k {
                    same.push(option.etype);
                    layer = layer.max(option.layer + 1);
                } else {
                    lower.push(option.etype);
                }
            }
            let etype = if class.options.is_empty() {
                ExtendedType::new(class.parity, 0, 0, if class.parity == 0 { 2 } else { 0 })
            } else {
                emex_p(class.parity, &same, &lower)
            };
            let class = &mut self.classes[c];
            class.etype = etype;
            class.layer = layer;
        }
    }

    pub fn group(&self) -> &Arc<Group> {
        &self.group
    }

    pub fn classes(&self) -> &[StructureClass] {
        &self.classes
    }

    pub fn class(&self, id: ClassId) -> &StructureClass {
        &self.classes[id]
    }

    /// The class of the starting position, `X_Φ(G)`.
    pub fn root(&self) -> ClassId {
        self.root
    }

    pub fn terminal(&self) -> ClassId {
        TERMINAL
    }

    pub fn arc_count(&self) -> usize {
        self.classes.iter().map(|c| c.options.len()).sum()
    }

    pub fn find(&self, subgroup: &ElementSet) -> Option<ClassId> {
        self.classes.iter().position(|c| &c.subgroup == subgroup)
    }

    /// The nim-value of the game: `e` of the root class.
    pub fn nim_value(&self) -> u32 {
        self.classes[self.root].etype.e
    }

    /// Adds an arc without any consistency checks and without recomputing
    /// types. Only useful for building corrupted fixtures.
    #[doc(hidden)]
    pub fn inject_arc(&mut self, from: ClassId, to: ClassId) {
        let options = &mut self.classes[from].options;
        if let Err(pos) = options.binary_search(&to) {
            options.insert(pos, to);
        }
    }

    /// Checks the odd-order type table: every class in `O_0`, `O_1`, `O_2`
    /// and `O_{≥3}` has type `(1,0,0)`, `(1,2,1)`, `(1,2,0)` and `(1,1,0)`.
    pub fn verify_odd_order_types(&self) -> Result<bool> {
        if self.group.parity() != 1 {
            return Err(Error::WrongParity {
                operation: "the odd-order type check",
                required: "odd",
                order: self.group.order(),
            });
        }
        Ok(self
            .classes
            .iter()
            .all(|c| c.ty() == odd_order_type(c.deficiency)))
    }

    /// Checks, for every odd class of deficiency `k + 1`, whether it has an
    /// even option of deficiency `k`.
    pub fn check_even_option_conjecture(&self) -> Result<ConjectureReport> {
        if self.group.parity() != 0 {
            return Err(Error::WrongParity {
                operation: "the even-option conjecture",
                required: "even",
                order: self.group.order(),
            });
        }
        let mut checked = 0;
        let mut counterexamples = Vec::new();
        for (id, class) in self.classes.iter().enumerate() {
            if class.parity == 0 || class.deficiency == 0 {
                continue;
            }
            checked += 1;
            let witnessed = class.options.iter().any(|&o| {
                let option = &self.classes[o];
                option.parity == 0 && option.deficiency + 1 == class.deficiency
            });
            if !witnessed {
                counterexamples.push(id);
            }
        }
        Ok(ConjectureReport {
            checked,
            counterexamples,
        })
    }
}

/// The type forced on a class of deficiency `k` in a group of odd order.
pub fn odd_order_type(k: usize) -> Type {
    match k {
        0 => Type::new(1, 0, 0),
        1 => Type::new(1, 2, 1),
        2 => Type::new(1, 2, 0),
        _ => Type::new(1, 1, 0),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConjectureReport {
    /// Number of odd non-terminal classes examined.
    pub checked: usize,
    pub counterexamples: Vec<ClassId>,
}

impl ConjectureReport {
    pub fn holds(&self) -> bool {
        self.counterexamples.is_empty()
    }
}

/// Breadth-first distances to `target` along reversed arcs.
fn distances_to(target: usize, arcs: &[Vec<usize>]) -> Vec<usize> {
    let mut reverse = vec![Vec::new(); arcs.len()];
    for (from, options) in arcs.iter().enumerate() {
        for &to in options {
            reverse[to].push(from);
        }
    }
    let mut dist = vec![usize::MAX; arcs.len()];
    dist[target] = 0;
    let mut queue = VecDeque::from([target]);
    while let Some(c) = queue.pop_front() {
        for &p in &reverse[c] {
            if dist[p] == usize::MAX {
                dist[p] = dist[c] + 1;
                queue.push_back(p);
            }
        }
    }
    dist
}

/// Builds `spec` and returns the nim-value of its achievement game.
pub fn nim_value_of_game(spec: &str) -> Result<u32> {
    Ok(StructureDigraph::from_spec(spec, None)?.nim_value())
}
