//! The feasible spectrum of extended types.
//!
//! Starting from `Ē₀ = {(0,0,0,2)}`, each layer `Ē_k` collects every
//! extended type that extended type calculus can produce from a feasible
//! pair `(A, B)`, where `B` ranges over subsets of `Ē_{k-1}` and `A` over
//! subsets of the layer under construction. The inner iteration
//! `Ē_{k,0} ⊆ Ē_{k,1} ⊆ …` grows `A`'s pool until it stops changing; the
//! outer iteration stops once two consecutive layers agree.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write;

use serde::Serialize;

use crate::calculus::{emex_p, is_feasible, ExtendedType};
use crate::digraph::{StructureDigraph, REPORT_SCHEMA};
use crate::error::{Error, Result};

pub type TypeSet = BTreeSet<ExtendedType>;

pub const DEFAULT_BUDGET: usize = 32;

/// The bottom layer: only the terminal class of an even group.
pub fn base_layer() -> TypeSet {
    TypeSet::from([ExtendedType::new(0, 0, 0, 2)])
}

#[derive(Clone, Copy, Debug)]
pub struct SpectrumOptions {
    /// Enumerate every pair of subsets instead of deduplicated signatures.
    pub naive: bool,
    /// Maximum number of outer (and inner) iterations.
    pub budget: usize,
}

impl Default for SpectrumOptions {
    fn default() -> Self {
        SpectrumOptions {
            naive: false,
            budget: DEFAULT_BUDGET,
        }
    }
}

/// The layers `Ē_0 ..= Ē_{k*}` with their inner traces.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpectrumLayers {
    layers: Vec<TypeSet>,
    inner: Vec<Vec<TypeSet>>,
    stabilized_at: usize,
}

impl SpectrumLayers {
    /// `Ē_k`; layers past the stabilization index repeat the last one.
    pub fn layer(&self, k: usize) -> &TypeSet {
        &self.layers[k.min(self.stabilized_at)]
    }

    pub fn layers(&self) -> &[TypeSet] {
        &self.layers
    }

    /// The inner sequence `Ē_{k,0}, Ē_{k,1}, …` for `k >= 1`, ending with the
    /// first repeated set. Empty for `k = 0`.
    pub fn inner(&self, k: usize) -> &[TypeSet] {
        &self.inner[k]
    }

    /// The least `k*` with `Ē_{k*} = Ē_{k*+1}`.
    pub fn stabilized_at(&self) -> usize {
        self.stabilized_at
    }

    pub fn union(&self) -> TypeSet {
        self.layers.iter().flatten().copied().collect()
    }

    /// For every type, the deficiencies `k <= k*` whose layer contains it.
    pub fn memberships(&self) -> BTreeMap<ExtendedType, Vec<usize>> {
        let mut rows: BTreeMap<ExtendedType, Vec<usize>> = BTreeMap::new();
        for (k, layer) in self.layers.iter().enumerate() {
            for t in layer {
                rows.entry(*t).or_default().push(k);
            }
        }
        rows
    }

    /// All `(type, k)` pairs with `k <= k*`.
    pub fn pairs(&self) -> BTreeSet<(ExtendedType, usize)> {
        self.layers
            .iter()
            .enumerate()
            .flat_map(|(k, layer)| layer.iter().map(move |t| (*t, k)))
            .collect()
    }

    /// Aligned text: one row per type with its deficiencies; `…` marks types
    /// that persist in every later layer.
    pub fn to_table(&self, trace: bool) -> String {
        let mut out = String::new();
        writeln!(out, "{:<12} k", "etype").unwrap();
        for (t, ks) in self.memberships() {
            let mut list: Vec<String> = ks.iter().map(usize::to_string).collect();
            if ks.last() == Some(&self.stabilized_at) {
                list.push("…".into());
            }
            writeln!(out, "{:<12} {}", t.to_string(), list.join(",")).unwrap();
        }
        writeln!(
            out,
            "{} extended types; stabilized: {} = {}",
            self.union().len(),
            bar(self.stabilized_at, None),
            bar(self.stabilized_at + 1, None)
        )
        .unwrap();
        if trace {
            for (k, inner) in self.inner.iter().enumerate().skip(1) {
                for (l, set) in inner.iter().enumerate() {
                    writeln!(out, "{} = {}", bar(k, Some(l)), format_set(set)).unwrap();
                }
            }
        }
        out
    }

    pub fn to_json(&self, trace: bool) -> String {
        #[derive(Serialize)]
        struct Row {
            etype: [u32; 4],
            k: Vec<usize>,
            persists: bool,
        }
        #[derive(Serialize)]
        struct Doc {
            schema: u32,
            stabilized_at: usize,
            count: usize,
            rows: Vec<Row>,
            #[serde(skip_serializing_if = "Option::is_none")]
            trace: Option<Vec<Vec<Vec<[u32; 4]>>>>,
        }
        let quad = |t: &ExtendedType| [t.p as u32, t.e, t.o, t.s as u32];
        let rows = self
            .memberships()
            .into_iter()
            .map(|(t, k)| Row {
                etype: quad(&t),
                persists: k.last() == Some(&self.stabilized_at),
                k,
            })
            .collect();
        let trace = trace.then(|| {
            self.inner
                .iter()
                .map(|inner| inner.iter().map(|s| s.iter().map(quad).collect()).collect())
                .collect()
        });
        let doc = Doc {
            schema: REPORT_SCHEMA,
            stabilized_at: self.stabilized_at,
            count: self.union().len(),
            rows,
            trace,
        };
        let mut text = serde_json::to_string_pretty(&doc).expect("spectrum serializes");
        text.push('\n');
        text
    }
}

fn subscript(n: usize) -> String {
    n.to_string()
        .chars()
        .map(|c| char::from_u32('₀' as u32 + c.to_digit(10).unwrap()).unwrap())
        .collect()
}

fn bar(k: usize, l: Option<usize>) -> String {
    match l {
        None => format!("Ē{}", subscript(k)),
        Some(l) => format!("Ē{},{}", subscript(k), subscript(l)),
    }
}

pub fn format_set(set: &TypeSet) -> String {
    let items: Vec<String> = set.iter().map(ExtendedType::to_string).collect();
    format!("{{{}}}", items.join(","))
}

/// Iterates layers from [`base_layer`] until two consecutive layers agree.
pub fn feasible_spectrum(options: SpectrumOptions) -> Result<SpectrumLayers> {
    let mut layers = vec![base_layer()];
    let mut inner = vec![Vec::new()];
    loop {
        let k = layers.len();
        if k > options.budget {
            return Err(Error::IterationBudget {
                budget: options.budget,
            });
        }
        let (next, trace) = next_layer(layers.last().unwrap(), options)?;
        if &next == layers.last().unwrap() {
            return Ok(SpectrumLayers {
                stabilized_at: k - 1,
                layers,
                inner,
            });
        }
        layers.push(next);
        inner.push(trace);
    }
}

/// Computes `Ē_k` from `Ē_{k-1}`, returning it with the inner sequence.
pub fn next_layer(prev: &TypeSet, options: SpectrumOptions) -> Result<(TypeSet, Vec<TypeSet>)> {
    let step: fn(&TypeSet, &TypeSet) -> TypeSet = if options.naive {
        naive_step
    } else {
        signature_step
    };
    let mut current = step(&TypeSet::new(), prev);
    let mut trace = vec![current.clone()];
    loop {
        if trace.len() > options.budget {
            return Err(Error::IterationBudget {
                budget: options.budget,
            });
        }
        let next = step(&current, prev);
        debug_assert!(current.is_subset(&next), "inner layers must grow");
        trace.push(next.clone());
        if next == current {
            return Ok((next, trace));
        }
        current = next;
    }
}

/// One inner step by brute force over `P(pool) × P(prev)`.
fn naive_step(pool: &TypeSet, prev: &TypeSet) -> TypeSet {
    let pool: Vec<ExtendedType> = pool.iter().copied().collect();
    let prev: Vec<ExtendedType> = prev.iter().copied().collect();
    assert!(
        pool.len() < 24 && prev.len() < 24,
        "naive enumeration too large"
    );
    let pick = |items: &[ExtendedType], mask: usize| -> Vec<ExtendedType> {
        (0..items.len())
            .filter(|i| mask >> i & 1 == 1)
            .map(|i| items[i])
            .collect()
    };
    let mut out = TypeSet::new();
    for a_mask in 0..1usize << pool.len() {
        let a = pick(&pool, a_mask);
        for b_mask in 0..1usize << prev.len() {
            let b = pick(&prev, b_mask);
            for p in 0..2 {
                if is_feasible(p, &a, &b) {
                    out.insert(emex_p(p, &a, &b));
                }
            }
        }
    }
    out
}

/// Everything `emex_p` and `is_feasible` read from a set of extended types:
/// the `e` values, the `o` values, the parities and the smoothness values.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
struct Signature {
    evens: u64,
    odds: u64,
    parities: u8,
    smoothness: u8,
}

impl Signature {
    fn with(self, t: &ExtendedType) -> Self {
        assert!(
            t.e < 64 && t.o < 64,
            "nim-value {t} too large for a signature"
        );
        Signature {
            evens: self.evens | 1 << t.e,
            odds: self.odds | 1 << t.o,
            parities: self.parities | 1 << t.p,
            smoothness: self.smoothness | 1 << t.s,
        }
    }

    fn has_parity(&self, p: u8) -> bool {
        self.parities >> p & 1 == 1
    }

    fn has_smoothness(&self, s: u8) -> bool {
        self.smoothness >> s & 1 == 1
    }

    fn is_empty(&self) -> bool {
        self.parities == 0
    }
}

/// Signatures of every subset of `set`, the empty subset included.
fn signatures(set: &TypeSet) -> BTreeSet<Signature> {
    let mut out = BTreeSet::from([Signature::default()]);
    for t in set {
        let extended: Vec<Signature> = out.iter().map(|s| s.with(t)).collect();
        out.extend(extended);
    }
    out
}

fn mex_bits(bits: u64) -> u32 {
    bits.trailing_ones()
}

fn signature_emex(p: u8, a: &Signature, b: &Signature) -> ExtendedType {
    let evens = a.evens | b.evens;
    let odds = a.odds | b.odds;
    if p == 0 {
        let e = mex_bits(odds);
        ExtendedType::new(0, e, mex_bits(evens | 1 << e), 2)
    } else {
        let o = mex_bits(evens);
        let s = if a.has_parity(0) { 1 } else { 0 };
        ExtendedType::new(1, mex_bits(odds | 1 << o), o, s)
    }
}

fn signature_feasible(p: u8, a: &Signature, b: &Signature) -> bool {
    if b.is_empty() {
        return false;
    }
    if p == 0 {
        !a.has_parity(1) && !b.has_parity(1)
    } else {
        let even_same = a.has_parity(0);
        (even_same || b.has_parity(0))
            && (!a.has_smoothness(1) || even_same)
            && (!b.has_smoothness(0) || !even_same)
    }
}

fn signature_step(pool: &TypeSet, prev: &TypeSet) -> TypeSet {
    let a_sigs = signatures(pool);
    let b_sigs = signatures(prev);
    let mut out = TypeSet::new();
    for a in &a_sigs {
        for b in &b_sigs {
            for p in 0..2 {
                if signature_feasible(p, a, b) {
                    out.insert(signature_emex(p, a, b));
                }
            }
        }
    }
    out
}

/// Extended types observed in actual even-order groups, checked against the
/// feasible spectrum.
#[derive(Clone, Debug, Default, Serialize)]
pub struct EmpiricalSpectrum {
    /// `E_k` per deficiency.
    pub observed: BTreeMap<usize, TypeSet>,
    /// Observed `(type, k)` pairs missing from `Ē_k`, with the group name.
    pub outside: Vec<(ExtendedType, usize, String)>,
    /// Pairs of the feasible spectrum seen in some group.
    pub witnessed: Vec<(ExtendedType, usize)>,
    /// Pairs of the feasible spectrum not seen in any group.
    pub unwitnessed: Vec<(ExtendedType, usize)>,
    /// Odd-order groups with the result of the odd-order type check.
    pub odd_checks: Vec<(String, bool)>,
}

impl EmpiricalSpectrum {
    pub fn contained(&self) -> bool {
        self.outside.is_empty()
    }
}

/// Collects `(etype, deficiency)` from every class of every even-order
/// digraph; odd-order digraphs only go through the odd-order type check.
pub fn empirical_spectrum<'a, I>(digraphs: I, feasible: &SpectrumLayers) -> EmpiricalSpectrum
where
    I: IntoIterator<Item = &'a StructureDigraph>,
{
    let mut report = EmpiricalSpectrum::default();
    for d in digraphs {
        let name = d.group().name().to_string();
        if d.group().parity() == 1 {
            let ok = d.verify_odd_order_types().expect("odd order checked above");
            report.odd_checks.push((name, ok));
            continue;
        }
        for class in d.classes() {
            let k = class.deficiency;
            let fresh = report.observed.entry(k).or_default().insert(class.etype);
            if fresh && !feasible.layer(k).contains(&class.etype) {
                report.outside.push((class.etype, k, name.clone()));
            }
        }
    }
    for (t, k) in feasible.pairs() {
        let seen = report.observed.get(&k).is_some_and(|s| s.contains(&t));
        if seen {
            report.witnessed.push((t, k));
        } else {
            report.unwitnessed.push((t, k));
        }
    }
    report
}
