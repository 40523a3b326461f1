//! Type calculus and extended type calculus.
//!
//! A structure class is summarised by its *type* `(p, e, o)`: the parity of
//! the subgroup order, the nim-value of its even-cardinality positions and
//! the nim-value of its odd-cardinality positions. The *extended type*
//! appends the smoothness `s ∈ {0, 1, 2}`.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

/// The minimum excludant: the least nonnegative integer not in `values`.
pub fn mex<I: IntoIterator<Item = u32>>(values: I) -> u32 {
    let present: BTreeSet<u32> = values.into_iter().collect();
    (0..).find(|m| !present.contains(m)).unwrap()
}

/// A type triple `(p, e, o)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Type {
    pub p: u8,
    pub e: u32,
    pub o: u32,
}

impl Type {
    pub const fn new(p: u8, e: u32, o: u32) -> Self {
        Type { p, e, o }
    }
}

impl fmt::Display for Type {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.p, self.e, self.o)
    }
}

/// An extended type `(p, e, o, s)`, ordered lexicographically.
///
/// Even types always carry smoothness 2; odd types carry 0 (rough) or
/// 1 (smooth).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ExtendedType {
    pub p: u8,
    pub e: u32,
    pub o: u32,
    pub s: u8,
}

impl ExtendedType {
    pub const fn new(p: u8, e: u32, o: u32, s: u8) -> Self {
        ExtendedType { p, e, o, s }
    }

    /// Drops the smoothness component.
    pub fn truncate(&self) -> Type {
        Type::new(self.p, self.e, self.o)
    }

    pub fn is_smooth(&self) -> bool {
        self.s >= 1
    }

    /// `p = 0` exactly when `s = 2`.
    pub fn is_well_formed(&self) -> bool {
        self.p <= 1 && self.s <= 2 && ((self.p == 0) == (self.s == 2))
    }
}

impl fmt::Display for ExtendedType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{},{})", self.p, self.e, self.o, self.s)
    }
}

/// `mex₀` for `parity = 0`, `mex₁` for `parity = 1`.
///
/// With `E` the even values and `O` the odd values of `types`:
/// `mex₀ = (0, mex O, mex(E ∪ {mex O}))` and
/// `mex₁ = (1, mex(O ∪ {mex E}), mex E)`.
pub fn mex_p<'a, I>(parity: u8, types: I) -> Type
where
    I: IntoIterator<Item = &'a Type>,
{
    let mut evens = BTreeSet::new();
    let mut odds = BTreeSet::new();
    for t in types {
        evens.insert(t.e);
        odds.insert(t.o);
    }
    match parity {
        0 => {
            let e = mex(odds.iter().copied());
            evens.insert(e);
            Type::new(0, e, mex(evens))
        }
        1 => {
            let o = mex(evens.iter().copied());
            odds.insert(o);
            Type::new(1, mex(odds), o)
        }
        _ => panic!("parity must be 0 or 1, got {parity}"),
    }
}

/// `emex₀`/`emex₁` on same-deficiency options `same` and lower-deficiency
/// options `lower`.
///
/// The odd smoothness is `1 - min π₁(same)`, with the minimum over an empty
/// set taken as 1, so a class without same-deficiency options is rough.
pub fn emex_p(parity: u8, same: &[ExtendedType], lower: &[ExtendedType]) -> ExtendedType {
    let truncated: Vec<Type> = same
        .iter()
        .chain(lower)
        .map(ExtendedType::truncate)
        .collect();
    let t = mex_p(parity, &truncated);
    let s = match parity {
        0 => 2,
        _ => 1 - same.iter().map(|x| x.p).min().unwrap_or(1),
    };
    ExtendedType::new(t.p, t.e, t.o, s)
}

/// Whether `(same, lower)` is `parity`-feasible.
///
/// 0-feasible: `lower` is nonempty and no option is odd.
/// 1-feasible: `lower` is nonempty, some option is even, a smooth
/// same-deficiency option forces an even same-deficiency option, and a rough
/// lower option forbids even same-deficiency options.
pub fn is_feasible(parity: u8, same: &[ExtendedType], lower: &[ExtendedType]) -> bool {
    if lower.is_empty() {
        return false;
    }
    let any = |set: &[ExtendedType], f: &dyn Fn(&ExtendedType) -> bool| set.iter().any(f);
    match parity {
        0 => !any(same, &|x| x.p == 1) && !any(lower, &|x| x.p == 1),
        1 => {
            let even_same = any(same, &|x| x.p == 0);
            (even_same || any(lower, &|x| x.p == 0))
                && (!any(same, &|x| x.s == 1) || even_same)
                && (!any(lower, &|x| x.s == 0) || !even_same)
        }
        _ => panic!("parity must be 0 or 1, got {parity}"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const fn et(p: u8, e: u32, o: u32, s: u8) -> ExtendedType {
        ExtendedType::new(p, e, o, s)
    }

    #[test]
    fn mex_examples() {
        assert_eq!(mex([]), 0);
        assert_eq!(mex([0, 1, 3]), 2);
        assert_eq!(mex([1, 4]), 0);
    }

    #[test]
    fn mex_p_examples() {
        assert_eq!(
            mex_p(1, &[Type::new(0, 1, 2), Type::new(1, 4, 3)]),
            Type::new(1, 1, 0)
        );
        assert_eq!(mex_p(0, &[Type::new(0, 0, 0)]), Type::new(0, 1, 2));
        assert_eq!(mex_p(1, &[]), Type::new(1, 1, 0));
        assert_eq!(mex_p(1, &[Type::new(0, 0, 0)]), Type::new(1, 2, 1));
    }

    #[test]
    fn emex_examples() {
        let terminal = [et(0, 0, 0, 2)];
        assert_eq!(
            emex_p(1, &[et(1, 2, 1, 0), et(0, 1, 2, 2)], &terminal),
            et(1, 4, 3, 1)
        );
        assert_eq!(emex_p(0, &[], &terminal), et(0, 1, 2, 2));
        assert_eq!(emex_p(1, &[], &terminal), et(1, 2, 1, 0));
    }

    #[test]
    fn feasibility_examples() {
        let e0 = [et(0, 0, 0, 2)];
        let e10 = [et(0, 1, 2, 2), et(1, 2, 1, 0)];
        assert!(is_feasible(0, &[], &e0));
        assert!(is_feasible(1, &e10, &e0));
        assert!(!is_feasible(0, &e10, &[]));
        assert!(!is_feasible(1, &e10, &[]));
        // An odd option rules out an even class.
        assert!(!is_feasible(0, &[et(1, 2, 1, 0)], &e0));
        // No even option at all.
        assert!(!is_feasible(1, &[], &[et(1, 2, 1, 0)]));
        // Smooth odd same-deficiency option without an even one.
        assert!(!is_feasible(1, &[et(1, 1, 2, 1)], &e0));
        // Rough lower option together with an even same-deficiency option.
        assert!(!is_feasible(
            1,
            &[et(0, 1, 2, 2)],
            &[et(1, 2, 1, 0), et(0, 0, 0, 2)]
        ));
    }

    fn arb_etype() -> impl Strategy<Value = ExtendedType> {
        prop_oneof![
            (0u32..6, 0u32..6).prop_map(|(e, o)| et(0, e, o, 2)),
            (0u32..6, 0u32..6, 0u8..2).prop_map(|(e, o, s)| et(1, e, o, s)),
        ]
    }

    proptest! {
        #[test]
        fn mex_contract(values in proptest::collection::vec(0u32..12, 0..12)) {
            let m = mex(values.iter().copied());
            prop_assert!(!values.contains(&m));
            for smaller in 0..m {
                prop_assert!(values.contains(&smaller));
            }
        }

        #[test]
        fn set_semantics(
            parity in 0u8..2,
            same in proptest::collection::vec(arb_etype(), 0..5),
            lower in proptest::collection::vec(arb_etype(), 0..5),
            seed in any::<u64>(),
        ) {
            let shuffle = |v: &[ExtendedType]| {
                let mut w: Vec<ExtendedType> = v.iter().chain(v).copied().collect();
                let k = (seed as usize) % (w.len() + 1);
                let len = w.len();
                w.rotate_left(k.min(len));
                w.reverse();
                w
            };
            let (s2, l2) = (shuffle(&same), shuffle(&lower));
            prop_assert_eq!(emex_p(parity, &same, &lower), emex_p(parity, &s2, &l2));
            prop_assert_eq!(is_feasible(parity, &same, &lower), is_feasible(parity, &s2, &l2));
        }

        #[test]
        fn emex_output_shape(
            parity in 0u8..2,
            same in proptest::collection::vec(arb_etype(), 0..5),
            lower in proptest::collection::vec(arb_etype(), 0..5),
        ) {
            let t = emex_p(parity, &same, &lower);
            prop_assert_eq!(t.p, parity);
            prop_assert!(t.is_well_formed());
            if parity == 0 {
                prop_assert_eq!(t.s, 2);
            }
        }
    }
}
