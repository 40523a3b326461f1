use std::sync::{Arc, OnceLock};

use gengame::{build_group, ElementSet, SubgroupLattice};
use proptest::prelude::*;

const SPECS: &[&str] = &[
    "Z1", "Z6", "Z12", "Z2^3", "Z3^2", "S3", "D4", "Q8", "A4", "Dic3", "D6", "Z2xD4", "S4", "Z3^3",
    "Z7:Z3",
];

fn lattices() -> &'static [SubgroupLattice] {
    static CELL: OnceLock<Vec<SubgroupLattice>> = OnceLock::new();
    CELL.get_or_init(|| {
        SPECS
            .iter()
            .map(|&s| {
                let spec = if s == "Z7:Z3" {
                    "perm:(1,2,3,4,5,6,7);(2,3,5)(4,7,6)"
                } else {
                    s
                };
                SubgroupLattice::new(Arc::new(build_group(spec).unwrap()))
            })
            .collect()
    })
}

/// A lattice index and two nested subsets `p ⊆ q` of its group.
fn arb_case() -> impl Strategy<Value = (usize, ElementSet, ElementSet)> {
    (0..SPECS.len(), any::<[u64; 2]>(), any::<[u64; 2]>()).prop_map(|(i, a, b)| {
        let n = lattices()[i].group().order();
        // Skipping every third element keeps many picks from generating.
        let pick = |bits: [u64; 2]| {
            (0..n)
                .filter(|&x| bits[x / 64 % 2] >> (x % 64) & 1 == 1 && x % 3 != 1)
                .collect::<ElementSet>()
        };
        let p = pick(a);
        let q = p.union(&pick(b));
        (i, p, q)
    })
}

proptest! {
    #[test]
    fn interval_closure_is_a_closure_operator((i, p, q) in arb_case()) {
        let lattice = &lattices()[i];
        let cp = lattice.interval_closure(&p);
        prop_assert!(p.is_subset(&cp));
        prop_assert!(cp.is_subset(&lattice.interval_closure(&q)));
        prop_assert_eq!(lattice.interval_closure(&cp), cp);
    }

    #[test]
    fn generated_subgroup_is_a_closure_operator((i, p, q) in arb_case()) {
        let group = lattices()[i].group();
        let gp = group.generated_subgroup(&p);
        prop_assert!(p.is_subset(&gp));
        prop_assert!(gp.is_subset(&group.generated_subgroup(&q)));
        prop_assert_eq!(group.generated_subgroup(&gp), gp);
        prop_assert!(group.is_subgroup(&gp));
    }

    #[test]
    fn generated_within_interval((i, p, _q) in arb_case()) {
        let lattice = &lattices()[i];
        let group = lattice.group();
        let gp = group.generated_subgroup(&p);
        let cp = lattice.interval_closure(&p);
        prop_assert!(gp.is_subset(&cp));
        prop_assert!(group.is_subgroup(&cp));
        prop_assert_eq!(cp == group.elements(), gp == group.elements());
        prop_assert_eq!(lattice.generates(&p), gp == group.elements());
    }
}

#[test]
fn lagrange() {
    for lattice in lattices() {
        let n = lattice.group().order();
        for h in lattice.subgroups() {
            assert_eq!(n % h.len(), 0, "{}: subgroup {h}", lattice.group().name());
        }
    }
}

#[test]
fn cauchy_order_two() {
    for lattice in lattices() {
        let group = lattice.group();
        let has_involution = (0..group.order()).any(|g| group.element_order(g) == 2);
        assert_eq!(has_involution, group.order() % 2 == 0, "{}", group.name());
    }
}

#[test]
fn frattini_is_empty_closure() {
    for lattice in lattices() {
        assert_eq!(
            lattice.interval_closure(&ElementSet::empty()),
            lattice.frattini()
        );
        for m in lattice.maximals() {
            assert!(lattice.frattini().is_subset(m));
            assert_eq!(lattice.interval_closure(m), *m);
        }
    }
}
