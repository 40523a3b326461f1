use gengame::spectrum::{base_layer, next_layer};
use gengame::{feasible_spectrum, ExtendedType, SpectrumOptions};

#[test]
fn layers_stabilize_at_five() {
    let s = feasible_spectrum(SpectrumOptions::default()).unwrap();
    assert_eq!(s.stabilized_at(), 5);
    assert_eq!(s.union().len(), 20);
    let (again, _) = next_layer(s.layer(5), SpectrumOptions::default()).unwrap();
    assert_eq!(&again, s.layer(5));
}

#[test]
fn nim_values_stay_small() {
    let s = feasible_spectrum(SpectrumOptions::default()).unwrap();
    assert!(s.union().iter().all(|t| t.e <= 4 && t.is_well_formed()));
    assert_eq!(s.layer(0), &base_layer());
}

#[test]
fn inner_layers_grow() {
    let s = feasible_spectrum(SpectrumOptions::default()).unwrap();
    for k in 1..=s.stabilized_at() {
        let inner = s.inner(k);
        assert!(inner.windows(2).all(|w| w[0].is_subset(&w[1])), "k = {k}");
        assert_eq!(inner.last(), Some(s.layer(k)));
    }
}

#[test]
fn second_layer_carries_over() {
    let s = feasible_spectrum(SpectrumOptions::default()).unwrap();
    assert_eq!(s.layer(2).len(), 10);
    assert!(s.layer(2).contains(&ExtendedType::new(1, 1, 2, 1)));
}

#[test]
fn naive_agrees() {
    let fast = feasible_spectrum(SpectrumOptions::default()).unwrap();
    let naive = feasible_spectrum(SpectrumOptions {
        naive: true,
        ..SpectrumOptions::default()
    })
    .unwrap();
    assert_eq!(fast, naive);
}
