use proptest::prelude::*;

use wavelet_core::construct::{construct, Algorithm, ConstructionPlan};
use wavelet_core::oracle::{naive_rank, naive_select};
use wavelet_core::structures::{StructureKind, WaveletIndex};
use wavelet_core::Error;

fn build(text: &[u32], sigma: usize, kind: StructureKind) -> WaveletIndex {
    construct(text, sigma, &ConstructionPlan::new(kind, Algorithm::Ps, 2))
        .unwrap()
        .into()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn queries_match_scans(
        sigma in 1usize..3000,
        raw in prop::collection::vec(any::<u32>(), 1..1500),
        probes in prop::collection::vec((any::<u32>(), any::<usize>(), 0usize..40), 1..60),
    ) {
        let text: Vec<u32> = raw.iter().map(|&x| x % sigma as u32).collect();
        let n = text.len();
        for kind in [StructureKind::Tree, StructureKind::Matrix] {
            let index = build(&text, sigma, kind);
            for (i, &c) in text.iter().enumerate() {
                prop_assert_eq!(index.access(i), c);
            }
            for &(c, i, j) in &probes {
                // Bias probes toward symbols that occur.
                let c = if c % 4 == 0 { c % sigma as u32 } else { text[c as usize % n] };
                let i = i % (n + 1);
                prop_assert_eq!(index.rank(c, i), naive_rank(&text, c, i));
                match (index.select(c, j), naive_select(&text, c, j)) {
                    (Ok(a), Ok(b)) => prop_assert_eq!(a, b),
                    (Err(Error::OccurrenceAbsent), Err(Error::OccurrenceAbsent)) => {}
                    (a, b) => prop_assert!(false, "select({}, {}): {:?} vs {:?}", c, j, a, b),
                }
            }
        }
    }

    #[test]
    fn select_inverts_rank(text in prop::collection::vec(0u32..7, 1..800)) {
        for kind in [StructureKind::Tree, StructureKind::Matrix] {
            let index = build(&text, 7, kind);
            for (p, &c) in text.iter().enumerate() {
                prop_assert_eq!(index.select(c, index.rank(c, p) + 1).unwrap(), p);
            }
        }
    }
}

#[test]
fn running_example_queries() {
    let text = [0, 1, 6, 7, 1, 5, 4, 2, 6, 3];
    for kind in [StructureKind::Tree, StructureKind::Matrix] {
        let index = build(&text, 8, kind);
        assert_eq!(index.rank(6, 10), 2);
        assert_eq!(index.rank(1, 4), 1);
        assert_eq!(index.select(6, 2).unwrap(), 8);
        assert_eq!(index.select(1, 2).unwrap(), 4);
        assert!(matches!(index.select(6, 3), Err(Error::OccurrenceAbsent)));
        assert!(matches!(index.select(6, 0), Err(Error::OccurrenceAbsent)));
        assert_eq!((0..10).map(|i| index.access(i)).collect::<Vec<_>>(), text);
    }
}

#[test]
fn single_symbol_alphabet() {
    let index = build(&[0; 9], 1, StructureKind::Matrix);
    assert_eq!(index.access(4), 0);
    assert_eq!(index.rank(0, 7), 7);
    assert_eq!(index.select(0, 9).unwrap(), 8);
    assert!(index.select(0, 10).is_err());
}
