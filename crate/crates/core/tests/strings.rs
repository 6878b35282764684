mod common;

use blm_core::{code_set, concat, hamming, rep, Alphabet};
use proptest::prelude::*;

fn words(len: usize, count: usize) -> impl Strategy<Value = Vec<Vec<u8>>> {
    prop::collection::vec(prop::collection::vec(0u8..4, len), count)
}

proptest! {
    #[test]
    fn hamming_is_a_metric(ws in (1usize..40).prop_flat_map(|len| words(len, 3))) {
        let (a, b, c) = (&ws[0], &ws[1], &ws[2]);
        let ab = hamming(a, b).unwrap();
        prop_assert_eq!(ab == 0, a == b);
        prop_assert_eq!(ab, hamming(b, a).unwrap());
        prop_assert!(hamming(a, c).unwrap() <= ab + hamming(b, c).unwrap());
    }

    #[test]
    fn replication_scales_distance(ws in (0usize..20).prop_flat_map(|len| words(len, 2)), h in 1usize..9) {
        let d = hamming(&ws[0], &ws[1]).unwrap();
        let scaled = hamming(&rep(&ws[0], h).unwrap(), &rep(&ws[1], h).unwrap()).unwrap();
        prop_assert_eq!(scaled, h as u32 * d);
        prop_assert_eq!(rep(&ws[0], h).unwrap().len(), h * ws[0].len());
    }

    #[test]
    fn concatenation_adds_distances(
        xs in (0usize..15).prop_flat_map(|len| words(len, 2)),
        ys in (0usize..15).prop_flat_map(|len| words(len, 2)),
    ) {
        let joined = hamming(&concat(&xs[0], &ys[0]), &concat(&xs[1], &ys[1])).unwrap();
        prop_assert_eq!(joined, hamming(&xs[0], &xs[1]).unwrap() + hamming(&ys[0], &ys[1]).unwrap());
    }

    #[test]
    fn distance_matches_text_comparison(ws in (1usize..30).prop_flat_map(|len| words(len, 2))) {
        let dna = Alphabet::dna();
        let (a, b) = (dna.decode(&ws[0]), dna.decode(&ws[1]));
        prop_assert_eq!(u64::from(hamming(&ws[0], &ws[1]).unwrap()), common::text_distance(&a, &b));
    }
}

#[test]
fn code_sets_are_equidistant() {
    for n in 2..=24 {
        let set = code_set(n).unwrap();
        assert_eq!(set.len(), n);
        for i in 0..n {
            assert_eq!(set.probe(i).iter().filter(|&&s| s == 1).count(), 1);
            for j in i + 1..n {
                assert_eq!(hamming(set.probe(i), set.probe(j)).unwrap(), 2);
            }
        }
    }
}
