mod common;

use blm_core::bounds::{brute_force_htsp, brute_force_k_segments, brute_force_opt, DEFAULT_BUDGET};
use blm_core::reductions::{
    build_alternate_blmp, build_alternate_special, build_four_segment_htsp, build_main_blmp, check_special_boundary,
    pad_to_4n,
};
use blm_core::{Alphabet, DistanceOracle, Placement, ProbeSet, ReductionKind};
use common::{random_probes, rng, text_distance};

fn d(ps: &ProbeSet, i: usize, j: usize) -> u64 {
    text_distance(&ps.probe_string(i), &ps.probe_string(j))
}

#[test]
fn main_distances_follow_the_closed_forms() {
    let mut rng = rng(50);
    for big_n in 1..=3 {
        for l in 1..=3 {
            let input = random_probes(&mut rng, &Alphabet::binary(), 4 * big_n, l);
            let inst = build_main_blmp(&input).unwrap();
            let (h, count) = (8 * l as u64, 4 * big_n);
            assert_eq!(inst.params.h as u64, h);
            assert_eq!(inst.probes.len(), (big_n + 1) * (big_n + 1));
            assert_eq!(inst.params.copies, (big_n - 1) * (big_n - 1));
            assert_eq!(inst.probes.length(), count * h as usize + 2 * l);
            let k = h + l as u64;
            for i in 0..count {
                for c in count..inst.probes.len() {
                    assert_eq!(d(&inst.probes, i, c), k);
                }
                for j in i + 1..count {
                    let dij = d(&inst.probes, i, j);
                    assert_eq!(dij, 2 * h + 2 * d(&input, i, j));
                    assert!(4 * dij > 7 * k && dij <= 2 * k);
                }
            }
        }
    }
}

#[test]
fn main_identity_on_exhaustible_grids() {
    let mut rng = rng(51);
    for big_n in [1, 2] {
        for l in [1, 2] {
            let input = random_probes(&mut rng, &Alphabet::binary(), 4 * big_n, l);
            let inst = build_main_blmp(&input).unwrap();
            let side = big_n + 1;
            let blmp = DistanceOracle::auto(&inst.probes);
            let (opt, placement) = brute_force_opt(&blmp, side, DEFAULT_BUDGET).unwrap();
            let htsp = brute_force_htsp(&DistanceOracle::auto(&input), DEFAULT_BUDGET)
                .unwrap()
                .0;
            let (n, h, l) = (big_n as u64, 8 * l as u64, l as u64);
            assert_eq!(opt, 4 * (n - 1) * (h + l) + 8 * n * h + 2 * htsp);
            let report = check_special_boundary(&inst, &placement).unwrap();
            assert!(report.on_boundary);
        }
    }
}

#[test]
fn interior_gadget_is_reported() {
    let input = ProbeSet::from_strs(Alphabet::binary(), &["0", "1", "0", "1", "1", "1", "0", "0"]).unwrap();
    let inst = build_main_blmp(&input).unwrap();
    // filler copy is id 8; put t_1 in the center instead
    let p = Placement::new(3, vec![8, 1, 2, 3, 0, 4, 5, 6, 7]).unwrap();
    let report = check_special_boundary(&inst, &p).unwrap();
    assert!(!report.on_boundary);
    assert_eq!(report.violators, vec![0]);
}

#[test]
fn padding() {
    let mut rng = rng(52);
    for n in 2..=9 {
        let input = random_probes(&mut rng, &Alphabet::binary(), n, 2);
        let inst = pad_to_4n(&input).unwrap();
        assert_eq!(inst.probes.len() % 4, 0);
        assert!(inst.probes.len() >= n && inst.probes.len() < n + 4);
        assert_eq!(inst.probes.length(), 2 * n * 2 + 2);
        for i in 0..n - 1 {
            assert_eq!(
                inst.probes.probe_string(i),
                format!("{}{}", "0".repeat(4 * n), input.probe_string(i))
            );
        }
        for i in n - 1..inst.probes.len() {
            assert_eq!(
                inst.probes.probe_string(i),
                format!("{}{}", "1".repeat(4 * n), input.probe_string(n - 1))
            );
        }
    }
}

#[test]
fn padded_copies_travel_together() {
    let mut rng = rng(53);
    for _ in 0..5 {
        let input = random_probes(&mut rng, &Alphabet::binary(), 5, 2);
        let inst = pad_to_4n(&input).unwrap();
        assert_eq!(inst.probes.len(), 8);
        let oracle = DistanceOracle::auto(&inst.probes);
        let (cost, order) = brute_force_htsp(&oracle, DEFAULT_BUDGET).unwrap();
        // the four copies of the last string sit next to each other on the cycle
        let at: Vec<usize> = (0..8).filter(|&k| order[k] >= 4).collect();
        let gaps = (0..4).filter(|&i| (at[(i + 1) % 4] + 8 - at[i]) % 8 != 1).count();
        assert_eq!(gaps, 1);
        // and the cycle costs the same as on the five distinct strings
        let words: Vec<String> = (0..5).map(|i| inst.probes.probe_string(i)).collect();
        let five = ProbeSet::from_strs(Alphabet::binary(), &words).unwrap();
        assert_eq!(
            cost,
            brute_force_htsp(&DistanceOracle::auto(&five), DEFAULT_BUDGET)
                .unwrap()
                .0
        );
    }
}

#[test]
fn four_segment_distances_and_partition() {
    let mut rng = rng(54);
    for n in 2..=5 {
        let input = random_probes(&mut rng, &Alphabet::binary(), n, 2);
        let inst = build_four_segment_htsp(&input).unwrap();
        let ps = &inst.probes;
        assert_eq!(ps.len(), n + 3);
        assert_eq!(ps.length(), 4 * n * 2 + 2);
        let block = |i: usize| ps.probe_string(i)[..8 * n].to_string();
        let firsts = [0, n, n + 1, n + 2];
        for a in 0..4 {
            for b in a + 1..4 {
                assert_eq!(text_distance(&block(firsts[a]), &block(firsts[b])), 4 * n as u64);
            }
        }
        for i in 0..n {
            for j in i + 1..n {
                assert_eq!(d(ps, i, j), d(&input, i, j));
            }
        }
    }
    for _ in 0..5 {
        let input = random_probes(&mut rng, &Alphabet::binary(), 3, 2);
        let inst = build_four_segment_htsp(&input).unwrap();
        let (_, parts) = brute_force_k_segments(&DistanceOracle::auto(&inst.probes), 4, DEFAULT_BUDGET).unwrap();
        for q in 3..6 {
            assert!(parts.contains(&vec![q]), "{parts:?}");
        }
    }
}

#[test]
fn alternate_special_distances() {
    for n in 2..=6 {
        let inst = build_alternate_special(n).unwrap();
        let ps = &inst.probes;
        assert_eq!(ps.len(), n * n);
        assert_eq!(ps.length(), 8 * n + 1);
        for i in 0..n {
            for j in i + 1..n {
                assert_eq!(d(ps, i, j), 16);
            }
            for c in n..n * n {
                assert_eq!(d(ps, i, c), 9);
            }
        }
    }
}

#[test]
fn alternate_special_optimum_at_four() {
    let inst = build_alternate_special(4).unwrap();
    assert_eq!(inst.kind, ReductionKind::AlternateSpecial);
    let (opt, placement) = brute_force_opt(&DistanceOracle::auto(&inst.probes), 4, DEFAULT_BUDGET).unwrap();
    assert_eq!(opt, 25 * 4 - 28);
    let report = check_special_boundary(&inst, &placement).unwrap();
    assert!(report.on_boundary);
    assert!(report.segment_has_corner.iter().all(|&c| c));
    assert_eq!(report.segments.iter().map(Vec::len).sum::<usize>(), 4);
}

#[test]
fn alternate_blmp_distances() {
    let mut rng = rng(55);
    for n in 2..=4 {
        for l in 1..=3 {
            let input = random_probes(&mut rng, &Alphabet::binary(), n, l);
            let inst = build_alternate_blmp(&input).unwrap();
            let ps = &inst.probes;
            assert_eq!(ps.len(), n * n);
            assert_eq!(inst.params.copies, n * n - n);
            assert_eq!(ps.length(), (8 * n + 1) * n * l + 2 * l);
            let (nn, ll) = (n as u64, l as u64);
            for i in 0..n {
                for c in n..n * n {
                    assert_eq!(d(ps, i, c), 9 * nn * ll + ll);
                }
                for j in i + 1..n {
                    assert_eq!(d(ps, i, j), 16 * nn * ll + 2 * d(&input, i, j));
                }
            }
        }
    }
}

#[test]
fn non_binary_inputs_are_rejected() {
    let mut rng = rng(56);
    let dna = random_probes(&mut rng, &Alphabet::dna(), 4, 3);
    assert!(build_main_blmp(&dna).is_err());
    assert!(pad_to_4n(&dna).is_err());
}
