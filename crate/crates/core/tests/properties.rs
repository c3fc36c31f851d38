use std::collections::BTreeSet;

use parry_attractors::attractors::{attractor_general, attractor_prior, gamma, TheoremId};
use parry_attractors::engine::SpecialPrefix;
use parry_attractors::numeration::{
    expansion_to_position, lex_compare, position_to_expansion, DigitStream,
};
use parry_attractors::verifier::{is_attractor, minimal_attractor, power_transfer_check};
use parry_attractors::word::is_power_of;
use parry_attractors::{Letter, ParryParameters, PrefixEngine};
use proptest::prelude::*;

fn simple_params() -> impl Strategy<Value = Vec<u32>> {
    (2usize..=4)
        .prop_flat_map(|m| proptest::collection::vec(0u32..=3, m))
        .prop_filter("Parry condition", |t| {
            ParryParameters::simple(t.clone()).is_ok()
        })
}

fn engine(t: &[u32]) -> PrefixEngine {
    PrefixEngine::new(ParryParameters::simple(t.to_vec()).unwrap()).unwrap()
}

/// Oracle: `x = z^k z'` with `z'` a prefix of `z`, by building the power.
fn brute_power(x: &[u8], z: &[u8]) -> bool {
    let built: Vec<u8> = z.iter().cycle().take(x.len()).copied().collect();
    built == x
}

proptest! {
    #[test]
    fn power_test_matches_construction(
        z in proptest::collection::vec(0u8..2, 1..6),
        x in proptest::collection::vec(0u8..2, 0..30),
        reps in 0usize..8,
        cut in 0usize..6,
    ) {
        prop_assert_eq!(is_power_of(&x, &z).unwrap(), brute_power(&x, &z));
        let mut p: Vec<u8> = z.repeat(reps);
        p.extend_from_slice(&z[..cut.min(z.len())]);
        prop_assert!(is_power_of(&p, &z).unwrap());
    }

    #[test]
    fn level_recurrence(t in simple_params(), n in 1usize..8) {
        let e = engine(&t);
        let m = t.len();
        let mut built: Vec<Letter> = Vec::new();
        for (j, &tj) in t.iter().enumerate().take(n.min(m)) {
            let piece = e.prefix_u(n - j - 1).unwrap();
            for _ in 0..tj {
                built.extend_from_slice(&piece);
            }
        }
        if n < m {
            built.push(n as Letter);
        }
        let un = e.prefix_u(n).unwrap();
        prop_assert_eq!(un.letters(), built.as_slice());
    }

    #[test]
    fn admissible_products_are_prefixes(
        t in simple_params(),
        k in proptest::collection::vec(0u32..=3, 1..7),
    ) {
        let full = DigitStream::finite(t.clone());
        let admissible = (0..k.len()).all(|i| {
            lex_compare(&DigitStream::finite(k[i..].to_vec()), &full) == std::cmp::Ordering::Less
        });
        prop_assume!(admissible);
        let e = engine(&t);
        let n = k.len();
        let mut built: Vec<Letter> = Vec::new();
        for (i, &ki) in k.iter().enumerate() {
            let piece = e.prefix_u(n - 1 - i).unwrap();
            for _ in 0..ki {
                built.extend_from_slice(&piece);
            }
        }
        let un = e.prefix_u(n).unwrap();
        prop_assert!(un.starts_with(&built));
    }

    #[test]
    fn next_level_is_a_power(t in simple_params(), n in 0usize..7) {
        let e = engine(&t);
        let un = e.prefix_u(n).unwrap();
        let next = e.prefix_u(n + 1).unwrap();
        prop_assert!(is_power_of(&next[..next.len() - 1], &un).unwrap());
        if n + 1 >= t.len() {
            prop_assert!(is_power_of(&next, &un).unwrap());
        }
    }

    #[test]
    fn lengths_are_increasing(t in simple_params()) {
        let e = engine(&t);
        for n in 0..12isize {
            prop_assert!(e.len_u(n) < e.len_u(n + 1));
        }
    }

    #[test]
    fn greedy_expansion_round_trips(t in simple_params(), n in 0u64..100_000) {
        let e = engine(&t);
        let d = position_to_expansion(&e, n);
        prop_assert_eq!(expansion_to_position(&e, &d).unwrap(), n);
    }

    /// In `x = z^k z'`, a factor crossing `i|z| − 1` for one `i` in `[1, k)`
    /// crosses `j|z| − 1` for every `j` in `[1, k)`.
    #[test]
    fn crossing_one_period_boundary_crosses_all(
        z in proptest::collection::vec(0u8..3, 1..5),
        reps in 2usize..6,
        cut in 0usize..5,
        start in 0usize..30,
        len in 1usize..12,
    ) {
        let mut x = z.repeat(reps);
        x.extend_from_slice(&z[..cut.min(z.len())]);
        prop_assume!(len <= x.len());
        let start = start % (x.len() - len + 1);
        let f = &x[start..start + len];
        let p = z.len();
        let crosses = |a: usize, i: usize| a <= i * p - 1 && i * p - 1 < a + len;
        let occurrences: Vec<usize> =
            (0..=x.len() - len).filter(|&a| &x[a..a + len] == f).collect();
        let hit_any = (1..reps).any(|i| occurrences.iter().any(|&a| crosses(a, i)));
        if hit_any {
            for j in 1..reps {
                prop_assert!(occurrences.iter().any(|&a| crosses(a, j)), "boundary {j}");
            }
        }
    }

    #[test]
    fn power_transfer_on_random_powers(
        z in proptest::collection::vec(0u8..3, 1..8),
        reps in 1usize..5,
        cut in 0usize..8,
    ) {
        let g = minimal_attractor(&z, 64).unwrap().positions;
        let mut x = z.repeat(reps);
        x.extend_from_slice(&z[..cut.min(z.len())]);
        let v = power_transfer_check(&x, &z, &g).unwrap();
        prop_assert!(v.holds);
    }

    #[test]
    fn witnesses_are_uncovered(
        w in proptest::collection::vec(0u8..3, 1..20),
        g in proptest::collection::vec(0usize..20, 0..4),
    ) {
        let g: Vec<usize> = g.into_iter().filter(|&p| p < w.len()).collect();
        let v = is_attractor(&w, &g).unwrap();
        prop_assert_eq!(v.holds, v.witness.is_none());
        if let Some(wit) = v.witness {
            prop_assert!(!wit.occurrences.is_empty());
            for occ in wit.occurrences {
                prop_assert_eq!(&w[occ.start..occ.end], wit.factor.as_slice());
                prop_assert!(!g.iter().any(|&p| occ.start <= p && p < occ.end));
            }
        }
    }
}

#[test]
fn power_transfer_on_parry_prefixes() {
    let e = engine(&[2, 1, 1]);
    let q2 = e.q_len(2).unwrap() as usize;
    let x = e.prefix_of_length(q2).unwrap();
    let z = e.prefix_u(2).unwrap();
    assert!(q2 >= e.len_u(3) as usize - 1);
    let v = power_transfer_check(x.letters(), z.letters(), &[0, 2, 7]).unwrap();
    assert!(v.holds);

    let e = PrefixEngine::new(ParryParameters::non_simple_binary(3, 1).unwrap()).unwrap();
    let z = e.image_power(1, 0).unwrap();
    let x = z.letters().repeat(3);
    assert!(e.image_power(2, 0).unwrap().starts_with(&x));
    assert!(
        power_transfer_check(&x, z.letters(), &[0, 3])
            .unwrap()
            .holds
    );
}

/// Past `Z_n` (and past `S_n` when `t₁ = t_m`) the dispatcher falls back to
/// the table; at the shared endpoints the table set also verifies.
#[test]
fn dispatch_after_z_and_s() {
    for t in [
        &[2u32, 1, 1][..],
        &[3, 0, 2],
        &[2, 2],
        &[1, 1],
        &[2, 1, 2, 1],
        &[1, 0, 1],
    ] {
        let e = engine(t);
        let m = t.len();
        let (t1, tm) = (t[0], t[m - 1]);
        for n in m..m + 3 {
            let ni = n as isize;
            let zn = e.special_len(SpecialPrefix::Z, n).unwrap() as usize;
            let sn = e.special_len(SpecialPrefix::S, n).unwrap() as usize;
            let next = e.len_u(ni + 1) as usize;
            let word = e.prefix_of_length(next).unwrap();
            let table = gamma(&e, ni).unwrap();
            let zs: BTreeSet<usize> = {
                let low = e.len_u(ni - m as isize) as usize;
                let un = e.len_u(ni) as usize;
                let mut s: BTreeSet<usize> = gamma(&e, ni - 1).unwrap().into_iter().collect();
                s.remove(&(low - 1));
                s.insert(un - (tm as usize - 1) * low - 1);
                s
            };
            for len in zn..next {
                let a = attractor_general(&e, len).unwrap();
                if t1 > tm {
                    if len > zn {
                        assert_eq!(a.positions, table, "t={t:?} l={len}");
                    }
                    assert!(
                        is_attractor(&word[..len], &table).unwrap().holds,
                        "t={t:?} l={len}"
                    );
                } else if len <= sn {
                    if len > zn {
                        assert_eq!(a.source, TheoremId::GeneralZS);
                        assert_eq!(a.positions, zs.iter().copied().collect::<Vec<_>>());
                    }
                    let zs: Vec<usize> = zs.iter().copied().collect();
                    assert!(
                        is_attractor(&word[..len], &zs).unwrap().holds,
                        "t={t:?} l={len}"
                    );
                } else {
                    assert_eq!(a.positions, table, "t={t:?} l={len}");
                }
            }
        }
    }
}

#[test]
fn general_sets_stay_near_level_lengths() {
    for t in [
        &[2u32, 1, 2, 1][..],
        &[1, 1, 0, 1, 1],
        &[3, 1, 2],
        &[2, 0, 1],
    ] {
        let e = engine(t);
        let levels: BTreeSet<usize> = (0..16).map(|j| e.len_u(j) as usize - 1).collect();
        for len in 1..3000 {
            let a = attractor_general(&e, len).unwrap();
            let outside = a.positions.iter().filter(|p| !levels.contains(p)).count();
            assert!(outside <= 1, "t={t:?} l={len}: {:?}", a.positions);
            let prior = attractor_prior(&e, len).unwrap();
            assert!(prior.len() <= t.len() + 1);
        }
    }
}

/// Prefixes between `u_n` and `Z_n` where `u_{n-m+k+1}` still carries its
/// trailing fresh letter. The comparison has to skip that letter.
#[test]
fn low_level_category_comparison() {
    let cases: [(&[u32], &[usize]); 3] = [
        (&[1, 1, 0, 1, 1], &[6, 7]),
        (&[1, 1, 0, 0, 0, 1, 1], &[10, 11]),
        (&[1, 1, 1, 0, 0, 1, 1], &[10, 11]),
    ];
    for (t, levels) in cases {
        let e = engine(t);
        for &n in levels {
            let un = e.len_u(n as isize) as usize;
            let zn = e.special_len(SpecialPrefix::Z, n).unwrap() as usize;
            let word = e.prefix_of_length(zn).unwrap();
            for len in un + 1..=zn {
                let a = attractor_general(&e, len).unwrap();
                let letters: BTreeSet<_> = word[..len].iter().collect();
                assert_eq!(a.len(), letters.len(), "t={t:?} l={len}");
                assert!(
                    is_attractor(&word[..len], &a.positions).unwrap().holds,
                    "t={t:?} l={len}"
                );
            }
        }
    }
}

#[test]
fn engine_is_shared_across_threads() {
    let e = engine(&[2, 1, 2, 1]);
    let expected = e.prefix_u(8).unwrap();
    let fresh = engine(&[2, 1, 2, 1]);
    std::thread::scope(|s| {
        let handles: Vec<_> = (0..4)
            .map(|i| {
                let fresh = &fresh;
                s.spawn(move || fresh.prefix_of_length(1000 + 300 * i).unwrap())
            })
            .collect();
        for (i, h) in handles.into_iter().enumerate() {
            let w = h.join().unwrap();
            assert_eq!(w.letters(), &expected[..1000 + 300 * i]);
        }
    });
}
