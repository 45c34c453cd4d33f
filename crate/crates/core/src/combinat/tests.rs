use proptest::prelude::*;

use super::*;

fn part(s: &str) -> Partition {
    s.parse().unwrap()
}

fn comp(s: &str) -> Composition {
    s.parse().unwrap()
}

fn prime(p: u32) -> Prime {
    Prime::new(p).unwrap()
}

#[test]
fn enumeration_examples() {
    let ps = partitions(4);
    assert_eq!(ps.len(), 5);
    assert_eq!(ps[0], Partition::ones(4));
    assert_eq!(ps[4], Partition::single(4));
    assert!(ps.windows(2).all(|w| w[0] < w[1]));
    assert_eq!(compositions(3).len(), 4);
    assert_eq!(partitions(1), vec![Partition::single(1)]);
    assert_eq!(partitions(8).len(), 22);
    assert_eq!(compositions(6).len(), 32);
}

#[test]
fn associated_partitions() {
    assert_eq!(associated_partition(&comp("1,3,1")), part("3,1,1"));
    assert_eq!(associated_partition(&comp("2,2")), part("2,2"));
    assert_eq!(associated_partition(&comp("1,2")), part("2,1"));
}

#[test]
fn order_and_refinement() {
    assert!(is_refinement(&part("3,2,2,2,1"), &part("4,3,3")).unwrap());
    assert!(!is_refinement(&part("4,3,3"), &part("3,2,2,2,1")).unwrap());
    assert!(lex_less(&part("3,1"), &part("4")).unwrap());
    assert_eq!(next_partition(&Partition::single(5)), None);
    assert_eq!(next_partition(&part("2,2")), Some(part("3,1")));
    assert!(lex_less(&part("3,1"), &part("2,1,1,1")).is_err());
}

#[test]
fn descent_masks_round_trip() {
    for r in 1..8 {
        for c in compositions(r) {
            assert_eq!(
                Composition::from_descent_mask(r, c.descent_mask()).unwrap(),
                c
            );
        }
    }
    assert_eq!(comp("1,2").descent_mask(), 0b1);
    assert_eq!(comp("2,1").descent_mask(), 0b10);
}

/// Cycle type of the `e`-th power of a permutation built with the given
/// cycle lengths.
fn power_cycle_type(l: &Partition, e: u32) -> Partition {
    let r = l.size();
    let mut perm = vec![0usize; r];
    let mut start = 0;
    for &len in l.parts() {
        for i in 0..len {
            perm[start + i] = start + (i + 1) % len;
        }
        start += len;
    }
    let mut pow: Vec<usize> = (0..r).collect();
    for _ in 0..e {
        pow = pow.iter().map(|&i| perm[i]).collect();
    }
    let mut seen = vec![false; r];
    let mut lens = Vec::new();
    for i in 0..r {
        if !seen[i] {
            let mut j = i;
            let mut len = 0;
            while !seen[j] {
                seen[j] = true;
                j = pow[j];
                len += 1;
            }
            lens.push(len);
        }
    }
    Partition::new(lens).unwrap()
}

fn classes_by_powering(r: usize, p: u32) -> Vec<Vec<Partition>> {
    let mut e = 1u32;
    while (e as usize) < r {
        e *= p;
    }
    let mut map: BTreeMap<Partition, Vec<Partition>> = BTreeMap::new();
    for l in partitions(r) {
        map.entry(power_cycle_type(&l, e)).or_default().push(l);
    }
    map.into_values().collect()
}

#[test]
fn p_classes_match_powering_oracle() {
    let members = |r, p| -> Vec<Vec<Partition>> {
        p_equiv_classes(r, prime(p))
            .into_iter()
            .map(|c| c.members)
            .collect()
    };
    assert_eq!(
        members(4, 2),
        vec![
            vec![part("1,1,1,1"), part("2,1,1"), part("2,2"), part("4")],
            vec![part("3,1")]
        ]
    );
    assert_eq!(
        members(3, 3),
        vec![vec![part("1,1,1"), part("3")], vec![part("2,1")]]
    );
    assert_eq!(members(2, 2), vec![vec![part("1,1"), part("2")]]);
    for p in [2, 3, 5] {
        for r in 1..=9 {
            let mut ours = members(r, p);
            let mut oracle = classes_by_powering(r, p);
            ours.sort();
            oracle.sort();
            assert_eq!(ours, oracle, "r={r} p={p}");
        }
    }
}

#[test]
fn count_q_examples() {
    assert_eq!(count_q(&comp("2,1"), &comp("1,1,1")).unwrap(), 3);
    assert_eq!(count_q(&comp("3,1"), &comp("2,2")).unwrap(), 0);
    for mu in compositions(5) {
        assert_eq!(count_q(&Composition::single(5), &mu).unwrap(), 1);
    }
    assert_eq!(young_character(&comp("1,1,1"), &part("1,1,1")).unwrap(), 6);
    assert_eq!(young_character(&comp("2,1"), &part("1,1,1")).unwrap(), 3);
}

#[test]
fn dimension_formulas() {
    assert_eq!(witt_dim(2, 6), 9);
    assert_eq!(witt_dim(2, 12), 335);
    for n in 1..5 {
        assert_eq!(witt_dim(n, 1), n);
    }
    assert_eq!(higher_lie_dim(2, &part("3,1")), 4);
    assert_eq!(higher_lie_dim(2, &part("1,1,1,1")), 5);
    for n in 2..=6u64 {
        for r in 1..=8usize {
            let total: u64 = partitions(r).iter().map(|l| higher_lie_dim(n, l)).sum();
            assert_eq!(total, n.pow(r as u32), "n={n} r={r}");
        }
    }
}

#[test]
fn class_functions() {
    let p = prime(3);
    let cls = p_equiv_classes(3, p);
    let total = cls
        .iter()
        .map(|c| ClassFunction::indicator(c, p))
        .reduce(|a, b| a.add(&b))
        .unwrap();
    assert_eq!(total, ClassFunction::from_fn(3, Some(p), |_| 1));
    let ind = ClassFunction::indicator(&cls[0], p);
    assert_eq!(ind.mul(&ind), ind);
}

fn small_partition() -> impl Strategy<Value = Partition> {
    (1usize..=8).prop_flat_map(|r| {
        let all = partitions(r);
        prop::sample::select(all)
    })
}

proptest! {
    #[test]
    fn refinement_implies_lex_order(a in small_partition(), seed in 0usize..1000) {
        let bs = partitions(a.size());
        let b = &bs[seed % bs.len()];
        if is_refinement(&a, b).unwrap() {
            prop_assert!(a <= *b);
        }
    }

    #[test]
    fn classes_partition_the_partitions(r in 1usize..=10, p in prop::sample::select(vec![2u32, 3, 5, 7])) {
        let cls = p_equiv_classes(r, prime(p));
        let mut all: Vec<Partition> = cls.iter().flat_map(|c| c.members.clone()).collect();
        all.sort();
        prop_assert_eq!(all, partitions(r));
    }

    #[test]
    fn young_character_ignores_representative(nu_seed in 0usize..10_000, l in small_partition(), perm_seed in 0u64..1000) {
        let r = l.size();
        let comps = compositions(r);
        let nu = &comps[nu_seed % comps.len()];
        let mut parts = l.parts().to_vec();
        // A deterministic shuffle of the parts.
        let len = parts.len();
        let mut s = perm_seed;
        for i in (1..len).rev() {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            parts.swap(i, (s >> 33) as usize % (i + 1));
        }
        let mu = Composition::new(parts).unwrap();
        prop_assert_eq!(count_q(nu, &mu).unwrap(), young_character(nu, &l).unwrap());
    }
}

#[test]
fn parsing_caps_total_size() {
    let s = format!("{},{}", usize::MAX, 1);
    assert!(matches!(
        s.parse::<Composition>(),
        Err(Error::CapExceeded(_))
    ));
    assert!(format!("{}", MAX_PARSED_SIZE + 1)
        .parse::<Partition>()
        .is_err());
    assert_eq!(
        format!("{MAX_PARSED_SIZE}")
            .parse::<Partition>()
            .unwrap()
            .size(),
        MAX_PARSED_SIZE
    );
    assert!("3,1,2".parse::<Partition>().is_err());
    assert_eq!(comp("(3,1,2)").parts(), [3, 1, 2]);
}
