use proptest::prelude::*;

use super::*;
use crate::combinat::{compositions, p_equiv_classes};
use crate::freelie::{lyndon_basis, GradedSubspace, Tensor, Word};
use crate::linalg::Subspace;
use crate::linalg::{FpMatrix, LinearSystem};

fn p(x: u32) -> Prime {
    Prime::new(x).unwrap()
}

fn comp(s: &str) -> Composition {
    s.parse().unwrap()
}

fn int_x(s: &str) -> DescentElement {
    DescentElement::xnu(&comp(s), Ring::Integer)
}

#[test]
fn xnu_permutation_sums() {
    assert_eq!(
        xnu_as_permutation_sum(&comp("3")).unwrap(),
        vec![vec![0, 1, 2]]
    );
    assert_eq!(
        xnu_as_permutation_sum(&comp("1,1")).unwrap(),
        vec![vec![0, 1], vec![1, 0]]
    );
    assert_eq!(xnu_as_permutation_sum(&comp("1,1,1,1")).unwrap().len(), 24);
    // X^(1,2): descents only at 1, i.e. the identity and the two perms with
    // a single descent at position 1.
    assert_eq!(xnu_as_permutation_sum(&comp("1,2")).unwrap().len(), 3);
    assert!(matches!(
        xnu_as_permutation_sum(&Composition::ones(9)),
        Err(Error::OracleBound { r: 9, bound: 8 })
    ));
}

#[test]
fn multiply_examples() {
    let x11 = int_x("1,1");
    assert_eq!(x11.multiply(&x11).unwrap(), x11.scale(2));
    let f2 = x11.reduce_mod(p(2));
    assert!(f2.multiply(&f2).unwrap().is_zero());
    let one = DescentElement::identity(4, Ring::Integer);
    for nu in compositions(4) {
        let b = DescentElement::xnu(&nu, Ring::Integer);
        assert_eq!(one.multiply(&b).unwrap(), b);
        assert_eq!(b.multiply(&one).unwrap(), b);
    }
}

#[test]
fn multiply_matches_group_algebra_for_basis_pairs() {
    for r in 1..=4 {
        for mu in compositions(r) {
            for nu in compositions(r) {
                let a = DescentElement::xnu(&mu, Ring::Integer);
                let b = DescentElement::xnu(&nu, Ring::Integer);
                let ga = GroupAlgebraElement::from_descent(&a).unwrap();
                let gb = GroupAlgebraElement::from_descent(&b).unwrap();
                let oracle = ga.mul(&gb).to_descent().unwrap();
                assert_eq!(a.multiply(&b).unwrap(), oracle, "X^({mu}) X^({nu})");
            }
        }
    }
}

#[test]
fn group_algebra_rejects_non_descent_elements() {
    let mut g = GroupAlgebraElement::from_descent(&int_x("1,2")).unwrap();
    g.coeffs.insert(vec![1, 0, 2], 5);
    assert!(g.to_descent().is_err());
}

#[test]
fn c_map_examples() {
    for r in 1..=5 {
        let c = DescentElement::identity(r, Ring::Integer).c_map();
        assert!(c.values().all(|(_, v)| v == 1));
    }
    let c = int_x("1,1").c_map();
    assert_eq!(c.get(&"1,1".parse().unwrap()), 2);
    assert_eq!(c.get(&"2".parse().unwrap()), 0);
}

fn c_map_rank(r: usize, q: Prime) -> usize {
    let rows: Vec<Vec<u32>> = compositions(r)
        .iter()
        .map(|nu| {
            DescentElement::xnu(nu, Ring::Modular(q))
                .c_map()
                .values()
                .map(|(_, v)| v as u32)
                .collect()
        })
        .collect();
    let width = rows[0].len();
    FpMatrix::from_residue_rows(q, width, rows).unwrap().rank()
}

#[test]
fn c_map_kernel_dimension() {
    for (r, q) in [(4, 2), (4, 3), (5, 2), (5, 3), (6, 2), (6, 5)] {
        let q = p(q);
        let rank = c_map_rank(r, q);
        assert_eq!(rank, p_equiv_classes(r, q).len(), "r={r} p={q}");
        assert_eq!(
            (1 << (r - 1)) - rank,
            (1 << (r - 1)) - p_equiv_classes(r, q).len()
        );
    }
    assert_eq!(8 - c_map_rank(4, p(2)), 6);
}

#[test]
fn idempotent_examples() {
    let f = lift_idempotents(2, p(2)).unwrap();
    assert_eq!(f.members.len(), 1);
    assert_eq!(
        f.members[0].1,
        DescentElement::identity(2, Ring::Modular(p(2)))
    );

    let f = lift_idempotents(2, p(3)).unwrap();
    let ring = Ring::Modular(p(3));
    let e11 = f
        .members
        .iter()
        .find(|(c, _)| c.first().to_string() == "1,1")
        .unwrap();
    assert_eq!(e11.1, DescentElement::xnu(&comp("1,1"), ring).scale(2));
    let e2 = f
        .members
        .iter()
        .find(|(c, _)| c.first().to_string() == "2")
        .unwrap();
    assert_eq!(e2.1, DescentElement::identity(2, ring).sub(&e11.1).unwrap());

    let f = lift_idempotents(4, p(2)).unwrap();
    assert_eq!(f.members.len(), 2);
}

#[test]
fn idempotent_families_satisfy_invariants() {
    for r in 1..=6 {
        for q in [2, 3, 5] {
            let f = lift_idempotents(r, p(q)).unwrap();
            assert_eq!(f.members.len(), p_equiv_classes(r, p(q)).len());
            f.verify().unwrap();
        }
    }
}

#[test]
fn verify_catches_a_broken_family() {
    let mut f = lift_idempotents(4, p(2)).unwrap();
    let ring = Ring::Modular(p(2));
    f.members[0].1 = f.members[0]
        .1
        .add(&DescentElement::xnu(&comp("1,1,1,1"), ring))
        .unwrap();
    assert!(f.verify().is_err());
}

#[test]
fn action_examples() {
    let q = p(5);
    let x12 = Tensor::parse("1 12", q, 2, 2).unwrap();
    // X^(1,1) − X^(2) is the transposition.
    let swap = DescentElement::xnu(&comp("1,1"), Ring::Modular(q))
        .sub(&DescentElement::identity(2, Ring::Modular(q)))
        .unwrap();
    assert_eq!(
        act_on_tensor(&swap, &x12).unwrap(),
        Tensor::parse("1 21", q, 2, 2).unwrap()
    );

    let t = Tensor::parse("1 1223 4 3121 2 2222", q, 3, 4).unwrap();
    let id = DescentElement::identity(4, Ring::Modular(q));
    assert_eq!(act_on_tensor(&id, &t).unwrap(), t);

    let b1 = Tensor::parse("1 1", q, 2, 1).unwrap();
    let b2 = Tensor::parse("1 2", q, 2, 1).unwrap();
    let lhs = act_on_tensor(
        &DescentElement::xnu(&comp("1,1"), Ring::Modular(q)),
        &b1.mul(&b2),
    )
    .unwrap();
    assert_eq!(lhs, b1.mul(&b2).add(&b2.mul(&b1)));
}

#[test]
fn action_on_words_is_place_permutation() {
    // σ = (1 2 3) ↦ (2 3 1): position i of σ(w) holds the letter at iσ.
    let q = p(7);
    let sigma: Perm = vec![1, 2, 0];
    let w = Word::new(vec![1, 2, 3], 3).unwrap();
    let t = Tensor::from_word(q, 3, &w);
    let moved = t.permute_places(&sigma.iter().map(|&i| i as usize).collect::<Vec<_>>());
    assert_eq!(moved, Tensor::parse("1 231", q, 3, 3).unwrap());
}

#[test]
fn subspace_action_agrees_with_tensor_action() {
    let q = p(3);
    let f = lift_idempotents(4, q).unwrap();
    let full = Subspace::full(q, 16);
    for (_, e) in &f.members {
        let img = act_on_tensors(e, &full, 2).unwrap();
        for w in 0..16u64 {
            let t = Tensor::from_terms(q, 2, 4, [(w, 1)]);
            assert!(img.contains(&act_on_tensor(e, &t).unwrap().to_dense()));
        }
        let index = crate::freelie::WeightIndex::shared(2, 4).unwrap();
        let g = act_on_tensors_graded(e, &GradedSubspace::full(q, index)).unwrap();
        assert_eq!(g.to_subspace(), img);
    }
    let dims: usize = f
        .members
        .iter()
        .map(|(_, e)| act_on_tensors(e, &full, 2).unwrap().dim())
        .sum();
    assert_eq!(dims, 16);
}

#[test]
fn action_commutes_with_substitution() {
    let q = p(3);
    let g = FpMatrix::from_rows(q, 2, &[vec![1, 1], vec![0, 1]]).unwrap();
    let a = DescentElement::from_terms(
        3,
        Ring::Modular(q),
        [(&comp("1,2"), 2), (&comp("2,1"), 1), (&comp("1,1,1"), 1)],
    )
    .unwrap();
    let t = Tensor::parse("1 112 2 121 1 222", q, 2, 3).unwrap();
    let lhs = act_on_tensor(&a, &t.substitute(&g)).unwrap();
    let rhs = act_on_tensor(&a, &t).unwrap().substitute(&g);
    assert_eq!(lhs, rhs);
}

#[test]
fn gr_action_examples() {
    let q = p(2);
    let l2 = lyndon_basis(2, 2, q);
    let b1 = l2[0].1.clone();
    let b2 = Tensor::parse("1 1", q, 2, 1).unwrap();
    assert!(gr_action_check(&comp("1,2"), &[b1.clone(), b2.clone()]).unwrap());

    let c = lyndon_basis(3, 2, q)[0].1.clone();
    let lhs = act_on_tensor(
        &DescentElement::xnu(&comp("3,1"), Ring::Modular(q)),
        &c.mul(&c),
    )
    .unwrap();
    assert!(lhs.is_zero());
    assert!(gr_action_check(&comp("3,1"), &[c.clone(), c]).unwrap());
}

#[test]
fn gr_action_sweep_small() {
    for q in [2, 3] {
        let q = p(q);
        let l1: Vec<Tensor> = lyndon_basis(2, 1, q).into_iter().map(|x| x.1).collect();
        let l2: Vec<Tensor> = lyndon_basis(2, 2, q).into_iter().map(|x| x.1).collect();
        let l3: Vec<Tensor> = lyndon_basis(2, 3, q).into_iter().map(|x| x.1).collect();
        let products = [
            vec![l1[0].clone(), l2[0].clone(), l1[1].clone()],
            vec![l3[1].clone(), l1[0].clone()],
            vec![l2[0].clone(), l2[0].clone()],
            vec![l1[1].clone(), l1[0].clone(), l1[1].clone(), l1[1].clone()],
        ];
        for f in &products {
            let r: usize = f.iter().map(Tensor::degree).sum();
            for nu in compositions(r) {
                assert!(gr_action_check(&nu, f).unwrap(), "ν=({nu}) p={q}");
            }
        }
    }
}

#[test]
fn display_lists_terms() {
    let a = DescentElement::from_terms(3, Ring::Integer, [(&comp("1,2"), 2), (&comp("3"), -1)])
        .unwrap();
    assert_eq!(a.to_string(), "2 1,2\n-1 3");
    assert_eq!(DescentElement::zero(2, Ring::Integer).to_string(), "0");
}

#[test]
fn indicator_system_is_consistent() {
    // Sanity check on the linear-system plumbing used by the lifter.
    let mut s = LinearSystem::new(p(3), 2);
    s.push(vec![(0, 1), (1, 1)], 2);
    assert!(s.solve().solution().is_some());
}

fn element(r: usize) -> impl Strategy<Value = DescentElement> {
    prop::collection::vec(-3i64..4, 1 << (r - 1))
        .prop_map(move |c| DescentElement::from_mask_coeffs(r, Ring::Integer, c).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn multiply_is_associative(a in element(5), b in element(5), c in element(5)) {
        let l = a.multiply(&b).unwrap().multiply(&c).unwrap();
        let r = a.multiply(&b.multiply(&c).unwrap()).unwrap();
        prop_assert_eq!(l, r);
    }

    #[test]
    fn c_map_is_multiplicative(a in element(4), b in element(4)) {
        prop_assert_eq!(a.multiply(&b).unwrap().c_map(), a.c_map().mul(&b.c_map()));
    }

    #[test]
    fn multiply_matches_group_algebra(a in element(4), b in element(4)) {
        let ga = GroupAlgebraElement::from_descent(&a).unwrap();
        let gb = GroupAlgebraElement::from_descent(&b).unwrap();
        prop_assert_eq!(a.multiply(&b).unwrap(), ga.mul(&gb).to_descent().unwrap());
    }
}
