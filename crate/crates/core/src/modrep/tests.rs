use proptest::prelude::*;

use super::*;
use crate::combinat::p_equiv_classes;
use crate::descent::{act_on_tensor, act_on_tensors, lift_idempotents, DescentElement, Ring};
use crate::freelie::{lie_power, pbw_basis, PbwGenerators};

fn p(x: u32) -> Prime {
    Prime::new(x).unwrap()
}

#[test]
fn generator_orders() {
    let g = gl_generators(2, p(2)).unwrap();
    assert_eq!(g.len(), 2);
    assert_eq!(
        g[0],
        FpMatrix::from_rows(p(2), 2, &[vec![0, 1], vec![1, 0]]).unwrap()
    );
    assert_eq!(
        g[1],
        FpMatrix::from_rows(p(2), 2, &[vec![1, 1], vec![0, 1]]).unwrap()
    );
    for (n, q) in [(2, 2), (2, 3), (3, 2), (2, 5), (2, 7), (3, 3)] {
        let gens = gl_generators(n, p(q)).unwrap();
        let order = gl_order(n, p(q)).unwrap() as usize;
        assert_eq!(
            generated_order(&gens, 20_000_000),
            Some(order),
            "GL({n},{q})"
        );
    }
    assert_eq!(gl_order(2, p(3)), Some(48));
    for q in [2, 3, 5, 7, 11] {
        let g = gl_generators(1, p(q)).unwrap();
        assert_eq!(generated_order(&g, 100), Some(q as usize - 1));
    }
}

#[test]
fn dense_action_matches_substitution() {
    let q = p(3);
    let action = induce_on_tensor_power(&gl_generators(3, q).unwrap(), 3).unwrap();
    let t = Tensor::parse("1 123 2 312 1 222 2 131", q, 3, 3).unwrap();
    for g in 0..action.generators().len() {
        let dense = action.apply_dense(g, &t.to_dense());
        assert_eq!(Tensor::from_dense(q, 3, 3, &dense), action.apply(g, &t));
    }
}

#[test]
fn induced_action_examples() {
    let q = p(5);
    let id = induce_on_tensor_power(&[FpMatrix::identity(q, 2)], 3).unwrap();
    let t = Tensor::parse("1 112 3 221", q, 2, 3).unwrap();
    assert_eq!(id.apply(0, &t), t);
    let swap = induce_on_tensor_power(&gl_generators(2, p(2)).unwrap()[..1], 2).unwrap();
    let x12 = Tensor::parse("1 12", p(2), 2, 2).unwrap();
    assert_eq!(
        swap.apply(0, &x12),
        Tensor::parse("1 21", p(2), 2, 2).unwrap()
    );
}

#[test]
fn lie_powers_are_invariant() {
    for (n, r, q) in [(2, 4, 2), (2, 6, 2), (3, 3, 3), (3, 4, 2), (2, 5, 3)] {
        let q = p(q);
        let action = induce_on_tensor_power(&gl_generators(n, q).unwrap(), r).unwrap();
        assert!(
            action.is_invariant(&lie_power(n, r, q).unwrap()),
            "n={n} r={r}"
        );
    }
}

#[test]
fn closure_examples() {
    let q = p(2);
    let action = induce_on_tensor_power(&gl_generators(2, q).unwrap(), 2).unwrap();
    let seed = Subspace::span(q, 4, [Tensor::parse("1 12", q, 2, 2).unwrap().to_dense()]).unwrap();
    let c = module_closure(&seed, &action).unwrap();
    assert_eq!(c.dim(), 4);
    assert!(c.contains_subspace(&seed));
    let l = lie_power(2, 2, q).unwrap();
    assert_eq!(module_closure(&l, &action).unwrap(), l);
}

#[test]
fn idempotent_summands_and_filtration_are_invariant() {
    for (n, r, q) in [(2, 4, 2), (2, 4, 3), (3, 3, 2), (2, 5, 3)] {
        let q = p(q);
        let action = induce_on_tensor_power(&gl_generators(n, q).unwrap(), r).unwrap();
        let full = Subspace::full(q, action.ambient_dim());
        for (_, e) in lift_idempotents(r, q).unwrap().members {
            assert!(action.is_invariant(&act_on_tensors(&e, &full, n).unwrap()));
        }
        let basis = pbw_basis(&PbwGenerators::lyndon(n, r, q), r).unwrap();
        for (lambda, _) in basis.families() {
            assert!(
                action.is_invariant(&basis.filtration_subspace(lambda).unwrap()),
                "{lambda}"
            );
        }
        assert!(!p_equiv_classes(r, q).is_empty());
    }
}

#[test]
fn divided_powers() {
    let q = p(3);
    let t = Tensor::parse("1 112", q, 2, 3).unwrap();
    assert_eq!(
        divided_power(&t, 1, 2, 1),
        Tensor::parse("1 212 1 122", q, 2, 3).unwrap()
    );
    assert_eq!(
        divided_power(&t, 1, 2, 2),
        Tensor::parse("1 222", q, 2, 3).unwrap()
    );
    assert!(divided_power(&t, 1, 2, 3).is_zero());
    let ops = schur_generators(2, 4, p(2));
    // 5 weights, and E^(1), E^(2), E^(4) in both directions.
    assert_eq!(ops.len(), 5 + 6);
}

/// Substituting `x_from ↦ x_from + s·x_to` expands as `Σ s^m E^{(m)}`.
#[test]
fn divided_powers_expand_transvections() {
    let q = p(5);
    let t = Tensor::parse("1 1121 2 2112 3 1111", q, 2, 4).unwrap();
    for s in 0..5u32 {
        let g = FpMatrix::from_residue_rows(q, 2, vec![vec![1, s], vec![0, 1]]).unwrap();
        let mut sum = Tensor::zero(q, 2, 4);
        for m in 0..=4 {
            sum = sum.add(&divided_power(&t, 1, 2, m).scale(q.pow(s, m as u64)));
        }
        assert_eq!(t.substitute(&g), sum);
    }
}

fn tensor(n: usize, r: usize) -> impl Strategy<Value = Vec<(u64, i64)>> {
    prop::collection::vec((0..(n as u64).pow(r as u32), 0i64..3), 0..8)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn permutations_commute_with_substitution(terms in tensor(3, 4), k in 0usize..3) {
        let q = p(3);
        let t = Tensor::from_terms(q, 3, 4, terms);
        let action = induce_on_tensor_power(&gl_generators(3, q).unwrap(), 4).unwrap();
        let mut source: Vec<usize> = (0..4).collect();
        source.swap(k, k + 1);
        for g in 0..action.generators().len() {
            prop_assert_eq!(
                action.apply(g, &t.permute_places(&source)),
                action.apply(g, &t).permute_places(&source)
            );
        }
        let nu = crate::combinat::Composition::new(vec![k + 1, 3 - k]).unwrap();
        let x = DescentElement::xnu(&nu, Ring::Modular(q));
        for g in 0..action.generators().len() {
            prop_assert_eq!(
                act_on_tensor(&x, &action.apply(g, &t)).unwrap(),
                action.apply(g, &act_on_tensor(&x, &t).unwrap())
            );
        }
    }
}
