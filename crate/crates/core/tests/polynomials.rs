use std::collections::BTreeMap;

use proptest::prelude::*;
use trace_invariants::{Field, Monomial, PolyMatrix, Polynomial, Variable};

fn var(idx: u8) -> Variable {
    // a small pool of x- and y-variables
    let k = 1 + (idx % 2) as u32;
    let i = 1 + ((idx / 2) % 2) as u32;
    if idx < 8 {
        Variable::x(k, i, 1)
    } else {
        Variable::y(k, 1, i, 1)
    }
}

fn poly_strategy(field: Field) -> impl Strategy<Value = Polynomial> {
    prop::collection::vec(
        (-4i64..=4, prop::collection::vec((0u8..12, 1u32..=3), 0..3)),
        0..5,
    )
    .prop_map(move |terms| {
        let mut p = Polynomial::zero(field);
        for (c, powers) in terms {
            let m = Monomial::from_powers(powers.into_iter().map(|(v, e)| (var(v), e)));
            p.add_assign(&Polynomial::term(field, field.from_i64(c), m));
        }
        p
    })
}

fn fields() -> impl Strategy<Value = Field> {
    prop_oneof![
        Just(Field::Prime(2)),
        Just(Field::Prime(5)),
        Just(Field::Rationals)
    ]
}

fn triple() -> impl Strategy<Value = (Polynomial, Polynomial, Polynomial)> {
    fields().prop_flat_map(|f| (poly_strategy(f), poly_strategy(f), poly_strategy(f)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn ring_axioms((a, b, c) in triple()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
        prop_assert_eq!(&a * &Polynomial::one(a.field()), a.clone());
    }

    #[test]
    fn derivation_is_leibniz((a, b, _) in triple(), q in 1u32..3) {
        let lhs = (&a * &b).derivation(q);
        let rhs = &(&a.derivation(q) * &b) + &(&a * &b.derivation(q));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn derivative_of_pth_power_vanishes(a in poly_strategy(Field::Prime(5)), b in poly_strategy(Field::Prime(2))) {
        prop_assert!(a.pow(5).derivation(1).is_zero());
        prop_assert!(b.pow(2).derivation(2).is_zero());
    }

    #[test]
    fn substitution_is_a_homomorphism((a, b, s) in triple(), t in 0u8..12) {
        let map: BTreeMap<Variable, Polynomial> = [(var(t), s.clone())].into_iter().collect();
        let sub = |p: &Polynomial| p.substitute(&map).unwrap();
        prop_assert_eq!(sub(&(&a * &b)), &sub(&a) * &sub(&b));
        prop_assert_eq!(sub(&(&a + &b)), &sub(&a) + &sub(&b));
    }

    #[test]
    fn frobenius_contract_inverts_power(a in poly_strategy(Field::Prime(3))) {
        let vars = a.variables();
        prop_assert_eq!(a.pow(3).frobenius_contract(&vars, 3).unwrap(), a);
    }
}

fn int_matrix(n: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
    prop::collection::vec(prop::collection::vec(-3i64..=3, n), n)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn sigma_t_matches_characteristic_polynomial(n in 1usize..=5, seed in any::<u64>(), field in fields()) {
        // mix constant entries with a few generic ones so both paths see real polynomials
        let generic = PolyMatrix::generic_rect(field, 1, n, n);
        let m = PolyMatrix::from_fn(field, n, n, |i, j| {
            let r = seed.rotate_left((i * n + j) as u32) % 7;
            if r == 0 { generic.get(i, j).clone() } else { Polynomial::from_i64(field, r as i64 - 3) }
        });
        let coeffs = m.char_poly_sigma().unwrap();
        for t in 0..=n {
            prop_assert_eq!(&m.sigma_t(t).unwrap(), &coeffs[t]);
        }
    }

    #[test]
    fn transposes(a in int_matrix(4), b in int_matrix(4)) {
        let f = Field::Prime(7);
        let a = PolyMatrix::from_ints(f, &a).unwrap();
        let b = PolyMatrix::from_ints(f, &b).unwrap();
        let ab = a.mul(&b).unwrap();
        prop_assert_eq!(ab.transpose(), b.transpose().mul(&a.transpose()).unwrap());
        prop_assert_eq!(a.transpose().transpose(), a.clone());
        let star = |m: &PolyMatrix| m.symplectic_transpose().unwrap();
        prop_assert_eq!(star(&ab), star(&b).mul(&star(&a)).unwrap());
        prop_assert_eq!(star(&star(&a)), a.clone());
        // A* = J^{-1} A^T J with J the symplectic form
        let j = PolyMatrix::symplectic_form(f, 4).unwrap();
        let j_inv = j.constant_inverse().unwrap();
        prop_assert_eq!(star(&a), j_inv.mul(&a.transpose()).unwrap().mul(&j).unwrap());
    }
}

#[test]
fn generic_sigma_matches_char_poly_up_to_four() {
    for n in 1..=4 {
        let m = PolyMatrix::generic_rect(Field::Rationals, 1, n, n);
        let coeffs = m.char_poly_sigma().unwrap();
        for t in 0..=n {
            assert_eq!(m.sigma_t(t).unwrap(), coeffs[t], "n={n} t={t}");
        }
    }
}
