use agcodes::field::{enumerate_field, field_build, field_of_order, FieldElement, FieldSpec};
use proptest::prelude::*;

const ODD_AND_EVEN_ORDERS: [u64; 16] = [2, 3, 4, 5, 7, 8, 9, 11, 13, 16, 25, 27, 49, 81, 121, 625];

fn small_fields() -> impl Strategy<Value = FieldSpec> {
    prop::sample::select(ODD_AND_EVEN_ORDERS.to_vec()).prop_map(|q| field_of_order(q).unwrap())
}

fn field_and_elems(count: usize) -> impl Strategy<Value = (FieldSpec, Vec<FieldElement>)> {
    small_fields().prop_flat_map(move |f| {
        let q = f.order();
        (Just(f), prop::collection::vec(0..q, count))
            .prop_map(|(f, idx)| (f, idx.into_iter().map(|i| f.from_index(i)).collect()))
    })
}

#[test]
fn pairwise_axioms_up_to_81() {
    for q in [
        2u64, 3, 4, 5, 7, 8, 9, 11, 13, 16, 17, 19, 23, 25, 27, 29, 31, 37, 41, 43, 47, 49, 53, 59,
        61, 67, 71, 73, 79, 81,
    ] {
        let f = field_of_order(q).unwrap();
        let elems = enumerate_field(&f).unwrap();
        assert_eq!(elems.len() as u64, q);
        for &a in &elems {
            if !a.is_zero() {
                assert_eq!(a * a.inv().unwrap(), f.one(), "q = {q}, a = {a}");
            }
            for &b in &elems {
                assert_eq!(a + b, b + a);
                assert_eq!(a * b, b * a);
                assert_eq!((a - b) + b, a);
            }
        }
    }
}

#[test]
fn triple_axioms_up_to_81() {
    for q in [16u64, 49, 81] {
        let f = field_of_order(q).unwrap();
        let elems = enumerate_field(&f).unwrap();
        for &a in &elems {
            for &b in &elems {
                let ab = a * b;
                let a_plus_b = a + b;
                for &c in &elems {
                    assert_eq!(ab * c, a * (b * c));
                    assert_eq!(a_plus_b + c, a + (b + c));
                    assert_eq!(a * (b + c), ab + a * c);
                }
            }
        }
    }
}

#[test]
fn nonzero_squares_are_half() {
    for q in [5u64, 7, 9, 25, 27, 49, 81, 125, 343, 625] {
        let f = field_of_order(q).unwrap();
        let mut squares: Vec<u64> = enumerate_field(&f)
            .unwrap()
            .into_iter()
            .filter(|a| !a.is_zero())
            .map(|a| (a * a).index())
            .collect();
        squares.sort_unstable();
        squares.dedup();
        assert_eq!(squares.len() as u64, (q - 1) / 2);
        for i in 1..q {
            let a = f.from_index(i);
            assert_eq!(a.is_square().unwrap(), squares.binary_search(&i).is_ok());
        }
    }
}

#[test]
fn multiplicative_group_is_cyclic() {
    // some element has order exactly q - 1, for every built field
    for q in [4u64, 8, 9, 16, 25, 27, 49, 81, 125, 625, 2401] {
        let f = field_of_order(q).unwrap();
        let factors = {
            let mut n = q - 1;
            let mut out = vec![];
            let mut d = 2;
            while d * d <= n {
                if n % d == 0 {
                    out.push(d);
                    while n % d == 0 {
                        n /= d;
                    }
                }
                d += 1;
            }
            if n > 1 {
                out.push(n);
            }
            out
        };
        let generator = (1..q)
            .map(|i| f.from_index(i))
            .find(|g| factors.iter().all(|&l| !g.pow((q - 1) / l).is_one()));
        assert!(generator.is_some(), "no generator in GF({q})");
    }
}

#[test]
fn modulus_is_lexicographically_first_irreducible() {
    // brute force: a monic poly of degree <= 3 is irreducible iff it has no root
    for (p, m) in [(5u64, 2u32), (7, 2), (11, 2), (3, 3), (5, 3)] {
        let f = field_build(p, m).unwrap();
        let has_root = |low: &[u64]| {
            (0..p).any(|r| {
                let mut acc = 1u64;
                for &c in low.iter().rev() {
                    acc = (acc * r + c) % p;
                }
                acc == 0
            })
        };
        let mut first = None;
        'outer: for idx in 0..p.pow(m) {
            // c0 most significant
            let mut low = vec![0u64; m as usize];
            let mut rest = idx;
            for slot in low.iter_mut().rev() {
                *slot = rest % p;
                rest /= p;
            }
            if !has_root(&low) {
                first = Some(low);
                break 'outer;
            }
        }
        let mut expect: Vec<u32> = first.unwrap().into_iter().map(|c| c as u32).collect();
        expect.push(1);
        assert_eq!(f.modulus(), expect, "GF({p}^{m})");
    }
}

proptest! {
    #[test]
    fn frobenius_is_additive((f, v) in field_and_elems(2)) {
        let p = f.characteristic() as u64;
        prop_assert_eq!((v[0] + v[1]).pow(p), v[0].pow(p) + v[1].pow(p));
    }

    #[test]
    fn fermat((f, v) in field_and_elems(1)) {
        let a = v[0];
        prop_assert_eq!(a.pow(f.order()), a);
        if !a.is_zero() {
            prop_assert!(a.pow(f.order() - 1).is_one());
        }
    }

    #[test]
    fn sqrt_squares_back((f, v) in field_and_elems(1)) {
        prop_assume!(f.characteristic() != 2);
        let a = v[0];
        match a.sqrt().unwrap() {
            Some(r) => prop_assert_eq!(r * r, a),
            None => prop_assert!(!a.is_square().unwrap()),
        }
    }

    #[test]
    fn element_serialization_round_trips((f, v) in field_and_elems(1)) {
        prop_assert_eq!(f.parse_element(&v[0].to_string()).unwrap(), v[0]);
        prop_assert_eq!(f.to_string().parse::<FieldSpec>().unwrap(), f);
    }
}
