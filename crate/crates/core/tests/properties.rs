use goppa_fold::code::CodeSpec;
use goppa_fold::field::{Elem, Field, SubfieldView};
use goppa_fold::folding::fold_vector;
use goppa_fold::harness::{FieldParams, InstanceFile, ViewParams, Family};
use goppa_fold::invariant::{build_invariant_poly, decompose_invariant, AffineMap};
use goppa_fold::poly::Poly;
use goppa_fold::symmetry::{GroupParams, PermGroup, Permutation};
use proptest::prelude::*;

const FIELDS: [(u32, u32); 6] = [(2, 1), (2, 4), (2, 8), (3, 1), (3, 3), (5, 2)];

fn field() -> impl Strategy<Value = Field> {
    (0..FIELDS.len()).prop_map(|i| Field::new(FIELDS[i].0, FIELDS[i].1, None).unwrap())
}

fn elems(f: &Field, n: usize) -> impl Strategy<Value = Vec<Elem>> {
    prop::collection::vec(0..f.size(), n).prop_map(|v| v.into_iter().map(Elem).collect())
}

fn with_elems(n: usize) -> impl Strategy<Value = (Field, Vec<Elem>)> {
    field().prop_flat_map(move |f| {
        let e = elems(&f, n);
        (Just(f), e)
    })
}

fn poly(f: &Field, max_len: usize) -> impl Strategy<Value = Poly> {
    prop::collection::vec(0..f.size(), 0..max_len).prop_map(|v| Poly::new(v.into_iter().map(Elem).collect()))
}

fn permutation(n: usize) -> impl Strategy<Value = Permutation> {
    Just((0..n).collect::<Vec<usize>>())
        .prop_shuffle()
        .prop_map(|v| Permutation::new(v).unwrap())
}

proptest! {
    #[test]
    fn field_axioms((f, v) in with_elems(3)) {
        let (a, b, c) = (v[0], v[1], v[2]);
        prop_assert_eq!(f.add(a, b), f.add(b, a));
        prop_assert_eq!(f.mul(a, b), f.mul(b, a));
        prop_assert_eq!(f.mul(a, f.mul(b, c)), f.mul(f.mul(a, b), c));
        prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
        prop_assert_eq!(f.add(a, f.neg(a)), Elem(0));
        prop_assert_eq!(f.mul(a, Elem::ONE), a);
        if !a.is_zero() {
            prop_assert_eq!(f.mul(a, f.inv(a).unwrap()), Elem::ONE);
            prop_assert_eq!(f.pow(a, f.mult_order()), Elem::ONE);
        }
        prop_assert_eq!(f.frobenius(f.add(a, b)), f.add(f.frobenius(a), f.frobenius(b)));
    }

    #[test]
    fn trace_lands_in_subfield((f, v) in with_elems(2)) {
        let view = SubfieldView::new(&f, 1).unwrap();
        let t = view.trace(v[0]);
        prop_assert!(view.contains(t));
        prop_assert_eq!(view.trace(f.add(v[0], v[1])), f.add(t, view.trace(v[1])));
    }

    #[test]
    fn poly_divmod((f, a, b) in field().prop_flat_map(|f| { let a = poly(&f, 9); let b = poly(&f, 5); (Just(f), a, b) })) {
        prop_assume!(!b.is_zero());
        let (q, r) = a.divmod(&f, &b).unwrap();
        prop_assert_eq!(q.mul(&f, &b).add(&f, &r), a.clone());
        prop_assert!(r.is_zero() || r.degree() < b.degree());
    }

    #[test]
    fn poly_eval_is_a_ring_map((f, a, b, x) in field().prop_flat_map(|f| {
        let a = poly(&f, 6);
        let b = poly(&f, 6);
        let x = 0..f.size();
        (Just(f), a, b, x)
    })) {
        let x = Elem(x);
        prop_assert_eq!(a.mul(&f, &b).eval(&f, x), f.mul(a.eval(&f, x), b.eval(&f, x)));
        prop_assert_eq!(a.add(&f, &b).eval(&f, x), f.add(a.eval(&f, x), b.eval(&f, x)));
    }

    #[test]
    fn invariant_round_trip((q, d) in (prop::collection::vec(0u32..16, 1..4), 0u64..3)) {
        let f = Field::new(2, 4, None).unwrap();
        let map = AffineMap::new(&f, f.element_of_order(3).unwrap(), Elem(6)).unwrap();
        let q = Poly::new(q.into_iter().map(Elem).collect());
        prop_assume!(!q.is_zero());
        let gamma = build_invariant_poly(&f, &q, &map, d).unwrap();
        let alpha = map.alpha_for(&f, d).unwrap();
        prop_assert_eq!(decompose_invariant(&f, &gamma, &map, alpha).unwrap(), (d, q));
    }

    #[test]
    fn permutation_laws(p in permutation(9), s in permutation(9), k in 0u64..20) {
        prop_assert!(p.compose(&p.inverse()).is_identity());
        prop_assert_eq!(p.pow(p.order()), Permutation::identity(9));
        prop_assert_eq!(p.pow(k + 1), p.pow(k).compose(&p));
        prop_assert_eq!(p.compose(&s).inverse(), s.inverse().compose(&p.inverse()));
    }

    #[test]
    fn fold_is_linear((f, u, v, c) in field().prop_flat_map(|f| {
        let u = elems(&f, 12);
        let v = elems(&f, 12);
        let c = 0..f.size();
        (Just(f), u, v, c)
    }), sigma in permutation(12)) {
        let g = PermGroup::cyclic(&sigma);
        let c = Elem(c);
        let sum: Vec<Elem> = u.iter().zip(&v).map(|(&a, &b)| f.add(f.mul(c, a), b)).collect();
        let lhs = fold_vector(&f, &sum, &g);
        let fu = fold_vector(&f, &u, &g);
        let fv = fold_vector(&f, &v, &g);
        let rhs: Vec<Elem> = fu.iter().zip(&fv).map(|(&a, &b)| f.add(f.mul(c, a), b)).collect();
        prop_assert_eq!(lhs.len(), g.orbits().len());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn instance_toml_round_trip(seed in any::<u64>(), y in prop::collection::vec(1u32..256, 1..12), t in 1usize..6) {
        let f = Field::new(2, 8, None).unwrap();
        let x: Vec<Elem> = (0..y.len() as u32).map(Elem).collect();
        let fp = FieldParams::new(2, 8).unwrap();
        let inst = InstanceFile {
            family: Family::Qc,
            seed,
            field: fp.clone(),
            view: ViewParams::prime_subfield(&fp),
            group: Some(GroupParams::Qc { a: f.element_of_order(3).unwrap(), b: Elem(0) }),
            code: CodeSpec::alternant(x, t, y.into_iter().map(Elem).collect()),
        };
        let text = inst.to_toml().unwrap();
        let back = InstanceFile::from_toml(&text).unwrap();
        prop_assert_eq!(&back, &inst);
        prop_assert_eq!(back.digest().unwrap(), inst.digest().unwrap());
    }
}
