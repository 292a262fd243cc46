use std::sync::Arc;

use proptest::prelude::*;
use rankcrit::gf::{field_pair, Elem, Field};
use rankcrit::linpoly::{LinPoly, MooreSolver};

fn fields() -> Vec<(Arc<Field>, Arc<Field>)> {
    [(2u64, 3u32), (2, 4), (3, 2), (3, 3), (4, 2), (5, 2)].iter().map(|&(q, n)| field_pair(q, n).unwrap()).collect()
}

fn pick() -> impl Strategy<Value = (usize, Vec<u32>)> {
    (0usize..6, prop::collection::vec(any::<u32>(), 12))
}

proptest! {
    #[test]
    fn field_axioms((fi, raw) in pick()) {
        let (_, f) = &fields()[fi];
        let o = f.order() as u32;
        let v: Vec<Elem> = raw.iter().map(|x| x % o).collect();
        let (a, b, c) = (v[0], v[1], v[2]);
        prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
        prop_assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
        prop_assert_eq!(f.sub(f.add(a, b), b), a);
        if a != 0 {
            prop_assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
        }
        // Frobenius is additive, the norm multiplicative, the trace additive
        prop_assert_eq!(f.frobenius(f.add(a, b), 1), f.add(f.frobenius(a, 1), f.frobenius(b, 1)));
        prop_assert_eq!(f.norm(f.mul(a, b)), f.mul(f.norm(a), f.norm(b)));
        prop_assert_eq!(f.trace(f.add(a, b)), f.add(f.trace(a), f.trace(b)));
        prop_assert!((f.norm(a) as u64) < f.base_order());
        prop_assert_eq!(f.frobenius(a, f.degree()), a);
    }

    #[test]
    fn composition_is_matrix_product((fi, raw) in pick()) {
        let (base, f) = &fields()[fi];
        let n = f.degree() as usize;
        let o = f.order() as u32;
        let p = LinPoly::new(f.clone(), raw[..n].iter().map(|x| x % o).collect()).unwrap();
        let g = LinPoly::new(f.clone(), raw[n..2 * n].iter().map(|x| x % o).collect()).unwrap();
        let pg = p.compose(&g).unwrap();
        let a = raw[11] % o;
        prop_assert_eq!(pg.evaluate(a), p.evaluate(g.evaluate(a)));
        prop_assert_eq!(pg.to_matrix(), p.to_matrix().mul(base, &g.to_matrix()));
        // evaluation is F_q-linear
        let b = raw[10] % o;
        prop_assert_eq!(p.evaluate(f.add(a, b)), f.add(p.evaluate(a), p.evaluate(b)));
    }

    #[test]
    fn interpolation_round_trip((fi, raw) in pick()) {
        let (_, f) = &fields()[fi];
        let n = f.degree() as usize;
        let o = f.order() as u32;
        let p = LinPoly::new(f.clone(), raw[..n].iter().map(|x| x % o).collect()).unwrap();
        let back = MooreSolver::new(f.clone()).unwrap().from_matrix(&p.to_matrix()).unwrap();
        prop_assert_eq!(back.coeffs(), p.coeffs());
    }

    #[test]
    fn adjoint_is_trace_transpose((fi, raw) in pick()) {
        let (_, f) = &fields()[fi];
        let n = f.degree() as usize;
        let o = f.order() as u32;
        let p = LinPoly::new(f.clone(), raw[..n].iter().map(|x| x % o).collect()).unwrap();
        let (a, b) = (raw[10] % o, raw[11] % o);
        let adj = p.adjoint();
        prop_assert_eq!(f.trace(f.mul(p.evaluate(a), b)), f.trace(f.mul(a, adj.evaluate(b))));
        let twice = adj.adjoint();
        prop_assert_eq!(twice.coeffs(), p.coeffs());
    }
}
