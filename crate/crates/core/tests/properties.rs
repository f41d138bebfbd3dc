mod common;

use proptest::prelude::*;

use orthofermion::cylinder::{run_word, trace_word, word_matrix, CylinderState, OpWord, Token};
use orthofermion::dsl::{boson_raising_count, eval, parse, Atom, EvalContext, Expr};
use orthofermion::representations::{b_op, c_dag_op, c_op, number_ops};
use orthofermion::symmetries::Z2Spec;
use orthofermion::{Complex, Operator, SpaceConfig};

fn complex() -> impl Strategy<Value = Complex> {
    (-3i32..=3, -3i32..=3).prop_map(|(re, im)| Complex::new(re as f64 * 0.5, im as f64 * 0.25))
}

fn matrix(dim: usize) -> impl Strategy<Value = Operator> {
    prop::collection::vec(complex(), dim * dim).prop_map(move |d| Operator::new(dim, d).unwrap())
}

fn token(p: usize) -> impl Strategy<Value = Token> {
    (any::<bool>(), 1..=p).prop_map(|(up, k)| {
        if up {
            Token::create(k)
        } else {
            Token::annihilate(k)
        }
    })
}

fn word(p: usize) -> impl Strategy<Value = OpWord> {
    prop::collection::vec(token(p), 0..8).prop_map(OpWord)
}

fn atom(p: usize) -> impl Strategy<Value = Atom> {
    prop_oneof![
        Just(Atom::A),
        (1..=p).prop_map(Atom::C),
        (1..=p).prop_map(Atom::B),
        Just(Atom::N),
        Just(Atom::NN),
        Just(Atom::H),
        Just(Atom::Q),
        Just(Atom::Qz),
        Just(Atom::Tau),
        Just(Atom::Tauz),
        Just(Atom::I),
    ]
}

fn expr(p: usize) -> impl Strategy<Value = Expr> {
    atom(p)
        .prop_map(Expr::Atom)
        .prop_recursive(4, 24, 2, |inner| {
            prop_oneof![
                inner.clone().prop_map(Expr::dag),
                (inner.clone(), inner.clone()).prop_map(|(x, y)| Expr::mul(x, y)),
                (inner.clone(), inner.clone()).prop_map(|(x, y)| Expr::add(x, y)),
                (inner.clone(), inner.clone()).prop_map(|(x, y)| Expr::sub(x, y)),
                (complex(), inner.clone()).prop_map(|(z, x)| Expr::scale(z, x)),
                (inner.clone(), 0u32..=3).prop_map(|(x, k)| Expr::pow(x, k)),
                (inner.clone(), inner.clone()).prop_map(|(x, y)| Expr::comm(x, y)),
                (inner.clone(), inner.clone()).prop_map(|(x, y)| Expr::acomm(x, y)),
                (inner.clone(), inner).prop_map(|(x, y)| Expr::qcomm(x, y)),
            ]
        })
}

fn ctx(p: usize, d: usize) -> EvalContext {
    let cfg = SpaceConfig::new(p, d).unwrap();
    if p >= 2 {
        EvalContext::new(cfg).with_z2(Z2Spec::new(cfg, 1).unwrap())
    } else {
        EvalContext::new(cfg)
    }
}

/// Atoms valid at p = 1 (no Q, indices fixed to 1).
fn strip_for_p1(e: &Expr) -> bool {
    match e {
        Expr::Atom(Atom::Q) => false,
        Expr::Atom(_) => true,
        Expr::Dag(x) | Expr::Scale(_, x) | Expr::Pow(x, _) => strip_for_p1(x),
        Expr::Mul(x, y)
        | Expr::Add(x, y)
        | Expr::Sub(x, y)
        | Expr::Comm(x, y)
        | Expr::Acomm(x, y)
        | Expr::Qcomm(x, y) => strip_for_p1(x) && strip_for_p1(y),
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn adjoint_reverses_products(x in matrix(4), y in matrix(4)) {
        let lhs = x.mul(&y).unwrap().adjoint();
        let rhs = y.adjoint().mul(&x.adjoint()).unwrap();
        prop_assert!(lhs.residual_norm(&rhs).unwrap() <= 1e-14);
    }

    #[test]
    fn tensor_is_associative(x in matrix(2), y in matrix(2), z in matrix(3)) {
        let l = x.tensor(&y).tensor(&z);
        let r = x.tensor(&y.tensor(&z));
        prop_assert_eq!(l, r);
    }

    #[test]
    fn tensor_mixed_product(a in matrix(2), b in matrix(3), c in matrix(2), d in matrix(3)) {
        let lhs = a.tensor(&b).mul(&c.tensor(&d)).unwrap();
        let rhs = a.mul(&c).unwrap().tensor(&b.mul(&d).unwrap());
        prop_assert!(lhs.residual_norm(&rhs).unwrap() <= 1e-12);
    }

    #[test]
    fn residual_is_a_metric(x in matrix(3), y in matrix(3), z in matrix(3)) {
        let d = |a: &Operator, b: &Operator| a.residual_norm(b).unwrap();
        prop_assert_eq!(d(&x, &x), 0.0);
        prop_assert_eq!(d(&x, &y), d(&y, &x));
        prop_assert!(d(&x, &z) <= d(&x, &y) + d(&y, &z) + 1e-15);
    }

    #[test]
    fn machine_is_deterministic_and_matches_matrices(p in 1usize..=4, w in word(4), init in 0usize..=4) {
        let w = OpWord(w.0.into_iter().filter(|t| t.position <= p).collect());
        let init = init.min(p);
        let a = run_word(p, &w, CylinderState::Fill(init)).unwrap();
        let b = run_word(p, &w, CylinderState::Fill(init)).unwrap();
        prop_assert_eq!(a, b);

        let m = word_matrix(p, &w).unwrap();
        let col = m.column(init);
        for (i, z) in col.iter().enumerate() {
            prop_assert!(z.im == 0.0 && (z.re == 0.0 || z.re == 1.0));
            let expected = a == CylinderState::Fill(i);
            prop_assert_eq!(z.re == 1.0, expected);
        }
        // partial injection: at most one 1 per row and per column
        for j in 0..=p {
            prop_assert!(m.column(j).iter().filter(|z| z.re != 0.0).count() <= 1);
        }
        let adj = m.adjoint();
        for j in 0..=p {
            prop_assert!(adj.column(j).iter().filter(|z| z.re != 0.0).count() <= 1);
        }
    }

    #[test]
    fn create_then_remove_is_lifo(p in 1usize..=6, fill in 0usize..=6) {
        let fill = fill.min(p);
        if fill < p {
            let w: OpWord = format!("b-{0} b+{0}", fill + 1).parse().unwrap();
            let trace = trace_word(p, &w, CylinderState::Fill(fill)).unwrap();
            prop_assert_eq!(trace.last().copied(), Some(CylinderState::Fill(fill)));
            // any other removal from the top fails
            for k in (1..=p).filter(|&k| k != fill + 1) {
                let w: OpWord = format!("b-{k} b+{}", fill + 1).parse().unwrap();
                prop_assert_eq!(run_word(p, &w, CylinderState::Fill(fill)).unwrap(), CylinderState::Null);
            }
        }
    }

    #[test]
    fn representations_are_matrix_units(p in 1usize..=6, alpha in 1usize..=6) {
        let alpha = alpha.min(p);
        let c = c_op(p, alpha).unwrap();
        prop_assert_eq!(c.nonzero_count(), 1);
        prop_assert_eq!(c.get(0, alpha), Complex::new(1.0, 0.0));
        prop_assert_eq!(b_op(p, alpha).unwrap(), Operator::unit(p + 1, alpha - 1, alpha));
        let (n, nn) = number_ops(p).unwrap();
        prop_assert_eq!(n.mul(&n).unwrap(), n.clone());
        prop_assert_eq!(nn.get(alpha, alpha), Complex::new(alpha as f64, 0.0));
        // c_a c_a^dag + sum_g c_g^dag c_g = 1
        let mut acc = c.mul(&c_dag_op(p, alpha).unwrap()).unwrap();
        for g in 1..=p {
            acc = acc.add(&c_dag_op(p, g).unwrap().mul(&c_op(p, g).unwrap()).unwrap()).unwrap();
        }
        prop_assert_eq!(acc, Operator::identity(p + 1));
    }

    #[test]
    fn print_parse_round_trip(e in expr(3)) {
        let printed = e.to_string();
        let back = parse(&printed);
        prop_assert!(back.is_ok(), "failed to reparse {}", printed);
        prop_assert_eq!(back.unwrap(), e);
    }

    #[test]
    fn eval_is_a_homomorphism(x in expr(2), y in expr(2), z in complex()) {
        let c = ctx(2, 4);
        let (ex, ey) = (eval(&x, &c).unwrap(), eval(&y, &c).unwrap());
        prop_assert_eq!(eval(&Expr::mul(x.clone(), y.clone()), &c).unwrap(), ex.mul(&ey).unwrap());
        prop_assert_eq!(eval(&Expr::add(x.clone(), y.clone()), &c).unwrap(), ex.add(&ey).unwrap());
        prop_assert_eq!(eval(&Expr::dag(x.clone()), &c).unwrap(), ex.adjoint());
        prop_assert_eq!(eval(&Expr::scale(z, x), &c).unwrap(), ex.scale(z).unwrap());
    }

    #[test]
    fn guard_band_matches_larger_cutoff(e in expr(1)) {
        prop_assume!(strip_for_p1(&e));
        let g = boson_raising_count(&e);
        let d = 5;
        prop_assume!(g < d);
        let small = eval(&e, &ctx(1, d)).unwrap();
        let big = eval(&e, &ctx(1, d + g + 2)).unwrap();
        let scale = small.entries().iter().map(|z| z.norm()).fold(1.0, f64::max);
        for col in 0..small.dim() {
            if col / 2 > d - 1 - g {
                continue;
            }
            let (cs, cb) = (small.column(col), big.column(col));
            for (i, zb) in cb.iter().enumerate() {
                let zs = cs.get(i).copied().unwrap_or_default();
                prop_assert!((zs - zb).norm() <= 1e-9 * scale, "column {} row {}", col, i);
            }
        }
    }
}

#[test]
fn sparse_oracle_agrees_with_matrix_generator() {
    // the untruncated ladder model against the matrix Q_z at D = 8, p = 2
    let c = ctx(2, 8);
    let q = eval(&parse("Qz").unwrap(), &c).unwrap();
    for n in 0..7 {
        for s in 0..=2 {
            let v = common::q_zn(2, &common::basis(s, n));
            let col = q.column(n * 3 + s);
            for (i, z) in col.iter().enumerate() {
                let want = v.get(&(i % 3, i / 3)).copied().unwrap_or_default();
                assert!((want - z).norm() < 1e-15);
            }
        }
    }
}
