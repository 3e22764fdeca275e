mod common;

use common::{census, E, NK};
use kites::check::{check_identity, Checker, DEFAULT_MAX_EVALS};
use kites::grid::grid;
use kites::structure::{is_good_shape, is_psmv_shape};
use kites::{catalog_identity, eval_term, parse_identity_file, parse_term, KiteError, Term};

#[test]
fn evaluation_examples() {
    let o = NK::new(2, 1, &[0], &[1]);
    let s = o.shape();
    let x = E::U(vec![-2, -3]);
    let y = E::L(vec![5]);
    let want = o.mul(&x, &o.ldiv(&x, &y));
    assert_eq!(want, o.meet(&x, &y));
    let t = parse_term("x*(x\\y)").unwrap();
    let env = [("x", o.to_lib(&s, &x)), ("y", o.to_lib(&s, &y))];
    assert_eq!(eval_term(&s, &t, &env).unwrap(), o.to_lib(&s, &want));

    let a = E::U(vec![-1, 0]);
    let t = parse_term("~~x").unwrap();
    let got = eval_term(&s, &t, &[("x", o.to_lib(&s, &a))]).unwrap();
    assert_eq!(got, o.to_lib(&s, &o.lneg(&o.lneg(&a))));
    assert_eq!(got.to_string(), "U[0,-1]");

    assert_eq!(eval_term(&s, &Term::One, &[]).unwrap(), s.one());
    assert!(matches!(
        eval_term(&s, &parse_term("x*z").unwrap(), &env),
        Err(KiteError::UnboundVariable(v)) if v == "z"
    ));
}

/// Oracle for the two-variable characterisation identities: the least
/// violating (x, y) in the library's grid order, computed with the naive
/// implementation.
fn oracle_first_violation(o: &NK, grid_e: &[E], law: &dyn Fn(&NK, &E, &E) -> bool) -> Option<(usize, usize)> {
    for (a, x) in grid_e.iter().enumerate() {
        for (b, y) in grid_e.iter().enumerate() {
            if !law(o, x, y) {
                return Some((a, b));
            }
        }
    }
    None
}

fn to_oracle(x: &kites::Element) -> E {
    let v: Vec<i64> = x
        .dense_entries()
        .unwrap()
        .iter()
        .map(|g| g.coords()[0].as_i64().unwrap())
        .collect();
    if x.is_upper() {
        E::U(v)
    } else {
        E::L(v)
    }
}

#[test]
fn mvint_and_good_track_the_shape_predicates() {
    let mvint = catalog_identity("mvint").unwrap();
    let good = catalog_identity("good").unwrap();
    let mv_law = |o: &NK, x: &E, y: &E| {
        let j = o.join(x, y);
        o.rdiv(x, &o.ldiv(y, x)) == j && o.ldiv(&o.rdiv(x, y), x) == j
    };
    let good_law = |o: &NK, x: &E, _y: &E| o.lneg(&o.rneg(x)) == o.rneg(&o.lneg(x));
    for o in census(3) {
        let s = o.shape();
        let g = grid(&s, 1).unwrap();
        let ge: Vec<E> = g.iter().map(to_oracle).collect();

        let r = check_identity(&s, &mvint, 1, DEFAULT_MAX_EVALS).unwrap();
        let want = oracle_first_violation(&o, &ge, &mv_law);
        assert_eq!(r.holds, want.is_none(), "{s}");
        assert_eq!(r.holds, is_psmv_shape(&s), "{s}");
        if let (Some(ce), Some((a, b))) = (&r.counterexample, want) {
            assert_eq!(ce[0].1, g[a]);
            assert_eq!(ce[1].1, g[b]);
            assert_eq!(r.evaluations, (a * g.len() + b + 1) as u128);
        }

        let r = check_identity(&s, &good, 1, DEFAULT_MAX_EVALS).unwrap();
        let want = oracle_first_violation(&o, &ge, &good_law).map(|(a, _)| a);
        assert_eq!(r.holds, is_good_shape(&s), "{s}");
        assert_eq!(r.counterexample.map(|c| c[0].1.clone()), want.map(|a| g[a].clone()));
    }
}

#[test]
fn psbl_laws_and_normal_valuedness_hold_on_small_grids() {
    let names = ["integral", "zerobounded", "divis", "divint", "prelin", "nvalued"];
    for o in census(2) {
        let s = o.shape();
        for n in names {
            let id = catalog_identity(n).unwrap();
            assert!(
                check_identity(&s, &id, 2, DEFAULT_MAX_EVALS).unwrap().holds,
                "{n} on {s}"
            );
        }
        assert!(
            !check_identity(&s, &catalog_identity("rl").unwrap(), 1, DEFAULT_MAX_EVALS)
                .unwrap()
                .holds
        );
    }
}

#[test]
fn counterexamples_re_evaluate_to_violations() {
    let s = kites::Shape::chain(1);
    for name in ["mvint", "good", "comm", "dblneg", "lg", "mvgen"] {
        let id = catalog_identity(name).unwrap();
        let r = check_identity(&s, &id, 2, DEFAULT_MAX_EVALS).unwrap();
        let ce = r.counterexample.expect(name);
        let env = |v: &str| ce.iter().find(|(n, _)| n == v).map(|(_, x)| x);
        assert!(!id.holds_with(&s, &env).unwrap(), "{name}");
    }
}

#[test]
fn evaluation_counts_and_cap() {
    let s = kites::Shape::cycle(3);
    let id = catalog_identity("nvalued").unwrap();
    let c = Checker::new(&s, &id, 1, DEFAULT_MAX_EVALS).unwrap();
    assert_eq!(c.total(), (8 + 8) * (8 + 8));
    let k44 = kites::Shape::cycle(4);
    let c = Checker::new(&k44, &id, 2, DEFAULT_MAX_EVALS).unwrap();
    assert_eq!(c.total(), 162 * 162);
    assert!(matches!(
        Checker::new(&s, &id, 1, 10),
        Err(KiteError::BudgetExceeded { needed: 256, cap: 10 })
    ));
}

#[test]
fn identity_files() {
    let text = "# laws\nprelin : x\\y v y\\x = 1\n\nnv : (x*x)*(y*y) <= y*x  # normal-valued\n";
    let ids = parse_identity_file(text).unwrap();
    assert_eq!(ids.len(), 2);
    assert_eq!(ids[1].0, "nv");
    assert_eq!(ids[1].1, catalog_identity("nvalued").unwrap());
    assert!(matches!(
        parse_identity_file("a : x = \n"),
        Err(KiteError::Syntax { pos: 1, .. })
    ));
    assert!(matches!(
        parse_identity_file("ok : x = x\nbad x = x"),
        Err(KiteError::Syntax { pos: 2, .. })
    ));
}
