//! The operator calculus: worked examples against independent oracles, and
//! the algebra laws M1-M8.

mod common;

use common::{act, arb_admissible, arb_operator, arb_poly_operator, ctx, op, op_at, sym, test_monomials};
use mdcalc_core::{adjoint, Error, Floor, Operator, Order};
use proptest::prelude::*;

#[test]
fn compose_matches_the_action_oracle() {
    // compose(xi, x xi) is the action p |-> (x p')' = p' + x p''.
    let c = ctx(1, -6);
    let d = op(c, "xi1");
    let xd = op(c, "x1*xi1");
    let prod = d.compose(&xd).unwrap();
    assert_eq!(prod, op(c, "x1*xi1^2 + xi1"));
    for f in test_monomials(1, 6) {
        assert_eq!(act(&prod, &f), act(&d, &act(&xd, &f)));
    }

    // compose(x xi, xi) is p |-> x p''.
    let prod = xd.compose(&d).unwrap();
    assert_eq!(prod, op(c, "x1*xi1^2"));
    for f in test_monomials(1, 6) {
        assert_eq!(act(&prod, &f), act(&xd, &act(&d, &f)));
    }
}

#[test]
fn commutator_examples() {
    let c = ctx(1, -6);
    // [d, x d] = d
    assert_eq!(op(c, "xi1").commutator(&op(c, "x1*xi1")).unwrap(), op(c, "xi1"));
    // [x, d] p = x p' - (x p)' = -p
    assert_eq!(op(c, "x1").commutator(&op(c, "xi1")).unwrap(), op(c, "-1"));
    // [P, P] = 0, certified zero for exact P
    let p = op(c, "x1^2*xi1^2 + xi1 + x1^-1");
    let z = p.commutator(&p).unwrap();
    assert_eq!(z.order(), Order::MinusInfinity);
}

#[test]
fn order_and_symbols() {
    let c = ctx(1, -6);
    let p = op(c, "x1*xi1^2 + xi1");
    assert_eq!(p.order(), Order::Finite(2));
    assert_eq!(p.symbol_at(2).unwrap(), sym(1, "x1*xi1^2"));
    assert_eq!(p.symbol_at(0).unwrap(), sym(1, "0"));
    assert_eq!(p.principal_symbol().unwrap(), &sym(1, "x1*xi1^2"));

    assert_eq!(Operator::zero(c).order(), Order::MinusInfinity);

    let truncated_zero = Operator::new(c, Floor::At(-4), []).unwrap();
    assert_eq!(truncated_zero.order(), Order::BelowFloor(-4));

    let q = p.truncated(-3);
    assert!(matches!(
        q.symbol_at(-5),
        Err(Error::FloorViolation { degree: -5, floor: -3 })
    ));
}

#[test]
fn gr_examples() {
    let c = ctx(1, -6);
    let p = op(c, "x1*xi1^2 + xi1");
    let g = p.gr();
    assert_eq!(g.components().len(), 2);
    assert_eq!(g.component(2).unwrap(), &sym(1, "x1*xi1^2"));
    assert_eq!(g.component(1).unwrap(), &sym(1, "xi1"));
    assert!(Operator::zero(c).gr().is_zero());
}

#[test]
fn invert_worked_values() {
    let c = ctx(1, -6);
    let one = Operator::one(c);
    assert_eq!(one.invert(-4).unwrap(), one);

    // The Neumann series for (1 - x xi^-1)^-1, truncated at -2: the alpha=1
    // cross term x xi^-3 falls below the floor.
    let p = op(c, "1 - x1*xi1^-1");
    let inv = p.invert(-2).unwrap();
    assert_eq!(inv, op_at(c, "1 + x1*xi1^-1 + x1^2*xi1^-2", -2));
    assert_eq!(inv.floor(), Floor::At(-2));
    assert_eq!(inv.to_string(), "1 + x1*xi1^-1 + x1^2*xi1^-2");

    // d has exact symbol-inverse xi^-1 since neither depends on x.
    let xi = op(c, "xi1");
    let inv = xi.invert(-2).unwrap();
    assert_eq!(inv, op(c, "xi1^-1"));
    assert!(inv.is_exact());

    // both-sided to the floor
    let p = op(c, "xi1 + x1").truncated(-3);
    let pinv = p.invert(-3).unwrap();
    let left = pinv.compose(&p).unwrap();
    let right = p.compose(&pinv).unwrap();
    assert!(left.sub(&Operator::one(c)).unwrap().is_zero_above(-3));
    assert!(right.sub(&Operator::one(c)).unwrap().is_zero_above(-3));
}

#[test]
fn invert_rejects_non_units() {
    let c = ctx(1, -6);
    // principal symbol x + 1 is not a single monomial
    let p = op(c, "x1 + 1");
    assert!(matches!(p.invert(-2), Err(Error::NotInvertible(_))));
    // all-zero truncated window cannot certify an order
    let z = Operator::new(c, Floor::At(-2), []).unwrap();
    assert!(matches!(z.invert(-4), Err(Error::NotInvertible(_))));
}

#[test]
fn insufficient_floor_is_detected() {
    let c = ctx(1, -6);
    // Reliable only down to -1; inverting to -5 would need more of P.
    let p = op(c, "1 - x1*xi1^-1").truncated(-1);
    assert!(matches!(p.invert(-5), Err(Error::InsufficientFloor { .. })));
}

#[test]
fn ad_worked_values() {
    let c = ctx(1, -6);
    let q = op(c, "x1*xi1^2 + xi1^-1").truncated(-4);
    assert_eq!(Operator::one(c).ad(&q, -4).unwrap(), q);

    let p = op(c, "1 + x1*xi1^-1");
    let conj = p.ad(&op(c, "xi1"), -1).unwrap();
    assert_eq!(conj, op_at(c, "xi1 - xi1^-1", -1));
    assert_eq!(conj.floor(), Floor::At(-1));

    // group law: ad(P, ad(P^-1, Q)) = Q to the common floor
    let pinv = p.invert(-8).unwrap();
    let round = p.ad(&pinv.ad(&q, -3).unwrap(), -2).unwrap();
    assert!(round.agrees_with_above(&q, -2));
}

#[test]
fn sqrt_worked_values() {
    let c = ctx(1, -8);
    let one = Operator::one(c);
    assert_eq!(one.self_adjoint_sqrt(-4).unwrap(), one);

    // x-independent symbols compose commutatively; binomial series.
    let p = op(c, "1 + xi1^-2");
    let q = p.self_adjoint_sqrt(-3).unwrap();
    assert_eq!(q, op_at(c, "1 + 1/2*xi1^-2", -3));

    // defining identities on a non-commutative input
    let a = op(c, "1 + x1*xi1^-1 + x1^2*xi1^-2").truncated(-5);
    let v = a.compose(&adjoint(&a)).unwrap();
    let q = v.self_adjoint_sqrt(-5).unwrap();
    assert!(q.compose(&q).unwrap().agrees_with_above(&v, -5));
    assert!(adjoint(&q).agrees_with_above(&q, -5));
    assert!(q.component(0).unwrap().is_one());
}

#[test]
fn sqrt_rejects_bad_inputs() {
    let c = ctx(1, -8);
    assert!(matches!(
        op(c, "xi1").self_adjoint_sqrt(-3),
        Err(Error::BadPrincipalSymbol(_))
    ));
    assert!(matches!(
        op(c, "2").self_adjoint_sqrt(-3),
        Err(Error::BadPrincipalSymbol(_))
    ));
    // 1 + xi^-1 is not self-adjoint: (xi^-1)* = -xi^-1.
    assert!(matches!(
        op(c, "1 + xi1^-1").self_adjoint_sqrt(-3),
        Err(Error::NotSelfAdjoint { degree: -1 })
    ));
}

#[test]
fn unitarize_worked_values() {
    let c = ctx(1, -8);
    let one = Operator::one(c);
    assert_eq!(one.unitarize(-4).unwrap(), one);

    // 1 + xi^-1 itself fails P P* = 1: (1 + xi^-1)(1 - xi^-1) = 1 - xi^-2.
    let p0 = op(c, "1 + xi1^-1");
    let pp = p0.compose(&adjoint(&p0)).unwrap();
    assert_eq!(pp, op(c, "1 - xi1^-2"));
    let u = p0.unitarize(-4).unwrap();
    let cert = mdcalc_core::is_star_unitary(&u);
    assert!(cert.ok, "unitarize output not star-unitary: {cert:?}");

    // already star-unitary inputs are (to the floor) fixed points
    let u2 = u.unitarize(-4).unwrap();
    assert!(u2.agrees_with_above(&u, -4));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    // Star-product correctness against the differential-operator action
    // oracle, on polynomial symbols.
    #[test]
    fn compose_agrees_with_action(
        p in arb_poly_operator(ctx(2, -4), 2),
        q in arb_poly_operator(ctx(2, -4), 2),
    ) {
        let prod = p.compose(&q).unwrap();
        for f in test_monomials(2, 4) {
            prop_assert_eq!(act(&prod, &f), act(&p, &act(&q, &f)));
        }
    }

    // M1: associativity above the common reliable floor.
    #[test]
    fn m1_associativity(
        p in arb_operator(ctx(2, -8), 1, -3),
        q in arb_operator(ctx(2, -8), 1, -3),
        r in arb_operator(ctx(2, -8), 2, -2),
    ) {
        let left = p.compose(&q).unwrap().compose(&r).unwrap();
        let right = p.compose(&q.compose(&r).unwrap()).unwrap();
        let floor = match left.floor().join(right.floor()) {
            Floor::Exact => i64::MIN,
            Floor::At(f) => f,
        };
        prop_assert!(left.agrees_with_above(&right, floor));
    }

    // M2: unit law and order additivity.
    #[test]
    fn m2_unit_and_filtration(p in arb_operator(ctx(2, -8), 2, -3), q in arb_operator(ctx(2, -8), 1, -2)) {
        let one = Operator::one(p.ctx());
        prop_assert_eq!(one.compose(&p).unwrap(), p.clone());
        prop_assert_eq!(p.compose(&one).unwrap(), p.clone());
        if let (Order::Finite(m), Order::Finite(n)) = (p.order(), q.order()) {
            let prod = p.compose(&q).unwrap();
            prop_assert_eq!(prod.order(), Order::Finite(m + n));
        }
    }

    // M3: the top graded piece of a product is the symbol product.
    #[test]
    fn m3_graded_multiplicativity(p in arb_operator(ctx(2, -8), 2, -2), q in arb_operator(ctx(2, -8), 1, -2)) {
        if let (Order::Finite(m), Order::Finite(n)) = (p.order(), q.order()) {
            let prod = p.compose(&q).unwrap();
            let expected = p.symbol_at(m).unwrap().mul(&q.symbol_at(n).unwrap()).unwrap();
            prop_assert_eq!(prod.symbol_at(m + n).unwrap(), expected);
        }
    }

    // M4: diagram compatibility, sigma_1 of the commutator is the Poisson
    // bracket of the principal symbols for order <= 1 operators.
    #[test]
    fn m4_commutator_vs_poisson(p in arb_operator(ctx(2, -8), 1, -2), q in arb_operator(ctx(2, -8), 1, -2)) {
        let bracket = p.commutator(&q).unwrap();
        let expected = p.symbol_at(1).unwrap().poisson(&q.symbol_at(1).unwrap()).unwrap();
        prop_assert_eq!(bracket.symbol_at(1).unwrap(), expected);
    }

    // M5: inverse laws to the floor.
    #[test]
    fn m5_inverse_laws(p in arb_admissible(ctx(2, -8), -6), q in arb_admissible(ctx(2, -8), -6)) {
        let one = Operator::one(p.ctx());
        let pinv = p.invert(-6).unwrap();
        prop_assert!(p.compose(&pinv).unwrap().sub(&one).unwrap().is_zero_above(-6));
        prop_assert!(pinv.compose(&p).unwrap().sub(&one).unwrap().is_zero_above(-6));
        let back = pinv.invert(-5).unwrap();
        prop_assert!(back.agrees_with_above(&p, -5));
        let prod_inv = p.compose(&q).unwrap().invert(-5).unwrap();
        let anti = q.invert(-6).unwrap().compose(&p.invert(-6).unwrap()).unwrap();
        prop_assert!(prod_inv.agrees_with_above(&anti, -5));
    }

    // M6: ad is a group action and preserves every symbol when the
    // principal symbol is 1.
    #[test]
    fn m6_ad_group_action(
        p in arb_admissible(ctx(1, -8), -6),
        q in arb_admissible(ctx(1, -8), -6),
        r in arb_operator(ctx(1, -8), 1, -4),
    ) {
        let lhs = p.compose(&q).unwrap().ad(&r, -3).unwrap();
        let rhs = p.ad(&q.ad(&r, -4).unwrap(), -3).unwrap();
        prop_assert!(lhs.agrees_with_above(&rhs, -3));
        // symbol preservation
        let conj = p.ad(&r, -3).unwrap();
        for d in -3..=r.top() {
            prop_assert_eq!(conj.symbol_at(d).unwrap(), r.symbol_at(d).unwrap());
        }
    }

    // M7: the square root squares back and is fixed by the adjoint.
    #[test]
    fn m7_sqrt(a in arb_admissible(ctx(1, -8), -5)) {
        let v = a.compose(&adjoint(&a)).unwrap();
        let q = v.self_adjoint_sqrt(-5).unwrap();
        prop_assert!(q.compose(&q).unwrap().agrees_with_above(&v, -5));
        prop_assert!(adjoint(&q).agrees_with_above(&q, -5));
    }

    // M8: recomputing with a strictly lower input floor never changes
    // already-reliable degrees.
    #[test]
    fn m8_floor_soundness(
        p in arb_operator(ctx(2, -8), 1, -3),
        q in arb_operator(ctx(2, -8), 1, -3),
        extra_p in arb_symbol_pair(),
    ) {
        let (e1, e2) = extra_p;
        // deepen p by two extra degrees below its floor
        let mut parts: Vec<_> = p.components().values().cloned().collect();
        parts.push(e1);
        parts.push(e2);
        let deeper = Operator::new(p.ctx(), Floor::At(-5), parts).unwrap();
        let shallow = p.compose(&q).unwrap();
        let deep = deeper.compose(&q).unwrap();
        if let Floor::At(f) = shallow.floor() {
            prop_assert!(deep.agrees_with_above(&shallow, f));
        }
    }
}

prop_compose! {
    fn arb_symbol_pair()(
        a in common::arb_symbol(2, -4),
        b in common::arb_symbol(2, -5),
    ) -> (mdcalc_core::HomogeneousSymbol, mdcalc_core::HomogeneousSymbol) {
        (a, b)
    }
}
