#![allow(dead_code)]

//! Shared helpers for the integration suites: parsing shortcuts, proptest
//! strategies, and the differential-operator action oracle.

use mdcalc_core::{
    Floor, HomogeneousSymbol, Monomial, Operator, Scalar, TruncationContext,
};
use proptest::prelude::*;
use std::collections::BTreeMap;

pub fn ctx(vars: usize, default_floor: i64) -> TruncationContext {
    TruncationContext::new(vars, default_floor)
}

/// Exact operator from total-symbol text.
pub fn op(c: TruncationContext, text: &str) -> Operator {
    Operator::parse_exact(c, text).unwrap()
}

/// Homogeneous symbol from text; the degree is taken from the first term.
pub fn sym(vars: usize, text: &str) -> HomogeneousSymbol {
    let terms = mdcalc_core::text::parse_terms(text, vars).unwrap();
    let degree = terms.first().map(|t| t.degree()).unwrap_or(0);
    HomogeneousSymbol::from_terms(vars, degree, terms).unwrap()
}

/// Truncates an exact text operator to the given floor.
pub fn op_at(c: TruncationContext, text: &str, floor: i64) -> Operator {
    op(c, text).truncated(floor)
}

// ---------------------------------------------------------------------------
// Differential-operator action oracle.
//
// A polynomial-symbol operator acts on polynomials: the monomial
// `c x^a xi^b` sends `f` to `c x^a d^b f`. Composition of operators must
// agree with composition of these actions; this is independent of the
// Leibniz-product implementation.
// ---------------------------------------------------------------------------

/// A polynomial in the x variables with Gaussian-rational coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly {
    pub coeffs: BTreeMap<Vec<i64>, Scalar>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { coeffs: BTreeMap::new() }
    }

    pub fn monomial(exps: Vec<i64>, c: Scalar) -> Self {
        assert!(exps.iter().all(|&e| e >= 0));
        let mut coeffs = BTreeMap::new();
        if !c.is_zero() {
            coeffs.insert(exps, c);
        }
        Poly { coeffs }
    }

    pub fn add_term(&mut self, exps: Vec<i64>, c: Scalar) {
        let entry = self.coeffs.entry(exps.clone()).or_insert_with(Scalar::zero);
        *entry = entry.clone() + &c;
        if entry.is_zero() {
            self.coeffs.remove(&exps);
        }
    }

    pub fn d_x(&self, v: usize) -> Poly {
        let mut out = Poly::zero();
        for (exps, c) in &self.coeffs {
            let e = exps[v];
            if e == 0 {
                continue;
            }
            let mut ne = exps.clone();
            ne[v] = e - 1;
            out.add_term(ne, c * &Scalar::from_int(e));
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

/// Applies an operator with polynomial symbols (all exponents nonnegative)
/// to a polynomial test function.
pub fn act(p: &Operator, f: &Poly) -> Poly {
    let mut out = Poly::zero();
    for comp in p.components().values() {
        for t in comp.terms() {
            assert!(
                t.x_exps.iter().all(|&e| e >= 0) && t.xi_exps.iter().all(|&e| e >= 0),
                "action oracle needs polynomial symbols"
            );
            let mut df = f.clone();
            for (v, &b) in t.xi_exps.iter().enumerate() {
                for _ in 0..b {
                    df = df.d_x(v);
                }
            }
            for (exps, c) in &df.coeffs {
                let shifted: Vec<i64> = exps.iter().zip(&t.x_exps).map(|(e, a)| e + a).collect();
                out.add_term(shifted, c * &t.coeff);
            }
        }
    }
    out
}

/// All monomial test functions of total degree `<= max_total` in `vars`
/// variables.
pub fn test_monomials(vars: usize, max_total: i64) -> Vec<Poly> {
    let mut out = Vec::new();
    let mut exps = vec![0i64; vars];
    loop {
        if exps.iter().sum::<i64>() <= max_total {
            out.push(Poly::monomial(exps.clone(), Scalar::one()));
        }
        let mut pos = vars;
        loop {
            if pos == 0 {
                return out;
            }
            pos -= 1;
            exps[pos] += 1;
            if exps[pos] <= max_total {
                break;
            }
            exps[pos] = 0;
        }
    }
}

// ---------------------------------------------------------------------------
// proptest strategies
// ---------------------------------------------------------------------------

/// Small pool of exact coefficients, negative exponents and i included.
pub fn arb_scalar() -> impl Strategy<Value = Scalar> {
    prop_oneof![
        Just(Scalar::one()),
        Just(Scalar::from_int(-1)),
        Just(Scalar::from_int(2)),
        Just(Scalar::from_int(-3)),
        Just(Scalar::from_ratio(1, 2)),
        Just(Scalar::from_ratio(-2, 3)),
        Just(Scalar::i()),
        Just(-Scalar::i()),
        Just(Scalar::from_parts(1, 1, 1, 1)),
    ]
}

/// Random homogeneous symbol of the given degree with Laurent exponents in
/// a small window.
pub fn arb_symbol(vars: usize, degree: i64) -> impl Strategy<Value = HomogeneousSymbol> {
    let term = (
        arb_scalar(),
        prop::collection::vec(-2i64..=2, vars),
        prop::collection::vec(-2i64..=2, vars - 1),
    )
        .prop_map(move |(c, x_exps, mut xi_head)| {
            let partial: i64 = xi_head.iter().sum();
            xi_head.push(degree - partial);
            Monomial::new(c, x_exps, xi_head)
        });
    prop::collection::vec(term, 0..=3).prop_map(move |terms| {
        HomogeneousSymbol::from_terms(vars, degree, terms).unwrap()
    })
}

/// Random truncated operator with components between `floor` and `top`.
pub fn arb_operator(
    c: TruncationContext,
    top: i64,
    floor: i64,
) -> impl Strategy<Value = Operator> {
    let degrees: Vec<i64> = (floor..=top).collect();
    let comps = degrees
        .into_iter()
        .map(|d| prop_oneof![2 => arb_symbol(c.vars, d), 1 => Just(HomogeneousSymbol::zero(c.vars, d))])
        .collect::<Vec<_>>();
    (comps, prop::bool::weighted(0.25)).prop_map(move |(parts, exact)| {
        let marker = if exact { Floor::Exact } else { Floor::At(floor) };
        Operator::new(c, marker, parts).unwrap()
    })
}

/// Random exact operator with polynomial symbols (all exponents >= 0) of
/// order at most `max_order`.
pub fn arb_poly_operator(c: TruncationContext, max_order: i64) -> impl Strategy<Value = Operator> {
    let term = (0..=max_order).map(move |d| {
        let mono = (
            arb_scalar(),
            prop::collection::vec(0i64..=2, c.vars),
            partition(c.vars, d),
        )
            .prop_map(|(coeff, x_exps, xi_exps)| Monomial::new(coeff, x_exps, xi_exps));
        prop::collection::vec(mono, 0..=2)
            .prop_map(move |ts| HomogeneousSymbol::from_terms(c.vars, d, ts).unwrap())
    });
    term.collect::<Vec<_>>()
        .prop_map(move |parts| Operator::new(c, Floor::Exact, parts).unwrap())
}

/// Nonnegative xi-exponent vectors of total degree `d`.
fn partition(vars: usize, d: i64) -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(0i64..=d.max(0), vars - 1).prop_map(move |head| {
        let mut v = head;
        let used: i64 = v.iter().sum();
        if used > d {
            // renormalize overflowing draws onto the simplex
            let mut rem = d;
            for e in v.iter_mut() {
                *e = (*e).min(rem);
                rem -= *e;
            }
            v.push(rem);
        } else {
            v.push(d - used);
        }
        v
    })
}

/// Random operator of order 0 with principal symbol 1 (the star-unitary
/// candidates), truncated at `floor`.
pub fn arb_admissible(c: TruncationContext, floor: i64) -> impl Strategy<Value = Operator> {
    let degrees: Vec<i64> = (floor..=-1).collect();
    let comps = degrees
        .into_iter()
        .map(|d| prop_oneof![1 => arb_symbol(c.vars, d), 1 => Just(HomogeneousSymbol::zero(c.vars, d))])
        .collect::<Vec<_>>();
    comps.prop_map(move |mut parts| {
        parts.push(HomogeneousSymbol::one(c.vars));
        Operator::new(c, Floor::At(floor), parts).unwrap()
    })
}
