//! The anti-involution: formal adjoints, star-unitarity, and the
//! commutation-defect identity.
//!
//! With respect to the standard density `dx` the adjoint acts on total
//! symbols as `sigma(P*) = sum_alpha (1/alpha!) d_xi^alpha d_x^alpha g` where
//! `g(x, xi) = sigma(P)(x, -xi)`; on a homogeneous degree-j component the
//! substitution is the scale factor `(-1)^j`. The involution is C-linear:
//! coefficients are not conjugated. For an invertible monomial density
//! `theta = f dx` the adjoint is the conjugate `M_{1/f} o (.)* o M_f`.

use crate::error::{Error, Result};
use crate::operator::{derivative_cache, inv_factorial, Floor, Operator, Order, Step};
use crate::scalar::Scalar;
use crate::symbol::{HomogeneousSymbol, Monomial};
use std::collections::BTreeMap;
use std::fmt;

/// An invertible volume density `theta = f dx` with `f` a unit monomial in
/// the `x` variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VolumeDensity {
    mono: Monomial,
}

impl VolumeDensity {
    pub fn new(mono: Monomial) -> Result<Self> {
        if mono.coeff.is_zero() {
            return Err(Error::Schema("volume density must have nonzero coefficient".into()));
        }
        if mono.xi_exps.iter().any(|&e| e != 0) {
            return Err(Error::Schema("volume density must not involve xi variables".into()));
        }
        Ok(VolumeDensity { mono })
    }

    /// The standard density `dx`.
    pub fn standard(vars: usize) -> Self {
        VolumeDensity { mono: Monomial::constant(Scalar::one(), vars) }
    }

    /// Parses a single-monomial density like `x1` or `2*x1^2*x2^-1`.
    pub fn parse(text: &str, vars: usize) -> Result<Self> {
        let terms = crate::text::parse_terms(text, vars)?;
        if terms.len() != 1 {
            return Err(Error::Schema("volume density must be a single monomial".into()));
        }
        VolumeDensity::new(terms.into_iter().next().unwrap())
    }

    pub fn vars(&self) -> usize {
        self.mono.vars()
    }

    pub fn monomial(&self) -> &Monomial {
        &self.mono
    }

    pub fn is_standard(&self) -> bool {
        self.mono.coeff.is_one() && self.mono.x_exps.iter().all(|&e| e == 0)
    }
}

impl fmt::Display for VolumeDensity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", crate::text::render_terms([&self.mono]))
    }
}

/// Embeds a Laurent monomial as the order-0 multiplication operator.
pub fn mult_op(op_like: &Operator, mono: &Monomial) -> Result<Operator> {
    if mono.degree() != 0 {
        return Err(Error::Schema("multiplication operator must have xi-degree 0".into()));
    }
    Operator::from_symbol(
        op_like.ctx(),
        HomogeneousSymbol::from_terms(op_like.vars(), 0, [mono.clone()])?,
    )
}

/// Formal adjoint with respect to `dx`. Preserves top and floor; an exact
/// operator stays exact whenever the derivative sum terminates (every term
/// has, for each variable, a nonnegative `x` or a nonnegative `xi` exponent),
/// and otherwise falls back to the context's default floor.
pub fn adjoint(p: &Operator) -> Operator {
    let vars = p.vars();
    if p.components().is_empty() {
        return match p.floor() {
            Floor::Exact => Operator::zero(p.ctx()),
            f => Operator::new(p.ctx(), f, []).unwrap(),
        };
    }
    let terminates = p.components().values().all(|c| {
        c.terms()
            .iter()
            .all(|t| (0..vars).all(|v| t.x_exps[v] >= 0 || t.xi_exps[v] >= 0))
    });
    let floor = match p.floor() {
        Floor::Exact if terminates => Floor::Exact,
        Floor::Exact => Floor::At(p.ctx().default_floor),
        f => f,
    };
    let fcut = floor.at();
    let no_caps = vec![None; vars];
    let mut by_degree: BTreeMap<i64, Vec<Monomial>> = BTreeMap::new();
    for (&j, comp) in p.components() {
        let flipped = comp.negate_xi();
        let total = fcut.map(|f| j - f);
        if matches!(total, Some(t) if t < 0) {
            continue;
        }
        for (alpha, ds) in derivative_cache(&flipped, Step::Both, total, &no_caps) {
            let weight: i64 = alpha.iter().map(|&a| a as i64).sum();
            let scaled = ds.scale(&inv_factorial(&alpha));
            by_degree.entry(j - weight).or_default().extend(scaled.terms().iter().cloned());
        }
    }
    let parts = by_degree
        .into_iter()
        .map(|(d, ts)| HomogeneousSymbol::from_terms(vars, d, ts).unwrap())
        .collect::<Vec<_>>();
    Operator::new(p.ctx(), floor, parts).unwrap()
}

/// Formal adjoint with respect to `theta = f dx`:
/// `P^{*theta} = M_{1/f} o P^{*dx} o M_f`.
pub fn adjoint_wrt(p: &Operator, theta: &VolumeDensity) -> Result<Operator> {
    if theta.vars() != p.vars() {
        return Err(Error::VarsMismatch(theta.vars(), p.vars()));
    }
    if theta.is_standard() {
        return Ok(adjoint(p));
    }
    let f = mult_op(p, theta.monomial())?;
    let f_inv = mult_op(p, &theta.monomial().recip())?;
    f_inv.compose(&adjoint(p).compose(&f)?)
}

/// Outcome of the star-unitarity test, with the first failing degree when it
/// fails.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StarCertificate {
    pub ok: bool,
    pub first_defect_degree: Option<i64>,
    pub defect_symbol: Option<HomogeneousSymbol>,
}

impl StarCertificate {
    fn pass() -> Self {
        StarCertificate { ok: true, first_defect_degree: None, defect_symbol: None }
    }

    fn fail(degree: i64, symbol: Option<HomogeneousSymbol>) -> Self {
        StarCertificate { ok: false, first_defect_degree: Some(degree), defect_symbol: symbol }
    }
}

/// True iff `P` has order 0, principal symbol 1, and `P o P* = 1` on all
/// reliable degrees.
pub fn is_star_unitary(p: &Operator) -> StarCertificate {
    match p.order() {
        Order::Finite(m) if m > 0 => {
            return StarCertificate::fail(m, p.component(m).cloned());
        }
        Order::Finite(0) => {}
        _ => {
            let sigma0 = p.component(0).cloned().unwrap_or_else(|| HomogeneousSymbol::zero(p.vars(), 0));
            return StarCertificate::fail(0, Some(sigma0.sub(&HomogeneousSymbol::one(p.vars())).unwrap()));
        }
    }
    if !p.component(0).map(HomogeneousSymbol::is_one).unwrap_or(false) {
        let defect = p.component(0).unwrap().sub(&HomogeneousSymbol::one(p.vars())).unwrap();
        return StarCertificate::fail(0, Some(defect));
    }
    let product = match p.compose(&adjoint(p)) {
        Ok(d) => d,
        Err(_) => return StarCertificate::fail(0, None),
    };
    match product.defect_from_one() {
        None => StarCertificate::pass(),
        Some((degree, symbol)) => StarCertificate::fail(degree, Some(symbol)),
    }
}

/// The commutation defect of `phi = ad(P0)` against the involution, together
/// with the verified identity `ad(P0, Q*) = ad(P0 P0*, (ad(P0, Q))*)`.
#[derive(Clone, Debug)]
pub struct StarDefect {
    /// `P0 o P0*`; equals 1 exactly when `ad(P0)` commutes with the adjoint.
    pub defect: Operator,
    pub lhs: Operator,
    pub rhs: Operator,
    pub holds: bool,
}

/// Computes the defect operator `P0 o P0*` and checks the commutation
/// identity on the supplied probe `Q`, down to `target_floor`.
pub fn star_commutation_defect(p0: &Operator, q: &Operator, target_floor: i64) -> Result<StarDefect> {
    let defect = p0.compose(&adjoint(p0))?;
    let lhs = p0.ad(&adjoint(q), target_floor)?;
    let rhs = defect.ad(&adjoint(&p0.ad(q, target_floor)?), target_floor)?;
    let holds = lhs.agrees_with_above(&rhs, target_floor);
    Ok(StarDefect { defect, lhs, rhs, holds })
}

/// True if `ad(R)` fixes all generators `x_i`, `xi_i` down to `floor`,
/// i.e. `R` commutes with them on that range.
pub fn fixes_generators(r: &Operator, floor: i64) -> Result<bool> {
    for i in 1..=r.vars() {
        for g in [Operator::x(r.ctx(), i)?, Operator::xi(r.ctx(), i)?] {
            let c = r.commutator(&g)?;
            if !c.is_zero_above(floor) {
                return Ok(false);
            }
            if let Floor::At(f) = c.floor() {
                if f > floor {
                    // cannot certify the range
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// If `R` equals a central scalar `c * 1` on all stored degrees `>= floor`,
/// returns `c`.
pub fn central_scalar_above(r: &Operator, floor: i64) -> Option<Scalar> {
    let mut c = Scalar::zero();
    for (&d, s) in r.components().range(floor..) {
        if d == 0 {
            c = s.as_constant()?;
        } else {
            return None;
        }
    }
    Some(c)
}
