//! Truncated microdifferential operators.
//!
//! An operator is a finite window of a total symbol `sum_{j <= top} p_j`,
//! together with a reliability floor: either the marker `Exact` (the operator
//! equals its stored finite sum identically) or `At(f)` (components of degree
//! `>= f` are exact, anything lower is unknown). Every operation propagates
//! the floor honestly; a truncated operator is never certified zero, it only
//! reports `BelowFloor`.
//!
//! The product is the Leibniz rule on total symbols,
//! `sigma(P o Q) = sum_alpha (1/alpha!) d_xi^alpha sigma(P) d_x^alpha sigma(Q)`.
//! For a product component of degree `d = i + j - |alpha|`, unknown
//! contributions require `i < P.floor` or `j < Q.floor`, hence the floor
//! contract `floor(P o Q) = max(P.floor + Q.top, P.top + Q.floor)`.

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::symbol::{GradedElement, HomogeneousSymbol, Monomial};
use num::{BigInt, BigRational, One};
use std::collections::BTreeMap;
use std::fmt;

/// Shared evaluation context: chart dimension and the floor assumed when an
/// exact computation fails to terminate (possible for Laurent data that is
/// negative in both `x` and `xi` exponents of the same variable).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TruncationContext {
    pub vars: usize,
    pub default_floor: i64,
}

impl TruncationContext {
    pub fn new(vars: usize, default_floor: i64) -> Self {
        assert!(vars >= 1, "need at least one variable");
        TruncationContext { vars, default_floor }
    }
}

/// Reliability marker for the lowest trusted degree.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Floor {
    /// The operator equals its stored finite sum identically.
    Exact,
    /// Degrees `>= f` are exact; lower degrees are unknown.
    At(i64),
}

impl Floor {
    /// Max of two floors, with `Exact` acting as minus infinity.
    pub fn join(self, other: Floor) -> Floor {
        match (self, other) {
            (Floor::Exact, f) => f,
            (f, Floor::Exact) => f,
            (Floor::At(a), Floor::At(b)) => Floor::At(a.max(b)),
        }
    }

    pub fn at(self) -> Option<i64> {
        match self {
            Floor::Exact => None,
            Floor::At(f) => Some(f),
        }
    }
}

/// Result of the order query.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Order {
    /// Largest degree with a nonzero stored component.
    Finite(i64),
    /// All stored components vanish; degrees below `f` are unknown.
    BelowFloor(i64),
    /// Exactly the zero operator.
    MinusInfinity,
}

/// A truncated total symbol.
///
/// Invariants: components are nonzero, homogeneous of their key degree, and
/// lie in `[floor, top]`; `top` is the largest stored degree (or the canonical
/// empty value: the floor for truncated operators, 0 for the exact zero).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Operator {
    ctx: TruncationContext,
    top: i64,
    floor: Floor,
    components: BTreeMap<i64, HomogeneousSymbol>,
}

impl Operator {
    /// Normalizing constructor: merges duplicate degrees, drops zero symbols
    /// and anything below the floor, and shrinks `top` to the actual maximum.
    pub fn new(
        ctx: TruncationContext,
        floor: Floor,
        parts: impl IntoIterator<Item = HomogeneousSymbol>,
    ) -> Result<Self> {
        let mut merged: BTreeMap<i64, HomogeneousSymbol> = BTreeMap::new();
        for s in parts {
            if s.vars() != ctx.vars {
                return Err(Error::VarsMismatch(s.vars(), ctx.vars));
            }
            if let Floor::At(f) = floor {
                if s.degree() < f {
                    continue;
                }
            }
            if s.is_zero() {
                continue;
            }
            match merged.remove(&s.degree()) {
                Some(prev) => {
                    let sum = prev.add(&s)?;
                    if !sum.is_zero() {
                        merged.insert(sum.degree(), sum);
                    }
                }
                None => {
                    merged.insert(s.degree(), s);
                }
            }
        }
        let top = match merged.keys().next_back() {
            Some(&t) => t,
            None => floor.at().unwrap_or(0),
        };
        Ok(Operator { ctx, top, floor, components: merged })
    }

    pub fn zero(ctx: TruncationContext) -> Self {
        Operator { ctx, top: 0, floor: Floor::Exact, components: BTreeMap::new() }
    }

    pub fn one(ctx: TruncationContext) -> Self {
        Operator::constant(ctx, Scalar::one())
    }

    pub fn constant(ctx: TruncationContext, c: Scalar) -> Self {
        let s = HomogeneousSymbol::constant(ctx.vars, c);
        Operator::new(ctx, Floor::Exact, [s]).unwrap()
    }

    /// Embeds a homogeneous symbol as an exact operator.
    pub fn from_symbol(ctx: TruncationContext, s: HomogeneousSymbol) -> Result<Self> {
        Operator::new(ctx, Floor::Exact, [s])
    }

    /// The multiplication operator `x_i` (1-based).
    pub fn x(ctx: TruncationContext, i: usize) -> Result<Self> {
        Operator::from_symbol(ctx, HomogeneousSymbol::x(ctx.vars, i)?)
    }

    /// The derivation generator `xi_i` (1-based).
    pub fn xi(ctx: TruncationContext, i: usize) -> Result<Self> {
        Operator::from_symbol(ctx, HomogeneousSymbol::xi(ctx.vars, i)?)
    }

    /// Parses canonical total-symbol text (e.g. `x1*xi1 + xi1`) as an exact
    /// operator, grouping terms by xi-degree.
    pub fn parse_exact(ctx: TruncationContext, text: &str) -> Result<Self> {
        let terms = crate::text::parse_terms(text, ctx.vars)?;
        let mut by_degree: BTreeMap<i64, Vec<Monomial>> = BTreeMap::new();
        for t in terms {
            by_degree.entry(t.degree()).or_default().push(t);
        }
        let parts = by_degree
            .into_iter()
            .map(|(d, ts)| HomogeneousSymbol::from_terms(ctx.vars, d, ts))
            .collect::<Result<Vec<_>>>()?;
        Operator::new(ctx, Floor::Exact, parts)
    }

    pub fn ctx(&self) -> TruncationContext {
        self.ctx
    }

    pub fn vars(&self) -> usize {
        self.ctx.vars
    }

    pub fn top(&self) -> i64 {
        self.top
    }

    pub fn floor(&self) -> Floor {
        self.floor
    }

    pub fn is_exact(&self) -> bool {
        self.floor == Floor::Exact
    }

    pub fn components(&self) -> &BTreeMap<i64, HomogeneousSymbol> {
        &self.components
    }

    pub fn component(&self, degree: i64) -> Option<&HomogeneousSymbol> {
        self.components.get(&degree)
    }

    fn is_exact_zero(&self) -> bool {
        self.floor == Floor::Exact && self.components.is_empty()
    }

    fn check_ctx(&self, other: &Operator) -> Result<()> {
        if self.ctx != other.ctx {
            return Err(Error::ContextMismatch(format!("{:?} vs {:?}", self.ctx, other.ctx)));
        }
        Ok(())
    }

    /// Largest degree with a nonzero stored component; `BelowFloor` when the
    /// stored window is all zero but the operator is truncated, and the
    /// minus-infinity sentinel only for the certified zero operator.
    pub fn order(&self) -> Order {
        match self.components.keys().next_back() {
            Some(&d) => Order::Finite(d),
            None => match self.floor {
                Floor::Exact => Order::MinusInfinity,
                Floor::At(f) => Order::BelowFloor(f),
            },
        }
    }

    /// The degree-`m` component (zero if absent). Degrees below a finite
    /// floor are unknown and rejected.
    pub fn symbol_at(&self, m: i64) -> Result<HomogeneousSymbol> {
        if let Floor::At(f) = self.floor {
            if m < f {
                return Err(Error::FloorViolation { degree: m, floor: f });
            }
        }
        Ok(self
            .components
            .get(&m)
            .cloned()
            .unwrap_or_else(|| HomogeneousSymbol::zero(self.ctx.vars, m)))
    }

    /// Principal symbol: the component at the operator's order.
    pub fn principal_symbol(&self) -> Option<&HomogeneousSymbol> {
        self.components.values().next_back()
    }

    /// The graded shadow: all nonzero stored components.
    pub fn gr(&self) -> GradedElement {
        GradedElement::from_components(self.components.values().cloned()).unwrap()
    }

    pub fn add(&self, other: &Operator) -> Result<Operator> {
        self.check_ctx(other)?;
        let floor = self.floor.join(other.floor);
        let mut by_degree: BTreeMap<i64, Vec<Monomial>> = BTreeMap::new();
        for comp in self.components.values().chain(other.components.values()) {
            by_degree.entry(comp.degree()).or_default().extend(comp.terms().iter().cloned());
        }
        let parts = by_degree
            .into_iter()
            .map(|(d, ts)| HomogeneousSymbol::from_terms(self.ctx.vars, d, ts))
            .collect::<Result<Vec<_>>>()?;
        Operator::new(self.ctx, floor, parts)
    }

    pub fn sub(&self, other: &Operator) -> Result<Operator> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Operator {
        self.scale(&Scalar::from_int(-1))
    }

    pub fn scale(&self, c: &Scalar) -> Operator {
        if c.is_zero() {
            let floor = self.floor;
            return Operator::new(self.ctx, floor, []).unwrap();
        }
        let components =
            self.components.iter().map(|(&d, s)| (d, s.scale(c))).collect::<BTreeMap<_, _>>();
        Operator { ctx: self.ctx, top: self.top, floor: self.floor, components }
    }

    /// Floor of a product (either the Leibniz compose or the plain symbol
    /// product): `max(P.floor + Q.top, P.top + Q.floor)`, `Exact` as minus
    /// infinity on both sides.
    fn product_floor(&self, other: &Operator, exact_ok: bool) -> Floor {
        match (self.floor, other.floor) {
            (Floor::Exact, Floor::Exact) => {
                if exact_ok {
                    Floor::Exact
                } else {
                    Floor::At(self.ctx.default_floor)
                }
            }
            (Floor::Exact, Floor::At(fq)) => Floor::At(self.top + fq),
            (Floor::At(fp), Floor::Exact) => Floor::At(fp + other.top),
            (Floor::At(fp), Floor::At(fq)) => Floor::At((fp + other.top).max(self.top + fq)),
        }
    }

    fn all_terms(&self, pred: impl Fn(&Monomial) -> bool) -> bool {
        self.components.values().all(|c| c.terms().iter().all(&pred))
    }

    fn max_over_terms(&self, f: impl Fn(&Monomial) -> i64) -> i64 {
        self.components
            .values()
            .flat_map(|c| c.terms().iter())
            .map(&f)
            .max()
            .unwrap_or(0)
    }

    /// Pointwise (graded-commutative) product of total symbols. This is the
    /// multiplication of the associated graded ring lifted to stored windows;
    /// it is what the DSL `*` denotes.
    pub fn symbol_product(&self, other: &Operator) -> Result<Operator> {
        self.check_ctx(other)?;
        if self.is_exact_zero() || other.is_exact_zero() {
            return Ok(Operator::zero(self.ctx));
        }
        let floor = self.product_floor(other, true);
        let fcut = floor.at();
        let mut by_degree: BTreeMap<i64, Vec<Monomial>> = BTreeMap::new();
        for (&i, p) in &self.components {
            for (&j, q) in &other.components {
                if let Some(f) = fcut {
                    if i + j < f {
                        continue;
                    }
                }
                let prod = p.mul(q)?;
                by_degree.entry(i + j).or_default().extend(prod.terms().iter().cloned());
            }
        }
        let parts = by_degree
            .into_iter()
            .map(|(d, ts)| HomogeneousSymbol::from_terms(self.ctx.vars, d, ts))
            .collect::<Result<Vec<_>>>()?;
        Operator::new(self.ctx, floor, parts)
    }

    /// Leibniz composition of operators.
    pub fn compose(&self, other: &Operator) -> Result<Operator> {
        self.check_ctx(other)?;
        if self.is_exact_zero() || other.is_exact_zero() {
            return Ok(Operator::zero(self.ctx));
        }
        let vars = self.ctx.vars;

        // Per variable, the alpha-sum terminates iff d_xi eventually kills
        // every P component or d_x eventually kills every Q component.
        let p_ok: Vec<bool> = (0..vars).map(|v| self.all_terms(|t| t.xi_exps[v] >= 0)).collect();
        let q_ok: Vec<bool> = (0..vars).map(|v| other.all_terms(|t| t.x_exps[v] >= 0)).collect();
        let terminates = (0..vars).all(|v| p_ok[v] || q_ok[v]);

        let floor = self.product_floor(other, terminates);
        let fcut = floor.at();

        // Cap alpha_v by the opposite side's vanishing bound when available.
        let p_caps: Vec<Option<i64>> = (0..vars)
            .map(|v| q_ok[v].then(|| other.max_over_terms(|t| t.x_exps[v])))
            .collect();
        let q_caps: Vec<Option<i64>> = (0..vars)
            .map(|v| p_ok[v].then(|| self.max_over_terms(|t| t.xi_exps[v])))
            .collect();

        let mut pcache: BTreeMap<i64, DerivativeCache> = BTreeMap::new();
        for (&i, p) in &self.components {
            let total = fcut.map(|f| i + other.top - f);
            if matches!(total, Some(t) if t < 0) {
                continue;
            }
            let mut cache = derivative_cache(p, Step::Xi, total, &p_caps);
            for (alpha, s) in cache.iter_mut() {
                *s = s.scale(&inv_factorial(alpha));
            }
            pcache.insert(i, cache);
        }
        let mut qcache: BTreeMap<i64, DerivativeCache> = BTreeMap::new();
        for (&j, q) in &other.components {
            let total = fcut.map(|f| self.top + j - f);
            if matches!(total, Some(t) if t < 0) {
                continue;
            }
            qcache.insert(j, derivative_cache(q, Step::X, total, &q_caps));
        }

        let mut by_degree: BTreeMap<i64, Vec<Monomial>> = BTreeMap::new();
        for (&i, pmap) in &pcache {
            for (&j, qmap) in &qcache {
                let cap = fcut.map(|f| i + j - f);
                if matches!(cap, Some(c) if c < 0) {
                    continue;
                }
                for (alpha, dp) in pmap {
                    let weight: i64 = alpha.iter().map(|&a| a as i64).sum();
                    if matches!(cap, Some(c) if weight > c) {
                        continue;
                    }
                    let Some(dq) = qmap.get(alpha) else { continue };
                    let prod = dp.mul(dq)?;
                    if prod.is_zero() {
                        continue;
                    }
                    by_degree.entry(i + j - weight).or_default().extend(prod.terms().iter().cloned());
                }
            }
        }
        let parts = by_degree
            .into_iter()
            .map(|(d, ts)| HomogeneousSymbol::from_terms(vars, d, ts))
            .collect::<Result<Vec<_>>>()?;
        Operator::new(self.ctx, floor, parts)
    }

    /// `P o Q - Q o P`.
    pub fn commutator(&self, other: &Operator) -> Result<Operator> {
        self.compose(other)?.sub(&other.compose(self)?)
    }

    /// Clips reliability at `f`: raises the floor to at least `At(f)` and
    /// drops lower components. Never lowers an existing floor.
    pub fn truncated(&self, f: i64) -> Operator {
        let new_floor = match self.floor {
            Floor::Exact => Floor::At(f),
            Floor::At(g) => Floor::At(g.max(f)),
        };
        Operator::new(self.ctx, new_floor, self.components.values().cloned()).unwrap()
    }

    /// Checks that the stored window reaches down to `f` (or is exact); the
    /// operator is returned unchanged.
    fn ensure_reliable_to(self, f: i64) -> Result<Operator> {
        match self.floor {
            Floor::Exact => Ok(self),
            Floor::At(g) if g <= f => Ok(self),
            Floor::At(_) => Err(Error::InsufficientFloor { target: f }),
        }
    }

    /// True if no stored component of degree `>= d` is nonzero.
    pub fn is_zero_above(&self, d: i64) -> bool {
        self.components.range(d..).next().is_none()
    }

    /// True if the stored components of degree `>= d` agree.
    pub fn agrees_with_above(&self, other: &Operator, d: i64) -> bool {
        let mine = self.components.range(d..);
        let theirs = other.components.range(d..);
        mine.clone().count() == theirs.clone().count()
            && mine.zip(theirs).all(|((da, a), (db, b))| da == db && a == b)
    }

    /// Highest-degree deviation from the identity operator among stored
    /// components, if any.
    pub fn defect_from_one(&self) -> Option<(i64, HomogeneousSymbol)> {
        let one = HomogeneousSymbol::one(self.ctx.vars);
        for (&d, s) in self.components.iter().rev() {
            if d == 0 {
                if *s != one {
                    return Some((d, s.sub(&one).unwrap()));
                }
            } else {
                return Some((d, s.clone()));
            }
        }
        // Degree 0 may be missing entirely while reliable.
        let zero_known = match self.floor {
            Floor::Exact => true,
            Floor::At(f) => f <= 0,
        };
        if zero_known && !self.components.contains_key(&0) {
            return Some((0, one.neg()));
        }
        None
    }

    /// Two-sided inverse, reliable down to `target_floor`.
    ///
    /// Requires the principal symbol to be a unit of the Laurent ring, i.e. a
    /// single monomial (the decidable form of nowhere-vanishing). Iterates
    /// `R <- R + E o (1 - P o R)` with `E` the principal-symbol reciprocal;
    /// the defect order strictly drops each round. If the defect vanishes
    /// identically the exact inverse is returned; otherwise the result is
    /// truncated at `target_floor - |order(P)|` so that both products with
    /// `P` are certified equal to 1 at all degrees `>= target_floor`.
    pub fn invert(&self, target_floor: i64) -> Result<Operator> {
        let m = match self.order() {
            Order::Finite(m) => m,
            _ => return Err(Error::NotInvertible("no nonzero stored component".into())),
        };
        let principal = &self.components[&m];
        let mono = principal.as_monomial().ok_or_else(|| {
            Error::NotInvertible("principal symbol is not a unit monomial".into())
        })?;
        let e = Operator::from_symbol(
            self.ctx,
            HomogeneousSymbol::from_terms(self.ctx.vars, -m, [mono.recip()])?,
        )?;
        let r_floor = target_floor - m.abs();
        let stop = r_floor + m;
        let one = Operator::one(self.ctx);
        let mut r = e.clone();
        // The first defect has order <= -1; each round lowers it by >= 1.
        let max_rounds = (1 - stop).max(1) as usize + 1;
        for _ in 0..max_rounds {
            let defect = one.sub(&self.compose(&r)?)?;
            match defect.order() {
                Order::MinusInfinity => return Ok(r),
                Order::Finite(d) if d >= stop => {
                    r = r.add(&e.compose(&defect)?)?;
                }
                Order::Finite(_) => return r.ensure_reliable_to(r_floor).map(|r| r.truncated(r_floor)),
                Order::BelowFloor(f) if f <= stop => {
                    return r.ensure_reliable_to(r_floor).map(|r| r.truncated(r_floor))
                }
                Order::BelowFloor(_) => {
                    return Err(Error::InsufficientFloor { target: target_floor })
                }
            }
        }
        Err(Error::InsufficientFloor { target: target_floor })
    }

    /// Conjugation `P o Q o P^{-1}`, reliable down to `target_floor`.
    pub fn ad(&self, q: &Operator, target_floor: i64) -> Result<Operator> {
        self.check_ctx(q)?;
        let spread = self.top + q.top;
        let pinv = self.invert(target_floor - spread)?;
        let pq = self.compose(q)?;
        pq.compose(&pinv)?.ensure_reliable_to(target_floor)
    }

    /// Self-adjoint square root of a self-adjoint operator with principal
    /// symbol 1: returns `Q` with `Q o Q = P`, `Q* = Q` and `sigma_0(Q) = 1`,
    /// all reliable down to `target_floor`.
    ///
    /// Iterates `Q <- Q + D` with
    /// `D = -(1/4) (Q^{-1} o E + (Q^{-1} o E)*)`, `E = Q o Q - P`; the defect
    /// order strictly drops, and symmetrizing keeps `Q* = Q` at every step.
    pub fn self_adjoint_sqrt(&self, target_floor: i64) -> Result<Operator> {
        match self.order() {
            Order::Finite(0) => {}
            o => {
                return Err(Error::BadPrincipalSymbol(format!(
                    "expected order 0 with principal symbol 1, got order {o:?}"
                )))
            }
        }
        if !self.components[&0].is_one() {
            return Err(Error::BadPrincipalSymbol(format!(
                "expected principal symbol 1, got {}",
                self.components[&0]
            )));
        }
        if let Floor::At(f) = self.floor {
            if f > target_floor {
                return Err(Error::InsufficientFloor { target: target_floor });
            }
        }
        let adj = crate::star::adjoint(self);
        if !adj.agrees_with_above(self, target_floor) {
            let degree = adj
                .sub(self)?
                .components
                .range(target_floor..)
                .next_back()
                .map(|(&d, _)| d)
                .unwrap_or(target_floor);
            return Err(Error::NotSelfAdjoint { degree });
        }

        let quarter = Scalar::from_ratio(-1, 4);
        let mut q = Operator::one(self.ctx);
        let max_rounds = (1 - target_floor).max(1) as usize + 1;
        for _ in 0..max_rounds {
            let defect = q.compose(&q)?.sub(self)?;
            match defect.order() {
                Order::MinusInfinity => return Ok(q),
                Order::Finite(d) if d >= target_floor => {
                    let x = q.invert(target_floor)?.compose(&defect)?;
                    let correction = x.add(&crate::star::adjoint(&x))?.scale(&quarter);
                    q = q.add(&correction)?;
                }
                Order::Finite(_) | Order::BelowFloor(_) => {
                    return q.ensure_reliable_to(target_floor).map(|q| q.truncated(target_floor));
                }
            }
        }
        Err(Error::InsufficientFloor { target: target_floor })
    }

    /// Star-unitarization of an operator of order 0 with principal symbol 1:
    /// `U = sqrt(P0 o P0*)^{-1} o P0` satisfies `U o U* = 1` down to
    /// `target_floor`.
    pub fn unitarize(&self, target_floor: i64) -> Result<Operator> {
        match self.order() {
            Order::Finite(0) if self.components[&0].is_one() => {}
            _ => {
                return Err(Error::BadPrincipalSymbol(
                    "unitarize needs order 0 and principal symbol 1".into(),
                ))
            }
        }
        let v = self.compose(&crate::star::adjoint(self))?;
        let q = v.self_adjoint_sqrt(target_floor)?;
        q.invert(target_floor)?.compose(self)?.ensure_reliable_to(target_floor)
    }
}

/// Operators render as their total-symbol text, highest degree first.
impl fmt::Display for Operator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<&Monomial> =
            self.components.values().rev().flat_map(|c| c.terms().iter()).collect();
        write!(f, "{}", crate::text::render_terms(terms))
    }
}

pub(crate) type DerivativeCache = BTreeMap<Vec<u32>, HomogeneousSymbol>;

/// Which derivative a cache step applies per unit of `alpha_v`.
#[derive(Clone, Copy)]
pub(crate) enum Step {
    Xi,
    X,
    /// `d_xi d_x` together (used by the adjoint formula).
    Both,
}

fn apply_step(s: &HomogeneousSymbol, v: usize, step: Step) -> HomogeneousSymbol {
    match step {
        Step::Xi => s.d_xi(v).unwrap(),
        Step::X => s.d_x(v).unwrap(),
        Step::Both => s.d_xi(v).unwrap().d_x(v).unwrap(),
    }
}

/// All nonzero iterated derivatives `d^alpha sym` with `|alpha| <= total_cap`
/// and `alpha_v <= var_caps[v]` (either cap may be absent; enumeration then
/// stops when the derivative vanishes, which the caller must guarantee
/// happens).
pub(crate) fn derivative_cache(
    sym: &HomogeneousSymbol,
    step: Step,
    total_cap: Option<i64>,
    var_caps: &[Option<i64>],
) -> DerivativeCache {
    let vars = sym.vars();
    let mut out = BTreeMap::new();
    let mut alpha = vec![0u32; vars];
    walk(sym.clone(), 0, 0, &mut alpha, &mut out, step, total_cap, var_caps);
    out
}

#[allow(clippy::too_many_arguments)]
fn walk(
    cur: HomogeneousSymbol,
    v: usize,
    used: i64,
    alpha: &mut Vec<u32>,
    out: &mut DerivativeCache,
    step: Step,
    total_cap: Option<i64>,
    var_caps: &[Option<i64>],
) {
    if cur.is_zero() {
        return;
    }
    if v == alpha.len() {
        out.insert(alpha.clone(), cur);
        return;
    }
    let mut s = cur;
    let mut a: u32 = 0;
    loop {
        alpha[v] = a;
        walk(s.clone(), v + 1, used + a as i64, alpha, out, step, total_cap, var_caps);
        if matches!(total_cap, Some(t) if used + a as i64 + 1 > t) {
            break;
        }
        if matches!(var_caps[v], Some(c) if a as i64 + 1 > c) {
            break;
        }
        s = apply_step(&s, v + 1, step);
        if s.is_zero() {
            break;
        }
        a += 1;
    }
    alpha[v] = 0;
}

/// `1 / alpha!` as an exact scalar.
pub(crate) fn inv_factorial(alpha: &[u32]) -> Scalar {
    let mut fact = BigInt::one();
    for &a in alpha {
        for k in 2..=a as u64 {
            fact *= k;
        }
    }
    Scalar::new(BigRational::new(BigInt::one(), fact), BigRational::new(0.into(), 1.into()))
}
