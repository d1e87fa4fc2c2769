//! Homogeneous Laurent symbols and the graded ring they generate.
//!
//! A symbol of degree `m` is a finite sum of monomials `c * x^a * xi^b` whose
//! xi-exponents sum to `m`. Exponents are arbitrary integers, so monomials are
//! units and densities like `x dx` stay invertible. Coefficients are exact
//! Gaussian rationals.

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use std::collections::BTreeMap;
use std::fmt;

/// One Laurent monomial `coeff * x^{x_exps} * xi^{xi_exps}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Monomial {
    pub coeff: Scalar,
    pub x_exps: Vec<i64>,
    pub xi_exps: Vec<i64>,
}

impl Monomial {
    pub fn new(coeff: Scalar, x_exps: Vec<i64>, xi_exps: Vec<i64>) -> Self {
        assert_eq!(x_exps.len(), xi_exps.len());
        Monomial { coeff, x_exps, xi_exps }
    }

    /// A constant monomial in `vars` variables.
    pub fn constant(coeff: Scalar, vars: usize) -> Self {
        Monomial::new(coeff, vec![0; vars], vec![0; vars])
    }

    pub fn vars(&self) -> usize {
        self.x_exps.len()
    }

    /// Total xi-degree.
    pub fn degree(&self) -> i64 {
        self.xi_exps.iter().sum()
    }

    /// Reciprocal monomial; monomials are units of the Laurent ring.
    pub fn recip(&self) -> Self {
        Monomial::new(
            self.coeff.recip(),
            self.x_exps.iter().map(|e| -e).collect(),
            self.xi_exps.iter().map(|e| -e).collect(),
        )
    }

    fn key(&self) -> (Vec<i64>, Vec<i64>) {
        (self.xi_exps.clone(), self.x_exps.clone())
    }
}

/// A section of `O(m)`: a xi-homogeneous Laurent expression of degree `m`.
///
/// Terms are kept in canonical order (descending lexicographic on
/// `(xi_exps, x_exps)`), merged, and free of zero coefficients; the zero
/// symbol is the empty term list.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomogeneousSymbol {
    vars: usize,
    degree: i64,
    terms: Vec<Monomial>,
}

impl HomogeneousSymbol {
    /// Builds a symbol from raw terms, merging duplicates and checking that
    /// every term is homogeneous of the stated degree.
    pub fn from_terms(
        vars: usize,
        degree: i64,
        terms: impl IntoIterator<Item = Monomial>,
    ) -> Result<Self> {
        let mut merged: BTreeMap<(Vec<i64>, Vec<i64>), Scalar> = BTreeMap::new();
        for t in terms {
            if t.vars() != vars {
                return Err(Error::VarsMismatch(t.vars(), vars));
            }
            if t.degree() != degree {
                return Err(Error::DegreeMismatch(t.degree(), degree));
            }
            if t.coeff.is_zero() {
                continue;
            }
            let entry = merged.entry(t.key()).or_insert_with(Scalar::zero);
            *entry = entry.clone() + &t.coeff;
        }
        let mut out: Vec<Monomial> = merged
            .into_iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|((xi, x), c)| Monomial::new(c, x, xi))
            .collect();
        out.reverse(); // BTreeMap ascends; canonical order is descending
        Ok(HomogeneousSymbol { vars, degree, terms: out })
    }

    pub fn zero(vars: usize, degree: i64) -> Self {
        HomogeneousSymbol { vars, degree, terms: Vec::new() }
    }

    /// The constant symbol `c` (degree 0).
    pub fn constant(vars: usize, c: Scalar) -> Self {
        HomogeneousSymbol::from_terms(vars, 0, [Monomial::constant(c, vars)]).unwrap()
    }

    pub fn one(vars: usize) -> Self {
        HomogeneousSymbol::constant(vars, Scalar::one())
    }

    /// The coordinate symbol `x_i` (1-based), degree 0.
    pub fn x(vars: usize, i: usize) -> Result<Self> {
        check_index(i, vars)?;
        let mut xe = vec![0; vars];
        xe[i - 1] = 1;
        HomogeneousSymbol::from_terms(vars, 0, [Monomial::new(Scalar::one(), xe, vec![0; vars])])
    }

    /// The coordinate symbol `xi_i` (1-based), degree 1.
    pub fn xi(vars: usize, i: usize) -> Result<Self> {
        check_index(i, vars)?;
        let mut xie = vec![0; vars];
        xie[i - 1] = 1;
        HomogeneousSymbol::from_terms(vars, 1, [Monomial::new(Scalar::one(), vec![0; vars], xie)])
    }

    pub fn vars(&self) -> usize {
        self.vars
    }

    pub fn degree(&self) -> i64 {
        self.degree
    }

    pub fn terms(&self) -> &[Monomial] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// True if this is the constant symbol 1.
    pub fn is_one(&self) -> bool {
        self.degree == 0
            && self.terms.len() == 1
            && self.terms[0].coeff.is_one()
            && self.terms[0].x_exps.iter().all(|&e| e == 0)
            && self.terms[0].xi_exps.iter().all(|&e| e == 0)
    }

    fn check_compat(&self, other: &Self) -> Result<()> {
        if self.vars != other.vars {
            return Err(Error::VarsMismatch(self.vars, other.vars));
        }
        Ok(())
    }

    /// Termwise sum; both symbols must have the same degree.
    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_compat(other)?;
        if self.degree != other.degree {
            return Err(Error::DegreeMismatch(self.degree, other.degree));
        }
        HomogeneousSymbol::from_terms(
            self.vars,
            self.degree,
            self.terms.iter().chain(other.terms.iter()).cloned(),
        )
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.scale(&Scalar::from_int(-1))
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        if c.is_zero() {
            return HomogeneousSymbol::zero(self.vars, self.degree);
        }
        HomogeneousSymbol {
            vars: self.vars,
            degree: self.degree,
            terms: self
                .terms
                .iter()
                .map(|t| Monomial::new(&t.coeff * c, t.x_exps.clone(), t.xi_exps.clone()))
                .collect(),
        }
    }

    /// Exact distributive product; degrees add.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_compat(other)?;
        let mut terms = Vec::with_capacity(self.terms.len() * other.terms.len());
        for a in &self.terms {
            for b in &other.terms {
                terms.push(Monomial::new(
                    &a.coeff * &b.coeff,
                    a.x_exps.iter().zip(&b.x_exps).map(|(p, q)| p + q).collect(),
                    a.xi_exps.iter().zip(&b.xi_exps).map(|(p, q)| p + q).collect(),
                ));
            }
        }
        HomogeneousSymbol::from_terms(self.vars, self.degree + other.degree, terms)
    }

    /// Partial derivative in `x_i` (1-based); degree is preserved.
    pub fn d_x(&self, i: usize) -> Result<Self> {
        check_index(i, self.vars)?;
        let v = i - 1;
        let terms = self.terms.iter().filter_map(|t| {
            let e = t.x_exps[v];
            if e == 0 {
                return None;
            }
            let mut x = t.x_exps.clone();
            x[v] = e - 1;
            Some(Monomial::new(&t.coeff * &Scalar::from_int(e), x, t.xi_exps.clone()))
        });
        HomogeneousSymbol::from_terms(self.vars, self.degree, terms.collect::<Vec<_>>())
    }

    /// Partial derivative in `xi_i` (1-based); degree drops by one.
    pub fn d_xi(&self, i: usize) -> Result<Self> {
        check_index(i, self.vars)?;
        let v = i - 1;
        let terms = self.terms.iter().filter_map(|t| {
            let e = t.xi_exps[v];
            if e == 0 {
                return None;
            }
            let mut xi = t.xi_exps.clone();
            xi[v] = e - 1;
            Some(Monomial::new(&t.coeff * &Scalar::from_int(e), t.x_exps.clone(), xi))
        });
        HomogeneousSymbol::from_terms(self.vars, self.degree - 1, terms.collect::<Vec<_>>())
    }

    /// Poisson bracket `{f, g} = sum_i (d_xi f d_x g - d_x f d_xi g)`.
    ///
    /// The sign convention is the one compatible with the commutator
    /// `[P, Q] = P o Q - Q o P` of the operator calculus: the principal symbol
    /// of `[P, Q]` is the bracket of the principal symbols. The opposite
    /// convention (swap the two products) is equally common elsewhere.
    pub fn poisson(&self, other: &Self) -> Result<Self> {
        self.check_compat(other)?;
        let mut acc = HomogeneousSymbol::zero(self.vars, self.degree + other.degree - 1);
        for i in 1..=self.vars {
            let a = self.d_xi(i)?.mul(&other.d_x(i)?)?;
            let b = self.d_x(i)?.mul(&other.d_xi(i)?)?;
            acc = acc.add(&a)?.sub(&b)?;
        }
        Ok(acc)
    }

    /// Substitutes `xi -> -xi`: scales by `(-1)^degree`.
    pub fn negate_xi(&self) -> Self {
        if self.degree.rem_euclid(2) == 0 {
            self.clone()
        } else {
            self.neg()
        }
    }

    /// Single-monomial view, if the symbol has exactly one term.
    pub fn as_monomial(&self) -> Option<&Monomial> {
        if self.terms.len() == 1 {
            Some(&self.terms[0])
        } else {
            None
        }
    }

    /// Constant view: `Some(c)` if the symbol is the constant `c` of degree 0
    /// (including zero).
    pub fn as_constant(&self) -> Option<Scalar> {
        if self.terms.is_empty() {
            return if self.degree == 0 { Some(Scalar::zero()) } else { None };
        }
        let m = self.as_monomial()?;
        if m.x_exps.iter().all(|&e| e == 0) && m.xi_exps.iter().all(|&e| e == 0) {
            Some(m.coeff.clone())
        } else {
            None
        }
    }
}

impl fmt::Display for HomogeneousSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", crate::text::render_terms(&self.terms))
    }
}

fn check_index(i: usize, vars: usize) -> Result<()> {
    if i == 0 || i > vars {
        return Err(Error::BadVariableIndex { index: i, vars });
    }
    Ok(())
}

/// An element of the graded ring `⊕_m O(m)`: finitely many nonzero
/// homogeneous components keyed by their degree.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct GradedElement {
    components: BTreeMap<i64, HomogeneousSymbol>,
}

impl GradedElement {
    pub fn from_components(parts: impl IntoIterator<Item = HomogeneousSymbol>) -> Result<Self> {
        let mut components = BTreeMap::new();
        for s in parts {
            if s.is_zero() {
                continue;
            }
            let d = s.degree();
            if components.insert(d, s).is_some() {
                return Err(Error::DegreeMismatch(d, d));
            }
        }
        Ok(GradedElement { components })
    }

    pub fn components(&self) -> &BTreeMap<i64, HomogeneousSymbol> {
        &self.components
    }

    pub fn component(&self, degree: i64) -> Option<&HomogeneousSymbol> {
        self.components.get(&degree)
    }

    pub fn is_zero(&self) -> bool {
        self.components.is_empty()
    }
}
