//! Finite crossed modules and their associated 2-groups.
//!
//! A crossed module is a homomorphism `d: G^{-1} -> G^0` with a left action
//! of `G^0` on `G^{-1}` satisfying equivariance `d(^g h) = g d(h) g^{-1}` and
//! the Peiffer identity `^{d(h')} h = h' h h'^{-1}`. The associated 2-group
//! has the elements of `G^0` as objects and arrows `g -> d(h) g` labeled by
//! `h`, with tensor `(g1 -h1-> g1') x (g2 -h2-> g2') = g1 g2 -h1 ^{g1}h2-> g1' g2'`.

use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use std::fmt;

/// A finite crossed module `d: G^{-1} -> G^0` with action `^g h`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrossedModule {
    g_minus1: FiniteGroup,
    g_zero: FiniteGroup,
    /// `d[h]` is the image index in `g_zero`.
    d: Vec<usize>,
    /// `action[g][h]` is the index of `^g h` in `g_minus1`.
    action: Vec<Vec<usize>>,
}

/// One violated axiom, with the witnessing elements (as labels).
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    DNotHomomorphism { h1: String, h2: String },
    ActionNotAutomorphism { g: String, h1: String, h2: String },
    ActionNotGroupHomomorphism { g1: String, g2: String, h: String },
    IdentityActsNontrivially { h: String },
    NotEquivariant { g: String, h: String },
    PeifferFails { h_prime: String, h: String },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::DNotHomomorphism { h1, h2 } => {
                write!(f, "d({h1} {h2}) != d({h1}) d({h2})")
            }
            Violation::ActionNotAutomorphism { g, h1, h2 } => {
                write!(f, "^{g}({h1} {h2}) != ^{g}{h1} ^{g}{h2}")
            }
            Violation::ActionNotGroupHomomorphism { g1, g2, h } => {
                write!(f, "^({g1} {g2}){h} != ^{g1}(^{g2}{h})")
            }
            Violation::IdentityActsNontrivially { h } => write!(f, "^e{h} != {h}"),
            Violation::NotEquivariant { g, h } => {
                write!(f, "d(^{g}{h}) != {g} d({h}) {g}^-1")
            }
            Violation::PeifferFails { h_prime, h } => {
                write!(f, "^d({h_prime}){h} != {h_prime} {h} {h_prime}^-1")
            }
        }
    }
}

/// Exhaustive axiom check result; valid iff no violations.
#[derive(Clone, Debug, Default)]
pub struct CrossedModuleReport {
    pub violations: Vec<Violation>,
}

impl CrossedModuleReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Classification of the associated 2-group per the surjective/injective
/// dichotomy of `d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Shape {
    /// `d` bijective: equivalent to the 2-group with one object and one
    /// morphism.
    Trivial,
    /// `d` surjective: one object with automorphisms `ker d`.
    OneObject(FiniteGroup),
    /// `d` injective: the discrete 2-group on `coker d`.
    Discrete(FiniteGroup),
    General,
}

/// A morphism of the associated 2-group: `source -> d(arrow) * source`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TwoGroupMorphism {
    pub source: usize,
    pub arrow: usize,
}

impl CrossedModule {
    /// Builds a crossed module from raw data; shapes are checked here, the
    /// axioms via `validate`.
    pub fn new(
        g_minus1: FiniteGroup,
        g_zero: FiniteGroup,
        d: Vec<usize>,
        action: Vec<Vec<usize>>,
    ) -> Result<Self> {
        let n1 = g_minus1.size();
        let n0 = g_zero.size();
        if d.len() != n1 || d.iter().any(|&x| x >= n0) {
            return Err(Error::Schema("d must map every element of g1 into g0".into()));
        }
        if action.len() != n0 || action.iter().any(|row| row.len() != n1 || row.iter().any(|&x| x >= n1)) {
            return Err(Error::Schema(format!("action must be a {n0}x{n1} table into g1")));
        }
        Ok(CrossedModule { g_minus1, g_zero, d, action })
    }

    /// `G -> G` by the identity, acting by conjugation. Always a valid
    /// crossed module.
    pub fn conjugation(g: FiniteGroup) -> Self {
        let n = g.size();
        let d = (0..n).collect();
        let action = (0..n).map(|a| (0..n).map(|h| g.conj(a, h)).collect()).collect();
        CrossedModule { g_minus1: g.clone(), g_zero: g, d, action }
    }

    /// Crossed module with the trivial action; valid iff `d` lands centrally
    /// and `g_minus1` is abelian.
    pub fn with_trivial_action(g_minus1: FiniteGroup, g_zero: FiniteGroup, d: Vec<usize>) -> Result<Self> {
        let action = vec![(0..g_minus1.size()).collect::<Vec<_>>(); g_zero.size()];
        CrossedModule::new(g_minus1, g_zero, d, action)
    }

    /// `A -> 1` for abelian `A`.
    pub fn to_point(a: FiniteGroup) -> Self {
        let d = vec![0; a.size()];
        CrossedModule::with_trivial_action(a, FiniteGroup::trivial(), d).unwrap()
    }

    /// `1 -> G`.
    pub fn from_point(g: FiniteGroup) -> Self {
        let d = vec![g.identity()];
        CrossedModule::with_trivial_action(FiniteGroup::trivial(), g, d).unwrap()
    }

    pub fn g_minus1(&self) -> &FiniteGroup {
        &self.g_minus1
    }

    pub fn g_zero(&self) -> &FiniteGroup {
        &self.g_zero
    }

    pub fn d(&self, h: usize) -> usize {
        self.d[h]
    }

    /// The action `^g h`.
    pub fn act(&self, g: usize, h: usize) -> usize {
        self.action[g][h]
    }

    /// Exhaustive check of every crossed-module axiom, listing all
    /// violations with witnesses.
    pub fn validate(&self) -> CrossedModuleReport {
        let g1 = &self.g_minus1;
        let g0 = &self.g_zero;
        let mut violations = Vec::new();
        let lab1 = |h: usize| g1.label(h).to_string();
        let lab0 = |g: usize| g0.label(g).to_string();

        for h1 in 0..g1.size() {
            for h2 in 0..g1.size() {
                if self.d[g1.mul(h1, h2)] != g0.mul(self.d[h1], self.d[h2]) {
                    violations.push(Violation::DNotHomomorphism { h1: lab1(h1), h2: lab1(h2) });
                }
            }
        }
        for g in 0..g0.size() {
            for h1 in 0..g1.size() {
                for h2 in 0..g1.size() {
                    if self.act(g, g1.mul(h1, h2)) != g1.mul(self.act(g, h1), self.act(g, h2)) {
                        violations.push(Violation::ActionNotAutomorphism {
                            g: lab0(g),
                            h1: lab1(h1),
                            h2: lab1(h2),
                        });
                    }
                }
            }
        }
        for h in 0..g1.size() {
            if self.act(g0.identity(), h) != h {
                violations.push(Violation::IdentityActsNontrivially { h: lab1(h) });
            }
        }
        for g1x in 0..g0.size() {
            for g2x in 0..g0.size() {
                for h in 0..g1.size() {
                    if self.act(g0.mul(g1x, g2x), h) != self.act(g1x, self.act(g2x, h)) {
                        violations.push(Violation::ActionNotGroupHomomorphism {
                            g1: lab0(g1x),
                            g2: lab0(g2x),
                            h: lab1(h),
                        });
                    }
                }
            }
        }
        for g in 0..g0.size() {
            for h in 0..g1.size() {
                if self.d[self.act(g, h)] != g0.conj(g, self.d[h]) {
                    violations.push(Violation::NotEquivariant { g: lab0(g), h: lab1(h) });
                }
            }
        }
        for h_prime in 0..g1.size() {
            for h in 0..g1.size() {
                if self.act(self.d[h_prime], h) != g1.conj(h_prime, h) {
                    violations.push(Violation::PeifferFails { h_prime: lab1(h_prime), h: lab1(h) });
                }
            }
        }
        CrossedModuleReport { violations }
    }

    /// Target object of a morphism: `d(arrow) * source`.
    pub fn target(&self, m: TwoGroupMorphism) -> usize {
        self.g_zero.mul(self.d[m.arrow], m.source)
    }

    pub fn tensor_objects(&self, g: usize, g2: usize) -> usize {
        self.g_zero.mul(g, g2)
    }

    /// `(g1 -h1->) x (g2 -h2->) = g1 g2 -h1 ^{g1}h2->`.
    pub fn tensor_morphisms(&self, m1: TwoGroupMorphism, m2: TwoGroupMorphism) -> TwoGroupMorphism {
        TwoGroupMorphism {
            source: self.g_zero.mul(m1.source, m2.source),
            arrow: self.g_minus1.mul(m1.arrow, self.act(m1.source, m2.arrow)),
        }
    }

    /// Composition `m2 after m1`; requires `target(m1) = source(m2)`.
    pub fn compose_morphisms(
        &self,
        m2: TwoGroupMorphism,
        m1: TwoGroupMorphism,
    ) -> Result<TwoGroupMorphism> {
        if self.target(m1) != m2.source {
            return Err(Error::NonComposable(format!(
                "target {} != source {}",
                self.g_zero.label(self.target(m1)),
                self.g_zero.label(m2.source)
            )));
        }
        Ok(TwoGroupMorphism {
            source: m1.source,
            arrow: self.g_minus1.mul(m2.arrow, m1.arrow),
        })
    }

    pub fn identity_morphism(&self, g: usize) -> TwoGroupMorphism {
        TwoGroupMorphism { source: g, arrow: self.g_minus1.identity() }
    }

    /// Inverse arrow: every morphism of the 2-group is invertible.
    pub fn invert_morphism(&self, m: TwoGroupMorphism) -> TwoGroupMorphism {
        TwoGroupMorphism { source: self.target(m), arrow: self.g_minus1.inv(m.arrow) }
    }

    /// All morphisms (source, arrow).
    pub fn morphisms(&self) -> impl Iterator<Item = TwoGroupMorphism> + '_ {
        (0..self.g_zero.size()).flat_map(move |source| {
            (0..self.g_minus1.size()).map(move |arrow| TwoGroupMorphism { source, arrow })
        })
    }

    /// Image of `d` as an element set of `g_zero` (normal by equivariance).
    pub fn image(&self) -> Vec<usize> {
        let mut im: Vec<usize> = self.d.clone();
        im.sort_unstable();
        im.dedup();
        im
    }

    /// Kernel of `d` as an element set of `g_minus1`.
    pub fn kernel(&self) -> Vec<usize> {
        (0..self.g_minus1.size()).filter(|&h| self.d[h] == self.g_zero.identity()).collect()
    }

    /// `pi_0 = coker d`.
    pub fn pi0(&self) -> Result<FiniteGroup> {
        self.g_zero.quotient(&self.image())
    }

    /// `pi_1 = ker d`.
    pub fn pi1(&self) -> Result<FiniteGroup> {
        self.g_minus1.subgroup(&self.kernel())
    }

    /// Classifies the associated 2-group by injectivity/surjectivity of `d`.
    pub fn shape(&self) -> Result<Shape> {
        let injective = self.kernel().len() == 1;
        let surjective = self.image().len() == self.g_zero.size();
        Ok(match (injective, surjective) {
            (true, true) => Shape::Trivial,
            (false, true) => Shape::OneObject(self.pi1()?),
            (true, false) => Shape::Discrete(self.pi0()?),
            (false, false) => Shape::General,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z2_into_z4() -> CrossedModule {
        // 1 |-> 2
        CrossedModule::with_trivial_action(FiniteGroup::cyclic(2), FiniteGroup::cyclic(4), vec![0, 2])
            .unwrap()
    }

    #[test]
    fn conjugation_module_is_valid() {
        let cm = CrossedModule::conjugation(FiniteGroup::symmetric3());
        assert!(cm.validate().is_valid());
    }

    #[test]
    fn z2_into_z4_is_valid() {
        assert!(z2_into_z4().validate().is_valid());
    }

    #[test]
    fn non_homomorphism_is_rejected() {
        // 1 |-> 1 is not a homomorphism Z/2 -> Z/4: 1+1 |-> 2 != 0.
        let cm = CrossedModule::with_trivial_action(
            FiniteGroup::cyclic(2),
            FiniteGroup::cyclic(4),
            vec![0, 1],
        )
        .unwrap();
        let report = cm.validate();
        assert!(!report.is_valid());
        assert!(report
            .violations
            .iter()
            .any(|v| matches!(v, Violation::DNotHomomorphism { .. })));
    }

    #[test]
    fn pi_computations() {
        let cm = z2_into_z4();
        assert_eq!(cm.pi0().unwrap().size(), 2);
        assert_eq!(cm.pi1().unwrap().size(), 1);
        assert_eq!(cm.shape().unwrap(), Shape::Discrete(cm.pi0().unwrap()));

        let to_point = CrossedModule::to_point(FiniteGroup::cyclic(3));
        assert_eq!(to_point.pi0().unwrap().size(), 1);
        assert_eq!(to_point.pi1().unwrap().size(), 3);
        assert!(matches!(to_point.shape().unwrap(), Shape::OneObject(k) if k.size() == 3));

        let iso = CrossedModule::conjugation(FiniteGroup::symmetric3());
        assert_eq!(iso.shape().unwrap(), Shape::Trivial);
    }

    #[test]
    fn tensor_example_in_s3() {
        // tensor(((12), e), (e, (123))) = ((12), ^{(12)}(123)) = ((12), (132))
        let cm = CrossedModule::conjugation(FiniteGroup::symmetric3());
        let s3 = cm.g_zero().clone();
        let m1 = TwoGroupMorphism { source: s3.index_of("(12)").unwrap(), arrow: s3.identity() };
        let m2 = TwoGroupMorphism { source: s3.identity(), arrow: s3.index_of("(123)").unwrap() };
        let t = cm.tensor_morphisms(m1, m2);
        assert_eq!(s3.label(t.source), "(12)");
        assert_eq!(s3.label(t.arrow), "(132)");
    }

    #[test]
    fn unit_arrow_absorption() {
        // tensor((e, h), (g, e)) = (g, h)
        let cm = CrossedModule::conjugation(FiniteGroup::symmetric3());
        let g = 3;
        let h = 4;
        let m1 = TwoGroupMorphism { source: cm.g_zero().identity(), arrow: h };
        let m2 = TwoGroupMorphism { source: g, arrow: cm.g_minus1().identity() };
        let t = cm.tensor_morphisms(m1, m2);
        assert_eq!(t, TwoGroupMorphism { source: g, arrow: h });
    }

    #[test]
    fn composition_in_z2_to_z4() {
        // compose((g+2, 1), (g, 1)): arrow 1+1 = 0, target g.
        let cm = z2_into_z4();
        for g in 0..4 {
            let m1 = TwoGroupMorphism { source: g, arrow: 1 };
            let m2 = TwoGroupMorphism { source: cm.target(m1), arrow: 1 };
            let c = cm.compose_morphisms(m2, m1).unwrap();
            assert_eq!(c.arrow, 0);
            assert_eq!(cm.target(c), g);
        }
    }

    #[test]
    fn every_morphism_invertible() {
        let cm = CrossedModule::conjugation(FiniteGroup::symmetric3());
        for m in cm.morphisms() {
            let inv = cm.invert_morphism(m);
            let round = cm.compose_morphisms(inv, m).unwrap();
            assert_eq!(round, cm.identity_morphism(m.source));
        }
    }
}
