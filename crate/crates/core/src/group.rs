//! Finite groups as validated Cayley tables.
//!
//! Everything is label-based and checked by exhaustion: closure is enforced
//! by the index type, associativity, identity, and inverses are verified on
//! construction.

use crate::error::{Error, Result};
use std::fmt;

/// A finite group with a multiplication table over element indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    elements: Vec<String>,
    table: Vec<Vec<usize>>,
    identity: usize,
    inverses: Vec<usize>,
}

impl FiniteGroup {
    /// Validates a Cayley table: associativity by exhaustion, a two-sided
    /// identity, and inverses for every element.
    pub fn new(elements: Vec<String>, table: Vec<Vec<usize>>) -> Result<Self> {
        let n = elements.len();
        if n == 0 {
            return Err(Error::Schema("group must have at least one element".into()));
        }
        if table.len() != n || table.iter().any(|row| row.len() != n) {
            return Err(Error::Schema(format!("multiplication table must be {n}x{n}")));
        }
        for (a, row) in table.iter().enumerate() {
            for (b, &c) in row.iter().enumerate() {
                if c >= n {
                    return Err(Error::Schema(format!(
                        "table entry {}*{} out of range",
                        elements[a], elements[b]
                    )));
                }
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return Err(Error::AxiomViolation(format!(
                            "associativity fails on ({}, {}, {})",
                            elements[a], elements[b], elements[c]
                        )));
                    }
                }
            }
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|a| table[e][a] == a && table[a][e] == a))
            .ok_or_else(|| Error::AxiomViolation("no two-sided identity".into()))?;
        let mut inverses = vec![usize::MAX; n];
        for a in 0..n {
            inverses[a] = (0..n)
                .find(|&b| table[a][b] == identity && table[b][a] == identity)
                .ok_or_else(|| {
                    Error::AxiomViolation(format!("element {} has no inverse", elements[a]))
                })?;
        }
        Ok(FiniteGroup { elements, table, identity, inverses })
    }

    /// The cyclic group `Z/n` with elements `0..n`.
    pub fn cyclic(n: usize) -> Self {
        assert!(n >= 1);
        let elements = (0..n).map(|k| k.to_string()).collect();
        let table = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        FiniteGroup::new(elements, table).unwrap()
    }

    pub fn trivial() -> Self {
        FiniteGroup::cyclic(1)
    }

    /// The symmetric group on three letters, in cycle notation.
    pub fn symmetric3() -> Self {
        // Permutations as images of (1,2,3).
        let perms: Vec<[usize; 3]> = vec![
            [0, 1, 2], // e
            [1, 0, 2], // (12)
            [2, 1, 0], // (13)
            [0, 2, 1], // (23)
            [1, 2, 0], // (123)
            [2, 0, 1], // (132)
        ];
        let elements =
            vec!["e".into(), "(12)".into(), "(13)".into(), "(23)".into(), "(123)".into(), "(132)".into()];
        let compose = |p: &[usize; 3], q: &[usize; 3]| [p[q[0]], p[q[1]], p[q[2]]];
        let table = perms
            .iter()
            .map(|p| {
                perms
                    .iter()
                    .map(|q| {
                        let pq = compose(p, q);
                        perms.iter().position(|r| *r == pq).unwrap()
                    })
                    .collect()
            })
            .collect();
        FiniteGroup::new(elements, table).unwrap()
    }

    /// The dihedral group of the square (8 elements, `r` rotation, `s` flip).
    pub fn dihedral4() -> Self {
        let elements: Vec<String> =
            ["e", "r", "r2", "r3", "s", "rs", "r2s", "r3s"].iter().map(|s| s.to_string()).collect();
        // (i, j) encodes r^i s^j with s r = r^{-1} s.
        let decode = |k: usize| (k % 4, k / 4);
        let encode = |i: usize, j: usize| (j % 2) * 4 + i % 4;
        let table = (0..8)
            .map(|a| {
                (0..8)
                    .map(|b| {
                        let (i1, j1) = decode(a);
                        let (i2, j2) = decode(b);
                        // r^i1 s^j1 r^i2 s^j2 = r^(i1 + i2 * (-1)^j1) s^(j1+j2)
                        let i = if j1 == 0 { (i1 + i2) % 4 } else { (i1 + 4 - i2 % 4) % 4 };
                        encode(i, j1 + j2)
                    })
                    .collect()
            })
            .collect();
        FiniteGroup::new(elements, table).unwrap()
    }

    /// Resolves a named group: `1`, `Z/n`, `S3`, `D4`.
    pub fn named(name: &str) -> Result<Self> {
        match name {
            "1" => Ok(FiniteGroup::trivial()),
            "S3" => Ok(FiniteGroup::symmetric3()),
            "D4" => Ok(FiniteGroup::dihedral4()),
            _ => {
                if let Some(n) = name.strip_prefix("Z/") {
                    let n: usize = n
                        .parse()
                        .map_err(|_| Error::Schema(format!("bad cyclic group name '{name}'")))?;
                    if n == 0 {
                        return Err(Error::Schema("Z/0 is not finite".into()));
                    }
                    return Ok(FiniteGroup::cyclic(n));
                }
                Err(Error::Schema(format!("unknown group name '{name}'")))
            }
        }
    }

    pub fn size(&self) -> usize {
        self.elements.len()
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverses[a]
    }

    /// `a b a^{-1}`.
    pub fn conj(&self, a: usize, b: usize) -> usize {
        self.mul(self.mul(a, b), self.inv(a))
    }

    pub fn label(&self, a: usize) -> &str {
        &self.elements[a]
    }

    pub fn labels(&self) -> &[String] {
        &self.elements
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.elements.iter().position(|e| e == label)
    }

    pub fn is_abelian(&self) -> bool {
        let n = self.size();
        (0..n).all(|a| (0..n).all(|b| self.table[a][b] == self.table[b][a]))
    }

    /// The subgroup on the given (closed) element set, reusing labels.
    pub fn subgroup(&self, members: &[usize]) -> Result<FiniteGroup> {
        let pos = |x: usize| members.iter().position(|&m| m == x);
        let elements = members.iter().map(|&m| self.elements[m].clone()).collect();
        let mut table = vec![vec![0; members.len()]; members.len()];
        for (i, &a) in members.iter().enumerate() {
            for (j, &b) in members.iter().enumerate() {
                table[i][j] = pos(self.mul(a, b)).ok_or_else(|| {
                    Error::AxiomViolation(format!(
                        "subset not closed: {} * {} escapes",
                        self.elements[a], self.elements[b]
                    ))
                })?;
            }
        }
        FiniteGroup::new(elements, table)
    }

    /// Quotient by a normal subgroup, given as an element set. Cosets are
    /// labeled by their lexicographically smallest member.
    pub fn quotient(&self, normal: &[usize]) -> Result<FiniteGroup> {
        let n = self.size();
        let in_normal = {
            let mut mask = vec![false; n];
            for &h in normal {
                mask[h] = true;
            }
            mask
        };
        for &h in normal {
            for g in 0..n {
                if !in_normal[self.conj(g, h)] {
                    return Err(Error::AxiomViolation(format!(
                        "subgroup is not normal: {} conjugates {} out",
                        self.elements[g], self.elements[h]
                    )));
                }
            }
        }
        // Coset of g = sorted set of g*h.
        let coset_of = |g: usize| {
            let mut c: Vec<usize> = normal.iter().map(|&h| self.mul(g, h)).collect();
            c.sort_unstable();
            c.dedup();
            c
        };
        let mut cosets: Vec<Vec<usize>> = Vec::new();
        for g in 0..n {
            let c = coset_of(g);
            if !cosets.contains(&c) {
                cosets.push(c);
            }
        }
        cosets.sort();
        let index_of_coset = |g: usize| {
            let c = coset_of(g);
            cosets.iter().position(|x| *x == c).unwrap()
        };
        let elements: Vec<String> =
            cosets.iter().map(|c| self.elements[c[0]].clone()).collect();
        let table = cosets
            .iter()
            .map(|c| cosets.iter().map(|d| index_of_coset(self.mul(c[0], d[0]))).collect())
            .collect();
        FiniteGroup::new(elements, table)
    }

    /// Relabels elements through a permutation: element `k` of the result is
    /// the old element `perm[k]`. The result is isomorphic via `perm`.
    pub fn relabeled(&self, perm: &[usize]) -> Result<FiniteGroup> {
        let n = self.size();
        if perm.len() != n {
            return Err(Error::Schema("permutation length mismatch".into()));
        }
        let mut inv = vec![usize::MAX; n];
        for (k, &p) in perm.iter().enumerate() {
            if p >= n || inv[p] != usize::MAX {
                return Err(Error::Schema("not a permutation".into()));
            }
            inv[p] = k;
        }
        let elements = perm.iter().map(|&p| self.elements[p].clone()).collect();
        let table = perm
            .iter()
            .map(|&a| perm.iter().map(|&b| inv[self.mul(a, b)]).collect())
            .collect();
        FiniteGroup::new(elements, table)
    }
}

impl fmt::Display for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "group of order {}: {{{}}}", self.size(), self.elements.join(", "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn s3_is_a_group_of_order_six() {
        let g = FiniteGroup::symmetric3();
        assert_eq!(g.size(), 6);
        assert!(!g.is_abelian());
        let a = g.index_of("(12)").unwrap();
        let b = g.index_of("(123)").unwrap();
        // (12)(123) = (23)
        assert_eq!(g.label(g.mul(a, b)), "(23)");
        // conjugation: (12)(123)(12) = (132)
        assert_eq!(g.label(g.conj(a, b)), "(132)");
    }

    #[test]
    fn d4_has_order_eight() {
        let g = FiniteGroup::dihedral4();
        assert_eq!(g.size(), 8);
        assert!(!g.is_abelian());
    }

    #[test]
    fn named_lookup() {
        assert_eq!(FiniteGroup::named("Z/4").unwrap().size(), 4);
        assert_eq!(FiniteGroup::named("1").unwrap().size(), 1);
        assert!(FiniteGroup::named("Q8").is_err());
    }

    #[test]
    fn bad_table_is_rejected() {
        // 1+1 = 1 breaks associativity/identity structure.
        let err = FiniteGroup::new(
            vec!["0".into(), "1".into()],
            vec![vec![0, 1], vec![1, 1]],
        );
        assert!(err.is_err());
    }

    #[test]
    fn quotient_of_z4_by_image() {
        let z4 = FiniteGroup::cyclic(4);
        let q = z4.quotient(&[0, 2]).unwrap();
        assert_eq!(q.size(), 2);
    }
}
