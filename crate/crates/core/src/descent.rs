//! Descent data over finite abstract nerves and brute-force nonabelian
//! Cech H^1 classification.
//!
//! A descent datum assigns `g_i` in `G^0` to each open and `h_ij` in `G^{-1}`
//! to each ordered double, with `g_i = d(h_ij) g_j` on edges and
//! `h_ij h_jk = h_ik` on triples. The normalizations `h_ii = e` and
//! `h_ji = h_ij^{-1}` make unordered nerves sufficient, so data store the
//! `i < j` direction only.
//!
//! Morphisms of data are vertex tuples `{k_i}` with `g2_i = d(k_i) g1_i` and
//! `h2_ij k_j = k_i h1_ij` on edges; this is forced by the composition law of
//! the associated 2-group and the gluing role of `h_ij`. Tuples act as the
//! group `(G^{-1})^{opens}` on data, so classes are orbits and automorphism
//! counts are stabilizer sizes.

use crate::crossed::CrossedModule;
use crate::error::{Error, Result};
use std::collections::BTreeMap;
use std::fmt;

/// A finite abstract nerve: opens, unordered doubles and unordered triples,
/// closed under taking pairs of a triple.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cover {
    opens: Vec<usize>,
    doubles: Vec<(usize, usize)>,
    triples: Vec<(usize, usize, usize)>,
}

impl Cover {
    pub fn new(
        opens: Vec<usize>,
        doubles: Vec<(usize, usize)>,
        triples: Vec<(usize, usize, usize)>,
    ) -> Result<Self> {
        let mut seen = opens.clone();
        seen.sort_unstable();
        seen.dedup();
        if seen.len() != opens.len() {
            return Err(Error::Schema("cover opens must be distinct".into()));
        }
        let has_open = |i: usize| opens.contains(&i);
        let mut norm_doubles: Vec<(usize, usize)> = Vec::new();
        for &(a, b) in &doubles {
            if a == b || !has_open(a) || !has_open(b) {
                return Err(Error::Schema(format!("bad double ({a}, {b})")));
            }
            let d = (a.min(b), a.max(b));
            if !norm_doubles.contains(&d) {
                norm_doubles.push(d);
            }
        }
        norm_doubles.sort_unstable();
        let mut norm_triples: Vec<(usize, usize, usize)> = Vec::new();
        for &(a, b, c) in &triples {
            let mut t = [a, b, c];
            t.sort_unstable();
            if t[0] == t[1] || t[1] == t[2] || !has_open(a) || !has_open(b) || !has_open(c) {
                return Err(Error::Schema(format!("bad triple ({a}, {b}, {c})")));
            }
            let t = (t[0], t[1], t[2]);
            for pair in [(t.0, t.1), (t.0, t.2), (t.1, t.2)] {
                if !norm_doubles.contains(&pair) {
                    return Err(Error::Schema(format!(
                        "nerve not closed: triple {t:?} needs double {pair:?}"
                    )));
                }
            }
            if !norm_triples.contains(&t) {
                norm_triples.push(t);
            }
        }
        norm_triples.sort_unstable();
        Ok(Cover { opens, doubles: norm_doubles, triples: norm_triples })
    }

    /// The full nerve on `k` opens: all doubles and all triples.
    pub fn full_nerve(k: usize) -> Self {
        let opens: Vec<usize> = (0..k).collect();
        let mut doubles = Vec::new();
        let mut triples = Vec::new();
        for i in 0..k {
            for j in i + 1..k {
                doubles.push((i, j));
                for l in j + 1..k {
                    triples.push((i, j, l));
                }
            }
        }
        Cover { opens, doubles, triples }
    }

    /// The circle nerve on `k >= 3` opens: consecutive doubles, no triples.
    pub fn circle(k: usize) -> Self {
        assert!(k >= 3);
        let opens: Vec<usize> = (0..k).collect();
        let mut doubles: Vec<(usize, usize)> =
            (0..k).map(|i| ((i).min((i + 1) % k), (i).max((i + 1) % k))).collect();
        doubles.sort_unstable();
        doubles.dedup();
        Cover { opens, doubles, triples: Vec::new() }
    }

    pub fn opens(&self) -> &[usize] {
        &self.opens
    }

    pub fn doubles(&self) -> &[(usize, usize)] {
        &self.doubles
    }

    pub fn triples(&self) -> &[(usize, usize, usize)] {
        &self.triples
    }

    fn open_pos(&self, i: usize) -> Option<usize> {
        self.opens.iter().position(|&o| o == i)
    }

    fn double_pos(&self, i: usize, j: usize) -> Option<usize> {
        let d = (i.min(j), i.max(j));
        self.doubles.iter().position(|&x| x == d)
    }

    /// Relabels opens through the bijection `map` (old label -> new label).
    pub fn relabeled(&self, map: &BTreeMap<usize, usize>) -> Result<Cover> {
        let f = |i: usize| -> Result<usize> {
            map.get(&i).copied().ok_or_else(|| Error::Schema(format!("open {i} not mapped")))
        };
        Cover::new(
            self.opens.iter().map(|&i| f(i)).collect::<Result<_>>()?,
            self.doubles.iter().map(|&(a, b)| Ok((f(a)?, f(b)?))).collect::<Result<_>>()?,
            self.triples.iter().map(|&(a, b, c)| Ok((f(a)?, f(b)?, f(c)?))).collect::<Result<_>>()?,
        )
    }
}

/// Cech data `{g_i}, {h_ij}` for a crossed module on a cover; `h` is stored
/// for `i < j` with the convention `h_ji = h_ij^{-1}`, `h_ii = e`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct DescentDatum {
    /// Indexed like `cover.opens()`.
    pub g: Vec<usize>,
    /// Indexed like `cover.doubles()`.
    pub h: Vec<usize>,
}

impl DescentDatum {
    /// The pointed (all-identity) datum.
    pub fn trivial(cover: &Cover, cm: &CrossedModule) -> Self {
        DescentDatum {
            g: vec![cm.g_zero().identity(); cover.opens().len()],
            h: vec![cm.g_minus1().identity(); cover.doubles().len()],
        }
    }

    /// The arrow on the ordered pair `(i, j)`, using the inversion
    /// convention for `j < i` and identity on the diagonal.
    pub fn h_at(&self, cover: &Cover, cm: &CrossedModule, i: usize, j: usize) -> Result<usize> {
        if i == j {
            return Ok(cm.g_minus1().identity());
        }
        let pos = cover
            .double_pos(i, j)
            .ok_or_else(|| Error::Schema(format!("({i}, {j}) is not a double of the cover")))?;
        let h = self.h[pos];
        Ok(if i < j { h } else { cm.g_minus1().inv(h) })
    }

    pub fn g_at(&self, cover: &Cover, i: usize) -> Result<usize> {
        let pos = cover
            .open_pos(i)
            .ok_or_else(|| Error::Schema(format!("{i} is not an open of the cover")))?;
        Ok(self.g[pos])
    }
}

/// One violated descent condition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DescentViolation {
    /// `g_i != d(h_ij) g_j`.
    Edge { i: usize, j: usize },
    /// `h_ij h_jk != h_ik`.
    Cocycle { i: usize, j: usize, k: usize },
}

impl fmt::Display for DescentViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DescentViolation::Edge { i, j } => write!(f, "g_{i} != d(h_{i}{j}) g_{j}"),
            DescentViolation::Cocycle { i, j, k } => {
                write!(f, "h_{i}{j} h_{j}{k} != h_{i}{k}")
            }
        }
    }
}

#[derive(Clone, Debug, Default)]
pub struct DescentReport {
    pub violations: Vec<DescentViolation>,
}

impl DescentReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Exhaustively checks the descent conditions of `datum` on `cover`.
pub fn validate_descent(cover: &Cover, cm: &CrossedModule, datum: &DescentDatum) -> Result<DescentReport> {
    if datum.g.len() != cover.opens().len() || datum.h.len() != cover.doubles().len() {
        return Err(Error::Schema("descent datum does not match the cover".into()));
    }
    if datum.g.iter().any(|&g| g >= cm.g_zero().size())
        || datum.h.iter().any(|&h| h >= cm.g_minus1().size())
    {
        return Err(Error::Schema("descent datum labels out of range".into()));
    }
    let mut violations = Vec::new();
    for (pos, &(i, j)) in cover.doubles().iter().enumerate() {
        let gi = datum.g[cover.open_pos(i).unwrap()];
        let gj = datum.g[cover.open_pos(j).unwrap()];
        if gi != cm.g_zero().mul(cm.d(datum.h[pos]), gj) {
            violations.push(DescentViolation::Edge { i, j });
        }
    }
    for &(i, j, k) in cover.triples() {
        let hij = datum.h_at(cover, cm, i, j)?;
        let hjk = datum.h_at(cover, cm, j, k)?;
        let hik = datum.h_at(cover, cm, i, k)?;
        if cm.g_minus1().mul(hij, hjk) != hik {
            violations.push(DescentViolation::Cocycle { i, j, k });
        }
    }
    Ok(DescentReport { violations })
}

/// Applies the morphism tuple `{k_i}` to a datum:
/// `g_i -> d(k_i) g_i`, `h_ij -> k_i h_ij k_j^{-1}`.
fn act(cover: &Cover, cm: &CrossedModule, k: &[usize], datum: &DescentDatum) -> DescentDatum {
    let g0 = cm.g_zero();
    let g1 = cm.g_minus1();
    let g = datum
        .g
        .iter()
        .zip(k)
        .map(|(&gi, &ki)| g0.mul(cm.d(ki), gi))
        .collect();
    let h = cover
        .doubles()
        .iter()
        .enumerate()
        .map(|(pos, &(i, j))| {
            let ki = k[cover.open_pos(i).unwrap()];
            let kj = k[cover.open_pos(j).unwrap()];
            g1.mul(g1.mul(ki, datum.h[pos]), g1.inv(kj))
        })
        .collect();
    DescentDatum { g, h }
}

/// Enumerates every morphism tuple `{k_i}` from `d1` to `d2`, in
/// lexicographic order.
pub fn descent_morphisms(
    cover: &Cover,
    cm: &CrossedModule,
    d1: &DescentDatum,
    d2: &DescentDatum,
) -> Result<Vec<Vec<usize>>> {
    let opens = cover.opens().len();
    if d1.g.len() != opens || d2.g.len() != opens {
        return Err(Error::Schema("descent data do not match the cover".into()));
    }
    let g0 = cm.g_zero();
    // k_i must satisfy d(k_i) = g2_i g1_i^{-1}.
    let candidates: Vec<Vec<usize>> = (0..opens)
        .map(|i| {
            let want = g0.mul(d2.g[i], g0.inv(d1.g[i]));
            (0..cm.g_minus1().size()).filter(|&h| cm.d(h) == want).collect()
        })
        .collect();
    let mut out = Vec::new();
    let mut k = vec![0usize; opens];
    search_morphisms(cover, cm, d1, d2, &candidates, 0, &mut k, &mut out);
    Ok(out)
}

fn search_morphisms(
    cover: &Cover,
    cm: &CrossedModule,
    d1: &DescentDatum,
    d2: &DescentDatum,
    candidates: &[Vec<usize>],
    i: usize,
    k: &mut Vec<usize>,
    out: &mut Vec<Vec<usize>>,
) {
    if i == candidates.len() {
        out.push(k.clone());
        return;
    }
    'next: for &ki in &candidates[i] {
        k[i] = ki;
        // Check edges whose endpoints are both fixed.
        for (pos, &(a, b)) in cover.doubles().iter().enumerate() {
            let pa = cover.open_pos(a).unwrap();
            let pb = cover.open_pos(b).unwrap();
            if pa.max(pb) > i {
                continue;
            }
            let g1m = cm.g_minus1();
            // h2_ab k_b = k_a h1_ab
            if g1m.mul(d2.h[pos], k[pb]) != g1m.mul(k[pa], d1.h[pos]) {
                continue 'next;
            }
        }
        search_morphisms(cover, cm, d1, d2, candidates, i + 1, k, out);
    }
}

/// Result of the brute-force H^1 classification.
#[derive(Clone, Debug)]
pub struct Classification {
    pub class_count: usize,
    /// Lexicographically minimal datum of each class, in search order.
    pub representatives: Vec<DescentDatum>,
    pub class_sizes: Vec<u64>,
    /// Morphisms from the representative to itself; constant across a class.
    pub automorphism_counts: Vec<u64>,
    /// Index of the class of the all-identity datum.
    pub pointed_class_index: usize,
    pub search_size: u128,
}

/// Classifies descent data up to morphism-connectivity by exhaustive orbit
/// enumeration under the tuple action of `(G^{-1})^{opens}`.
///
/// The search space `|G^0|^{opens} * |G^{-1}|^{doubles}` must fit the budget.
pub fn classify_h1(cover: &Cover, cm: &CrossedModule, budget: u128) -> Result<Classification> {
    let opens = cover.opens().len();
    let doubles = cover.doubles().len();
    let n0 = cm.g_zero().size() as u128;
    let n1 = cm.g_minus1().size() as u128;
    let search_size = n0
        .checked_pow(opens as u32)
        .and_then(|a| n1.checked_pow(doubles as u32).and_then(|b| a.checked_mul(b)))
        .ok_or(Error::BudgetExceeded { size: u128::MAX, budget })?;
    if search_size > budget {
        return Err(Error::BudgetExceeded { size: search_size, budget });
    }

    let valid = enumerate_valid_data(cover, cm);

    // Orbits under the tuple action; BFS with single-coordinate generators.
    let index_of: BTreeMap<&DescentDatum, usize> =
        valid.iter().enumerate().map(|(n, d)| (d, n)).collect();
    let mut class_of = vec![usize::MAX; valid.len()];
    let mut representatives = Vec::new();
    let mut class_sizes = Vec::new();
    for start in 0..valid.len() {
        if class_of[start] != usize::MAX {
            continue;
        }
        let class = representatives.len();
        let mut queue = vec![start];
        class_of[start] = class;
        let mut size = 0u64;
        while let Some(cur) = queue.pop() {
            size += 1;
            for i in 0..opens {
                for h in 0..cm.g_minus1().size() {
                    let mut k = vec![cm.g_minus1().identity(); opens];
                    k[i] = h;
                    let next = act(cover, cm, &k, &valid[cur]);
                    let n = index_of[&next];
                    if class_of[n] == usize::MAX {
                        class_of[n] = class;
                        queue.push(n);
                    }
                }
            }
        }
        representatives.push(valid[start].clone());
        class_sizes.push(size);
    }

    // |Stab| = |K| / |orbit| by orbit-stabilizer; K = (G^{-1})^{opens}.
    let k_size = (cm.g_minus1().size() as u64).pow(opens as u32);
    let automorphism_counts: Vec<u64> = class_sizes.iter().map(|&s| k_size / s).collect();

    let pointed = DescentDatum::trivial(cover, cm);
    let pointed_class_index = class_of[index_of[&pointed]];

    Ok(Classification {
        class_count: representatives.len(),
        representatives,
        class_sizes,
        automorphism_counts,
        pointed_class_index,
        search_size,
    })
}

/// All valid descent data in lexicographic order, found by fiber-pruned
/// search (for fixed `{g_i}` only `h_ij` with `d(h_ij) = g_i g_j^{-1}` can
/// appear).
fn enumerate_valid_data(cover: &Cover, cm: &CrossedModule) -> Vec<DescentDatum> {
    let opens = cover.opens().len();
    let doubles = cover.doubles().len();
    let g0 = cm.g_zero();
    let mut out = Vec::new();
    let mut g = vec![0usize; opens];
    let mut stack_h: Vec<usize> = Vec::with_capacity(doubles);
    loop {
        // Fibers per double for this g-assignment.
        let fibers: Vec<Vec<usize>> = cover
            .doubles()
            .iter()
            .map(|&(i, j)| {
                let gi = g[cover.open_pos(i).unwrap()];
                let gj = g[cover.open_pos(j).unwrap()];
                let want = g0.mul(gi, g0.inv(gj));
                (0..cm.g_minus1().size()).filter(|&h| cm.d(h) == want).collect()
            })
            .collect();
        fill_h(cover, cm, &g, &fibers, &mut stack_h, &mut out);
        // Odometer over g.
        let mut pos = opens;
        loop {
            if pos == 0 {
                return out;
            }
            pos -= 1;
            g[pos] += 1;
            if g[pos] < g0.size() {
                break;
            }
            g[pos] = 0;
        }
    }
}

fn fill_h(
    cover: &Cover,
    cm: &CrossedModule,
    g: &[usize],
    fibers: &[Vec<usize>],
    h: &mut Vec<usize>,
    out: &mut Vec<DescentDatum>,
) {
    let pos = h.len();
    if pos == fibers.len() {
        let datum = DescentDatum { g: g.to_vec(), h: h.clone() };
        if validate_descent(cover, cm, &datum).map(|r| r.is_valid()).unwrap_or(false) {
            out.push(datum);
        }
        return;
    }
    for &cand in &fibers[pos] {
        h.push(cand);
        fill_h(cover, cm, g, fibers, h, out);
        h.pop();
    }
}
