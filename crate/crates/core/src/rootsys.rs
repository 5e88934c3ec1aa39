//! Root systems in simple-root coordinates, coroot embedding tables and centralizers.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use num_traits::Zero;
use serde::Serialize;
use thiserror::Error;

use crate::scalar::rat;
use crate::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RootError {
    #[error("vector has length {got}, expected {expected}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("empty coweight list")]
    EmptyCoweights,
    #[error("coroot {0} is not mapped")]
    NotMapped(String),
    #[error("unknown root system {0}")]
    UnknownLabel(String),
    #[error("cannot compose: {0}")]
    Compose(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum SystemLabel {
    A1,
    C4,
    D4,
    D8,
    E8,
}

impl SystemLabel {
    pub const ALL: [SystemLabel; 5] = [Self::A1, Self::C4, Self::D4, Self::D8, Self::E8];

    pub fn rank(self) -> usize {
        match self {
            Self::A1 => 1,
            Self::C4 | Self::D4 => 4,
            Self::D8 | Self::E8 => 8,
        }
    }

    /// Edges of the Dynkin diagram in Bourbaki numbering (0-based).
    fn edges(self) -> &'static [(usize, usize)] {
        match self {
            Self::A1 => &[],
            Self::C4 => &[(0, 1), (1, 2), (2, 3)],
            Self::D4 => &[(0, 1), (1, 2), (1, 3)],
            Self::D8 => &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (5, 7)],
            Self::E8 => &[(0, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 7), (1, 3)],
        }
    }

    /// Twice the Gram matrix of the simple roots. Long roots have squared length 2;
    /// the short roots of C4 have squared length 1.
    fn gram2(self) -> Vec<Vec<i64>> {
        let n = self.rank();
        let mut g = vec![vec![0i64; n]; n];
        for (i, row) in g.iter_mut().enumerate() {
            row[i] = 4;
        }
        for &(i, j) in self.edges() {
            g[i][j] = -2;
            g[j][i] = -2;
        }
        if self == Self::C4 {
            for (i, row) in g.iter_mut().enumerate().take(3) {
                row[i] = 2;
            }
            g[0][1] = -1;
            g[1][0] = -1;
            g[1][2] = -1;
            g[2][1] = -1;
        }
        g
    }
}

impl fmt::Display for SystemLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl FromStr for SystemLabel {
    type Err = RootError;
    fn from_str(s: &str) -> Result<Self, RootError> {
        Self::ALL
            .into_iter()
            .find(|l| l.to_string().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| RootError::UnknownLabel(s.to_string()))
    }
}

/// A fully enumerated root system.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootSystem {
    label: SystemLabel,
    gram2: Vec<Vec<i64>>,
    cartan: Vec<Vec<i64>>,
    roots: Vec<Vec<i64>>,
}

pub fn build_root_system(label: SystemLabel) -> RootSystem {
    RootSystem::new(label)
}

impl RootSystem {
    pub fn new(label: SystemLabel) -> Self {
        let gram2 = label.gram2();
        let n = label.rank();
        // a_ij = <alpha_i, alpha_j^vee> = 2 (alpha_i, alpha_j) / (alpha_j, alpha_j)
        let cartan = (0..n)
            .map(|i| (0..n).map(|j| 2 * gram2[i][j] / gram2[j][j]).collect())
            .collect();
        let mut rs = RootSystem { label, gram2, cartan, roots: Vec::new() };
        rs.roots = rs.reflection_closure();
        rs
    }

    fn reflection_closure(&self) -> Vec<Vec<i64>> {
        let n = self.rank();
        let mut seen: BTreeSet<Vec<i64>> = BTreeSet::new();
        let mut frontier: Vec<Vec<i64>> = (0..n).map(|i| unit(n, i)).collect();
        seen.extend(frontier.iter().cloned());
        while let Some(v) = frontier.pop() {
            for i in 0..n {
                let w = self.reflect(&v, i);
                if seen.insert(w.clone()) {
                    frontier.push(w);
                }
            }
        }
        seen.into_iter().collect()
    }

    /// Simple reflection `s_i(v) = v - <v, alpha_i^vee> alpha_i`.
    pub fn reflect(&self, v: &[i64], i: usize) -> Vec<i64> {
        let num: i64 = v.iter().zip(&self.gram2).map(|(x, row)| x * row[i]).sum();
        let k = 2 * num / self.gram2[i][i];
        let mut w = v.to_vec();
        w[i] -= k;
        w
    }

    pub fn label(&self) -> SystemLabel {
        self.label
    }

    pub fn rank(&self) -> usize {
        self.gram2.len()
    }

    pub fn cartan(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    /// Roots in lexicographic order of their coordinates.
    pub fn roots(&self) -> &[Vec<i64>] {
        &self.roots
    }

    pub fn positive_roots(&self) -> impl Iterator<Item = &Vec<i64>> {
        self.roots.iter().filter(|r| r.iter().all(|&x| x >= 0))
    }

    pub fn is_root(&self, v: &[i64]) -> bool {
        self.roots.binary_search_by(|r| r.as_slice().cmp(v)).is_ok()
    }

    pub fn root_index(&self, v: &[i64]) -> Option<usize> {
        self.roots.binary_search_by(|r| r.as_slice().cmp(v)).ok()
    }

    fn check_dim(&self, v: &[i64]) -> Result<(), RootError> {
        if v.len() != self.rank() {
            return Err(RootError::DimensionMismatch { expected: self.rank(), got: v.len() });
        }
        Ok(())
    }

    /// Twice the symmetric pairing; always an integer.
    pub fn pairing2(&self, v: &[i64], w: &[i64]) -> i64 {
        let mut s = 0;
        for (i, &x) in v.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in w.iter().enumerate() {
                s += x * self.gram2[i][j] * y;
            }
        }
        s
    }

    pub fn pairing(&self, v: &[i64], w: &[i64]) -> Result<Rational, RootError> {
        self.check_dim(v)?;
        self.check_dim(w)?;
        Ok(rat(self.pairing2(v, w), 2))
    }

    pub fn lengthsq(&self, v: &[i64]) -> Rational {
        rat(self.pairing2(v, v), 2)
    }

    /// Squared length of the coroot `2v/(v,v)` of a root `v`.
    pub fn coroot_lengthsq(&self, v: &[i64]) -> Rational {
        rat(8, self.pairing2(v, v))
    }

    /// Pairing of the simple coroots `alpha_i^vee` and `alpha_j^vee`.
    pub fn simple_coroot_pairing(&self, i: usize, j: usize) -> Rational {
        rat(8 * self.gram2[i][j], self.gram2[i][i] * self.gram2[j][j])
    }

    /// Index of a short simple coroot, i.e. the coroot of a long simple root.
    /// For simply-laced systems this is the first one.
    pub fn distinguished_short_coroot(&self) -> usize {
        let max = (0..self.rank()).map(|i| self.gram2[i][i]).max().unwrap_or(0);
        (0..self.rank()).find(|&i| self.gram2[i][i] == max).unwrap_or(0)
    }

    /// The unique root that dominates all others.
    pub fn highest_root(&self) -> Vec<i64> {
        let best = self
            .roots
            .iter()
            .max_by_key(|r| r.iter().sum::<i64>())
            .expect("nonempty root system")
            .clone();
        debug_assert!(self.roots.iter().all(|r| r.iter().zip(&best).all(|(a, b)| a <= b)));
        best
    }

    pub fn coxeter_number(&self) -> usize {
        self.roots.len() / self.rank()
    }

    /// Roots orthogonal to every vector in `coweights`, with their type.
    pub fn centralizer_roots(&self, coweights: &[Vec<i64>]) -> Result<Subsystem, RootError> {
        if coweights.is_empty() {
            return Err(RootError::EmptyCoweights);
        }
        for c in coweights {
            self.check_dim(c)?;
        }
        let roots: Vec<Vec<i64>> = self
            .roots
            .iter()
            .filter(|r| coweights.iter().all(|c| self.pairing2(r, c) == 0))
            .cloned()
            .collect();
        Ok(Subsystem::from_roots(self, roots))
    }
}

fn unit(n: usize, i: usize) -> Vec<i64> {
    let mut v = vec![0; n];
    v[i] = 1;
    v
}

pub fn centralizer_roots(rs: &RootSystem, coweights: &[Vec<i64>]) -> Result<Subsystem, RootError> {
    rs.centralizer_roots(coweights)
}

/// Simple component of a subsystem, e.g. `D4`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Component {
    pub family: char,
    pub rank: usize,
}

impl fmt::Display for Component {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family, self.rank)
    }
}

/// A closed set of roots inside an ambient system, with a simple system and type.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subsystem {
    pub roots: Vec<Vec<i64>>,
    /// Simple roots in lexicographic order.
    pub simple: Vec<Vec<i64>>,
    /// `cartan[i][j] = 2 (s_i, s_j) / (s_j, s_j)`.
    pub cartan: Vec<Vec<i64>>,
    pub components: Vec<Component>,
    pub highest: Vec<Vec<i64>>,
}

impl Subsystem {
    fn from_roots(ambient: &RootSystem, roots: Vec<Vec<i64>>) -> Self {
        let positive: Vec<&Vec<i64>> = roots.iter().filter(|r| r.iter().all(|&x| x >= 0)).collect();
        let pos_set: BTreeSet<&Vec<i64>> = positive.iter().copied().collect();
        let mut simple: Vec<Vec<i64>> = positive
            .iter()
            .filter(|r| {
                !positive.iter().any(|a| {
                    let diff: Vec<i64> = r.iter().zip(a.iter()).map(|(x, y)| x - y).collect();
                    pos_set.contains(&diff)
                })
            })
            .map(|r| (*r).clone())
            .collect();
        simple.sort();
        let k = simple.len();
        let cartan: Vec<Vec<i64>> = (0..k)
            .map(|i| {
                (0..k)
                    .map(|j| 2 * ambient.pairing2(&simple[i], &simple[j]) / ambient.pairing2(&simple[j], &simple[j]))
                    .collect()
            })
            .collect();

        // connected components of the Dynkin graph
        let mut comp_of = vec![usize::MAX; k];
        let mut groups: Vec<Vec<usize>> = Vec::new();
        for s in 0..k {
            if comp_of[s] != usize::MAX {
                continue;
            }
            let id = groups.len();
            let mut stack = vec![s];
            let mut members = Vec::new();
            comp_of[s] = id;
            while let Some(i) = stack.pop() {
                members.push(i);
                for j in 0..k {
                    if cartan[i][j] != 0 && comp_of[j] == usize::MAX {
                        comp_of[j] = id;
                        stack.push(j);
                    }
                }
            }
            members.sort();
            groups.push(members);
        }
        let mut counts: BTreeMap<usize, (usize, usize)> = BTreeMap::new();
        let max_len = roots.iter().map(|r| ambient.pairing2(r, r)).max().unwrap_or(0);
        for r in &roots {
            let g = (0..k).find(|&i| ambient.pairing2(r, &simple[i]) != 0).map(|i| comp_of[i]);
            if let Some(g) = g {
                let e = counts.entry(g).or_default();
                e.0 += 1;
                if ambient.pairing2(r, r) == max_len {
                    e.1 += 1;
                }
            }
        }
        let mut components = Vec::new();
        let mut highest = Vec::new();
        for (id, members) in groups.iter().enumerate() {
            let (n_roots, n_long) = counts.get(&id).copied().unwrap_or((0, 0));
            components.push(classify_component(members.len(), n_roots, n_long));
            let top = positive
                .iter()
                .filter(|r| (0..k).any(|i| comp_of[i] == id && ambient.pairing2(r, &simple[i]) != 0))
                .max_by_key(|r| r.iter().sum::<i64>())
                .map(|r| (*r).clone())
                .unwrap_or_default();
            highest.push(top);
        }
        Subsystem { roots, simple, cartan, components, highest }
    }

    pub fn type_name(&self) -> String {
        let parts: Vec<String> = self.components.iter().map(ToString::to_string).collect();
        parts.join("+")
    }

    /// Index of a simple root adjacent to three others, if any.
    pub fn branch_node(&self) -> Option<usize> {
        (0..self.simple.len()).find(|&i| (0..self.simple.len()).filter(|&j| j != i && self.cartan[i][j] != 0).count() == 3)
    }
}

fn classify_component(rank: usize, n_roots: usize, n_long: usize) -> Component {
    let simply_laced = n_long == n_roots;
    let family = if simply_laced {
        match (rank, n_roots) {
            (6, 72) => 'E',
            (7, 126) => 'E',
            (8, 240) => 'E',
            (n, m) if m == n * (n + 1) => 'A',
            _ => 'D',
        }
    } else {
        match (rank, n_roots) {
            (2, 12) => 'G',
            (4, 48) => 'F',
            (n, _) if n_long == 2 * n => 'C',
            _ => 'B',
        }
    };
    Component { family, rank }
}

/// Names of the shipped coroot embedding tables.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Embedding {
    /// Simple roots of D8 sent into E8.
    D8InE8,
    /// The A1 root and the simple coroots of C4 sent into D8.
    A1C4InD8,
    /// The A1 root and the simple coroots of C4 sent into E8.
    A1C4InE8,
    /// The simple coroots of four copies of A1 sent into E8.
    Pgl2x4InE8,
    /// Identity map of E8.
    E8Identity,
}

impl Embedding {
    pub const TABLES: [Embedding; 4] = [Self::D8InE8, Self::A1C4InD8, Self::A1C4InE8, Self::Pgl2x4InE8];

    pub fn name(self) -> &'static str {
        match self {
            Self::D8InE8 => "D8_in_E8",
            Self::A1C4InD8 => "A1C4_in_D8",
            Self::A1C4InE8 => "A1C4_in_E8",
            Self::Pgl2x4InE8 => "PGL2x4_in_E8",
            Self::E8Identity => "E8_identity",
        }
    }
}

impl FromStr for Embedding {
    type Err = RootError;
    fn from_str(s: &str) -> Result<Self, RootError> {
        [Self::D8InE8, Self::A1C4InD8, Self::A1C4InE8, Self::Pgl2x4InE8, Self::E8Identity]
            .into_iter()
            .find(|e| e.name().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| RootError::UnknownLabel(s.to_string()))
    }
}

/// Images of the simple coroots of one simple factor of the source.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CorootFactor {
    pub source: RootSystem,
    /// Names of the mapped coroots, in simple-coroot order.
    pub labels: Vec<String>,
    pub images: Vec<Vec<i64>>,
    /// Target pairing divided by source pairing on this factor.
    pub multiplier: i64,
}

/// A map of coroot lattices given on simple coroots, one block per simple factor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CorootMap {
    pub name: String,
    pub target: RootSystem,
    pub factors: Vec<CorootFactor>,
}

pub const EPS_TILDE: [i64; 8] = [2, 3, 4, 6, 5, 4, 3, 2];

const A1_IN_D8: [i64; 8] = [1, 2, 3, 4, 3, 2, 1, 0];
const C4_IN_D8: [[i64; 8]; 4] = [
    [1, 0, 0, 0, 0, 0, -1, 0],
    [0, 1, 0, 0, 0, -1, 0, 0],
    [0, 0, 1, 0, -1, 0, 0, 0],
    [0, 0, 0, 1, 2, 2, 1, 1],
];
const A1_IN_E8: [i64; 8] = [-2, -2, -4, -4, -2, 0, 0, 0];
pub const C4_IN_E8: [[i64; 8]; 4] = [
    [-2, -4, -4, -6, -5, -4, -3, -2],
    [0, 0, 0, -1, 0, 0, 0, 1],
    [0, 0, 0, 0, -1, 0, 1, 0],
    [0, 1, 1, 2, 2, 1, 0, 0],
];
const PGL2X4_IN_E8: [[i64; 8]; 4] = [
    [-2, -2, -4, -4, -2, 0, 0, 0],
    [-2, -4, -4, -6, -4, -4, -4, -2],
    [-2, -4, -4, -6, -6, -4, -2, -2],
    [-2, -4, -4, -8, -6, -4, -2, 0],
];
/// The last three copies of A1 written in the simple coroots of C4.
pub const PGL2X3_IN_C4: [[i64; 4]; 3] = [[1, 0, -1, 0], [1, 0, 1, 0], [1, 2, 1, 0]];

/// Simple roots of the centralizer of the C4 torus as tabulated (with `-eps~` first).
pub const D4_TABLE: [[i64; 8]; 4] = [
    [0, 0, 0, 0, 0, 1, 0, 0],
    [1, 1, 2, 2, 1, 0, 0, 0],
    [0, 0, 0, 0, 1, 1, 1, 0],
    [0, 0, 0, 1, 1, 1, 1, 1],
];

fn labels(prefix: &str, n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("{prefix}{i}")).collect()
}

fn a1_factor(label: &str, image: &[i64], multiplier: i64) -> CorootFactor {
    CorootFactor {
        source: RootSystem::new(SystemLabel::A1),
        labels: vec![label.to_string()],
        images: vec![image.to_vec()],
        multiplier,
    }
}

pub fn embedding_table(which: Embedding) -> CorootMap {
    let e8 = RootSystem::new(SystemLabel::E8);
    let d8 = RootSystem::new(SystemLabel::D8);
    let c4 = RootSystem::new(SystemLabel::C4);
    let e = |i: usize| unit(8, i - 1);
    let neg = |v: &[i64]| v.iter().map(|x| -x).collect::<Vec<_>>();
    let c4_factor = |rows: &[[i64; 8]; 4]| CorootFactor {
        source: c4.clone(),
        labels: labels("gamma_v", 4),
        images: rows.iter().map(|r| r.to_vec()).collect(),
        multiplier: 1,
    };
    match which {
        Embedding::D8InE8 => CorootMap {
            name: which.name().into(),
            target: e8,
            factors: vec![CorootFactor {
                source: d8,
                labels: labels("delta", 8),
                images: vec![neg(&EPS_TILDE), e(8), e(7), e(6), e(5), e(4), e(2), e(3)],
                multiplier: 1,
            }],
        },
        Embedding::A1C4InD8 => CorootMap {
            name: which.name().into(),
            target: d8,
            factors: vec![a1_factor("alpha1", &A1_IN_D8, 4), c4_factor(&C4_IN_D8)],
        },
        Embedding::A1C4InE8 => CorootMap {
            name: which.name().into(),
            target: e8,
            factors: vec![a1_factor("alpha1", &A1_IN_E8, 4), c4_factor(&C4_IN_E8)],
        },
        Embedding::Pgl2x4InE8 => CorootMap {
            name: which.name().into(),
            target: e8,
            factors: PGL2X4_IN_E8
                .iter()
                .enumerate()
                .map(|(i, r)| a1_factor(&format!("alpha{}", i + 1), r, 4))
                .collect(),
        },
        Embedding::E8Identity => CorootMap {
            name: which.name().into(),
            target: e8.clone(),
            factors: vec![CorootFactor {
                source: e8,
                labels: labels("eps", 8),
                images: (1..=8).map(e).collect(),
                multiplier: 1,
            }],
        },
    }
}

/// One compared pair of mapped coroots.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PairCheck {
    pub left: String,
    pub right: String,
    #[serde(serialize_with = "crate::scalar::serialize_display")]
    pub expected: Rational,
    #[serde(serialize_with = "crate::scalar::serialize_display")]
    pub actual: Rational,
    pub ok: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EmbeddingReport {
    pub name: String,
    pub pairs: Vec<PairCheck>,
    pub mismatches: usize,
    /// Images that are not integer vectors of the target rank.
    pub off_lattice: Vec<String>,
}

impl EmbeddingReport {
    pub fn is_consistent(&self) -> bool {
        self.mismatches == 0 && self.off_lattice.is_empty()
    }
}

impl CorootMap {
    fn entries(&self) -> impl Iterator<Item = (usize, usize, &String, &Vec<i64>)> {
        self.factors.iter().enumerate().flat_map(|(f, fac)| {
            fac.labels.iter().zip(&fac.images).enumerate().map(move |(i, (l, v))| (f, i, l, v))
        })
    }

    pub fn image(&self, label: &str) -> Option<&Vec<i64>> {
        self.entries().find(|(_, _, l, _)| l.as_str() == label).map(|(_, _, _, v)| v)
    }

    pub fn factor(&self, source: SystemLabel) -> Option<&CorootFactor> {
        self.factors.iter().find(|f| f.source.label() == source)
    }

    /// Compares source and target pairings of all pairs of mapped coroots.
    pub fn verify(&self) -> EmbeddingReport {
        let n = self.target.rank();
        let entries: Vec<_> = self.entries().collect();
        let off_lattice = entries.iter().filter(|e| e.3.len() != n).map(|e| e.2.clone()).collect::<Vec<_>>();
        let mut pairs = Vec::new();
        for (a, &(fa, ia, la, va)) in entries.iter().enumerate() {
            for &(fb, ib, lb, vb) in &entries[a..] {
                if va.len() != n || vb.len() != n {
                    continue;
                }
                let expected = if fa == fb {
                    let fac = &self.factors[fa];
                    fac.source.simple_coroot_pairing(ia, ib) * Rational::from_integer(fac.multiplier.into())
                } else {
                    Rational::zero()
                };
                let actual = rat(self.target.pairing2(va, vb), 2);
                pairs.push(PairCheck { left: la.clone(), right: lb.clone(), ok: expected == actual, expected, actual });
            }
        }
        let mismatches = pairs.iter().filter(|p| !p.ok).count();
        EmbeddingReport { name: self.name.clone(), pairs, mismatches, off_lattice }
    }

    /// Half the squared length of the image of the distinguished short coroot of a factor.
    pub fn rost_multiplier(&self, source: SystemLabel) -> Result<Rational, RootError> {
        let fac = self.factor(source).ok_or_else(|| RootError::NotMapped(source.to_string()))?;
        let i = fac.source.distinguished_short_coroot();
        let v = fac.images.get(i).ok_or_else(|| RootError::NotMapped(format!("{source} coroot {}", i + 1)))?;
        Ok(self.target.lengthsq(v) / Rational::from_integer(2.into()))
    }

    /// Composes with a linear map given on the simple roots of this map's target.
    pub fn then(&self, outer: &CorootMap) -> Result<CorootMap, RootError> {
        let [fac] = outer.factors.as_slice() else {
            return Err(RootError::Compose("outer map must have one factor".into()));
        };
        if fac.source.label() != self.target.label() {
            return Err(RootError::Compose(format!("{} then {}", self.target.label(), fac.source.label())));
        }
        let m = outer.target.rank();
        let apply = |v: &Vec<i64>| {
            let mut w = vec![0i64; m];
            for (x, img) in v.iter().zip(&fac.images) {
                for (wk, ik) in w.iter_mut().zip(img) {
                    *wk += x * ik;
                }
            }
            w
        };
        Ok(CorootMap {
            name: format!("{} then {}", self.name, outer.name),
            target: outer.target.clone(),
            factors: self
                .factors
                .iter()
                .map(|f| CorootFactor { images: f.images.iter().map(apply).collect(), ..f.clone() })
                .collect(),
        })
    }
}

pub fn verify_embedding(map: &CorootMap) -> EmbeddingReport {
    map.verify()
}

pub fn rost_multiplier(map: &CorootMap, source: SystemLabel) -> Result<Rational, RootError> {
    map.rost_multiplier(source)
}

/// The last three A1 rows written through the C4 images, compared with the tabulated rows.
pub fn pgl2x3_through_c4_consistent() -> bool {
    PGL2X3_IN_C4.iter().zip(&PGL2X4_IN_E8[1..]).all(|(coeffs, row)| {
        let mut v = [0i64; 8];
        for (c, img) in coeffs.iter().zip(&C4_IN_E8) {
            for k in 0..8 {
                v[k] += c * img[k];
            }
        }
        &v == row
    })
}

/// Result of comparing the computed centralizer of the C4 torus with the stored table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CentralizerComparison {
    pub subsystem: Subsystem,
    /// Stored rows that are roots of the computed centralizer.
    pub rows_in_centralizer: [bool; 4],
    /// Stored rows that are simple roots of the computed simple system.
    pub rows_simple: [bool; 4],
    /// Whether `phi1 + 2 phi2 + phi3 + phi4` of the stored rows is the highest root of E8.
    pub stored_highest_is_eps_tilde: bool,
    /// Highest root of the computed D4.
    pub highest: Vec<i64>,
    /// Whether the computed D4 highest root is the highest root of E8.
    pub computed_highest_is_eps_tilde: bool,
    /// `{-highest, outer simple roots}` pairwise orthogonal for the computed system.
    pub sigma_orthogonal: bool,
    /// Whether the roots of that orthogonal set sum to the image of the A1 coroot.
    pub sigma_sum_is_a1_image: bool,
}

pub fn c4_centralizer() -> CentralizerComparison {
    let e8 = RootSystem::new(SystemLabel::E8);
    let coweights: Vec<Vec<i64>> = C4_IN_E8.iter().map(|r| r.to_vec()).collect();
    let sub = e8.centralizer_roots(&coweights).expect("nonempty coweights");
    let rows_in_centralizer = D4_TABLE.map(|r| sub.roots.contains(&r.to_vec()));
    let rows_simple = D4_TABLE.map(|r| sub.simple.contains(&r.to_vec()));
    let mut sum = [0i64; 8];
    for (row, k) in D4_TABLE.iter().zip([1, 2, 1, 1]) {
        for i in 0..8 {
            sum[i] += k * row[i];
        }
    }
    let top = sub.highest.first().cloned().unwrap_or_default();
    let mut sigma: Vec<Vec<i64>> = vec![top.iter().map(|x| -x).collect()];
    if let Some(b) = sub.branch_node() {
        sigma.extend((0..sub.simple.len()).filter(|&i| i != b).map(|i| sub.simple[i].clone()));
    }
    let sigma_orthogonal =
        sigma.len() == 4 && sigma.iter().enumerate().all(|(i, x)| sigma[i + 1..].iter().all(|y| e8.pairing2(x, y) == 0));
    let sigma_sum: Vec<i64> = (0..8).map(|k| sigma.iter().map(|v| v[k]).sum()).collect();
    CentralizerComparison {
        rows_in_centralizer,
        rows_simple,
        stored_highest_is_eps_tilde: sum == EPS_TILDE,
        computed_highest_is_eps_tilde: top == EPS_TILDE.to_vec(),
        highest: top,
        sigma_orthogonal,
        sigma_sum_is_a1_image: sigma_sum == A1_IN_E8.to_vec(),
        subsystem: sub,
    }
}

impl fmt::Display for RootSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (rank {}, {} roots)", self.label, self.rank(), self.roots.len())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn classical_counts() {
        let counts: Vec<usize> = SystemLabel::ALL.iter().map(|&l| RootSystem::new(l).roots().len()).collect();
        assert_eq!(counts, vec![2, 32, 24, 112, 240]);
    }

    #[test]
    fn c4_long_and_short() {
        let c4 = RootSystem::new(SystemLabel::C4);
        let long = c4.roots().iter().filter(|r| c4.lengthsq(r) == rat(2, 1)).count();
        assert_eq!(long, 8);
        assert!(c4.roots().iter().all(|r| {
            let l = c4.coroot_lengthsq(r);
            l == rat(2, 1) || l == rat(4, 1)
        }));
        assert_eq!(c4.cartan()[2][3], -1);
        assert_eq!(c4.cartan()[3][2], -2);
    }

    #[test]
    fn e8_highest_root() {
        let e8 = RootSystem::new(SystemLabel::E8);
        assert_eq!(e8.highest_root(), EPS_TILDE.to_vec());
        assert_eq!(e8.pairing(&EPS_TILDE, &EPS_TILDE).unwrap(), rat(2, 1));
        assert_eq!(e8.pairing(&unit(8, 0), &unit(8, 2)).unwrap(), rat(-1, 1));
        assert_eq!(e8.pairing(&unit(8, 0), &unit(8, 1)).unwrap(), rat(0, 1));
        assert!(e8.pairing(&[1, 0], &EPS_TILDE).is_err());
        assert_eq!(e8.coxeter_number(), 30);
    }

    #[test]
    fn sign_coherence() {
        for l in SystemLabel::ALL {
            let rs = RootSystem::new(l);
            for r in rs.roots() {
                assert!(r.iter().all(|&x| x >= 0) || r.iter().all(|&x| x <= 0));
                let neg: Vec<i64> = r.iter().map(|x| -x).collect();
                assert!(rs.is_root(&neg));
                assert_ne!(&neg, r);
            }
        }
    }

    #[test]
    fn shipped_tables_are_consistent() {
        for t in Embedding::TABLES {
            let rep = embedding_table(t).verify();
            assert!(rep.is_consistent(), "{}: {:?}", rep.name, rep.pairs.iter().filter(|p| !p.ok).collect::<Vec<_>>());
        }
        assert_eq!(embedding_table(Embedding::D8InE8).verify().pairs.len(), 36);
        assert!(embedding_table(Embedding::E8Identity).verify().is_consistent());
    }

    #[test]
    fn detects_a_corrupted_row() {
        let mut m = embedding_table(Embedding::D8InE8);
        m.factors[0].images[2] = unit(8, 1);
        assert!(m.verify().mismatches > 0);
    }

    #[test]
    fn tables_compose() {
        let via_d8 = embedding_table(Embedding::A1C4InD8).then(&embedding_table(Embedding::D8InE8)).unwrap();
        let direct = embedding_table(Embedding::A1C4InE8);
        for (a, b) in via_d8.factors.iter().zip(&direct.factors) {
            assert_eq!(a.images, b.images);
        }
        assert!(pgl2x3_through_c4_consistent());
    }

    #[test]
    fn multipliers() {
        let m = embedding_table(Embedding::A1C4InE8);
        assert_eq!(m.rost_multiplier(SystemLabel::C4).unwrap(), rat(1, 1));
        assert_eq!(m.rost_multiplier(SystemLabel::A1).unwrap(), rat(4, 1));
        assert_eq!(embedding_table(Embedding::D8InE8).rost_multiplier(SystemLabel::D8).unwrap(), rat(1, 1));
        assert!(m.rost_multiplier(SystemLabel::D8).is_err());
        let mut flipped = m.clone();
        for v in flipped.factors[1].images.iter_mut() {
            v.iter_mut().for_each(|x| *x = -*x);
        }
        assert_eq!(flipped.rost_multiplier(SystemLabel::C4).unwrap(), rat(1, 1));
    }

    #[test]
    fn centralizer_is_d4() {
        let c = c4_centralizer();
        assert_eq!(c.subsystem.roots.len(), 24);
        assert_eq!(c.subsystem.type_name(), "D4");
        assert_eq!(c.rows_simple, [true; 4]);
        assert!(c.sigma_orthogonal);
        assert!(c.sigma_sum_is_a1_image);
        // The D4 highest root is not the highest root of E8, which is not even orthogonal
        // to the C4 torus.
        assert_eq!(c.highest, vec![2, 2, 4, 5, 4, 3, 2, 1]);
        assert!(!c.computed_highest_is_eps_tilde && !c.stored_highest_is_eps_tilde);
        let e8 = RootSystem::new(SystemLabel::E8);
        assert_ne!(e8.pairing2(&EPS_TILDE, &C4_IN_E8[0]), 0);
    }

    #[test]
    fn empty_coweights_rejected() {
        let e8 = RootSystem::new(SystemLabel::E8);
        assert_eq!(e8.centralizer_roots(&[]), Err(RootError::EmptyCoweights));
        assert_eq!(e8.centralizer_roots(&[EPS_TILDE.to_vec()]).unwrap().type_name(), "E7");
    }
}
