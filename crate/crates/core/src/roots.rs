//! Finite crystallographic root systems in explicit coordinates, coroots and
//! slash notation (`r_{13/2}` = e1 + e3 - e2, scaled to a root).

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use num::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::RootError;
use crate::linalg::{rat, ratio, LinearSubspace, QMatrix, QVector, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl Family {
    pub fn letter(self) -> char {
        match self {
            Family::A => 'A',
            Family::B => 'B',
            Family::C => 'C',
            Family::D => 'D',
            Family::E => 'E',
            Family::F => 'F',
            Family::G => 'G',
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct DynkinType {
    pub family: Family,
    pub rank: usize,
}

impl DynkinType {
    pub fn new(family: Family, rank: usize) -> Result<Self, RootError> {
        let ok = match family {
            Family::A => rank >= 1,
            Family::B => rank >= 3,
            Family::C => rank >= 2,
            Family::D => rank >= 4,
            Family::E => (6..=8).contains(&rank),
            Family::F => rank == 4,
            Family::G => rank == 2,
        };
        if ok {
            Ok(DynkinType { family, rank })
        } else {
            Err(RootError::InvalidRank { family: family.letter(), rank })
        }
    }

    /// Dimension of the coordinate space the roots live in.
    pub fn ambient(&self) -> usize {
        match self.family {
            Family::A => self.rank + 1,
            Family::E => 8,
            Family::G => 3,
            _ => self.rank,
        }
    }
}

impl fmt::Display for DynkinType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family.letter(), self.rank)
    }
}

impl FromStr for DynkinType {
    type Err = RootError;
    fn from_str(s: &str) -> Result<Self, RootError> {
        let t = s.trim().trim_start_matches('~');
        let mut chars = t.chars();
        let family = match chars.next().map(|c| c.to_ascii_uppercase()) {
            Some('A') => Family::A,
            Some('B') => Family::B,
            Some('C') => Family::C,
            Some('D') => Family::D,
            Some('E') => Family::E,
            Some('F') => Family::F,
            Some('G') => Family::G,
            _ => return Err(RootError::UnknownType(s.to_string())),
        };
        let rank: usize = chars.as_str().parse().map_err(|_| RootError::UnknownType(s.to_string()))?;
        DynkinType::new(family, rank)
    }
}

/// The finite root system of a type, stored in sorted order.
#[derive(Clone, Debug)]
pub struct RootSystem {
    pub ty: DynkinType,
    ambient: usize,
    roots: Vec<QVector>,
    span: LinearSubspace,
}

/// `Φ_k^(n)`: all vectors with exactly `k` entries equal to ±1.
pub fn build_phi_k(n: usize, k: usize, even_only: bool) -> Result<Vec<QVector>, RootError> {
    if k == 0 || k > n {
        return Err(RootError::KOutOfRange { n, k });
    }
    let mut out = Vec::new();
    let mut subset: Vec<usize> = (0..k).collect();
    loop {
        for signs in 0u32..(1 << k) {
            if even_only && signs.count_ones() % 2 == 1 {
                continue;
            }
            let mut v = QVector::zero(n);
            for (bit, &i) in subset.iter().enumerate() {
                v.0[i] = if signs >> bit & 1 == 1 { rat(-1) } else { rat(1) };
            }
            out.push(v);
        }
        // next k-subset in lexicographic order
        let Some(pos) = (0..k).rev().find(|&i| subset[i] < n - k + i) else { break };
        subset[pos] += 1;
        for j in pos + 1..k {
            subset[j] = subset[j - 1] + 1;
        }
    }
    Ok(out)
}

fn scaled(v: Vec<QVector>, c: Rational) -> impl Iterator<Item = QVector> {
    v.into_iter().map(move |x| x.scale(&c))
}

pub fn build_root_system(ty: DynkinType) -> RootSystem {
    let n = ty.rank;
    let phi = |n, k, e| build_phi_k(n, k, e).expect("valid k");
    let roots: Vec<QVector> = match ty.family {
        Family::B => phi(n, 2, false).into_iter().chain(phi(n, 1, false)).collect(),
        Family::C => phi(n, 2, false).into_iter().chain(scaled(phi(n, 1, false), rat(2))).collect(),
        Family::D => phi(n, 2, false),
        Family::F => {
            phi(4, 2, false).into_iter().chain(scaled(phi(4, 1, false), rat(2))).chain(phi(4, 4, false)).collect()
        }
        Family::E => {
            let e8: Vec<QVector> = phi(8, 2, false).into_iter().chain(scaled(phi(8, 8, true), ratio(1, 2))).collect();
            let same = |v: &QVector, i: usize, j: usize| v[i] == v[j];
            match n {
                8 => e8,
                7 => {
                    let h = QVector::from_ints(&[-1, 1, -1, 1, 1, -1, -1, 1]);
                    e8.into_iter().filter(|v| v.dot(&h).is_zero()).collect()
                }
                _ => e8.into_iter().filter(|v| same(v, 5, 6) && same(v, 6, 7)).collect(),
            }
        }
        Family::A => {
            let ones = QVector(vec![Rational::one(); n + 1]);
            let c = build_root_system(DynkinType { family: Family::C, rank: n + 1 });
            c.roots.into_iter().filter(|v| v.dot(&ones).is_zero()).collect()
        }
        Family::G => {
            let base = [[1, -1, 0], [0, 1, -1], [1, 0, -1], [2, -1, -1], [-1, 2, -1], [-1, -1, 2]];
            base.iter()
                .flat_map(|b| {
                    let v = QVector::from_ints(b);
                    [-&v, v]
                })
                .collect()
        }
    };
    RootSystem::from_roots(ty, ty.ambient(), roots)
}

impl RootSystem {
    fn from_roots(ty: DynkinType, ambient: usize, roots: Vec<QVector>) -> Self {
        let set: BTreeSet<QVector> = roots.into_iter().collect();
        let roots: Vec<QVector> = set.into_iter().collect();
        let span = LinearSubspace::span(ambient, &roots).expect("roots share the ambient dimension");
        RootSystem { ty, ambient, roots, span }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn roots(&self) -> &[QVector] {
        &self.roots
    }

    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    /// Linear span of the roots: the space the group acts on essentially.
    pub fn span(&self) -> &LinearSubspace {
        &self.span
    }

    pub fn contains(&self, v: &QVector) -> bool {
        self.roots.binary_search(v).is_ok()
    }

    /// Roots whose first nonzero entry is positive.
    pub fn positive_roots(&self) -> impl Iterator<Item = &QVector> {
        self.roots.iter().filter(|v| is_positive(v))
    }

    /// Distinct squared lengths, ascending.
    pub fn length_classes(&self) -> Vec<Rational> {
        self.roots.iter().map(QVector::norm2).collect::<BTreeSet<_>>().into_iter().collect()
    }

    /// Common entry size of roots with `k` nonzero entries, if unique.
    fn scale_for_support(&self, k: usize) -> Result<Rational, RootError> {
        let sizes: BTreeSet<Rational> = self
            .roots
            .iter()
            .filter(|v| v.support() == k)
            .flat_map(|v| v.0.iter().filter(|x| !x.is_zero()).map(|x| x.abs()).collect::<Vec<_>>())
            .collect();
        if sizes.len() == 1 {
            Ok(sizes.into_iter().next().expect("one element"))
        } else {
            Err(RootError::AmbiguousScale(k))
        }
    }

    pub fn to_json(&self) -> RootSystemJson {
        RootSystemJson {
            ty: self.ty.to_string(),
            rank: self.ty.rank,
            roots: self.roots.iter().map(QVector::to_strings).collect(),
        }
    }
}

pub fn is_positive(v: &QVector) -> bool {
    v.0.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_positive())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RootSystemJson {
    #[serde(rename = "type")]
    pub ty: String,
    pub rank: usize,
    pub roots: Vec<Vec<String>>,
}

pub fn coroot(alpha: &QVector) -> QVector {
    alpha.scale(&(rat(2) / alpha.norm2()))
}

/// Slash notation for a root, e.g. `r_{1356/2478}`.
pub fn format_root(v: &QVector, sys: &RootSystem) -> Result<String, RootError> {
    let nz: Vec<&Rational> = v.0.iter().filter(|x| !x.is_zero()).collect();
    let Some(first) = nz.first() else { return Err(RootError::NoNotation) };
    let c = first.abs();
    if nz.iter().any(|x| x.abs() != c) || sys.scale_for_support(nz.len())? != c {
        return Err(RootError::NoNotation);
    }
    let idx = |pos: bool| -> String {
        v.0.iter()
            .enumerate()
            .filter(|(_, x)| !x.is_zero() && x.is_positive() == pos)
            .map(|(i, _)| char::from_digit((i + 1) as u32, 10).unwrap_or('?'))
            .collect()
    };
    Ok(format!("r_{{{}/{}}}", idx(true), idx(false)))
}

/// Parses `r_{13/2}`, `r_13/2` or bare `13/2` against a context system.
pub fn parse_root_notation(s: &str, sys: &RootSystem) -> Result<QVector, RootError> {
    let bad = || RootError::Malformed(s.to_string());
    let mut body = s.trim();
    if let Some(rest) = body.strip_prefix("r_") {
        body = rest;
        if let Some(inner) = body.strip_prefix('{') {
            body = inner.strip_suffix('}').ok_or_else(bad)?;
        }
    }
    let (pos, neg) = body.split_once('/').unwrap_or((body, ""));
    let digits = |part: &str| -> Result<Vec<usize>, RootError> {
        part.chars().map(|c| c.to_digit(10).filter(|&d| d >= 1).map(|d| d as usize - 1).ok_or_else(bad)).collect()
    };
    let (p, n) = (digits(pos)?, digits(neg)?);
    let all: BTreeSet<usize> = p.iter().chain(&n).copied().collect();
    if all.is_empty() || all.len() != p.len() + n.len() || all.iter().any(|&i| i >= sys.ambient()) {
        return Err(bad());
    }
    let c = sys.scale_for_support(all.len())?;
    let mut v = QVector::zero(sys.ambient());
    for i in p {
        v.0[i] = c.clone();
    }
    for i in n {
        v.0[i] = -c.clone();
    }
    if sys.contains(&v) {
        Ok(v)
    } else {
        Err(RootError::NotARoot { notation: s.to_string(), vector: v.to_string(), system: sys.ty.to_string() })
    }
}

/// An irreducible piece of a root set, with its recognised type if any.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Component {
    pub label: Option<String>,
    pub rank: usize,
    pub roots: Vec<QVector>,
}

impl Component {
    pub fn describe(&self) -> String {
        self.label.clone().unwrap_or_else(|| format!("rank {} with {} roots", self.rank, self.roots.len()))
    }
}

/// Splits a root set into orthogonal irreducible components, largest first.
pub fn decompose_irreducible(roots: &[QVector]) -> Vec<Component> {
    let sorted: Vec<QVector> = roots.iter().cloned().collect::<BTreeSet<_>>().into_iter().collect();
    let n = sorted.len();
    let mut comp = vec![usize::MAX; n];
    let mut count = 0;
    for s in 0..n {
        if comp[s] != usize::MAX {
            continue;
        }
        comp[s] = count;
        let mut stack = vec![s];
        while let Some(i) = stack.pop() {
            for j in 0..n {
                if comp[j] == usize::MAX && !sorted[i].dot(&sorted[j]).is_zero() {
                    comp[j] = count;
                    stack.push(j);
                }
            }
        }
        count += 1;
    }
    let mut out: Vec<Component> = (0..count)
        .map(|c| {
            let rs: Vec<QVector> = (0..n).filter(|&i| comp[i] == c).map(|i| sorted[i].clone()).collect();
            let rank = LinearSubspace::span(rs[0].dim(), &rs).map_or(0, |s| s.dim());
            Component { label: classify(rank, &rs), rank, roots: rs }
        })
        .collect();
    out.sort_by(|a, b| b.roots.len().cmp(&a.roots.len()).then_with(|| a.roots.cmp(&b.roots)));
    out
}

fn classify(r: usize, roots: &[QVector]) -> Option<String> {
    let n = roots.len();
    let lengths: BTreeSet<Rational> = roots.iter().map(QVector::norm2).collect();
    let label = |f: char| Some(format!("{f}{r}"));
    match lengths.len() {
        1 if n == r * (r + 1) => label('A'),
        1 if r >= 4 && n == 2 * r * (r - 1) => label('D'),
        1 if (r, n) == (6, 72) || (r, n) == (7, 126) || (r, n) == (8, 240) => label('E'),
        2 if r == 2 && n == 12 => label('G'),
        2 if r == 4 && n == 48 => label('F'),
        2 if n == 2 * r * r => {
            let short = lengths.iter().next().expect("two classes");
            let nshort = roots.iter().filter(|v| v.norm2() == *short).count();
            if nshort == 2 * r {
                label('B')
            } else {
                label('C')
            }
        }
        _ => None,
    }
}

/// Highest root relative to a base, by coefficient sum.
pub fn highest_root(sys: &RootSystem, simple: &[QVector]) -> Result<QVector, RootError> {
    let m = QMatrix::from_rows(simple).map_err(|_| RootError::NotABase)?.transpose();
    if simple.len() != sys.span().dim() || m.kernel().dim() != 0 {
        return Err(RootError::NotABase);
    }
    let mut best: Option<(Rational, &QVector)> = None;
    for r in sys.roots() {
        let (c, _) = m.solve(r).ok_or(RootError::NotABase)?;
        if c.0.iter().any(|x| !x.is_integer()) {
            return Err(RootError::NotABase);
        }
        let nonneg = c.0.iter().all(|x| !x.is_negative());
        let nonpos = c.0.iter().all(|x| !x.is_positive());
        if !nonneg && !nonpos {
            return Err(RootError::NotABase);
        }
        let sum = c.0.iter().fold(Rational::zero(), |a, b| a + b);
        if best.as_ref().is_none_or(|(s, _)| sum > *s) {
            best = Some((sum, r));
        }
    }
    best.map(|(_, r)| r.clone()).ok_or(RootError::NotABase)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ty(s: &str) -> DynkinType {
        s.parse().unwrap()
    }

    #[test]
    fn phi_k_counts() {
        assert_eq!(build_phi_k(2, 1, false).unwrap().len(), 4);
        assert_eq!(build_phi_k(8, 8, true).unwrap().len(), 128);
        assert_eq!(build_phi_k(4, 2, false).unwrap().len(), 24);
        assert!(build_phi_k(3, 4, false).is_err());
    }

    #[test]
    fn system_sizes() {
        for (t, n) in [
            ("F4", 48),
            ("E8", 240),
            ("E7", 126),
            ("E6", 72),
            ("G2", 12),
            ("B3", 18),
            ("C4", 32),
            ("D5", 40),
            ("A3", 12),
        ] {
            assert_eq!(build_root_system(ty(t)).len(), n, "{t}");
        }
        let g = build_root_system(ty("G2"));
        assert_eq!(g.length_classes(), vec![rat(2), rat(6)]);
    }

    #[test]
    fn coroot_examples() {
        assert_eq!(coroot(&QVector::from_ints(&[2, 0])), QVector::from_ints(&[1, 0]));
        assert_eq!(coroot(&QVector::from_ints(&[1, 0])), QVector::from_ints(&[2, 0]));
        assert_eq!(coroot(&QVector::from_ints(&[1, 1])), QVector::from_ints(&[1, 1]));
    }

    #[test]
    fn notation_examples() {
        let e8 = build_root_system(ty("E8"));
        assert_eq!(parse_root_notation("r_{1/2}", &e8).unwrap(), QVector::from_ints(&[1, -1, 0, 0, 0, 0, 0, 0]));
        let half = parse_root_notation("r_{1356/2478}", &e8).unwrap();
        assert_eq!(half, QVector::from_ints(&[1, -1, 1, -1, 1, 1, -1, -1]).scale(&ratio(1, 2)));
        let b4 = build_root_system(ty("B4"));
        assert_eq!(parse_root_notation("r_{/12}", &b4).unwrap(), QVector::from_ints(&[-1, -1, 0, 0]));
        assert_eq!(parse_root_notation("1/", &b4).unwrap(), QVector::from_ints(&[1, 0, 0, 0]));
        let c4 = build_root_system(ty("C4"));
        assert_eq!(parse_root_notation("r_{1/}", &c4).unwrap(), QVector::from_ints(&[2, 0, 0, 0]));
        assert!(matches!(parse_root_notation("r_{123/}", &b4), Err(RootError::AmbiguousScale(3))));
        assert!(matches!(parse_root_notation("r_{1/x}", &b4), Err(RootError::Malformed(_))));
        let e6 = build_root_system(ty("E6"));
        assert!(matches!(parse_root_notation("r_{7/8}", &e6), Err(RootError::NotARoot { .. })));
    }

    #[test]
    fn decomposition_examples() {
        let f4 = build_root_system(ty("F4"));
        let names = ["r_{2/3}", "r_{1/}", "r_{123/4}", "r_{23/14}"];
        let mut hor = Vec::new();
        for n in names {
            let v = parse_root_notation(n, &f4).unwrap();
            hor.push(-&v);
            hor.push(v);
        }
        let comps = decompose_irreducible(&hor);
        let labels: Vec<_> = comps.iter().map(Component::describe).collect();
        assert_eq!(labels, ["A2", "A1"]);
        assert_eq!(decompose_irreducible(build_root_system(ty("D4")).roots()).len(), 1);
        let pair: Vec<QVector> = build_phi_k(2, 1, false).unwrap();
        assert_eq!(decompose_irreducible(&pair).len(), 2);
    }

    #[test]
    fn highest_root_examples() {
        let c2 = build_root_system(ty("C2"));
        let base = [QVector::from_ints(&[1, -1]), QVector::from_ints(&[0, 2])];
        assert_eq!(highest_root(&c2, &base).unwrap(), QVector::from_ints(&[2, 0]));
        let a2 = build_root_system(ty("A2"));
        let base = [QVector::from_ints(&[1, -1, 0]), QVector::from_ints(&[0, 1, -1])];
        assert_eq!(highest_root(&a2, &base).unwrap(), QVector::from_ints(&[1, 0, -1]));
        let d4 = build_root_system(ty("D4"));
        let base: Vec<QVector> =
            [[1, -1, 0, 0], [0, 1, -1, 0], [0, 0, 1, -1], [0, 0, 1, 1]].iter().map(|r| QVector::from_ints(r)).collect();
        assert_eq!(highest_root(&d4, &base).unwrap(), QVector::from_ints(&[1, 1, 0, 0]));
        assert!(highest_root(&c2, &[QVector::from_ints(&[1, -1]), QVector::from_ints(&[1, 1])]).is_err());
    }
}
