//! Intervals `[1, w]` over a generating set, Hurwitz orbits, bowties and
//! their certificates, and the rectangle example.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet, VecDeque};
use std::fmt::Write as _;

use fixedbitset::FixedBitSet;
use num::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::coxeter::{CoxeterContext, Refl};
use crate::error::IntervalError;
use crate::isometry::{basic_invariants, compose, move_span, product, reflection, reflection_length, Isometry, Kind};
use crate::linalg::{rat, LinearSubspace, QMatrix, QVector, Rational};
use crate::roots::RootSystem;

/// Word length with respect to a generating set, or a lower bound for it
/// that is exact on the elements of interest.
pub trait LengthOracle: Sync {
    /// `None` means "longer than the oracle can see".
    fn length(&self, g: &Isometry) -> Option<usize>;

    /// Normals of a linear subspace that must contain the root of any
    /// reflection dividing `y`; `None` disables the filter.
    fn divisor_normals(&self, _y: &Isometry) -> Option<Vec<QVector>> {
        None
    }
}

/// Reflection length over all euclidean reflections.
pub struct ScherkOracle;

impl LengthOracle for ScherkOracle {
    fn length(&self, g: &Isometry) -> Option<usize> {
        Some(reflection_length(g))
    }

    fn divisor_normals(&self, y: &Isometry) -> Option<Vec<QVector>> {
        Some(move_span(y).complement().basis().to_vec())
    }
}

/// Exact word lengths inside a ball of the Cayley graph.
pub struct BallOracle {
    lengths: HashMap<Isometry, usize>,
    pub radius: usize,
}

impl BallOracle {
    pub fn new(generators: &[Isometry], radius: usize) -> Self {
        let n = generators.first().map_or(0, Isometry::ambient);
        let mut lengths = HashMap::new();
        let id = Isometry::identity(n);
        lengths.insert(id.clone(), 0);
        let mut frontier = vec![id];
        for d in 1..=radius {
            let mut next = Vec::new();
            for g in &frontier {
                for s in generators {
                    let h = compose(g, s);
                    if !lengths.contains_key(&h) {
                        lengths.insert(h.clone(), d);
                        next.push(h);
                    }
                }
            }
            frontier = next;
        }
        BallOracle { lengths, radius }
    }

    pub fn len(&self) -> usize {
        self.lengths.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lengths.is_empty()
    }
}

impl LengthOracle for BallOracle {
    fn length(&self, g: &Isometry) -> Option<usize> {
        self.lengths.get(g).copied()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generator {
    pub iso: Isometry,
    pub label: String,
    /// Root of a reflection, used to prefilter divisors.
    pub root: Option<QVector>,
}

impl Generator {
    pub fn from_refl(r: &Refl, sys: &RootSystem) -> Self {
        Generator { iso: r.isometry(), label: r.label(sys), root: Some(r.root.clone()) }
    }
}

pub type Bits = FixedBitSet;

/// A finite bounded graded poset on `0..n` given by labelled covering
/// relations, with its order relation closed transitively.
#[derive(Clone, Debug)]
pub struct GradedPoset {
    pub rank: Vec<usize>,
    /// `(lower, upper, label)` covering relations.
    pub edges: Vec<(usize, usize, usize)>,
    pub bottom: usize,
    pub top: usize,
    /// Built from a truncated generating set.
    pub windowed: bool,
    below: Vec<Bits>,
    above: Vec<Bits>,
}

/// A finite bounded graded poset of group elements.
#[derive(Clone, Debug)]
pub struct IntervalPoset {
    pub nodes: Vec<Isometry>,
    pub generators: Vec<Generator>,
    pub order: GradedPoset,
    index: HashMap<Isometry, usize>,
}

impl std::ops::Deref for IntervalPoset {
    type Target = GradedPoset;

    fn deref(&self) -> &GradedPoset {
        &self.order
    }
}

/// Elements `u` with `d(1,u) + d(u,w) = d(1,w)`, found by forward search from
/// the identity and backward search from `w`. A node of rank `d` is kept only
/// when it is reached at depth `d` forwards and `N - d` backwards, which
/// certifies its length in the generators.
pub fn build_interval(
    generators: Vec<Generator>,
    w: &Isometry,
    oracle: &dyn LengthOracle,
    windowed: bool,
) -> Result<IntervalPoset, IntervalError> {
    if generators.is_empty() {
        return Err(IntervalError::NoGenerators);
    }
    let n = w.ambient();
    let top_len = oracle.length(w).ok_or_else(|| IntervalError::Certificate("length of w unknown".into()))?;
    let candidates = |y: &Isometry| -> Vec<usize> {
        let normals = oracle.divisor_normals(y);
        (0..generators.len())
            .filter(|&i| match (&normals, &generators[i].root) {
                (Some(ns), Some(r)) => ns.iter().all(|v| v.dot(r).is_zero()),
                _ => true,
            })
            .collect()
    };
    // each step first collects distinct products, then certifies their lengths
    let mut fwd: Vec<BTreeSet<Isometry>> = vec![BTreeSet::from([Isometry::identity(n)])];
    for d in 0..top_len {
        let reached: BTreeSet<Isometry> = fwd[d]
            .par_iter()
            .flat_map_iter(|u| {
                let y = compose(&u.inverse(), w);
                candidates(&y).into_iter().map(|i| compose(u, &generators[i].iso)).collect::<Vec<_>>()
            })
            .collect();
        let next = reached
            .into_par_iter()
            .filter(|x| {
                oracle.length(x) == Some(d + 1) && oracle.length(&compose(&x.inverse(), w)) == Some(top_len - d - 1)
            })
            .collect();
        fwd.push(next);
    }
    let mut bwd: Vec<BTreeSet<Isometry>> = vec![BTreeSet::from([w.clone()])];
    for e in 0..top_len {
        let reached: BTreeSet<Isometry> = bwd[e]
            .par_iter()
            .flat_map_iter(|v| candidates(v).into_iter().map(|i| compose(v, &generators[i].iso)).collect::<Vec<_>>())
            .collect();
        let next = reached
            .into_par_iter()
            .filter(|x| {
                oracle.length(x) == Some(top_len - e - 1) && oracle.length(&compose(&x.inverse(), w)) == Some(e + 1)
            })
            .collect();
        bwd.push(next);
    }
    let mut nodes = Vec::new();
    let mut rank = Vec::new();
    for d in 0..=top_len {
        for u in fwd[d].intersection(&bwd[top_len - d]) {
            nodes.push(u.clone());
            rank.push(d);
        }
    }
    let index: HashMap<Isometry, usize> = nodes.iter().cloned().enumerate().map(|(i, u)| (u, i)).collect();
    let edges: Vec<(usize, usize, usize)> = (0..nodes.len())
        .into_par_iter()
        .flat_map_iter(|a| {
            let u = &nodes[a];
            let mut out = Vec::new();
            if rank[a] < top_len {
                let y = compose(&u.inverse(), w);
                for i in candidates(&y) {
                    if let Some(&b) = index.get(&compose(u, &generators[i].iso)) {
                        if rank[b] == rank[a] + 1 {
                            out.push((a, b, i));
                        }
                    }
                }
            }
            out
        })
        .collect();
    let bottom = index[&Isometry::identity(n)];
    let top = *index.get(w).ok_or_else(|| IntervalError::Certificate("w is not reachable".into()))?;
    let order = GradedPoset::new(rank, edges, bottom, top, windowed);
    Ok(IntervalPoset { nodes, generators, order, index })
}

impl GradedPoset {
    pub fn new(rank: Vec<usize>, edges: Vec<(usize, usize, usize)>, bottom: usize, top: usize, windowed: bool) -> Self {
        let mut p = GradedPoset { rank, edges, bottom, top, windowed, below: Vec::new(), above: Vec::new() };
        p.close();
        p
    }

    fn close(&mut self) {
        let n = self.rank.len();
        let mut below: Vec<Bits> = (0..n)
            .map(|i| {
                let mut b = Bits::with_capacity(n);
                b.insert(i);
                b
            })
            .collect();
        let mut above = below.clone();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&i| self.rank[i]);
        let mut into: Vec<Vec<usize>> = vec![Vec::new(); n];
        let mut out: Vec<Vec<usize>> = vec![Vec::new(); n];
        for &(a, b, _) in &self.edges {
            into[b].push(a);
            out[a].push(b);
        }
        for &x in &order {
            for &a in &into[x] {
                let bits = below[a].clone();
                below[x].union_with(&bits);
            }
        }
        for &x in order.iter().rev() {
            for &b in &out[x] {
                let bits = above[b].clone();
                above[x].union_with(&bits);
            }
        }
        self.below = below;
        self.above = above;
    }

    pub fn len(&self) -> usize {
        self.rank.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rank.is_empty()
    }

    pub fn height(&self) -> usize {
        self.rank[self.top]
    }

    pub fn leq(&self, u: usize, v: usize) -> bool {
        self.below[v].contains(u)
    }

    pub fn below(&self, v: usize) -> &Bits {
        &self.below[v]
    }

    pub fn above(&self, u: usize) -> &Bits {
        &self.above[u]
    }

    pub fn rank_sizes(&self) -> Vec<usize> {
        let mut out = vec![0; self.height() + 1];
        for &r in &self.rank {
            out[r] += 1;
        }
        out
    }

    pub fn at_rank(&self, r: usize) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.rank[i] == r).collect()
    }

    /// Generator index sequences of all maximal chains.
    pub fn maximal_chains(&self) -> Vec<Vec<usize>> {
        let mut out_edges: Vec<Vec<(usize, usize)>> = vec![Vec::new(); self.len()];
        for &(a, b, g) in &self.edges {
            out_edges[a].push((b, g));
        }
        let mut out = Vec::new();
        let mut stack = vec![(self.bottom, Vec::new())];
        while let Some((x, word)) = stack.pop() {
            if x == self.top {
                out.push(word);
                continue;
            }
            for &(y, g) in &out_edges[x] {
                let mut w2 = word.clone();
                w2.push(g);
                stack.push((y, w2));
            }
        }
        out.sort();
        out
    }

    pub fn chain_count(&self) -> u128 {
        let mut ways = vec![0u128; self.len()];
        ways[self.bottom] = 1;
        let mut order: Vec<usize> = (0..self.len()).collect();
        order.sort_by_key(|&i| self.rank[i]);
        let mut out_edges: Vec<Vec<usize>> = vec![Vec::new(); self.len()];
        for &(a, b, _) in &self.edges {
            out_edges[a].push(b);
        }
        for x in order {
            for &y in &out_edges[x] {
                ways[y] += ways[x];
            }
        }
        ways[self.top]
    }

    fn maximal_in(&self, set: &Bits) -> Vec<usize> {
        set.ones()
            .filter(|&x| {
                let mut strictly_above = self.above[x].clone();
                strictly_above.set(x, false);
                strictly_above.is_disjoint(set)
            })
            .collect()
    }

    fn minimal_in(&self, set: &Bits) -> Vec<usize> {
        set.ones()
            .filter(|&x| {
                let mut strictly_below = self.below[x].clone();
                strictly_below.set(x, false);
                strictly_below.is_disjoint(set)
            })
            .collect()
    }

    /// Label of the covering relation `a ⋖ b`.
    pub fn edge_label(&self, a: usize, b: usize) -> Option<usize> {
        self.edges.iter().find(|&&(x, y, _)| x == a && y == b).map(|&(_, _, g)| g)
    }

    /// Labels along a saturated chain of nodes.
    pub fn chain_labels(&self, chain: &[usize]) -> Option<Vec<usize>> {
        chain.windows(2).map(|p| self.edge_label(p[0], p[1])).collect()
    }

    /// The four chains `1 ⋖ x ⋖ y ⋖ w` through a bowtie of a height-3 poset.
    pub fn bowtie_chains(&self, bt: &Bowtie) -> Option<Vec<Vec<usize>>> {
        [(bt.c, bt.a), (bt.c, bt.b), (bt.d, bt.a), (bt.d, bt.b)]
            .iter()
            .map(|&(lo, hi)| self.chain_labels(&[self.bottom, lo, hi, self.top]))
            .collect()
    }

    pub fn lower_bounds(&self, u: usize, v: usize) -> Bits {
        let mut b = self.below[u].clone();
        b.intersect_with(&self.below[v]);
        b
    }

    pub fn upper_bounds(&self, u: usize, v: usize) -> Bits {
        let mut b = self.above[u].clone();
        b.intersect_with(&self.above[v]);
        b
    }

    pub fn meet(&self, u: usize, v: usize) -> Bound {
        self.extremum(&self.lower_bounds(u, v), true)
    }

    pub fn join(&self, u: usize, v: usize) -> Bound {
        self.extremum(&self.upper_bounds(u, v), false)
    }

    fn extremum(&self, set: &Bits, greatest: bool) -> Bound {
        let cands = if greatest { self.maximal_in(set) } else { self.minimal_in(set) };
        match cands.as_slice() {
            [x] => Bound::Found(*x),
            _ if self.windowed => Bound::NotDetermined,
            _ => Bound::None,
        }
    }

    /// All `(a, b : c, d)` with `a, b` minimal upper bounds of `c, d` and
    /// `c, d` maximal lower bounds of `a, b`; `a < b`, `c < d` by index.
    pub fn find_bowties(&self) -> Vec<Bowtie> {
        let n = self.len();
        let mut found = BTreeSet::new();
        for c in 0..n {
            for d in c + 1..n {
                if self.leq(c, d) || self.leq(d, c) {
                    continue;
                }
                let ups = self.minimal_in(&self.upper_bounds(c, d));
                for (i, &a) in ups.iter().enumerate() {
                    for &b in &ups[i + 1..] {
                        let lows = self.maximal_in(&self.lower_bounds(a, b));
                        if lows.contains(&c) && lows.contains(&d) {
                            let (a, b) = (a.min(b), a.max(b));
                            found.insert(Bowtie { a, b, c, d });
                        }
                    }
                }
            }
        }
        found.into_iter().collect()
    }
}

impl IntervalPoset {
    pub fn index_of(&self, g: &Isometry) -> Option<usize> {
        self.index.get(g).copied()
    }

    pub fn label(&self, g: usize) -> &str {
        &self.generators[g].label
    }

    pub fn to_dot(&self) -> String {
        let mut s = String::from("digraph interval {\n  rankdir=BT;\n");
        for (i, u) in self.nodes.iter().enumerate() {
            let _ = writeln!(s, "  n{i} [label=\"{}\"];", node_summary(u));
        }
        for &(a, b, g) in &self.edges {
            let _ = writeln!(s, "  n{a} -> n{b} [label=\"{}\"];", self.label(g));
        }
        s.push_str("}\n");
        s
    }

    pub fn to_json(&self) -> PosetJson {
        PosetJson {
            windowed: self.windowed,
            rank_sizes: self.rank_sizes(),
            nodes: self
                .nodes
                .iter()
                .zip(&self.rank)
                .map(|(u, &r)| NodeJson { rank: r, summary: node_summary(u), element: u.to_json() })
                .collect(),
            edges: self
                .edges
                .iter()
                .map(|&(a, b, g)| EdgeJson { from: a, to: b, label: self.label(g).to_string() })
                .collect(),
        }
    }
}

/// Invariant summary: kind and dimension of the fix-set or move-set.
pub fn node_summary(u: &Isometry) -> String {
    let b = basic_invariants(u);
    match b.kind {
        Kind::Elliptic => format!("E fix dim {} at {}", b.min.dim(), b.min.base()),
        Kind::Hyperbolic => format!("H move dim {} through {}", b.mov.dim(), b.mov.base()),
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NodeJson {
    pub rank: usize,
    pub summary: String,
    pub element: crate::isometry::IsometryJson,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EdgeJson {
    pub from: usize,
    pub to: usize,
    pub label: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PosetJson {
    pub windowed: bool,
    pub rank_sizes: Vec<usize>,
    pub nodes: Vec<NodeJson>,
    pub edges: Vec<EdgeJson>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Bound {
    Found(usize),
    None,
    NotDetermined,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Bowtie {
    pub a: usize,
    pub b: usize,
    pub c: usize,
    pub d: usize,
}

/// Windowed interval of a Coxeter element over the given reflections.
pub fn build_interval_window(ctx: &CoxeterContext, generators: &[Refl]) -> Result<IntervalPoset, IntervalError> {
    let gens = generators.iter().map(|r| Generator::from_refl(r, &ctx.roots)).collect();
    build_interval(gens, &ctx.w, &ScherkOracle, true)
}

/// Splits bowtie candidates of a windowed interval into certified ones and
/// ones whose invariant pattern could not be confirmed.
pub fn certify_found(
    p: &IntervalPoset,
    ctx: &CoxeterContext,
    bowties: &[Bowtie],
) -> (Vec<BowtieCertificate>, Vec<Bowtie>) {
    let mut ok = Vec::new();
    let mut unconfirmed = Vec::new();
    for bt in bowties {
        let n = &p.nodes;
        match certify_bowtie(&n[bt.a], &n[bt.b], &n[bt.c], &n[bt.d], ctx) {
            Ok(c) => ok.push(c),
            Err(_) => unconfirmed.push(*bt),
        }
    }
    (ok, unconfirmed)
}

/// Finds a minimal factorization into reflections of the group by
/// depth-first search guided by the euclidean reflection length.
pub struct Factorizer<'a> {
    sys: &'a RootSystem,
    failed: HashSet<Isometry>,
    budget: usize,
}

impl<'a> Factorizer<'a> {
    pub fn new(sys: &'a RootSystem, budget: usize) -> Self {
        Factorizer { sys, failed: HashSet::new(), budget }
    }

    fn candidates(&self, y: &Isometry) -> Vec<Refl> {
        let inv = basic_invariants(y);
        let p = inv.min.base();
        let mut out = Vec::new();
        match inv.kind {
            Kind::Elliptic => {
                for a in self.sys.positive_roots() {
                    if inv.mov.dir().contains(a) {
                        let m = p.dot(a);
                        if m.is_integer() {
                            out.push(Refl { root: a.clone(), offset: m });
                        }
                    }
                }
            }
            Kind::Hyperbolic => {
                let span = inv.mov.span();
                let u = inv.mov.dir();
                let mut inside = Vec::new();
                for a in self.sys.positive_roots().filter(|a| span.contains(a)) {
                    let c = p.dot(a);
                    let mut m = c.floor() - rat(2);
                    let hi = c.ceil() + rat(2);
                    let target = if u.contains(a) { &mut inside } else { &mut out };
                    while m <= hi {
                        target.push(Refl { root: a.clone(), offset: m.clone() });
                        m += Rational::one();
                    }
                }
                out.extend(inside);
            }
        }
        out
    }

    /// A word `r_1 ... r_k` with product `y` and `k = ℓ_{R_E}(y)`.
    pub fn factorize(&mut self, y: &Isometry) -> Option<Vec<Refl>> {
        let l = reflection_length(y);
        if l == 0 {
            return Some(Vec::new());
        }
        if self.failed.contains(y) || self.budget == 0 {
            return None;
        }
        self.budget -= 1;
        let elliptic = basic_invariants(y).kind == Kind::Elliptic;
        for r in self.candidates(y) {
            let rest = compose(&r.isometry(), y);
            if reflection_length(&rest) != l - 1 {
                continue;
            }
            if let Some(mut word) = self.factorize(&rest) {
                word.insert(0, r);
                return Some(word);
            }
            if elliptic {
                break;
            }
        }
        self.failed.insert(y.clone());
        None
    }
}

/// Quadruple with the invariant pattern that forces a bowtie in `[1, w]`.
#[derive(Clone, Debug)]
pub struct BowtieCertificate {
    pub a: Isometry,
    pub b: Isometry,
    pub c: Isometry,
    pub d: Isometry,
    /// Common direction of the move-sets of `a` and `b`.
    pub u: LinearSubspace,
    /// Reflection words certifying lengths in the group's reflections.
    pub words: Vec<(String, Vec<Refl>)>,
    pub checks: Vec<String>,
}

fn cert_err(m: &str) -> IntervalError {
    IntervalError::Certificate(m.to_string())
}

/// Verifies membership, order and the hyperbolic/elliptic invariant pattern.
pub fn certify_bowtie(
    a: &Isometry,
    b: &Isometry,
    c: &Isometry,
    d: &Isometry,
    ctx: &CoxeterContext,
) -> Result<BowtieCertificate, IntervalError> {
    let four = [a, b, c, d];
    if four.iter().collect::<BTreeSet<_>>().len() != 4 {
        return Err(cert_err("distinctness"));
    }
    let mut checks = vec!["four distinct elements".to_string()];
    let ia = basic_invariants(a);
    let ib = basic_invariants(b);
    if ia.kind != Kind::Hyperbolic || ib.kind != Kind::Hyperbolic || ia.mov.dir() != ib.mov.dir() {
        return Err(cert_err("hyperbolic pattern"));
    }
    if ia.mov == ib.mov {
        return Err(cert_err("move-sets coincide"));
    }
    let u = ia.mov.dir().clone();
    checks.push(format!("a, b hyperbolic, move-sets distinct with direction of dimension {}", u.dim()));
    let ic = basic_invariants(c);
    let id = basic_invariants(d);
    let uperp = u.complement();
    if ic.kind != Kind::Elliptic || id.kind != Kind::Elliptic || *ic.min.dir() != uperp || *id.min.dir() != uperp {
        return Err(cert_err("elliptic pattern"));
    }
    if ic.min == id.min {
        return Err(cert_err("fix-sets coincide"));
    }
    checks.push("c, d elliptic, fix-sets distinct with direction U-perp".into());
    let w = &ctx.w;
    let q = |x: &Isometry, y: &Isometry| compose(&x.inverse(), y);
    let named: Vec<(&str, Isometry)> = vec![
        ("w", w.clone()),
        ("a", a.clone()),
        ("b", b.clone()),
        ("c", c.clone()),
        ("d", d.clone()),
        ("c^-1 a", q(c, a)),
        ("c^-1 b", q(c, b)),
        ("d^-1 a", q(d, a)),
        ("d^-1 b", q(d, b)),
        ("a^-1 w", q(a, w)),
        ("b^-1 w", q(b, w)),
    ];
    let len: BTreeMap<&str, usize> = named.iter().map(|(n, x)| (*n, reflection_length(x))).collect();
    let lw = len["w"];
    if lw != ctx.length() {
        return Err(cert_err("length of w"));
    }
    for x in ["a", "b"] {
        if len[x] + len[format!("{x}^-1 w").as_str()] != lw {
            return Err(cert_err(&format!("membership of {x}")));
        }
    }
    checks.push("a, b lie in [1, w]".into());
    for lo in ["c", "d"] {
        for hi in ["a", "b"] {
            if len[lo] + len[format!("{lo}^-1 {hi}").as_str()] != len[hi] || len[lo] >= len[hi] {
                return Err(cert_err(&format!("order {lo} < {hi}")));
            }
        }
    }
    checks.push("c, d < a, b".into());
    // words over the group's reflections of euclidean reflection length
    // certify that the lengths above are lengths in W
    let mut fz = Factorizer::new(&ctx.roots, 20_000);
    let mut words = Vec::new();
    for (name, x) in &named {
        let word = fz.factorize(x).ok_or_else(|| cert_err(&format!("no reflection word for {name}")))?;
        if word.len() != len[name]
            || product(x.ambient(), word.iter().map(Refl::isometry).collect::<Vec<_>>().iter()) != *x
        {
            return Err(cert_err(&format!("word for {name} does not evaluate")));
        }
        words.push((name.to_string(), word));
    }
    checks.push("lengths realized by reflection words".into());
    Ok(BowtieCertificate { a: a.clone(), b: b.clone(), c: c.clone(), d: d.clone(), u, words, checks })
}

impl BowtieCertificate {
    pub fn recheck(&self, ctx: &CoxeterContext) -> Result<BowtieCertificate, IntervalError> {
        certify_bowtie(&self.a, &self.b, &self.c, &self.d, ctx)
    }

    pub fn to_json(&self, sys: &RootSystem) -> CertificateJson {
        CertificateJson {
            a: node_summary(&self.a),
            b: node_summary(&self.b),
            c: node_summary(&self.c),
            d: node_summary(&self.d),
            u_dim: self.u.dim(),
            words: self.words.iter().map(|(n, w)| (n.clone(), w.iter().map(|r| r.label(sys)).collect())).collect(),
            checks: self.checks.clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CertificateJson {
    pub a: String,
    pub b: String,
    pub c: String,
    pub d: String,
    pub u_dim: usize,
    pub words: Vec<(String, Vec<String>)>,
    pub checks: Vec<String>,
}

/// A factorization; letters act rightmost first.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FactorizationWord {
    pub letters: Vec<Isometry>,
}

impl FactorizationWord {
    pub fn new(letters: Vec<Isometry>) -> Self {
        FactorizationWord { letters }
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn target(&self) -> Isometry {
        let n = self.letters.first().map_or(0, Isometry::ambient);
        product(n, &self.letters)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    /// `(a, b) -> (a b a⁻¹, a)`
    Forward,
    /// `(a, b) -> (b, b⁻¹ a b)`
    Inverse,
}

/// Braid generator at 1-based position `i` acting on letters `i, i+1`.
pub fn hurwitz_move(
    word: &FactorizationWord,
    i: usize,
    dir: Direction,
    closure: Option<&BTreeSet<Isometry>>,
) -> Result<FactorizationWord, IntervalError> {
    if i == 0 || i >= word.len() {
        return Err(IntervalError::Position(i));
    }
    let (a, b) = (&word.letters[i - 1], &word.letters[i]);
    let (x, y) = match dir {
        Direction::Forward => (a.conjugate(b), a.clone()),
        Direction::Inverse => (b.clone(), b.inverse().conjugate(a)),
    };
    if let Some(set) = closure {
        if !set.contains(&x) || !set.contains(&y) {
            return Err(IntervalError::NotClosed);
        }
    }
    let mut letters = word.letters.clone();
    letters[i - 1] = x;
    letters[i] = y;
    Ok(FactorizationWord { letters })
}

#[derive(Clone, Debug)]
pub struct Orbit {
    pub words: BTreeSet<FactorizationWord>,
    pub complete: bool,
    pub budget: usize,
}

impl Orbit {
    pub fn require_complete(self) -> Result<Self, IntervalError> {
        if self.complete {
            Ok(self)
        } else {
            Err(IntervalError::Budget(self.budget))
        }
    }
}

/// Closure under all braid generators and their inverses, up to `max_states` words.
pub fn hurwitz_orbit(
    word: &FactorizationWord,
    max_states: usize,
    closure: Option<&BTreeSet<Isometry>>,
) -> Result<Orbit, IntervalError> {
    if max_states == 0 {
        return Err(IntervalError::Budget(0));
    }
    let mut seen = BTreeSet::from([word.clone()]);
    let mut queue = VecDeque::from([word.clone()]);
    while let Some(x) = queue.pop_front() {
        for i in 1..x.len() {
            for dir in [Direction::Forward, Direction::Inverse] {
                let y = hurwitz_move(&x, i, dir, closure)?;
                if !seen.contains(&y) {
                    if seen.len() >= max_states {
                        return Ok(Orbit { words: seen, complete: false, budget: max_states });
                    }
                    seen.insert(y.clone());
                    queue.push_back(y);
                }
            }
        }
    }
    Ok(Orbit { words: seen, complete: true, budget: max_states })
}

/// Relations `a b = c a` with `c = a b a⁻¹`, as generator indices.
#[derive(Clone, Debug)]
pub struct DualPresentation {
    pub generators: Vec<Isometry>,
    pub relations: BTreeSet<(usize, usize, usize)>,
    pub complete: bool,
}

pub fn extract_dual_presentation(orbit: &Orbit) -> DualPresentation {
    let gens: BTreeSet<Isometry> = orbit.words.iter().flat_map(|w| w.letters.iter().cloned()).collect();
    let generators: Vec<Isometry> = gens.into_iter().collect();
    let idx: BTreeMap<&Isometry, usize> = generators.iter().enumerate().map(|(i, g)| (g, i)).collect();
    let mut relations = BTreeSet::new();
    for w in &orbit.words {
        for pair in w.letters.windows(2) {
            let c = pair[0].conjugate(&pair[1]);
            if let (Some(&ia), Some(&ib), Some(&ic)) = (idx.get(&pair[0]), idx.get(&pair[1]), idx.get(&c)) {
                relations.insert((ia, ib, ic));
            }
        }
    }
    DualPresentation { generators, relations, complete: orbit.complete }
}

impl DualPresentation {
    /// One `a*b = c*a` line per relation.
    pub fn to_text(&self, name: impl Fn(&Isometry) -> String) -> String {
        let mut s = String::new();
        for &(a, b, c) in &self.relations {
            let (a, b, c) = (name(&self.generators[a]), name(&self.generators[b]), name(&self.generators[c]));
            let _ = writeln!(s, "{a}*{b} = {c}*{a}");
        }
        s
    }
}

/// Unit square with corners `p1 = (0,1)`, `p2 = (1,1)`, `p3 = (1,0)`, `p4 = (0,0)`.
pub struct RectangleFixture {
    pub generators: Vec<Generator>,
    pub w: Isometry,
    pub oracle: BallOracle,
}

pub fn rectangle_fixture() -> RectangleFixture {
    let v = |x: &[i64]| QVector::from_ints(x);
    let refl = |a: &[i64], m: i64| reflection(&v(a), &rat(m)).expect("nonzero");
    let tr = |x: &[i64]| Isometry::translation_by(&v(x));
    let generators: Vec<Generator> = [
        ("r12", refl(&[0, 1], 1)),
        ("r34", refl(&[0, 1], 0)),
        ("r23", refl(&[1, 0], 1)),
        ("r41", refl(&[1, 0], 0)),
        ("t13", tr(&[1, -1])),
        ("t31", tr(&[-1, 1])),
        ("t24", tr(&[-1, -1])),
        ("t42", tr(&[1, 1])),
    ]
    .into_iter()
    .map(|(l, g)| Generator { iso: g, label: l.to_string(), root: None })
    .collect();
    let neg = QMatrix::from_rows(&[v(&[-1, 0]), v(&[0, -1])]).expect("square");
    let w = Isometry::new(neg, v(&[1, 1]));
    let isos: Vec<Isometry> = generators.iter().map(|g| g.iso.clone()).collect();
    let oracle = BallOracle::new(&isos, 4);
    RectangleFixture { generators, w, oracle }
}

impl RectangleFixture {
    pub fn interval(&self) -> Result<IntervalPoset, IntervalError> {
        build_interval(self.generators.clone(), &self.w, &self.oracle, false)
    }

    pub fn name(&self, g: &Isometry) -> String {
        self.generators.iter().find(|x| x.iso == *g).map_or_else(|| "?".to_string(), |x| x.label.clone())
    }

    pub fn generator_set(&self) -> BTreeSet<Isometry> {
        self.generators.iter().map(|g| g.iso.clone()).collect()
    }

    /// All words of generators of length `d(1, w)` with product `w`.
    pub fn minimal_factorizations(&self) -> Vec<Vec<usize>> {
        let n = self.oracle.length(&self.w).unwrap_or(0);
        let mut out = Vec::new();
        let mut stack: Vec<(Isometry, Vec<usize>)> = vec![(Isometry::identity(2), Vec::new())];
        while let Some((g, word)) = stack.pop() {
            if word.len() == n {
                if g == self.w {
                    out.push(word);
                }
                continue;
            }
            for (i, s) in self.generators.iter().enumerate() {
                let mut w2 = word.clone();
                w2.push(i);
                stack.push((compose(&g, &s.iso), w2));
            }
        }
        out.sort();
        out
    }
}

/// A finite reflection group given by roots through the origin.
#[derive(Clone, Debug)]
pub struct FiniteCoxeter {
    pub name: String,
    pub reflections: Vec<Isometry>,
    pub simple: Vec<Isometry>,
}

impl FiniteCoxeter {
    /// Types `A_n` (in `R^{n+1}`) and `B_n` (in `R^n`).
    pub fn new(family: char, n: usize) -> Option<Self> {
        let unit = |m: usize, i: usize| QVector::unit(m, i);
        let (roots, simple): (Vec<QVector>, Vec<QVector>) = match family {
            'A' if n >= 1 => {
                let m = n + 1;
                let roots = (0..m).flat_map(|i| (i + 1..m).map(move |j| &unit(m, i) - &unit(m, j))).collect();
                let simple = (0..n).map(|i| &unit(m, i) - &unit(m, i + 1)).collect();
                (roots, simple)
            }
            'B' if n >= 2 => {
                let mut roots: Vec<QVector> = (0..n).map(|i| unit(n, i)).collect();
                for i in 0..n {
                    for j in i + 1..n {
                        roots.push(&unit(n, i) - &unit(n, j));
                        roots.push(&unit(n, i) + &unit(n, j));
                    }
                }
                let mut simple: Vec<QVector> = (0..n - 1).map(|i| &unit(n, i) - &unit(n, i + 1)).collect();
                simple.push(unit(n, n - 1));
                (roots, simple)
            }
            _ => return None,
        };
        let refl = |a: &QVector| reflection(a, &Rational::zero()).expect("nonzero");
        Some(FiniteCoxeter {
            name: format!("{family}{n}"),
            reflections: roots.iter().map(refl).collect::<BTreeSet<_>>().into_iter().collect(),
            simple: simple.iter().map(refl).collect(),
        })
    }

    pub fn coxeter_word(&self) -> FactorizationWord {
        FactorizationWord::new(self.simple.clone())
    }

    /// Exhaustive search over reflection words of length equal to the rank.
    pub fn brute_force_factorizations(&self) -> BTreeSet<FactorizationWord> {
        let c = self.coxeter_word().target();
        let k = self.simple.len();
        let n = c.ambient();
        let mut out = BTreeSet::new();
        let mut stack: Vec<(Isometry, Vec<Isometry>)> = vec![(Isometry::identity(n), Vec::new())];
        while let Some((g, word)) = stack.pop() {
            if word.len() == k {
                if g == c {
                    out.insert(FactorizationWord::new(word));
                }
                continue;
            }
            for r in &self.reflections {
                let mut w2 = word.clone();
                w2.push(r.clone());
                stack.push((compose(&g, r), w2));
            }
        }
        out
    }
}
