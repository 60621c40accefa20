//! Extended Dynkin diagrams, simple systems, Coxeter elements, the Coxeter
//! axis and axial chambers.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use num::{Integer, One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::CoxeterError;
use crate::isometry::{basic_invariants, product, reflection, reflection_length, Isometry, Kind};
use crate::linalg::{rat, AffineSubspace, LinearSubspace, QMatrix, QVector, Rational};
use crate::roots::{build_root_system, coroot, is_positive, parse_root_notation, DynkinType, Family, RootSystem};

/// Geometric class of a Coxeter element.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CoxeterClass {
    Bipartite,
    /// `p` clockwise and `q` counterclockwise edges on the cycle of type A.
    Bigon {
        p: usize,
        q: usize,
    },
}

impl fmt::Display for CoxeterClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoxeterClass::Bipartite => write!(f, "bipartite"),
            CoxeterClass::Bigon { p, q } => write!(f, "({p},{q})"),
        }
    }
}

impl FromStr for CoxeterClass {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        let t = s.trim();
        if t.eq_ignore_ascii_case("bipartite") {
            return Ok(CoxeterClass::Bipartite);
        }
        let inner = t.trim_start_matches('(').trim_end_matches(')');
        let (a, b) = inner.split_once(',').ok_or_else(|| format!("bad class `{s}`"))?;
        let p = a.trim().parse().map_err(|_| format!("bad class `{s}`"))?;
        let q = b.trim().parse().map_err(|_| format!("bad class `{s}`"))?;
        Ok(CoxeterClass::Bigon { p, q })
    }
}

impl Serialize for CoxeterClass {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// Classes of Coxeter elements handled for a type: `(p,q)` with `p ≥ q ≥ 1`
/// for A, the bipartite class otherwise.
pub fn classes_for(ty: DynkinType) -> Vec<CoxeterClass> {
    match ty.family {
        Family::A => {
            let m = ty.rank + 1;
            (1..=m / 2).rev().map(|q| CoxeterClass::Bigon { p: m - q, q }).rev().collect()
        }
        _ => vec![CoxeterClass::Bipartite],
    }
}

/// Edge label; `None` stands for an edge labelled ∞.
pub type EdgeLabel = Option<u32>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExtendedDiagram {
    pub vertices: usize,
    pub edges: Vec<(usize, usize, EdgeLabel)>,
    pub white: usize,
}

impl ExtendedDiagram {
    pub fn neighbours(&self, v: usize) -> Vec<usize> {
        self.edges
            .iter()
            .filter_map(|&(a, b, _)| {
                if a == v {
                    Some(b)
                } else if b == v {
                    Some(a)
                } else {
                    None
                }
            })
            .collect()
    }

    pub fn is_connected(&self) -> bool {
        let mut seen = vec![false; self.vertices];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for u in self.neighbours(v) {
                if !seen[u] {
                    seen[u] = true;
                    stack.push(u);
                }
            }
        }
        seen.into_iter().all(|x| x)
    }

    pub fn is_tree(&self) -> bool {
        self.edges.len() + 1 == self.vertices && self.is_connected()
    }

    /// The two colour classes `(S₀, S₁)`, with vertex 0 in `S₀`.
    pub fn bipartition(&self) -> Result<(Vec<usize>, Vec<usize>), CoxeterError> {
        if !self.is_tree() {
            return Err(CoxeterError::NotATree);
        }
        let mut colour = vec![usize::MAX; self.vertices];
        colour[0] = 0;
        let mut stack = vec![0];
        while let Some(v) = stack.pop() {
            for u in self.neighbours(v) {
                if colour[u] == usize::MAX {
                    colour[u] = 1 - colour[v];
                    stack.push(u);
                }
            }
        }
        let part = |c| (0..self.vertices).filter(|&v| colour[v] == c).collect();
        Ok((part(0), part(1)))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimpleEntry {
    pub root: QVector,
    pub offset: Rational,
}

impl SimpleEntry {
    pub fn reflection(&self) -> Isometry {
        reflection(&self.root, &self.offset).expect("roots are nonzero")
    }

    /// Signed value of the wall functional at `x`.
    pub fn eval(&self, x: &QVector) -> Rational {
        x.dot(&self.root) - &self.offset
    }
}

/// Walls of a chamber: the hyperplanes `⟨x, αᵢ⟩ = offsetᵢ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimpleSystem {
    pub entries: Vec<SimpleEntry>,
    pub diagram: ExtendedDiagram,
    /// Primitive integer coefficients of the linear dependency, positive at the white vertex.
    pub dependency: Vec<Rational>,
    span: LinearSubspace,
}

fn edge_label(a: &QVector, b: &QVector) -> Option<EdgeLabel> {
    let d = a.dot(b);
    if d.is_zero() {
        return None;
    }
    let cos2 = &d * &d / (a.norm2() * b.norm2());
    let label = if cos2 == Rational::new(1.into(), 4.into()) {
        Some(3)
    } else if cos2 == Rational::new(1.into(), 2.into()) {
        Some(4)
    } else if cos2 == Rational::new(3.into(), 4.into()) {
        Some(6)
    } else if cos2.is_one() {
        None
    } else {
        Some(0)
    };
    Some(label)
}

impl SimpleSystem {
    /// Assembles and validates a chamber from its walls. `white` is the wall with nonzero offset.
    pub fn new(sys: &RootSystem, entries: Vec<SimpleEntry>, white: usize) -> Result<Self, CoxeterError> {
        let n1 = entries.len();
        let check = |m: &str| CoxeterError::Check(m.to_string());
        if n1 != sys.span().dim() + 1 || white >= n1 {
            return Err(check("wrong number of walls"));
        }
        let mut edges = Vec::new();
        for i in 0..n1 {
            for j in i + 1..n1 {
                if let Some(l) = edge_label(&entries[i].root, &entries[j].root) {
                    if l == Some(0) {
                        return Err(check("angle outside the crystallographic list"));
                    }
                    edges.push((i, j, l));
                }
            }
        }
        let diagram = ExtendedDiagram { vertices: n1, edges, white };
        if !diagram.is_connected() {
            return Err(check("diagram is disconnected"));
        }
        let roots: Vec<QVector> = entries.iter().map(|e| e.root.clone()).collect();
        let ker = QMatrix::from_rows(&roots).map_err(|_| check("ragged roots"))?.transpose().kernel();
        if ker.dim() != 1 {
            return Err(check("roots do not have a unique linear dependency"));
        }
        let mut dep = ker.basis()[0].primitive();
        if dep[white].is_negative() {
            dep = -&dep;
        }
        if dep.0.iter().any(Zero::is_zero) {
            return Err(check("dependency does not involve every root"));
        }
        let out = SimpleSystem { entries, diagram, dependency: dep.0, span: sys.span().clone() };
        out.validate_alcove(sys)?;
        Ok(out)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn white(&self) -> usize {
        self.diagram.white
    }

    pub fn span(&self) -> &LinearSubspace {
        &self.span
    }

    pub fn reflections(&self) -> Vec<Isometry> {
        self.entries.iter().map(SimpleEntry::reflection).collect()
    }

    /// Vertex opposite each wall, inside the span of the roots.
    pub fn vertices(&self) -> Vec<QVector> {
        let amb = self.span.ambient();
        let perp = self.span.complement();
        (0..self.len())
            .map(|j| {
                let mut normals: Vec<QVector> = Vec::new();
                let mut values: Vec<Rational> = Vec::new();
                for (i, e) in self.entries.iter().enumerate() {
                    if i != j {
                        normals.push(e.root.clone());
                        values.push(e.offset.clone());
                    }
                }
                for c in perp.basis() {
                    normals.push(c.clone());
                    values.push(Rational::zero());
                }
                let a = AffineSubspace::from_equations(amb, &normals, &values).expect("walls meet");
                debug_assert_eq!(a.dim(), 0);
                a.base().clone()
            })
            .collect()
    }

    /// Each root takes values in a single `[k, k+1]` on the vertices.
    fn validate_alcove(&self, sys: &RootSystem) -> Result<(), CoxeterError> {
        let vs = self.vertices();
        for a in sys.positive_roots() {
            let vals: Vec<Rational> = vs.iter().map(|v| v.dot(a)).collect();
            let lo = vals.iter().min().expect("nonempty").floor();
            if vals.iter().any(|x| *x > &lo + Rational::one()) {
                return Err(CoxeterError::Check(format!("walls do not bound an alcove (root {a})")));
            }
        }
        Ok(())
    }

    /// The walls of the chamber `g(σ)`.
    pub fn transform(&self, g: &Isometry) -> SimpleSystem {
        let entries = self
            .entries
            .iter()
            .map(|e| {
                let r = g.apply_vector(&e.root);
                let offset = &e.offset + g.translation().dot(&r);
                SimpleEntry { root: r, offset }
            })
            .collect();
        SimpleSystem { entries, ..self.clone() }
    }
}

fn v(x: &[i64]) -> QVector {
    QVector::from_ints(x)
}

fn alternating_pairs(n: usize) -> Vec<QVector> {
    (1..n)
        .map(|i| {
            let mut x = vec![0; n];
            let s = if i % 2 == 1 { -1 } else { 1 };
            x[i - 1] = s;
            x[i] = s;
            v(&x)
        })
        .collect()
}

fn last_difference(n: usize) -> QVector {
    let mut x = vec![0; n];
    let s = if (n - 1) % 2 == 1 { -1 } else { 1 };
    x[n - 2] = s;
    x[n - 1] = -s;
    v(&x)
}

fn listed_roots(ty: DynkinType, sys: &RootSystem) -> Result<Vec<QVector>, CoxeterError> {
    let n = ty.rank;
    let parse = |list: &[&str]| -> Result<Vec<QVector>, CoxeterError> {
        list.iter().map(|s| parse_root_notation(s, sys).map_err(CoxeterError::from)).collect()
    };
    let mut out = Vec::new();
    match ty.family {
        Family::C => {
            out.push(QVector::unit(n, 0).scale(&rat(2)));
            out.extend(alternating_pairs(n));
            out.push(QVector::unit(n, n - 1).scale(&rat(if n.is_multiple_of(2) { 2 } else { -2 })));
        }
        Family::B => {
            out.push(QVector::unit(n, 0));
            out.extend(alternating_pairs(n));
            out.push(last_difference(n));
        }
        Family::D => {
            let mut first = vec![0; n];
            first[0] = 1;
            first[1] = -1;
            out.push(v(&first));
            out.extend(alternating_pairs(n));
            out.push(last_difference(n));
        }
        Family::F => out = parse(&["1/2", "23/", "/1234", "4/", "12/34"])?,
        Family::E => {
            out = match n {
                6 => parse(&["12/", "5/2", "/45", "4/3", "235678/14", "2345/1678", "134678/25"])?,
                7 => parse(&["/15", "12/", "/27", "78/", "/38", "34/", "/46", "2356/1478"])?,
                _ => parse(&["12/", "/25", "5/6", "6/7", "78/", "/38", "34/", "28/134567", "2367/1458"])?,
            }
        }
        Family::G => out = vec![v(&[-1, -1, 2]), v(&[-1, 2, -1]), v(&[1, -1, 0])],
        Family::A => unreachable!("type A is assembled from a bigon"),
    }
    Ok(out)
}

fn bigon_entries(p: usize, q: usize) -> Vec<SimpleEntry> {
    let m = p + q;
    let diff = |i: usize, j: usize| &QVector::unit(m, i) - &QVector::unit(m, j);
    let mut out = vec![SimpleEntry { root: diff(0, p), offset: Rational::zero() }];
    for i in 0..p - 1 {
        out.push(SimpleEntry { root: diff(i, i + 1), offset: Rational::zero() });
    }
    for j in p..m - 1 {
        out.push(SimpleEntry { root: diff(j, j + 1), offset: Rational::zero() });
    }
    out.push(SimpleEntry { root: diff(m - 1, p - 1), offset: Rational::one() });
    out
}

fn check_class(ty: DynkinType, class: CoxeterClass) -> Result<(), CoxeterError> {
    let ok = match (ty.family, class) {
        (Family::A, CoxeterClass::Bigon { p, q }) => p >= q && q >= 1 && p + q == ty.rank + 1,
        (Family::A, CoxeterClass::Bipartite) => false,
        (_, CoxeterClass::Bipartite) => true,
        (_, CoxeterClass::Bigon { .. }) => false,
    };
    if ok {
        Ok(())
    } else {
        Err(CoxeterError::InvalidClass { ty: ty.to_string(), class: class.to_string() })
    }
}

/// The chamber used for a type and class. For type A the walls are listed
/// source first and sink last; for the other types in diagram order.
pub fn standard_simple_system(ty: DynkinType, class: CoxeterClass) -> Result<SimpleSystem, CoxeterError> {
    check_class(ty, class)?;
    let sys = build_root_system(ty);
    simple_system_in(&sys, class)
}

fn simple_system_in(sys: &RootSystem, class: CoxeterClass) -> Result<SimpleSystem, CoxeterError> {
    let ty = sys.ty;
    if let CoxeterClass::Bigon { p, q } = class {
        let entries = bigon_entries(p, q);
        let white = entries.len() - 1;
        return SimpleSystem::new(sys, entries, white);
    }
    let roots = listed_roots(ty, sys)?;
    let ker = QMatrix::from_rows(&roots).map_err(|_| CoxeterError::Check("ragged roots".into()))?.transpose().kernel();
    let dep = ker.basis().first().ok_or_else(|| CoxeterError::Check("independent roots".into()))?.primitive();
    let white = dep
        .0
        .iter()
        .position(|c| c.abs().is_one())
        .ok_or_else(|| CoxeterError::Check("no vertex with coefficient 1".into()))?;
    let entries = roots
        .into_iter()
        .enumerate()
        .map(|(i, root)| SimpleEntry { root, offset: if i == white { Rational::one() } else { Rational::zero() } })
        .collect();
    SimpleSystem::new(sys, entries, white)
}

/// Arrow `u → v` records that `u` is multiplied to the left of `v`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct AcyclicOrientation {
    pub arrows: BTreeSet<(usize, usize)>,
}

impl AcyclicOrientation {
    pub fn from_order(d: &ExtendedDiagram, order: &[usize]) -> Result<Self, CoxeterError> {
        let mut pos = vec![usize::MAX; d.vertices];
        for (k, &v) in order.iter().enumerate() {
            if v >= d.vertices || pos[v] != usize::MAX {
                return Err(CoxeterError::BadOrdering);
            }
            pos[v] = k;
        }
        if order.len() != d.vertices {
            return Err(CoxeterError::BadOrdering);
        }
        let arrows = d.edges.iter().map(|&(a, b, _)| if pos[a] < pos[b] { (a, b) } else { (b, a) }).collect();
        Ok(AcyclicOrientation { arrows })
    }

    pub fn is_source(&self, v: usize) -> bool {
        self.arrows.iter().all(|&(_, b)| b != v)
    }

    pub fn is_sink(&self, v: usize) -> bool {
        self.arrows.iter().all(|&(a, _)| a != v)
    }

    pub fn is_acyclic(&self, vertices: usize) -> bool {
        self.linearize(vertices).is_some()
    }

    /// Topological order, smallest available vertex first.
    pub fn linearize(&self, vertices: usize) -> Option<Vec<usize>> {
        let mut indeg = vec![0usize; vertices];
        for &(_, b) in &self.arrows {
            indeg[b] += 1;
        }
        let mut ready: BTreeSet<usize> = (0..vertices).filter(|&v| indeg[v] == 0).collect();
        let mut out = Vec::with_capacity(vertices);
        while let Some(v) = ready.pop_first() {
            out.push(v);
            for &(a, b) in &self.arrows {
                if a == v {
                    indeg[b] -= 1;
                    if indeg[b] == 0 {
                        ready.insert(b);
                    }
                }
            }
        }
        (out.len() == vertices).then_some(out)
    }
}

/// Reverses every arrow at a source or sink.
pub fn sink_source_flip(ord: &AcyclicOrientation, v: usize) -> Result<AcyclicOrientation, CoxeterError> {
    if !ord.is_source(v) && !ord.is_sink(v) {
        return Err(CoxeterError::NotSourceOrSink(v));
    }
    let arrows = ord.arrows.iter().map(|&(a, b)| if a == v || b == v { (b, a) } else { (a, b) }).collect();
    Ok(AcyclicOrientation { arrows })
}

/// Number of acyclic orientations, by enumerating all edge directions.
pub fn count_acyclic_orientations(d: &ExtendedDiagram) -> u64 {
    let e = d.edges.len();
    (0u64..1 << e)
        .filter(|mask| {
            let arrows = d
                .edges
                .iter()
                .enumerate()
                .map(|(i, &(a, b, _))| if mask >> i & 1 == 0 { (a, b) } else { (b, a) })
                .collect();
            AcyclicOrientation { arrows }.is_acyclic(d.vertices)
        })
        .count() as u64
}

/// All acyclic orientations in lexicographic order of their arrow sets.
pub fn acyclic_orientations(d: &ExtendedDiagram) -> Vec<AcyclicOrientation> {
    let e = d.edges.len();
    let mut out: Vec<AcyclicOrientation> = (0u64..1 << e)
        .map(|mask| AcyclicOrientation {
            arrows: d
                .edges
                .iter()
                .enumerate()
                .map(|(i, &(a, b, _))| if mask >> i & 1 == 0 { (a, b) } else { (b, a) })
                .collect(),
        })
        .filter(|o| o.is_acyclic(d.vertices))
        .collect();
    out.sort();
    out
}

/// Product of the simple reflections in the given order, leftmost acting last.
pub fn coxeter_element(s: &SimpleSystem, order: &[usize]) -> Result<Isometry, CoxeterError> {
    AcyclicOrientation::from_order(&s.diagram, order)?;
    let refl = s.reflections();
    Ok(product(s.span.ambient(), order.iter().map(|&i| &refl[i])))
}

/// Coxeter element of an orientation; an explicit order must linearize it.
pub fn coxeter_element_oriented(
    s: &SimpleSystem,
    ord: &AcyclicOrientation,
    order: Option<&[usize]>,
) -> Result<Isometry, CoxeterError> {
    let lin;
    let order = match order {
        Some(o) => {
            if AcyclicOrientation::from_order(&s.diagram, o)? != *ord {
                return Err(CoxeterError::BadOrdering);
            }
            o
        }
        None => {
            lin = ord.linearize(s.len()).ok_or(CoxeterError::BadOrdering)?;
            &lin
        }
    };
    coxeter_element(s, order)
}

/// `S₁` before `S₀`, so that the product is `w₁ w₀`.
pub fn bipartite_order(s: &SimpleSystem) -> Result<Vec<usize>, CoxeterError> {
    let (s0, s1) = s.diagram.bipartition()?;
    Ok(s1.into_iter().chain(s0).collect())
}

/// `(w₀, w₁)`, the products of the reflections in each colour class.
pub fn bipartite_involutions(s: &SimpleSystem) -> Result<(Isometry, Isometry), CoxeterError> {
    let (s0, s1) = s.diagram.bipartition()?;
    let refl = s.reflections();
    let n = s.span.ambient();
    let w0 = product(n, s0.iter().map(|&i| &refl[i]));
    let w1 = product(n, s1.iter().map(|&i| &refl[i]));
    Ok((w0, w1))
}

/// The `S₀` part of the linear dependency, summed.
pub fn axis_direction_symbolic(s: &SimpleSystem) -> Result<QVector, CoxeterError> {
    let (s0, _) = s.diagram.bipartition()?;
    let n = s.span.ambient();
    Ok(s0.iter().fold(QVector::zero(n), |acc, &i| acc.axpy(&s.dependency[i], &s.entries[i].root)))
}

#[derive(Clone, Debug)]
pub struct CoxeterContext {
    pub ty: DynkinType,
    pub class: CoxeterClass,
    pub roots: RootSystem,
    pub simple: SimpleSystem,
    pub order: Vec<usize>,
    pub w: Isometry,
    pub axis: AffineSubspace,
    /// Primitive integer vector, first nonzero entry positive.
    pub axis_dir: QVector,
    pub involutions: Option<(Isometry, Isometry)>,
}

pub fn build_context(ty: DynkinType, class: CoxeterClass) -> Result<CoxeterContext, CoxeterError> {
    check_class(ty, class)?;
    let roots = build_root_system(ty);
    let simple = simple_system_in(&roots, class)?;
    let (order, involutions) = match class {
        CoxeterClass::Bipartite => (bipartite_order(&simple)?, Some(bipartite_involutions(&simple)?)),
        CoxeterClass::Bigon { .. } => ((0..simple.len()).collect(), None),
    };
    let w = coxeter_element(&simple, &order)?;
    let fail = |m: String| Err(CoxeterError::Check(m));
    if let Some((w0, w1)) = &involutions {
        if crate::isometry::compose(w1, w0) != w {
            return fail("bipartite product differs from w₁w₀".into());
        }
    }
    let inv = basic_invariants(&w);
    if inv.kind != Kind::Hyperbolic || reflection_length(&w) != simple.len() {
        return fail("Coxeter element is not hyperbolic of full length".into());
    }
    let axis = inv
        .min
        .intersect(&AffineSubspace::linear(roots.span().clone()))
        .ok_or_else(|| CoxeterError::Check("min-set misses the span of the roots".into()))?;
    if axis.dim() != 1 {
        return fail(format!("min-set has dimension {}", axis.dim()));
    }
    let axis_dir = axis.dir().basis()[0].primitive();
    if involutions.is_some() {
        let sym = axis_direction_symbolic(&simple)?;
        if sym.parallel_factor(&axis_dir).is_none() {
            return fail(format!("symbolic direction {sym} is not parallel to {axis_dir}"));
        }
    }
    if let CoxeterClass::Bigon { p, q } = class {
        let t = w.pow((p * q) as i64);
        let mut expect = vec![q as i64; p];
        expect.extend(std::iter::repeat_n(-(p as i64), q));
        if !t.is_translation() || *t.translation() != v(&expect) {
            return fail(format!("w^{} is {:?}", p * q, t));
        }
    }
    Ok(CoxeterContext { ty, class, roots, simple, order, w, axis, axis_dir, involutions })
}

impl CoxeterContext {
    pub fn rank(&self) -> usize {
        self.ty.rank
    }

    pub fn ambient(&self) -> usize {
        self.roots.ambient()
    }

    pub fn length(&self) -> usize {
        self.simple.len()
    }

    pub fn is_horizontal(&self, alpha: &QVector) -> bool {
        alpha.dot(&self.axis_dir).is_zero()
    }

    /// Translation part of `w` along its axis.
    pub fn shift(&self) -> QVector {
        basic_invariants(&self.w).mov.base().clone()
    }

    pub fn to_json(&self, axial: Option<&AxialData>) -> ContextJson {
        ContextJson {
            ty: format!("~{}", self.ty),
            class: self.class.to_string(),
            simple_roots: self
                .simple
                .entries
                .iter()
                .map(|e| SimpleRootJson { root: e.root.clone(), offset: crate::linalg::fmt_rat(&e.offset) })
                .collect(),
            white_vertex: self.simple.white(),
            order: self.order.clone(),
            axis_direction: self.axis_dir.clone(),
            axial_points: axial.map(|a| a.points.iter().map(|(_, p)| p.clone()).collect()).unwrap_or_default(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SimpleRootJson {
    pub root: QVector,
    pub offset: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ContextJson {
    #[serde(rename = "type")]
    pub ty: String,
    pub class: String,
    pub simple_roots: Vec<SimpleRootJson>,
    pub white_vertex: usize,
    pub order: Vec<usize>,
    pub axis_direction: QVector,
    pub axial_points: Vec<QVector>,
}

/// A reflection of the group: the hyperplane `⟨x, root⟩ = offset` with a positive root.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Refl {
    pub root: QVector,
    pub offset: Rational,
}

impl Refl {
    pub fn new(root: &QVector, offset: &Rational) -> Self {
        if is_positive(root) {
            Refl { root: root.clone(), offset: offset.clone() }
        } else {
            Refl { root: -root, offset: -offset.clone() }
        }
    }

    pub fn isometry(&self) -> Isometry {
        reflection(&self.root, &self.offset).expect("nonzero root")
    }

    /// Recognises a reflection whose root lies in `sys` and whose offset is an integer.
    pub fn of_group(g: &Isometry, sys: &RootSystem) -> Option<Refl> {
        let a = g.linear().sub(&QMatrix::identity(g.ambient()));
        let cs = a.column_space();
        if cs.dim() != 1 {
            return None;
        }
        let dir = &cs.basis()[0];
        let root = sys.positive_roots().find(|r| r.parallel_factor(dir).is_some())?;
        let offset = g.translation().dot(root) / rat(2);
        let r = Refl { root: root.clone(), offset };
        (r.offset.is_integer() && r.isometry() == *g).then_some(r)
    }

    pub fn label(&self, sys: &RootSystem) -> String {
        let name = crate::roots::format_root(&self.root, sys).unwrap_or_else(|_| self.root.to_string());
        format!("{name}@{}", crate::linalg::fmt_rat(&self.offset))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Orientation {
    Vertical,
    Horizontal,
}

pub fn classify_reflection(g: &Isometry, ctx: &CoxeterContext) -> Result<Orientation, CoxeterError> {
    let r = Refl::of_group(g, &ctx.roots).ok_or(CoxeterError::NotAReflection)?;
    Ok(if ctx.is_horizontal(&r.root) { Orientation::Horizontal } else { Orientation::Vertical })
}

/// A chamber `g(σ)` met by the axis on the parameter interval `(lo, hi)`.
#[derive(Clone, Debug)]
pub struct AxialChamber {
    pub g: Isometry,
    pub vertices: Vec<QVector>,
    pub lo: Rational,
    pub hi: Rational,
}

/// Axis points `base + s·step`; `w` moves `s` to `s + 2`.
#[derive(Clone, Debug)]
pub struct AxialData {
    pub window: usize,
    pub base: QVector,
    pub step: QVector,
    /// `x_i` for `i ∈ [-k, k+1]`; empty for type A.
    pub points: Vec<(i64, QVector)>,
    /// Vertices of `σ_i` lying in `B_i`; empty for type A.
    pub vertex_sets: Vec<(i64, Vec<QVector>)>,
    pub chambers: Vec<AxialChamber>,
    pub vertices: Vec<QVector>,
}

impl AxialData {
    pub fn point(&self, s: &Rational) -> QVector {
        self.base.axpy(s, &self.step)
    }

    /// Axis parameter of the orthogonal projection of `x`.
    pub fn parameter(&self, x: &QVector) -> Rational {
        (x - &self.base).dot(&self.step) / self.step.norm2()
    }
}

/// Walks from `start` to the chamber containing `p` in its interior.
pub fn locate_chamber(s: &SimpleSystem, start: &Isometry, p: &QVector) -> Result<Isometry, CoxeterError> {
    let verts = s.vertices();
    let mut g = start.clone();
    'walk: loop {
        let walls = s.transform(&g);
        for (i, wall) in walls.entries.iter().enumerate() {
            let fp = wall.eval(p);
            if fp.is_zero() {
                return Err(CoxeterError::Check(format!("point {p} lies on a wall")));
            }
            let fv = wall.eval(&g.apply(&verts[i]));
            if fp.is_positive() != fv.is_positive() {
                g = crate::isometry::compose(&wall.reflection(), &g);
                continue 'walk;
            }
        }
        return Ok(g);
    }
}

fn crossings(ctx: &CoxeterContext, base: &QVector, step: &QVector, lo: &Rational, hi: &Rational) -> BTreeSet<Rational> {
    let mut out = BTreeSet::new();
    for a in ctx.roots.positive_roots() {
        let d = step.dot(a);
        if d.is_zero() {
            continue;
        }
        let c0 = base.dot(a);
        let (e1, e2) = (&c0 + lo * &d, &c0 + hi * &d);
        let (m0, m1) = if e1 <= e2 { (e1, e2) } else { (e2, e1) };
        let mut m = m0.ceil();
        while m <= m1 {
            out.insert((&m - &c0) / &d);
            m += Rational::one();
        }
    }
    out
}

pub fn axial_data(ctx: &CoxeterContext, k: usize) -> Result<AxialData, CoxeterError> {
    if k < 1 {
        return Err(CoxeterError::WindowInsufficient(k));
    }
    let e0 = AffineSubspace::linear(ctx.roots.span().clone());
    let fail = |m: &str| CoxeterError::Check(m.to_string());
    let (base, step, bsets) = match &ctx.involutions {
        Some((w0, w1)) => {
            let b0 = basic_invariants(w0).min.intersect(&e0).ok_or_else(|| fail("empty B₀"))?;
            let b1 = basic_invariants(w1).min.intersect(&e0).ok_or_else(|| fail("empty B₁"))?;
            let x0 = b0.intersect(&ctx.axis).ok_or_else(|| fail("axis misses B₀"))?;
            let x1 = b1.intersect(&ctx.axis).ok_or_else(|| fail("axis misses B₁"))?;
            if x0.dim() != 0 || x1.dim() != 0 {
                return Err(fail("axis meets B₀ or B₁ in more than a point"));
            }
            let (x0, x1) = (x0.base().clone(), x1.base().clone());
            (x0.clone(), &x1 - &x0, Some((b0, b1)))
        }
        None => {
            let p = ctx.axis.base().clone();
            (p, ctx.shift().scale(&Rational::new(1.into(), 2.into())), None)
        }
    };
    let two_step = step.scale(&rat(2));
    if ctx.w.apply(&base) != &base + &two_step {
        return Err(fail("w does not shift the axis by two steps"));
    }
    let (lo, hi) = (rat(-(k as i64)), rat(k as i64 + 1));
    let mut cuts = crossings(ctx, &base, &step, &lo, &hi);
    cuts.insert(lo.clone());
    cuts.insert(hi.clone());
    let cuts: Vec<Rational> = cuts.into_iter().collect();
    let verts = ctx.simple.vertices();
    let mut g = Isometry::identity(ctx.ambient());
    let mut chambers = Vec::new();
    for pair in cuts.windows(2) {
        let mid = (&pair[0] + &pair[1]) / rat(2);
        g = locate_chamber(&ctx.simple, &g, &base.axpy(&mid, &step))?;
        chambers.push(AxialChamber {
            g: g.clone(),
            vertices: verts.iter().map(|x| g.apply(x)).collect(),
            lo: pair[0].clone(),
            hi: pair[1].clone(),
        });
    }
    let mut points = Vec::new();
    let mut vertex_sets = Vec::new();
    if let Some((b0, b1)) = bsets {
        for i in -(k as i64)..=(k as i64 + 1) {
            points.push((i, base.axpy(&rat(i), &step)));
        }
        for c in &chambers {
            if !c.lo.is_integer() || c.hi != &c.lo + Rational::one() {
                return Err(fail("axis crosses a wall between consecutive axial points"));
            }
            let i = c.lo.to_integer();
            let i: i64 = i.try_into().map_err(|_| fail("index overflow"))?;
            let (a, r) = i.div_mod_floor(&2);
            let bi = ctx.w.pow(a).image(if r == 0 { &b0 } else { &b1 });
            vertex_sets.push((i, c.vertices.iter().filter(|x| bi.contains_point(x)).cloned().collect()));
        }
    }
    let vertices: Vec<QVector> =
        chambers.iter().flat_map(|c| c.vertices.iter().cloned()).collect::<BTreeSet<_>>().into_iter().collect();
    Ok(AxialData { window: k, base, step, points, vertex_sets, chambers, vertices })
}

/// Order of the linear part of `w`.
pub fn linear_order(w: &Isometry) -> usize {
    let l = Isometry::new(w.linear().clone(), QVector::zero(w.ambient()));
    let mut acc = l.clone();
    let mut k = 1;
    while !acc.is_identity() {
        acc = crate::isometry::compose(&acc, &l);
        k += 1;
        assert!(k < 100_000, "linear part of infinite order");
    }
    k
}

fn isqrt_ceil(x: &Rational) -> i64 {
    let mut r: i64 = 0;
    while rat(r) * rat(r) < *x {
        r += 1;
    }
    r
}

/// Whether the hyperplane `⟨x, α⟩ = m` contains an axial vertex.
pub fn in_r0(alpha: &QVector, m: &Rational, ctx: &CoxeterContext, axial: &AxialData) -> Result<bool, CoxeterError> {
    if axial.window < 1 {
        return Err(CoxeterError::WindowInsufficient(axial.window));
    }
    if !ctx.roots.contains(alpha) || !m.is_integer() {
        return Err(CoxeterError::NotAReflection);
    }
    let base: Vec<&QVector> = axial
        .chambers
        .iter()
        .filter(|c| c.lo < rat(2) && c.hi > Rational::zero())
        .flat_map(|c| c.vertices.iter())
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let contains = |j: i64| {
        let g = ctx.w.pow(-j);
        let a = g.apply_vector(alpha);
        let val = m + g.translation().dot(&a);
        base.iter().any(|x| x.dot(&a) == val)
    };
    let d = axial.step.dot(alpha);
    if d.is_zero() {
        let p = linear_order(&ctx.w) as i64;
        return Ok((0..p).any(contains));
    }
    let params: Vec<Rational> = base.iter().map(|x| axial.parameter(x)).collect();
    let smin = params.iter().min().expect("nonempty").clone();
    let smax = params.iter().max().expect("nonempty").clone();
    let d2 = base.iter().zip(&params).map(|(x, s)| (*x - &axial.point(s)).norm2()).max().expect("nonempty");
    let r = rat(isqrt_ceil(&(d2 * alpha.norm2() / (&d * &d))) + 1);
    let cross = (m - axial.base.dot(alpha)) / &d;
    // w^{-j} moves the crossing parameter by -2j
    let jlo = ((&cross - &smax - &r) / rat(2)).floor().to_integer();
    let jhi = ((&cross - &smin + &r) / rat(2)).ceil().to_integer();
    let jlo: i64 = jlo.try_into().map_err(|_| CoxeterError::Check("overflow".into()))?;
    let jhi: i64 = jhi.try_into().map_err(|_| CoxeterError::Check("overflow".into()))?;
    Ok((jlo..=jhi).any(contains))
}

/// Reflections `(α, m)`, `α` positive, whose hyperplane contains an axial vertex of the window.
pub fn window_reflections(ctx: &CoxeterContext, axial: &AxialData) -> Vec<Refl> {
    let mut out = BTreeSet::new();
    for x in &axial.vertices {
        for a in ctx.roots.positive_roots() {
            let m = x.dot(a);
            if m.is_integer() {
                out.insert(Refl { root: a.clone(), offset: m });
            }
        }
    }
    out.into_iter().collect()
}

/// Positive roots orthogonal to the axis direction.
pub fn horizontal_root_list(ctx: &CoxeterContext) -> Vec<QVector> {
    ctx.roots.roots().iter().filter(|a| ctx.is_horizontal(a)).cloned().collect()
}

/// `(α, m)` grouped by root for quick lookup.
pub fn group_by_root(rs: &[Refl]) -> BTreeMap<QVector, Vec<Rational>> {
    let mut out: BTreeMap<QVector, Vec<Rational>> = BTreeMap::new();
    for r in rs {
        out.entry(r.root.clone()).or_default().push(r.offset.clone());
    }
    out
}

pub fn coroot_translation(alpha: &QVector, c: &Rational) -> Isometry {
    Isometry::translation_by(&coroot(alpha).scale(c))
}
