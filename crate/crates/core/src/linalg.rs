//! Exact rational vectors, matrices and canonical linear/affine subspaces.

use std::fmt;
use std::ops::{Add, Index, Neg, Sub};

use num::{BigInt, BigRational, One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::LinalgError;

pub type Rational = BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Formats a rational as `p/q`, or `p` when integral.
pub fn fmt_rat(q: &Rational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub fn parse_rat(s: &str) -> Result<Rational, LinalgError> {
    let bad = || LinalgError::Parse(s.to_string());
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(Rational::new(n, d))
        }
        None => Ok(Rational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

/// A vector with exact rational entries.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QVector(pub Vec<Rational>);

impl QVector {
    pub fn zero(n: usize) -> Self {
        QVector(vec![Rational::zero(); n])
    }

    pub fn from_ints(v: &[i64]) -> Self {
        QVector(v.iter().map(|&x| rat(x)).collect())
    }

    pub fn unit(n: usize, i: usize) -> Self {
        let mut v = Self::zero(n);
        v.0[i] = Rational::one();
        v
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn entries(&self) -> &[Rational] {
        &self.0
    }

    pub fn dot(&self, other: &QVector) -> Rational {
        debug_assert_eq!(self.dim(), other.dim());
        self.0.iter().zip(&other.0).fold(Rational::zero(), |acc, (a, b)| acc + a * b)
    }

    pub fn norm2(&self) -> Rational {
        self.dot(self)
    }

    pub fn scale(&self, c: &Rational) -> QVector {
        QVector(self.0.iter().map(|x| x * c).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn support(&self) -> usize {
        self.0.iter().filter(|x| !x.is_zero()).count()
    }

    /// `self + c * other`
    pub fn axpy(&self, c: &Rational, other: &QVector) -> QVector {
        QVector(self.0.iter().zip(&other.0).map(|(a, b)| a + c * b).collect())
    }

    /// Primitive integer multiple whose first nonzero entry is positive.
    pub fn primitive(&self) -> QVector {
        if self.is_zero() {
            return self.clone();
        }
        let lcm = self.0.iter().fold(BigInt::one(), |acc, x| num::integer::lcm(acc, x.denom().clone()));
        let ints: Vec<BigInt> = self.0.iter().map(|x| (x * Rational::from_integer(lcm.clone())).to_integer()).collect();
        let g = ints.iter().fold(BigInt::zero(), |acc, x| num::integer::gcd(acc, x.clone()));
        let first_neg = ints.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_negative());
        let g = if first_neg { -g } else { g };
        QVector(ints.into_iter().map(|x| Rational::from_integer(x / &g)).collect())
    }

    /// Returns `Some(c)` with `self = c * other` when the vectors are parallel.
    pub fn parallel_factor(&self, other: &QVector) -> Option<Rational> {
        let i = other.0.iter().position(|x| !x.is_zero())?;
        let c = &self.0[i] / &other.0[i];
        (*self == other.scale(&c) && !c.is_zero()).then_some(c)
    }

    pub fn to_strings(&self) -> Vec<String> {
        self.0.iter().map(fmt_rat).collect()
    }

    pub fn from_strings(v: &[String]) -> Result<Self, LinalgError> {
        v.iter().map(|s| parse_rat(s)).collect::<Result<_, _>>().map(QVector)
    }
}

impl Index<usize> for QVector {
    type Output = Rational;
    fn index(&self, i: usize) -> &Rational {
        &self.0[i]
    }
}

impl Add for &QVector {
    type Output = QVector;
    fn add(self, o: &QVector) -> QVector {
        QVector(self.0.iter().zip(&o.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &QVector {
    type Output = QVector;
    fn sub(self, o: &QVector) -> QVector {
        QVector(self.0.iter().zip(&o.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &QVector {
    type Output = QVector;
    fn neg(self) -> QVector {
        QVector(self.0.iter().map(|a| -a).collect())
    }
}

impl fmt::Debug for QVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.to_strings().join(","))
    }
}

impl fmt::Display for QVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl Serialize for QVector {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.to_strings().serialize(s)
    }
}

impl<'de> Deserialize<'de> for QVector {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let v = Vec::<String>::deserialize(d)?;
        QVector::from_strings(&v).map_err(serde::de::Error::custom)
    }
}

/// `acc + a b`, skipping gcd reductions when all three are integers.
fn mul_add(acc: &Rational, a: &Rational, b: &Rational) -> Rational {
    if acc.is_integer() && a.is_integer() && b.is_integer() {
        Rational::from_integer(acc.numer() + a.numer() * b.numer())
    } else {
        acc + a * b
    }
}

/// Dense row-major rational matrix.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl QMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        QMatrix { rows, cols, data: vec![Rational::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = Rational::one();
        }
        m
    }

    pub fn from_rows(rows: &[QVector]) -> Result<Self, LinalgError> {
        let cols = rows.first().map_or(0, QVector::dim);
        if let Some(bad) = rows.iter().find(|r| r.dim() != cols) {
            return Err(LinalgError::Dimension { expected: cols, found: bad.dim() });
        }
        Ok(QMatrix { rows: rows.len(), cols, data: rows.iter().flat_map(|r| r.0.iter().cloned()).collect() })
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rational) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> QVector {
        QVector(self.data[i * self.cols..(i + 1) * self.cols].to_vec())
    }

    pub fn col(&self, j: usize) -> QVector {
        QVector((0..self.rows).map(|i| self.get(i, j).clone()).collect())
    }

    pub fn row_vectors(&self) -> Vec<QVector> {
        (0..self.rows).map(|i| self.row(i)).collect()
    }

    pub fn transpose(&self) -> QMatrix {
        let mut t = QMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, o: &QMatrix) -> QMatrix {
        assert_eq!(self.cols, o.rows, "matrix shape mismatch");
        let mut m = QMatrix::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let b = o.get(k, j);
                    if !b.is_zero() {
                        let idx = i * o.cols + j;
                        m.data[idx] = mul_add(&m.data[idx], a, b);
                    }
                }
            }
        }
        m
    }

    pub fn mul_vec(&self, v: &QVector) -> QVector {
        assert_eq!(self.cols, v.dim(), "matrix/vector shape mismatch");
        QVector(
            (0..self.rows)
                .map(|i| {
                    (0..self.cols)
                        .filter(|&j| !v.0[j].is_zero())
                        .fold(Rational::zero(), |acc, j| mul_add(&acc, self.get(i, j), &v.0[j]))
                })
                .collect(),
        )
    }

    pub fn sub(&self, o: &QMatrix) -> QMatrix {
        QMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().zip(&o.data).map(|(a, b)| a - b).collect() }
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| *self.get(i, j) == if i == j { Rational::one() } else { Rational::zero() })
            })
    }

    /// Column space as a canonical subspace.
    pub fn column_space(&self) -> LinearSubspace {
        LinearSubspace::span(self.rows, &self.transpose().row_vectors()).expect("columns share the row count")
    }

    /// Solves `self * x = b`, returning a particular solution and the kernel,
    /// or `None` when the system is inconsistent.
    pub fn solve(&self, b: &QVector) -> Option<(QVector, LinearSubspace)> {
        assert_eq!(self.rows, b.dim());
        let n = self.cols;
        let mut aug: Vec<Vec<Rational>> = (0..self.rows)
            .map(|i| {
                let mut r = self.row(i).0;
                r.push(b.0[i].clone());
                r
            })
            .collect();
        let pivots = rref_in_place(&mut aug, n);
        if aug.iter().any(|r| r[..n].iter().all(Zero::is_zero) && !r[n].is_zero()) {
            return None;
        }
        let mut x = QVector::zero(n);
        for (r, &p) in pivots.iter().enumerate() {
            x.0[p] = aug[r][n].clone();
        }
        Some((x, self.kernel()))
    }

    pub fn kernel(&self) -> LinearSubspace {
        let n = self.cols;
        let mut m: Vec<Vec<Rational>> = self.row_vectors().into_iter().map(|r| r.0).collect();
        let pivots = rref_in_place(&mut m, n);
        let free: Vec<usize> = (0..n).filter(|j| !pivots.contains(j)).collect();
        let basis: Vec<QVector> = free
            .iter()
            .map(|&f| {
                let mut v = QVector::zero(n);
                v.0[f] = Rational::one();
                for (r, &p) in pivots.iter().enumerate() {
                    v.0[p] = -&m[r][f];
                }
                v
            })
            .collect();
        LinearSubspace::span(n, &basis).expect("kernel vectors have the column count")
    }
}

impl QMatrix {
    /// `(rank A, rank [A | b])` by integer elimination.
    pub fn rank_with(&self, b: &QVector) -> (usize, usize) {
        assert_eq!(self.rows, b.dim());
        let mut m: Vec<Vec<BigInt>> = (0..self.rows)
            .map(|i| {
                let mut r = self.row(i).0;
                r.push(b.0[i].clone());
                integer_row(&r)
            })
            .collect();
        let r = echelon_integer(&mut m, self.cols);
        let extra = m[r..].iter().any(|row| !row[self.cols].is_zero());
        (r, r + usize::from(extra))
    }

    pub fn rank(&self) -> usize {
        self.rank_with(&QVector::zero(self.rows)).0
    }
}

/// Clears denominators and divides out the content of a row.
fn integer_row(r: &[Rational]) -> Vec<BigInt> {
    use num::Integer;
    let l = r.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = r.iter().map(|x| x.numer() * (&l / x.denom())).collect();
    primitive_row(ints)
}

fn primitive_row(mut r: Vec<BigInt>) -> Vec<BigInt> {
    use num::Integer;
    let g = r.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if !g.is_zero() && !g.is_one() {
        for x in r.iter_mut() {
            *x = &*x / &g;
        }
    }
    r
}

/// Row echelon form on the first `ncols` columns; returns the rank there.
fn echelon_integer(m: &mut [Vec<BigInt>], ncols: usize) -> usize {
    let mut r = 0;
    for c in 0..ncols {
        if r == m.len() {
            break;
        }
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, p);
        let (top, rest) = m.split_at_mut(r + 1);
        let piv = &top[r];
        for row in rest.iter_mut() {
            if row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            let combined: Vec<BigInt> = row.iter().zip(piv).map(|(x, y)| x * &piv[c] - &f * y).collect();
            *row = primitive_row(combined);
        }
        r += 1;
    }
    r
}

impl fmt::Debug for QMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.row_vectors()).finish()
    }
}

/// Reduces the first `ncols` columns of `m` to RREF in place; returns pivot columns.
fn rref_in_place(m: &mut [Vec<Rational>], ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == m.len() {
            break;
        }
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x = &*x * &inv;
        }
        let pivot_row = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = row[c].clone();
                for (x, y) in row.iter_mut().zip(&pivot_row) {
                    if !y.is_zero() {
                        *x = &*x - &f * y;
                    }
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// A linear subspace stored by its reduced row-echelon basis.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
pub struct LinearSubspace {
    ambient: usize,
    basis: Vec<QVector>,
}

/// Canonical span of `rows` inside an ambient space of dimension `ambient`.
pub fn rref(ambient: usize, rows: &[QVector]) -> Result<LinearSubspace, LinalgError> {
    LinearSubspace::span(ambient, rows)
}

impl LinearSubspace {
    pub fn span(ambient: usize, rows: &[QVector]) -> Result<Self, LinalgError> {
        if let Some(bad) = rows.iter().find(|r| r.dim() != ambient) {
            return Err(LinalgError::Dimension { expected: ambient, found: bad.dim() });
        }
        let mut m: Vec<Vec<Rational>> = rows.iter().map(|r| r.0.clone()).collect();
        let pivots = rref_in_place(&mut m, ambient);
        m.truncate(pivots.len());
        Ok(LinearSubspace { ambient, basis: m.into_iter().map(QVector).collect() })
    }

    pub fn zero(ambient: usize) -> Self {
        LinearSubspace { ambient, basis: Vec::new() }
    }

    pub fn full(ambient: usize) -> Self {
        LinearSubspace { ambient, basis: (0..ambient).map(|i| QVector::unit(ambient, i)).collect() }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[QVector] {
        &self.basis
    }

    /// Membership by reduction against the pivots of the echelon basis.
    pub fn contains(&self, v: &QVector) -> bool {
        if v.dim() != self.ambient {
            return false;
        }
        let mut rest = v.clone();
        for b in &self.basis {
            let p = b.0.iter().position(|x| !x.is_zero()).expect("basis rows are nonzero");
            if !rest.0[p].is_zero() {
                let c = -rest.0[p].clone();
                rest = rest.axpy(&c, b);
            }
        }
        rest.is_zero()
    }

    pub fn contains_subspace(&self, o: &LinearSubspace) -> bool {
        o.basis.iter().all(|v| self.contains(v))
    }

    pub fn complement(&self) -> LinearSubspace {
        if self.basis.is_empty() {
            return LinearSubspace::full(self.ambient);
        }
        QMatrix::from_rows(&self.basis).expect("uniform rows").kernel()
    }

    pub fn sum(&self, o: &LinearSubspace) -> LinearSubspace {
        let rows: Vec<QVector> = self.basis.iter().chain(&o.basis).cloned().collect();
        LinearSubspace::span(self.ambient, &rows).expect("same ambient")
    }

    pub fn intersect(&self, o: &LinearSubspace) -> LinearSubspace {
        self.complement().sum(&o.complement()).complement()
    }

    pub fn with(&self, v: &QVector) -> LinearSubspace {
        let mut rows = self.basis.clone();
        rows.push(v.clone());
        LinearSubspace::span(self.ambient, &rows).expect("same ambient")
    }

    /// Orthogonal projection of `v` onto this subspace.
    pub fn project(&self, v: &QVector) -> QVector {
        if self.basis.is_empty() {
            return QVector::zero(self.ambient);
        }
        let b = QMatrix::from_rows(&self.basis).expect("uniform rows");
        let gram = b.mul(&b.transpose());
        let rhs = b.mul_vec(v);
        let (c, _) = gram.solve(&rhs).expect("gram matrix of a basis is invertible");
        b.transpose().mul_vec(&c)
    }
}

/// Free-function form of [`LinearSubspace::complement`].
pub fn orthogonal_complement(u: &LinearSubspace) -> LinearSubspace {
    u.complement()
}

/// An affine subspace `base + dir` with `base` orthogonal to `dir`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
pub struct AffineSubspace {
    base: QVector,
    dir: LinearSubspace,
}

impl AffineSubspace {
    /// Standard form of `point + dir`.
    pub fn new(point: &QVector, dir: LinearSubspace) -> Self {
        let base = point - &dir.project(point);
        AffineSubspace { base, dir }
    }

    pub fn point(p: &QVector) -> Self {
        AffineSubspace { base: p.clone(), dir: LinearSubspace::zero(p.dim()) }
    }

    pub fn linear(dir: LinearSubspace) -> Self {
        AffineSubspace { base: QVector::zero(dir.ambient()), dir }
    }

    /// Affine hull of a nonempty point set.
    pub fn hull(points: &[QVector]) -> Result<Self, LinalgError> {
        let first = points.first().ok_or(LinalgError::Empty)?;
        let diffs: Vec<QVector> = points[1..].iter().map(|p| p - first).collect();
        Ok(Self::new(first, LinearSubspace::span(first.dim(), &diffs)?))
    }

    /// Solution set of `<x, normals[i]> = values[i]`, or `None` if empty.
    pub fn from_equations(ambient: usize, normals: &[QVector], values: &[Rational]) -> Option<Self> {
        if normals.is_empty() {
            return Some(Self::linear(LinearSubspace::full(ambient)));
        }
        let a = QMatrix::from_rows(normals).ok()?;
        let (x, ker) = a.solve(&QVector(values.to_vec()))?;
        Some(Self::new(&x, ker))
    }

    pub fn hyperplane(normal: &QVector, value: &Rational) -> Self {
        Self::from_equations(normal.dim(), std::slice::from_ref(normal), std::slice::from_ref(value))
            .expect("a single nonzero equation is consistent")
    }

    pub fn base(&self) -> &QVector {
        &self.base
    }

    pub fn dir(&self) -> &LinearSubspace {
        &self.dir
    }

    pub fn dim(&self) -> usize {
        self.dir.dim()
    }

    pub fn ambient(&self) -> usize {
        self.base.dim()
    }

    pub fn is_linear(&self) -> bool {
        self.base.is_zero()
    }

    /// Linear span of the point set.
    pub fn span(&self) -> LinearSubspace {
        if self.is_linear() {
            self.dir.clone()
        } else {
            self.dir.with(&self.base)
        }
    }

    pub fn contains_point(&self, p: &QVector) -> bool {
        self.dir.contains(&(p - &self.base))
    }

    pub fn contains(&self, o: &AffineSubspace) -> bool {
        self.contains_point(&o.base) && self.dir.contains_subspace(&o.dir)
    }

    fn equations(&self) -> (Vec<QVector>, Vec<Rational>) {
        let normals = self.dir.complement().basis().to_vec();
        let values = normals.iter().map(|n| n.dot(&self.base)).collect();
        (normals, values)
    }

    pub fn intersect(&self, o: &AffineSubspace) -> Option<AffineSubspace> {
        let (mut n, mut v) = self.equations();
        let (n2, v2) = o.equations();
        n.extend(n2);
        v.extend(v2);
        Self::from_equations(self.ambient(), &n, &v)
    }

    /// Orthogonal projection of a point onto this subspace.
    pub fn project(&self, p: &QVector) -> QVector {
        &self.base + &self.dir.project(&(p - &self.base))
    }
}

/// Builds the standard form of `point + span(directions)`.
pub fn affine_standard_form(point: &QVector, directions: &[QVector]) -> Result<AffineSubspace, LinalgError> {
    Ok(AffineSubspace::new(point, LinearSubspace::span(point.dim(), directions)?))
}

/// Intersection of two affine subspaces; `None` means empty.
pub fn intersect_affine(a: &AffineSubspace, b: &AffineSubspace) -> Option<AffineSubspace> {
    a.intersect(b)
}
