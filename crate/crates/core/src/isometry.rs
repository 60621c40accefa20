//! Affine isometries `x -> Lx + t`, their move-sets and min-sets, Scherk
//! reflection length and the model poset order.
//!
//! Composition convention: `compose(a, b)` applies `b` first, so a written
//! product `r0 r1 ... rn` acts with `rn` first.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::IsometryError;
use crate::linalg::{AffineSubspace, LinearSubspace, QMatrix, QVector, Rational};
use crate::roots::coroot;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Isometry {
    linear: QMatrix,
    translation: QVector,
}

impl Isometry {
    pub fn new(linear: QMatrix, translation: QVector) -> Self {
        assert_eq!(linear.nrows(), translation.dim());
        Isometry { linear, translation }
    }

    pub fn identity(n: usize) -> Self {
        Isometry { linear: QMatrix::identity(n), translation: QVector::zero(n) }
    }

    pub fn translation_by(v: &QVector) -> Self {
        Isometry { linear: QMatrix::identity(v.dim()), translation: v.clone() }
    }

    pub fn linear(&self) -> &QMatrix {
        &self.linear
    }

    pub fn translation(&self) -> &QVector {
        &self.translation
    }

    pub fn ambient(&self) -> usize {
        self.translation.dim()
    }

    pub fn apply(&self, x: &QVector) -> QVector {
        &self.linear.mul_vec(x) + &self.translation
    }

    /// Linear part applied to a vector.
    pub fn apply_vector(&self, v: &QVector) -> QVector {
        self.linear.mul_vec(v)
    }

    pub fn is_identity(&self) -> bool {
        self.translation.is_zero() && self.linear.is_identity()
    }

    pub fn is_translation(&self) -> bool {
        self.linear.is_identity()
    }

    pub fn inverse(&self) -> Isometry {
        let lt = self.linear.transpose();
        let t = -&lt.mul_vec(&self.translation);
        Isometry { linear: lt, translation: t }
    }

    pub fn pow(&self, k: i64) -> Isometry {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        (0..k.unsigned_abs()).fold(Isometry::identity(self.ambient()), |acc, _| compose(&acc, &base))
    }

    /// `self * g * self^-1`
    pub fn conjugate(&self, g: &Isometry) -> Isometry {
        compose(&compose(self, g), &self.inverse())
    }

    pub fn is_orthogonal(&self) -> bool {
        self.linear.transpose().mul(&self.linear).is_identity()
    }

    /// Image of an affine subspace.
    pub fn image(&self, a: &AffineSubspace) -> AffineSubspace {
        let dirs: Vec<QVector> = a.dir().basis().iter().map(|d| self.apply_vector(d)).collect();
        AffineSubspace::new(&self.apply(a.base()), LinearSubspace::span(self.ambient(), &dirs).expect("same ambient"))
    }

    pub fn to_json(&self) -> IsometryJson {
        IsometryJson {
            linear: self.linear.row_vectors().iter().map(QVector::to_strings).collect(),
            translation: self.translation.to_strings(),
        }
    }

    pub fn from_json(j: &IsometryJson) -> Result<Self, crate::error::LinalgError> {
        let rows: Vec<QVector> = j.linear.iter().map(|r| QVector::from_strings(r)).collect::<Result<_, _>>()?;
        let t = QVector::from_strings(&j.translation)?;
        let m = QMatrix::from_rows(&rows)?;
        if m.nrows() != t.dim() || m.ncols() != t.dim() {
            return Err(crate::error::LinalgError::Dimension { expected: t.dim(), found: m.nrows() });
        }
        Ok(Isometry::new(m, t))
    }
}

impl fmt::Debug for Isometry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Isometry {{ linear: {:?}, translation: {:?} }}", self.linear, self.translation)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IsometryJson {
    pub linear: Vec<Vec<String>>,
    pub translation: Vec<String>,
}

/// `a ∘ b`: apply `b`, then `a`.
pub fn compose(a: &Isometry, b: &Isometry) -> Isometry {
    Isometry { linear: a.linear.mul(&b.linear), translation: &a.linear.mul_vec(&b.translation) + &a.translation }
}

pub fn inverse(a: &Isometry) -> Isometry {
    a.inverse()
}

/// Product of a word, rightmost letter acting first.
pub fn product<'a>(n: usize, word: impl IntoIterator<Item = &'a Isometry>) -> Isometry {
    word.into_iter().fold(Isometry::identity(n), |acc, g| compose(&acc, g))
}

/// `r_{α,i}`: the reflection fixing `{x : <x,α> = i}`.
pub fn reflection(alpha: &QVector, i: &Rational) -> Result<Isometry, IsometryError> {
    if alpha.is_zero() {
        return Err(IsometryError::ZeroRoot);
    }
    let n = alpha.dim();
    let cv = coroot(alpha);
    let mut m = QMatrix::identity(n);
    for r in 0..n {
        for c in 0..n {
            let v = m.get(r, c) - &cv[r] * &alpha[c];
            m.set(r, c, v);
        }
    }
    Ok(Isometry { linear: m, translation: cv.scale(i) })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Kind {
    Elliptic,
    Hyperbolic,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasicInvariants {
    pub kind: Kind,
    /// Move-set `U + μ` in standard form.
    pub mov: AffineSubspace,
    /// Fix-set when elliptic, min-set when hyperbolic.
    pub min: AffineSubspace,
}

fn minus_identity(w: &Isometry) -> QMatrix {
    w.linear.sub(&QMatrix::identity(w.ambient()))
}

pub fn basic_invariants(w: &Isometry) -> BasicInvariants {
    let a = minus_identity(w);
    let mov = AffineSubspace::new(&w.translation, a.column_space());
    let mu = mov.base().clone();
    let kind = if mu.is_zero() { Kind::Elliptic } else { Kind::Hyperbolic };
    // points x with w(x) - x = μ; μ = 0 gives the fixed points
    let (x, ker) = a.solve(&(&mu - &w.translation)).expect("μ - t lies in the image of L - I");
    BasicInvariants { kind, mov, min: AffineSubspace::new(&x, ker) }
}

/// Linear span of the move-set, the column space of `[L - I | t]`.
pub fn move_span(w: &Isometry) -> LinearSubspace {
    let mut cols = minus_identity(w).transpose().row_vectors();
    cols.push(w.translation.clone());
    LinearSubspace::span(w.ambient(), &cols).expect("columns share the ambient dimension")
}

pub fn is_elliptic(w: &Isometry) -> bool {
    let (rank, augmented) = minus_identity(w).rank_with(&w.translation);
    rank == augmented
}

/// Reflection length over all euclidean reflections.
pub fn reflection_length(w: &Isometry) -> usize {
    let (rank, augmented) = minus_identity(w).rank_with(&w.translation);
    if rank == augmented {
        rank
    } else {
        rank + 2
    }
}

/// Points of the model poset.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ModelElement {
    /// `h^M` for a nonlinear affine subspace `M` of vectors.
    Hyperbolic(AffineSubspace),
    /// `e^B` for an affine subspace `B` of points.
    Elliptic(AffineSubspace),
}

pub fn inv(w: &Isometry) -> ModelElement {
    let b = basic_invariants(w);
    match b.kind {
        Kind::Hyperbolic => ModelElement::Hyperbolic(b.mov),
        Kind::Elliptic => ModelElement::Elliptic(b.min),
    }
}

pub fn model_leq(p: &ModelElement, q: &ModelElement) -> bool {
    use ModelElement::*;
    match (p, q) {
        (Hyperbolic(m), Hyperbolic(m2)) => m2.contains(m),
        (Elliptic(b), Elliptic(b2)) => b.contains(b2),
        (Hyperbolic(_), Elliptic(_)) => false,
        (Elliptic(b), Hyperbolic(m)) => b.dir().contains_subspace(&m.span().complement()),
    }
}

/// `ℓ(u) + ℓ(u⁻¹v) + ℓ(v⁻¹w) = ℓ(w)` with euclidean reflection lengths.
pub fn interval_order_re(u: &Isometry, v: &Isometry, w: &Isometry) -> bool {
    let l = |g: &Isometry| reflection_length(g);
    l(u) + l(&compose(&u.inverse(), v)) + l(&compose(&v.inverse(), w)) == l(w)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{rat, ratio};

    fn v(x: &[i64]) -> QVector {
        QVector::from_ints(x)
    }

    #[test]
    fn reflection_examples() {
        let r = reflection(&v(&[1, -1, 0]), &rat(0)).unwrap();
        assert_eq!(r.apply(&v(&[1, 0, 0])), v(&[0, 1, 0]));
        let c = reflection(&v(&[2, 0, 0]), &rat(1)).unwrap();
        assert_eq!(c.apply(&v(&[0, 5, 7])), v(&[1, 5, 7]));
        assert_eq!(c.apply(&QVector(vec![ratio(1, 2), rat(3), rat(0)])), QVector(vec![ratio(1, 2), rat(3), rat(0)]));
        assert!(compose(&c, &c).is_identity());
        assert!(reflection(&v(&[0, 0]), &rat(1)).is_err());
    }

    #[test]
    fn group_laws() {
        let t1 = Isometry::translation_by(&v(&[1, 2]));
        let t2 = Isometry::translation_by(&v(&[-3, 1]));
        assert_eq!(compose(&t1, &t2), Isometry::translation_by(&v(&[-2, 3])));
        let r = reflection(&v(&[1, 1]), &rat(2)).unwrap();
        let g = compose(&t1, &r);
        assert!(compose(&g, &g.inverse()).is_identity());
        // b acts first
        let p = v(&[0, 0]);
        assert_eq!(compose(&t1, &r).apply(&p), t1.apply(&r.apply(&p)));
    }

    #[test]
    fn invariants_examples() {
        let id = Isometry::identity(2);
        let b = basic_invariants(&id);
        assert_eq!((b.kind, b.mov.dim(), b.min.dim()), (Kind::Elliptic, 0, 2));
        assert_eq!(reflection_length(&id), 0);

        let t = Isometry::translation_by(&v(&[1, 2]));
        let b = basic_invariants(&t);
        assert_eq!(b.kind, Kind::Hyperbolic);
        assert_eq!(b.mov, AffineSubspace::point(&v(&[1, 2])));
        assert_eq!(b.min.dim(), 2);
        assert_eq!(reflection_length(&t), 2);

        let alpha = v(&[1, 1, 0]);
        let r = reflection(&alpha, &rat(3)).unwrap();
        let b = basic_invariants(&r);
        assert_eq!(b.kind, Kind::Elliptic);
        assert_eq!(b.mov, AffineSubspace::linear(LinearSubspace::span(3, std::slice::from_ref(&alpha)).unwrap()));
        assert_eq!(b.min, AffineSubspace::hyperplane(&alpha, &rat(3)));
        assert_eq!(reflection_length(&r), 1);
    }

    #[test]
    fn model_order_examples() {
        let whole = ModelElement::Elliptic(AffineSubspace::linear(LinearSubspace::full(2)));
        let h = AffineSubspace::hyperplane(&v(&[1, 0]), &rat(1));
        let eh = ModelElement::Elliptic(h.clone());
        assert!(model_leq(&whole, &eh));
        let hp = ModelElement::Hyperbolic(AffineSubspace::point(&v(&[2, 0])));
        assert!(!model_leq(&hp, &eh));
        // span{(2,0)}⊥ is the y-axis, which equals Dir(H)
        assert!(model_leq(&eh, &hp));
        let tilted = ModelElement::Elliptic(AffineSubspace::hyperplane(&v(&[0, 1]), &rat(0)));
        assert!(!model_leq(&tilted, &hp));
    }

    #[test]
    fn interval_re_examples() {
        let r1 = reflection(&v(&[1, 0]), &rat(0)).unwrap();
        let r2 = reflection(&v(&[0, 1]), &rat(1)).unwrap();
        let w = compose(&r1, &r2);
        let id = Isometry::identity(2);
        assert!(interval_order_re(&id, &w, &w));
        assert!(interval_order_re(&r1, &w, &w));
        assert!(!interval_order_re(&Isometry::translation_by(&v(&[1, 0])), &w, &w));
    }

    #[test]
    fn json_roundtrip() {
        let r = reflection(&v(&[2, -1, -1]), &rat(1)).unwrap();
        let j = r.to_json();
        assert_eq!(Isometry::from_json(&j).unwrap(), r);
        assert!(j.translation.iter().any(|s| s.contains('/')));
    }
}
