//! Horizontal root systems, the bowtie built from a reducible one, and the
//! per-type lattice verdict.

use serde::{Deserialize, Serialize};

use crate::coxeter::{axial_data, build_context, window_reflections, CoxeterClass, CoxeterContext, Refl};
use crate::error::{IntervalError, VerdictError};
use crate::interval::{build_interval_window, certify_bowtie, certify_found, BowtieCertificate};
use crate::isometry::{compose, product, reflection_length, Isometry};
use crate::linalg::{LinearSubspace, QVector, Rational};
use crate::roots::{decompose_irreducible, is_positive, Component, DynkinType, Family};
use num::Zero;

#[derive(Clone, Debug, Serialize)]
pub struct HorizontalSystem {
    pub roots: Vec<QVector>,
    pub components: Vec<Component>,
}

impl HorizontalSystem {
    pub fn is_reducible(&self) -> bool {
        self.components.len() >= 2
    }

    pub fn labels(&self) -> Vec<String> {
        self.components.iter().map(Component::describe).collect()
    }
}

pub fn horizontal_roots(ctx: &CoxeterContext) -> HorizontalSystem {
    let roots: Vec<QVector> = ctx.roots.roots().iter().filter(|a| ctx.is_horizontal(a)).cloned().collect();
    let components = decompose_irreducible(&roots);
    HorizontalSystem { roots, components }
}

/// `w = r₀ c'` with `r₀` the conjugate of the affine simple reflection and
/// `c'` in the point stabilizer of the origin.
fn split_affine(ctx: &CoxeterContext) -> (Refl, Isometry) {
    let n = ctx.ambient();
    let refl = ctx.simple.reflections();
    let pos = ctx.order.iter().position(|&i| i == ctx.simple.white()).expect("white vertex in order");
    let p = product(n, ctx.order[..pos].iter().map(|&i| &refl[i]));
    let q = product(n, ctx.order[pos + 1..].iter().map(|&i| &refl[i]));
    let white = &ctx.simple.entries[ctx.simple.white()];
    let lambda = p.apply_vector(&white.root);
    let offset = &white.offset + p.translation().dot(&lambda);
    (Refl::new(&lambda, &offset), compose(&p, &q))
}

/// Bowtie inside `[1, w]` from two horizontal roots in different components.
pub fn bowtie_from_reducibility(ctx: &CoxeterContext) -> Result<BowtieCertificate, IntervalError> {
    let hs = horizontal_roots(ctx);
    if !hs.is_reducible() {
        return Err(IntervalError::NotApplicable(format!(
            "horizontal root system {} is irreducible",
            hs.labels().join(" + ")
        )));
    }
    let n1 = ctx.length();
    let (r0, cprime) = split_affine(ctx);
    let lambda = r0.root.clone();
    let rl0 = Refl { root: lambda.clone(), offset: Rational::zero() }.isometry();
    let t = compose(&r0.isometry(), &rl0);
    if !t.is_translation() || reflection_length(&t) != 2 {
        return Err(IntervalError::Certificate("r₀ r_{λ,0} is not a translation".into()));
    }
    let u = compose(&rl0, &cprime);
    if compose(&t, &u) != ctx.w || reflection_length(&u) + 2 != n1 {
        return Err(IntervalError::Certificate("w ≠ t u with additive lengths".into()));
    }
    let comp_of = |a: &QVector| hs.components.iter().position(|c| c.roots.contains(a));
    let pos: Vec<&QVector> = hs.roots.iter().filter(|a| is_positive(a)).collect();
    for (i, beta) in pos.iter().enumerate() {
        for gamma in &pos[i + 1..] {
            if comp_of(beta) == comp_of(gamma) || beta.dot(&lambda).is_zero() || gamma.dot(&lambda).is_zero() {
                continue;
            }
            let plane = LinearSubspace::span(lambda.dim(), &[(*beta).clone(), (*gamma).clone()]).expect("same ambient");
            if plane.contains(&lambda) {
                continue;
            }
            let rb = Refl { root: (*beta).clone(), offset: Rational::zero() }.isometry();
            let rg = Refl { root: (*gamma).clone(), offset: Rational::zero() }.isometry();
            if compose(&t, &rb) == compose(&rb, &t) || compose(&t, &rg) == compose(&rg, &t) {
                continue;
            }
            let rest = compose(&rg, &compose(&rb, &u));
            let wp = compose(&t, &compose(&rb, &rg));
            if reflection_length(&rest) + 4 != n1 || reflection_length(&wp) != 4 {
                continue;
            }
            let d = rb.clone();
            let c = t.conjugate(&d);
            let a = compose(&t, &d);
            let b = compose(&wp, &t.conjugate(&rg));
            let mut cert = certify_bowtie(&a, &b, &c, &d, ctx)?;
            cert.checks.push("t commutes with neither r_β nor r_γ".into());
            cert.checks.push("λ is not in span(β, γ)".into());
            return Ok(cert);
        }
    }
    Err(IntervalError::Certificate("no pair of horizontal roots gives a length-additive rectangle".into()))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    #[serde(rename = "lattice-consistent")]
    LatticeConsistent,
    #[serde(rename = "not-a-lattice")]
    NotALattice,
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Verdict::LatticeConsistent => "lattice-consistent",
            Verdict::NotALattice => "not-a-lattice",
        })
    }
}

/// The expected answer for each type and class.
pub fn expected_verdict(ty: DynkinType, class: CoxeterClass) -> Verdict {
    match (ty.family, class) {
        (Family::C | Family::G, _) => Verdict::LatticeConsistent,
        (Family::A, CoxeterClass::Bigon { q, .. }) if q < 2 => Verdict::LatticeConsistent,
        _ => Verdict::NotALattice,
    }
}

/// Search for certified bowties in a windowed interval.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WindowEvidence {
    pub window: usize,
    pub rank_sizes: Vec<usize>,
    pub certified: usize,
    pub unconfirmed: usize,
}

#[derive(Clone, Debug)]
pub struct GarsideVerdict {
    pub ty: DynkinType,
    pub class: CoxeterClass,
    pub axis_dir: QVector,
    pub horizontal: HorizontalSystem,
    pub certificate: Option<BowtieCertificate>,
    pub evidence: Option<WindowEvidence>,
    pub verdict: Verdict,
    pub expected: Verdict,
}

impl GarsideVerdict {
    pub fn matches(&self) -> bool {
        self.verdict == self.expected
    }

    pub fn to_json(&self, ctx_sys: &crate::roots::RootSystem) -> VerdictJson {
        VerdictJson {
            ty: format!("~{}", self.ty),
            class: self.class.to_string(),
            axis_direction: self.axis_dir.clone(),
            horizontal_components: self.horizontal.labels(),
            horizontal_roots: self.horizontal.roots.len(),
            reducible: self.horizontal.is_reducible(),
            certificate: self.certificate.as_ref().map(|c| c.to_json(ctx_sys)),
            evidence: self.evidence.clone(),
            verdict: self.verdict,
            expected: self.expected,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerdictJson {
    #[serde(rename = "type")]
    pub ty: String,
    pub class: String,
    pub axis_direction: QVector,
    pub horizontal_components: Vec<String>,
    pub horizontal_roots: usize,
    pub reducible: bool,
    pub certificate: Option<crate::interval::CertificateJson>,
    pub evidence: Option<WindowEvidence>,
    pub verdict: Verdict,
    pub expected: Verdict,
}

/// Verdict for one type and class; irreducible cases get a windowed
/// bowtie search of the given window as evidence.
pub fn main_verdict(
    ty: DynkinType,
    class: CoxeterClass,
    window: usize,
) -> Result<(CoxeterContext, GarsideVerdict), VerdictError> {
    let ctx = build_context(ty, class)?;
    let horizontal = horizontal_roots(&ctx);
    let expected = expected_verdict(ty, class);
    let (certificate, evidence) = if horizontal.is_reducible() {
        let cert = bowtie_from_reducibility(&ctx)?;
        cert.recheck(&ctx)?;
        (Some(cert), None)
    } else {
        (None, Some(window_evidence(&ctx, window)?))
    };
    let verdict = if certificate.is_some() { Verdict::NotALattice } else { Verdict::LatticeConsistent };
    let v = GarsideVerdict {
        ty,
        class,
        axis_dir: ctx.axis_dir.clone(),
        horizontal,
        certificate,
        evidence,
        verdict,
        expected,
    };
    Ok((ctx, v))
}

pub fn window_evidence(ctx: &CoxeterContext, window: usize) -> Result<WindowEvidence, VerdictError> {
    let ax = axial_data(ctx, window)?;
    let gens = window_reflections(ctx, &ax);
    let p = build_interval_window(ctx, &gens)?;
    let (ok, un) = certify_found(&p, ctx, &p.find_bowties());
    Ok(WindowEvidence { window, rank_sizes: p.rank_sizes(), certified: ok.len(), unconfirmed: un.len() })
}

/// The type/class pairs of the reproduction table.
pub fn default_rows() -> Vec<(DynkinType, CoxeterClass)> {
    let t = |s: &str| s.parse::<DynkinType>().expect("valid type");
    let bi = CoxeterClass::Bipartite;
    let bg = |p, q| CoxeterClass::Bigon { p, q };
    vec![
        (t("A2"), bg(2, 1)),
        (t("A3"), bg(3, 1)),
        (t("A3"), bg(2, 2)),
        (t("A5"), bg(5, 1)),
        (t("A5"), bg(4, 2)),
        (t("A5"), bg(3, 3)),
        (t("B3"), bi),
        (t("B4"), bi),
        (t("C2"), bi),
        (t("C3"), bi),
        (t("D4"), bi),
        (t("G2"), bi),
        (t("F4"), bi),
        (t("E6"), bi),
        (t("E7"), bi),
        (t("E8"), bi),
    ]
}
