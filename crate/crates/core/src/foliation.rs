//! Recognition of foliation singular schemes and the maps between 1-forms
//! and ideals.
//!
//! The forward direction runs in four stages: [`admit`] places an ideal in
//! the Hilbert scheme of `d^2+d+1` points, the Betti screen checks the shape
//! of the resolution, a rank-3 linear syzygy is picked, and the 1-form is
//! read off from it and verified.

use std::fmt;
use std::sync::Arc;

use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::field::Coeff;
use crate::graded::{self, BettiProfile};
use crate::groebner::{affine_colength, hilbert_function, hilbert_polynomial, Colength, HilbertData, IdealPresentation};
use crate::linalg;
use crate::monomial::Monomial;
use crate::poly::Polynomial;
use crate::ring::{same_ring, Ring};

/// Why a candidate is not the singular scheme of a foliation. Reported at
/// the first failing gate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Reason {
    BadColength,
    NotSaturated,
    LowDegreeForm,
    WrongGeneratorCount,
    NoLinearSyzygy,
    SpanRankTwo,
}

impl Reason {
    pub fn as_str(&self) -> &'static str {
        match self {
            Reason::BadColength => "bad_colength",
            Reason::NotSaturated => "not_saturated",
            Reason::LowDegreeForm => "low_degree_form",
            Reason::WrongGeneratorCount => "wrong_generator_count",
            Reason::NoLinearSyzygy => "no_linear_syzygy",
            Reason::SpanRankTwo => "span_rank_two",
        }
    }
}

impl fmt::Display for Reason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// `d` with `d^2 + d + 1 = n` and `d >= 2`.
pub fn infer_degree(n: u64) -> Result<u32> {
    let mut d: u64 = 2;
    while d * d + d + 1 < n {
        d += 1;
    }
    if d * d + d + 1 == n {
        Ok(d as u32)
    } else {
        Err(Error::BadColength(n))
    }
}

/// A saturated homogeneous ideal of `n = d^2+d+1` points in `k[x,y,z]`
/// under GrevLex.
#[derive(Debug, Clone)]
pub struct SingularSchemeCandidate {
    pub ideal: IdealPresentation,
    pub n: u64,
    pub d: u32,
    pub hilbert: HilbertData,
    /// Set when a projective input was not saturated as given.
    pub saturation_changed: bool,
}

/// Brings a two-variable ideal (affine chart) or a three-variable
/// homogeneous ideal into the Hilbert scheme of points, saturating
/// projective input when needed.
pub fn admit(j: &IdealPresentation) -> Result<SingularSchemeCandidate> {
    admit_with(j, true)
}

/// Like [`admit`], but an unsaturated projective ideal is rejected with
/// [`Error::NotSaturated`] instead of being saturated.
pub fn admit_strict(j: &IdealPresentation) -> Result<SingularSchemeCandidate> {
    admit_with(j, false)
}

fn admit_with(j: &IdealPresentation, saturate: bool) -> Result<SingularSchemeCandidate> {
    let (ideal, n, saturation_changed) = match j.ring().nvars() {
        2 => {
            let ring = j.ring().with_grevlex();
            let i = j.reinterpret(&ring)?;
            let n = match affine_colength(&i) {
                Colength::Finite(n) => n,
                Colength::Infinite => return Err(Error::InfiniteColength),
            };
            infer_degree(n)?;
            // homogenizing a graded Groebner basis yields the homogenized ideal,
            // which is saturated for a zero-dimensional affine ideal
            let proj = ring.homogenized()?.with_grevlex();
            let gens = i
                .reduced_gb()
                .iter()
                .map(|g| g.homogenize()?.reinterpret(&proj))
                .collect::<Result<Vec<_>>>()?;
            (IdealPresentation::new(&proj, gens)?, n, false)
        }
        3 => {
            let ring = j.ring().with_grevlex();
            let given = j.reinterpret(&ring)?;
            if !given.is_homogeneous() {
                return Err(Error::NotHomogeneous);
            }
            let sat = given.saturate_irrelevant()?;
            let changed = !sat.equals(&given)?;
            if changed && !saturate {
                return Err(Error::NotSaturated);
            }
            let n = hilbert_polynomial(&sat)?;
            (sat, n, changed)
        }
        k => return Err(Error::UnsupportedArity(k)),
    };
    let d = infer_degree(n)?;
    // regularity of n points is at most n - 1; check a window beyond it
    let top = n as u32 + 2;
    let hilbert = hilbert_function(&ideal, top)?;
    if hilbert.values[(n as usize - 1)..].iter().any(|&h| h != n) {
        return Err(Error::NotStabilized { expected: n, degree: top });
    }
    Ok(SingularSchemeCandidate {
        ideal,
        n,
        d,
        hilbert,
        saturation_changed,
    })
}

/// `A dx + B dy + C dz` with `xA + yB + zC = 0`, components of degree `d+1`.
#[derive(Debug, Clone, PartialEq)]
pub struct FoliationForm {
    d: u32,
    components: [Polynomial; 3],
}

impl FoliationForm {
    /// Checks homogeneity, the Euler identity and linear independence.
    pub fn new(a: Polynomial, b: Polynomial, c: Polynomial) -> Result<Self> {
        let ring = a.ring().clone();
        if ring.nvars() != 3 {
            return Err(Error::UnsupportedArity(ring.nvars()));
        }
        if !same_ring(b.ring(), &ring) || !same_ring(c.ring(), &ring) {
            return Err(Error::RingMismatch);
        }
        let components = [a, b, c];
        let mut deg = None;
        for p in &components {
            if !p.is_homogeneous() {
                return Err(Error::NotHomogeneous);
            }
            if let Some(dp) = p.total_degree() {
                if *deg.get_or_insert(dp) != dp {
                    return Err(Error::MixedDegrees);
                }
            }
        }
        let deg = deg.ok_or(Error::ZeroPolynomial)?;
        if deg < 3 {
            return Err(Error::DegreeTooSmall(deg as i64 - 1));
        }
        let euler = (0..3).fold(Polynomial::zero(&ring), |acc, v| &acc + &(&Polynomial::var(&ring, v) * &components[v]));
        if !euler.is_zero() {
            return Err(Error::EulerFails(euler.to_string()));
        }
        let basis = graded::monomial_basis(&ring, deg);
        let rows: Vec<Vec<Coeff>> = components
            .iter()
            .map(|p| basis.iter().map(|m| p.coeff(m)).collect())
            .collect();
        if linalg::rank(ring.field(), &rows, basis.len()) < 3 {
            return Err(Error::DependentForms);
        }
        Ok(FoliationForm { d: deg - 1, components })
    }

    pub fn degree(&self) -> u32 {
        self.d
    }

    pub fn ring(&self) -> &Arc<Ring> {
        self.components[0].ring()
    }

    pub fn a(&self) -> &Polynomial {
        &self.components[0]
    }

    pub fn b(&self) -> &Polynomial {
        &self.components[1]
    }

    pub fn c(&self) -> &Polynomial {
        &self.components[2]
    }

    pub fn components(&self) -> &[Polynomial; 3] {
        &self.components
    }

    /// Scaled so the leading coefficient of the first nonzero component is one.
    pub fn normalized(&self) -> FoliationForm {
        let lc = self
            .components
            .iter()
            .find_map(|p| p.leading_coeff())
            .expect("independent components are not all zero");
        let inv = lc.inv().expect("nonzero");
        FoliationForm {
            d: self.d,
            components: self.components.clone().map(|p| p.scale(&inv)),
        }
    }

    /// The pullback under the linear substitution `v = M w`:
    /// `A'(w) = Mᵀ A(M w)`.
    pub fn pullback(&self, m: &[[Coeff; 3]; 3]) -> Result<FoliationForm> {
        let ring = self.ring();
        let images = linear_images(ring, m);
        let moved = self
            .components
            .iter()
            .map(|p| p.map_into(ring, &images))
            .collect::<Result<Vec<_>>>()?;
        let comp: [Polynomial; 3] = std::array::from_fn(|k| {
            (0..3).fold(Polynomial::zero(ring), |acc, j| &acc + &moved[j].scale(&m[j][k]))
        });
        let [a, b, c] = comp;
        FoliationForm::new(a, b, c)
    }

    /// The same form over another ring with the same variables.
    pub fn reinterpret(&self, ring: &Arc<Ring>) -> Result<FoliationForm> {
        let [a, b, c] = &self.components;
        FoliationForm::new(a.reinterpret(ring)?, b.reinterpret(ring)?, c.reinterpret(ring)?)
    }
}

impl fmt::Display for FoliationForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "A = {}\nB = {}\nC = {}", self.components[0], self.components[1], self.components[2])
    }
}

/// Images `vᵢ ↦ Σⱼ M[i][j] wⱼ` of the variables under `v = M w`.
pub(crate) fn linear_images(ring: &Arc<Ring>, m: &[[Coeff; 3]; 3]) -> Vec<Polynomial> {
    (0..3)
        .map(|i| Polynomial::from_terms(ring, (0..3).map(|j| (Monomial::var(j), m[i][j].clone()))))
        .collect()
}

/// True when one global nonzero scalar relates the two forms.
pub fn equivalent_up_to_scalar(a: &FoliationForm, b: &FoliationForm) -> bool {
    a.d == b.d && a.normalized().components == b.normalized().components
}

/// Contraction of the radial field with `P ∂x + Q ∂y + R ∂z`:
/// `(yR - zQ, zP - xR, xQ - yP)`.
pub fn form_from_vector_field(p: &Polynomial, q: &Polynomial, r: &Polynomial) -> Result<FoliationForm> {
    let ring = p.ring().clone();
    if ring.nvars() != 3 {
        return Err(Error::UnsupportedArity(ring.nvars()));
    }
    let [x, y, z] = [0, 1, 2].map(|v| Polynomial::var(&ring, v));
    let a = (&y * r).try_sub(&(&z * q))?;
    let b = (&z * p).try_sub(&(&x * r))?;
    let c = (&x * q).try_sub(&(&y * p))?;
    if a.is_zero() && b.is_zero() && c.is_zero() {
        return Err(Error::RadialField);
    }
    FoliationForm::new(a, b, c)
}

/// The form in the chart `x = 1`: `f dy + g dz` with `f = B(1,y,z)`,
/// `g = C(1,y,z)`.
#[derive(Debug, Clone)]
pub struct LocalForm {
    pub f: Polynomial,
    pub g: Polynomial,
    pub colength: Colength,
    /// Set when some singular point lies on the line `x = 0`, so the chart
    /// sees fewer than `d^2+d+1` points.
    pub points_at_infinity: bool,
}

pub fn local_form(w: &FoliationForm) -> Result<LocalForm> {
    let f = w.b().dehomogenize()?;
    let g = w.c().dehomogenize()?;
    let colength = match IdealPresentation::new(f.ring(), vec![f.clone(), g.clone()]) {
        Ok(i) => affine_colength(&i),
        Err(Error::ZeroIdeal) => Colength::Infinite,
        Err(e) => return Err(e),
    };
    let n = (w.d * w.d + w.d + 1) as u64;
    Ok(LocalForm {
        f,
        g,
        colength,
        points_at_infinity: colength != Colength::Finite(n),
    })
}

/// The saturated ideal `<A, B, C>`, which must have colength `d^2+d+1`.
pub fn singular_scheme(w: &FoliationForm) -> Result<SingularSchemeCandidate> {
    let expected = (w.d * w.d + w.d + 1) as u64;
    let ring = w.ring().with_grevlex();
    let w = w.reinterpret(&ring)?;
    let i = IdealPresentation::new(&ring, w.components.to_vec())?;
    let degenerate = |found: String| Error::DegenerateForm { expected, found };
    match admit(&i) {
        Ok(c) if c.n == expected => Ok(c),
        Ok(c) => Err(degenerate(c.n.to_string())),
        Err(Error::BadColength(n)) => Err(degenerate(n.to_string())),
        Err(Error::NotZeroDimensional) => Err(degenerate("infinite".into())),
        Err(e) => Err(e),
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Outcome {
    Foliation(FoliationForm),
    NotFoliation(Reason),
}

/// Result of the recognition pipeline.
#[derive(Debug, Clone, PartialEq)]
pub struct Verdict {
    pub outcome: Outcome,
    pub d: Option<u32>,
    pub n: Option<u64>,
    pub betti: Option<BettiProfile>,
    pub saturation_changed: bool,
}

impl Verdict {
    pub fn is_foliation(&self) -> bool {
        matches!(self.outcome, Outcome::Foliation(_))
    }

    pub fn form(&self) -> Option<&FoliationForm> {
        match &self.outcome {
            Outcome::Foliation(w) => Some(w),
            Outcome::NotFoliation(_) => None,
        }
    }

    pub fn reason(&self) -> Option<Reason> {
        match self.outcome {
            Outcome::Foliation(_) => None,
            Outcome::NotFoliation(r) => Some(r),
        }
    }

    fn rejected(reason: Reason, n: Option<u64>, saturation_changed: bool) -> Self {
        Verdict {
            outcome: Outcome::NotFoliation(reason),
            d: None,
            n,
            betti: None,
            saturation_changed,
        }
    }
}

impl Serialize for Verdict {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        #[allow(non_snake_case)]
        struct Form {
            A: String,
            B: String,
            C: String,
        }
        let mut map = s.serialize_map(None)?;
        match &self.outcome {
            Outcome::Foliation(_) => map.serialize_entry("status", "foliation")?,
            Outcome::NotFoliation(r) => {
                map.serialize_entry("status", "no_foliation")?;
                map.serialize_entry("reason", r)?;
            }
        }
        map.serialize_entry("d", &self.d)?;
        map.serialize_entry("N", &self.n)?;
        if let Outcome::Foliation(w) = &self.outcome {
            let [a, b, c] = w.components().clone().map(|p| p.to_string());
            map.serialize_entry("form", &Form { A: a, B: b, C: c })?;
        }
        if let Some(b) = &self.betti {
            map.serialize_entry("betti", b)?;
        }
        map.end()
    }
}

/// Runs the Betti screen, picks a rank-3 linear syzygy and builds the form.
/// Every theorem-backed step is verified; a failed check is an
/// [`Error::Internal`], never a silent wrong answer.
pub fn construct_foliation(c: &SingularSchemeCandidate) -> Result<Verdict> {
    let d = c.d;
    let (profile, forms) = graded::betti_profile(&c.ideal, d)?;
    let verdict = |outcome| Verdict {
        outcome,
        d: Some(d),
        n: Some(c.n),
        betti: Some(profile.clone()),
        saturation_changed: c.saturation_changed,
    };
    if (0..=d).any(|s| profile.beta1(s) != 0) {
        return Ok(verdict(Outcome::NotFoliation(Reason::LowDegreeForm)));
    }
    if profile.beta1(d + 1) != 3 {
        return Ok(verdict(Outcome::NotFoliation(Reason::WrongGeneratorCount)));
    }
    if profile.beta2_dplus2 == 0 {
        return Ok(verdict(Outcome::NotFoliation(Reason::NoLinearSyzygy)));
    }
    let f: [Polynomial; 3] = forms
        .try_into()
        .map_err(|v: Vec<Polynomial>| Error::Internal(format!("dim J_{} = {} with three generators", d + 1, v.len())))?;
    let syz = graded::linear_syzygies(&f)?;
    if syz.len() as u64 != profile.beta2_dplus2 {
        return Err(Error::Internal("linear syzygy count changed between computations".into()));
    }
    for s in &syz {
        if graded::span_rank(s)? == 1 {
            return Err(Error::Internal("linear syzygy of span rank one among independent forms".into()));
        }
    }
    let Some(l) = graded::rank3_combination(&syz)? else {
        return Ok(verdict(Outcome::NotFoliation(Reason::SpanRankTwo)));
    };
    // (A, B, C) = (F₁, F₂, F₃) D, so Σⱼ vⱼ Tⱼ = Σᵢ Fᵢ ℓᵢ = 0
    let ring = c.ideal.ring();
    let t: [Polynomial; 3] = std::array::from_fn(|v| {
        (0..3).fold(Polynomial::zero(ring), |acc, i| &acc + &f[i].scale(&l.matrix[i][v]))
    });
    let [a, b, cc] = t;
    let w = FoliationForm::new(a, b, cc).map_err(|e| Error::Internal(format!("constructed triple rejected: {e}")))?;
    let generated = IdealPresentation::new(ring, w.components.to_vec())?;
    if !generated.equals(&c.ideal)? && !generated.saturate_irrelevant()?.equals(&c.ideal)? {
        return Err(Error::Internal("saturation of <A, B, C> differs from J".into()));
    }
    Ok(verdict(Outcome::Foliation(w.normalized())))
}

/// Admission followed by construction. Rejections at admission with a
/// [`Reason`] (colength not of the form `d^2+d+1`, or an unsaturated ideal in
/// strict mode) become verdicts; other admission failures stay errors.
pub fn decide(j: &IdealPresentation, saturate: bool) -> Result<Verdict> {
    match admit_with(j, saturate) {
        Ok(c) => construct_foliation(&c),
        Err(Error::BadColength(n)) => Ok(Verdict::rejected(Reason::BadColength, Some(n), false)),
        Err(Error::NotSaturated) => Ok(Verdict::rejected(Reason::NotSaturated, None, true)),
        Err(e) => Err(e),
    }
}
