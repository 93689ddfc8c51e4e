//! Linear algebra on the graded pieces `J_s` of a homogeneous ideal.
//!
//! Everything here works on coordinate vectors with respect to the degree-`s`
//! monomials listed in descending monomial order, so the pivot of an RREF row
//! is the leading monomial of the corresponding form.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{Coeff, CoefficientField};
use crate::groebner::IdealPresentation;
use crate::linalg::{self, Rref};
use crate::monomial::{monomials_of_degree, Monomial};
use crate::poly::Polynomial;
use crate::ring::{same_ring, Ring};

/// A basis of `J_s` in canonical (reduced row-echelon) form.
#[derive(Debug, Clone)]
pub struct GradedPiece {
    pub degree: u32,
    pub monomial_basis: Vec<Monomial>,
    pub vectors: Rref,
    ring: Arc<Ring>,
}

impl GradedPiece {
    pub fn dim(&self) -> usize {
        self.vectors.rank()
    }

    /// The basis rows as forms, with strictly decreasing leading monomials.
    pub fn forms(&self) -> Vec<Polynomial> {
        self.vectors
            .rows
            .iter()
            .map(|r| from_coords(&self.ring, &self.monomial_basis, r))
            .collect()
    }
}

/// Degree-`s` monomials of `ring`, greatest first.
pub(crate) fn monomial_basis(ring: &Ring, s: u32) -> Vec<Monomial> {
    let mut ms = monomials_of_degree(ring.nvars(), s);
    ms.sort_by(|a, b| ring.order().cmp(b, a));
    ms
}

struct Coords {
    basis: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
    field: CoefficientField,
}

impl Coords {
    fn new(ring: &Ring, s: u32) -> Self {
        let basis = monomial_basis(ring, s);
        let index = basis.iter().enumerate().map(|(i, m)| (*m, i)).collect();
        Coords {
            basis,
            index,
            field: ring.field(),
        }
    }

    fn of(&self, p: &Polynomial) -> Vec<Coeff> {
        let mut v = vec![self.field.zero(); self.basis.len()];
        for (m, c) in p.terms() {
            v[self.index[m]] = c.clone();
        }
        v
    }
}

fn from_coords(ring: &Arc<Ring>, basis: &[Monomial], v: &[Coeff]) -> Polynomial {
    Polynomial::from_terms(
        ring,
        basis
            .iter()
            .zip(v)
            .filter(|(_, c)| !c.is_zero())
            .map(|(m, c)| (*m, c.clone())),
    )
}

/// RREF basis of `J_s`, spanned by all `m * g` with `g` in the reduced
/// Groebner basis and `m` a monomial of complementary degree.
pub fn graded_basis(j: &IdealPresentation, s: u32) -> Result<GradedPiece> {
    if !j.is_homogeneous() {
        return Err(Error::NotHomogeneous);
    }
    let ring = j.ring();
    let coords = Coords::new(ring, s);
    let mut rows = Vec::new();
    for g in j.reduced_gb() {
        let dg = g.total_degree().expect("nonzero");
        if dg > s {
            continue;
        }
        for m in monomials_of_degree(ring.nvars(), s - dg) {
            rows.push(coords.of(&g.mul_monomial(&m)));
        }
    }
    let vectors = linalg::rref(ring.field(), &rows, coords.basis.len());
    Ok(GradedPiece {
        degree: s,
        monomial_basis: coords.basis,
        vectors,
        ring: ring.clone(),
    })
}

/// `β₁,ⱼ = dim J_j - dim (R₁ · J_{j-1})` for `0 <= j <= j_max`.
pub fn minimal_generator_counts(j: &IdealPresentation, j_max: u32) -> Result<BTreeMap<u32, u64>> {
    let ring = j.ring();
    let mut out = BTreeMap::new();
    let mut prev: Option<GradedPiece> = None;
    for s in 0..=j_max {
        let piece = graded_basis(j, s)?;
        let from_below = match &prev {
            None => 0,
            Some(p) => {
                let coords = Coords::new(ring, s);
                let rows: Vec<Vec<Coeff>> = p
                    .forms()
                    .iter()
                    .flat_map(|f| (0..ring.nvars()).map(move |v| f.mul_monomial(&Monomial::var(v))))
                    .map(|f| coords.of(&f))
                    .collect();
                linalg::rank(ring.field(), &rows, coords.basis.len())
            }
        };
        out.insert(s, (piece.dim() - from_below) as u64);
        prev = Some(piece);
    }
    Ok(out)
}

/// A syzygy `F₁ℓ₁ + F₂ℓ₂ + F₃ℓ₃ = 0` with linear `ℓᵢ = Σⱼ D[i][j] vⱼ`.
#[derive(Debug, Clone, PartialEq)]
pub struct LinearSyzygy {
    pub matrix: [[Coeff; 3]; 3],
    pub basis: [Polynomial; 3],
}

impl LinearSyzygy {
    pub fn entries(&self) -> [Polynomial; 3] {
        let ring = self.basis[0].ring();
        let row = |i: usize| {
            Polynomial::from_terms(
                ring,
                (0..3).map(|v| (Monomial::var(v), self.matrix[i][v].clone())),
            )
        };
        [row(0), row(1), row(2)]
    }

    fn combine(&self, a: &Coeff, other: &LinearSyzygy, b: &Coeff) -> LinearSyzygy {
        let matrix = std::array::from_fn(|i| std::array::from_fn(|k| &(a * &self.matrix[i][k]) + &(b * &other.matrix[i][k])));
        LinearSyzygy {
            matrix,
            basis: self.basis.clone(),
        }
    }

    fn rows(&self) -> Vec<Vec<Coeff>> {
        self.matrix.iter().map(|r| r.to_vec()).collect()
    }
}

fn check_forms(forms: &[Polynomial]) -> Result<(Arc<Ring>, u32)> {
    let ring = forms.first().ok_or(Error::ZeroPolynomial)?.ring().clone();
    if ring.nvars() != 3 {
        return Err(Error::UnsupportedArity(ring.nvars()));
    }
    let mut deg = None;
    for f in forms {
        if !same_ring(f.ring(), &ring) {
            return Err(Error::RingMismatch);
        }
        if !f.is_homogeneous() {
            return Err(Error::NotHomogeneous);
        }
        let df = f.total_degree().ok_or(Error::DependentForms)?;
        if *deg.get_or_insert(df) != df {
            return Err(Error::MixedDegrees);
        }
    }
    Ok((ring, deg.expect("nonempty")))
}

/// Nullspace of `(h₁..h_k) ↦ Σ hᵢ Fᵢ` on `k` linear forms `hᵢ`, returned as
/// `k x 3` coefficient matrices.
fn linear_kernel(ring: &Arc<Ring>, forms: &[Polynomial], deg: u32) -> Vec<Vec<Vec<Coeff>>> {
    let coords = Coords::new(ring, deg + 1);
    let columns: Vec<Vec<Coeff>> = forms
        .iter()
        .flat_map(|f| (0..3).map(move |v| f.mul_monomial(&Monomial::var(v))))
        .map(|p| coords.of(&p))
        .collect();
    let rows: Vec<Vec<Coeff>> = (0..coords.basis.len())
        .map(|r| columns.iter().map(|c| c[r].clone()).collect())
        .collect();
    linalg::nullspace(ring.field(), &rows, columns.len())
        .into_iter()
        .map(|v| v.chunks(3).map(|c| c.to_vec()).collect())
        .collect()
}

/// Basis of the linear syzygies of three independent forms of one degree.
pub fn linear_syzygies(f: &[Polynomial; 3]) -> Result<Vec<LinearSyzygy>> {
    let (ring, deg) = check_forms(f)?;
    let coords = Coords::new(&ring, deg);
    let rows: Vec<Vec<Coeff>> = f.iter().map(|p| coords.of(p)).collect();
    if linalg::rank(ring.field(), &rows, coords.basis.len()) < 3 {
        return Err(Error::DependentForms);
    }
    Ok(linear_kernel(&ring, f, deg)
        .into_iter()
        .map(|m| LinearSyzygy {
            matrix: std::array::from_fn(|i| std::array::from_fn(|k| m[i][k].clone())),
            basis: f.clone(),
        })
        .collect())
}

/// Rank of the coefficient matrix `D`.
pub fn span_rank(l: &LinearSyzygy) -> Result<usize> {
    let field = l.basis[0].ring().field();
    match linalg::rank(field, &l.rows(), 3) {
        0 => Err(Error::ZeroSyzygy),
        r => Ok(r),
    }
}

const PENCIL_SAMPLES: [(i64, i64); 5] = [(1, 0), (0, 1), (1, 1), (1, -1), (1, 2)];

/// A member of the span of `basis` whose matrix `D` is invertible.
///
/// `det D(λ₁s₁ + λ₂s₂)` is a binary cubic, so five pairwise non-proportional
/// samples find a nonzero value whenever one exists.
pub fn rank3_combination(basis: &[LinearSyzygy]) -> Result<Option<LinearSyzygy>> {
    let field = match basis.first() {
        Some(s) => s.basis[0].ring().field(),
        None => return Err(Error::ZeroSyzygy),
    };
    if basis.len() > 2 {
        return Err(Error::Internal(format!("{} linear syzygies among three forms", basis.len())));
    }
    let candidates: Vec<LinearSyzygy> = match basis {
        [s] => vec![s.clone()],
        [s, t] => PENCIL_SAMPLES
            .iter()
            .map(|&(a, b)| s.combine(&field.from_i64(a), t, &field.from_i64(b)))
            .collect(),
        _ => unreachable!(),
    };
    Ok(candidates
        .into_iter()
        .find(|c| !linalg::determinant(field, &c.rows()).is_zero()))
}

/// Basis of `{ (A,B,C) ∈ (J_{d+1})³ : xA + yB + zC = 0 }`, solved directly
/// from the Euler relation.
pub fn euler_triple_oracle(j: &IdealPresentation, d: u32) -> Result<Vec<[Polynomial; 3]>> {
    if j.ring().nvars() != 3 {
        return Err(Error::UnsupportedArity(j.ring().nvars()));
    }
    let piece = graded_basis(j, d + 1)?;
    let forms = piece.forms();
    if forms.is_empty() {
        return Ok(Vec::new());
    }
    let ring = j.ring();
    let k = forms.len();
    // a kernel vector is a k x 3 matrix M with Σᵢ Σⱼ M[i][j] vⱼ Fᵢ = 0, so
    // the j-th component is Σᵢ M[i][j] Fᵢ
    Ok(linear_kernel(ring, &forms, d + 1)
        .into_iter()
        .map(|m| {
            std::array::from_fn(|v| {
                (0..k).fold(Polynomial::zero(ring), |acc, i| &acc + &forms[i].scale(&m[i][v]))
            })
        })
        .collect())
}

/// The Betti data consumed by the screen.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BettiProfile {
    pub d: u32,
    pub beta1: BTreeMap<u32, u64>,
    pub beta2_dplus2: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub syzygy_degrees: Option<(u32, u32)>,
}

impl BettiProfile {
    pub fn beta1(&self, j: u32) -> u64 {
        self.beta1.get(&j).copied().unwrap_or(0)
    }
}

/// `β₁,ⱼ` for `j <= d+2` and the linear syzygies of the RREF basis of
/// `J_{d+1}`; returns the profile and that basis.
pub fn betti_profile(j: &IdealPresentation, d: u32) -> Result<(BettiProfile, Vec<Polynomial>)> {
    let beta1 = minimal_generator_counts(j, d + 2)?;
    let forms = graded_basis(j, d + 1)?.forms();
    let beta2 = if forms.is_empty() {
        0
    } else {
        linear_kernel(j.ring(), &forms, d + 1).len() as u64
    };
    let only_three = beta1.iter().all(|(&s, &b)| if s == d + 1 { b == 3 } else { b == 0 });
    // Hilbert-Burch: b₁ + b₂ = 3(d+1), so a syzygy in degree d+2 fixes b₁ = 2d+1,
    // provided J is generated by the three forms
    let syzygy_degrees = if only_three && beta2 >= 1 {
        let generated = IdealPresentation::new(j.ring(), forms.clone())?;
        generated.equals(j)?.then_some((2 * d + 1, d + 2))
    } else {
        None
    };
    Ok((
        BettiProfile {
            d,
            beta1,
            beta2_dplus2: beta2,
            syzygy_degrees,
        },
        forms,
    ))
}
