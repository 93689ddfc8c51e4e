use serde::Serialize;

use super::IdealPresentation;
use crate::error::{Error, Result};
use crate::monomial::{monomials_of_degree, Monomial};

/// Values of the Hilbert function of `R/J` for `0 <= s <= s_max`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HilbertData {
    pub values: Vec<u64>,
    /// Set when the last three sampled values agree.
    pub stable_value: Option<u64>,
    /// First degree from which every sampled value equals `stable_value`.
    pub stabilization_degree: Option<u32>,
}

impl HilbertData {
    pub fn value(&self, s: u32) -> Option<u64> {
        self.values.get(s as usize).copied()
    }
}

fn count_standard(leads: &[Monomial], nvars: usize, s: u32) -> u64 {
    monomials_of_degree(nvars, s)
        .iter()
        .filter(|m| !leads.iter().any(|l| l.divides(m)))
        .count() as u64
}

/// `HF(s) = dim (R/J)_s`, counted as standard monomials of degree `s`.
pub fn hilbert_function(j: &IdealPresentation, s_max: u32) -> Result<HilbertData> {
    if !j.is_homogeneous() {
        return Err(Error::NotHomogeneous);
    }
    let leads = j.leading_monomials();
    let n = j.ring().nvars();
    let values: Vec<u64> = (0..=s_max).map(|s| count_standard(&leads, n, s)).collect();
    let stable_value = match values.len() {
        l if l >= 3 && values[l - 1] == values[l - 2] && values[l - 2] == values[l - 3] => Some(values[l - 1]),
        _ => None,
    };
    let stabilization_degree = stable_value.map(|v| {
        let first_bad = values.iter().rposition(|&h| h != v);
        first_bad.map_or(0, |i| i as u32 + 1)
    });
    Ok(HilbertData {
        values,
        stable_value,
        stabilization_degree,
    })
}

/// The constant Hilbert polynomial of a homogeneous ideal in three
/// variables, or `NotZeroDimensional` when it is not constant.
///
/// For a monomial ideal whose generators have lcm of degree `L`, the
/// inclusion-exclusion expansion over subsets of generators shows the
/// Hilbert function is polynomial (of degree at most two) from `L - 2`
/// on, so three equal consecutive values there decide constancy.
pub fn hilbert_polynomial(j: &IdealPresentation) -> Result<u64> {
    if !j.is_homogeneous() {
        return Err(Error::NotHomogeneous);
    }
    let leads = j.leading_monomials();
    let n = j.ring().nvars();
    let lcm = leads.iter().fold(Monomial::one(), |acc, m| acc.lcm(m));
    let start = lcm.degree().saturating_sub(2);
    let vals: Vec<u64> = (start..start + 3).map(|s| count_standard(&leads, n, s)).collect();
    if vals[0] == vals[1] && vals[1] == vals[2] {
        Ok(vals[0])
    } else {
        Err(Error::NotZeroDimensional)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Colength {
    Finite(u64),
    Infinite,
}

/// Standard monomials of a zero-dimensional ideal, or `None` when the
/// staircase is unbounded.
pub fn standard_monomials(i: &IdealPresentation) -> Option<Vec<Monomial>> {
    let n = i.ring().nvars();
    let leads = i.leading_monomials();
    let mut bounds = Vec::with_capacity(n);
    for v in 0..n {
        let pure = leads
            .iter()
            .filter(|m| (0..n).all(|w| w == v || m.exp(w) == 0))
            .map(|m| m.exp(v))
            .min()?;
        bounds.push(pure);
    }
    let mut out = Vec::new();
    let mut cur = vec![0u32; n];
    loop {
        let m = Monomial::new(&cur);
        if !leads.iter().any(|l| l.divides(&m)) {
            out.push(m);
        }
        // odometer over the bounding box
        let mut k = 0;
        loop {
            if k == n {
                return Some(out);
            }
            cur[k] += 1;
            if cur[k] < bounds[k].max(1) {
                break;
            }
            cur[k] = 0;
            k += 1;
        }
    }
}

/// `dim k[y,z] / I`.
pub fn affine_colength(i: &IdealPresentation) -> Colength {
    match standard_monomials(i) {
        Some(s) => Colength::Finite(s.len() as u64),
        None => Colength::Infinite,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::CoefficientField;
    use crate::poly::Polynomial;
    use crate::ring::Ring;
    use std::sync::Arc;

    fn aff() -> Arc<Ring> {
        Ring::affine(CoefficientField::Rationals)
    }

    fn proj() -> Arc<Ring> {
        Ring::projective(CoefficientField::Rationals)
    }

    fn p2(terms: &[(&[u32], i64)]) -> Polynomial {
        Polynomial::from_int_terms(&aff(), terms)
    }

    fn p3(terms: &[(&[u32], i64)]) -> Polynomial {
        Polynomial::from_int_terms(&proj(), terms)
    }

    #[test]
    fn colength_examples() {
        let cusp = IdealPresentation::new(&aff(), vec![p2(&[(&[2, 0], 1), (&[0, 3], -1)]), p2(&[(&[1, 2], 1)])]).unwrap();
        assert_eq!(affine_colength(&cusp), Colength::Finite(7));
        let fam = IdealPresentation::new(
            &aff(),
            vec![
                p2(&[(&[1, 0], 1), (&[0, 2], 1), (&[0, 5], 1), (&[0, 8], 1)]),
                p2(&[(&[0, 13], 1)]),
            ],
        )
        .unwrap();
        assert_eq!(affine_colength(&fam), Colength::Finite(13));
        let y = IdealPresentation::new(&aff(), vec![p2(&[(&[1, 0], 1)])]).unwrap();
        assert_eq!(affine_colength(&y), Colength::Infinite);
        let unit = IdealPresentation::new(&aff(), vec![Polynomial::one(&aff())]).unwrap();
        assert_eq!(affine_colength(&unit), Colength::Finite(0));
    }

    #[test]
    fn hilbert_function_examples() {
        let m = IdealPresentation::new(&proj(), vec![p3(&[(&[1, 0, 0], 1)]), p3(&[(&[0, 1, 0], 1)]), p3(&[(&[0, 0, 1], 1)])]).unwrap();
        let h = hilbert_function(&m, 4).unwrap();
        assert_eq!(h.values, vec![1, 0, 0, 0, 0]);
        assert_eq!(h.stable_value, Some(0));
        assert_eq!(h.stabilization_degree, Some(1));
        assert_eq!(hilbert_polynomial(&m).unwrap(), 0);

        let x = IdealPresentation::new(&proj(), vec![p3(&[(&[1, 0, 0], 1)])]).unwrap();
        let h = hilbert_function(&x, 5).unwrap();
        assert_eq!(h.values, vec![1, 2, 3, 4, 5, 6]);
        assert_eq!(h.stable_value, None);
        assert_eq!(hilbert_polynomial(&x), Err(Error::NotZeroDimensional));
    }
}
