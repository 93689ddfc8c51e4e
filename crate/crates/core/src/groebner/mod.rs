//! Buchberger's algorithm and the ideal operations built on it.

mod hilbert;
mod ideal;

use std::collections::HashSet;

pub use hilbert::{affine_colength, hilbert_function, hilbert_polynomial, standard_monomials, Colength, HilbertData};
pub use ideal::IdealPresentation;

use crate::error::{Error, Result};
use crate::monomial::Monomial;
use crate::poly::Polynomial;
use crate::ring::same_ring;

/// Remainder of multivariate division of `p` by `basis`. No term of the
/// result is divisible by a leading monomial of the basis.
pub fn normal_form(p: &Polynomial, basis: &[Polynomial]) -> Result<Polynomial> {
    for g in basis {
        if g.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        if !same_ring(g.ring(), p.ring()) {
            return Err(Error::RingMismatch);
        }
    }
    Ok(reduce(p, basis))
}

fn reduce(p: &Polynomial, basis: &[Polynomial]) -> Polynomial {
    let ring = p.ring().clone();
    let leads: Vec<(Monomial, crate::field::Coeff)> = basis
        .iter()
        .map(|g| {
            let (m, c) = g.leading_term().expect("nonzero basis element");
            (*m, c.inv().expect("nonzero leading coefficient"))
        })
        .collect();
    let mut work = p.clone();
    let mut rest = Vec::new();
    // `work` shrinks from the front; every term either reduces or moves to `rest`.
    while let Some((m, c)) = work.terms().first().cloned() {
        match leads.iter().position(|(lm, _)| lm.divides(&m)) {
            Some(i) => {
                let q = leads[i].0.quotient_of(&m).expect("divides");
                work.sub_mul_term(&(&c * &leads[i].1), &q, &basis[i]);
            }
            None => {
                work.pop_leading();
                rest.push((m, c));
            }
        }
    }
    Polynomial::from_sorted_terms(&ring, rest)
}

struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
    sugar: u32,
}

/// Reduced Groebner basis of the ideal generated by `gens`: monic,
/// inter-reduced, sorted by descending leading monomial.
///
/// Pairs are selected by smallest lcm degree with sugar as tie-break;
/// Buchberger's coprimality and chain criteria discard useless pairs.
pub fn groebner_basis(gens: &[Polynomial]) -> Result<Vec<Polynomial>> {
    let ring = match gens.first() {
        Some(g) => g.ring().clone(),
        None => return Err(Error::ZeroIdeal),
    };
    if gens.iter().any(|g| !same_ring(g.ring(), &ring)) {
        return Err(Error::RingMismatch);
    }
    let mut basis: Vec<Polynomial> = Vec::new();
    let mut sugar: Vec<u32> = Vec::new();
    let mut pending: Vec<Pair> = Vec::new();
    let mut pending_set: HashSet<(usize, usize)> = HashSet::new();

    let mut inputs: Vec<Polynomial> = gens.iter().filter(|g| !g.is_zero()).map(|g| g.monic()).collect();
    if inputs.is_empty() {
        return Err(Error::ZeroIdeal);
    }
    inputs.dedup();
    for g in inputs {
        let s = g.total_degree().unwrap_or(0);
        if g.is_constant() {
            return Ok(vec![Polynomial::one(&ring)]);
        }
        push(&mut basis, &mut sugar, &mut pending, &mut pending_set, g, s);
    }

    while let Some(idx) = select(&pending) {
        let pair = pending.swap_remove(idx);
        pending_set.remove(&(pair.i, pair.j));
        let (mi, mj) = (
            *basis[pair.i].leading_monomial().expect("nonzero"),
            *basis[pair.j].leading_monomial().expect("nonzero"),
        );
        if mi.is_coprime(&mj) {
            continue;
        }
        if chain_criterion(&basis, &pending_set, &pair) {
            continue;
        }
        let s = basis[pair.i].s_polynomial(&basis[pair.j])?;
        let r = reduce(&s, &basis);
        if r.is_zero() {
            continue;
        }
        if r.is_constant() {
            return Ok(vec![Polynomial::one(&ring)]);
        }
        push(&mut basis, &mut sugar, &mut pending, &mut pending_set, r.monic(), pair.sugar);
    }
    Ok(interreduce(basis))
}

fn push(
    basis: &mut Vec<Polynomial>,
    sugar: &mut Vec<u32>,
    pending: &mut Vec<Pair>,
    pending_set: &mut HashSet<(usize, usize)>,
    g: Polynomial,
    s: u32,
) {
    let n = basis.len();
    let lm = *g.leading_monomial().expect("nonzero");
    for (i, h) in basis.iter().enumerate() {
        let hm = h.leading_monomial().expect("nonzero");
        let lcm = hm.lcm(&lm);
        let ps = (sugar[i] + lcm.degree() - hm.degree()).max(s + lcm.degree() - lm.degree());
        pending.push(Pair { i, j: n, lcm, sugar: ps });
        pending_set.insert((i, n));
    }
    basis.push(g);
    sugar.push(s);
}

fn select(pending: &[Pair]) -> Option<usize> {
    pending
        .iter()
        .enumerate()
        .min_by_key(|(_, p)| (p.lcm.degree(), p.sugar, p.i, p.j))
        .map(|(k, _)| k)
}

/// Skip (i, j) when some other basis element's leading monomial divides
/// lcm(i, j) and both (i, k) and (j, k) were already treated.
fn chain_criterion(basis: &[Polynomial], pending: &HashSet<(usize, usize)>, pair: &Pair) -> bool {
    let key = |a: usize, b: usize| if a < b { (a, b) } else { (b, a) };
    basis.iter().enumerate().any(|(k, g)| {
        k != pair.i
            && k != pair.j
            && g.leading_monomial().expect("nonzero").divides(&pair.lcm)
            && !pending.contains(&key(pair.i, k))
            && !pending.contains(&key(pair.j, k))
    })
}

/// Minimalizes and tail-reduces a Groebner basis.
pub(crate) fn interreduce(mut basis: Vec<Polynomial>) -> Vec<Polynomial> {
    let order = basis.first().map(|g| g.ring().order().clone());
    let Some(order) = order else { return basis };
    basis.sort_by(|a, b| {
        order.cmp(
            a.leading_monomial().expect("nonzero"),
            b.leading_monomial().expect("nonzero"),
        )
    });
    // ascending by leading monomial: an element is redundant when an
    // earlier (smaller or equal) leading monomial divides its own
    let mut minimal: Vec<Polynomial> = Vec::new();
    for g in basis {
        let lm = *g.leading_monomial().expect("nonzero");
        if !minimal.iter().any(|h| h.leading_monomial().expect("nonzero").divides(&lm)) {
            minimal.push(g);
        }
    }
    let mut reduced: Vec<Polynomial> = Vec::with_capacity(minimal.len());
    for i in 0..minimal.len() {
        let others: Vec<Polynomial> = minimal
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .map(|(_, g)| g.clone())
            .collect();
        reduced.push(reduce(&minimal[i], &others).monic());
    }
    reduced.reverse();
    reduced
}

/// True when every S-polynomial of `basis` reduces to zero modulo `basis`.
pub fn is_groebner_basis(basis: &[Polynomial]) -> Result<bool> {
    for i in 0..basis.len() {
        for j in i + 1..basis.len() {
            let s = basis[i].s_polynomial(&basis[j])?;
            if !normal_form(&s, basis)?.is_zero() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::CoefficientField;
    use crate::ring::Ring;
    use std::sync::Arc;

    fn aff() -> Arc<Ring> {
        Ring::affine(CoefficientField::Rationals)
    }

    fn p2(terms: &[(&[u32], i64)]) -> Polynomial {
        Polynomial::from_int_terms(&aff(), terms)
    }

    fn g1() -> Vec<Polynomial> {
        vec![
            p2(&[(&[1, 2], 1)]),
            p2(&[(&[2, 1], 1), (&[0, 3], 1)]),
            p2(&[(&[3, 0], 1), (&[1, 1], -1)]),
            p2(&[(&[0, 4], 1)]),
        ]
    }

    #[test]
    fn normal_form_examples() {
        let y2 = p2(&[(&[2, 0], 1)]);
        let f = p2(&[(&[2, 0], 1), (&[0, 3], -1)]);
        // under a graded order z^3 leads y^2 - z^3, so y^2 is already reduced
        assert_eq!(normal_form(&y2, &[f.clone()]).unwrap(), y2);
        // y^2 -> z^3 needs y^2 to lead, as under lex with y > z
        let lex = aff()
            .with_order(crate::order::MonomialOrder::new(crate::order::OrderKind::Lex, vec![0, 1]).unwrap())
            .unwrap();
        let (y2l, fl) = (y2.reinterpret(&lex).unwrap(), f.reinterpret(&lex).unwrap());
        assert_eq!(normal_form(&y2l, &[fl]).unwrap().to_string(), "z^3");
        let z3 = p2(&[(&[0, 3], 1)]);
        assert_eq!(normal_form(&z3, &g1()).unwrap(), z3);
        assert!(normal_form(&Polynomial::zero(&aff()), &g1()).unwrap().is_zero());
        assert_eq!(
            normal_form(&z3, &[Polynomial::zero(&aff())]),
            Err(Error::ZeroPolynomial)
        );
    }

    #[test]
    fn small_groebner_bases() {
        let y = p2(&[(&[1, 0], 1)]);
        let z = p2(&[(&[0, 1], 1)]);
        assert_eq!(groebner_basis(&[z.clone(), y.clone()]).unwrap(), vec![y, z]);
        assert_eq!(groebner_basis(&[Polynomial::zero(&aff())]), Err(Error::ZeroIdeal));
        assert_eq!(groebner_basis(&[]), Err(Error::ZeroIdeal));
    }

    #[test]
    fn example_ideal_leading_terms() {
        // <y^2 z + z^3, y z - y^3 - z^2 y>
        let gens = [
            p2(&[(&[2, 1], 1), (&[0, 3], 1)]),
            p2(&[(&[1, 1], 1), (&[3, 0], -1), (&[1, 2], -1)]),
        ];
        let gb = groebner_basis(&gens).unwrap();
        let mut lms: Vec<Monomial> = gb.iter().map(|g| *g.leading_monomial().unwrap()).collect();
        lms.sort();
        let mut want = vec![
            Monomial::new(&[1, 2]),
            Monomial::new(&[2, 1]),
            Monomial::new(&[3, 0]),
            Monomial::new(&[0, 4]),
        ];
        want.sort();
        assert_eq!(lms, want);
        assert!(is_groebner_basis(&gb).unwrap());
    }

    #[test]
    fn unit_ideal() {
        let gens = [p2(&[(&[1, 0], 1), (&[0, 0], -1)]), p2(&[(&[1, 0], 1)])];
        assert_eq!(groebner_basis(&gens).unwrap(), vec![Polynomial::one(&aff())]);
    }
}
