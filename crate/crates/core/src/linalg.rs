//! Exact dense linear algebra over a [`CoefficientField`].
//!
//! Over the rationals, elimination runs fraction-free (Bareiss) on an
//! integer matrix obtained by clearing row denominators; the echelon form
//! is only turned back into rationals for the final back-substitution.
//! Over a prime field, plain Gauss-Jordan elimination is used.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::field::{Coeff, CoefficientField};

/// Reduced row-echelon form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rref {
    /// Nonzero rows only, each with a leading one in its pivot column.
    pub rows: Vec<Vec<Coeff>>,
    pub pivots: Vec<usize>,
    pub ncols: usize,
}

impl Rref {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Canonical nullspace basis: one vector per free column, with a one in
    /// that column and zeros in the other free columns.
    pub fn nullspace(&self, field: CoefficientField) -> Vec<Vec<Coeff>> {
        let mut out = Vec::new();
        let mut is_pivot = vec![false; self.ncols];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        for free in (0..self.ncols).filter(|&c| !is_pivot[c]) {
            let mut v = vec![field.zero(); self.ncols];
            v[free] = field.one();
            for (row, &p) in self.rows.iter().zip(&self.pivots) {
                v[p] = -&row[free];
            }
            out.push(v);
        }
        out
    }
}

pub fn rref(field: CoefficientField, rows: &[Vec<Coeff>], ncols: usize) -> Rref {
    debug_assert!(rows.iter().all(|r| r.len() == ncols));
    match field {
        CoefficientField::Rationals => rref_rational(rows, ncols),
        CoefficientField::PrimeField(_) => rref_modular(field, rows, ncols),
    }
}

pub fn rank(field: CoefficientField, rows: &[Vec<Coeff>], ncols: usize) -> usize {
    rref(field, rows, ncols).rank()
}

/// Basis of `{ v : M v = 0 }` for the matrix with the given rows.
pub fn nullspace(field: CoefficientField, rows: &[Vec<Coeff>], ncols: usize) -> Vec<Vec<Coeff>> {
    rref(field, rows, ncols).nullspace(field)
}

/// Determinant of a square matrix (only used on 3x3 syzygy matrices).
pub fn determinant(field: CoefficientField, m: &[Vec<Coeff>]) -> Coeff {
    let n = m.len();
    let mut a: Vec<Vec<Coeff>> = m.to_vec();
    let mut det = field.one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| !a[r][c].is_zero()) else {
            return field.zero();
        };
        if p != c {
            a.swap(p, c);
            det = -&det;
        }
        det = &det * &a[c][c];
        let inv = a[c][c].inv().expect("pivot is nonzero");
        for r in c + 1..n {
            if a[r][c].is_zero() {
                continue;
            }
            let f = &a[r][c] * &inv;
            for k in c..n {
                let t = &f * &a[c][k];
                a[r][k] = &a[r][k] - &t;
            }
        }
    }
    det
}

fn rref_modular(field: CoefficientField, rows: &[Vec<Coeff>], ncols: usize) -> Rref {
    let mut a: Vec<Vec<Coeff>> = rows.to_vec();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..a.len()).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(p, r);
        let inv = a[r][c].inv().expect("pivot is nonzero");
        for k in c..ncols {
            a[r][k] = &a[r][k] * &inv;
        }
        for i in 0..a.len() {
            if i == r || a[i][c].is_zero() {
                continue;
            }
            let f = a[i][c].clone();
            for k in c..ncols {
                let t = &f * &a[r][k];
                a[i][k] = &a[i][k] - &t;
            }
        }
        pivots.push(c);
        r += 1;
        if r == a.len() {
            break;
        }
    }
    a.truncate(r);
    debug_assert!(a.iter().all(|row| row.iter().all(|c| field.contains(c))));
    Rref {
        rows: a,
        pivots,
        ncols,
    }
}

/// Integer rows with the same row space: each rational row is multiplied by
/// the lcm of its denominators.
fn clear_denominators(rows: &[Vec<Coeff>]) -> Vec<Vec<BigInt>> {
    rows.iter()
        .map(|row| {
            let l = row
                .iter()
                .map(|c| c.as_rational().expect("rational entry").denom().clone())
                .fold(BigInt::one(), |acc, d| acc.lcm(&d));
            row.iter()
                .map(|c| {
                    let q = c.as_rational().expect("rational entry");
                    q.numer() * (&l / q.denom())
                })
                .collect()
        })
        .collect()
}

fn rref_rational(rows: &[Vec<Coeff>], ncols: usize) -> Rref {
    let mut a = clear_denominators(rows);
    let mut pivots = Vec::new();
    let mut prev = BigInt::one();
    let mut r = 0;
    // fraction-free forward elimination: every division below is exact
    for c in 0..ncols {
        let Some(p) = (r..a.len()).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(p, r);
        for i in r + 1..a.len() {
            for k in c + 1..ncols {
                let v = &a[r][c] * &a[i][k] - &a[i][c] * &a[r][k];
                a[i][k] = v / &prev;
            }
            a[i][c] = BigInt::zero();
        }
        prev = a[r][c].clone();
        pivots.push(c);
        r += 1;
        if r == a.len() {
            break;
        }
    }
    a.truncate(r);
    // back-substitution in rationals on the (small) echelon form
    let mut q: Vec<Vec<BigRational>> = a
        .into_iter()
        .map(|row| row.into_iter().map(BigRational::from_integer).collect())
        .collect();
    for i in (0..q.len()).rev() {
        let c = pivots[i];
        let inv = q[i][c].recip();
        for k in c..ncols {
            q[i][k] = &q[i][k] * &inv;
        }
        for h in 0..i {
            if q[h][c].is_zero() {
                continue;
            }
            let f = q[h][c].clone();
            for k in c..ncols {
                let t = &f * &q[i][k];
                q[h][k] = &q[h][k] - &t;
            }
        }
    }
    Rref {
        rows: q
            .into_iter()
            .map(|row| row.into_iter().map(Coeff::Rational).collect())
            .collect(),
        pivots,
        ncols,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn mat(field: CoefficientField, rows: &[&[i64]]) -> Vec<Vec<Coeff>> {
        rows.iter()
            .map(|r| r.iter().map(|&v| field.from_i64(v)).collect())
            .collect()
    }

    fn apply(m: &[Vec<Coeff>], v: &[Coeff], field: CoefficientField) -> Vec<Coeff> {
        m.iter()
            .map(|row| row.iter().zip(v).fold(field.zero(), |acc, (a, b)| &acc + &(a * b)))
            .collect()
    }

    #[test]
    fn rref_of_small_matrix() {
        let q = CoefficientField::Rationals;
        let m = mat(q, &[&[2, 4, 6], &[1, 2, 4], &[3, 6, 9]]);
        let r = rref(q, &m, 3);
        assert_eq!(r.pivots, vec![0, 2]);
        assert_eq!(r.rows, mat(q, &[&[1, 2, 0], &[0, 0, 1]]));
        assert_eq!(r.nullspace(q), mat(q, &[&[-2, 1, 0]]));
    }

    #[test]
    fn determinants() {
        let q = CoefficientField::Rationals;
        assert_eq!(determinant(q, &mat(q, &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]])), q.one());
        assert_eq!(determinant(q, &mat(q, &[&[0, 1, 0], &[1, 0, 0], &[0, 0, 1]])), q.from_i64(-1));
        assert!(determinant(q, &mat(q, &[&[1, 1, 0], &[1, 1, 0], &[0, 1, 1]])).is_zero());
        // rows of (x+y, x+z, y) in the basis x, y, z
        assert_eq!(determinant(q, &mat(q, &[&[1, 1, 0], &[1, 0, 1], &[0, 1, 0]])), q.from_i64(-1));
    }

    #[test]
    fn empty_and_zero_matrices() {
        let q = CoefficientField::Rationals;
        let r = rref(q, &[], 3);
        assert_eq!(r.rank(), 0);
        assert_eq!(r.nullspace(q).len(), 3);
        assert_eq!(rank(q, &mat(q, &[&[0, 0], &[0, 0]]), 2), 0);
    }

    proptest! {
        // Rational and modular elimination agree on rank for small integer
        // matrices (a prime this large cannot divide the tiny minors involved),
        // and every nullspace vector is annihilated.
        #[test]
        fn rank_nullity_and_field_agreement(
            entries in proptest::collection::vec(-3i64..4, 20),
            nrows in 1usize..5,
        ) {
            let ncols = 4;
            let rows: Vec<&[i64]> = entries.chunks(ncols).take(nrows).collect();
            for field in [CoefficientField::Rationals, CoefficientField::PrimeField(32003)] {
                let m = mat(field, &rows);
                let r = rref(field, &m, ncols);
                let ns = r.nullspace(field);
                prop_assert_eq!(r.rank() + ns.len(), ncols);
                for v in &ns {
                    prop_assert!(apply(&m, v, field).iter().all(|c| c.is_zero()));
                }
            }
            let rq = rank(CoefficientField::Rationals, &mat(CoefficientField::Rationals, &rows), ncols);
            let rp = rank(CoefficientField::PrimeField(32003), &mat(CoefficientField::PrimeField(32003), &rows), ncols);
            prop_assert_eq!(rq, rp);
        }
    }
}
