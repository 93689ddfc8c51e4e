//! Sparse multivariate polynomials with terms kept strictly descending in
//! the ring's monomial order.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::Coeff;
use crate::monomial::Monomial;
use crate::ring::{same_ring, Ring};

pub type Term = (Monomial, Coeff);

#[derive(Debug, Clone)]
pub struct Polynomial {
    ring: Arc<Ring>,
    terms: Vec<Term>,
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        same_ring(&self.ring, &other.ring) && self.terms == other.terms
    }
}

impl Eq for Polynomial {}

impl Polynomial {
    pub fn zero(ring: &Arc<Ring>) -> Self {
        Polynomial {
            ring: ring.clone(),
            terms: Vec::new(),
        }
    }

    pub fn constant(ring: &Arc<Ring>, c: Coeff) -> Self {
        Self::monomial(ring, Monomial::one(), c)
    }

    pub fn one(ring: &Arc<Ring>) -> Self {
        Self::constant(ring, ring.field().one())
    }

    pub fn monomial(ring: &Arc<Ring>, m: Monomial, c: Coeff) -> Self {
        assert!(ring.field().contains(&c), "coefficient outside the ring's field");
        let terms = if c.is_zero() { Vec::new() } else { vec![(m, c)] };
        Polynomial {
            ring: ring.clone(),
            terms,
        }
    }

    pub fn var(ring: &Arc<Ring>, index: usize) -> Self {
        assert!(index < ring.nvars(), "variable index out of range");
        Self::monomial(ring, Monomial::var(index), ring.field().one())
    }

    /// Builds a canonical polynomial from arbitrary terms: like monomials are
    /// combined, zeros dropped, and the rest sorted.
    pub fn from_terms(ring: &Arc<Ring>, terms: impl IntoIterator<Item = Term>) -> Self {
        let mut acc: HashMap<Monomial, Coeff> = HashMap::new();
        for (m, c) in terms {
            debug_assert!(ring.field().contains(&c));
            match acc.get_mut(&m) {
                Some(e) => *e = &*e + &c,
                None => {
                    acc.insert(m, c);
                }
            }
        }
        let mut terms: Vec<Term> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        let order = ring.order();
        terms.sort_unstable_by(|a, b| order.cmp(&b.0, &a.0));
        Polynomial {
            ring: ring.clone(),
            terms,
        }
    }

    /// Builds from `(exponents, integer coefficient)` pairs; handy in tests.
    pub fn from_int_terms(ring: &Arc<Ring>, terms: &[(&[u32], i64)]) -> Self {
        let k = ring.field();
        Self::from_terms(ring, terms.iter().map(|(e, c)| (Monomial::new(e), k.from_i64(*c))))
    }

    /// Trusts `terms` to be canonical already.
    pub(crate) fn from_sorted_terms(ring: &Arc<Ring>, terms: Vec<Term>) -> Self {
        Polynomial {
            ring: ring.clone(),
            terms,
        }
    }

    pub(crate) fn pop_leading(&mut self) -> Option<Term> {
        if self.terms.is_empty() {
            None
        } else {
            Some(self.terms.remove(0))
        }
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<Term> {
        self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_one())
    }

    pub fn leading_term(&self) -> Result<(&Monomial, &Coeff)> {
        self.terms
            .first()
            .map(|(m, c)| (m, c))
            .ok_or(Error::ZeroPolynomial)
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|(m, _)| m)
    }

    pub fn leading_coeff(&self) -> Option<&Coeff> {
        self.terms.first().map(|(_, c)| c)
    }

    /// Coefficient of `m`, zero when absent.
    pub fn coeff(&self, m: &Monomial) -> Coeff {
        let order = self.ring.order();
        match self.terms.binary_search_by(|(t, _)| order.cmp(m, t)) {
            Ok(i) => self.terms[i].1.clone(),
            Err(_) => self.ring.field().zero(),
        }
    }

    /// Largest total degree of a term; `None` for zero.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.degree()).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        match self.terms.first() {
            None => true,
            Some((m, _)) => self.terms.iter().all(|(t, _)| t.degree() == m.degree()),
        }
    }

    fn check_ring(&self, other: &Polynomial) -> Result<()> {
        if same_ring(&self.ring, &other.ring) {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }

    pub fn try_add(&self, rhs: &Polynomial) -> Result<Polynomial> {
        self.check_ring(rhs)?;
        Ok(self.merge(rhs, false))
    }

    pub fn try_sub(&self, rhs: &Polynomial) -> Result<Polynomial> {
        self.check_ring(rhs)?;
        Ok(self.merge(rhs, true))
    }

    pub fn try_mul(&self, rhs: &Polynomial) -> Result<Polynomial> {
        self.check_ring(rhs)?;
        let (small, big) = if self.len() <= rhs.len() { (self, rhs) } else { (rhs, self) };
        let mut acc = Polynomial::zero(&self.ring);
        for (m, c) in &small.terms {
            acc.sub_mul_term(&-c, m, big);
        }
        Ok(acc)
    }

    fn merge(&self, rhs: &Polynomial, negate: bool) -> Polynomial {
        let order = self.ring.order();
        let mut out = Vec::with_capacity(self.len() + rhs.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < rhs.terms.len() {
            let (a, b) = (&self.terms[i], &rhs.terms[j]);
            match order.cmp(&a.0, &b.0) {
                Ordering::Greater => {
                    out.push(a.clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push((b.0, if negate { -&b.1 } else { b.1.clone() }));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate { &a.1 - &b.1 } else { &a.1 + &b.1 };
                    if !c.is_zero() {
                        out.push((a.0, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.terms[i..]);
        out.extend(
            rhs.terms[j..]
                .iter()
                .map(|(m, c)| (*m, if negate { -c } else { c.clone() })),
        );
        Polynomial {
            ring: self.ring.clone(),
            terms: out,
        }
    }

    /// `self -= c * m * g`, the elementary reduction step. `g` must share the ring.
    pub fn sub_mul_term(&mut self, c: &Coeff, m: &Monomial, g: &Polynomial) {
        debug_assert!(same_ring(&self.ring, &g.ring));
        if c.is_zero() || g.is_zero() {
            return;
        }
        let order = self.ring.order();
        let old = std::mem::take(&mut self.terms);
        let mut out = Vec::with_capacity(old.len() + g.len());
        let mut old_iter = old.into_iter().peekable();
        for (gm, gc) in &g.terms {
            let sm = m.mul(gm);
            let sc = -&(c * gc);
            loop {
                match old_iter.peek() {
                    Some((om, _)) if order.cmp(om, &sm) == Ordering::Greater => {
                        out.push(old_iter.next().expect("peeked"));
                    }
                    Some((om, _)) if *om == sm => {
                        let (_, oc) = old_iter.next().expect("peeked");
                        let s = &oc + &sc;
                        if !s.is_zero() {
                            out.push((sm, s));
                        }
                        break;
                    }
                    _ => {
                        out.push((sm, sc));
                        break;
                    }
                }
            }
        }
        out.extend(old_iter);
        self.terms = out;
    }

    pub fn scale(&self, c: &Coeff) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.ring);
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, d)| (*m, d * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Polynomial {
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(t, c)| (t.mul(m), c.clone())).collect(),
        }
    }

    /// Divides every term by `m`; `None` if some term is not divisible.
    pub fn div_monomial(&self, m: &Monomial) -> Option<Polynomial> {
        let terms = self
            .terms
            .iter()
            .map(|(t, c)| m.quotient_of(t).map(|q| (q, c.clone())))
            .collect::<Option<Vec<_>>>()?;
        Some(Polynomial {
            ring: self.ring.clone(),
            terms,
        })
    }

    /// Scales so the leading coefficient is one. Zero stays zero.
    pub fn monic(&self) -> Polynomial {
        match self.leading_coeff() {
            None => self.clone(),
            Some(c) if c.is_one() => self.clone(),
            Some(c) => self.scale(&c.inv().expect("leading coefficient is nonzero")),
        }
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut acc = Polynomial::one(&self.ring);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// `(lcm/LT(f)) f - (lcm/LT(g)) g`, with `lcm` the least common multiple
    /// of the leading monomials.
    pub fn s_polynomial(&self, g: &Polynomial) -> Result<Polynomial> {
        self.check_ring(g)?;
        let (fm, fc) = self.leading_term()?;
        let (gm, gc) = g.leading_term()?;
        let lcm = fm.lcm(gm);
        let fq = fm.quotient_of(&lcm).expect("lcm is a multiple");
        let gq = gm.quotient_of(&lcm).expect("lcm is a multiple");
        let mut s = self.mul_monomial(&fq).scale(&fc.inv()?);
        s.sub_mul_term(&gc.inv()?, &gq, g);
        Ok(s)
    }

    /// Homogenizes a polynomial of `k[y,z]` into `k[x,y,z]` with the new
    /// variable in front.
    pub fn homogenize(&self) -> Result<Polynomial> {
        let target = self.ring.homogenized()?;
        let deg = self.total_degree().ok_or(Error::ZeroPolynomial)?;
        Ok(Polynomial::from_terms(
            &target,
            self.terms
                .iter()
                .map(|(m, c)| (m.insert_var(0, deg - m.degree()), c.clone())),
        ))
    }

    /// Sets the first variable to one, landing in the two-variable ring.
    pub fn dehomogenize(&self) -> Result<Polynomial> {
        let target = self.ring.without_var(0)?;
        Ok(Polynomial::from_terms(
            &target,
            self.terms.iter().map(|(m, c)| (m.remove_var(0), c.clone())),
        ))
    }

    /// Replaces each bound variable by a polynomial of the same ring.
    /// Unbound variables are left alone.
    pub fn substitute(&self, bindings: &[(usize, Polynomial)]) -> Result<Polynomial> {
        let mut images: Vec<Polynomial> = (0..self.ring.nvars())
            .map(|i| Polynomial::var(&self.ring, i))
            .collect();
        for (v, p) in bindings {
            if *v >= images.len() {
                return Err(Error::NoSuchVariable(*v));
            }
            self.check_ring(p)?;
            images[*v] = p.clone();
        }
        self.map_into(&self.ring, &images)
    }

    /// Ring homomorphism sending variable `i` to `images[i]` in `target`.
    /// Coefficients are carried over through [`crate::CoefficientField::convert`].
    pub fn map_into(&self, target: &Arc<Ring>, images: &[Polynomial]) -> Result<Polynomial> {
        if images.len() != self.ring.nvars() {
            return Err(Error::RingMismatch);
        }
        if images.iter().any(|p| !same_ring(p.ring(), target)) {
            return Err(Error::RingMismatch);
        }
        let field = target.field();
        let mut powers: Vec<Vec<Polynomial>> = images
            .iter()
            .map(|p| vec![Polynomial::one(target), p.clone()])
            .collect();
        let mut acc = Polynomial::zero(target);
        for (m, c) in &self.terms {
            let mut t = Polynomial::constant(target, field.convert(c)?);
            for (v, pw) in powers.iter_mut().enumerate() {
                let e = m.exp(v) as usize;
                while pw.len() <= e {
                    let next = &pw[pw.len() - 1] * &pw[1];
                    pw.push(next);
                }
                if e > 0 {
                    t = &t * &pw[e];
                }
            }
            acc = &acc + &t;
        }
        Ok(acc)
    }

    /// The same polynomial viewed in another ring with the same variables
    /// (reorders terms for a new monomial order, or reduces coefficients
    /// into a prime field).
    pub fn reinterpret(&self, target: &Arc<Ring>) -> Result<Polynomial> {
        if target.nvars() != self.ring.nvars() {
            return Err(Error::RingMismatch);
        }
        let field = target.field();
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| Ok((*m, field.convert(c)?)))
            .collect::<Result<Vec<_>>>()?;
        Ok(Polynomial::from_terms(target, terms))
    }

    /// Moves the polynomial into a ring with one more variable in front
    /// (used for the tag variable of elimination rings).
    pub(crate) fn lift_into(&self, target: &Arc<Ring>) -> Polynomial {
        debug_assert_eq!(target.nvars(), self.ring.nvars() + 1);
        Polynomial::from_terms(target, self.terms.iter().map(|(m, c)| (m.insert_var(0, 0), c.clone())))
    }

    /// Inverse of [`Self::lift_into`]; `None` if the front variable occurs.
    pub(crate) fn drop_into(&self, target: &Arc<Ring>) -> Option<Polynomial> {
        if self.terms.iter().any(|(m, _)| m.exp(0) > 0) {
            return None;
        }
        Some(Polynomial::from_terms(
            target,
            self.terms.iter().map(|(m, c)| (m.remove_var(0), c.clone())),
        ))
    }

    /// Evaluates at a point of the coefficient field.
    pub fn eval(&self, point: &[Coeff]) -> Result<Coeff> {
        if point.len() != self.ring.nvars() {
            return Err(Error::RingMismatch);
        }
        let mut acc = self.ring.field().zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (v, x) in point.iter().enumerate() {
                t = &t * &x.pow(m.exp(v));
            }
            acc = &acc + &t;
        }
        Ok(acc)
    }
}

macro_rules! poly_op {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl<'a> $trait<&'a Polynomial> for &'a Polynomial {
            type Output = Polynomial;
            /// Panics on ring mismatch; use the `try_` form for fallible code.
            fn $method(self, rhs: &'a Polynomial) -> Polynomial {
                self.$checked(rhs).expect("polynomial ring mismatch")
            }
        }

        impl $trait for Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: Polynomial) -> Polynomial {
                (&self).$method(&rhs)
            }
        }
    };
}

poly_op!(Add, add, try_add);
poly_op!(Sub, sub, try_sub);
poly_op!(Mul, mul, try_mul);

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect(),
        }
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}

impl fmt::Display for Polynomial {
    /// Canonical rendering: descending terms, `*` between factors, `^` for
    /// powers, rationals as `p/q`. This is the golden-file format.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let names = self.ring.vars();
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let mag = if neg { (-c).to_string() } else { c.to_string() };
            match (i, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if m.is_one() {
                write!(f, "{mag}")?;
            } else if mag == "1" {
                write!(f, "{}", m.render(names))?;
            } else {
                write!(f, "{mag}*{}", m.render(names))?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::CoefficientField;
    use crate::order::{MonomialOrder, OrderKind};
    use crate::ring::names;
    use proptest::prelude::*;

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
    fn arithmetic_examples() {
        let f = p2(&[(&[2, 0], 1), (&[0, 3], -1)]);
        let g = p2(&[(&[0, 3], 1)]);
        assert_eq!(&f + &g, p2(&[(&[2, 0], 1)]));
        assert_eq!(&p2(&[(&[1, 0], 1)]) * &p2(&[(&[0, 2], 1)]), p2(&[(&[1, 2], 1)]));
        let s = p2(&[(&[1, 0], 1), (&[0, 1], 1)]);
        let d = p2(&[(&[1, 0], 1), (&[0, 1], -1)]);
        assert_eq!((&s * &d).to_string(), "y^2 - z^2");
        assert!((&f - &f).is_zero());
    }

    #[test]
    fn ring_mismatch_is_an_error() {
        let a = p2(&[(&[1, 0], 1)]);
        let b = p3(&[(&[1, 0, 0], 1)]);
        assert_eq!(a.try_add(&b), Err(Error::RingMismatch));
        assert_eq!(a.try_mul(&b), Err(Error::RingMismatch));
    }

    #[test]
    fn leading_terms_under_grevlex() {
        let f = p2(&[(&[2, 1], 1), (&[0, 3], 1)]);
        assert_eq!(f.leading_term().unwrap(), (&Monomial::new(&[2, 1]), &aff().field().one()));
        let g = p2(&[(&[3, 0], 1), (&[1, 1], -1)]);
        assert_eq!(*g.leading_monomial().unwrap(), Monomial::new(&[3, 0]));
        let h = p2(&[(&[2, 0], 1), (&[0, 3], -1)]);
        let (m, c) = h.leading_term().unwrap();
        assert_eq!(*m, Monomial::new(&[0, 3]));
        assert_eq!(c.to_i64(), Some(-1));
        assert_eq!(Polynomial::zero(&aff()).leading_term(), Err(Error::ZeroPolynomial));
    }

    #[test]
    fn s_polynomials() {
        let y2 = p2(&[(&[2, 0], 1)]);
        let yz = p2(&[(&[1, 1], 1)]);
        assert!(y2.s_polynomial(&yz).unwrap().is_zero());
        let f = p2(&[(&[2, 0], 1), (&[0, 3], -1)]);
        assert!(f.s_polynomial(&f).unwrap().is_zero());
        // LT(f) = -z^3, LT(g) = y*z^2, lcm = y*z^3:
        // y*f/(-1) - z*g = -y^3 + y*z^3 - y*z^3 = -y^3
        let g = p2(&[(&[1, 2], 1)]);
        assert_eq!(f.s_polynomial(&g).unwrap(), p2(&[(&[3, 0], -1)]));
        assert_eq!(f.s_polynomial(&Polynomial::zero(&aff())), Err(Error::ZeroPolynomial));
    }

    #[test]
    fn homogenize_examples() {
        let f = p2(&[(&[3, 0], 1), (&[1, 1], -1)]);
        assert_eq!(f.homogenize().unwrap().to_string(), "y^3 - x*y*z");
        let g = p2(&[(&[1, 2], 1)]);
        assert_eq!(g.homogenize().unwrap().to_string(), "y*z^2");
        let h = p2(&[(&[1, 0], 1), (&[0, 2], 1)]);
        assert_eq!(h.homogenize().unwrap().to_string(), "x*y + z^2");
        assert_eq!(Polynomial::zero(&aff()).homogenize(), Err(Error::ZeroPolynomial));
    }

    #[test]
    fn dehomogenize_examples() {
        assert_eq!(p3(&[(&[1, 1, 0], 1), (&[0, 0, 2], 1)]).dehomogenize().unwrap().to_string(), "z^2 + y");
        assert_eq!(
            p3(&[(&[0, 3, 0], 1), (&[1, 1, 1], -1)]).dehomogenize().unwrap().to_string(),
            "y^3 - y*z"
        );
        assert_eq!(p3(&[(&[3, 0, 0], 1)]).dehomogenize().unwrap().to_string(), "1");
    }

    #[test]
    fn substitute_examples() {
        let b = p3(&[(&[1, 2, 0], 1), (&[0, 0, 3], -1)]);
        let one = Polynomial::one(&proj());
        assert_eq!(b.substitute(&[(0, one)]).unwrap().to_string(), "-z^3 + y^2");
        assert_eq!(b.substitute(&[]).unwrap(), b);
    }

    #[test]
    fn rendering_of_rationals_and_signs() {
        let k = CoefficientField::Rationals;
        let half = k.from_rational(&num_rational::BigRational::new((-3).into(), 2.into())).unwrap();
        let p = Polynomial::from_terms(
            &aff(),
            vec![(Monomial::new(&[1, 0]), half), (Monomial::one(), k.from_i64(-4))],
        );
        assert_eq!(p.to_string(), "-3/2*y - 4");
        assert_eq!(Polynomial::zero(&aff()).to_string(), "0");
    }

    #[test]
    fn coefficient_lookup() {
        let f = p3(&[(&[1, 2, 0], 5), (&[0, 0, 3], -1)]);
        assert_eq!(f.coeff(&Monomial::new(&[1, 2, 0])).to_i64(), Some(5));
        assert!(f.coeff(&Monomial::new(&[3, 0, 0])).is_zero());
    }

    #[test]
    fn reinterpret_resorts_terms() {
        let f = p3(&[(&[0, 0, 3], 1), (&[1, 1, 0], 1)]);
        let lex = proj()
            .with_order(MonomialOrder::new(OrderKind::Lex, vec![2, 1, 0]).unwrap())
            .unwrap();
        let g = f.reinterpret(&lex).unwrap();
        assert_eq!(*g.leading_monomial().unwrap(), Monomial::new(&[0, 0, 3]));
        let k7 = proj().with_field(CoefficientField::PrimeField(7));
        assert_eq!(p3(&[(&[1, 0, 0], 8)]).reinterpret(&k7).unwrap().to_string(), "x");
    }

    fn arb_poly(nvars: usize) -> impl Strategy<Value = Vec<(Vec<u32>, i64)>> {
        proptest::collection::vec((proptest::collection::vec(0u32..4, nvars), -5i64..5), 0..6)
    }

    fn build(ring: &Arc<Ring>, t: &[(Vec<u32>, i64)]) -> Polynomial {
        let k = ring.field();
        Polynomial::from_terms(ring, t.iter().map(|(e, c)| (Monomial::new(e), k.from_i64(*c))))
    }

    fn canonical(p: &Polynomial) -> bool {
        let o = p.ring().order();
        p.terms().iter().all(|(_, c)| !c.is_zero())
            && p.terms().windows(2).all(|w| o.cmp(&w[0].0, &w[1].0) == Ordering::Greater)
    }

    proptest! {
        #[test]
        fn ring_laws(a in arb_poly(3), b in arb_poly(3), c in arb_poly(3)) {
            let r = proj();
            let (a, b, c) = (build(&r, &a), build(&r, &b), build(&r, &c));
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&(&a + &b) - &b, a.clone());
            prop_assert!(canonical(&(&a * &b)) && canonical(&(&a - &c)));
        }

        #[test]
        fn dehomogenize_inverts_homogenize(a in arb_poly(2)) {
            let p = build(&aff(), &a);
            prop_assume!(!p.is_zero());
            prop_assert_eq!(p.homogenize().unwrap().dehomogenize().unwrap(), p);
        }

        #[test]
        fn homogenize_inverts_dehomogenize_off_x(a in arb_poly(2), deg in 3u32..6) {
            // a homogeneous form not divisible by x
            let r = proj();
            let k = r.field();
            let p = Polynomial::from_terms(&r, a.iter().filter(|(e, _)| e[0] + e[1] <= deg).map(|(e, c)| {
                (Monomial::new(&[deg - e[0] - e[1], e[0], e[1]]), k.from_i64(*c))
            }));
            prop_assume!(!p.is_zero() && p.terms().iter().any(|(m, _)| m.exp(0) == 0));
            prop_assert_eq!(p.dehomogenize().unwrap().homogenize().unwrap(), p);
        }

        #[test]
        fn modular_image_commutes_with_arithmetic(a in arb_poly(3), b in arb_poly(3)) {
            let r = proj();
            let rp = r.with_field(CoefficientField::PrimeField(32003));
            let (a, b) = (build(&r, &a), build(&r, &b));
            let red = |p: &Polynomial| p.reinterpret(&rp).unwrap();
            prop_assert_eq!(red(&(&a * &b)), &red(&a) * &red(&b));
            prop_assert_eq!(red(&(&a + &b)), &red(&a) + &red(&b));
        }
    }

    #[test]
    fn map_into_other_ring() {
        // y^2 - z^3 under y -> x, z -> y in k[x,y,z]
        let r3 = proj();
        let f = p2(&[(&[2, 0], 1), (&[0, 3], -1)]);
        let g = f.map_into(&r3, &[Polynomial::var(&r3, 0), Polynomial::var(&r3, 1)]).unwrap();
        assert_eq!(g.to_string(), "-y^3 + x^2");
        let bad = Ring::new(names(&["a", "b"]), CoefficientField::Rationals, MonomialOrder::grevlex(2)).unwrap();
        assert!(f.map_into(&bad, &[Polynomial::var(&r3, 0), Polynomial::var(&r3, 1)]).is_err());
    }
}
