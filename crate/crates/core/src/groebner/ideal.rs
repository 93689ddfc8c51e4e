use std::sync::{Arc, OnceLock};

use super::{groebner_basis, normal_form};
use crate::error::{Error, Result};
use crate::monomial::Monomial;
use crate::poly::Polynomial;
use crate::ring::{same_ring, Ring};

/// Generators of an ideal plus a lazily computed reduced Groebner basis.
///
/// The cache is a [`OnceLock`], so concurrent readers either see no basis
/// yet or the complete one.
#[derive(Debug, Clone)]
pub struct IdealPresentation {
    ring: Arc<Ring>,
    generators: Vec<Polynomial>,
    gb: OnceLock<Vec<Polynomial>>,
}

impl IdealPresentation {
    /// Zero generators are dropped; at least one nonzero generator must remain.
    pub fn new(ring: &Arc<Ring>, generators: Vec<Polynomial>) -> Result<Self> {
        if generators.iter().any(|g| !same_ring(g.ring(), ring)) {
            return Err(Error::RingMismatch);
        }
        let generators: Vec<Polynomial> = generators.into_iter().filter(|g| !g.is_zero()).collect();
        if generators.is_empty() {
            return Err(Error::ZeroIdeal);
        }
        Ok(IdealPresentation {
            ring: ring.clone(),
            generators,
            gb: OnceLock::new(),
        })
    }

    /// Builds from polynomials that already form a reduced Groebner basis.
    pub(crate) fn from_reduced_basis(ring: &Arc<Ring>, basis: Vec<Polynomial>) -> Self {
        let gb = OnceLock::new();
        let _ = gb.set(basis.clone());
        IdealPresentation {
            ring: ring.clone(),
            generators: basis,
            gb,
        }
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    pub fn reduced_gb(&self) -> &[Polynomial] {
        self.gb.get_or_init(|| groebner_basis(&self.generators).expect("nonzero generators in one ring"))
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.reduced_gb()
            .iter()
            .map(|g| *g.leading_monomial().expect("nonzero"))
            .collect()
    }

    pub fn is_unit(&self) -> bool {
        self.reduced_gb().iter().any(|g| g.is_constant())
    }

    pub fn is_homogeneous(&self) -> bool {
        self.generators.iter().all(|g| g.is_homogeneous())
    }

    pub fn contains(&self, p: &Polynomial) -> Result<bool> {
        if !same_ring(p.ring(), &self.ring) {
            return Err(Error::RingMismatch);
        }
        Ok(normal_form(p, self.reduced_gb())?.is_zero())
    }

    /// Equality of ideals: identical reduced Groebner bases.
    pub fn equals(&self, other: &IdealPresentation) -> Result<bool> {
        if !same_ring(&self.ring, &other.ring) {
            return Err(Error::RingMismatch);
        }
        Ok(self.reduced_gb() == other.reduced_gb())
    }

    /// The same ideal in a ring with the same variables but another order
    /// or coefficient field.
    pub fn reinterpret(&self, ring: &Arc<Ring>) -> Result<IdealPresentation> {
        let gens = self
            .generators
            .iter()
            .map(|g| g.reinterpret(ring))
            .collect::<Result<Vec<_>>>()?;
        IdealPresentation::new(ring, gens)
    }

    /// `I ∩ K`, eliminating a tag variable `t` from `t I + (1 - t) K`.
    pub fn intersect(&self, other: &IdealPresentation) -> Result<IdealPresentation> {
        if !same_ring(&self.ring, &other.ring) {
            return Err(Error::RingMismatch);
        }
        let tagged = self.ring.with_tag();
        let t = Polynomial::var(&tagged, 0);
        let one_minus_t = &Polynomial::one(&tagged) - &t;
        let mut gens: Vec<Polynomial> = self
            .reduced_gb()
            .iter()
            .map(|g| &t * &g.lift_into(&tagged))
            .collect();
        gens.extend(
            other
                .reduced_gb()
                .iter()
                .map(|g| &one_minus_t * &g.lift_into(&tagged)),
        );
        let gb = groebner_basis(&gens)?;
        let kept: Vec<Polynomial> = gb.iter().filter_map(|g| g.drop_into(&self.ring)).collect();
        // the block order makes `kept` the reduced basis of the elimination ideal
        Ok(IdealPresentation::from_reduced_basis(&self.ring, kept))
    }

    /// `(J : v) = { p : p v ∈ J }` via `J ∩ <v>` divided by `v`.
    pub fn quotient_by_var(&self, var: usize) -> Result<IdealPresentation> {
        if var >= self.ring.nvars() {
            return Err(Error::NoSuchVariable(var));
        }
        let v = Polynomial::var(&self.ring, var);
        let principal = IdealPresentation::new(&self.ring, vec![v])?;
        let meet = self.intersect(&principal)?;
        let vm = Monomial::var(var);
        let gens = meet
            .generators
            .iter()
            .map(|g| {
                g.div_monomial(&vm)
                    .ok_or_else(|| Error::Internal(format!("{g} in J ∩ <v> is not divisible by v")))
            })
            .collect::<Result<Vec<_>>>()?;
        IdealPresentation::new(&self.ring, gens)
    }

    /// `(J : <x,y,z>^∞)`, by iterating `J <- ∩_v (J : v)` to a fixed point.
    pub fn saturate_irrelevant(&self) -> Result<IdealPresentation> {
        if self.ring.nvars() != 3 {
            return Err(Error::UnsupportedArity(self.ring.nvars()));
        }
        if !self.is_homogeneous() {
            return Err(Error::NotHomogeneous);
        }
        let mut current = self.clone();
        loop {
            let quotients = (0..3)
                .map(|v| current.quotient_by_var(v))
                .collect::<Result<Vec<_>>>()?;
            let mut all_equal = true;
            for q in &quotients {
                all_equal &= q.equals(&current)?;
            }
            if all_equal {
                return Ok(current);
            }
            let next = quotients[0].intersect(&quotients[1])?.intersect(&quotients[2])?;
            if next.equals(&current)? {
                return Ok(current);
            }
            current = next;
        }
    }

    pub fn is_saturated(&self) -> Result<bool> {
        self.saturate_irrelevant()?.equals(self)
    }
}
