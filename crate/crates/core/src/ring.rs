use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::CoefficientField;
use crate::order::{MonomialOrder, OrderKind};

/// Name of the auxiliary variable in elimination rings. It cannot collide
/// with user variables because the parser only accepts identifiers that
/// start with a letter.
pub const TAG_VAR: &str = "_t";

/// Ring descriptor shared by every polynomial of the ring.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Ring {
    vars: Vec<String>,
    field: CoefficientField,
    order: MonomialOrder,
}

impl Ring {
    /// A user-facing ring in two (affine) or three (projective) variables.
    pub fn new(vars: Vec<String>, field: CoefficientField, order: MonomialOrder) -> Result<Arc<Self>> {
        if !(2..=3).contains(&vars.len()) {
            return Err(Error::UnsupportedArity(vars.len()));
        }
        Self::build(vars, field, order)
    }

    fn build(vars: Vec<String>, field: CoefficientField, order: MonomialOrder) -> Result<Arc<Self>> {
        if order.nvars() != vars.len() {
            return Err(Error::InvalidOrder(format!(
                "order has {} variables, ring has {}",
                order.nvars(),
                vars.len()
            )));
        }
        for (i, v) in vars.iter().enumerate() {
            if vars[..i].contains(v) {
                return Err(Error::InvalidOrder(format!("duplicate variable {v}")));
            }
        }
        Ok(Arc::new(Ring { vars, field, order }))
    }

    /// `k[y,z]` with GrevLex, `y > z`.
    pub fn affine(field: CoefficientField) -> Arc<Self> {
        Self::new(names(&["y", "z"]), field, MonomialOrder::grevlex(2)).expect("valid ring")
    }

    /// `k[x,y,z]` with GrevLex, `x > y > z`.
    pub fn projective(field: CoefficientField) -> Arc<Self> {
        Self::new(names(&["x", "y", "z"]), field, MonomialOrder::grevlex(3)).expect("valid ring")
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn field(&self) -> CoefficientField {
        self.field
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    pub fn with_order(&self, order: MonomialOrder) -> Result<Arc<Self>> {
        Self::build(self.vars.clone(), self.field, order)
    }

    pub fn with_field(&self, field: CoefficientField) -> Arc<Self> {
        Arc::new(Ring {
            vars: self.vars.clone(),
            field,
            order: self.order.clone(),
        })
    }

    /// Same variables and field under GrevLex in index order.
    pub fn with_grevlex(&self) -> Arc<Self> {
        Arc::new(Ring {
            vars: self.vars.clone(),
            field: self.field,
            order: MonomialOrder::grevlex(self.vars.len()),
        })
    }

    /// The ring obtained by adjoining a homogenizing variable in front.
    /// It is called `x` unless that name is taken.
    pub fn homogenized(&self) -> Result<Arc<Self>> {
        if self.vars.len() != 2 {
            return Err(Error::UnsupportedArity(self.vars.len()));
        }
        let name = ["x", "w", "u", "h"]
            .into_iter()
            .find(|n| !self.vars.iter().any(|v| v == n))
            .expect("at most two names are taken");
        let mut vars = vec![name.to_string()];
        vars.extend(self.vars.iter().cloned());
        let mut prec = vec![0];
        prec.extend(self.order.precedence().iter().map(|v| v + 1));
        let order = MonomialOrder::new(OrderKind::GrevLex, prec)?;
        Self::new(vars, self.field, order)
    }

    /// The ring with variable `var` removed (GrevLex, induced precedence).
    pub fn without_var(&self, var: usize) -> Result<Arc<Self>> {
        if var >= self.vars.len() {
            return Err(Error::NoSuchVariable(var));
        }
        if self.vars.len() != 3 {
            return Err(Error::UnsupportedArity(self.vars.len() - 1));
        }
        let mut vars = self.vars.clone();
        vars.remove(var);
        let prec = self
            .order
            .precedence()
            .iter()
            .filter(|&&v| v != var)
            .map(|&v| if v > var { v - 1 } else { v })
            .collect();
        Self::new(vars, self.field, MonomialOrder::new(OrderKind::GrevLex, prec)?)
    }

    /// Elimination ring: the tag variable at index 0, eliminated by a block order.
    pub(crate) fn with_tag(&self) -> Arc<Self> {
        let mut vars = vec![TAG_VAR.to_string()];
        vars.extend(self.vars.iter().cloned());
        let inner = match self.order.kind() {
            OrderKind::Block { .. } => OrderKind::GrevLex,
            k => k.clone(),
        };
        let mut prec = vec![0];
        prec.extend(self.order.precedence().iter().map(|v| v + 1));
        let order = MonomialOrder::new(
            OrderKind::Block {
                elim: 1,
                inner: Box::new(inner),
            },
            prec,
        )
        .expect("valid elimination order");
        Self::build(vars, self.field, order).expect("valid elimination ring")
    }
}

/// Rings are compared structurally; pointer equality is only a fast path.
pub fn same_ring(a: &Arc<Ring>, b: &Arc<Ring>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

pub fn names(v: &[&str]) -> Vec<String> {
    v.iter().map(|s| s.to_string()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn homogenized_ring_prepends_x() {
        let r = Ring::affine(CoefficientField::Rationals);
        let h = r.homogenized().unwrap();
        assert_eq!(h.vars(), &names(&["x", "y", "z"])[..]);
        assert_eq!(*h, *Ring::projective(CoefficientField::Rationals));
        assert_eq!(*h.without_var(0).unwrap(), *r);
    }

    #[test]
    fn homogenizing_variable_avoids_clashes() {
        let r = Ring::new(names(&["x", "y"]), CoefficientField::Rationals, MonomialOrder::grevlex(2)).unwrap();
        assert_eq!(r.homogenized().unwrap().vars()[0], "w");
    }

    #[test]
    fn rejects_bad_rings() {
        let k = CoefficientField::Rationals;
        assert_eq!(
            Ring::new(names(&["x"]), k, MonomialOrder::grevlex(1)).unwrap_err(),
            Error::UnsupportedArity(1)
        );
        assert!(Ring::new(names(&["x", "x"]), k, MonomialOrder::grevlex(2)).is_err());
        assert!(Ring::new(names(&["x", "y", "z"]), k, MonomialOrder::grevlex(2)).is_err());
    }
}
