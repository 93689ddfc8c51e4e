use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};
use crate::monomial::{Monomial, MAX_VARS};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum OrderKind {
    GrevLex,
    GrLex,
    Lex,
    /// The first `elim` variables (in precedence order) form a block compared
    /// by GrevLex before anything else; ties are broken by `inner` on the rest.
    Block { elim: usize, inner: Box<OrderKind> },
}

/// A monomial order: a kind plus a variable precedence list (variable
/// indices from most to least significant).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MonomialOrder {
    kind: OrderKind,
    precedence: Vec<usize>,
}

impl MonomialOrder {
    pub fn new(kind: OrderKind, precedence: Vec<usize>) -> Result<Self> {
        let n = precedence.len();
        if n == 0 || n > MAX_VARS {
            return Err(Error::InvalidOrder(format!("{n} variables")));
        }
        let mut seen = [false; MAX_VARS];
        for &v in &precedence {
            if v >= n || seen[v] {
                return Err(Error::InvalidOrder(format!(
                    "precedence {precedence:?} is not a permutation"
                )));
            }
            seen[v] = true;
        }
        if let OrderKind::Block { elim, inner } = &kind {
            if *elim == 0 || *elim >= n {
                return Err(Error::InvalidOrder(format!("block of {elim} in {n} variables")));
            }
            if matches!(**inner, OrderKind::Block { .. }) {
                return Err(Error::InvalidOrder("nested block orders".into()));
            }
        }
        Ok(MonomialOrder { kind, precedence })
    }

    /// GrevLex with variables in index order (`x > y > z`).
    pub fn grevlex(nvars: usize) -> Self {
        MonomialOrder::new(OrderKind::GrevLex, (0..nvars).collect()).expect("valid arity")
    }

    pub fn kind(&self) -> &OrderKind {
        &self.kind
    }

    pub fn precedence(&self) -> &[usize] {
        &self.precedence
    }

    pub fn nvars(&self) -> usize {
        self.precedence.len()
    }

    /// Whether total degree is compared first.
    pub fn is_graded(&self) -> bool {
        matches!(self.kind, OrderKind::GrevLex | OrderKind::GrLex)
    }

    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        let n = self.precedence.len();
        let mut pa = [0u32; MAX_VARS];
        let mut pb = [0u32; MAX_VARS];
        for (slot, &v) in self.precedence.iter().enumerate() {
            pa[slot] = a.exp(v);
            pb[slot] = b.exp(v);
        }
        cmp_kind(&self.kind, &pa[..n], &pb[..n])
    }
}

fn cmp_kind(kind: &OrderKind, a: &[u32], b: &[u32]) -> Ordering {
    match kind {
        OrderKind::Lex => a.cmp(b),
        OrderKind::GrLex => {
            let (da, db) = (a.iter().sum::<u32>(), b.iter().sum::<u32>());
            da.cmp(&db).then_with(|| a.cmp(b))
        }
        OrderKind::GrevLex => {
            let (da, db) = (a.iter().sum::<u32>(), b.iter().sum::<u32>());
            da.cmp(&db).then_with(|| {
                for i in (0..a.len()).rev() {
                    if a[i] != b[i] {
                        // smaller exponent in the last differing variable wins
                        return b[i].cmp(&a[i]);
                    }
                }
                Ordering::Equal
            })
        }
        OrderKind::Block { elim, inner } => cmp_kind(&OrderKind::GrevLex, &a[..*elim], &b[..*elim])
            .then_with(|| cmp_kind(inner, &a[*elim..], &b[*elim..])),
    }
}

impl fmt::Display for OrderKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OrderKind::GrevLex => write!(f, "grevlex"),
            OrderKind::GrLex => write!(f, "grlex"),
            OrderKind::Lex => write!(f, "lex"),
            OrderKind::Block { elim, inner } => write!(f, "block({elim}, {inner})"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monomial::monomials_of_degree;
    use proptest::prelude::*;

    fn m(e: &[u32]) -> Monomial {
        Monomial::new(e)
    }

    #[test]
    fn grevlex_textbook_cases() {
        let o = MonomialOrder::grevlex(3);
        // x^2*z^2 < x*y^2*z for grevlex since z exponent is larger
        assert_eq!(o.cmp(&m(&[1, 2, 1]), &m(&[2, 0, 2])), Ordering::Greater);
        assert_eq!(o.cmp(&m(&[0, 0, 3]), &m(&[0, 2, 0])), Ordering::Greater);
        let lex = MonomialOrder::new(OrderKind::Lex, vec![0, 1, 2]).unwrap();
        assert_eq!(lex.cmp(&m(&[0, 0, 3]), &m(&[0, 2, 0])), Ordering::Less);
        let grlex = MonomialOrder::new(OrderKind::GrLex, vec![0, 1, 2]).unwrap();
        assert_eq!(grlex.cmp(&m(&[1, 2, 1]), &m(&[2, 0, 2])), Ordering::Less);
    }

    #[test]
    fn precedence_reorders_variables() {
        let zyx = MonomialOrder::new(OrderKind::Lex, vec![2, 1, 0]).unwrap();
        assert_eq!(zyx.cmp(&m(&[0, 0, 1]), &m(&[5, 0, 0])), Ordering::Greater);
    }

    #[test]
    fn block_order_eliminates_first_block() {
        let o = MonomialOrder::new(
            OrderKind::Block {
                elim: 1,
                inner: Box::new(OrderKind::GrevLex),
            },
            vec![0, 1, 2, 3],
        )
        .unwrap();
        assert_eq!(o.cmp(&m(&[1, 0, 0, 0]), &m(&[0, 9, 9, 9])), Ordering::Greater);
        assert_eq!(o.cmp(&m(&[1, 1, 0, 0]), &m(&[1, 0, 0, 1])), Ordering::Greater);
    }

    #[test]
    fn rejects_malformed_orders() {
        assert!(MonomialOrder::new(OrderKind::Lex, vec![0, 0, 1]).is_err());
        assert!(MonomialOrder::new(OrderKind::Lex, vec![0, 3]).is_err());
        let bad_block = OrderKind::Block {
            elim: 3,
            inner: Box::new(OrderKind::Lex),
        };
        assert!(MonomialOrder::new(bad_block, vec![0, 1, 2]).is_err());
    }

    fn orders() -> Vec<MonomialOrder> {
        vec![
            MonomialOrder::grevlex(3),
            MonomialOrder::new(OrderKind::GrLex, vec![0, 1, 2]).unwrap(),
            MonomialOrder::new(OrderKind::Lex, vec![0, 1, 2]).unwrap(),
            MonomialOrder::new(OrderKind::GrevLex, vec![1, 2, 0]).unwrap(),
            MonomialOrder::new(
                OrderKind::Block {
                    elim: 1,
                    inner: Box::new(OrderKind::GrevLex),
                },
                vec![0, 1, 2],
            )
            .unwrap(),
        ]
    }

    #[test]
    fn strict_total_order_on_small_monomials() {
        let monos: Vec<Monomial> = (0..4).flat_map(|s| monomials_of_degree(3, s)).collect();
        for o in orders() {
            for a in &monos {
                for b in &monos {
                    let ab = o.cmp(a, b);
                    assert_eq!(ab, o.cmp(b, a).reverse());
                    assert_eq!(ab == Ordering::Equal, a == b);
                }
            }
        }
    }

    proptest! {
        #[test]
        fn orders_are_multiplicative_and_graded(
            a in proptest::collection::vec(0u32..6, 3),
            b in proptest::collection::vec(0u32..6, 3),
            w in proptest::collection::vec(0u32..6, 3),
        ) {
            let (a, b, w) = (m(&a), m(&b), m(&w));
            for o in orders() {
                prop_assert_eq!(o.cmp(&a, &b), o.cmp(&a.mul(&w), &b.mul(&w)));
                if o.is_graded() && a.degree() > b.degree() {
                    prop_assert_eq!(o.cmp(&a, &b), Ordering::Greater);
                }
            }
        }
    }
}
