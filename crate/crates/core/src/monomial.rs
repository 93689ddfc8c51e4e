use std::fmt;

/// Largest number of variables any ring may have. Public rings use two or
/// three; the fourth slot holds the tag variable of elimination rings.
pub const MAX_VARS: usize = 4;

/// A dense monomial. Unused trailing slots are always zero.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    exps: [u32; MAX_VARS],
    degree: u32,
}

impl Monomial {
    pub fn one() -> Self {
        Monomial {
            exps: [0; MAX_VARS],
            degree: 0,
        }
    }

    pub fn new(exps: &[u32]) -> Self {
        assert!(exps.len() <= MAX_VARS, "too many exponents");
        let mut e = [0; MAX_VARS];
        e[..exps.len()].copy_from_slice(exps);
        Monomial {
            exps: e,
            degree: exps.iter().sum(),
        }
    }

    pub fn var(index: usize) -> Self {
        let mut e = [0; MAX_VARS];
        e[index] = 1;
        Monomial { exps: e, degree: 1 }
    }

    pub fn exps(&self) -> &[u32; MAX_VARS] {
        &self.exps
    }

    pub fn exp(&self, var: usize) -> u32 {
        self.exps[var]
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn is_one(&self) -> bool {
        self.degree == 0
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut e = self.exps;
        for (a, b) in e.iter_mut().zip(other.exps.iter()) {
            *a += b;
        }
        Monomial {
            exps: e,
            degree: self.degree + other.degree,
        }
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.degree <= other.degree && self.exps.iter().zip(other.exps.iter()).all(|(a, b)| a <= b)
    }

    /// `other / self`, if `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Option<Monomial> {
        if !self.divides(other) {
            return None;
        }
        let mut e = other.exps;
        for (a, b) in e.iter_mut().zip(self.exps.iter()) {
            *a -= b;
        }
        Some(Monomial {
            exps: e,
            degree: other.degree - self.degree,
        })
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        let mut e = [0; MAX_VARS];
        for i in 0..MAX_VARS {
            e[i] = self.exps[i].max(other.exps[i]);
        }
        Monomial {
            exps: e,
            degree: e.iter().sum(),
        }
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.exps
            .iter()
            .zip(other.exps.iter())
            .all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Drops the variable at `var`, shifting later variables down one slot.
    pub fn remove_var(&self, var: usize) -> Monomial {
        let mut e = [0; MAX_VARS];
        let mut j = 0;
        for (i, &x) in self.exps.iter().enumerate() {
            if i != var {
                e[j] = x;
                j += 1;
            }
        }
        Monomial {
            exps: e,
            degree: e.iter().sum(),
        }
    }

    /// Inserts a new variable with exponent `exp` at slot `var`.
    pub fn insert_var(&self, var: usize, exp: u32) -> Monomial {
        assert_eq!(self.exps[MAX_VARS - 1], 0, "no free slot for a new variable");
        let mut e = [0; MAX_VARS];
        let mut j = 0;
        for (i, slot) in e.iter_mut().enumerate() {
            if i == var {
                *slot = exp;
            } else {
                *slot = self.exps[j];
                j += 1;
            }
        }
        Monomial {
            exps: e,
            degree: self.degree + exp,
        }
    }

    pub fn render(&self, names: &[String]) -> String {
        MonomialDisplay { mono: self, names }.to_string()
    }
}

struct MonomialDisplay<'a> {
    mono: &'a Monomial,
    names: &'a [String],
}

impl fmt::Display for MonomialDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.mono.is_one() {
            return write!(f, "1");
        }
        let mut first = true;
        for (i, name) in self.names.iter().enumerate() {
            let e = self.mono.exps[i];
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "{name}")?;
            } else {
                write!(f, "{name}^{e}")?;
            }
        }
        Ok(())
    }
}

/// All monomials of total degree `degree` in `nvars` variables, in
/// lexicographically descending exponent order.
pub fn monomials_of_degree(nvars: usize, degree: u32) -> Vec<Monomial> {
    fn rec(nvars: usize, i: usize, left: u32, cur: &mut [u32; MAX_VARS], out: &mut Vec<Monomial>) {
        if i + 1 == nvars {
            cur[i] = left;
            out.push(Monomial::new(&cur[..nvars]));
            return;
        }
        for e in (0..=left).rev() {
            cur[i] = e;
            rec(nvars, i + 1, left - e, cur, out);
        }
    }
    let mut out = Vec::new();
    if nvars == 0 {
        if degree == 0 {
            out.push(Monomial::one());
        }
        return out;
    }
    rec(nvars, 0, degree, &mut [0; MAX_VARS], &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degree_tracks_exponents() {
        let m = Monomial::new(&[1, 2, 3]);
        assert_eq!(m.degree(), 6);
        let n = m.mul(&Monomial::var(0));
        assert_eq!(n.degree(), 7);
        assert_eq!(m.quotient_of(&n), Some(Monomial::var(0)));
        assert_eq!(n.quotient_of(&m), None);
        assert_eq!(m.lcm(&Monomial::new(&[3, 0, 1])), Monomial::new(&[3, 2, 3]));
    }

    #[test]
    fn insert_and_remove_are_inverse() {
        let m = Monomial::new(&[2, 5]);
        let h = m.insert_var(0, 3);
        assert_eq!(h, Monomial::new(&[3, 2, 5]));
        assert_eq!(h.remove_var(0), m);
    }

    #[test]
    fn degree_pieces_have_binomial_size() {
        for s in 0..8u32 {
            let n = monomials_of_degree(3, s).len() as u32;
            assert_eq!(n, (s + 1) * (s + 2) / 2);
            assert_eq!(monomials_of_degree(2, s).len() as u32, s + 1);
        }
    }

    #[test]
    fn renders_with_names() {
        let names: Vec<String> = ["x", "y", "z"].iter().map(|s| s.to_string()).collect();
        assert_eq!(Monomial::new(&[0, 1, 2]).render(&names), "y*z^2");
        assert_eq!(Monomial::one().render(&names), "1");
    }
}
