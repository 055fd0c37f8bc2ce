use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use super::field::{Coeff, FieldSpec};
use super::monomial::{Monomial, MonomialOrder};
use crate::error::{Error, Result};

/// Ambient polynomial ring: coefficient field, ordered variable names and a
/// monomial order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PolyRing {
    field: FieldSpec,
    vars: Vec<String>,
    order: MonomialOrder,
}

impl PolyRing {
    pub fn new(field: FieldSpec, vars: Vec<String>, order: MonomialOrder) -> Result<Arc<Self>> {
        if vars.is_empty() {
            return Err(Error::Invalid("a polynomial ring needs at least one variable".into()));
        }
        for (i, v) in vars.iter().enumerate() {
            let valid = v
                .chars()
                .next()
                .map(|c| c.is_ascii_alphabetic() || c == '_')
                .unwrap_or(false)
                && v.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
            if !valid {
                return Err(Error::Invalid(format!("invalid variable name `{v}`")));
            }
            if vars[..i].contains(v) {
                return Err(Error::Invalid(format!("duplicate variable `{v}`")));
            }
        }
        if let MonomialOrder::Block(k) = order {
            if k > vars.len() {
                return Err(Error::Invalid(format!("block size {k} exceeds {} variables", vars.len())));
            }
        }
        Ok(Arc::new(PolyRing { field, vars, order }))
    }

    /// Convenience constructor: variables by name, grevlex.
    pub fn with_vars(field: FieldSpec, vars: &[&str]) -> Result<Arc<Self>> {
        Self::new(field, vars.iter().map(|s| s.to_string()).collect(), MonomialOrder::GRevLex)
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn var_names(&self) -> &[String] {
        &self.vars
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    pub fn with_order(&self, order: MonomialOrder) -> Result<Arc<Self>> {
        Self::new(self.field, self.vars.clone(), order)
    }

    /// A name not used by any variable, derived from `base`.
    pub fn fresh_name(&self, base: &str) -> String {
        let mut name = base.to_string();
        let mut k = 0;
        while self.vars.contains(&name) {
            k += 1;
            name = format!("{base}{k}");
        }
        name
    }

    pub fn zero(self: &Arc<Self>) -> Polynomial {
        Polynomial { ring: self.clone(), terms: Vec::new() }
    }

    pub fn constant(self: &Arc<Self>, c: Coeff) -> Polynomial {
        let mut p = self.zero();
        if !c.is_zero() {
            p.terms.push((Monomial::one(self.nvars()), c));
        }
        p
    }

    pub fn one(self: &Arc<Self>) -> Polynomial {
        self.constant(self.field.one())
    }

    pub fn from_i64(self: &Arc<Self>, v: i64) -> Polynomial {
        self.constant(self.field.from_i64(v))
    }

    pub fn var(self: &Arc<Self>, i: usize) -> Polynomial {
        Polynomial {
            ring: self.clone(),
            terms: vec![(Monomial::var(self.nvars(), i), self.field.one())],
        }
    }

    pub fn var_named(self: &Arc<Self>, name: &str) -> Result<Polynomial> {
        self.var_index(name)
            .map(|i| self.var(i))
            .ok_or_else(|| Error::Invalid(format!("unknown variable `{name}`")))
    }

    pub fn monomial(self: &Arc<Self>, m: Monomial, c: Coeff) -> Polynomial {
        let mut p = self.zero();
        if !c.is_zero() {
            p.terms.push((m, c));
        }
        p
    }

    /// Builds a polynomial from unsorted terms, combining duplicates.
    pub fn from_terms(self: &Arc<Self>, terms: Vec<(Monomial, Coeff)>) -> Polynomial {
        let order = self.order;
        let field = self.field;
        let mut terms = terms;
        terms.sort_by(|a, b| order.cmp(&b.0, &a.0));
        let mut out: Vec<(Monomial, Coeff)> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            match out.last_mut() {
                Some((lm, lc)) if *lm == m => *lc = field.add(lc, &c),
                _ => out.push((m, c)),
            }
            if out.last().map(|t| t.1.is_zero()).unwrap_or(false) {
                out.pop();
            }
        }
        out.retain(|t| !t.1.is_zero());
        Polynomial { ring: self.clone(), terms: out }
    }

    pub fn parse(self: &Arc<Self>, text: &str) -> Result<Polynomial> {
        super::parse::parse_polynomial(self, text)
    }
}

/// Polynomial in canonical form: terms sorted by decreasing monomial order,
/// no zero coefficients.
#[derive(Clone, Debug)]
pub struct Polynomial {
    pub(crate) ring: Arc<PolyRing>,
    pub(crate) terms: Vec<(Monomial, Coeff)>,
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        (Arc::ptr_eq(&self.ring, &other.ring) || self.ring == other.ring) && self.terms == other.terms
    }
}

impl Eq for Polynomial {}

impl Polynomial {
    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn terms(&self) -> &[(Monomial, Coeff)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_one())
    }

    /// Nonzero constant.
    pub fn is_unit(&self) -> bool {
        !self.is_zero() && self.is_constant()
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|t| &t.0)
    }

    pub fn leading_coeff(&self) -> Option<&Coeff> {
        self.terms.first().map(|t| &t.1)
    }

    pub fn total_degree(&self) -> Option<u64> {
        self.terms.iter().map(|(m, _)| m.degree()).max()
    }

    pub fn same_ring(&self, other: &Polynomial) -> bool {
        Arc::ptr_eq(&self.ring, &other.ring) || self.ring == other.ring
    }

    pub(crate) fn check_ring(&self, ring: &PolyRing) -> Result<()> {
        if *self.ring == *ring {
            Ok(())
        } else {
            Err(Error::RingMismatch(format!(
                "polynomial `{self}` does not live in {}",
                describe_ring(ring)
            )))
        }
    }

    pub fn scale(&self, c: &Coeff) -> Polynomial {
        let field = self.ring.field();
        if c.is_zero() {
            return self.ring.zero();
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, a)| (m.clone(), field.mul(a, c))).collect(),
        }
    }

    pub fn mul_term(&self, m: &Monomial, c: &Coeff) -> Polynomial {
        let field = self.ring.field();
        if c.is_zero() {
            return self.ring.zero();
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(t, a)| (t.mul(m), field.mul(a, c))).collect(),
        }
    }

    /// Scales to leading coefficient one; zero stays zero.
    pub fn monic(&self) -> Polynomial {
        match self.leading_coeff() {
            Some(c) if !c.is_one() => self.scale(&self.ring.field().inv(c)),
            _ => self.clone(),
        }
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut acc = self.ring.one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub fn derivative(&self, var: usize) -> Polynomial {
        let field = self.ring.field();
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| m.exponents()[var] > 0)
            .map(|(m, c)| {
                let mut e = m.exponents().to_vec();
                let k = e[var];
                e[var] -= 1;
                (Monomial::from_exponents(&e), field.mul(c, &field.from_i64(k as i64)))
            })
            .collect();
        self.ring.from_terms(terms)
    }

    /// Moves the polynomial into `target`: variable `i` becomes variable
    /// `var_map[i]` of the target ring. Both rings must share a field.
    pub fn map_into(&self, target: &Arc<PolyRing>, var_map: &[usize]) -> Polynomial {
        debug_assert_eq!(self.ring.field(), target.field());
        let n = target.nvars();
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut e = vec![0u32; n];
                for (i, &x) in m.exponents().iter().enumerate() {
                    e[var_map[i]] += x;
                }
                (Monomial::from_exponents(&e), c.clone())
            })
            .collect();
        target.from_terms(terms)
    }

    /// Evaluates at a point of the prime field (coordinates as residues).
    pub fn eval_mod(&self, point: &[u32]) -> Coeff {
        let field = self.ring.field();
        let mut acc = field.zero();
        for (m, c) in &self.terms {
            let mut v = c.clone();
            for (i, &e) in m.exponents().iter().enumerate() {
                v = field.mul(&v, &field.pow(&field.from_i64(point[i] as i64), e as u64));
            }
            acc = field.add(&acc, &v);
        }
        acc
    }

    fn combine(&self, other: &Polynomial, negate: bool) -> Polynomial {
        assert!(self.same_ring(other), "ring mismatch in polynomial arithmetic");
        let field = self.ring.field();
        let order = self.ring.order();
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() || j < other.terms.len() {
            let ord = match (self.terms.get(i), other.terms.get(j)) {
                (Some(a), Some(b)) => order.cmp(&a.0, &b.0),
                (Some(_), None) => Ordering::Greater,
                _ => Ordering::Less,
            };
            match ord {
                Ordering::Greater => {
                    out.push(self.terms[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    let (m, c) = &other.terms[j];
                    out.push((m.clone(), if negate { field.neg(c) } else { c.clone() }));
                    j += 1;
                }
                Ordering::Equal => {
                    let b = &other.terms[j].1;
                    let c = if negate {
                        field.sub(&self.terms[i].1, b)
                    } else {
                        field.add(&self.terms[i].1, b)
                    };
                    if !c.is_zero() {
                        out.push((self.terms[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        Polynomial { ring: self.ring.clone(), terms: out }
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.combine(rhs, false)
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.combine(rhs, true)
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.scale(&self.ring.field().from_i64(-1))
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        assert!(self.same_ring(rhs), "ring mismatch in polynomial arithmetic");
        if self.is_zero() || rhs.is_zero() {
            return self.ring.zero();
        }
        let field = self.ring.field();
        let mut terms = Vec::with_capacity(self.terms.len() * rhs.terms.len());
        for (a, x) in &self.terms {
            for (b, y) in &rhs.terms {
                terms.push((a.mul(b), field.mul(x, y)));
            }
        }
        self.ring.from_terms(terms)
    }
}

pub(crate) fn describe_ring(ring: &PolyRing) -> String {
    format!("{}[{}] ({})", ring.field(), ring.var_names().join(","), ring.order().name())
}

impl fmt::Display for PolyRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", describe_ring(self))
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let p = self.ring.field().characteristic();
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let (neg, mag) = c.signed_repr(p);
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            let mut factors = Vec::new();
            for (i, &e) in m.exponents().iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(self.ring.vars[i].clone()),
                    _ => factors.push(format!("{}^{}", self.ring.vars[i], e)),
                }
            }
            if factors.is_empty() {
                write!(f, "{mag}")?;
            } else {
                if mag != "1" {
                    write!(f, "{mag}*")?;
                }
                write!(f, "{}", factors.join("*"))?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring() -> Arc<PolyRing> {
        PolyRing::with_vars(FieldSpec::prime(5).unwrap(), &["x", "y"]).unwrap()
    }

    #[test]
    fn canonical_display() {
        let r = ring();
        let x = r.var(0);
        let y = r.var(1);
        let p = &(&(&x * &x) - &y) + &r.from_i64(3);
        assert_eq!(p.to_string(), "x^2 - y - 2");
        assert_eq!(r.zero().to_string(), "0");
    }

    #[test]
    fn arithmetic_cancels() {
        let r = ring();
        let x = r.var(0);
        let y = r.var(1);
        let a = &x + &y;
        let b = &a * &a;
        let c = &b - &(&(&x * &x) + &(&y * &y));
        assert_eq!(c, (&x * &y).scale(&r.field().from_i64(2)));
        assert!((&a - &a).is_zero());
    }

    #[test]
    fn derivative_in_characteristic_p() {
        let r = ring();
        let x = r.var(0);
        assert!(x.pow(5).derivative(0).is_zero());
        assert_eq!(x.pow(3).derivative(0).to_string(), "-2*x^2");
    }

    #[test]
    fn rejects_bad_rings() {
        let f = FieldSpec::prime(5).unwrap();
        assert!(PolyRing::with_vars(f, &[]).is_err());
        assert!(PolyRing::with_vars(f, &["x", "x"]).is_err());
        assert!(PolyRing::with_vars(f, &["1x"]).is_err());
    }
}
