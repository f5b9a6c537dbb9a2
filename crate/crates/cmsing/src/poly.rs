//! Sparse multivariate polynomials over an exact coefficient field.
//!
//! Variables are named and carry positive integer grading weights; the
//! weighted degree of a term is the dot product of its exponent vector
//! with the weights. No zero coefficients are ever stored.

use crate::scalar::{Coeff, Rat};
use crate::{Error, Result};
use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

/// Ordered variable table shared by all polynomials of one ring.
#[derive(Debug, PartialEq, Eq)]
pub struct VarTable {
    names: Vec<String>,
    weights: Vec<u32>,
}

impl VarTable {
    pub fn new(vars: &[(&str, u32)]) -> Arc<Self> {
        assert!(vars.iter().all(|&(_, w)| w > 0), "weights must be positive");
        Arc::new(VarTable {
            names: vars.iter().map(|&(n, _)| n.to_string()).collect(),
            weights: vars.iter().map(|&(_, w)| w).collect(),
        })
    }

    pub fn unit_weights(names: &[&str]) -> Arc<Self> {
        let vars: Vec<(&str, u32)> = names.iter().map(|&n| (n, 1)).collect();
        VarTable::new(&vars)
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn weight(&self, i: usize) -> u32 {
        self.weights[i]
    }

    pub fn index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn weights(&self) -> &[u32] {
        &self.weights
    }
}

pub type Exponents = Vec<u32>;

/// Monomial order kinds. `1` is minimal for every kind and each order is
/// compatible with multiplication.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OrderKind {
    /// Total degree, ties by reverse lexicographic comparison.
    DegRevLex,
    Lex,
    /// Weighted degree first, ties by reverse lexicographic comparison.
    WeightedRevLex,
}

#[derive(Debug, Clone)]
pub struct MonomialOrder {
    pub kind: OrderKind,
    /// Tie-break permutation: position k holds the variable index treated
    /// as the k-th most significant. Identity when `None`.
    pub perm: Option<Vec<usize>>,
}

impl MonomialOrder {
    pub fn degrevlex() -> Self {
        MonomialOrder {
            kind: OrderKind::DegRevLex,
            perm: None,
        }
    }

    pub fn lex() -> Self {
        MonomialOrder {
            kind: OrderKind::Lex,
            perm: None,
        }
    }

    pub fn weighted_revlex() -> Self {
        MonomialOrder {
            kind: OrderKind::WeightedRevLex,
            perm: None,
        }
    }

    fn exp_at(&self, e: &[u32], k: usize) -> u32 {
        match &self.perm {
            Some(p) => e[p[k]],
            None => e[k],
        }
    }

    pub fn cmp(&self, a: &[u32], b: &[u32], table: &VarTable) -> Ordering {
        debug_assert_eq!(a.len(), b.len());
        let n = a.len();
        match self.kind {
            OrderKind::Lex => {
                for k in 0..n {
                    match self.exp_at(a, k).cmp(&self.exp_at(b, k)) {
                        Ordering::Equal => {}
                        o => return o,
                    }
                }
                Ordering::Equal
            }
            OrderKind::DegRevLex | OrderKind::WeightedRevLex => {
                let (da, db) = match self.kind {
                    OrderKind::DegRevLex => (
                        a.iter().sum::<u32>() as u64,
                        b.iter().sum::<u32>() as u64,
                    ),
                    _ => (weighted_degree(a, table), weighted_degree(b, table)),
                };
                match da.cmp(&db) {
                    Ordering::Equal => {}
                    o => return o,
                }
                // Reverse lexicographic: the last variable with differing
                // exponent decides, smaller exponent wins.
                for k in (0..n).rev() {
                    match self.exp_at(a, k).cmp(&self.exp_at(b, k)) {
                        Ordering::Equal => {}
                        Ordering::Less => return Ordering::Greater,
                        Ordering::Greater => return Ordering::Less,
                    }
                }
                Ordering::Equal
            }
        }
    }
}

pub fn weighted_degree(e: &[u32], table: &VarTable) -> u64 {
    e.iter()
        .zip(table.weights())
        .map(|(&x, &w)| x as u64 * w as u64)
        .sum()
}

/// Sparse multivariate polynomial. Terms are keyed by exponent vector.
#[derive(Clone, Debug)]
pub struct MultiPoly<F: Coeff> {
    vars: Arc<VarTable>,
    terms: BTreeMap<Exponents, F>,
}

impl<F: Coeff> MultiPoly<F> {
    pub fn zero(vars: &Arc<VarTable>) -> Self {
        MultiPoly {
            vars: vars.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(vars: &Arc<VarTable>, c: F) -> Self {
        let mut p = Self::zero(vars);
        if !c.is_zero() {
            p.terms.insert(vec![0; vars.len()], c);
        }
        p
    }

    pub fn one(vars: &Arc<VarTable>) -> Self {
        Self::constant(vars, F::one())
    }

    pub fn var(vars: &Arc<VarTable>, name: &str) -> Self {
        let i = vars
            .index(name)
            .unwrap_or_else(|| panic!("unknown variable `{}`", name));
        Self::var_index(vars, i)
    }

    pub fn var_index(vars: &Arc<VarTable>, i: usize) -> Self {
        let mut e = vec![0; vars.len()];
        e[i] = 1;
        let mut p = Self::zero(vars);
        p.terms.insert(e, F::one());
        p
    }

    pub fn int(vars: &Arc<VarTable>, n: i64) -> Self {
        Self::constant(vars, F::from_int(n))
    }

    pub fn from_terms(vars: &Arc<VarTable>, terms: Vec<(Exponents, F)>) -> Self {
        let mut p = Self::zero(vars);
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    pub fn vars(&self) -> &Arc<VarTable> {
        &self.vars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &F)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .iter()
                .next()
                .map(|(e, c)| e.iter().all(|&x| x == 0) && *c == F::one())
                .unwrap_or(false)
    }

    fn add_term(&mut self, e: Exponents, c: F) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get().add(&c);
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    fn same_ring(&self, o: &Self) {
        assert!(
            Arc::ptr_eq(&self.vars, &o.vars) || self.vars == o.vars,
            "variable table mismatch"
        );
    }

    pub fn add(&self, o: &Self) -> Self {
        self.same_ring(o);
        let mut out = self.clone();
        for (e, c) in &o.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Self {
        MultiPoly {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.clone(), c.neg()))
                .collect(),
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        self.same_ring(o);
        let mut out = Self::zero(&self.vars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &o.terms {
                let e: Exponents = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                out.add_term(e, ca.mul(cb));
            }
        }
        out
    }

    pub fn scale(&self, c: &F) -> Self {
        if c.is_zero() {
            return Self::zero(&self.vars);
        }
        MultiPoly {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .map(|(e, k)| (e.clone(), k.mul(c)))
                .collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one(&self.vars);
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }

    /// Multiply by a single monomial times a coefficient.
    pub fn mul_term(&self, e: &[u32], c: &F) -> Self {
        let mut out = Self::zero(&self.vars);
        for (ea, ca) in &self.terms {
            let exp: Exponents = ea.iter().zip(e).map(|(x, y)| x + y).collect();
            out.add_term(exp, ca.mul(c));
        }
        out
    }

    /// Maximal weighted degree over the terms; `None` for the zero
    /// polynomial.
    pub fn weighted_degree(&self) -> Option<u64> {
        self.terms
            .keys()
            .map(|e| weighted_degree(e, &self.vars))
            .max()
    }

    /// Total (unweighted) degree in the named variable.
    pub fn degree_in(&self, name: &str) -> u32 {
        let i = self.vars.index(name).expect("unknown variable");
        self.terms.keys().map(|e| e[i]).max().unwrap_or(0)
    }

    /// Sum of exponents over a set of variable indices, maximised over
    /// terms.
    pub fn degree_over(&self, indices: &[usize]) -> u32 {
        self.terms
            .keys()
            .map(|e| indices.iter().map(|&i| e[i]).sum())
            .max()
            .unwrap_or(0)
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(|e| weighted_degree(e, &self.vars));
        match degs.next() {
            None => true,
            Some(d0) => degs.all(|d| d == d0),
        }
    }

    /// The part of this polynomial of exact weighted degree `n`.
    pub fn weighted_component(&self, n: u64) -> Self {
        MultiPoly {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| weighted_degree(e, &self.vars) == n)
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
        }
    }

    /// Drop all terms of weighted degree strictly above `n`.
    pub fn truncated(&self, n: u64) -> Self {
        MultiPoly {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| weighted_degree(e, &self.vars) <= n)
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn coefficient(&self, e: &[u32]) -> F {
        self.terms.get(e).cloned().unwrap_or_else(F::zero)
    }

    pub fn constant_term(&self) -> F {
        self.coefficient(&vec![0; self.vars.len()])
    }

    /// Image of this polynomial under the ring homomorphism sending each
    /// variable to the bound polynomial. Every variable occurring with a
    /// positive exponent must be bound; all targets must share one ring.
    pub fn substitute(&self, binding: &BTreeMap<String, MultiPoly<F>>) -> Result<MultiPoly<F>> {
        let target = match binding.values().next() {
            Some(p) => p.vars.clone(),
            None => {
                // No binding: only legal for constants.
                if self.terms.keys().all(|e| e.iter().all(|&x| x == 0)) {
                    return Ok(self.clone());
                }
                return Err(Error::UnboundVariable("<empty binding>".into()));
            }
        };
        for p in binding.values() {
            if !(Arc::ptr_eq(&p.vars, &target) || p.vars == target) {
                return Err(Error::VarMismatch(
                    "substitution targets live in different rings".into(),
                ));
            }
        }
        let mut images: Vec<Option<&MultiPoly<F>>> = Vec::with_capacity(self.vars.len());
        for i in 0..self.vars.len() {
            images.push(binding.get(self.vars.name(i)));
        }
        // Cache powers of each bound image.
        let mut powers: Vec<Vec<MultiPoly<F>>> = (0..self.vars.len())
            .map(|i| match images[i] {
                Some(_) => vec![MultiPoly::one(&target)],
                None => vec![],
            })
            .collect();
        let mut out = MultiPoly::zero(&target);
        for (e, c) in &self.terms {
            let mut acc = MultiPoly::constant(&target, c.clone());
            for (i, &x) in e.iter().enumerate() {
                if x == 0 {
                    continue;
                }
                let img = images[i].ok_or_else(|| {
                    Error::UnboundVariable(self.vars.name(i).to_string())
                })?;
                while powers[i].len() <= x as usize {
                    let last = powers[i].last().unwrap().clone();
                    powers[i].push(last.mul(img));
                }
                acc = acc.mul(&powers[i][x as usize]);
            }
            out = out.add(&acc);
        }
        Ok(out)
    }

    /// Substitution that keeps the ambient ring: variables not bound are
    /// mapped to themselves.
    pub fn substitute_partial(
        &self,
        binding: &BTreeMap<String, MultiPoly<F>>,
    ) -> Result<MultiPoly<F>> {
        let mut full = binding.clone();
        for name in self.vars.names() {
            full.entry(name.clone())
                .or_insert_with(|| MultiPoly::var(&self.vars, name));
        }
        self.substitute(&full)
    }

    /// Formal partial derivative with respect to the named variable.
    pub fn partial(&self, name: &str) -> Self {
        let i = self.vars.index(name).expect("unknown variable");
        let mut out = Self::zero(&self.vars);
        for (e, c) in &self.terms {
            if e[i] == 0 {
                continue;
            }
            let mut e2 = e.clone();
            e2[i] -= 1;
            out.add_term(e2, c.mul(&F::from_int(e[i] as i64)));
        }
        out
    }

    /// Leading term under the given monomial order.
    pub fn leading(&self, order: &MonomialOrder) -> Option<(&Exponents, &F)> {
        self.terms
            .iter()
            .max_by(|(a, _), (b, _)| order.cmp(a, b, &self.vars))
    }

    /// Canonical string form: terms sorted descending under the order,
    /// coefficients and exponents printed exactly.
    pub fn canonical_string(&self, order: &MonomialOrder) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut terms: Vec<(&Exponents, &F)> = self.terms.iter().collect();
        terms.sort_by(|(a, _), (b, _)| order.cmp(b, a, &self.vars));
        let mut out = String::new();
        for (i, (e, c)) in terms.iter().enumerate() {
            if i > 0 {
                out.push_str(" + ");
            }
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|&(_, &x)| x > 0)
                .map(|(j, &x)| {
                    if x == 1 {
                        self.vars.name(j).to_string()
                    } else {
                        format!("{}^{}", self.vars.name(j), x)
                    }
                })
                .collect();
            if mono.is_empty() {
                out.push_str(&format!("{}", c));
            } else if format!("{}", c) == "1" {
                out.push_str(&mono.join("*"));
            } else {
                out.push_str(&format!("({})*{}", c, mono.join("*")));
            }
        }
        out
    }
}

impl<F: Coeff> PartialEq for MultiPoly<F> {
    fn eq(&self, other: &Self) -> bool {
        self.vars == other.vars && self.terms == other.terms
    }
}

impl<F: Coeff> fmt::Display for MultiPoly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.canonical_string(&MonomialOrder::degrevlex()))
    }
}

/// Convenience: parse-free construction over the rationals from integer
/// coefficient term lists, used heavily in tests.
pub fn qpoly(vars: &Arc<VarTable>, terms: &[(i64, &[u32])]) -> MultiPoly<Rat> {
    MultiPoly::from_terms(
        vars,
        terms
            .iter()
            .map(|&(c, e)| (e.to_vec(), crate::scalar::rat(c)))
            .collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    fn xy() -> Arc<VarTable> {
        VarTable::new(&[("x", 1), ("y", 2)])
    }

    #[test]
    fn arithmetic_and_invariants() {
        let v = xy();
        let x = MultiPoly::<Rat>::var(&v, "x");
        let y = MultiPoly::<Rat>::var(&v, "y");
        let p = x.add(&y).mul(&x.sub(&y));
        let q = x.mul(&x).sub(&y.mul(&y));
        assert_eq!(p, q);
        assert!(p.sub(&q).is_zero());
        // no zero coefficients survive
        assert_eq!(p.num_terms(), 2);
        assert_eq!(p.weighted_degree(), Some(4));
        assert!(!p.is_homogeneous());
        assert!(x.mul(&x).is_homogeneous());
    }

    #[test]
    fn substitution_is_a_homomorphism() {
        let v = xy();
        let w = VarTable::unit_weights(&["u", "v"]);
        let x = MultiPoly::<Rat>::var(&v, "x");
        let y = MultiPoly::<Rat>::var(&v, "y");
        let p = x.mul(&x).add(&y);
        let q = x.add(&y.scale(&rat(3)));
        let mut b = BTreeMap::new();
        let u = MultiPoly::<Rat>::var(&w, "u");
        let vv = MultiPoly::<Rat>::var(&w, "v");
        b.insert("x".to_string(), u.add(&vv));
        b.insert("y".to_string(), u.mul(&vv));
        let lhs = p.mul(&q).substitute(&b).unwrap();
        let rhs = p.substitute(&b).unwrap().mul(&q.substitute(&b).unwrap());
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn substitution_reports_unbound_variables() {
        let v = xy();
        let w = VarTable::unit_weights(&["u"]);
        let p = MultiPoly::<Rat>::var(&v, "x").add(&MultiPoly::var(&v, "y"));
        let mut b = BTreeMap::new();
        b.insert("x".to_string(), MultiPoly::<Rat>::var(&w, "u"));
        assert!(matches!(
            p.substitute(&b),
            Err(crate::Error::UnboundVariable(_))
        ));
    }

    #[test]
    fn degrevlex_orders_like_the_textbook() {
        let v = VarTable::unit_weights(&["x", "y", "z"]);
        let o = MonomialOrder::degrevlex();
        // x^2 > xy > y^2 > xz > yz > z^2 in degrevlex with x > y > z
        let seq: Vec<Vec<u32>> = vec![
            vec![2, 0, 0],
            vec![1, 1, 0],
            vec![0, 2, 0],
            vec![1, 0, 1],
            vec![0, 1, 1],
            vec![0, 0, 2],
        ];
        for w in seq.windows(2) {
            assert_eq!(o.cmp(&w[0], &w[1], &v), Ordering::Greater);
        }
        // 1 is minimal
        assert_eq!(o.cmp(&[0, 0, 0], &[1, 0, 0], &v), Ordering::Less);
    }
}
