//! Sparse multivariate polynomials over the rationals.
//!
//! A [`Polynomial`] stands for a germ of a power series at the origin. When
//! `jet_order` is set the polynomial is only meaningful modulo monomials of
//! total degree above that order, and every operation that could produce such
//! monomials drops them.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::linalg;

/// Rational coefficient.
pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn q_frac(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// Shared, ordered list of variable names.
pub type Vars = Arc<[String]>;

pub fn vars<S: AsRef<str>>(names: &[S]) -> Vars {
    names.iter().map(|s| s.as_ref().to_string()).collect()
}

/// The standard coordinates of a threefold hypersurface germ in C^4.
pub fn xyzt() -> Vars {
    vars(&["x", "y", "z", "t"])
}

/// A non-negative integer or infinity. Used for multiplicities and weights,
/// where the zero series has order infinity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Degree {
    Finite(u32),
    Infinity,
}

impl Degree {
    pub fn finite(self) -> Option<u32> {
        match self {
            Degree::Finite(d) => Some(d),
            Degree::Infinity => None,
        }
    }

    pub fn is_infinite(self) -> bool {
        matches!(self, Degree::Infinity)
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Degree::Finite(d) => write!(f, "{d}"),
            Degree::Infinity => write!(f, "infinity"),
        }
    }
}

/// Exponent vector, ordered graded-lexicographically.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(n: usize) -> Self {
        Monomial(vec![0; n])
    }

    pub fn var(n: usize, i: usize) -> Self {
        let mut e = vec![0; n];
        e[i] = 1;
        Monomial(e)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn weighted_degree(&self, w: &[u32]) -> u32 {
        self.0.iter().zip(w).map(|(e, w)| e * w).sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `other / self`, assuming `self` divides `other`.
    pub fn quotient(&self, other: &Monomial) -> Monomial {
        Monomial(other.0.iter().zip(&self.0).map(|(a, b)| a - b).collect())
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn arity(&self) -> usize {
        self.0.len()
    }

    /// Render using the given variable names, e.g. `x*t^2`; `1` for the unit.
    pub fn render(&self, names: &[String]) -> String {
        let parts: Vec<String> = self
            .0
            .iter()
            .zip(names)
            .filter(|(e, _)| **e > 0)
            .map(|(e, n)| if *e == 1 { n.clone() } else { format!("{n}^{e}") })
            .collect();
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("*")
        }
    }

    /// All monomials in `n` variables of total degree exactly `d`, ascending.
    pub fn all_of_degree(n: usize, d: u32) -> Vec<Monomial> {
        let mut out = Vec::new();
        let mut cur = vec![0; n];
        fill_degree(&mut cur, 0, d, &mut out);
        out.sort();
        out
    }

    /// All monomials of the given weighted degree, ascending.
    pub fn all_of_weight(w: &[u32], d: u32) -> Vec<Monomial> {
        let mut out = Vec::new();
        let mut cur = vec![0; w.len()];
        fill_weight(&mut cur, w, 0, d, &mut out);
        out.sort();
        out
    }
}

fn fill_degree(cur: &mut Vec<u32>, i: usize, left: u32, out: &mut Vec<Monomial>) {
    if i + 1 == cur.len() {
        cur[i] = left;
        out.push(Monomial(cur.clone()));
        return;
    }
    if cur.is_empty() {
        if left == 0 {
            out.push(Monomial(Vec::new()));
        }
        return;
    }
    for e in 0..=left {
        cur[i] = e;
        fill_degree(cur, i + 1, left - e, out);
    }
}

fn fill_weight(cur: &mut Vec<u32>, w: &[u32], i: usize, left: u32, out: &mut Vec<Monomial>) {
    if i == cur.len() {
        if left == 0 {
            out.push(Monomial(cur.clone()));
        }
        return;
    }
    let mut e = 0;
    while e * w[i] <= left {
        cur[i] = e;
        fill_weight(cur, w, i + 1, left - e * w[i], out);
        e += 1;
    }
    cur[i] = 0;
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Positive integer weights attached to named variables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightVector {
    entries: Vec<(String, u32)>,
}

impl WeightVector {
    pub fn new<S: Into<String>>(entries: impl IntoIterator<Item = (S, u32)>) -> Result<Self> {
        let entries: Vec<(String, u32)> = entries.into_iter().map(|(n, w)| (n.into(), w)).collect();
        if let Some((n, _)) = entries.iter().find(|(_, w)| *w == 0) {
            return Err(Error::ZeroWeight(n.clone()));
        }
        Ok(WeightVector { entries })
    }

    /// Weights matched positionally to `names`.
    pub fn positional<S: AsRef<str>>(names: &[S], weights: &[u32]) -> Result<Self> {
        if names.len() != weights.len() {
            return Err(Error::ArityMismatch { expected: names.len(), found: weights.len() });
        }
        Self::new(names.iter().map(|n| n.as_ref().to_string()).zip(weights.iter().copied()))
    }

    /// Weights for x, y, z, t (or a prefix of them).
    pub fn xyzt(weights: &[u32]) -> Result<Self> {
        let names = ["x", "y", "z", "t"];
        if weights.len() > 4 {
            return Err(Error::ArityMismatch { expected: 4, found: weights.len() });
        }
        Self::positional(&names[..weights.len()], weights)
    }

    /// All weights equal to one (standard grading).
    pub fn standard(names: &[String]) -> Self {
        WeightVector { entries: names.iter().map(|n| (n.clone(), 1)).collect() }
    }

    pub fn get(&self, name: &str) -> Option<u32> {
        self.entries.iter().find(|(n, _)| n == name).map(|(_, w)| *w)
    }

    pub fn entries(&self) -> &[(String, u32)] {
        &self.entries
    }

    pub fn values(&self) -> Vec<u32> {
        self.entries.iter().map(|(_, w)| *w).collect()
    }

    pub fn sum(&self) -> u32 {
        self.entries.iter().map(|(_, w)| w).sum()
    }

    pub fn max(&self) -> u32 {
        self.entries.iter().map(|(_, w)| *w).max().unwrap_or(1)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Weights resolved against an ordered variable list.
    pub fn resolve(&self, names: &[String]) -> Result<Vec<u32>> {
        names
            .iter()
            .map(|n| self.get(n).ok_or_else(|| Error::MissingWeight(n.clone())))
            .collect()
    }
}

impl fmt::Display for WeightVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.entries.iter().map(|(_, w)| w.to_string()).collect();
        write!(f, "({})", parts.join(", "))
    }
}

impl Serialize for WeightVector {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let map: BTreeMap<&str, u32> = self.entries.iter().map(|(n, w)| (n.as_str(), *w)).collect();
        map.serialize(s)
    }
}

#[derive(Debug, Clone)]
pub struct Polynomial {
    vars: Vars,
    terms: BTreeMap<Monomial, Q>,
    jet_order: Option<u32>,
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        self.vars == other.vars && self.terms == other.terms
    }
}

impl Eq for Polynomial {}

impl Polynomial {
    pub fn zero(vars: Vars) -> Self {
        Polynomial { vars, terms: BTreeMap::new(), jet_order: None }
    }

    pub fn constant(vars: Vars, c: Q) -> Self {
        let n = vars.len();
        Self::monomial(vars, Monomial::one(n), c)
    }

    pub fn monomial(vars: Vars, m: Monomial, c: Q) -> Self {
        assert_eq!(m.arity(), vars.len(), "monomial arity");
        let mut p = Self::zero(vars);
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    pub fn var(vars: Vars, name: &str) -> Result<Self> {
        let i = vars
            .iter()
            .position(|v| v == name)
            .ok_or_else(|| Error::MissingWeight(name.to_string()))?;
        let n = vars.len();
        Ok(Self::monomial(vars, Monomial::var(n, i), Q::one()))
    }

    pub fn var_at(vars: Vars, i: usize) -> Self {
        let n = vars.len();
        Self::monomial(vars, Monomial::var(n, i), Q::one())
    }

    pub fn from_terms(vars: Vars, terms: impl IntoIterator<Item = (Monomial, Q)>) -> Self {
        let mut p = Self::zero(vars);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    /// Adds `c * m` in place, keeping the no-zero-coefficient invariant.
    pub fn add_term(&mut self, m: Monomial, c: Q) {
        assert_eq!(m.arity(), self.vars.len(), "monomial arity");
        if c.is_zero() {
            return;
        }
        if let Some(n) = self.jet_order {
            if m.degree() > n {
                return;
            }
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = e.get() + c;
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    pub fn vars(&self) -> &Vars {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    pub fn jet_order(&self) -> Option<u32> {
        self.jet_order
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Q)> + '_ {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> Q {
        self.terms.get(m).cloned().unwrap_or_else(Q::zero)
    }

    /// Coefficient of the monomial given by exponents.
    pub fn coeff_of(&self, exps: &[u32]) -> Q {
        self.coeff(&Monomial(exps.to_vec()))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn constant_term(&self) -> Q {
        self.coeff(&Monomial::one(self.nvars()))
    }

    /// Lowest total degree of a stored term.
    pub fn multiplicity(&self) -> Degree {
        self.terms
            .keys()
            .map(Monomial::degree)
            .min()
            .map_or(Degree::Infinity, Degree::Finite)
    }

    /// Lowest weighted degree of a stored term.
    pub fn weight(&self, w: &WeightVector) -> Result<Degree> {
        let wv = self.used_weights(w)?;
        Ok(self
            .terms
            .keys()
            .map(|m| m.weighted_degree(&wv))
            .min()
            .map_or(Degree::Infinity, Degree::Finite))
    }

    /// Weights for every variable; only variables actually occurring need one.
    fn used_weights(&self, w: &WeightVector) -> Result<Vec<u32>> {
        let used = self.used_variables();
        self.vars
            .iter()
            .enumerate()
            .map(|(i, n)| match w.get(n) {
                Some(x) => Ok(x),
                None if !used[i] => Ok(1),
                None => Err(Error::MissingWeight(n.clone())),
            })
            .collect()
    }

    pub fn used_variables(&self) -> Vec<bool> {
        let mut used = vec![false; self.nvars()];
        for m in self.terms.keys() {
            for (u, e) in used.iter_mut().zip(&m.0) {
                *u |= *e > 0;
            }
        }
        used
    }

    /// Sum of the terms of weighted degree exactly `d`.
    pub fn quasihomogeneous_part(&self, w: &WeightVector, d: u32) -> Result<Polynomial> {
        let wv = self.used_weights(w)?;
        Ok(self.filter(|m| m.weighted_degree(&wv) == d))
    }

    pub fn homogeneous_part(&self, d: u32) -> Polynomial {
        self.filter(|m| m.degree() == d)
    }

    /// The least-weight nonzero quasihomogeneous part.
    pub fn leading_part(&self, w: &WeightVector) -> Result<Polynomial> {
        match self.weight(w)? {
            Degree::Finite(d) => self.quasihomogeneous_part(w, d),
            Degree::Infinity => Ok(Polynomial::zero(self.vars.clone())),
        }
    }

    pub fn filter(&self, keep: impl Fn(&Monomial) -> bool) -> Polynomial {
        Polynomial {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| keep(m))
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
            jet_order: self.jet_order,
        }
    }

    /// Drops all terms of total degree above `n` and marks the result as an
    /// `n`-jet.
    pub fn truncate(&self, n: u32) -> Polynomial {
        let mut p = self.filter(|m| m.degree() <= n);
        p.jet_order = Some(self.jet_order.map_or(n, |j| j.min(n)));
        p
    }

    /// Forgets the jet order without changing terms.
    pub fn without_jet_order(mut self) -> Polynomial {
        self.jet_order = None;
        self
    }

    pub fn scale(&self, c: &Q) -> Polynomial {
        if c.is_zero() {
            let mut z = Polynomial::zero(self.vars.clone());
            z.jet_order = self.jet_order;
            return z;
        }
        Polynomial {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect(),
            jet_order: self.jet_order,
        }
    }

    /// Product, dropping terms above `jet` (and above either factor's jet order).
    pub fn mul_jet(&self, other: &Polynomial, jet: Option<u32>) -> Polynomial {
        assert_eq!(self.vars, other.vars, "polynomials live in different rings");
        let jet = min_opt(min_opt(self.jet_order, other.jet_order), jet);
        let mut acc: BTreeMap<Monomial, Q> = BTreeMap::new();
        for (ma, ca) in &self.terms {
            let da = ma.degree();
            for (mb, cb) in &other.terms {
                if let Some(n) = jet {
                    if da + mb.degree() > n {
                        continue;
                    }
                }
                let m = ma.mul(mb);
                let c = ca * cb;
                let e = acc.entry(m).or_insert_with(Q::zero);
                *e += c;
            }
        }
        acc.retain(|_, c| !c.is_zero());
        Polynomial { vars: self.vars.clone(), terms: acc, jet_order: jet }
    }

    pub fn pow_jet(&self, k: u32, jet: Option<u32>) -> Polynomial {
        let mut result = Polynomial::constant(self.vars.clone(), Q::one());
        result.jet_order = jet;
        for _ in 0..k {
            result = result.mul_jet(self, jet);
        }
        result
    }

    pub fn pow(&self, k: u32) -> Polynomial {
        self.pow_jet(k, self.jet_order)
    }

    pub fn derivative(&self, i: usize) -> Polynomial {
        let mut out = Polynomial::zero(self.vars.clone());
        out.jet_order = self.jet_order.map(|n| n.saturating_sub(1));
        for (m, c) in &self.terms {
            let e = m.0[i];
            if e == 0 {
                continue;
            }
            let mut d = m.clone();
            d.0[i] -= 1;
            out.add_term(d, c * q(e as i64));
        }
        out
    }

    /// Partial derivatives in variable order.
    pub fn jacobian_generators(&self) -> Vec<Polynomial> {
        (0..self.nvars()).map(|i| self.derivative(i)).collect()
    }

    /// The symmetric matrix `M` with quadratic part equal to `x^T M x`.
    pub fn quadratic_matrix(&self) -> Vec<Vec<Q>> {
        let n = self.nvars();
        let mut m = vec![vec![Q::zero(); n]; n];
        for (mono, c) in &self.terms {
            if mono.degree() != 2 {
                continue;
            }
            let idx: Vec<usize> = (0..n).filter(|&i| mono.0[i] > 0).collect();
            match idx.as_slice() {
                [i] => m[*i][*i] = c.clone(),
                [i, j] => {
                    let half = c / q(2);
                    m[*i][*j] = half.clone();
                    m[*j][*i] = half;
                }
                _ => unreachable!(),
            }
        }
        m
    }

    pub fn quadratic_rank(&self) -> usize {
        linalg::rank(self.quadratic_matrix())
    }

    /// Exact division by `var^k`.
    pub fn div_var_pow(&self, i: usize, k: u32) -> Result<Polynomial> {
        let mut out = Polynomial::zero(self.vars.clone());
        out.jet_order = self.jet_order.map(|n| n.saturating_sub(k));
        for (m, c) in &self.terms {
            if m.0[i] < k {
                return Err(Error::InexactDivision(format!(
                    "{} by {}^{}",
                    self, self.vars[i], k
                )));
            }
            let mut d = m.clone();
            d.0[i] -= k;
            out.add_term(d, c.clone());
        }
        Ok(out)
    }

    /// Leading term in graded-lex order.
    pub fn leading_term(&self) -> Option<(&Monomial, &Q)> {
        self.terms.iter().next_back()
    }

    /// Exact quotient `self / d` in the polynomial ring, if it exists.
    pub fn div_exact(&self, d: &Polynomial) -> Option<Polynomial> {
        assert_eq!(self.vars, d.vars, "polynomials live in different rings");
        let (lm, lc) = d.leading_term()?;
        let (lm, lc) = (lm.clone(), lc.clone());
        let mut rem = self.clone().without_jet_order();
        let mut quot = Polynomial::zero(self.vars.clone());
        while let Some((m, c)) = rem.leading_term() {
            if !lm.divides(m) {
                return None;
            }
            let qm = lm.quotient(m);
            let qc = c / &lc;
            let step = Polynomial::monomial(self.vars.clone(), qm, qc);
            rem = &rem - &step.mul_jet(d, None);
            quot = &quot + &step;
        }
        Some(quot)
    }

    /// Re-expresses the polynomial over another variable list. Every variable
    /// that occurs must be present in `target`.
    pub fn embed(&self, target: &Vars) -> Result<Polynomial> {
        let map: Vec<Option<usize>> = self
            .vars
            .iter()
            .map(|n| target.iter().position(|t| t == n))
            .collect();
        let used = self.used_variables();
        for (i, slot) in map.iter().enumerate() {
            if slot.is_none() && used[i] {
                return Err(Error::UnsupportedShape(format!(
                    "variable `{}` is not in the target ring",
                    self.vars[i]
                )));
            }
        }
        let mut out = Polynomial::zero(target.clone());
        out.jet_order = self.jet_order;
        for (m, c) in &self.terms {
            let mut e = vec![0; target.len()];
            for (i, slot) in map.iter().enumerate() {
                if let Some(j) = slot {
                    e[*j] = m.0[i];
                }
            }
            out.add_term(Monomial(e), c.clone());
        }
        Ok(out)
    }

    /// Same terms, variables renamed positionally.
    pub fn rename(&self, names: Vars) -> Polynomial {
        assert_eq!(names.len(), self.nvars(), "rename arity");
        Polynomial { vars: names, terms: self.terms.clone(), jet_order: self.jet_order }
    }

    pub fn map_coeffs(&self, f: impl Fn(&Q) -> Q) -> Polynomial {
        let mut out = Polynomial::zero(self.vars.clone());
        out.jet_order = self.jet_order;
        for (m, c) in &self.terms {
            out.add_term(m.clone(), f(c));
        }
        out
    }

    /// Same support, every coefficient replaced by one.
    pub fn support_form(&self) -> Polynomial {
        self.map_coeffs(|_| Q::one())
    }

    /// Substitutes polynomials (in a common ring) for every variable,
    /// truncating at `jet`.
    pub fn compose(&self, images: &[Polynomial], jet: Option<u32>) -> Polynomial {
        assert_eq!(images.len(), self.nvars(), "one image per variable");
        let ring = images
            .first()
            .map(|p| p.vars.clone())
            .unwrap_or_else(|| self.vars.clone());
        let mut powers: Vec<Vec<Polynomial>> = Vec::with_capacity(images.len());
        for (i, img) in images.iter().enumerate() {
            let maxe = self.terms.keys().map(|m| m.0[i]).max().unwrap_or(0);
            let mut pw = vec![{
                let mut one = Polynomial::constant(ring.clone(), Q::one());
                one.jet_order = jet;
                one
            }];
            for k in 1..=maxe as usize {
                let next = pw[k - 1].mul_jet(img, jet);
                pw.push(next);
            }
            powers.push(pw);
        }
        let mut out = Polynomial::zero(ring.clone());
        out.jet_order = jet;
        for (m, c) in &self.terms {
            let mut t = Polynomial::constant(ring.clone(), c.clone());
            t.jet_order = jet;
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    t = t.mul_jet(&powers[i][e as usize], jet);
                }
                if t.is_zero() {
                    break;
                }
            }
            for (mm, cc) in t.terms {
                out.add_term(mm, cc);
            }
        }
        out
    }
}

fn min_opt(a: Option<u32>, b: Option<u32>) -> Option<u32> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.min(y)),
        (x, None) => x,
        (None, y) => y,
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        assert_eq!(self.vars, rhs.vars, "polynomials live in different rings");
        let mut out = self.clone();
        out.jet_order = min_opt(self.jet_order, rhs.jet_order);
        if let Some(n) = out.jet_order {
            out.terms.retain(|m, _| m.degree() <= n);
        }
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self + &(-rhs)
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
            jet_order: self.jet_order,
        }
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.mul_jet(rhs, None)
    }
}

impl Add for Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: Polynomial) -> Polynomial {
        &self + &rhs
    }
}

impl Sub for Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: Polynomial) -> Polynomial {
        &self - &rhs
    }
}

impl Mul for Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: Polynomial) -> Polynomial {
        &self * &rhs
    }
}

pub(crate) fn fmt_q(c: &Q) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

impl fmt::Display for Polynomial {
    /// Ascending total degree; within a degree, earlier variables first.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut ts: Vec<(&Monomial, &Q)> = self.terms.iter().collect();
        ts.sort_by(|a, b| a.0.degree().cmp(&b.0.degree()).then_with(|| b.0 .0.cmp(&a.0 .0)));
        for (k, (m, c)) in ts.into_iter().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            if m.is_one() {
                write!(f, "{}", fmt_q(&a))?;
            } else if a.is_one() {
                write!(f, "{}", m.render(&self.vars))?;
            } else {
                write!(f, "{}*{}", fmt_q(&a), m.render(&self.vars))?;
            }
        }
        Ok(())
    }
}

impl Serialize for Polynomial {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_polynomial;

    fn p(s: &str) -> Polynomial {
        parse_polynomial(s).unwrap()
    }

    fn w(ws: &[u32]) -> WeightVector {
        WeightVector::xyzt(ws).unwrap()
    }

    #[test]
    fn multiplicity_examples() {
        assert_eq!(p("x*y + z^3 + t^3").multiplicity(), Degree::Finite(2));
        assert_eq!(p("0").multiplicity(), Degree::Infinity);
        assert_eq!(p("x^2 + y^2 + z^3 + x*t^2").multiplicity(), Degree::Finite(2));
    }

    #[test]
    fn weight_examples() {
        assert_eq!(p("x^2 + y^2 + z^3 + x*t^2").weight(&w(&[4, 3, 2, 1])).unwrap(), Degree::Finite(6));
        assert_eq!(p("0").weight(&w(&[1, 2, 3, 4])).unwrap(), Degree::Infinity);
        assert_eq!(p("x*y + z^2 + t^3").weight(&w(&[1, 5, 3, 2])).unwrap(), Degree::Finite(6));
    }

    #[test]
    fn missing_weight_is_an_error() {
        let err = p("x*y + t^3").weight(&w(&[1, 2])).unwrap_err();
        assert_eq!(err, Error::MissingWeight("t".into()));
    }

    #[test]
    fn quasihomogeneous_part_examples() {
        let f = p("x*y + z^2 + t^3 + t^4");
        assert_eq!(f.quasihomogeneous_part(&w(&[3, 3, 3, 2]), 6).unwrap(), p("x*y + z^2 + t^3"));
        assert!(f.quasihomogeneous_part(&w(&[3, 3, 3, 2]), 5).unwrap().is_zero());
        let e6 = p("x^2 + y^2 + z^3 + x*t^2");
        assert_eq!(e6.quasihomogeneous_part(&w(&[4, 3, 2, 1]), 8).unwrap(), p("x^2"));
    }

    #[test]
    fn quadratic_rank_examples() {
        assert_eq!(p("x*y + z^2 + t^3").quadratic_rank(), 3);
        assert_eq!(p("x^2 + y^2 + z^3 + x*t^2").quadratic_rank(), 2);
        assert_eq!(p("z^3 + t^4").quadratic_rank(), 0);
        assert_eq!(p("x^2 + 2*x*y + y^2").quadratic_rank(), 1);
    }

    #[test]
    fn jacobian_examples() {
        let j = p("z^2 + t^3").jacobian_generators();
        assert_eq!(j, vec![p("0"), p("0"), p("2*z"), p("3*t^2")]);
        let j = p("x*y + z^2 + t^3").jacobian_generators();
        assert_eq!(j, vec![p("y"), p("x"), p("2*z"), p("3*t^2")]);
        assert!(p("5").jacobian_generators().iter().all(Polynomial::is_zero));
    }

    #[test]
    fn truncation_respects_jet() {
        let f = p("x + x^2 + x^5").truncate(2);
        assert_eq!(f, p("x + x^2"));
        assert_eq!(f.jet_order(), Some(2));
        let g = f.mul_jet(&p("x"), None);
        assert_eq!(g, p("x^2"));
    }

    #[test]
    fn exact_division() {
        assert_eq!(p("x^2*y + x*t").div_var_pow(0, 1).unwrap(), p("x*y + t"));
        assert!(p("x^2 + y").div_var_pow(0, 1).is_err());
        let a = p("x^2 - y^2");
        assert_eq!(a.div_exact(&p("x + y")).unwrap(), p("x - y"));
        assert!(p("x^2 + y^2").div_exact(&p("x + y")).is_none());
    }

    #[test]
    fn display_is_ascending() {
        assert_eq!(p("t^3 + z^2 + x*y").to_string(), "x*y + z^2 + t^3");
        assert_eq!(p("-1/4*t^4 + z^3").to_string(), "z^3 - 1/4*t^4");
        assert_eq!(p("-x + 2").to_string(), "2 - x");
    }

    #[test]
    fn weighted_monomial_enumeration() {
        let ms = Monomial::all_of_weight(&[2, 1], 4);
        assert_eq!(ms.len(), 3); // z^2, z t^2, t^4
        assert_eq!(Monomial::all_of_degree(3, 2).len(), 6);
    }
}
