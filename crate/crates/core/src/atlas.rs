//! Divisorial contractions to a point: enumeration, counting and membership.

use std::fmt;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

use crate::blowup::{discrepancy, Germ};
use crate::classifier::{cA_index, classify_simple, TypeTag};
use crate::error::{Error, Result};
use crate::local_algebra::milnor_number;
use crate::parse::parse_polynomial;
use crate::poly::{q, vars, xyzt, Degree, Monomial, Polynomial, Vars, WeightVector, Q};
use crate::weight_maps::{substitute_jet, JetSubstitution};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum ClassKind {
    /// `(1, a, b)` blowup of a smooth point.
    Smooth { a: u32, b: u32 },
    /// `(r1, r2, a, 1)` blowup of `xy + g(z, t)`.
    Type1 { r1: u32, r2: u32, a: u32 },
    /// `(1, 5, 3, 2)` blowup of an A2 point.
    Type2,
    /// `(4, 3, 2, 1)` blowup of `x^2 + y^2 + z^3 + xt^2`.
    Type3,
}

impl fmt::Display for ClassKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClassKind::Smooth { a, b } => write!(f, "smooth (1, {a}, {b})"),
            ClassKind::Type1 { r1, r2, a } => write!(f, "type1 ({r1}, {r2}, {a}, 1)"),
            ClassKind::Type2 => write!(f, "type2 (1, 5, 3, 2)"),
            ClassKind::Type3 => write!(f, "type3 (4, 3, 2, 1)"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ContractionClass {
    #[serde(flatten)]
    pub kind: ClassKind,
    pub weights: WeightVector,
    #[serde(rename = "cA_index")]
    pub ca_index: Option<u32>,
    pub discrepancy: u32,
    pub representative: Option<Polynomial>,
}

impl ContractionClass {
    fn germ(&self) -> Germ {
        match &self.representative {
            Some(f) => Germ::Hypersurface(f.clone()),
            None => Germ::Ambient,
        }
    }

    /// `Σw - wt(representative) - codim`, recomputed from the data.
    pub fn formula_discrepancy(&self) -> Result<u32> {
        discrepancy(&self.weights, &self.germ())
    }

    /// The discrepancy attached to the class kind: `a + b`, `a`, `4` or `3`.
    pub fn tabulated_discrepancy(&self) -> u32 {
        match self.kind {
            ClassKind::Smooth { a, b } => a + b,
            ClassKind::Type1 { a, .. } => a,
            ClassKind::Type2 => 4,
            ClassKind::Type3 => 3,
        }
    }
}

impl fmt::Display for ContractionClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}, discrepancy {}", self.kind, self.discrepancy)?;
        if let Some(r) = &self.representative {
            write!(f, ", representative {r}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Cardinality {
    Finite(u64),
    CountablyInfinite,
    Uncountable,
}

impl fmt::Display for Cardinality {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Cardinality::Finite(n) => write!(f, "{n}"),
            Cardinality::CountablyInfinite => write!(f, "countably infinite"),
            Cardinality::Uncountable => write!(f, "uncountable"),
        }
    }
}

impl Serialize for Cardinality {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Cardinality::Finite(n) => s.serialize_u64(*n),
            other => s.serialize_str(&other.to_string()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ContractionCensus {
    pub classes: Vec<ContractionClass>,
    pub count_local_analytic: Cardinality,
    pub count_over_base: Cardinality,
    /// Largest `a` among the type1 classes.
    pub a_max: Option<u32>,
    #[serde(rename = "cA_index")]
    pub ca_index: Option<u32>,
    /// The family, for smooth centres where no finite list exists.
    pub generator: Option<String>,
    /// The residual `g(z, t)` in maximal-contact coordinates.
    pub residual: Option<Polynomial>,
}

fn zt() -> Vars {
    vars(&["z", "t"])
}

/// `c (z + β t^k)^{m}` test: returns `β` when the polynomial has that shape
/// with `c` the coefficient of `z^m`.
fn perfect_power(face: &Polynomial, m: u32, k: u32) -> Option<Q> {
    let c = face.coeff_of(&[m, 0]);
    if c.is_zero() {
        return None;
    }
    let beta = face.coeff_of(&[m - 1, k]) / (c.clone() * q(i64::from(m)));
    let zt = face.vars().clone();
    let base = &Polynomial::var_at(zt.clone(), 0)
        + &Polynomial::monomial(zt.clone(), Monomial(vec![0, k]), beta.clone());
    (base.pow(m).scale(&c) == *face).then_some(beta)
}

/// Least `k / (m - i)` over monomials `z^i t^k` with `i < m`.
fn newton_slope(g: &Polynomial, m: u32) -> Option<Q> {
    g.terms()
        .filter(|(mono, _)| mono.0[0] < m)
        .map(|(mono, _)| Q::new(mono.0[1].into(), (m - mono.0[0]).into()))
        .min()
}

/// Coordinates on `(z, t)` in which the `(a, 1)`-weight of `g` is as large
/// as possible for every `a <= cap`, together with that largest `a`.
///
/// The tangent cone is moved to a power of `z` when it is one, and the
/// principal Newton face is then repeatedly absorbed by `z -> z - β t^a`.
pub fn maximal_contact(g: &Polynomial, n: u32, cap: u32) -> Result<(Polynomial, u32)> {
    let m = n + 1;
    let mu = milnor_number(g)?;
    let order = (mu + 2).max(cap * m + 1);
    let mut g = g.clone().without_jet_order().truncate(order).without_jet_order();
    let cone = g.homogeneous_part(m);
    let z = Polynomial::var_at(zt(), 0);
    let t = Polynomial::var_at(zt(), 1);
    if !cone.coeff_of(&[m, 0]).is_zero() {
        match perfect_power(&cone, m, 1) {
            Some(beta) => g = g.compose(&[&z - &t.scale(&beta), t.clone()], Some(order)),
            None => return Ok((g, 1)),
        }
    } else if cone.len() == 1 && !cone.coeff_of(&[0, m]).is_zero() {
        g = g.compose(&[t.clone(), z.clone()], Some(order));
    } else {
        return Ok((g, 1));
    }
    g = g.without_jet_order();
    loop {
        let Some(slope) = newton_slope(&g, m) else {
            return Ok((g, cap));
        };
        let a = slope.floor().to_integer();
        let a = u32::try_from(a).unwrap_or(u32::MAX);
        if a >= cap {
            return Ok((g, cap));
        }
        if !slope.is_integer() {
            return Ok((g, a.max(1)));
        }
        let face = g.filter(|mono| mono.0[0] * a + mono.0[1] == a * m);
        match perfect_power(&face, m, a) {
            Some(beta) => {
                let tk = Polynomial::monomial(zt(), Monomial(vec![0, a]), beta);
                g = g.compose(&[&z - &tk, t.clone()], Some(order)).without_jet_order();
            }
            None => return Ok((g, a.max(1))),
        }
    }
}

/// Largest `a` with `n((n + 1)a - 1) <= μ + 1`.
pub fn milnor_bound(n: u32, mu: u32) -> u32 {
    let mut a = 1;
    while n * ((n + 1) * (a + 1) - 1) <= mu + 1 {
        a += 1;
    }
    a
}

/// All `(r1, r2, a)` with `r1 <= r2`, `r1 + r2 = a(n + 1)`, `gcd(a, r1) = 1`
/// for which `xy + g` admits the `(r1, r2, a, 1)` blowup, sorted by `(a, r1)`.
pub fn admissible_weight_systems(g: &Polynomial, n: u32) -> Result<Vec<(u32, u32, u32)>> {
    admissible_weight_systems_with(g, n, None).map(|(s, _)| s)
}

/// As [`admissible_weight_systems`], with an optional cap on `a`; also
/// returns the representative the weight test ran on.
pub fn admissible_weight_systems_with(
    g: &Polynomial,
    n: u32,
    max_a: Option<u32>,
) -> Result<(Vec<(u32, u32, u32)>, Polynomial)> {
    let g = if g.vars().len() == 2 { g.rename(zt()) } else { g.clone() };
    if g.nvars() != 2 || n == 0 {
        return Err(Error::UnsupportedShape("the residual is a germ in two variables of multiplicity at least 2".into()));
    }
    let mult = g.multiplicity();
    if mult != Degree::Finite(n + 1) {
        return Err(Error::MultiplicityMismatch { expected: n + 1, found: mult.to_string() });
    }
    let mu = milnor_number(&g)?;
    let bound = milnor_bound(n, mu).min(max_a.unwrap_or(u32::MAX));
    let (rep, _) = maximal_contact(&g, n, bound)?;
    let mut out = Vec::new();
    for a in 1..=bound {
        let w = WeightVector::positional(&["z", "t"], &[a, 1])?;
        if rep.weight(&w)? != Degree::Finite(a * (n + 1)) {
            continue;
        }
        let total = a * (n + 1);
        for r1 in 1..=total / 2 {
            if r1.gcd(&a) == 1 {
                out.push((r1, total - r1, a));
            }
        }
    }
    Ok((out, rep))
}

fn type1_class(r1: u32, r2: u32, a: u32, n: u32, rep: Polynomial) -> Result<ContractionClass> {
    let weights = WeightVector::xyzt(&[r1, r2, a, 1])?;
    let discrepancy = discrepancy(&weights, &Germ::Hypersurface(rep.clone()))?;
    Ok(ContractionClass {
        kind: ClassKind::Type1 { r1, r2, a },
        weights,
        ca_index: Some(n),
        discrepancy,
        representative: Some(rep),
    })
}

pub fn a2_representative() -> Polynomial {
    parse_polynomial("x*y + z^2 + t^3").expect("literal")
}

pub fn e6_representative() -> Polynomial {
    parse_polynomial("x^2 + y^2 + z^3 + x*t^2").expect("literal")
}

fn type2_class(rep: Polynomial) -> Result<ContractionClass> {
    let weights = WeightVector::xyzt(&[1, 5, 3, 2])?;
    let discrepancy = discrepancy(&weights, &Germ::Hypersurface(rep.clone()))?;
    Ok(ContractionClass { kind: ClassKind::Type2, weights, ca_index: Some(1), discrepancy, representative: Some(rep) })
}

fn type3_class(rep: Polynomial) -> Result<ContractionClass> {
    let weights = WeightVector::xyzt(&[4, 3, 2, 1])?;
    let discrepancy = discrepancy(&weights, &Germ::Hypersurface(rep.clone()))?;
    Ok(ContractionClass { kind: ClassKind::Type3, weights, ca_index: Some(2), discrepancy, representative: Some(rep) })
}

/// The census of a smooth point: the `(1, a, b)` blowups with `gcd(a, b) = 1`.
pub fn smooth_census() -> ContractionCensus {
    ContractionCensus {
        classes: Vec::new(),
        count_local_analytic: Cardinality::CountablyInfinite,
        count_over_base: Cardinality::Uncountable,
        a_max: None,
        ca_index: None,
        generator: Some("(1, a, b) weighted blowups with a <= b and gcd(a, b) = 1, discrepancy a + b".into()),
        residual: None,
    }
}

pub fn enumerate_contractions(f: &Polynomial) -> Result<ContractionCensus> {
    enumerate_contractions_with(f, None)
}

pub fn enumerate_contractions_with(f: &Polynomial, max_a: Option<u32>) -> Result<ContractionCensus> {
    if f.nvars() != 4 {
        return Err(Error::UnsupportedShape("a threefold germ needs four variables".into()));
    }
    if !f.constant_term().is_zero() {
        return Err(Error::NotHypersurfaceGerm("nonzero constant term".into()));
    }
    if f.multiplicity() == Degree::Finite(1) {
        return Ok(smooth_census());
    }
    let ca = cA_index(f)?;
    let (Some(n), Some(g)) = (ca.ca_index, ca.residual) else {
        return Err(Error::UnsupportedGerm(format!("not a cA point (quadratic rank {})", ca.quadratic_rank)));
    };
    let (systems, rep) = admissible_weight_systems_with(&g, n, max_a)?;
    let xy = parse_polynomial("x*y").expect("literal");
    let rep4 = &xy + &rep.embed(&xyzt())?;
    let mut classes = Vec::new();
    for &(r1, r2, a) in &systems {
        classes.push(type1_class(r1, r2, a, n, rep4.clone())?);
    }
    let simple = classify_simple(f)?.type_tag;
    if n == 1 && simple == TypeTag::A(2) {
        classes.push(type2_class(a2_representative())?);
    }
    if n == 2 && simple == TypeTag::E6 {
        classes.push(type3_class(e6_representative())?);
    }
    let count_over_base = if classes.iter().any(|c| c.discrepancy >= 2) {
        Cardinality::Uncountable
    } else {
        Cardinality::Finite(u64::from(n))
    };
    Ok(ContractionCensus {
        count_local_analytic: Cardinality::Finite(classes.len() as u64),
        count_over_base,
        a_max: systems.iter().map(|s| s.2).max(),
        ca_index: Some(n),
        generator: None,
        residual: Some(rep),
        classes,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "verdict", rename_all = "lowercase")]
pub enum Membership {
    Member { class: ContractionClass },
    Rejected { reason: String },
}

impl Membership {
    pub fn is_member(&self) -> bool {
        matches!(self, Membership::Member { .. })
    }

    pub fn class(&self) -> Option<&ContractionClass> {
        match self {
            Membership::Member { class } => Some(class),
            Membership::Rejected { .. } => None,
        }
    }
}

impl fmt::Display for Membership {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Membership::Member { class } => write!(f, "member: {class}"),
            Membership::Rejected { reason } => write!(f, "rejected: {reason}"),
        }
    }
}

fn reject(reason: impl Into<String>) -> Membership {
    Membership::Rejected { reason: reason.into() }
}

fn weight_of(f: &Polynomial, w: &WeightVector) -> Result<u32> {
    f.weight(w)?.finite().ok_or_else(|| Error::UnsupportedShape("weight of the zero polynomial".into()))
}

fn smooth_membership(w: &WeightVector) -> Result<Membership> {
    let mut ws = w.values();
    if ws.len() != 3 {
        return Err(Error::UnsupportedShape("a smooth centre needs three weights".into()));
    }
    ws.sort_unstable();
    let (one, a, b) = (ws[0], ws[1], ws[2]);
    if one != 1 {
        return Ok(reject(format!("weights {w} are not of the form (1, a, b)")));
    }
    if a.gcd(&b) != 1 {
        return Ok(reject(format!("gcd({a}, {b}) = {} is not 1", a.gcd(&b))));
    }
    let discrepancy = discrepancy(w, &Germ::Ambient)?;
    Ok(Membership::Member {
        class: ContractionClass {
            kind: ClassKind::Smooth { a, b },
            weights: w.clone(),
            ca_index: None,
            discrepancy,
            representative: None,
        },
    })
}

fn type1_membership(f: &Polynomial, w: &WeightVector, ws: &[u32]) -> Result<Membership> {
    let (mut r1, mut r2, a, last) = (ws[0], ws[1], ws[2], ws[3]);
    if last != 1 {
        return Ok(reject(format!("weights {w} are not of the form (r1, r2, a, 1)")));
    }
    if r1 > r2 {
        std::mem::swap(&mut r1, &mut r2);
    }
    let total = r1 + r2;
    if total % a != 0 {
        return Ok(reject(format!("a = {a} does not divide r1 + r2 = {total}")));
    }
    if a.gcd(&r1) != 1 || a.gcd(&r2) != 1 {
        return Ok(reject(format!("a = {a} is not coprime to both r1 = {r1} and r2 = {r2}")));
    }
    let ca = cA_index(f)?;
    let Some(n) = ca.ca_index else {
        return Ok(reject(format!("germ is not cA (quadratic rank {})", ca.quadratic_rank)));
    };
    if a * (n + 1) != total {
        return Ok(reject(format!("a(n + 1) = {} differs from r1 + r2 = {total} for cA{n}", a * (n + 1))));
    }
    let wt = weight_of(f, w)?;
    if wt != total {
        return Ok(reject(format!("weight(f, w) = {wt} differs from r1 + r2 = {total}")));
    }
    let discrepancy = discrepancy(w, &Germ::Hypersurface(f.clone()))?;
    Ok(Membership::Member {
        class: ContractionClass {
            kind: ClassKind::Type1 { r1, r2, a },
            weights: w.clone(),
            ca_index: Some(n),
            discrepancy,
            representative: Some(f.clone()),
        },
    })
}

fn special_membership(f: &Polynomial, w: &WeightVector, kind: ClassKind) -> Result<Membership> {
    let (want, n, label) = match kind {
        ClassKind::Type2 => (TypeTag::A(2), 1, "A2"),
        _ => (TypeTag::E6, 2, "E6"),
    };
    let tag = classify_simple(f)?.type_tag;
    if tag != want {
        return Ok(reject(format!("germ is {tag}, not {label}")));
    }
    let wt = weight_of(f, w)?;
    if wt != 6 {
        return Ok(reject(format!("weight(f, w) = {wt} differs from 6")));
    }
    let discrepancy = discrepancy(w, &Germ::Hypersurface(f.clone()))?;
    Ok(Membership::Member {
        class: ContractionClass { kind, weights: w.clone(), ca_index: Some(n), discrepancy, representative: Some(f.clone()) },
    })
}

/// Decides whether the weighted blowup with weights `w` is a divisorial
/// contraction of the given centre. Swapping the first two weights is
/// allowed throughout.
pub fn decide_membership(germ: &Germ, w: &WeightVector) -> Result<Membership> {
    let f = match germ {
        Germ::Ambient => return smooth_membership(w),
        Germ::Hypersurface(f) => f,
    };
    let ws = w.resolve(f.vars())?;
    if ws.len() != 4 {
        return Err(Error::UnsupportedShape("a threefold germ needs four variables".into()));
    }
    let w = &WeightVector::positional(f.vars(), &ws)?;
    if f.multiplicity() == Degree::Finite(1) {
        return Ok(reject("the germ is smooth; give the ambient smooth centre with three weights"));
    }
    let head = |a: u32, b: u32| (ws[0] == a && ws[1] == b) || (ws[0] == b && ws[1] == a);
    let type2_shape = head(1, 5) && ws[2] == 3 && ws[3] == 2;
    let type3_shape = head(4, 3) && ws[2] == 2 && ws[3] == 1;
    let first = type1_membership(f, w, &ws)?;
    if first.is_member() {
        return Ok(first);
    }
    if type2_shape {
        return special_membership(f, w, ClassKind::Type2);
    }
    if type3_shape {
        return special_membership(f, w, ClassKind::Type3);
    }
    Ok(first)
}

fn rational_point_check(u: &Q, v: &Q, w: &Q) -> Result<()> {
    if u.abs() != Q::one() {
        return Err(Error::ParameterConstraint(format!("u = {u} is not 1 or -1")));
    }
    if v * v + w * w != Q::one() {
        return Err(Error::ParameterConstraint(format!("v^2 + w^2 = {} is not 1", v * v + w * w)));
    }
    Ok(())
}

fn phi(g: &Polynomial, c: &Q) -> Result<Vec<Polynomial>> {
    let v = xyzt();
    let x = Polynomial::var_at(v.clone(), 0);
    let y = Polynomial::var_at(v.clone(), 1);
    let z = Polynomial::var_at(v.clone(), 2);
    let t = Polynomial::var_at(v.clone(), 3);
    let shifted = &z + &x.scale(c);
    let gz = g.compose(&[x.clone(), y.clone(), shifted.clone(), t.clone()], None);
    let diff = (&gz - g).div_var_pow(0, 1)?;
    Ok(vec![x, &y - &diff, shifted, t])
}

/// The automorphism fixing a class representative: `Φ_c` for type1 classes
/// with `r1 = 1` and `a >= 2`, `Ψ_{u,v,w}` for the type3 class. The fixing
/// property is verified before returning.
pub fn family_witness(class: &ContractionClass, params: &[Q]) -> Result<JetSubstitution> {
    let rep = class
        .representative
        .as_ref()
        .ok_or_else(|| Error::PreconditionViolated("the class has no representative".into()))?;
    let rep = rep.embed(&xyzt())?;
    let jet = rep.total_degree().unwrap_or(1).max(2) * 2;
    let v = xyzt();
    let sigma = match class.kind {
        ClassKind::Type1 { r1: 1, a, .. } if a >= 2 => {
            let [c] = params else {
                return Err(Error::ParameterConstraint(format!("expected one parameter c, got {}", params.len())));
            };
            let xy = parse_polynomial("x*y").expect("literal");
            let g = &rep - &xy;
            if g.terms().any(|(m, _)| m.0[0] != 0 || m.0[1] != 0) {
                return Err(Error::PreconditionViolated(format!("representative {rep} is not xy + g(z, t)")));
            }
            let fwd = phi(&g, c)?;
            let inv = phi(&g, &-c)?;
            JetSubstitution::new(v.clone(), v, fwd, jet)?.with_inverse(inv)?
        }
        ClassKind::Type3 => {
            let [u, vv, w] = params else {
                return Err(Error::ParameterConstraint(format!("expected (u, v, w), got {} values", params.len())));
            };
            rational_point_check(u, vv, w)?;
            if rep != e6_representative() {
                return Err(Error::PreconditionViolated(format!("representative {rep} is not x^2 + y^2 + z^3 + x*t^2")));
            }
            let x = Polynomial::var_at(v.clone(), 0);
            let y = Polynomial::var_at(v.clone(), 1);
            let t2 = Polynomial::var_at(v.clone(), 3).pow(2);
            let half = Q::new(1.into(), 2.into());
            let psi = |u: &Q, vv: &Q, w: &Q| {
                vec![
                    &(&x.scale(vv) + &y.scale(w)) + &t2.scale(&((vv - Q::one()) * &half)),
                    &(&x.scale(&(u * w)) - &y.scale(&(u * vv))) + &t2.scale(&(u * w * &half)),
                    Polynomial::var_at(v.clone(), 2),
                    Polynomial::var_at(v.clone(), 3),
                ]
            };
            let fwd = psi(u, vv, w);
            // Ψ_{u,v,w} is an involution up to the sign choices: its inverse is Ψ_{u, v, u w}.
            let inv = psi(u, vv, &(u * w));
            JetSubstitution::new(v.clone(), v, fwd, jet)?.with_inverse(inv)?
        }
        _ => {
            return Err(Error::PreconditionViolated(format!(
                "no automorphism family for {} (type1 needs r1 = 1 and a >= 2)",
                class.kind
            )))
        }
    };
    let fixed = substitute_jet(&rep, &sigma, jet)?;
    if fixed != rep.truncate(jet) {
        return Err(Error::WitnessCheckFailed(format!("substitution maps {rep} to {fixed}")));
    }
    Ok(sigma)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_polynomial_in;
    use crate::poly::q_frac;
    use crate::weight_maps::verify_weight_respecting;

    fn p(s: &str) -> Polynomial {
        parse_polynomial(s).unwrap()
    }

    fn g(s: &str) -> Polynomial {
        parse_polynomial_in(s, &zt()).unwrap()
    }

    #[test]
    fn admissible_examples() {
        assert_eq!(admissible_weight_systems(&g("z^2 + t^3"), 1).unwrap(), [(1, 1, 1)]);
        assert_eq!(admissible_weight_systems(&g("z^3 + t^6"), 2).unwrap(), [(1, 2, 1), (1, 5, 2), (3, 3, 2)]);
        assert_eq!(admissible_weight_systems(&g("z^4 + t^4"), 3).unwrap(), [(1, 3, 1), (2, 2, 1)]);
        assert!(matches!(
            admissible_weight_systems(&g("z^3 + t^6"), 1),
            Err(Error::MultiplicityMismatch { expected: 2, .. })
        ));
    }

    #[test]
    fn hidden_contact_is_found() {
        // (z + t^2)^3 + t^7 hides z^3 + t^7 behind a coordinate change.
        let (rep, a) = maximal_contact(&g("(z + t^2)^3 + t^7"), 2, 10).unwrap();
        assert_eq!(a, 2);
        assert_eq!(rep, g("z^3 + t^7"));
        let s = admissible_weight_systems(&g("(z - t)^3 + t^6"), 2).unwrap();
        assert_eq!(s, [(1, 2, 1), (1, 5, 2), (3, 3, 2)]);
    }

    #[test]
    fn census_examples() {
        let c = enumerate_contractions(&p("x*y + z^4 + t^4")).unwrap();
        assert_eq!(c.count_local_analytic, Cardinality::Finite(2));
        assert_eq!(c.count_over_base, Cardinality::Finite(3));

        let c = enumerate_contractions(&p("x*y + z^3 + t^6")).unwrap();
        let sys: Vec<(ClassKind, u32)> = c.classes.iter().map(|k| (k.kind, k.discrepancy)).collect();
        assert_eq!(
            sys,
            [
                (ClassKind::Type1 { r1: 1, r2: 2, a: 1 }, 1),
                (ClassKind::Type1 { r1: 1, r2: 5, a: 2 }, 2),
                (ClassKind::Type1 { r1: 3, r2: 3, a: 2 }, 2)
            ]
        );
        assert_eq!(c.count_over_base, Cardinality::Uncountable);

        let c = enumerate_contractions(&p("x^2 + y^2 + z^3 + x*t^2")).unwrap();
        assert!(c.classes.iter().any(|k| k.kind == ClassKind::Type3 && k.discrepancy == 3));
        assert_eq!(c.count_over_base, Cardinality::Uncountable);

        let c = enumerate_contractions(&p("x*y + z^2 + t^3")).unwrap();
        let kinds: Vec<ClassKind> = c.classes.iter().map(|k| k.kind).collect();
        assert_eq!(kinds, [ClassKind::Type1 { r1: 1, r2: 1, a: 1 }, ClassKind::Type2]);

        assert_eq!(enumerate_contractions(&p("x + y^2")).unwrap().count_local_analytic, Cardinality::CountablyInfinite);
        assert!(matches!(enumerate_contractions(&p("x^3 + y^3 + z^3 + t^3")), Err(Error::UnsupportedGerm(_))));
    }

    #[test]
    fn membership_examples() {
        let hyp = |s: &str| Germ::Hypersurface(p(s));
        let w = |ws: &[u32]| WeightVector::xyzt(ws).unwrap();
        let m = decide_membership(&hyp("x*y + z^2 + t^3"), &w(&[1, 5, 3, 2])).unwrap();
        let c = m.class().unwrap();
        assert_eq!((c.kind, c.discrepancy), (ClassKind::Type2, 4));

        let m = decide_membership(&hyp("x*y + z^3 + t^6"), &w(&[1, 5, 2, 1])).unwrap();
        let c = m.class().unwrap();
        assert_eq!((c.kind, c.ca_index, c.discrepancy), (ClassKind::Type1 { r1: 1, r2: 5, a: 2 }, Some(2), 2));

        match decide_membership(&hyp("x*y + z^2 + t^3"), &w(&[1, 3, 2, 1])).unwrap() {
            Membership::Rejected { reason } => assert!(reason.contains("weight(f, w) = 3"), "{reason}"),
            other => panic!("{other}"),
        }

        let m = decide_membership(&hyp("x^2 + y^2 + z^3 + x*t^2"), &w(&[4, 3, 2, 1])).unwrap();
        assert_eq!(m.class().unwrap().kind, ClassKind::Type3);

        let w3 = WeightVector::positional(&["x", "y", "z"], &[3, 1, 2]).unwrap();
        let m = decide_membership(&Germ::Ambient, &w3).unwrap();
        assert_eq!(m.class().unwrap().kind, ClassKind::Smooth { a: 2, b: 3 });
        let w3 = WeightVector::positional(&["x", "y", "z"], &[1, 2, 4]).unwrap();
        assert!(!decide_membership(&Germ::Ambient, &w3).unwrap().is_member());

        let partial = WeightVector::new([("x", 1), ("y", 5)]).unwrap();
        assert!(matches!(decide_membership(&hyp("x*y + z^2 + t^3"), &partial), Err(Error::MissingWeight(_))));
    }

    #[test]
    fn family_witnesses() {
        let c = enumerate_contractions(&p("x*y + z^3 + t^6")).unwrap().classes[1].clone();
        let w = c.weights.clone();
        let phi1 = family_witness(&c, &[q(1)]).unwrap();
        assert_eq!(phi1.component("y").unwrap().to_string(), "y - x^2 - 3*x*z - 3*z^2");
        assert!(!verify_weight_respecting(&phi1, &w, &w).unwrap().weight_respecting);
        assert!(family_witness(&c, &[q(0)]).unwrap().is_identity());

        let e6 = enumerate_contractions(&p("x^2 + y^2 + z^3 + x*t^2")).unwrap();
        let c3 = e6.classes.iter().find(|k| k.kind == ClassKind::Type3).unwrap();
        family_witness(c3, &[q(1), q_frac(3, 5), q_frac(4, 5)]).unwrap();
        family_witness(c3, &[q(-1), q(0), q(-1)]).unwrap();
        assert!(matches!(family_witness(c3, &[q(1), q(1), q(1)]), Err(Error::ParameterConstraint(_))));
    }
}
