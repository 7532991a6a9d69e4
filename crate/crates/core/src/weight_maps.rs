//! Coordinate changes on jets and the weight-respecting test.
//!
//! A [`JetSubstitution`] sends each *target* variable `y_j` to a polynomial
//! `ψ_j` in the *source* variables. Applying it to `f(y)` gives `f(ψ(x))`.
//! For automorphisms source and target carry the same names, and
//! `x ↦ x - t^2` means `f(x, ..) ↦ f(x - t^2, ..)`.

use std::fmt;

use num_traits::Zero;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::linalg;
use crate::poly::{Degree, Polynomial, Vars, WeightVector, Q};

#[derive(Debug, Clone, PartialEq)]
pub struct JetSubstitution {
    source: Vars,
    target: Vars,
    components: Vec<Polynomial>,
    inverse: Option<Vec<Polynomial>>,
    jet_order: u32,
}

fn check_components(target: &Vars, source: &Vars, comps: &[Polynomial]) -> Result<()> {
    if comps.len() != target.len() {
        return Err(Error::ArityMismatch { expected: target.len(), found: comps.len() });
    }
    for (name, c) in target.iter().zip(comps) {
        if c.vars() != source {
            return Err(Error::ArityMismatch { expected: source.len(), found: c.nvars() });
        }
        if !c.constant_term().is_zero() {
            return Err(Error::NonZeroConstantTerm(name.clone()));
        }
    }
    Ok(())
}

impl JetSubstitution {
    /// A map given by one component per target variable, without inverse.
    pub fn new(source: Vars, target: Vars, components: Vec<Polynomial>, jet_order: u32) -> Result<Self> {
        check_components(&target, &source, &components)?;
        Ok(JetSubstitution { source, target, components, inverse: None, jet_order })
    }

    pub fn identity(vars: Vars, jet_order: u32) -> Self {
        let components = (0..vars.len()).map(|i| Polynomial::var_at(vars.clone(), i)).collect();
        JetSubstitution {
            source: vars.clone(),
            target: vars,
            inverse: Some(Clone::clone(&components)),
            components,
            jet_order,
        }
    }

    /// An automorphism of `vars` moving only the listed variables.
    pub fn automorphism(vars: Vars, images: &[(&str, Polynomial)], jet_order: u32) -> Result<Self> {
        let mut comps: Vec<Polynomial> = (0..vars.len()).map(|i| Polynomial::var_at(vars.clone(), i)).collect();
        for (name, img) in images {
            let i = vars
                .iter()
                .position(|v| v == name)
                .ok_or_else(|| Error::UnsupportedShape(format!("unknown variable `{name}`")))?;
            comps[i] = img.embed(&vars)?;
        }
        Self::new(vars.clone(), vars, comps, jet_order)
    }

    /// Attaches known inverse components (one per source variable, in target
    /// variables) after checking both compositions at the jet order.
    pub fn with_inverse(mut self, inverse: Vec<Polynomial>) -> Result<Self> {
        check_components(&self.source, &self.target, &inverse)?;
        self.inverse = Some(inverse);
        if !self.is_identity_roundtrip() {
            return Err(Error::NotInvertible);
        }
        Ok(self)
    }

    /// Attaches inverse components known to be correct by construction.
    pub(crate) fn with_inverse_unchecked(mut self, inverse: Vec<Polynomial>) -> Self {
        self.inverse = Some(inverse);
        self
    }

    /// Whether both compositions with the inverse are the identity at the
    /// jet order.
    pub fn check_roundtrip(&self) -> bool {
        self.is_identity_roundtrip()
    }

    pub fn source(&self) -> &Vars {
        &self.source
    }

    pub fn target(&self) -> &Vars {
        &self.target
    }

    pub fn components(&self) -> &[Polynomial] {
        &self.components
    }

    pub fn inverse_components(&self) -> Option<&[Polynomial]> {
        self.inverse.as_deref()
    }

    pub fn jet_order(&self) -> u32 {
        self.jet_order
    }

    pub fn component(&self, name: &str) -> Option<&Polynomial> {
        self.target.iter().position(|v| v == name).map(|i| &self.components[i])
    }

    pub fn is_invertible(&self) -> bool {
        self.inverse.is_some()
    }

    pub fn is_identity(&self) -> bool {
        self.source == self.target
            && self
                .components
                .iter()
                .enumerate()
                .all(|(i, c)| *c == Polynomial::var_at(self.source.clone(), i))
    }

    /// The inverse map, with the roles of components and inverse swapped.
    pub fn inverse(&self) -> Result<JetSubstitution> {
        let inv = self.inverse.clone().ok_or(Error::NotInvertible)?;
        Ok(JetSubstitution {
            source: self.target.clone(),
            target: self.source.clone(),
            components: inv,
            inverse: Some(self.components.clone()),
            jet_order: self.jet_order,
        })
    }

    /// Linear parts of the components, row `j` for target variable `j`.
    pub fn linear_matrix(&self) -> Vec<Vec<Q>> {
        let n = self.source.len();
        self.components
            .iter()
            .map(|c| (0..n).map(|i| c.coeff(&crate::poly::Monomial::var(n, i))).collect())
            .collect()
    }

    /// `f ↦ f ∘ self ∘ next`, i.e. apply `self` first and then `next`.
    pub fn then(&self, next: &JetSubstitution, n: u32) -> Result<JetSubstitution> {
        if self.source != next.target {
            return Err(Error::ArityMismatch { expected: self.source.len(), found: next.target.len() });
        }
        let comps = self
            .components
            .iter()
            .map(|c| c.compose(&next.components, Some(n)).without_jet_order())
            .collect();
        let inverse = match (&next.inverse, &self.inverse) {
            (Some(ni), Some(si)) => Some(
                ni.iter()
                    .map(|c| c.compose(si, Some(n)).without_jet_order())
                    .collect(),
            ),
            _ => None,
        };
        Ok(JetSubstitution {
            source: next.source.clone(),
            target: self.target.clone(),
            components: comps,
            inverse,
            jet_order: n,
        })
    }

    /// Extends an automorphism of a subset of `vars` by the identity.
    pub fn extend_identity(&self, vars: &Vars) -> Result<JetSubstitution> {
        if self.source != self.target {
            return Err(Error::UnsupportedShape("only automorphisms can be extended".into()));
        }
        let lift = |comps: &[Polynomial]| -> Result<Vec<Polynomial>> {
            vars.iter()
                .enumerate()
                .map(|(i, v)| match self.source.iter().position(|s| s == v) {
                    Some(k) => comps[k].embed(vars),
                    None => Ok(Polynomial::var_at(vars.clone(), i)),
                })
                .collect()
        };
        Ok(JetSubstitution {
            source: vars.clone(),
            target: vars.clone(),
            components: lift(&self.components)?,
            inverse: match &self.inverse {
                Some(inv) => Some(lift(inv)?),
                None => None,
            },
            jet_order: self.jet_order,
        })
    }

    fn is_identity_roundtrip(&self) -> bool {
        let Some(inv) = &self.inverse else { return false };
        let n = self.jet_order;
        let fwd = self.components.iter().enumerate().all(|(j, c)| {
            c.compose(inv, Some(n)).without_jet_order() == Polynomial::var_at(self.target.clone(), j)
        });
        let bwd = inv.iter().enumerate().all(|(i, c)| {
            c.compose(&self.components, Some(n)).without_jet_order() == Polynomial::var_at(self.source.clone(), i)
        });
        fwd && bwd
    }
}

/// `f ∘ σ` truncated at total degree `n`.
pub fn substitute_jet(f: &Polynomial, sigma: &JetSubstitution, n: u32) -> Result<Polynomial> {
    let f = if f.vars() == &sigma.target { f.clone() } else { f.embed(&sigma.target)? };
    let mut out = f.compose(&sigma.components, Some(n));
    if out.jet_order() != Some(n) {
        out = out.truncate(n);
    }
    Ok(out)
}

/// Computes inverse components valid modulo degree `> n`.
pub fn invert_jet(sigma: &JetSubstitution, n: u32) -> Result<JetSubstitution> {
    if sigma.source.len() != sigma.target.len() {
        return Err(Error::ArityMismatch { expected: sigma.target.len(), found: sigma.source.len() });
    }
    let lin = sigma.linear_matrix();
    let linv = linalg::inverse(&lin).ok_or(Error::SingularLinearPart)?;
    let tgt = sigma.target.clone();
    let src_n = sigma.source.len();
    // ψ(x) = L x + H(x); solve L θ + H(θ) = y by θ ← L⁻¹ (y − H(θ)).
    let higher: Vec<Polynomial> = sigma.components.iter().map(|c| c.filter(|m| m.degree() >= 2)).collect();
    let apply_linv = |v: &[Polynomial]| -> Vec<Polynomial> {
        (0..src_n)
            .map(|i| {
                let mut acc = Polynomial::zero(tgt.clone());
                for (j, vj) in v.iter().enumerate() {
                    if !linv[i][j].is_zero() {
                        acc = &acc + &vj.scale(&linv[i][j]);
                    }
                }
                acc
            })
            .collect()
    };
    let ys: Vec<Polynomial> = (0..tgt.len()).map(|j| Polynomial::var_at(tgt.clone(), j)).collect();
    let mut theta = apply_linv(&ys);
    for _ in 0..n {
        let rhs: Vec<Polynomial> = ys
            .iter()
            .zip(&higher)
            .map(|(y, h)| (y - &h.compose(&theta, Some(n))).without_jet_order())
            .collect();
        let next: Vec<Polynomial> = apply_linv(&rhs).into_iter().map(|p| p.truncate(n).without_jet_order()).collect();
        if next == theta {
            break;
        }
        theta = next;
    }
    let mut out = sigma.clone();
    out.jet_order = n;
    out.inverse = Some(theta);
    if !out.is_identity_roundtrip() {
        return Err(Error::NoConvergence(n as usize));
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WeightViolation {
    /// `forward` for a component ψ_j, `inverse` for θ_i.
    pub direction: &'static str,
    pub variable: String,
    pub component: String,
    pub component_weight: Degree,
    pub required: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WeightCheck {
    pub weight_respecting: bool,
    pub violations: Vec<WeightViolation>,
}

impl fmt::Display for WeightCheck {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.weight_respecting {
            return write!(f, "weight-respecting");
        }
        write!(f, "not weight-respecting:")?;
        for v in &self.violations {
            write!(
                f,
                " [{} {}: wt({}) = {} < {}]",
                v.direction, v.variable, v.component, v.component_weight, v.required
            )?;
        }
        Ok(())
    }
}

/// Checks `wt ψ_j ≥ w_dst(y_j)` for every component and
/// `wt θ_i ≥ w_src(x_i)` for every inverse component.
pub fn verify_weight_respecting(
    sigma: &JetSubstitution,
    w_src: &WeightVector,
    w_dst: &WeightVector,
) -> Result<WeightCheck> {
    let inv = sigma.inverse.as_ref().ok_or(Error::NotInvertible)?;
    let mut violations = Vec::new();
    let mut scan = |direction: &'static str, names: &Vars, comps: &[Polynomial], w_in: &WeightVector, w_out: &WeightVector| -> Result<()> {
        for (name, c) in names.iter().zip(comps) {
            let required = w_out.get(name).ok_or_else(|| Error::MissingWeight(name.clone()))?;
            let have = c.weight(w_in)?;
            if have < Degree::Finite(required) {
                violations.push(WeightViolation {
                    direction,
                    variable: name.clone(),
                    component: c.to_string(),
                    component_weight: have,
                    required,
                });
            }
        }
        Ok(())
    };
    scan("forward", &sigma.target, &sigma.components, w_src, w_dst)?;
    scan("inverse", &sigma.source, inv, w_dst, w_src)?;
    Ok(WeightCheck { weight_respecting: violations.is_empty(), violations })
}

impl fmt::Display for JetSubstitution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .target
            .iter()
            .zip(&self.components)
            .map(|(v, c)| format!("{v} -> {c}"))
            .collect();
        write!(f, "{}", parts.join(", "))
    }
}

impl Serialize for JetSubstitution {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let fwd: std::collections::BTreeMap<&str, String> = self
            .target
            .iter()
            .zip(&self.components)
            .map(|(v, c)| (v.as_str(), c.to_string()))
            .collect();
        let inv: Option<std::collections::BTreeMap<&str, String>> = self.inverse.as_ref().map(|inv| {
            self.source.iter().zip(inv).map(|(v, c)| (v.as_str(), c.to_string())).collect()
        });
        let mut st = s.serialize_struct("JetSubstitution", 3)?;
        st.serialize_field("components", &fwd)?;
        st.serialize_field("inverse_components", &inv)?;
        st.serialize_field("jet_order", &self.jet_order)?;
        st.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::{parse_polynomial, parse_polynomial_in};
    use crate::poly::{vars, xyzt};

    fn p(s: &str) -> Polynomial {
        parse_polynomial(s).unwrap()
    }

    fn auto(images: &[(&str, &str)], n: u32) -> JetSubstitution {
        let imgs: Vec<(&str, Polynomial)> = images.iter().map(|(v, s)| (*v, p(s))).collect();
        JetSubstitution::automorphism(xyzt(), &imgs, n).unwrap()
    }

    #[test]
    fn substitution_examples() {
        let s = auto(&[("x", "x - t^2")], 12);
        let f = p("x^2 + y^2 + 2*x*t^2 + z^3");
        assert_eq!(substitute_jet(&f, &s, 12).unwrap(), p("x^2 + y^2 + z^3 - t^4"));
        let phi = auto(&[("z", "z + x"), ("y", "y - 2*z - x")], 10);
        let g = p("x*y + z^2 + t^3");
        assert_eq!(substitute_jet(&g, &phi, 10).unwrap(), g);
        let id = JetSubstitution::identity(xyzt(), 4);
        assert_eq!(substitute_jet(&p("x + t^7"), &id, 4).unwrap(), p("x"));
    }

    #[test]
    fn constant_term_rejected() {
        let err = JetSubstitution::automorphism(xyzt(), &[("x", p("x + 1"))], 4).unwrap_err();
        assert_eq!(err, Error::NonZeroConstantTerm("x".into()));
    }

    #[test]
    fn inverses() {
        let s = invert_jet(&auto(&[("x", "x - t^2")], 8), 8).unwrap();
        assert_eq!(s.inverse_components().unwrap()[0], p("x + t^2"));
        let s = invert_jet(&auto(&[("y", "y - 2*z - x"), ("z", "z + x")], 8), 8).unwrap();
        assert!(s.is_identity_roundtrip());
        let s = invert_jet(&auto(&[("x", "2*x")], 4), 4).unwrap();
        assert_eq!(s.inverse_components().unwrap()[0], p("1/2*x"));
        let s = invert_jet(&auto(&[("x", "x + y^2 + z*t")], 9), 9).unwrap();
        let f = p("x^3 + y*z + t^2");
        let back = substitute_jet(&substitute_jet(&f, &s, 9).unwrap(), &s.inverse().unwrap(), 9).unwrap();
        assert_eq!(back, f);
        assert_eq!(invert_jet(&auto(&[("x", "y")], 4), 4).unwrap_err(), Error::SingularLinearPart);
    }

    #[test]
    fn weight_respecting_examples() {
        let swap = invert_jet(&auto(&[("x", "y"), ("y", "x")], 4), 4).unwrap();
        let w1 = WeightVector::xyzt(&[1, 3, 2, 1]).unwrap();
        let w2 = WeightVector::xyzt(&[3, 1, 2, 1]).unwrap();
        assert!(verify_weight_respecting(&swap, &w1, &w2).unwrap().weight_respecting);

        let v = vars(&["x", "y", "z"]);
        let shear = JetSubstitution::automorphism(
            v.clone(),
            &[("z", parse_polynomial_in("z + x", &v).unwrap())],
            4,
        )
        .unwrap();
        let shear = invert_jet(&shear, 4).unwrap();
        let w = WeightVector::xyzt(&[1, 1, 2]).unwrap();
        let check = verify_weight_respecting(&shear, &w, &w).unwrap();
        assert!(!check.weight_respecting);
        assert_eq!(check.violations[0].variable, "z");
        assert_eq!(check.violations[0].component_weight, Degree::Finite(1));

        let id = JetSubstitution::identity(xyzt(), 3);
        assert!(verify_weight_respecting(&id, &w1, &w1).unwrap().weight_respecting);
        assert_eq!(
            verify_weight_respecting(&auto(&[], 3), &w1, &w1).unwrap_err(),
            Error::NotInvertible
        );
    }

    #[test]
    fn composition_order() {
        let a = invert_jet(&auto(&[("x", "x - t^2")], 8), 8).unwrap();
        let b = invert_jet(&auto(&[("t", "t + z")], 8), 8).unwrap();
        let f = p("x*y + t^3");
        let step = substitute_jet(&substitute_jet(&f, &a, 8).unwrap(), &b, 8).unwrap();
        let ab = a.then(&b, 8).unwrap();
        assert_eq!(substitute_jet(&f, &ab, 8).unwrap(), step);
        assert!(ab.is_identity_roundtrip());
    }
}
