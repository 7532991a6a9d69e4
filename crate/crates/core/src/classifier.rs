//! Recognition of simple and compound-A hypersurface germs.

use std::fmt;

use num_traits::Zero;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::local_algebra::milnor_number;
use crate::normal_form::{split_germ, SplitForm};
use crate::poly::{q, Degree, Polynomial, Vars, Q};
use crate::weight_maps::JetSubstitution;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TypeTag {
    Smooth,
    A(u32),
    D(u32),
    E6,
    E7,
    E8,
    CA(u32),
    NonSimple,
    Unrecognized,
}

impl TypeTag {
    pub fn is_ade(self) -> bool {
        matches!(self, TypeTag::A(_) | TypeTag::D(_) | TypeTag::E6 | TypeTag::E7 | TypeTag::E8)
    }
}

impl fmt::Display for TypeTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TypeTag::Smooth => write!(f, "smooth"),
            TypeTag::A(k) => write!(f, "A{k}"),
            TypeTag::D(k) => write!(f, "D{k}"),
            TypeTag::E6 => write!(f, "E6"),
            TypeTag::E7 => write!(f, "E7"),
            TypeTag::E8 => write!(f, "E8"),
            TypeTag::CA(n) => write!(f, "cA{n}"),
            TypeTag::NonSimple => write!(f, "non-simple"),
            TypeTag::Unrecognized => write!(f, "unrecognized"),
        }
    }
}

impl Serialize for TypeTag {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SingularityReport {
    pub multiplicity: Degree,
    pub quadratic_rank: usize,
    pub corank: usize,
    pub milnor_number: Option<u32>,
    pub type_tag: TypeTag,
    #[serde(rename = "cA_index")]
    pub ca_index: Option<u32>,
    pub residual: Option<Polynomial>,
    pub witness: Option<JetSubstitution>,
}

fn check_germ(f: &Polynomial) -> Result<()> {
    if !f.constant_term().is_zero() {
        return Err(Error::NotHypersurfaceGerm("nonzero constant term".into()));
    }
    if f.nvars() < 2 {
        return Err(Error::UnsupportedShape("at least two variables are required".into()));
    }
    Ok(())
}

fn has_linear_part(f: &Polynomial) -> bool {
    f.multiplicity() == Degree::Finite(1)
}

/// Binary cubic `a u³ + b u² v + c u v² + d v³` as `[a, b, c, d]`.
fn binary_cubic(h: &Polynomial) -> [Q; 4] {
    [h.coeff_of(&[3, 0]), h.coeff_of(&[2, 1]), h.coeff_of(&[1, 2]), h.coeff_of(&[0, 3])]
}

pub fn cubic_discriminant([a, b, c, d]: &[Q; 4]) -> Q {
    b * b * c * c - q(4) * a * c * c * c - q(4) * b * b * b * d - q(27) * a * a * d * d + q(18) * a * b * c * d
}

/// The Hessian covariant vanishes identically exactly for cubes of linear forms.
fn hessian_vanishes([a, b, c, d]: &[Q; 4]) -> bool {
    (b * b - q(3) * a * c).is_zero() && (b * c - q(9) * a * d).is_zero() && (c * c - q(3) * b * d).is_zero()
}

/// ADE type by corank, Milnor number and the cubic part of the residual.
pub fn classify_simple(f: &Polynomial) -> Result<SingularityReport> {
    check_germ(f)?;
    if has_linear_part(f) {
        return Err(Error::NotHypersurfaceGerm("nonzero linear part (the germ is smooth)".into()));
    }
    let mu = milnor_number(f)?;
    let split = split_germ(f)?;
    let rank = split.pivots.len();
    let corank = f.nvars() - rank;
    let tag = match corank {
        0 | 1 => TypeTag::A(mu),
        2 => {
            let cubic = binary_cubic(&split.residual.homogeneous_part(3));
            if cubic.iter().all(Zero::is_zero) {
                TypeTag::NonSimple
            } else if !cubic_discriminant(&cubic).is_zero() {
                TypeTag::D(4)
            } else if !hessian_vanishes(&cubic) {
                TypeTag::D(mu)
            } else {
                match mu {
                    6 => TypeTag::E6,
                    7 => TypeTag::E7,
                    8 => TypeTag::E8,
                    _ => TypeTag::NonSimple,
                }
            }
        }
        _ => TypeTag::NonSimple,
    };
    Ok(SingularityReport {
        multiplicity: f.multiplicity(),
        quadratic_rank: rank,
        corank,
        milnor_number: Some(mu),
        type_tag: tag,
        ca_index: None,
        residual: Some(split.residual.clone()),
        witness: Some(split.witness),
    })
}

pub fn is_simple(f: &Polynomial) -> Result<bool> {
    Ok(classify_simple(f)?.type_tag.is_ade())
}

/// The residual `g(z, t)` of a cA germ written as `xy + g` over the complex
/// numbers, read off the rational splitting.
fn ca_residual(split: &SplitForm, nv: usize) -> Option<Polynomial> {
    let zt: Vars = crate::poly::vars(&["z", "t"]);
    let rank = split.pivots.len();
    match rank {
        2 => Some(split.residual.rename(zt)),
        r if r >= 3 => {
            // Two pivots make the xy part; the rest, with the residual, form g.
            let mut rest: Vec<usize> = split.pivots[2..].iter().map(|(i, _)| *i).collect();
            rest.extend(&split.residual_vars);
            rest.sort_unstable();
            let names: Vars = rest.iter().map(|&i| split.polynomial.vars()[i].clone()).collect();
            let g = split
                .polynomial
                .filter(|m| split.pivots[..2].iter().all(|(i, _)| m.0[*i] == 0))
                .embed(&names)
                .ok()?;
            debug_assert_eq!(names.len() + 2, nv);
            Some(g.rename(zt))
        }
        _ => None,
    }
}

/// Compound-A index of a threefold germ in four variables.
#[allow(non_snake_case)]
pub fn cA_index(f: &Polynomial) -> Result<SingularityReport> {
    check_germ(f)?;
    if f.nvars() != 4 {
        return Err(Error::UnsupportedShape("a threefold germ needs four variables".into()));
    }
    if has_linear_part(f) {
        return Err(Error::NotHypersurfaceGerm("nonzero linear part (the germ is smooth)".into()));
    }
    let mu = milnor_number(f)?;
    let split = split_germ(f)?;
    let rank = split.pivots.len();
    let residual = ca_residual(&split, 4);
    let (tag, n) = match &residual {
        Some(g) => {
            let m = g.multiplicity().finite().ok_or(Error::NonIsolated { cap: 0 })?;
            (TypeTag::CA(m - 1), Some(m - 1))
        }
        None => (TypeTag::Unrecognized, None),
    };
    Ok(SingularityReport {
        multiplicity: f.multiplicity(),
        quadratic_rank: rank,
        corank: 4 - rank,
        milnor_number: Some(mu),
        type_tag: tag,
        ca_index: n,
        residual,
        witness: Some(split.witness),
    })
}

/// Consolidated report: smooth, an ADE type, cA(n), or the honest fallbacks.
pub fn classify(f: &Polynomial) -> Result<SingularityReport> {
    check_germ(f)?;
    if has_linear_part(f) {
        return Ok(SingularityReport {
            multiplicity: Degree::Finite(1),
            quadratic_rank: f.quadratic_rank(),
            corank: f.nvars() - f.quadratic_rank(),
            milnor_number: Some(0),
            type_tag: TypeTag::Smooth,
            ca_index: None,
            residual: None,
            witness: None,
        });
    }
    let mut report = classify_simple(f)?;
    if f.nvars() == 4 {
        let ca = cA_index(f)?;
        report.ca_index = ca.ca_index;
        if let Some(n) = ca.ca_index {
            report.residual = ca.residual;
            if !report.type_tag.is_ade() {
                report.type_tag = TypeTag::CA(n);
            }
        } else if !report.type_tag.is_ade() {
            report.type_tag = if report.corank >= 3 { TypeTag::Unrecognized } else { report.type_tag };
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::{parse_polynomial, parse_polynomial_in};
    use crate::poly::vars;

    fn p(s: &str) -> Polynomial {
        parse_polynomial(s).unwrap()
    }

    fn tag(s: &str) -> TypeTag {
        classify_simple(&p(s)).unwrap().type_tag
    }

    #[test]
    fn simple_examples() {
        assert_eq!(tag("x*y + z^2 + t^3"), TypeTag::A(2));
        assert_eq!(tag("x^2 + y^2 + z^3 + x*t^2"), TypeTag::E6);
        assert_eq!(tag("x*y + z^3 + t^3"), TypeTag::D(4));
        assert_eq!(tag("x^2 + y^2 + z^2 + t^2"), TypeTag::A(1));
        assert_eq!(tag("x*y + z^3 + t^6"), TypeTag::NonSimple);
        assert!(is_simple(&p("x*y + z^3 + t^3")).unwrap());
        assert!(!is_simple(&p("x*y + z^3 + t^6")).unwrap());
    }

    #[test]
    fn unit_forms_in_two_variables() {
        let zt = vars(&["z", "t"]);
        let cases = [
            ("z^2 + t^5", TypeTag::A(4)),
            ("z^2*t + t^3", TypeTag::D(4)),
            ("z^2*t + t^6", TypeTag::D(7)),
            ("z^3 + t^4", TypeTag::E6),
            ("z^3 + z*t^3", TypeTag::E7),
            ("z^3 + t^5", TypeTag::E8),
            ("z^3 + t^7", TypeTag::NonSimple),
        ];
        for (s, want) in cases {
            let f = parse_polynomial_in(s, &zt).unwrap();
            assert_eq!(classify_simple(&f).unwrap().type_tag, want, "{s}");
        }
    }

    #[test]
    fn ca_examples() {
        let r = cA_index(&p("x*y + z^3 + t^3")).unwrap();
        assert_eq!(r.type_tag, TypeTag::CA(2));
        assert_eq!(r.residual.unwrap().multiplicity(), Degree::Finite(3));
        assert_eq!(cA_index(&p("x*y + z*t")).unwrap().type_tag, TypeTag::CA(1));
        assert_eq!(cA_index(&p("x^2 + y^2 + z^3 + x*t^2")).unwrap().type_tag, TypeTag::CA(2));
        assert_eq!(cA_index(&p("x^3 + y^3 + z^3 + t^3")).unwrap().type_tag, TypeTag::Unrecognized);
    }

    #[test]
    fn errors() {
        assert!(matches!(classify_simple(&p("1 + x^2")), Err(Error::NotHypersurfaceGerm(_))));
        assert!(matches!(classify_simple(&p("x + y^2")), Err(Error::NotHypersurfaceGerm(_))));
        assert_eq!(classify(&p("x + y^2")).unwrap().type_tag, TypeTag::Smooth);
    }
}
