//! Weighted blowups in toric charts.
//!
//! On the chart of `x_j` the substitution is `x_j = u^{w_j}` and
//! `x_i = u^{w_i} x̂_i` for `i != j`. The hatted coordinates keep their
//! original names and `u` takes the place of `x_j`.

use std::fmt;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::poly::{Degree, Monomial, Polynomial, Vars, WeightVector};
use crate::weight_maps::{verify_weight_respecting, JetSubstitution, WeightCheck};

pub const CHART_PARAMETER: &str = "u";

/// What the blowup centre sits on.
#[derive(Debug, Clone, PartialEq)]
pub enum Germ {
    /// A smooth point of affine three-space.
    Ambient,
    /// The hypersurface germ `f = 0`.
    Hypersurface(Polynomial),
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BlowupChart {
    pub chart_variable: String,
    #[serde(skip)]
    pub source: Vars,
    /// Coordinates on the chart: the source names with `u` replacing the chart variable.
    #[serde(skip)]
    pub vars: Vars,
    #[serde(serialize_with = "ser_substitution")]
    pub substitution: Vec<Polynomial>,
    pub quotient_order: u32,
    pub transform: Option<Polynomial>,
    pub exceptional: String,
}

fn ser_substitution<S: serde::Serializer>(subs: &[Polynomial], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(subs.iter().map(|p| p.to_string()))
}

impl BlowupChart {
    pub fn chart_index(&self) -> usize {
        self.source.iter().position(|v| *v == self.chart_variable).expect("chart variable")
    }

    pub fn parameter_index(&self) -> usize {
        self.chart_index()
    }

    /// Pulls a polynomial on the source back to the chart, exactly.
    pub fn pull_back(&self, g: &Polynomial) -> Result<Polynomial> {
        let g = if g.vars() == &self.source { g.clone() } else { g.embed(&self.source)? };
        Ok(g.without_jet_order().compose(&self.substitution, None))
    }
}

impl fmt::Display for BlowupChart {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let subs: Vec<String> =
            self.source.iter().zip(&self.substitution).map(|(v, s)| format!("{v} = {s}")).collect();
        write!(f, "chart {} (order {}): {}", self.chart_variable, self.quotient_order, subs.join(", "))?;
        if let Some(t) = &self.transform {
            write!(f, "; strict transform {t}")?;
        }
        Ok(())
    }
}

fn chart_vars(source: &Vars, j: usize) -> Result<Vars> {
    if source.iter().any(|v| v == CHART_PARAMETER) {
        return Err(Error::NameClash(CHART_PARAMETER.into()));
    }
    Ok(source
        .iter()
        .enumerate()
        .map(|(i, v)| if i == j { CHART_PARAMETER.to_string() } else { v.clone() })
        .collect())
}

/// One chart per variable of `w`, without transforms.
pub fn charts(w: &WeightVector) -> Result<Vec<BlowupChart>> {
    let source: Vars = w.entries().iter().map(|(v, _)| v.clone()).collect();
    let ws = w.values();
    let n = ws.len();
    let mut out = Vec::with_capacity(n);
    for j in 0..n {
        let vars = chart_vars(&source, j)?;
        let substitution = (0..n)
            .map(|i| {
                let mut e = vec![0u32; n];
                e[j] = ws[i];
                if i != j {
                    e[i] = 1;
                }
                Polynomial::monomial(vars.clone(), Monomial(e), One::one())
            })
            .collect();
        out.push(BlowupChart {
            chart_variable: source[j].clone(),
            source: source.clone(),
            vars,
            substitution,
            quotient_order: ws[j],
            transform: None,
            exceptional: format!("{CHART_PARAMETER} = 0"),
        });
    }
    Ok(out)
}

/// `(f ∘ substitution) / u^{wt f}`.
pub fn strict_transform(f: &Polynomial, w: &WeightVector, chart: &BlowupChart) -> Result<BlowupChart> {
    let d = match f.weight(w)? {
        Degree::Finite(d) => d,
        Degree::Infinity => return Err(Error::PreconditionViolated("the zero polynomial has no strict transform".into())),
    };
    let pulled = chart.pull_back(f)?;
    let transform = pulled.div_var_pow(chart.parameter_index(), d)?;
    debug_assert!(transform.div_var_pow(chart.parameter_index(), 1).is_err());
    Ok(BlowupChart { transform: Some(transform), ..chart.clone() })
}

/// `Σw - 1` on affine three-space, `Σw - wt f - 1` on a hypersurface in four variables.
pub fn discrepancy(w: &WeightVector, germ: &Germ) -> Result<u32> {
    let value = match germ {
        Germ::Ambient if w.len() == 3 => i64::from(w.sum()) - 1,
        Germ::Hypersurface(f) if f.nvars() == 4 && w.len() == 4 => match f.weight(w)? {
            Degree::Finite(d) => i64::from(w.sum()) - i64::from(d) - 1,
            Degree::Infinity => return Err(Error::UnsupportedShape("weight of the zero polynomial".into())),
        },
        Germ::Ambient => return Err(Error::UnsupportedShape("a smooth centre needs three weights".into())),
        Germ::Hypersurface(_) => {
            return Err(Error::UnsupportedShape("a hypersurface centre needs four variables and four weights".into()))
        }
    };
    u32::try_from(value)
        .ok()
        .filter(|v| *v > 0)
        .ok_or_else(|| Error::UnsupportedShape(format!("discrepancy {value} is not positive")))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LiftFailure {
    pub chart: String,
    pub direction: &'static str,
    pub variable: String,
    /// The first term of the induced component carrying a pole along `u = 0`.
    pub laurent_term: String,
}

impl fmt::Display for LiftFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "chart {}: {} component for {} has polar part {}",
            self.chart, self.direction, self.variable, self.laurent_term
        )
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LiftCertificate {
    pub lifts: bool,
    pub method: &'static str,
    pub weight_check: WeightCheck,
    pub failure: Option<LiftFailure>,
}

impl fmt::Display for LiftCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (&self.failure, self.lifts) {
            (_, true) => write!(f, "lifts ({})", self.method),
            (Some(e), false) => write!(f, "does not lift: {e}"),
            (None, false) => write!(f, "does not lift"),
        }
    }
}

/// Coefficient of `u^k` in `c`, as a polynomial free of `u`.
fn u_coefficient(c: &Polynomial, ui: usize, k: u32) -> Polynomial {
    let mut out = Polynomial::zero(c.vars().clone());
    for (m, a) in c.terms() {
        if m.0[ui] == k {
            let mut e = m.0.clone();
            e[ui] = 0;
            out.add_term(Monomial(e), a.clone());
        }
    }
    out
}

fn u_power(vars: &Vars, ui: usize, k: u32) -> Polynomial {
    let mut e = vec![0u32; vars.len()];
    e[ui] = k;
    Polynomial::monomial(vars.clone(), Monomial(e), One::one())
}

/// Removes the `u`-orders below `k` of `c` modulo the strict transform,
/// or returns the first order and coefficient that cannot be removed.
fn reduce_below(
    c: &Polynomial,
    strict: Option<&Polynomial>,
    ui: usize,
    k: u32,
) -> std::result::Result<Polynomial, (u32, Polynomial)> {
    let f0 = strict.map(|s| u_coefficient(s, ui, 0));
    let mut c = c.clone();
    for ord in 0..k {
        let r = u_coefficient(&c, ui, ord);
        if r.is_zero() {
            continue;
        }
        let (Some(s), Some(f0)) = (strict, f0.as_ref()) else {
            return Err((ord, r));
        };
        let Some(qt) = r.div_exact(f0) else {
            return Err((ord, r));
        };
        c = &c - &(&(&qt * &u_power(c.vars(), ui, ord)) * s);
    }
    Ok(c)
}

fn laurent(r: &Polynomial, power: i64) -> String {
    format!("({r})*{CHART_PARAMETER}^{power}")
}

/// Whether an automorphism lifts to the weighted blowup with weights `w`.
///
/// A weight-respecting map lifts. Otherwise the map and its inverse are
/// conjugated into every chart of weight one and tested for poles along the
/// exceptional divisor, modulo the strict transform for a hypersurface.
pub fn lift_check(sigma: &JetSubstitution, w: &WeightVector, germ: &Germ) -> Result<LiftCertificate> {
    let check = verify_weight_respecting(sigma, w, w)?;
    if check.weight_respecting {
        return Ok(LiftCertificate { lifts: true, method: "weight-respecting", weight_check: check, failure: None });
    }
    let inverse = sigma.inverse_components().ok_or(Error::NotInvertible)?.to_vec();
    let names: Vars = w.entries().iter().map(|(v, _)| v.clone()).collect();
    if sigma.source() != &names || sigma.target() != &names {
        return Err(Error::ArityMismatch { expected: names.len(), found: sigma.source().len() });
    }
    let ws = w.values();
    let fail = |chart: &BlowupChart, direction: &'static str, i: usize, term: String| LiftCertificate {
        lifts: false,
        method: "chart-regularity",
        weight_check: check.clone(),
        failure: Some(LiftFailure {
            chart: chart.chart_variable.clone(),
            direction,
            variable: names[i].clone(),
            laurent_term: term,
        }),
    };
    for chart in charts(w)?.into_iter().filter(|c| c.quotient_order == 1) {
        let j = chart.chart_index();
        let strict = match germ {
            Germ::Ambient => None,
            Germ::Hypersurface(f) => strict_transform(f, w, &chart)?.transform,
        };
        for (direction, comps) in [("forward", sigma.components()), ("inverse", &inverse[..])] {
            for (i, comp) in comps.iter().enumerate() {
                let pulled = chart.pull_back(comp)?;
                let reduced = match reduce_below(&pulled, strict.as_ref(), j, ws[i]) {
                    Ok(r) => r,
                    Err((ord, r)) => {
                        return Ok(fail(&chart, direction, i, laurent(&r, i64::from(ord) - i64::from(ws[i]))));
                    }
                };
                if i == j {
                    // The new chart parameter must be u times a unit along u = 0.
                    let e0 = u_coefficient(&reduced, j, 1);
                    let lambda = e0.constant_term();
                    let rest = &e0 - &Polynomial::constant(e0.vars().clone(), lambda.clone());
                    let f0 = strict.as_ref().map(|s| u_coefficient(s, j, 0));
                    let unit = !lambda.is_zero()
                        && (rest.is_zero() || f0.is_some_and(|f0| rest.div_exact(&f0).is_some()));
                    if !unit {
                        return Ok(fail(&chart, direction, i, format!("{CHART_PARAMETER}*({e0}) is not {CHART_PARAMETER} times a unit")));
                    }
                }
            }
        }
    }
    Ok(LiftCertificate { lifts: true, method: "chart-regularity", weight_check: check, failure: None })
}

/// Graph construction: generators `I ∪ {ψ_j^{<w_j} - y_j}` on the joint
/// variables, weighted by one on the source and `w_y` on the target.
pub fn algebraize(
    ideal: &[Polynomial],
    psi: &JetSubstitution,
    w_y: &WeightVector,
) -> Result<(Vec<Polynomial>, WeightVector)> {
    let xs = psi.source();
    let ys = psi.target();
    if let Some(clash) = ys.iter().find(|y| xs.contains(y)) {
        return Err(Error::NameClash(clash.clone()));
    }
    let wy = w_y.resolve(ys)?;
    let joint: Vars = xs.iter().chain(ys.iter()).cloned().collect();
    let mut gens = Vec::with_capacity(ideal.len() + ys.len());
    for g in ideal {
        gens.push(g.embed(&joint)?);
    }
    for (j, comp) in psi.components().iter().enumerate() {
        if wy[j] == 0 {
            return Err(Error::ZeroWeight(ys[j].clone()));
        }
        let trunc = comp.truncate(wy[j] - 1).without_jet_order().embed(&joint)?;
        gens.push(&trunc - &Polynomial::var_at(joint.clone(), xs.len() + j));
    }
    let weights = WeightVector::new(
        xs.iter().map(|x| (x.clone(), 1)).chain(ys.iter().cloned().zip(wy)),
    )?;
    Ok((gens, weights))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::{parse_polynomial, parse_polynomial_in};
    use crate::poly::{vars, xyzt};

    fn p(s: &str) -> Polynomial {
        parse_polynomial(s).unwrap()
    }

    fn wv(ws: &[u32]) -> WeightVector {
        WeightVector::xyzt(ws).unwrap()
    }

    #[test]
    fn chart_skeletons() {
        let w = WeightVector::positional(&["x", "y", "z"], &[1, 1, 1]).unwrap();
        let cs = charts(&w).unwrap();
        assert_eq!(cs.len(), 3);
        assert!(cs.iter().all(|c| c.quotient_order == 1));
        let s: Vec<String> = cs[0].substitution.iter().map(|p| p.to_string()).collect();
        assert_eq!(s, ["u", "u*y", "u*z"]);
        let orders: Vec<u32> = charts(&wv(&[1, 5, 3, 2])).unwrap().iter().map(|c| c.quotient_order).collect();
        assert_eq!(orders, [1, 5, 3, 2]);
    }

    #[test]
    fn strict_transforms() {
        let w = wv(&[1, 5, 3, 2]);
        let c = &charts(&w).unwrap()[0];
        let st = strict_transform(&p("x*y + z^2 + t^3"), &w, c).unwrap();
        assert_eq!(st.transform.unwrap().to_string(), "y + z^2 + t^3");

        let w = wv(&[4, 3, 2, 1]);
        let c = &charts(&w).unwrap()[3];
        let st = strict_transform(&p("x^2 + y^2 + z^3 + x*t^2"), &w, c).unwrap();
        let want = parse_polynomial_in("u^2*x^2 + y^2 + z^3 + x", &vars(&["x", "y", "z", "u"])).unwrap();
        assert_eq!(st.transform.unwrap(), want);

        let w = WeightVector::positional(&["x", "y"], &[1, 1]).unwrap();
        let c = &charts(&w).unwrap()[0];
        let f = parse_polynomial_in("x*y", &vars(&["x", "y"])).unwrap();
        assert_eq!(strict_transform(&f, &w, c).unwrap().transform.unwrap().to_string(), "y");
    }

    #[test]
    fn discrepancies() {
        let w = WeightVector::positional(&["x", "y", "z"], &[1, 2, 3]).unwrap();
        assert_eq!(discrepancy(&w, &Germ::Ambient).unwrap(), 5);
        assert_eq!(discrepancy(&wv(&[1, 5, 3, 2]), &Germ::Hypersurface(p("x*y + z^2 + t^3"))).unwrap(), 4);
        assert_eq!(discrepancy(&wv(&[4, 3, 2, 1]), &Germ::Hypersurface(p("x^2 + y^2 + z^3 + x*t^2"))).unwrap(), 3);
        assert!(matches!(discrepancy(&wv(&[1, 1, 1, 1]), &Germ::Ambient), Err(Error::UnsupportedShape(_))));
    }

    #[test]
    fn smooth_counterexample_does_not_lift() {
        let v = vars(&["x", "y", "z"]);
        let w = WeightVector::positional(&["x", "y", "z"], &[1, 1, 2]).unwrap();
        let z = parse_polynomial_in("z + x", &v).unwrap();
        let zi = parse_polynomial_in("z - x", &v).unwrap();
        let sigma = JetSubstitution::automorphism(v.clone(), &[("z", z)], 4).unwrap();
        let mut inv: Vec<Polynomial> = sigma.components().to_vec();
        inv[2] = zi;
        let sigma = sigma.with_inverse(inv).unwrap();
        let cert = lift_check(&sigma, &w, &Germ::Ambient).unwrap();
        assert!(!cert.lifts, "{cert}");
        assert!(lift_check(&JetSubstitution::identity(v, 4), &w, &Germ::Ambient).unwrap().lifts);
    }

    #[test]
    fn graph_generators() {
        let x = vars(&["x1"]);
        let y = vars(&["y1"]);
        let psi = JetSubstitution::new(x, y, vec![parse_polynomial_in("x1 + x1^2", &vars(&["x1"])).unwrap()], 6)
            .unwrap();
        let w = WeightVector::positional(&["y1"], &[3]).unwrap();
        let (gens, weights) = algebraize(&[], &psi, &w).unwrap();
        assert_eq!(gens.len(), 1);
        assert_eq!(gens[0].to_string(), "x1 - y1 + x1^2");
        assert_eq!(weights.values(), [1, 3]);

        let ys = vars(&["y1", "y2", "y3", "y4"]);
        let comps = (0..4).map(|i| Polynomial::var_at(xyzt(), i)).collect();
        let psi = JetSubstitution::new(xyzt(), ys, comps, 6).unwrap();
        let w = WeightVector::positional(&["y1", "y2", "y3", "y4"], &[1, 5, 2, 1]).unwrap();
        let (gens, weights) = algebraize(&[p("x*y + z^3 + t^6")], &psi, &w).unwrap();
        let s: Vec<String> = gens.iter().map(|g| g.to_string()).collect();
        assert_eq!(s, ["x*y + z^3 + t^6", "-y1", "y - y2", "z - y3", "-y4"]);
        assert_eq!(weights.values(), [1, 1, 1, 1, 1, 5, 2, 1]);
    }
}
