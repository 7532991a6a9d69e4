//! Milnor algebra computations on jets.
//!
//! Let `J_k` be the image of the Jacobian ideal in `A_k = R / m^{k+1}`. The
//! least `k` with `m^k ⊆ J_k` (checked as `dim J_k - dim J_{k-1}` equal to the
//! number of degree-`k` monomials) gives `m^k ⊆ j(f)` by Nakayama, and then
//! `μ = dim A_{k-1} - dim J_{k-1}`.

use std::collections::HashMap;

use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{Echelon, SparseVec};
use crate::poly::{Monomial, Polynomial};

pub const DEFAULT_CAP: u32 = 64;
pub const DEFAULT_MONOMIAL_BUDGET: usize = 60_000;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MilnorData {
    pub milnor_number: u32,
    /// Monomials spanning the Milnor algebra, ascending in graded-lex order.
    #[serde(serialize_with = "ser_monomials")]
    pub basis: Vec<Monomial>,
    pub stabilization_order: u32,
    #[serde(skip)]
    pub vars: crate::poly::Vars,
}

fn ser_monomials<S: serde::Serializer>(b: &[Monomial], s: S) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(b.len()))?;
    for m in b {
        seq.serialize_element(&m.0)?;
    }
    seq.end()
}

impl MilnorData {
    pub fn basis_strings(&self) -> Vec<String> {
        self.basis.iter().map(|m| m.render(&self.vars)).collect()
    }
}

#[derive(Debug, Clone, Copy)]
pub struct MilnorOptions {
    /// Largest stabilization order tried.
    pub cap: u32,
    /// Largest number of monomials of degree `<= k` the linear algebra may touch.
    pub max_monomials: usize,
}

impl Default for MilnorOptions {
    fn default() -> Self {
        MilnorOptions { cap: DEFAULT_CAP, max_monomials: DEFAULT_MONOMIAL_BUDGET }
    }
}

/// Graded-lex indexing of all monomials up to some degree.
struct MonomialIndex {
    n: usize,
    list: Vec<Monomial>,
    pos: HashMap<Monomial, usize>,
    /// `prefix[d]` = number of monomials of degree `< d`.
    prefix: Vec<usize>,
}

impl MonomialIndex {
    fn new(n: usize) -> Self {
        MonomialIndex { n, list: Vec::new(), pos: HashMap::new(), prefix: vec![0] }
    }

    fn extend_to(&mut self, d: u32) {
        while (self.prefix.len() as u32) <= d + 1 {
            let deg = self.prefix.len() as u32 - 1;
            for m in Monomial::all_of_degree(self.n, deg) {
                self.pos.insert(m.clone(), self.list.len());
                self.list.push(m);
            }
            self.prefix.push(self.list.len());
        }
    }

    fn below(&self, d: u32) -> usize {
        self.prefix[d as usize]
    }
}

/// Echelon form of the image of `j(f)` in `A_k`.
fn jacobian_jet(partials: &[Polynomial], idx: &MonomialIndex, k: u32) -> Echelon {
    let mut e = Echelon::new(false);
    for deg in 0..=k {
        let mults = &idx.list[idx.below(deg)..idx.below(deg + 1)];
        for m in mults {
            for p in partials {
                let v: SparseVec = p
                    .terms()
                    .filter(|(t, _)| t.degree() + deg <= k)
                    .map(|(t, c)| (idx.pos[&t.mul(m)], c.clone()))
                    .collect();
                if !v.is_empty() {
                    e.insert(v);
                }
            }
        }
    }
    e
}

pub fn milnor_data(f: &Polynomial) -> Result<MilnorData> {
    milnor_data_with(f, MilnorOptions::default())
}

pub fn milnor_data_with(f: &Polynomial, opts: MilnorOptions) -> Result<MilnorData> {
    let f = f.clone().without_jet_order();
    let n = f.nvars();
    let partials = f.jacobian_generators();
    if partials.iter().any(|d| !d.constant_term().is_zero()) {
        return Err(Error::SmoothPoint);
    }
    if f.used_variables().iter().any(|u| !u) {
        return Err(Error::NonIsolated { cap: 0 });
    }
    let mut idx = MonomialIndex::new(n);
    let mut prev: Option<Echelon> = None;
    for k in 0..=opts.cap {
        idx.extend_to(k);
        if idx.below(k + 1) > opts.max_monomials {
            return Err(Error::NonIsolated { cap: k });
        }
        let cur = jacobian_jet(&partials, &idx, k);
        let prev_rank = prev.as_ref().map_or(0, Echelon::rank);
        let new_monomials = idx.below(k + 1) - idx.below(k);
        if cur.rank() - prev_rank == new_monomials {
            let basis: Vec<Monomial> = match &prev {
                None => Vec::new(),
                Some(p) => (0..idx.below(k))
                    .filter(|c| !p.is_pivot(*c))
                    .map(|c| idx.list[c].clone())
                    .collect(),
            };
            if basis.is_empty() {
                return Err(Error::SmoothPoint);
            }
            return Ok(MilnorData {
                milnor_number: basis.len() as u32,
                basis,
                stabilization_order: k,
                vars: f.vars().clone(),
            });
        }
        prev = Some(cur);
    }
    Err(Error::NonIsolated { cap: opts.cap })
}

/// Milnor data of a germ quasi-homogeneous of weight `d` for `w`.
///
/// An isolated such germ has its Milnor algebra in weights at most
/// `Σ(d - 2w_i)`, so the stabilization order is bounded before any linear
/// algebra runs; failing to stabilize by then means the germ is not isolated.
pub fn quasihomogeneous_milnor_data(f: &Polynomial, w: &[u32], d: u32) -> Result<MilnorData> {
    let socle: i64 = w.iter().map(|&wi| i64::from(d) - 2 * i64::from(wi)).sum();
    if socle < 0 {
        return Err(Error::NonIsolated { cap: 0 });
    }
    let min_w = i64::from(*w.iter().min().unwrap_or(&1));
    let cap = u32::try_from(socle / min_w + 2).unwrap_or(DEFAULT_CAP).min(DEFAULT_CAP);
    milnor_data_with(f, MilnorOptions { cap, ..Default::default() })
}

pub fn milnor_number(f: &Polynomial) -> Result<u32> {
    milnor_data(f).map(|d| d.milnor_number)
}

/// Truncation of `f` at total degree `n`, admissible once `n >= μ + 1`.
pub fn determinacy_truncate(f: &Polynomial, n: u32) -> Result<Polynomial> {
    let mu = milnor_number(f)?;
    if n <= mu {
        return Err(Error::DeterminacyBound { order: n, required: mu + 1 });
    }
    Ok(f.truncate(n))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::{parse_polynomial, parse_polynomial_in};
    use crate::poly::vars;

    fn p(s: &str) -> Polynomial {
        parse_polynomial(s).unwrap()
    }

    fn zt(s: &str) -> Polynomial {
        parse_polynomial_in(s, &vars(&["z", "t"])).unwrap()
    }

    #[test]
    fn a2_curve() {
        let d = milnor_data(&zt("z^2 + t^3")).unwrap();
        assert_eq!(d.milnor_number, 2);
        assert_eq!(d.basis_strings(), vec!["1", "t"]);
    }

    #[test]
    fn quadric_and_smooth() {
        let d = milnor_data(&p("x^2 + y^2 + z^2 + t^2")).unwrap();
        assert_eq!(d.milnor_number, 1);
        assert_eq!(d.basis_strings(), vec!["1"]);
        assert_eq!(milnor_data(&p("x + y^2")), Err(Error::SmoothPoint));
    }

    #[test]
    fn family_bound_is_sharp() {
        assert_eq!(milnor_number(&p("x*y + z^3 + t^6")).unwrap(), 10);
        for (n, a) in [(1u32, 1u32), (1, 3), (2, 1), (3, 2)] {
            let f = p(&format!("x*y + z^{} + t^{}", n + 1, (n + 1) * a));
            assert_eq!(milnor_number(&f).unwrap(), n * ((n + 1) * a - 1));
        }
    }

    #[test]
    fn ade_values() {
        assert_eq!(milnor_number(&p("x^2 + y^2 + z^3 + x*t^2")).unwrap(), 6);
        assert_eq!(milnor_number(&p("z^2*t + t^4 + x^2 + y^2")).unwrap(), 5);
        assert_eq!(milnor_number(&zt("z^3 + z*t^3")).unwrap(), 7);
        assert_eq!(milnor_number(&zt("z^3 + t^5")).unwrap(), 8);
    }

    #[test]
    fn non_isolated() {
        let opts = MilnorOptions { cap: 12, ..Default::default() };
        assert!(matches!(milnor_data_with(&p("x*y"), opts), Err(Error::NonIsolated { .. })));
        assert!(matches!(milnor_data_with(&p("0"), opts), Err(Error::NonIsolated { .. })));
    }

    #[test]
    fn quasihomogeneous_shortcut() {
        let f = p("y^2 + x*t^2 + z^3");
        assert!(matches!(quasihomogeneous_milnor_data(&f, &[4, 3, 2, 1], 6), Err(Error::NonIsolated { .. })));
        let f = p("x^2 + y^2 + z^3 + x*t^2");
        assert_eq!(quasihomogeneous_milnor_data(&f, &[3, 3, 2, 1], 6).unwrap().milnor_number, 6);
        let f = p("x*y + z^3 + t^6");
        assert_eq!(quasihomogeneous_milnor_data(&f, &[1, 5, 2, 1], 6).unwrap().milnor_number, 10);
    }

    #[test]
    fn stabilization_bound() {
        for s in ["x*y + z^2 + t^3", "x*y + z^3 + t^6", "x^2 + y^2 + z^3 + x*t^2"] {
            let d = milnor_data(&p(s)).unwrap();
            assert!(d.stabilization_order <= d.milnor_number + 1);
            assert!(d.basis.iter().all(|m| m.degree() < d.stabilization_order));
        }
    }

    #[test]
    fn truncation() {
        assert_eq!(determinacy_truncate(&p("x*y + z^2 + t^3 + t^9"), 3).unwrap(), p("x*y + z^2 + t^3"));
        assert_eq!(
            determinacy_truncate(&p("x^2 + y^2 + z^3 + x*t^2 + t^10"), 7).unwrap(),
            p("x^2 + y^2 + z^3 + x*t^2")
        );
        assert_eq!(
            determinacy_truncate(&p("x*y + z^2 + t^3"), 2),
            Err(Error::DeterminacyBound { order: 2, required: 3 })
        );
    }
}
