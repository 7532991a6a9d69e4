//! Reductions by weight-respecting coordinate changes.
//!
//! Every reduction returns a [`MarkedNormalForm`] whose witness has been
//! checked twice before it is handed out: substituting it into the input
//! reproduces the output at the working jet order, and it passes
//! [`verify_weight_respecting`] for the declared weights.

use std::collections::HashMap;

use num_traits::{One, Signed, Zero};
use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::linalg::{Echelon, SparseVec};
use crate::local_algebra::{milnor_number, quasihomogeneous_milnor_data};
use crate::poly::{fmt_q, q, Degree, Monomial, Polynomial, Vars, WeightVector, Q};
use crate::weight_maps::{invert_jet, substitute_jet, verify_weight_respecting, JetSubstitution};

const STEP_CAP: usize = 20_000;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MarkedNormalForm {
    pub polynomial: Polynomial,
    /// The same support with every coefficient 1.
    pub unit_form: Polynomial,
    #[serde(serialize_with = "ser_marking")]
    pub marking: Vec<(String, Q)>,
    pub witness: JetSubstitution,
    pub weights: WeightVector,
    pub jet_order: u32,
}

fn ser_marking<S: Serializer>(m: &[(String, Q)], s: S) -> std::result::Result<S::Ok, S::Error> {
    let mut map = s.serialize_map(Some(m.len()))?;
    for (k, v) in m {
        map.serialize_entry(k, &fmt_q(v))?;
    }
    map.end()
}

fn marking_of(p: &Polynomial) -> Vec<(String, Q)> {
    p.terms().map(|(m, c)| (m.render(p.vars()), c.clone())).collect()
}

/// Working jet order for a germ: its determinacy bound, raised to the degree
/// of the input so that no given term is discarded.
pub fn working_order(f: &Polynomial) -> Result<u32> {
    let mu = milnor_number(f)?;
    Ok((mu + 1).max(f.total_degree().unwrap_or(0)))
}

/// Running state of an elimination: the current polynomial together with the
/// composite coordinate change that produced it.
pub(crate) struct Reducer {
    pub f: Polynomial,
    total: JetSubstitution,
    /// Inverse of every step, in the order applied.
    inverses: Vec<Vec<Polynomial>>,
    n: u32,
    witness_order: u32,
}

impl Reducer {
    pub fn new(f: &Polynomial, n: u32) -> Self {
        Reducer {
            f: f.truncate(n),
            total: JetSubstitution::identity(f.vars().clone(), n),
            inverses: Vec::new(),
            n,
            witness_order: n,
        }
    }

    pub fn vars(&self) -> Vars {
        self.f.vars().clone()
    }

    /// Applies the automorphism sending each variable to `images[i]`.
    pub fn apply(&mut self, images: Vec<Polynomial>) -> Result<()> {
        let vars = self.vars();
        let step = JetSubstitution::new(vars.clone(), vars, images, self.witness_order)?;
        let inv = invert_jet(&step, self.witness_order)?;
        self.push(step, inv.inverse_components().expect("just inverted").to_vec())
    }

    fn push(&mut self, step: JetSubstitution, inverse: Vec<Polynomial>) -> Result<()> {
        if self.inverses.len() >= STEP_CAP {
            return Err(Error::NoConvergence(STEP_CAP));
        }
        self.f = substitute_jet(&self.f, &step, self.n)?;
        self.total = compose_forward(&self.total, &step, self.witness_order);
        self.inverses.push(inverse);
        Ok(())
    }

    /// `x_i ↦ x_i + delta`.
    pub fn shift(&mut self, i: usize, delta: &Polynomial) -> Result<()> {
        let vars = self.vars();
        if delta.used_variables()[i] {
            let mut images: Vec<Polynomial> = (0..vars.len()).map(|k| Polynomial::var_at(vars.clone(), k)).collect();
            images[i] = &images[i] + delta;
            return self.apply(images);
        }
        let mut images: Vec<Polynomial> = (0..vars.len()).map(|k| Polynomial::var_at(vars.clone(), k)).collect();
        let mut inverse = images.clone();
        images[i] = &images[i] + delta;
        inverse[i] = &inverse[i] - delta;
        let step = JetSubstitution::new(vars.clone(), vars, images, self.witness_order)?;
        self.push(step, inverse)
    }

    /// The composite change with its inverse, folded from the step inverses.
    pub fn witness(&self) -> Result<JetSubstitution> {
        let vars = self.vars();
        let n = self.witness_order;
        let mut theta: Vec<Polynomial> = (0..vars.len()).map(|k| Polynomial::var_at(vars.clone(), k)).collect();
        for inv in self.inverses.iter().rev() {
            theta = theta.iter().map(|c| c.compose(inv, Some(n)).without_jet_order()).collect();
        }
        Ok(self.total.clone().with_inverse_unchecked(theta))
    }

    /// Inverts, checks and packages the composite change.
    pub fn finish(self, input: &Polynomial, w: &WeightVector) -> Result<(Polynomial, JetSubstitution)> {
        let witness = self.witness()?;
        certify(input, &self.f, &witness, w, self.n)?;
        Ok((self.f, witness))
    }
}

fn compose_forward(total: &JetSubstitution, step: &JetSubstitution, n: u32) -> JetSubstitution {
    let comps: Vec<Polynomial> = total
        .components()
        .iter()
        .map(|c| c.compose(step.components(), Some(n)).without_jet_order())
        .collect();
    JetSubstitution::new(total.source().clone(), total.target().clone(), comps, n)
        .expect("composite of automorphisms without constant terms")
}

/// Checks that `witness` carries `input` to `output` at jet order `n` and is
/// weight-respecting for `w` on both sides.
pub fn certify(
    input: &Polynomial,
    output: &Polynomial,
    witness: &JetSubstitution,
    w: &WeightVector,
    n: u32,
) -> Result<()> {
    let image = substitute_jet(input, witness, n)?;
    if image != output.truncate(n) {
        return Err(Error::WitnessCheckFailed(format!(
            "substitution gives {image}, expected {output}"
        )));
    }
    let check = verify_weight_respecting(witness, w, w)?;
    if !check.weight_respecting {
        return Err(Error::WitnessCheckFailed(check.to_string()));
    }
    Ok(())
}

fn var_index(f: &Polynomial, name: &str) -> Result<usize> {
    f.index_of(name)
        .ok_or_else(|| Error::PreconditionViolated(format!("`{name}` is not a variable of the germ")))
}

fn package(f: Polynomial, witness: JetSubstitution, w: &WeightVector, n: u32) -> MarkedNormalForm {
    let f = f.without_jet_order();
    MarkedNormalForm {
        unit_form: f.support_form(),
        marking: marking_of(&f),
        polynomial: f,
        witness,
        weights: w.clone(),
        jet_order: n,
    }
}

/// Rational factorization `a u² + c uv + b v² = lead · (p1 u + p2 v)(p3 u + p4 v)`.
fn factor_binary_quadratic(a: &Q, c: &Q, b: &Q) -> Result<(Q, [Q; 4])> {
    if a.is_zero() {
        return Ok((Q::one(), [Q::zero(), Q::one(), c.clone(), b.clone()]));
    }
    let disc = c * c - q(4) * a * b;
    if disc.is_zero() {
        return Err(Error::PreconditionViolated("quadratic block in the split pair is degenerate".into()));
    }
    let root = rational_sqrt(&disc).ok_or_else(|| {
        Error::IrrationalChange(format!("discriminant {} of the split pair is not a rational square", fmt_q(&disc)))
    })?;
    let two_a = q(2) * a;
    let r1 = (-c + &root) / &two_a;
    let r2 = (-c - &root) / &two_a;
    Ok((a.clone(), [Q::one(), -r1, Q::one(), -r2]))
}

pub(crate) fn rational_sqrt(x: &Q) -> Option<Q> {
    if x.is_negative() {
        return None;
    }
    let n = x.numer().sqrt();
    let d = x.denom().sqrt();
    (&n * &n == *x.numer() && &d * &d == *x.denom()).then(|| Q::new(n, d))
}

/// Removes every monomial of the ideal `(x_1, x_2)` other than `x_1 x_2`.
pub fn split_quadratic(f: &Polynomial, w: &WeightVector, pair: (&str, &str)) -> Result<MarkedNormalForm> {
    let i1 = var_index(f, pair.0)?;
    let i2 = var_index(f, pair.1)?;
    if i1 == i2 {
        return Err(Error::PreconditionViolated("split pair must name two distinct variables".into()));
    }
    let nv = f.nvars();
    let mut m12 = Monomial::one(nv);
    m12.0[i1] = 1;
    m12.0[i2] = 1;
    if f.coeff(&m12).is_zero() {
        return Err(Error::PreconditionViolated(format!("coefficient of {}*{} is zero", pair.0, pair.1)));
    }
    let wv = w.resolve(f.vars())?;
    let wf = f.weight(w)?;
    if Degree::Finite(m12.weighted_degree(&wv)) > wf {
        return Err(Error::PreconditionViolated(format!(
            "weight of {}*{} exceeds the weight {wf} of the germ",
            pair.0, pair.1
        )));
    }
    let n = working_order(f)?;
    let mut r = Reducer::new(f, n);
    let vars = r.vars();

    let sq = |i: usize| {
        let mut m = Monomial::one(nv);
        m.0[i] = 2;
        m
    };
    let a = r.f.coeff(&sq(i1));
    let b = r.f.coeff(&sq(i2));
    if !a.is_zero() && !b.is_zero() {
        let c = r.f.coeff(&m12);
        let (_, [p1, p2, p3, p4]) = factor_binary_quadratic(&a, &c, &b)?;
        // new x1 = p1 x1 + p2 x2, new x2 = p3 x1 + p4 x2; substitute the inverse.
        let det = &p1 * &p4 - &p2 * &p3;
        let u = Polynomial::var_at(vars.clone(), i1);
        let v = Polynomial::var_at(vars.clone(), i2);
        let img1 = &u.scale(&(&p4 / &det)) - &v.scale(&(&p2 / &det));
        let img2 = &v.scale(&(&p1 / &det)) - &u.scale(&(&p3 / &det));
        let mut images: Vec<Polynomial> = (0..nv).map(|k| Polynomial::var_at(vars.clone(), k)).collect();
        images[i1] = img1;
        images[i2] = img2;
        r.apply(images)?;
    }

    loop {
        let c12 = r.f.coeff(&m12);
        let offending: Vec<(Monomial, Q)> = r
            .f
            .terms()
            .filter(|(m, _)| (m.0[i1] > 0 || m.0[i2] > 0) && **m != m12)
            .map(|(m, c)| (m.clone(), c.clone()))
            .collect();
        let Some(least) = offending.iter().map(|(m, _)| m.weighted_degree(&wv)).min() else { break };
        // All offending terms of the least weight go at once: x_1 m' is
        // removed through x_2 and every other term through x_1.
        let mut deltas = [Polynomial::zero(vars.clone()), Polynomial::zero(vars.clone())];
        for (m, cm) in offending.into_iter().filter(|(m, _)| m.weighted_degree(&wv) == least) {
            let (slot, other) = if m.0[i1] > 0 { (1, i1) } else { (0, i2) };
            let mut qm = m;
            qm.0[other] -= 1;
            deltas[slot].add_term(qm, -(cm / &c12));
        }
        let [d1, d2] = deltas;
        match (d1.is_zero(), d2.is_zero()) {
            (false, true) => r.shift(i1, &d1)?,
            (true, false) => r.shift(i2, &d2)?,
            _ => {
                let mut images: Vec<Polynomial> = (0..nv).map(|k| Polynomial::var_at(vars.clone(), k)).collect();
                images[i1] = &images[i1] + &d1;
                images[i2] = &images[i2] + &d2;
                r.apply(images)?;
            }
        }
    }
    let (out, witness) = r.finish(f, w)?;
    Ok(package(out, witness, w, n))
}

/// Eliminates the terms `v·q` with `wt(q) ≥ wt(v)` against the `v²` term.
pub fn complete_square(f: &Polynomial, w: &WeightVector, v: &str) -> Result<MarkedNormalForm> {
    let n = working_order(f)?;
    let mut r = Reducer::new(f, n);
    let wv = w.resolve(f.vars())?;
    complete_square_in(&mut r, &wv, var_index(f, v)?)?;
    let (out, witness) = r.finish(f, w)?;
    Ok(package(out, witness, w, n))
}

pub(crate) fn complete_square_in(r: &mut Reducer, wv: &[u32], i: usize) -> Result<()> {
    let nv = r.f.nvars();
    let mut sq = Monomial::one(nv);
    sq.0[i] = 2;
    let cvv = r.f.coeff(&sq);
    if cvv.is_zero() {
        return Err(Error::PreconditionViolated(format!("no square term in `{}`", r.f.vars()[i])));
    }
    let vars = r.vars();
    loop {
        let offending = r
            .f
            .terms()
            .filter(|(m, _)| m.0[i] > 0 && **m != sq && m.weighted_degree(wv) >= 2 * wv[i])
            .min_by(|(x, _), (y, _)| (x.weighted_degree(wv), *x).cmp(&(y.weighted_degree(wv), *y)))
            .map(|(m, c)| (m.clone(), c.clone()));
        let Some((m, cm)) = offending else { return Ok(()) };
        let mut qm = m;
        qm.0[i] -= 1;
        let delta = Polynomial::monomial(vars.clone(), qm, -(cm / (q(2) * &cvv)));
        r.shift(i, &delta)?;
    }
}

/// Quadratic part split off over the rationals: the germ becomes
/// `Σ λ_k v_k² + h(residual variables)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SplitForm {
    pub polynomial: Polynomial,
    pub witness: JetSubstitution,
    /// Variables carrying the nondegenerate quadratic part, with their coefficients.
    #[serde(skip)]
    pub pivots: Vec<(usize, Q)>,
    #[serde(skip)]
    pub residual_vars: Vec<usize>,
    /// `h`, written in the residual variables only.
    pub residual: Polynomial,
    pub jet_order: u32,
}

/// Rational congruence diagonalization followed by square completion with
/// all weights 1.
pub fn split_germ(f: &Polynomial) -> Result<SplitForm> {
    let n = working_order(f)?;
    let nv = f.nvars();
    let ones = vec![1u32; nv];
    let mut r = Reducer::new(f, n);
    let vars = r.vars();
    let mut pivots: Vec<(usize, Q)> = Vec::new();
    loop {
        let taken: Vec<usize> = pivots.iter().map(|(i, _)| *i).collect();
        let m = r.f.quadratic_matrix();
        let free: Vec<usize> = (0..nv).filter(|i| !taken.contains(i)).collect();
        let diag = free.iter().copied().find(|&i| !m[i][i].is_zero());
        let pivot = match diag {
            Some(i) => i,
            None => {
                let off = free
                    .iter()
                    .flat_map(|&i| free.iter().map(move |&j| (i, j)))
                    .find(|&(i, j)| i < j && !m[i][j].is_zero());
                let Some((i, j)) = off else { break };
                r.shift(i, &Polynomial::var_at(vars.clone(), j))?;
                j
            }
        };
        complete_square_in(&mut r, &ones, pivot)?;
        let mut sq = Monomial::one(nv);
        sq.0[pivot] = 2;
        pivots.push((pivot, r.f.coeff(&sq)));
    }
    let taken: Vec<usize> = pivots.iter().map(|(i, _)| *i).collect();
    let residual_vars: Vec<usize> = (0..nv).filter(|i| !taken.contains(i)).collect();
    let (out, witness) = r.finish(f, &WeightVector::standard(&vars))?;
    let rnames: Vars = residual_vars.iter().map(|&i| vars[i].clone()).collect();
    let residual = out.filter(|m| taken.iter().all(|&i| m.0[i] == 0)).without_jet_order().embed(&rnames)?;
    Ok(SplitForm { polynomial: out.without_jet_order(), witness, pivots, residual_vars, residual, jet_order: n })
}

/// Arnold-style normal form: above the least weight, only monomials of a
/// Milnor basis of the leading part survive.
pub fn weighted_normal_form(f: &Polynomial, w: &WeightVector) -> Result<MarkedNormalForm> {
    let n = working_order(f)?;
    let r = weighted_reduce(f, w, n)?;
    let (out, witness) = r.finish(f, w)?;
    Ok(package(out, witness, w, n))
}

pub(crate) fn weighted_reduce(f: &Polynomial, w: &WeightVector, n: u32) -> Result<Reducer> {
    if f.is_zero() || !f.constant_term().is_zero() {
        return Err(Error::PreconditionViolated("germ is zero or a unit".into()));
    }
    let wv = w.resolve(f.vars())?;
    let d0 = f.weight(w)?.finite().expect("nonzero germ");
    let f0 = f.quasihomogeneous_part(w, d0)?;
    let basis = quasihomogeneous_milnor_data(&f0, &wv, d0)?.basis;
    let partials = f0.jacobian_generators();
    let vars = f.vars().clone();
    let nv = vars.len();
    let maxw = *wv.iter().max().unwrap_or(&1);
    let mut r = Reducer::new(f, n);
    for d in d0 + 1..=maxw * n {
        let level = r.f.quasihomogeneous_part(w, d)?;
        let b: Vec<(Monomial, Q)> = level
            .terms()
            .filter(|(m, _)| !basis.contains(m))
            .map(|(m, c)| (m.clone(), c.clone()))
            .collect();
        if b.is_empty() {
            continue;
        }
        let mut cols: HashMap<Monomial, usize> = HashMap::new();
        let col = |m: Monomial, cols: &mut HashMap<Monomial, usize>| {
            let k = cols.len();
            *cols.entry(m).or_insert(k)
        };
        let mut gens: Vec<Option<(usize, Monomial)>> = Vec::new();
        let mut ech = Echelon::new(true);
        for (i, p) in partials.iter().enumerate() {
            if p.is_zero() {
                continue;
            }
            for m in Monomial::all_of_weight(&wv, wv[i] + d - d0) {
                if m.degree() + 1 > n {
                    continue;
                }
                let v: SparseVec = p
                    .terms()
                    .map(|(t, c)| (t.mul(&m), c.clone()))
                    .filter(|(t, _)| t.degree() <= n)
                    .map(|(t, c)| (col(t, &mut cols), c))
                    .collect();
                gens.push(Some((i, m)));
                ech.insert(v);
            }
        }
        for s in basis.iter().filter(|s| s.weighted_degree(&wv) == d && s.degree() <= n) {
            gens.push(None);
            let mut v = SparseVec::new();
            v.insert(col(s.clone(), &mut cols), Q::one());
            ech.insert(v);
        }
        let target: SparseVec = b.into_iter().map(|(m, c)| (col(m, &mut cols), c)).collect();
        let combo = ech.solve(target).ok_or_else(|| {
            Error::PreconditionViolated(format!("weight-{d} part is not reachable from the tangent space of the leading part"))
        })?;
        let mut g: Vec<Polynomial> = vec![Polynomial::zero(vars.clone()); nv];
        for (id, c) in combo {
            if let Some((i, m)) = &gens[id] {
                g[*i].add_term(m.clone(), c);
            }
        }
        let images = (0..nv).map(|i| &Polynomial::var_at(vars.clone(), i) - &g[i]).collect();
        r.apply(images)?;
    }
    Ok(r)
}

/// Removes every term above the least weight when the leading part is a
/// simple singularity.
pub fn reduce_to_simple(f: &Polynomial, w: &WeightVector) -> Result<MarkedNormalForm> {
    if is_e6_weights(f, w) {
        let d0 = f.weight(w)?.finite().unwrap_or(0);
        let f0 = f.quasihomogeneous_part(w, d0)?;
        if quasihomogeneous_milnor_data(&f0, &w.resolve(f.vars())?, d0).is_err() {
            return e6_normal_form(f);
        }
    }
    let wv = w.resolve(f.vars())?;
    let d0 = f
        .weight(w)?
        .finite()
        .ok_or_else(|| Error::NotSimpleLeadingPart("germ is zero".into()))?;
    let f0 = f.quasihomogeneous_part(w, d0)?;
    let data = quasihomogeneous_milnor_data(&f0, &wv, d0).map_err(|e| Error::NotSimpleLeadingPart(format!("{f0}: {e}")))?;
    if let Some(m) = data.basis.iter().find(|m| m.weighted_degree(&wv) >= d0) {
        return Err(Error::NotSimpleLeadingPart(format!(
            "{f0} has a modulus: {} of weight {} in its Milnor algebra",
            m.render(f0.vars()),
            m.weighted_degree(&wv)
        )));
    }
    let n = working_order(f)?;
    let r = weighted_reduce(f, w, n)?;
    let (out, witness) = r.finish(f, w)?;
    if out.clone().without_jet_order() != f0 {
        return Err(Error::NotSimpleLeadingPart(format!("reduction stopped at {out}")));
    }
    Ok(package(out, witness, w, n))
}

fn is_e6_weights(f: &Polynomial, w: &WeightVector) -> bool {
    f.vars().len() == 4
        && ["x", "y", "z", "t"].iter().zip([4, 3, 2, 1]).all(|(v, k)| w.get(v) == Some(k) && f.index_of(v).is_some())
}

/// Normal form `α x² + β y² + γ z³ + δ x t²` of a germ of weight 6 for the
/// weights `(4, 3, 2, 1)` on `(x, y, z, t)`. Over the complex numbers the
/// diagonal scaling to unit coefficients is weight-respecting, so the result
/// is a marked form of `x² + y² + z³ + x t²`.
pub fn e6_normal_form(f: &Polynomial) -> Result<MarkedNormalForm> {
    let w = WeightVector::xyzt(&[4, 3, 2, 1])?;
    let f = f.embed(&crate::poly::xyzt())?;
    let wf = f.weight(&w)?;
    if wf != Degree::Finite(6) {
        return Err(Error::PreconditionViolated(format!("weight of the germ is {wf}, expected 6")));
    }
    let wv = [4u32, 3, 2, 1];
    let (ix, iy, it) = (0, 1, 3);
    let n = working_order(&f)?;
    let mut r = Reducer::new(&f, n);
    let vars = r.vars();
    let mono = |e: [u32; 4]| Monomial(e.to_vec());
    let var = |i: usize| Polynomial::var_at(vars.clone(), i);

    complete_square_in(&mut r, &wv, iy)?;
    let alpha = r.f.coeff(&mono([2, 0, 0, 0]));
    if alpha.is_zero() {
        return Err(Error::PreconditionViolated("no x^2 term".into()));
    }
    if !r.f.coeff(&mono([1, 0, 1, 0])).is_zero() {
        return Err(Error::PreconditionViolated("x*z term present; leading part is not of type E6".into()));
    }
    let delta = r.f.coeff(&mono([1, 0, 0, 2]));
    if delta.is_zero() {
        return Err(Error::PreconditionViolated("no x*t^2 term".into()));
    }
    // x·z·t and x·t³ are removed by shearing t against x·t².
    for e in [[1, 0, 1, 1], [1, 0, 0, 3]] {
        let c = r.f.coeff(&mono(e));
        if !c.is_zero() {
            let mut qm = mono(e);
            qm.0[ix] -= 1;
            qm.0[it] -= 1;
            let shift = Polynomial::monomial(vars.clone(), qm, -(c / (q(2) * &delta)));
            r.shift(it, &shift)?;
        }
    }
    complete_square_in(&mut r, &wv, ix)?;
    let leftover = r
        .f
        .terms()
        .find(|(m, _)| (m.0[ix] > 0 || m.0[iy] > 0) && ![mono([2, 0, 0, 0]), mono([0, 2, 0, 0]), mono([1, 0, 0, 2])].contains(m))
        .map(|(m, _)| m.render(&vars));
    if let Some(m) = leftover {
        return Err(Error::PreconditionViolated(format!("unexpected term {m} after splitting")));
    }
    let beta = r.f.coeff(&mono([0, 2, 0, 0]));
    let g = r.f.filter(|m| m.0[ix] == 0 && m.0[iy] == 0);

    // h = g - δ² t⁴ / (4α), reduced in (z, t) with weights (4, 3).
    let zt: Vars = crate::poly::vars(&["z", "t"]);
    let t4 = Polynomial::monomial(vars.clone(), mono([0, 0, 0, 4]), &delta * &delta / (q(4) * &alpha));
    let h = (&g.clone().without_jet_order() - &t4).embed(&zt)?;
    let w2 = WeightVector::new([("z", 4), ("t", 3)])?;
    let h0 = h.leading_part(&w2)?;
    let gamma = h0.coeff_of(&[3, 0]);
    if gamma.is_zero() || h.weight(&w2)? != Degree::Finite(12) {
        return Err(Error::NotSimpleLeadingPart(format!("residual {h} is not of type E6")));
    }
    let reduced = weighted_reduce(&h, &w2, n)?;
    if reduced.f.clone().without_jet_order() != h0 {
        return Err(Error::NotSimpleLeadingPart(format!("residual reduces to {}", reduced.f)));
    }
    let phi = reduced.witness()?.extend_identity(&vars)?;
    let phi_t = phi.components()[it].clone();
    let phi_inv = phi.inverse_components().expect("witness carries an inverse").to_vec();
    r.push(phi, phi_inv)?;
    let t = var(it);
    let x_shift = (&t.pow(2) - &phi_t.pow_jet(2, Some(n))).scale(&(&delta / (q(2) * &alpha)));
    r.shift(ix, &x_shift)?;

    let expected = Polynomial::from_terms(
        vars.clone(),
        [
            (mono([2, 0, 0, 0]), alpha.clone()),
            (mono([0, 2, 0, 0]), beta.clone()),
            (mono([0, 0, 3, 0]), gamma.clone()),
            (mono([1, 0, 0, 2]), delta.clone()),
        ],
    );
    if r.f.clone().without_jet_order() != expected {
        return Err(Error::WitnessCheckFailed(format!("E6 reduction produced {}", r.f)));
    }
    let (out, witness) = r.finish(&f, &w)?;
    let mut nf = package(out, witness, &w, n);
    nf.unit_form = crate::parse::parse_polynomial("x^2 + y^2 + z^3 + x*t^2").expect("literal");
    Ok(nf)
}
