#![allow(dead_code)]

use cadiv::parse::parse_polynomial;
use cadiv::poly::{Polynomial, WeightVector};
use num_traits::One;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand::SeedableRng;
use std::collections::{BTreeMap, HashMap};

pub fn p(s: &str) -> Polynomial {
    parse_polynomial(s).unwrap()
}

pub fn w(ws: &[u32]) -> WeightVector {
    WeightVector::xyzt(ws).unwrap()
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Threefold germs with their expected simple type (or `None`).
pub const CORPUS: &[(&str, Option<&str>)] = &[
    ("x*y + z*t", Some("A1")),
    ("x*y + z^2 + t^3", Some("A2")),
    ("x*y + z^2 + t^5", Some("A4")),
    ("x^2 + y^2 + z^2*t + t^3", Some("D4")),
    ("x^2 + y^2 + z^2*t + t^4", Some("D5")),
    ("x^2 + y^2 + z^3 + x*t^2", Some("E6")),
    ("x^2 + y^2 + z^3 + z*t^3", Some("E7")),
    ("x^2 + y^2 + z^3 + t^5", Some("E8")),
    ("x*y + z^3 + t^6", None),
    ("x*y + z^4 + t^4", None),
];

// ---------------------------------------------------------------------------
// Milnor number oracle: dense jets, arithmetic modulo a large prime.
//
// d_k = dim R / (J + m^{k+1}); once d_k = d_{k+1}, Nakayama gives
// m^{k+1} ⊆ J and μ = d_k.

pub const PRIME: u64 = 2_147_483_647;

fn inv_mod(a: u64) -> u64 {
    let (mut r, mut b, mut e) = (1u64, a % PRIME, PRIME - 2);
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % PRIME;
        }
        b = b * b % PRIME;
        e >>= 1;
    }
    r
}

fn to_mod(c: &num_rational::BigRational) -> u64 {
    let m = num_bigint::BigInt::from(PRIME);
    let reduce = |x: &num_bigint::BigInt| -> u64 {
        let r = ((x % &m) + &m) % &m;
        u64::try_from(r).unwrap()
    };
    reduce(c.numer()) * inv_mod(reduce(c.denom())) % PRIME
}

/// All exponent vectors in `n` variables of total degree at most `k`.
fn exponents_up_to(n: usize, k: u32) -> Vec<Vec<u32>> {
    fn rec(i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if i == cur.len() {
            out.push(cur.clone());
            return;
        }
        for e in 0..=left {
            cur[i] = e;
            rec(i + 1, left - e, cur, out);
        }
        cur[i] = 0;
    }
    let mut out = Vec::new();
    rec(0, k, &mut vec![0; n], &mut out);
    out
}

fn partials_mod(f: &Polynomial) -> Vec<Vec<(Vec<u32>, u64)>> {
    let n = f.nvars();
    (0..n)
        .map(|i| {
            let mut out = Vec::new();
            for (m, c) in f.terms() {
                let e = m.0[i];
                if e == 0 {
                    continue;
                }
                let mut d = m.0.clone();
                d[i] -= 1;
                let coeff = to_mod(c) * u64::from(e) % PRIME;
                if coeff != 0 {
                    out.push((d, coeff));
                }
            }
            out
        })
        .collect()
}

fn rank_mod(rows: Vec<BTreeMap<usize, u64>>) -> usize {
    let mut pivots: HashMap<usize, BTreeMap<usize, u64>> = HashMap::new();
    for mut row in rows {
        while let Some((&col, &val)) = row.iter().next() {
            match pivots.get(&col) {
                None => {
                    let inv = inv_mod(val);
                    for v in row.values_mut() {
                        *v = *v * inv % PRIME;
                    }
                    pivots.insert(col, row);
                    break;
                }
                Some(piv) => {
                    for (&c, &pv) in piv {
                        let e = row.entry(c).or_insert(0);
                        *e = (*e + PRIME - val * pv % PRIME) % PRIME;
                        if *e == 0 {
                            row.remove(&c);
                        }
                    }
                }
            }
        }
    }
    pivots.len()
}

fn colength(partials: &[Vec<(Vec<u32>, u64)>], n: usize, k: u32) -> usize {
    let monos = exponents_up_to(n, k);
    let index: HashMap<&Vec<u32>, usize> = monos.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let mut rows = Vec::new();
    for m in &monos {
        for part in partials {
            let mut row = BTreeMap::new();
            for (e, c) in part {
                let prod: Vec<u32> = m.iter().zip(e).map(|(a, b)| a + b).collect();
                if prod.iter().sum::<u32>() <= k {
                    row.insert(index[&prod], *c);
                }
            }
            if !row.is_empty() {
                rows.push(row);
            }
        }
    }
    monos.len() - rank_mod(rows)
}

/// Milnor number by brute-force jet row reduction, or `None` if it has not
/// stabilized by degree `cap`.
pub fn oracle_milnor(f: &Polynomial, cap: u32) -> Option<usize> {
    let partials = partials_mod(f);
    let n = f.nvars();
    let mut prev = colength(&partials, n, 0);
    for k in 1..=cap {
        let d = colength(&partials, n, k);
        if d == prev {
            return Some(d);
        }
        prev = d;
    }
    None
}

// ---------------------------------------------------------------------------
// Random germs.

const SMALL: &[(i64, i64)] = &[(1, 1), (-1, 1), (2, 1), (-2, 1), (1, 2), (-3, 2), (3, 1)];

pub fn small_coeff(r: &mut ChaCha8Rng) -> num_rational::BigRational {
    let (n, d) = SMALL[r.gen_range(0..SMALL.len())];
    num_rational::BigRational::new(n.into(), d.into())
}

/// A random monomial in x, y, z, t of total degree `deg`.
pub fn random_monomial(r: &mut ChaCha8Rng, deg: u32) -> Vec<u32> {
    let mut e = vec![0u32; 4];
    for _ in 0..deg {
        e[r.gen_range(0..4)] += 1;
    }
    e
}

pub fn monomial_poly(e: Vec<u32>, c: num_rational::BigRational) -> Polynomial {
    Polynomial::monomial(cadiv::poly::xyzt(), cadiv::Monomial(e), c)
}

/// `xy + g(z, t)` templates, quasi-homogeneous of weight `w_x + w_y`.
pub const SPLIT_TEMPLATES: &[(&[u32], &str)] = &[
    (&[1, 5, 2, 1], "z^3 + t^6"),
    (&[3, 3, 2, 1], "z^3 + t^6"),
    (&[1, 1, 1, 1], "z^2 + t^2"),
    (&[1, 1, 1, 1], "z*t"),
    (&[1, 2, 1, 1], "z^3 + t^3"),
    (&[1, 3, 2, 1], "z^2 + t^4"),
    (&[2, 2, 1, 1], "z^4 + t^4"),
    (&[1, 3, 1, 1], "z^4 + z*t^3 + t^4"),
    (&[1, 5, 3, 2], "z^2 + t^3"),
    (&[2, 3, 2, 1], "z^2*t + t^5"),
];

/// A random germ `q(x, y) + g(z, t) + h` with `q` a rational product of two
/// independent forms (equal weights) or `xy`, and `h` of weight above `wt f`
/// with at most `extra` terms. Returns the germ, weights and quasi-homogeneous part.
pub fn random_split_germ(r: &mut ChaCha8Rng, extra: usize) -> (Polynomial, WeightVector, Polynomial) {
    let (ws, g) = SPLIT_TEMPLATES[r.gen_range(0..SPLIT_TEMPLATES.len())];
    let wv = w(ws);
    let d = ws[0] + ws[1];
    let mut q = p("x*y");
    if ws[0] == ws[1] && r.gen_bool(0.5) {
        let (a, b) = (small_coeff(r), small_coeff(r));
        let l1 = &p("x") + &p("y").scale(&a);
        let l2 = &p("x").scale(&b) - &p("y");
        let ab = &a * &b;
        if ab != num_rational::BigRational::one() && ab != -num_rational::BigRational::one() {
            q = &l1 * &l2;
        }
    }
    let f0 = &q + &p(g);
    let mut f = f0.clone();
    let terms = r.gen_range(0..=extra);
    let mut added = 0;
    while added < terms {
        let deg = r.gen_range(2..=5);
        let e = random_monomial(r, deg);
        let wt: u32 = e.iter().zip(ws).map(|(a, b)| a * b).sum();
        if wt > d && wt <= d + 4 {
            f = &f + &monomial_poly(e, small_coeff(r));
            added += 1;
        }
    }
    (f, wv, f0)
}
