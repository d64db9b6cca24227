//! Independent Betti oracle: forms as maps from monomial bitmasks to
//! rationals, d by the Leibniz rule, ranks by plain Gaussian elimination.
//! Shares no code with the engine.

#![allow(dead_code)]

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

type Form = BTreeMap<u32, BigRational>;

/// Generators `0..n`, `d(e_i) = Σ c e_a ∧ e_b`, and the generators spanning
/// the basic subalgebra.
pub struct Oracle {
    pub n: usize,
    pub d: Vec<Vec<(i64, usize, usize)>>,
    pub transverse: Vec<usize>,
}

fn q(c: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(c))
}

/// `e_a ∧ e_b` for sorted monomials, as a sign, or `None` when they share a
/// generator.
fn merge(a: u32, b: u32) -> Option<i64> {
    if a & b != 0 {
        return None;
    }
    let mut swaps = 0;
    for j in 0..32 {
        if b & (1 << j) != 0 {
            swaps += (a >> (j + 1)).count_ones();
        }
    }
    Some(if swaps % 2 == 0 { 1 } else { -1 })
}

fn wedge(x: &Form, y: &Form) -> Form {
    let mut out = Form::new();
    for (a, ca) in x {
        for (b, cb) in y {
            if let Some(s) = merge(*a, *b) {
                *out.entry(a | b).or_insert_with(BigRational::zero) += ca * cb * q(s);
            }
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

impl Oracle {
    pub fn closed(n: usize, transverse: Vec<usize>) -> Self {
        Oracle {
            n,
            d: vec![Vec::new(); n],
            transverse,
        }
    }

    pub fn with(mut self, g: usize, terms: &[(i64, usize, usize)]) -> Self {
        self.d[g] = terms.to_vec();
        self
    }

    fn d_gen(&self, i: usize) -> Form {
        let mut f = Form::new();
        for &(c, a, b) in &self.d[i] {
            let (lo, hi, s) = if a < b { (a, b, c) } else { (b, a, -c) };
            *f.entry((1 << lo) | (1 << hi)).or_insert_with(BigRational::zero) += q(s);
        }
        f.retain(|_, c| !c.is_zero());
        f
    }

    /// d of one monomial: `Σ_p (−1)^p e_{i_1} … d(e_{i_p}) … e_{i_k}`.
    fn d_mono(&self, m: u32) -> Form {
        let idx: Vec<usize> = (0..self.n).filter(|i| m & (1 << i) != 0).collect();
        let mut out = Form::new();
        for p in 0..idx.len() {
            let mut acc: Form = [(0u32, q(if p % 2 == 0 { 1 } else { -1 }))].into();
            for (r, &j) in idx.iter().enumerate() {
                let factor = if r == p {
                    self.d_gen(j)
                } else {
                    [(1u32 << j, BigRational::one())].into()
                };
                acc = wedge(&acc, &factor);
            }
            for (k, c) in acc {
                *out.entry(k).or_insert_with(BigRational::zero) += c;
            }
        }
        out.retain(|_, c| !c.is_zero());
        out
    }

    fn monomials(&self, k: usize, allowed: u32) -> Vec<u32> {
        (0u32..(1 << self.n))
            .filter(|m| m.count_ones() as usize == k && m & !allowed == 0)
            .collect()
    }

    fn rank_of_d(&self, k: usize, allowed: u32) -> usize {
        let src = self.monomials(k, allowed);
        let dst = self.monomials(k + 1, allowed);
        let mut rows: Vec<Vec<BigRational>> = src
            .iter()
            .map(|&m| {
                let f = self.d_mono(m);
                dst.iter().map(|t| f.get(t).cloned().unwrap_or_else(BigRational::zero)).collect()
            })
            .collect();
        rank(&mut rows)
    }

    fn betti_on(&self, allowed: u32, top: usize) -> Vec<usize> {
        let ranks: Vec<usize> = (0..=top).map(|k| self.rank_of_d(k, allowed)).collect();
        (0..=top)
            .map(|k| {
                let dim = self.monomials(k, allowed).len();
                dim - ranks[k] - if k > 0 { ranks[k - 1] } else { 0 }
            })
            .collect()
    }

    pub fn de_rham_betti(&self) -> Vec<usize> {
        self.betti_on((1u32 << self.n) - 1, self.n)
    }

    pub fn basic_betti(&self) -> Vec<usize> {
        let mask = self.transverse.iter().fold(0u32, |m, &i| m | (1 << i));
        self.betti_on(mask, self.transverse.len())
    }

    /// Checks `d² = 0` on every monomial.
    pub fn is_complex(&self) -> bool {
        (0u32..(1 << self.n)).all(|m| {
            let mut dd = Form::new();
            for (k, c) in self.d_mono(m) {
                for (t, e) in self.d_mono(k) {
                    *dd.entry(t).or_insert_with(BigRational::zero) += &c * e;
                }
            }
            dd.values().all(Zero::is_zero)
        })
    }
}

fn rank(rows: &mut [Vec<BigRational>]) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let f = &rows[i][c] / &rows[r][c];
                let pivot = rows[r].clone();
                for (x, y) in rows[i].iter_mut().zip(&pivot) {
                    *x -= &f * y;
                }
            }
        }
        r += 1;
    }
    r
}

/// Hand transcriptions of the builtin models, 0-based generator indices.
pub fn oracle_zoo(name: &str) -> Oracle {
    match name {
        "heisenberg3" => Oracle::closed(3, vec![0, 1]).with(2, &[(1, 0, 1)]),
        "kodaira_thurston" => Oracle::closed(4, vec![0, 1, 2, 3]).with(3, &[(1, 0, 1)]),
        "kt_contact5" => Oracle::closed(5, vec![1, 2, 3, 4])
            .with(0, &[(1, 1, 3), (1, 2, 4)])
            .with(4, &[(1, 1, 2)]),
        "cosymplectic_t5" => Oracle::closed(5, vec![0, 1, 2, 3]),
        "bw_torus4" => Oracle::closed(5, vec![0, 1, 2, 3]).with(4, &[(1, 0, 1), (1, 2, 3)]),
        torus => {
            let n: usize = torus.strip_prefix("torus").and_then(|d| d.parse().ok()).expect("torus<2n>");
            Oracle::closed(n, (0..n).collect())
        }
    }
}
