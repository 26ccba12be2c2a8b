//! GF(2^n) arithmetic and the Niho trace function `Tr(α^{2√N - 1})`, whose
//! four-valued spectrum witnesses near-tightness of the entropy Lipschitz
//! bound.

use crate::bf::BooleanFunction;
use crate::error::{Error, Result};
use std::collections::BTreeMap;

/// Binary field of degree `n` with a validated irreducible modulus.
#[derive(Clone, Debug)]
pub struct GaloisField {
    n: u32,
    /// Degree-n irreducible polynomial over GF(2) as a bitmask (bit n set).
    modulus: u64,
}

fn poly_mod(mut r: u64, q: u64) -> u64 {
    let qb = 64 - q.leading_zeros();
    loop {
        let rb = 64 - r.leading_zeros();
        if rb < qb {
            return r;
        }
        r ^= q << (rb - qb);
    }
}

/// Divisibility test against every polynomial of degree 1..n/2.
pub fn is_irreducible(poly: u64, n: u32) -> bool {
    for d in 1..=(n / 2) {
        for q in (1u64 << d)..(1u64 << (d + 1)) {
            if poly_mod(poly, q) == 0 {
                return false;
            }
        }
    }
    true
}

impl GaloisField {
    /// Field with the lexicographically smallest irreducible modulus of
    /// degree `n`, found by exhaustive divisibility testing.
    pub fn new(n: u32) -> Result<Self> {
        Self::with_nth_modulus(n, 0)
    }

    /// Picks the k-th smallest irreducible modulus (used to verify that the
    /// Niho spectrum multiset is basis-independent).
    pub fn with_nth_modulus(n: u32, k: u32) -> Result<Self> {
        if !(1..=24).contains(&n) {
            return Err(Error::VarCountOutOfRange(n, 24));
        }
        let mut seen = 0;
        for low in 0..(1u64 << n) {
            let p = (1u64 << n) | low;
            if is_irreducible(p, n) {
                if seen == k {
                    return Ok(GaloisField { n, modulus: p });
                }
                seen += 1;
            }
        }
        Err(Error::NoIrreducible(n))
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn mul(&self, mut a: u64, mut b: u64) -> u64 {
        let mut r = 0u64;
        while b != 0 {
            if b & 1 == 1 {
                r ^= a;
            }
            b >>= 1;
            a <<= 1;
            if (a >> self.n) & 1 == 1 {
                a ^= self.modulus;
            }
        }
        r
    }

    pub fn pow(&self, mut a: u64, mut e: u64) -> u64 {
        let mut r = 1u64;
        while e != 0 {
            if e & 1 == 1 {
                r = self.mul(r, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        r
    }

    /// Absolute trace `Tr(α) = Σ_{i<n} α^{2^i}`, always 0 or 1.
    pub fn trace(&self, a: u64) -> u64 {
        let mut t = 0u64;
        let mut x = a;
        for _ in 0..self.n {
            t ^= x;
            x = self.mul(x, x);
        }
        debug_assert!(t <= 1, "trace landed outside GF(2)");
        t
    }
}

/// Truth table of the Niho function `f(α) = Tr(α^{2√N - 1})` for
/// `n ∈ {4, 8, 12}`. The coordinate vector `c` of `α` (polynomial basis,
/// most significant coordinate ↦ x1) maps to the input with `x_j` true iff
/// `c_j = 1`, i.e. table index `(N-1) - c`; `α = 0` therefore sits at the
/// all-false input, and `Tr = 0 ↦ false` makes `f(0) = false`.
pub fn niho(n: u32) -> Result<BooleanFunction> {
    niho_in_field(&field_for(n)?)
}

fn field_for(n: u32) -> Result<GaloisField> {
    if !matches!(n, 4 | 8 | 12) {
        return Err(Error::UnsupportedNihoDegree(n));
    }
    GaloisField::new(n)
}

/// Same as [`niho`] but over a caller-chosen field (for basis-independence
/// checks).
pub fn niho_in_field(gf: &GaloisField) -> Result<BooleanFunction> {
    let n = gf.n();
    if !matches!(n, 4 | 8 | 12) {
        return Err(Error::UnsupportedNihoDegree(n));
    }
    let nn = 1u64 << n;
    let r = 2 * (1u64 << (n / 2)) - 1;
    let mut bits = vec![false; nn as usize];
    for c in 0..nn {
        let t = gf.trace(gf.pow(c, r));
        bits[((nn - 1) - c) as usize] = t == 1;
    }
    BooleanFunction::from_bits(n, &bits)
}

/// Multiset of integer spectrum values `A(S) = N·f̂(S)`, as (value, count).
pub fn spectrum_multiset(f: &BooleanFunction) -> Vec<(i32, u64)> {
    let mut counts: BTreeMap<i32, u64> = BTreeMap::new();
    for &a in f.spectrum().coeffs() {
        *counts.entry(a).or_insert(0) += 1;
    }
    counts.into_iter().collect()
}

/// The published four-valued spectrum: values `-√N, 0, √N, 2√N` (as `N·f̂`)
/// with multiplicities `(N-√N)/3, (N-√N)/2, √N, (N-√N)/6`.
pub fn table2_expected(n: u32) -> Result<Vec<(i32, u64)>> {
    if !matches!(n, 4 | 8 | 12) {
        return Err(Error::UnsupportedNihoDegree(n));
    }
    let nn = 1u64 << n;
    let r = 1u64 << (n / 2);
    Ok(vec![
        (-(r as i32), (nn - r) / 3),
        (0, (nn - r) / 2),
        (r as i32, r),
        (2 * r as i32, (nn - r) / 6),
    ])
}

/// Entropy gap of the Niho function at the `α = 0` entry.
#[derive(Clone, Debug)]
pub struct NihoGap {
    pub n: u32,
    /// `H[f + 2δ] - H[f]`: entropy change when the α=0 entry flips to true.
    pub gap: f64,
    /// Claimed lower threshold `8/(3√N)`.
    pub threshold: f64,
    /// Lipschitz upper bound `12n/√N`.
    pub lemma_bound: f64,
}

impl NihoGap {
    pub fn exceeds_threshold(&self) -> bool {
        self.gap > self.threshold
    }

    pub fn within_lemma_bound(&self) -> bool {
        self.gap.abs() <= self.lemma_bound
    }
}

/// Measures the entropy change from flipping the `α = 0` entry (the
/// all-false input, where the function is false).
pub fn niho_gap(n: u32) -> Result<NihoGap> {
    let f = niho(n)?;
    let index = f.size() - 1;
    debug_assert!(!f.get(index));
    let flipped = f.flip_entry(index)?;
    let gap = flipped.spectrum().entropy() - f.spectrum().entropy();
    let sqrt_n = ((1u64 << n) as f64).sqrt();
    Ok(NihoGap {
        n,
        gap,
        threshold: 8.0 / (3.0 * sqrt_n),
        lemma_bound: 12.0 * n as f64 / sqrt_n,
    })
}
