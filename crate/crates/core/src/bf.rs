//! Truth-table representation of Boolean functions and exact spectra.
//!
//! Conventions (shared by every module):
//!
//! * logical `true` is the field value `-1`, `false` is `+1`;
//! * input `x` corresponds to the integer index `i` whose j-th most
//!   significant bit (j = 1..n) is 0 iff `x_j = true`. The all-true input is
//!   index 0, the all-false input is index `N-1`, and the lexicographic
//!   initial segment of size `s` is exactly the index set `{0, .., s-1}`;
//! * a subset `S ⊆ [n]` is the bitmask with the same bit layout, so
//!   `A(S) = Σ_x f(x) χ_S(x)` is an integer array of length `2^n`.

use crate::error::{Error, Result};
use crate::numeric::spectral_entropy;
use crate::profile::FunctionProfile;
use crate::{Rat, MAX_VARS};
use num::{BigInt, One, Zero};

/// Dense truth table of a Boolean function on `1..=24` variables.
///
/// Bit `i` of the backing words is 1 iff the output at index `i` is true.
#[derive(Clone, PartialEq, Eq)]
pub struct BooleanFunction {
    n: u32,
    words: Vec<u64>,
}

impl std::fmt::Debug for BooleanFunction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "BooleanFunction(n={}, |f^-1(true)|={})", self.n, self.true_count())
    }
}

fn check_n(n: u32) -> Result<()> {
    if !(1..=MAX_VARS).contains(&n) {
        return Err(Error::VarCountOutOfRange(n, MAX_VARS));
    }
    Ok(())
}

impl BooleanFunction {
    /// Builds a function from output bits listed in index order.
    pub fn from_bits(n: u32, bits: &[bool]) -> Result<Self> {
        check_n(n)?;
        let len = 1usize << n;
        if bits.len() != len {
            return Err(Error::TableLengthMismatch { n, got: bits.len() });
        }
        let mut f = Self::constant(n, false);
        for (i, &b) in bits.iter().enumerate() {
            if b {
                f.words[i >> 6] |= 1u64 << (i & 63);
            }
        }
        Ok(f)
    }

    /// Builds via a predicate over indices.
    pub fn from_fn(n: u32, pred: impl Fn(u64) -> bool) -> Result<Self> {
        check_n(n)?;
        let mut f = Self::constant(n, false);
        for i in 0..(1u64 << n) {
            if pred(i) {
                f.set(i, true);
            }
        }
        Ok(f)
    }

    /// The constant function (`true` everywhere or `false` everywhere).
    pub fn constant(n: u32, value: bool) -> Self {
        let len = 1usize << n;
        let nwords = len.div_ceil(64);
        let mut words = vec![if value { !0u64 } else { 0 }; nwords];
        if value && len < 64 {
            words[0] = (1u64 << len) - 1;
        }
        BooleanFunction { n, words }
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    /// Table size `N = 2^n`.
    pub fn size(&self) -> u64 {
        1u64 << self.n
    }

    /// Output at index `i` (true = -1).
    pub fn get(&self, i: u64) -> bool {
        (self.words[(i >> 6) as usize] >> (i & 63)) & 1 == 1
    }

    fn set(&mut self, i: u64, v: bool) {
        let w = &mut self.words[(i >> 6) as usize];
        if v {
            *w |= 1u64 << (i & 63);
        } else {
            *w &= !(1u64 << (i & 63));
        }
    }

    /// Number of inputs mapped to true.
    pub fn true_count(&self) -> u64 {
        self.words.iter().map(|w| w.count_ones() as u64).sum()
    }

    /// `Pr[f = true]` under the uniform measure, exact.
    pub fn prob_true(&self) -> Rat {
        Rat::new(self.true_count().into(), BigInt::from(self.size()))
    }

    /// The `±1` value array in index order (true ↦ -1).
    pub fn values_pm(&self) -> Vec<i32> {
        (0..self.size()).map(|i| if self.get(i) { -1 } else { 1 }).collect()
    }

    /// Integer Walsh spectrum `A(S) = Σ_x f(x) χ_S(x) = N·f̂(S)`.
    pub fn spectrum(&self) -> Spectrum {
        let mut a = self.values_pm();
        fwht(&mut a);
        // the butterfly yields Σ_i f(i) (-1)^{popcount(i & S)}; under the
        // index convention χ_S(x_i) = (-1)^{|S|} (-1)^{popcount(i & S)}
        for (s, v) in a.iter_mut().enumerate() {
            if (s as u64).count_ones() & 1 == 1 {
                *v = -*v;
            }
        }
        Spectrum { n: self.n, coeffs: a }
    }

    /// Exact `(p, I, H)` profile (I spectral, H compensated float).
    pub fn profile(&self) -> FunctionProfile {
        let spec = self.spectrum();
        let i = spec.influence();
        let h = spec.entropy();
        let p = self.prob_true();
        // balanced with I = 1 forces a dictator, whose spectrum sits on one set
        debug_assert!(
            !(p == crate::rat(1, 2) && i == crate::rat(1, 1)) || h.abs() < 1e-9,
            "dictator degeneracy violated"
        );
        FunctionProfile::exact(p, i, h)
    }

    /// Average sensitivity `(1/N) Σ_x S_f(x)`, exact. Equals the spectral
    /// total influence.
    pub fn average_sensitivity(&self) -> Rat {
        Rat::new(self.directed_sensitive_pairs().into(), BigInt::from(self.size()))
    }

    /// Total count of directed sensitive edges `Σ_x S_f(x)`.
    pub fn directed_sensitive_pairs(&self) -> u64 {
        (0..self.n).map(|b| self.sensitive_along(b)).sum()
    }

    /// Per-coordinate influences `Inf_j(f) = Pr_x[f(x) != f(x ⊕ e_j)]`,
    /// returned for j = 1..n.
    pub fn coordinate_influences(&self) -> Vec<Rat> {
        (1..=self.n)
            .map(|j| {
                let b = self.n - j; // index bit of variable j
                Rat::new(self.sensitive_along(b).into(), BigInt::from(self.size()))
            })
            .collect()
    }

    /// Count of i with `f(i) != f(i ^ 2^b)`.
    fn sensitive_along(&self, b: u32) -> u64 {
        let mut count = 0u64;
        if b >= 6 {
            let stride = 1usize << (b - 6);
            for (w, word) in self.words.iter().enumerate() {
                count += (word ^ self.words[w ^ stride]).count_ones() as u64;
            }
        } else {
            let s = 1u32 << b;
            let mask = match b {
                0 => 0x5555_5555_5555_5555u64,
                1 => 0x3333_3333_3333_3333,
                2 => 0x0f0f_0f0f_0f0f_0f0f,
                3 => 0x00ff_00ff_00ff_00ff,
                4 => 0x0000_ffff_0000_ffff,
                _ => 0x0000_0000_ffff_ffff,
            };
            let nbits = self.size();
            for (w, word) in self.words.iter().enumerate() {
                let swapped = ((word >> s) & mask) | ((word & mask) << s);
                let mut diff = word ^ swapped;
                if nbits < 64 && w == 0 {
                    diff &= (1u64 << nbits) - 1;
                }
                count += diff.count_ones() as u64;
            }
        }
        count
    }

    /// Dual `f†(x) = ¬f(¬x)`.
    pub fn dual(&self) -> Self {
        let nn = self.size();
        let mut out = Self::constant(self.n, false);
        for i in 0..nn {
            out.set(i, !self.get(nn - 1 - i));
        }
        out
    }

    /// `Pr[f = true | g = true]`, exact.
    pub fn conditional_probability(&self, g: &BooleanFunction) -> Result<Rat> {
        if self.n != g.n {
            return Err(Error::ArityMismatch(self.n, g.n));
        }
        let den: u64 = g.true_count();
        if den == 0 {
            return Err(Error::ConditionNeverTrue);
        }
        let num: u64 = self
            .words
            .iter()
            .zip(&g.words)
            .map(|(a, b)| (a & b).count_ones() as u64)
            .sum();
        Ok(Rat::new(num.into(), den.into()))
    }

    /// Copy of `f` with the output at `index` toggled.
    pub fn flip_entry(&self, index: u64) -> Result<Self> {
        if index >= self.size() {
            return Err(Error::IndexOutOfRange { n: self.n, index });
        }
        let mut out = self.clone();
        out.words[(index >> 6) as usize] ^= 1u64 << (index & 63);
        Ok(out)
    }

    /// Extends to `n + k` variables; the new trailing variables are ignored.
    pub fn extend_with_dummy(&self, k: u32) -> Result<Self> {
        let n2 = self.n + k;
        check_n(n2)?;
        let mut out = Self::constant(n2, false);
        for i in 0..out.size() {
            out.set(i, self.get(i >> k));
        }
        Ok(out)
    }

    /// Serializes to the truth-table text format: `n=<int>` on the first
    /// line, then a hex string with index 0 at the most significant bit of
    /// the first digit (for n = 1 the low two bits of the single digit pad
    /// with zeros).
    pub fn to_table_text(&self) -> String {
        let nn = self.size();
        let digits = nn.div_ceil(4);
        let mut hex = String::with_capacity(digits as usize);
        for d in 0..digits {
            let mut v = 0u8;
            for b in 0..4 {
                let i = 4 * d + b;
                if i < nn && self.get(i) {
                    v |= 8 >> b;
                }
            }
            hex.push(char::from_digit(v as u32, 16).unwrap());
        }
        format!("n={}\n{}\n", self.n, hex)
    }

    /// Parses the truth-table text format.
    pub fn from_table_text(text: &str) -> Result<Self> {
        let mut lines = text.lines();
        let header = lines
            .next()
            .ok_or_else(|| Error::TableFormat("missing header line".into()))?
            .trim();
        let n: u32 = header
            .strip_prefix("n=")
            .ok_or_else(|| Error::TableFormat("header must be `n=<int>`".into()))?
            .trim()
            .parse()
            .map_err(|e| Error::TableFormat(format!("bad variable count: {e}")))?;
        check_n(n)?;
        let hex = lines
            .next()
            .ok_or_else(|| Error::TableFormat("missing table line".into()))?
            .trim();
        let nn = 1u64 << n;
        let digits = nn.div_ceil(4);
        if hex.len() as u64 != digits {
            return Err(Error::TableFormat(format!(
                "expected {} hex digits, got {}",
                digits,
                hex.len()
            )));
        }
        let mut f = Self::constant(n, false);
        for (d, c) in hex.chars().enumerate() {
            let v = c
                .to_digit(16)
                .ok_or_else(|| Error::TableFormat(format!("bad hex digit `{c}`")))?
                as u8;
            for b in 0..4u64 {
                let i = 4 * d as u64 + b;
                if i < nn && v & (8 >> b) != 0 {
                    f.set(i, true);
                }
            }
        }
        Ok(f)
    }
}

/// In-place Walsh–Hadamard butterfly over `±1` values.
pub fn fwht(a: &mut [i32]) {
    debug_assert!(a.len().is_power_of_two());
    let mut step = 1;
    while step < a.len() {
        let mut i = 0;
        while i < a.len() {
            for j in i..i + step {
                let (u, v) = (a[j], a[j + step]);
                a[j] = u + v;
                a[j + step] = u - v;
            }
            i += step * 2;
        }
        step *= 2;
    }
}

/// Integer Walsh spectrum `A(S) = N·f̂(S)` indexed by subset bitmask.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Spectrum {
    n: u32,
    coeffs: Vec<i32>,
}

impl Spectrum {
    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn coeffs(&self) -> &[i32] {
        &self.coeffs
    }

    pub fn coeff(&self, s: u64) -> i32 {
        self.coeffs[s as usize]
    }

    /// `Σ_S A(S)^2`, which must equal `N^2`.
    pub fn parseval_sum(&self) -> u64 {
        self.coeffs.iter().map(|&a| (a as i64 * a as i64) as u64).sum()
    }

    pub fn parseval_holds(&self) -> bool {
        self.parseval_sum() == (1u64 << self.n) * (1u64 << self.n)
    }

    /// Exact total influence `Σ_S p(S) |S| = Σ_S A(S)^2 |S| / N^2`.
    pub fn influence(&self) -> Rat {
        let mut num: i128 = 0;
        for (s, &a) in self.coeffs.iter().enumerate() {
            num += (a as i128) * (a as i128) * (s.count_ones() as i128);
        }
        let nn = BigInt::from(1u64 << self.n);
        Rat::new(BigInt::from(num), nn.clone() * nn)
    }

    /// Spectral entropy, base 2.
    pub fn entropy(&self) -> f64 {
        spectral_entropy(&self.coeffs, self.n)
    }

    /// The induced probability distribution `p(S) = A(S)^2/N^2`.
    pub fn distribution(&self) -> SpectralDistribution {
        let nn = BigInt::from(1u64 << self.n);
        let n2 = nn.clone() * nn;
        let probs = self
            .coeffs
            .iter()
            .map(|&a| Rat::new(BigInt::from(a as i64 * a as i64), n2.clone()))
            .collect();
        SpectralDistribution { n: self.n, probs }
    }
}

/// Exact spectral distribution of a function.
#[derive(Clone, Debug)]
pub struct SpectralDistribution {
    n: u32,
    probs: Vec<Rat>,
}

impl SpectralDistribution {
    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn probs(&self) -> &[Rat] {
        &self.probs
    }

    /// Must be exactly one.
    pub fn total(&self) -> Rat {
        let mut t = Rat::zero();
        for p in &self.probs {
            t += p;
        }
        t
    }

    pub fn is_normalized(&self) -> bool {
        self.total().is_one()
    }
}
