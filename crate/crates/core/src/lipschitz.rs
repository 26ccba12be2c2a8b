//! Single-flip Lipschitz bounds for influence and entropy, and the Δ-profile
//! identity expressing the entropy change of one truth-table flip.

use crate::bf::BooleanFunction;
use crate::error::{Error, Result};
use crate::rat;
use crate::Rat;
use num::Signed;

/// `|I[f] - I[flip(f, index)]|` with the bound `2n/N`, both exact.
pub fn influence_gap(f: &BooleanFunction, index: u64) -> Result<(Rat, Rat)> {
    let g = f.flip_entry(index)?;
    let gap = (f.average_sensitivity() - g.average_sensitivity()).abs();
    let bound = rat(2 * f.n() as i64, f.size() as i64);
    Ok((gap, bound))
}

/// `|H[f] - H[flip(f, index)]|` with the bound `12n/sqrt(N)`.
pub fn entropy_gap(f: &BooleanFunction, index: u64) -> Result<(f64, f64)> {
    let g = f.flip_entry(index)?;
    let gap = (f.spectrum().entropy() - g.spectrum().entropy()).abs();
    let bound = 12.0 * f.n() as f64 / (f.size() as f64).sqrt();
    Ok((gap, bound))
}

/// Signed coefficient-level counts of `a = N(f + δ)` after normalizing the
/// flipped entry to the all-false input. `deltas[k-1]` counts
/// `sgn(â(S))` over the coefficients with `|â(S)| = 2k-1`.
#[derive(Clone, Debug)]
pub struct DeltaProfile {
    n: u32,
    deltas: Vec<i64>,
}

impl DeltaProfile {
    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn deltas(&self) -> &[i64] {
        &self.deltas
    }

    /// `Σ Δ_k (2k-1) = Σ_S â(S) = 0`.
    pub fn eq8a(&self) -> bool {
        self.deltas
            .iter()
            .enumerate()
            .map(|(i, &d)| d as i128 * (2 * i as i128 + 1))
            .sum::<i128>()
            == 0
    }

    /// `Σ |Δ_k| ≤ N`.
    pub fn eq8b(&self) -> bool {
        self.deltas.iter().map(|d| d.unsigned_abs() as u128).sum::<u128>()
            <= (1u128 << self.n)
    }

    /// `Σ |Δ_k| (2k-1)² ≤ N(N-1)`.
    pub fn eq8c(&self) -> bool {
        let nn = 1u128 << self.n;
        self.deltas
            .iter()
            .enumerate()
            .map(|(i, &d)| d.unsigned_abs() as u128 * (2 * i as u128 + 1).pow(2))
            .sum::<u128>()
            <= nn * (nn - 1)
    }

    /// `Σ |Δ_k| (2k-1) < N^{3/2}`, checked as the squared integer inequality.
    pub fn eq8d(&self) -> bool {
        let s: u128 = self
            .deltas
            .iter()
            .enumerate()
            .map(|(i, &d)| d.unsigned_abs() as u128 * (2 * i as u128 + 1))
            .sum();
        let nn = 1u128 << self.n;
        s * s < nn * nn * nn
    }

    /// The entropy-difference identity: returns
    /// `H[flip(f, index)] - H[f]` reconstructed purely from the Δ counts.
    pub fn entropy_difference(&self) -> f64 {
        let nn = (1u64 << self.n) as f64;
        let mut acc = 0.0f64;
        for (i, &d) in self.deltas.iter().enumerate().skip(1) {
            if d == 0 {
                continue;
            }
            let k = (i + 1) as f64;
            acc += d as f64 * (k * k * (k / (k - 1.0)).log2() + (2.0 * k - 1.0) * (k - 1.0).log2());
        }
        8.0 / (nn * nn) * acc
    }
}

/// Builds the Δ profile of the flip `false → true` at `index`. The input is
/// translated so the flipped entry sits at the all-false point, where every
/// character evaluates to +1 and the coefficients of `a = N(f' + δ)` are the
/// translated spectrum plus one.
pub fn delta_profile(f: &BooleanFunction, index: u64) -> Result<DeltaProfile> {
    if index >= f.size() {
        return Err(Error::IndexOutOfRange { n: f.n(), index });
    }
    if f.get(index) {
        return Err(Error::FlipTargetNotFalse(index));
    }
    let flipped = f.flip_entry(index)?;
    let mask = index ^ (f.size() - 1);
    // translated function with the (now true) entry at all-false
    let translated = BooleanFunction::from_fn(f.n(), |j| flipped.get(j ^ mask))?;
    let spec = translated.spectrum();
    let mut deltas = vec![0i64; (f.size() / 2) as usize];
    let mut sum: i64 = 0;
    for &a in spec.coeffs() {
        let v = a as i64 + 1; // â(S) = N f̂'(S) + 1, odd
        debug_assert!(v % 2 != 0);
        let k = v.unsigned_abs().div_ceil(2);
        deltas[k as usize - 1] += v.signum();
        sum += v;
    }
    debug_assert_eq!(sum, 0);
    Ok(DeltaProfile { n: f.n(), deltas })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::SplitMix64;

    fn or_n(n: u32) -> BooleanFunction {
        let nn = (1u64 << n) - 1;
        BooleanFunction::from_fn(n, move |i| i != nn).unwrap()
    }

    #[test]
    fn influence_gap_tight_for_or() {
        for n in 2..=16u32 {
            let all_true = BooleanFunction::constant(n, true);
            let (gap, bound) = influence_gap(&all_true, (1 << n) - 1).unwrap();
            assert_eq!(gap, bound, "n={n}");
        }
    }

    #[test]
    fn parity_gap_within_bound() {
        let n = 6;
        let parity = BooleanFunction::from_fn(n, |i| i.count_ones() % 2 == 1).unwrap();
        for index in [0u64, 5, 31, 63] {
            let (gap, bound) = influence_gap(&parity, index).unwrap();
            assert!(gap <= bound);
        }
    }

    #[test]
    fn entropy_gap_or_vs_true() {
        for n in 2..=12u32 {
            let all_true = BooleanFunction::constant(n, true);
            let (gap, bound) = entropy_gap(&all_true, (1 << n) - 1).unwrap();
            assert!(gap <= bound, "n={n}");
            // the natural example stays below 8n/N
            assert!(gap < 8.0 * n as f64 / (1u64 << n) as f64, "n={n} gap={gap}");
        }
    }

    #[test]
    fn random_flips_within_both_bounds() {
        let mut rng = SplitMix64::new(0);
        for trial in 0..120 {
            let n = 2 + (rng.next_u64() % 9) as u32; // 2..=10
            let f = randomize(&mut rng, n);
            let index = rng.next_u64() % f.size();
            let (gap, bound) = influence_gap(&f, index).unwrap();
            assert!(gap <= bound, "influence trial {trial}");
            let (hgap, hbound) = entropy_gap(&f, index).unwrap();
            assert!(hgap <= hbound, "entropy trial {trial}");
        }
    }

    fn randomize(rng: &mut SplitMix64, n: u32) -> BooleanFunction {
        let bits: Vec<bool> = (0..(1u64 << n)).map(|_| rng.next_u64() & 1 == 1).collect();
        BooleanFunction::from_bits(n, &bits).unwrap()
    }

    #[test]
    fn delta_profile_identities_and_eq9() {
        let mut rng = SplitMix64::new(7);
        for trial in 0..80 {
            let n = 2 + (rng.next_u64() % 8) as u32; // 2..=9
            let f = randomize(&mut rng, n);
            let index = rng.next_u64() % f.size();
            let f = if f.get(index) { f.flip_entry(index).unwrap() } else { f };
            let dp = delta_profile(&f, index).unwrap();
            assert!(dp.eq8a(), "trial {trial}");
            assert!(dp.eq8b(), "trial {trial}");
            assert!(dp.eq8c(), "trial {trial}");
            assert!(dp.eq8d(), "trial {trial}");
            let direct = f.flip_entry(index).unwrap().spectrum().entropy()
                - f.spectrum().entropy();
            assert!(
                (dp.entropy_difference() - direct).abs() < 1e-9,
                "trial {trial}: {} vs {direct}",
                dp.entropy_difference()
            );
        }
    }

    #[test]
    fn delta_profile_rejects_true_entries() {
        let f = BooleanFunction::constant(3, true);
        assert!(matches!(delta_profile(&f, 0), Err(Error::FlipTargetNotFalse(0))));
    }

    #[test]
    fn constant_false_flip_concentrates_at_k1() {
        let n = 4;
        let f = BooleanFunction::constant(n, false);
        let dp = delta_profile(&f, 3).unwrap();
        // a = N(f'+δ) has one -(N-1) row... the all-but-one-false function:
        // â(∅) = N-... all coefficients are ±1 except one of magnitude N-1
        let total_abs: u64 = dp.deltas().iter().map(|d| d.unsigned_abs()).sum();
        assert_eq!(total_abs, 1u64 << n);
        assert_eq!(dp.deltas()[0].unsigned_abs(), (1u64 << n) - 1);
    }

    #[test]
    fn epsilon_corollary_multi_flip() {
        // k random flips change the entropy by at most 12εn√N with ε = k/N
        let mut rng = SplitMix64::new(3);
        let n = 8u32;
        let f = randomize(&mut rng, n);
        let mut g = f.clone();
        let k = 5u64;
        let mut flipped = std::collections::BTreeSet::new();
        while (flipped.len() as u64) < k {
            let idx = rng.next_u64() % g.size();
            if flipped.insert(idx) {
                g = g.flip_entry(idx).unwrap();
            }
        }
        let eps = k as f64 / (1u64 << n) as f64;
        let bound = 12.0 * eps * n as f64 * ((1u64 << n) as f64).sqrt();
        let diff = (f.spectrum().entropy() - g.spectrum().entropy()).abs();
        assert!(diff < bound);
    }
}
