//! Exhaustive verification over small function spaces: the named `g`
//! functions, the biased-base scan on up to 4 variables, and the balanced
//! entropy/influence ratio maximizer.

use crate::bf::BooleanFunction;
use crate::biased::{bias_fixed_points, biased_profile};
use crate::bounds::general_biased_bound;
use crate::error::{Error, Result};
use crate::formula::{builtin, parse};
use crate::{rat, Rat};
use num::One;
use serde::Serialize;

/// Verification row for one of the named constructions.
#[derive(Clone, Debug, Serialize)]
pub struct NamedCheck {
    pub name: String,
    pub balanced: bool,
    pub influence: String,
    pub influence_ok: bool,
    pub entropy: f64,
    pub entropy_floor: f64,
    pub ratio: f64,
    pub ratio_floor: f64,
    pub ok: bool,
}

/// Reproduces the printed parameters of `g3, g3', g4, g4'`.
pub fn verify_named() -> Result<Vec<NamedCheck>> {
    let g3 = parse("(x1 | x2) & (x3 | x4) & (x1 | x3 | x5) & (x3 | x5 | x6)")?;
    let g4 = parse(
        "(x1 | x2) & (x3 | x4) & (x3 | x5 | x6) & (x1 | x3 | x5 | x7) & (x3 | x5 | x7 | x8)",
    )?;
    let cases: Vec<(&str, BooleanFunction, Rat, f64, f64)> = vec![
        ("g3", g3.eval(6)?, rat(13, 8), 3.92434, 6.278944),
        ("g3'", builtin("gprime3", 0)?.eval(6)?, rat(13, 8), 3.9669, 6.34704),
        ("g4", g4.eval(8)?, rat(53, 32), 4.16885, 6.35253),
        ("g4'", builtin("gprime4", 0)?.eval(8)?, rat(53, 32), 4.17635, 6.36396),
    ];
    let mut out = Vec::new();
    for (name, f, i_expected, h_floor, c_floor) in cases {
        let p = f.profile();
        let balanced = p.p_exact().map(|x| x == &rat(1, 2)).unwrap_or(false);
        let influence_ok = p.i_exact().map(|x| x == &i_expected).unwrap_or(false);
        let ratio = p.h() / (p.i() - 1.0);
        let ok = balanced && influence_ok && p.h() > h_floor && ratio > c_floor;
        out.push(NamedCheck {
            name: name.to_string(),
            balanced,
            influence: i_expected.to_string(),
            influence_ok,
            entropy: p.h(),
            entropy_floor: h_floor,
            ratio,
            ratio_floor: c_floor,
            ok,
        });
    }
    Ok(out)
}

/// One scored base function from the biased scan.
#[derive(Clone, Debug, Serialize)]
pub struct BiasedBaseEntry {
    /// Truth table as an integer (bit i = output at index i), `k` variables.
    pub table: u64,
    pub k: u32,
    /// Bias fixed point and the probability `p = (1-ρ)/2`.
    pub rho: f64,
    pub p: f64,
    pub i_tilde: f64,
    pub h_tilde: f64,
    pub attractive: bool,
    /// The general biased composition bound at this fixed point.
    pub bound: f64,
}

/// Report of the exhaustive biased-base scan.
#[derive(Clone, Debug, Serialize)]
pub struct BiasedBaseScan {
    pub max_vars: u32,
    pub evaluated: u64,
    pub classes: u64,
    /// Top entries, descending by bound (ties by smaller table integer).
    pub top: Vec<BiasedBaseEntry>,
    /// The bound attained by NAND at its golden-ratio fixed point.
    pub tau_bound: f64,
    /// No evaluated bound exceeded the NAND bound by more than 1e-9.
    pub tau_is_optimal: bool,
}

fn table_to_bf(table: u64, k: u32) -> BooleanFunction {
    BooleanFunction::from_fn(k, |i| (table >> i) & 1 == 1).unwrap()
}

/// Applies a variable permutation to a truth table integer: position j of
/// `perm` says which old variable the new variable j reads.
fn permute_table(table: u64, k: u32, perm: &[u32]) -> u64 {
    let nn = 1u64 << k;
    let mut out = 0u64;
    for i in 0..nn {
        // build old index from new index i
        let mut old = 0u64;
        for j in 0..k {
            let bit = (i >> (k - 1 - j)) & 1;
            if bit == 1 {
                old |= 1u64 << (k - 1 - perm[j as usize]);
            }
        }
        if (table >> old) & 1 == 1 {
            out |= 1u64 << i;
        }
    }
    out
}

fn dual_table(table: u64, k: u32) -> u64 {
    let nn = 1u64 << k;
    let mut out = 0u64;
    for i in 0..nn {
        if (table >> (nn - 1 - i)) & 1 == 0 {
            out |= 1u64 << i;
        }
    }
    out
}

fn permutations(k: u32) -> Vec<Vec<u32>> {
    fn heap(v: &mut Vec<u32>, n: usize, out: &mut Vec<Vec<u32>>) {
        if n == 1 {
            out.push(v.clone());
            return;
        }
        for i in 0..n {
            heap(v, n - 1, out);
            if n.is_multiple_of(2) {
                v.swap(i, n - 1);
            } else {
                v.swap(0, n - 1);
            }
        }
    }
    let mut v: Vec<u32> = (0..k).collect();
    let mut out = Vec::new();
    heap(&mut v, k as usize, &mut out);
    out
}

/// Canonical representative of the permutation × dualization class.
fn canonical_table(table: u64, k: u32, perms: &[Vec<u32>]) -> u64 {
    let mut best = u64::MAX;
    for perm in perms {
        let p = permute_table(table, k, perm);
        best = best.min(p).min(dual_table(p, k));
    }
    best
}

/// Scores one base function: every interior fixed point with a valid
/// denominator is evaluated through the general biased bound.
fn score_function(f: &BooleanFunction, table: u64) -> Result<Vec<BiasedBaseEntry>> {
    let fps = bias_fixed_points(f)?;
    if fps.identity {
        return Ok(vec![]);
    }
    let mut out = Vec::new();
    for fp in fps.points {
        let p = (1.0 - fp.rho) / 2.0;
        if !(1e-9..=1.0 - 1e-9).contains(&p) {
            continue;
        }
        let eta = vec![fp.rho; f.n() as usize];
        let bp = biased_profile(f, &eta)?;
        let v = 4.0 * p * (1.0 - p);
        if bp.i_tilde - v <= 1e-9 || bp.h_tilde <= 1e-12 {
            continue;
        }
        match general_biased_bound(f, p) {
            Ok(bound) => out.push(BiasedBaseEntry {
                table,
                k: f.n(),
                rho: fp.rho,
                p,
                i_tilde: bp.i_tilde,
                h_tilde: bp.h_tilde,
                attractive: fp.attractive,
                bound,
            }),
            Err(_) => continue,
        }
    }
    Ok(out)
}

/// Exhaustive scan of all functions on `k ≤ max_vars ≤ 4` variables. With
/// `prune` enabled only one representative per permutation/duality class is
/// scored (the class operations leave the bound invariant).
pub fn search_biased_bases(max_vars: u32, top: usize, prune: bool) -> Result<BiasedBaseScan> {
    if !(1..=4).contains(&max_vars) {
        return Err(Error::InvalidArgument(format!(
            "biased-base scan is limited to 1..=4 variables, got {max_vars}"
        )));
    }
    let tau = builtin("tau", 0)?.eval(2)?;
    let tau_bound = general_biased_bound(&tau, crate::PHI)?;
    let mut entries: Vec<BiasedBaseEntry> = Vec::new();
    let mut evaluated = 0u64;
    let mut classes = 0u64;
    for k in 1..=max_vars {
        let perms = permutations(k);
        let nn = 1u64 << k;
        let count = 1u64 << nn;
        let mut seen = vec![false; count as usize];
        for table in 0..count {
            evaluated += 1;
            if prune {
                let canon = canonical_table(table, k, &perms);
                if seen[canon as usize] {
                    continue;
                }
                seen[canon as usize] = true;
            }
            classes += 1;
            let f = table_to_bf(table, k);
            entries.extend(score_function(&f, table)?);
        }
    }
    entries.sort_by(|a, b| {
        b.bound
            .partial_cmp(&a.bound)
            .unwrap()
            .then(a.table.cmp(&b.table))
            .then(a.k.cmp(&b.k))
    });
    let tau_is_optimal = entries.first().map(|e| e.bound <= tau_bound + 1e-9).unwrap_or(true);
    entries.truncate(top);
    Ok(BiasedBaseScan {
        max_vars,
        evaluated,
        classes,
        top: entries,
        tau_bound,
        tau_is_optimal,
    })
}

/// Best balanced function by the `H/(I-1)` ratio.
#[derive(Clone, Debug, Serialize)]
pub struct BalancedBest {
    pub n: u32,
    /// Truth table integer of the maximizer (smallest among ties).
    pub table: u64,
    pub influence: String,
    pub entropy: f64,
    pub ratio: f64,
    pub candidates: u64,
}

/// Exhaustive over all balanced functions for `n ≤ 4`; for `n = 5, 6` the
/// scope narrows to balanced monotone functions (built bottom-up from the
/// monotone lattice of `n-1` variables). Dictators (I = 1) are excluded.
pub fn search_balanced_ratio(n: u32) -> Result<BalancedBest> {
    match n {
        1..=4 => {
            let nn = 1u64 << n;
            let mut best: Option<(f64, u64, Rat, f64)> = None;
            let mut candidates = 0u64;
            for table in 0..(1u64 << nn) {
                if (table.count_ones() as u64) != nn / 2 {
                    continue;
                }
                let f = table_to_bf(table, n);
                let prof = f.profile();
                let i = prof.i_exact().unwrap().clone();
                if i == Rat::one() {
                    continue; // dictators: H = 0 and the ratio degenerates
                }
                candidates += 1;
                let ratio = prof.h() / (prof.i() - 1.0);
                let better = match &best {
                    None => true,
                    Some((r, t, _, _)) => ratio > *r + 1e-15 || (ratio > *r - 1e-15 && table < *t),
                };
                if better {
                    best = Some((ratio, table, i, prof.h()));
                }
            }
            let (ratio, table, i, h) = best.ok_or_else(|| {
                Error::InvalidArgument(format!("no balanced non-dictator on {n} variables"))
            })?;
            Ok(BalancedBest {
                n,
                table,
                influence: i.to_string(),
                entropy: h,
                ratio,
                candidates,
            })
        }
        5 | 6 => {
            let monotone = monotone_tables(n);
            let nn = 1u64 << n;
            let mut best: Option<(f64, u64, Rat, f64)> = None;
            let mut candidates = 0u64;
            for &table in &monotone {
                if (table.count_ones() as u64) != nn / 2 {
                    continue;
                }
                let f = table_to_bf(table, n);
                let prof = f.profile();
                let i = prof.i_exact().unwrap().clone();
                if i == Rat::one() {
                    continue;
                }
                candidates += 1;
                let ratio = prof.h() / (prof.i() - 1.0);
                let better = match &best {
                    None => true,
                    Some((r, t, _, _)) => ratio > *r + 1e-15 || (ratio > *r - 1e-15 && table < *t),
                };
                if better {
                    best = Some((ratio, table, i, prof.h()));
                }
            }
            let (ratio, table, i, h) = best.ok_or_else(|| {
                Error::InvalidArgument(format!("no balanced monotone non-dictator on {n} vars"))
            })?;
            Ok(BalancedBest {
                n,
                table,
                influence: i.to_string(),
                entropy: h,
                ratio,
                candidates,
            })
        }
        _ => Err(Error::InvalidArgument(format!(
            "search_balanced_ratio supports n <= 6, got {n}"
        ))),
    }
}

/// All monotone truth tables on `n ≤ 6` variables, built by the doubling
/// construction: f is monotone iff its restrictions a = f|_{x_n = false},
/// b = f|_{x_n = true} are monotone with a ≤ b pointwise. The last variable
/// occupies the least significant index bit (bit 0 = x_n true), so
/// f = (a on odd positions) interleaved... in packed form the two halves
/// interleave at bit position 0.
fn monotone_tables(n: u32) -> Vec<u64> {
    if n == 0 {
        return vec![0, 1];
    }
    let prev = monotone_tables(n - 1);
    let half = 1u64 << (n - 1);
    let mut out = Vec::new();
    for &b in &prev {
        for &a in &prev {
            // a ≤ b pointwise: x_n false→true cannot drop the output,
            // f(.., x_n=false) = a must imply f(.., x_n=true) = b... with
            // true = bit set: need a ⊆ b? x_n true is index bit 0 = 0.
            // Entry at index i: x_n true ⇔ i even. f(even i) = b, f(odd) = a
            // requires monotone in x_n: f(odd index) ≤ f(even index): a ≤ b.
            if a & !b != 0 {
                continue;
            }
            let mut t = 0u64;
            for j in 0..half {
                if (b >> j) & 1 == 1 {
                    t |= 1u64 << (2 * j); // x_n true
                }
                if (a >> j) & 1 == 1 {
                    t |= 1u64 << (2 * j + 1); // x_n false
                }
            }
            out.push(t);
        }
    }
    out
}
