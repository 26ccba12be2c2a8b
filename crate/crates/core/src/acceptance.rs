//! The acceptance suite: every criterion the build must demonstrate, run
//! end-to-end with pinned tolerances and one pass/fail verdict per criterion.
//!
//! A handful of sub-checks reproduce known defects in the published
//! constants and fail by design (the measured values are pinned by unit
//! tests instead): the lb2 target 6.413846 (true limit 6.4138455), the β
//! maximizer location (true argmax 0.50688254), the γ-based bound values at
//! ι and ℓ⟨2/3⟩ (the printed series gives 5.3449/5.4652, not the claimed
//! 6.44539/6.4531, which no variant of the recursion reproduces), and the
//! level-30 recursion tolerance (the true gap is ~3.6e-6). The Niho n=4 gap
//! also falls short of its threshold at every flip point.

use crate::bf::BooleanFunction;
use crate::biased::{biased_profile, ot_compose};
use crate::bounds;
use crate::formula::{builtin, g_upper_on, FormulaAst};
use crate::lex;
use crate::lipschitz;
use crate::niho;
use crate::numeric::{h_tilde, psi, SplitMix64};
use crate::profile::FunctionProfile;
use crate::search;
use crate::{rat, rat_to_f64, Rat, PHI};
use num::{BigInt, One};
use serde::Serialize;

/// One named sub-check inside a criterion.
#[derive(Clone, Debug, Serialize)]
pub struct SubCheck {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl SubCheck {
    fn new(name: &str, passed: bool, detail: String) -> Self {
        SubCheck { name: name.to_string(), passed, detail }
    }
}

/// One acceptance criterion with its sub-checks.
#[derive(Clone, Debug, Serialize)]
pub struct Criterion {
    pub id: u32,
    pub name: String,
    pub passed: bool,
    pub sub: Vec<SubCheck>,
}

impl Criterion {
    fn from_subs(id: u32, name: &str, sub: Vec<SubCheck>) -> Self {
        Criterion { id, name: name.to_string(), passed: sub.iter().all(|s| s.passed), sub }
    }

    /// Single line summary `criterion NN PASS/FAIL name (k/k sub-checks)`.
    pub fn summary_line(&self) -> String {
        let ok = self.sub.iter().filter(|s| s.passed).count();
        format!(
            "criterion {:2} {} {} ({}/{} sub-checks)",
            self.id,
            if self.passed { "PASS" } else { "FAIL" },
            self.name,
            ok,
            self.sub.len()
        )
    }
}

/// Runs the full suite. The seed feeds every randomized sub-suite.
pub fn run_all(seed: u64) -> Vec<Criterion> {
    vec![
        criterion1(),
        criterion2(),
        criterion3(),
        criterion4(),
        criterion5(),
        criterion6(),
        criterion7(seed),
        criterion8(seed),
        criterion9(),
        criterion10(),
        criterion11(),
        criterion12(),
    ]
}

fn criterion1() -> Criterion {
    let mut sub = Vec::new();
    let rows = bounds::table1(10).unwrap();
    let printed: [(u32, f64, f64); 9] = [
        (2, 3.0, 6.0),
        (3, 3.92434, 6.27894),
        (4, 4.16885, 6.35253),
        (5, 4.23087, 6.37119),
        (6, 4.24643, 6.37588),
        (7, 4.25033, 6.37705),
        (8, 4.25130, 6.37734),
        (9, 4.25154, 6.37741),
        (10, 4.251608, 6.377437),
    ];
    let mut exact_ok = true;
    let mut h_ok = true;
    let mut c_ok = true;
    let mut detail = String::new();
    for (m, h_floor, c_floor) in printed {
        let row = &rows[m as usize - 1];
        exact_ok &= row.influence_matches_closed_form;
        // m = 2 prints exact values (H = 3, C = 6); later rows are strict
        // floors requiring at least 1e-9 of float headroom
        if m == 2 {
            h_ok &= (row.entropy - 3.0).abs() < 1e-12;
            c_ok &= (row.ratio.unwrap() - 6.0).abs() < 1e-12;
        } else {
            h_ok &= row.entropy > h_floor + 1e-9;
            c_ok &= row.ratio.unwrap() > c_floor + 1e-9;
        }
        if m == 10 {
            detail = format!(
                "m=10: I={} H={:.9} C={:.9}",
                row.influence,
                row.entropy,
                row.ratio.unwrap()
            );
        }
    }
    sub.push(SubCheck::new("influence equals (5-2^(3-2m))/3 exactly, m=2..10", exact_ok, detail));
    sub.push(SubCheck::new("entropy exceeds printed floors", h_ok, String::new()));
    sub.push(SubCheck::new("ratio exceeds printed floors", c_ok, String::new()));
    Criterion::from_subs(1, "g_m family reproduction (m = 2..10)", sub)
}

fn criterion2() -> Criterion {
    let mut sub = Vec::new();
    let r = bounds::lb1();
    let closed = 4.0 + 3.0 * 3f64.log2() / 2.0;
    sub.push(SubCheck::new(
        "lb1 equals 4 + 3 log4(3) within 1e-12",
        (r.value - closed).abs() < 1e-12,
        format!("value = {:.15}", r.value),
    ));
    // the true margin over the printed 9-decimal target is 8.17e-11, so the
    // check is margin > 0 (a literal margin > 1e-9 is unattainable)
    sub.push(SubCheck::new(
        "lb1 exceeds 6.377443751",
        r.passes(),
        format!("margin = {:.3e}", r.margin),
    ));
    // independent H* computation chain
    let h_star = (2.0 / 3.0) * (2.0 - h_tilde(0.75))
        + 0.75 * (2.0 * 3f64.log2() - h_tilde(2.0 / 3.0))
        + psi(0.75, 2.0 / 3.0);
    let h_star_closed = 8.0 / 3.0 + 3f64.log2();
    sub.push(SubCheck::new(
        "H* chain equals 8/3 + log2(3) within 1e-12",
        (h_star - h_star_closed).abs() < 1e-12,
        format!("chain = {h_star:.15}"),
    ));
    Criterion::from_subs(2, "first lower bound (composed profiles)", sub)
}

fn criterion3() -> Criterion {
    let mut sub = Vec::new();
    let r = bounds::lb2(60).unwrap();
    sub.push(SubCheck::new(
        "lb2 certified at 60 bits exceeds 6.413846",
        r.passes(),
        format!(
            "certified value = {:.9}, margin = {:.3e} (true limit 6.413845515 sits below the printed target)",
            r.value, r.margin
        ),
    ));
    let tau = builtin("tau", 0).unwrap().eval(2).unwrap();
    let eta = 1.0 - 2.0 * PHI;
    let bp = biased_profile(&tau, &[eta, eta]).unwrap();
    let i_closed = 8.0 * PHI.powi(4);
    sub.push(SubCheck::new(
        "biased influence of NAND equals 8*Phi^4 within 1e-12",
        (bp.i_tilde - i_closed).abs() < 1e-12,
        format!("I~ = {:.15}", bp.i_tilde),
    ));
    let h_closed = 8.0 * (1.0 - 2.0 * PHI) + 10.0 * (4.0 * PHI - 3.0) * PHI.log2();
    sub.push(SubCheck::new(
        "biased entropy of NAND matches closed form within 1e-12",
        (bp.h_tilde - h_closed).abs() < 1e-12,
        format!("H~ = {:.15}", bp.h_tilde),
    ));
    Criterion::from_subs(3, "second lower bound (biased composition)", sub)
}

fn criterion4() -> Criterion {
    let mut sub = Vec::new();
    let b = bounds::beta(0.5, 1e-10).unwrap();
    sub.push(SubCheck::new(
        "beta(1/2) exceeds 6.4547837 (tail bound < 1e-10)",
        b > 6.4547837,
        format!("beta(1/2) = {b:.12}"),
    ));
    let a = bounds::lb3(&FunctionProfile::iota(), 1e-11).unwrap();
    let g = lex::lex_profile_exact(&rat(2, 3)).unwrap().to_function_profile();
    let c = bounds::lb3(&g, 1e-11).unwrap();
    sub.push(SubCheck::new(
        "lb3 from iota and from l<2/3> agree within 1e-9",
        (a.value - c.value).abs() < 1e-9 && a.passes() && c.passes(),
        format!("{:.12} vs {:.12}", a.value, c.value),
    ));
    let r30 = bounds::ratio_by_recursion(&FunctionProfile::iota(), 30).unwrap();
    sub.push(SubCheck::new(
        "raw recursion at level 30 within 1e-6 of the limit",
        (r30 - a.value).abs() < 1e-6,
        format!(
            "level 30 = {:.9}, gap = {:.3e} (the series tail at level 30 is ~3.6e-6; 1e-6 arrives at level 33)",
            r30,
            (r30 - a.value).abs()
        ),
    ));
    Criterion::from_subs(4, "third lower bound (probability recursion)", sub)
}

fn criterion5() -> Criterion {
    let mut sub = Vec::new();
    let m = bounds::maximize_beta().unwrap();
    sub.push(SubCheck::new(
        "beta maximizer at 0.50168825 within 1e-6",
        (m.z_star - 0.50168825).abs() <= 1e-6,
        format!(
            "measured z* = {:.8} (improvement {:.4}%; the printed z* improves by 0.006%)",
            m.z_star,
            100.0 * (m.beta_at_star - m.beta_at_half) / m.beta_at_half
        ),
    ));
    sub.push(SubCheck::new(
        "beta(z*) exceeds beta(1/2)",
        m.beta_at_star > m.beta_at_half && m.unimodal_on_window,
        format!("beta(z*) = {:.10}", m.beta_at_star),
    ));
    let lg_iota = bounds::lb_gamma(&FunctionProfile::iota(), 6.44539).unwrap();
    sub.push(SubCheck::new(
        "gamma bound from iota near 6.44539 within 1e-5",
        (lg_iota.value - 6.44539).abs() <= 1e-5,
        format!("measured {:.9}", lg_iota.value),
    ));
    let g23 = lex::lex_profile_exact(&rat(2, 3)).unwrap().to_function_profile();
    let lg_23 = bounds::lb_gamma(&g23, 6.453111).unwrap();
    sub.push(SubCheck::new(
        "gamma bound from l<2/3> near 6.453111 within 1e-5",
        (lg_23.value - 6.453111).abs() <= 1e-5,
        format!("measured {:.9}", lg_23.value),
    ));
    let gamma23 = bounds::gamma(2.0 / 3.0, 1e-12).unwrap();
    let beta23 = bounds::beta(2.0 / 3.0, 1e-12).unwrap();
    sub.push(SubCheck::new(
        "gamma(2/3) < beta(2/3)",
        gamma23 < beta23,
        format!("{gamma23:.9} vs {beta23:.9}"),
    ));
    Criterion::from_subs(5, "beta maximizer and gamma afterthoughts", sub)
}

fn criterion6() -> Criterion {
    let mut sub = Vec::new();
    // three routes to I[l<2/3>]
    let four_thirds = rat(4, 3);
    let exp =
        lex::influence_from_expansion(&lex::BinaryExpansion::from_rational(&rat(2, 3)).unwrap());
    sub.push(SubCheck::new(
        "expansion influence equals 4/3 exactly",
        exp == four_thirds,
        exp.to_string(),
    ));
    let fixed = lex::lex_profile_exact(&rat(2, 3)).unwrap();
    let h_ok = (fixed.h - 2.0 * 3f64.log2()).abs() < 1e-12;
    sub.push(SubCheck::new(
        "fixed-point profile equals (4/3, 2 log2 3) (H within 1e-12)",
        fixed.i_exact.as_ref().unwrap() == &four_thirds && h_ok,
        format!("H = {:.15}", fixed.h),
    ));
    // truth table at n = 19: the limit must be inside the certified interval
    let n = 19u32;
    let s = (2u64 << n) / 3;
    let table = lex::lex_truth_table(n, s).unwrap().profile();
    let err_i = lex::truncation_error_i(n);
    let err_h = lex::truncation_error_h(n);
    let i_diff = (rat_to_f64(table.i_exact().unwrap()) - 4.0 / 3.0).abs();
    let h_diff = (table.h() - 2.0 * 3f64.log2()).abs();
    sub.push(SubCheck::new(
        "n=19 truth table within certified bounds of the limit",
        i_diff <= err_i && h_diff <= err_h,
        format!("I off by {i_diff:.3e} (bound {err_i:.3e}), H off by {h_diff:.3e} (bound {err_h:.3e})"),
    ));
    // scan: grid with thirds, exact max 4/3
    let scan = lex::influence_scan(&Rat::new(BigInt::one(), BigInt::from(3 * (1 << 12))), None)
        .unwrap();
    sub.push(SubCheck::new(
        "influence scan max equals 4/3 with every value below it",
        scan.max == four_thirds && scan.all_below_four_thirds,
        format!("{} grid points, {} attainers", scan.grid_points, scan.attainers.len()),
    ));
    // Harper minimality, exhaustive at n = 4
    let harper = harper_exhaustive_n4();
    sub.push(SubCheck::new(
        "Harper minimality over all 2^16 functions at n=4",
        harper,
        String::new(),
    ));
    Criterion::from_subs(6, "lexicographic calculus (three routes + Harper)", sub)
}

/// Every 4-variable function has total sensitivity at least that of the
/// lexicographic function of its own density (mapping s to min(s, N-s)).
fn harper_exhaustive_n4() -> bool {
    const N: u64 = 16;
    // total directed sensitive pairs of each lex function by s
    let mut lex_sens = [0u32; 9];
    for (s, slot) in lex_sens.iter_mut().enumerate() {
        let f = lex::lex_truth_table(4, s as u64).unwrap();
        *slot = f.directed_sensitive_pairs() as u32;
    }
    let swap = |t: u16, b: u32| -> u16 {
        let s = 1u32 << b;
        let masks = [0x5555u16, 0x3333, 0x0f0f, 0x00ff];
        let m = masks[b as usize];
        ((t & m) << s) | ((t >> s) & m)
    };
    for t in 0..=u16::MAX {
        let mut sens = 0u32;
        for b in 0..4 {
            sens += (t ^ swap(t, b)).count_ones();
        }
        let s = (t.count_ones() as u64).min(N - t.count_ones() as u64);
        if sens < lex_sens[s as usize] {
            return false;
        }
    }
    true
}

fn random_function(rng: &mut SplitMix64, n: u32) -> BooleanFunction {
    let bits: Vec<bool> = (0..(1u64 << n)).map(|_| rng.next_u64() & 1 == 1).collect();
    BooleanFunction::from_bits(n, &bits).unwrap()
}

/// Disjoint composition truth table; f2 occupies the trailing index bits.
fn table_compose(f1: &BooleanFunction, f2: &BooleanFunction, or: bool) -> BooleanFunction {
    let shift = f2.n();
    let mask = f2.size() - 1;
    BooleanFunction::from_fn(f1.n() + f2.n(), |i| {
        let (a, b) = (f1.get(i >> shift), f2.get(i & mask));
        if or {
            a || b
        } else {
            a && b
        }
    })
    .unwrap()
}

fn criterion7(seed: u64) -> Criterion {
    let mut rng = SplitMix64::new(seed ^ 0xc0ffee);
    let mut meets_ok = true;
    let mut detail = String::new();
    for trial in 0..200 {
        let n1 = 1 + (rng.next_u64() % 6) as u32;
        let n2 = 1 + (rng.next_u64() % 6) as u32;
        let f1 = random_function(&mut rng, n1);
        let f2 = random_function(&mut rng, n2);
        let or = rng.next_u64() & 1 == 1;
        let algebra = if or {
            f1.profile().join(&f2.profile())
        } else {
            f1.profile().meet(&f2.profile())
        };
        let table = table_compose(&f1, &f2, or).profile();
        let i_match = algebra.i_exact() == table.i_exact();
        let h_match = (algebra.h() - table.h()).abs() < 1e-9;
        if !(i_match && h_match) {
            meets_ok = false;
            detail = format!("trial {trial} failed (n1={n1}, n2={n2}, or={or})");
            break;
        }
    }
    let mut sub = vec![SubCheck::new(
        "200 random disjoint compositions: I exact, H within 1e-9",
        meets_ok,
        detail,
    )];
    // composition lemma oracle on (k<=3) ∘ (m<=3)
    let mut lemma_ok = true;
    let mut detail = String::new();
    for trial in 0..60 {
        let k = 1 + (rng.next_u64() % 3) as u32;
        let m = 1 + (rng.next_u64() % 3) as u32;
        let f_outer = random_function(&mut rng, k);
        let gs: Vec<BooleanFunction> = (0..k).map(|_| random_function(&mut rng, m)).collect();
        let profs: Vec<FunctionProfile> = gs.iter().map(|g| g.profile()).collect();
        if profs.iter().any(|p| p.variance() == 0.0) {
            continue;
        }
        let composed = match ot_compose(&f_outer, &profs) {
            Ok(c) => c,
            Err(_) => continue,
        };
        // literal km-variable truth table
        let table = {
            let total: u32 = k * m;
            BooleanFunction::from_fn(total, |i| {
                let mut shift = total;
                let mut y = 0u64;
                for (j, g) in gs.iter().enumerate() {
                    shift -= g.n();
                    let block = (i >> shift) & (g.size() - 1);
                    if !g.get(block) {
                        y |= 1u64 << (k - 1 - j as u32);
                    }
                }
                f_outer.get(y)
            })
            .unwrap()
            .profile()
        };
        let ok = (composed.i() - table.i()).abs() < 1e-9 && (composed.h() - table.h()).abs() < 1e-8;
        if !ok {
            lemma_ok = false;
            detail = format!("trial {trial} failed (k={k}, m={m})");
            break;
        }
    }
    sub.push(SubCheck::new(
        "composition lemma vs literal tables (k,m <= 3): I 1e-9, H 1e-8",
        lemma_ok,
        detail,
    ));
    Criterion::from_subs(7, "composition oracles", sub)
}

fn criterion8(seed: u64) -> Criterion {
    let mut rng = SplitMix64::new(seed ^ 0x11b);
    let mut flips_ok = true;
    let mut detail = String::new();
    for trial in 0..500 {
        let n = 2 + (rng.next_u64() % 11) as u32; // 2..=12
        let f = random_function(&mut rng, n);
        let index = rng.next_u64() % f.size();
        let (gap, bound) = lipschitz::influence_gap(&f, index).unwrap();
        let (hgap, hbound) = lipschitz::entropy_gap(&f, index).unwrap();
        if gap > bound || hgap > hbound {
            flips_ok = false;
            detail = format!("trial {trial} violated a bound (n={n})");
            break;
        }
    }
    let mut sub =
        vec![SubCheck::new("500 seeded single flips satisfy both lemmas", flips_ok, detail)];
    let mut tight_ok = true;
    for n in 2..=16u32 {
        let all_true = BooleanFunction::constant(n, true);
        let (gap, bound) = lipschitz::influence_gap(&all_true, (1 << n) - 1).unwrap();
        tight_ok &= gap == bound;
    }
    sub.push(SubCheck::new(
        "influence tightness at OR_n vs constant-true, n = 2..16",
        tight_ok,
        String::new(),
    ));
    let mut eq9_ok = true;
    let mut ident_ok = true;
    let mut detail = String::new();
    for trial in 0..200 {
        let n = 2 + (rng.next_u64() % 9) as u32; // 2..=10
        let mut f = random_function(&mut rng, n);
        let index = rng.next_u64() % f.size();
        if f.get(index) {
            f = f.flip_entry(index).unwrap();
        }
        let dp = lipschitz::delta_profile(&f, index).unwrap();
        ident_ok &= dp.eq8a() && dp.eq8b() && dp.eq8c() && dp.eq8d();
        let direct =
            f.flip_entry(index).unwrap().spectrum().entropy() - f.spectrum().entropy();
        if (dp.entropy_difference() - direct).abs() >= 1e-9 {
            eq9_ok = false;
            detail = format!("trial {trial}: identity off by {:.2e}", (dp.entropy_difference() - direct).abs());
            break;
        }
    }
    sub.push(SubCheck::new(
        "entropy-difference identity matches direct difference within 1e-9 (200 cases)",
        eq9_ok,
        detail,
    ));
    sub.push(SubCheck::new("delta identities (8a)-(8d) exact", ident_ok, String::new()));
    Criterion::from_subs(8, "Lipschitz suite", sub)
}

fn criterion9() -> Criterion {
    let mut sub = Vec::new();
    for n in [4u32, 8, 12] {
        let f = niho::niho(n).unwrap();
        let multiset_ok = niho::spectrum_multiset(&f) == niho::table2_expected(n).unwrap();
        let gap = niho::niho_gap(n).unwrap();
        sub.push(SubCheck::new(
            &format!("n={n}: four-valued spectrum multiset exact"),
            multiset_ok,
            String::new(),
        ));
        sub.push(SubCheck::new(
            &format!("n={n}: entropy gap exceeds 8/(3*sqrt(N))"),
            gap.exceeds_threshold(),
            format!("gap = {:.9}, threshold = {:.9}", gap.gap, gap.threshold),
        ));
        sub.push(SubCheck::new(
            &format!("n={n}: gap within the Lipschitz bound"),
            gap.within_lemma_bound(),
            format!("bound = {:.4}", gap.lemma_bound),
        ));
    }
    Criterion::from_subs(9, "Niho witness", sub)
}

fn criterion10() -> Criterion {
    let mut sub = Vec::new();
    let scan = search::search_biased_bases(4, 20, true).unwrap();
    sub.push(SubCheck::new(
        "no base on <= 4 variables beats NAND by more than 1e-9",
        scan.tau_is_optimal,
        format!(
            "tau bound {:.9}; best found {:.9}",
            scan.tau_bound,
            scan.top.first().map(|e| e.bound).unwrap_or(f64::NEG_INFINITY)
        ),
    ));
    let named = search::verify_named().unwrap();
    sub.push(SubCheck::new(
        "named functions g3, g3', g4, g4' reproduce printed values",
        named.iter().all(|r| r.ok),
        String::new(),
    ));
    Criterion::from_subs(10, "exhaustive base search", sub)
}

fn criterion11() -> Criterion {
    let mut sub = Vec::new();
    let mut footnote_ok = true;
    let mut detail = String::new();
    for n in 1..=16u32 {
        let nn = (1u64 << n) as f64;
        let and_n = BooleanFunction::from_fn(n, |i| i == 0).unwrap();
        let h_val = and_n.spectrum().entropy();
        let approx = 8.0 * (n as f64 - 1.0 + 1.0 / 4f64.ln()) / nn;
        let diff = approx - h_val;
        if !(diff > 0.0 && diff < 12.0 * n as f64 / (nn * nn)) {
            footnote_ok = false;
            detail = format!("n={n}: diff = {diff:.3e}");
            break;
        }
    }
    sub.push(SubCheck::new(
        "0 < 8(n-1+1/ln4)/N - H[AND_n] < 12n/N^2 for n = 1..16",
        footnote_ok,
        detail,
    ));
    let mut plus_ok = true;
    for n in 1..=16u32 {
        let and_n = BooleanFunction::from_fn(n, |i| i == 0).unwrap();
        let prof = and_n.profile();
        // exact I+ = I/V as rationals
        let p = prof.p_exact().unwrap().clone();
        let v = rat(4, 1) * &p * (Rat::one() - &p);
        let i_plus = prof.i_exact().unwrap().clone() / v;
        let nn = BigInt::from(1u64 << n);
        let expected =
            Rat::new(BigInt::from(n), BigInt::from(2u8)) / Rat::new(nn.clone() - BigInt::one(), nn.clone());
        plus_ok &= i_plus == expected;
        let h_plus = prof.h_plus().unwrap();
        plus_ok &= (h_plus - ((1u64 << n) as f64 - 1.0).log2()).abs() < 1e-12;
    }
    sub.push(SubCheck::new(
        "I+[AND_n] exact and H+[AND_n] = log2(N-1) within 1e-12, n = 1..16",
        plus_ok,
        String::new(),
    ));
    Criterion::from_subs(11, "AND_n footnote and conditioned profile", sub)
}

fn criterion12() -> Criterion {
    let mut ok = true;
    let mut detail = String::new();
    for m in 1..=8u32 {
        let n = 2 * m;
        let mut vars: Vec<u32> = (3..=2 * m).collect();
        vars.push(1);
        let g_m = g_upper_on(&vars).eval(n).unwrap();
        let x1_or_x2 = FormulaAst::or(FormulaAst::var(1), FormulaAst::var(2)).eval(n).unwrap();
        let cond = g_m.conditional_probability(&x1_or_x2).unwrap();
        if cond != rat(2, 3) {
            ok = false;
            detail = format!("m={m}: got {cond}");
            break;
        }
    }
    let sub = vec![SubCheck::new(
        "Pr[G_m(x3..x_2m, x1) | x1 or x2] = 2/3 exactly for m <= 8",
        ok,
        detail,
    )];
    Criterion::from_subs(12, "conditioned probability of the G chain", sub)
}
