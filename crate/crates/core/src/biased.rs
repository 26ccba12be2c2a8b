//! η-biased Fourier analysis, the composition lemma for recursive
//! constructions, and bias fixed-point analysis of base functions.

use crate::bf::BooleanFunction;
use crate::error::{Error, Result};
use crate::numeric::Kahan;
use crate::profile::FunctionProfile;
use crate::Rat;
use num::{BigInt, One, Signed, Zero};

/// Biased Walsh coefficients `f~(S) = E_{x~η}[f(x) χ~_S(x)]`.
#[derive(Clone, Debug)]
pub struct BiasedSpectrum {
    n: u32,
    eta: Vec<f64>,
    coeffs: Vec<f64>,
}

impl BiasedSpectrum {
    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn eta(&self) -> &[f64] {
        &self.eta
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn coeff(&self, s: u64) -> f64 {
        self.coeffs[s as usize]
    }

    /// `Σ_S f~(S)^2`, which must be 1 up to rounding.
    pub fn norm_sq(&self) -> f64 {
        let mut acc = Kahan::default();
        let mut sq: Vec<f64> = self.coeffs.iter().map(|c| c * c).collect();
        sq.sort_by(|a, b| a.partial_cmp(b).unwrap());
        for v in sq {
            acc.add(v);
        }
        acc.total()
    }
}

/// Direct weighted-enumeration biased spectrum. `n ≤ 16`, `|η_i| < 1`.
pub fn biased_spectrum(f: &BooleanFunction, eta: &[f64]) -> Result<BiasedSpectrum> {
    let n = f.n();
    if n > 16 {
        return Err(Error::VarCountOutOfRange(n, 16));
    }
    if eta.len() != n as usize {
        return Err(Error::InvalidArgument(format!(
            "bias vector has {} entries for n = {n}",
            eta.len()
        )));
    }
    for &e in eta {
        if !(-1.0 < e && e < 1.0) {
            return Err(Error::BiasOutOfRange(e));
        }
    }
    let nn = f.size();
    // per-variable factors indexed by the variable's index bit value
    // bit 0 ⇒ x_j = +1 is false... careful: bit 0 ⇒ x_j = true = -1
    let mut prob = vec![[0.0f64; 2]; n as usize]; // Pr[x_j] component
    let mut chi = vec![[0.0f64; 2]; n as usize]; // (x_j - η_j)/sqrt(1-η_j²)
    for j in 0..n as usize {
        let e = eta[j];
        let norm = (1.0 - e * e).sqrt();
        // x = -1 (true) has index bit 0; x = +1 (false) has index bit 1
        prob[j][0] = (1.0 - e) / 2.0;
        prob[j][1] = (1.0 + e) / 2.0;
        chi[j][0] = (-1.0 - e) / norm;
        chi[j][1] = (1.0 - e) / norm;
    }
    let mut weights = Vec::with_capacity(nn as usize);
    for i in 0..nn {
        let mut w = if f.get(i) { -1.0 } else { 1.0 };
        for j in 0..n {
            let bit = ((i >> (n - 1 - j)) & 1) as usize;
            w *= prob[j as usize][bit];
        }
        weights.push(w);
    }
    let mut coeffs = Vec::with_capacity(nn as usize);
    for s in 0..nn {
        let mut acc = 0.0f64;
        for i in 0..nn {
            let mut t = weights[i as usize];
            let mut rem = s;
            while rem != 0 {
                let b = rem.trailing_zeros();
                let j = (n - 1 - b) as usize; // variable with index bit b
                t *= chi[j][((i >> b) & 1) as usize];
                rem &= rem - 1;
            }
            acc += t;
        }
        coeffs.push(acc);
    }
    Ok(BiasedSpectrum { n, eta: eta.to_vec(), coeffs })
}

/// Biased total influence, spectral entropy and per-coordinate influences.
#[derive(Clone, Debug)]
pub struct BiasedProfile {
    pub i_tilde: f64,
    pub h_tilde: f64,
    /// `I~_j[f] = Pr_{S~p̃}[j ∈ S]` for j = 1..n.
    pub coord_influences: Vec<f64>,
}

pub fn biased_profile(f: &BooleanFunction, eta: &[f64]) -> Result<BiasedProfile> {
    let spec = biased_spectrum(f, eta)?;
    Ok(profile_of_spectrum(&spec))
}

pub fn profile_of_spectrum(spec: &BiasedSpectrum) -> BiasedProfile {
    let n = spec.n;
    let mut i_tilde = 0.0;
    let mut coord = vec![0.0f64; n as usize];
    let mut terms: Vec<f64> = Vec::with_capacity(spec.coeffs.len());
    for (s, &c) in spec.coeffs.iter().enumerate() {
        let p = c * c;
        i_tilde += p * (s.count_ones() as f64);
        if p > 0.0 {
            terms.push(-p * p.log2());
        }
        for j in 0..n {
            if (s >> (n - 1 - j)) & 1 == 1 {
                coord[j as usize] += p;
            }
        }
    }
    terms.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let mut acc = Kahan::default();
    for t in terms {
        acc.add(t);
    }
    BiasedProfile { i_tilde, h_tilde: acc.total(), coord_influences: coord }
}

/// Profile of `F ∘ (g_1, .., g_k)` on disjoint variable blocks via the
/// composition lemma: the bias is `η_i = E[g_i]`,
/// `I[f] = Σ I~_i[F] I⁺[g_i]` and `H[f] = Σ I~_i[F] H⁺[g_i] + H~[F]`.
pub fn ot_compose(f_outer: &BooleanFunction, gs: &[FunctionProfile]) -> Result<FunctionProfile> {
    let k = f_outer.n();
    if gs.len() != k as usize {
        return Err(Error::InvalidArgument(format!(
            "outer function has arity {k} but {} inner profiles given",
            gs.len()
        )));
    }
    for g in gs {
        if g.variance() == 0.0 {
            return Err(Error::DegenerateProfile("inner profile has V = 0"));
        }
    }
    let eta: Vec<f64> = gs.iter().map(|g| g.expectation()).collect();
    let bp = biased_profile(f_outer, &eta)?;
    let mut i = 0.0;
    let mut h = bp.h_tilde;
    for (j, g) in gs.iter().enumerate() {
        i += bp.coord_influences[j] * g.i_plus()?;
        h += bp.coord_influences[j] * g.h_plus()?;
    }
    // Pr[f] by evaluating F under the product measure, exact when possible
    let p_exacts: Option<Vec<&Rat>> = gs.iter().map(|g| g.p_exact()).collect();
    let profile = if let Some(ps) = p_exacts {
        let mut p = Rat::zero();
        for y in 0..f_outer.size() {
            if !f_outer.get(y) {
                continue;
            }
            let mut term = Rat::one();
            for j in 0..k {
                let truthy = (y >> (k - 1 - j)) & 1 == 0;
                term *= if truthy {
                    ps[j as usize].clone()
                } else {
                    Rat::one() - ps[j as usize]
                };
            }
            p += term;
        }
        FunctionProfile::with_exact_p(p, i, h)
    } else {
        let mut p = 0.0f64;
        for y in 0..f_outer.size() {
            if !f_outer.get(y) {
                continue;
            }
            let mut term = 1.0;
            for j in 0..k {
                let truthy = (y >> (k - 1 - j)) & 1 == 0;
                term *= if truthy { gs[j as usize].p() } else { 1.0 - gs[j as usize].p() };
            }
            p += term;
        }
        FunctionProfile::approx(p, i, h)
    };
    Ok(profile)
}

/// A fixed point of the bias map `E_g(ρ) = E_{x~ρ}[g]`.
#[derive(Clone, Copy, Debug)]
pub struct BiasFixedPoint {
    pub rho: f64,
    /// `E_g'(ρ)` at the fixed point.
    pub derivative: f64,
    /// `|E_g'(ρ)| < 1`.
    pub attractive: bool,
}

/// Fixed points of `E_g` on the open interval (-1, 1).
#[derive(Clone, Debug)]
pub struct BiasFixedPoints {
    /// `E_g(ρ) = ρ` identically (g is a dictator); every ρ is a fixed point.
    pub identity: bool,
    pub points: Vec<BiasFixedPoint>,
}

/// Integer coefficients of `N·(E_g(ρ) - ρ)` by spectral level.
fn fixed_point_poly(f: &BooleanFunction) -> Vec<i64> {
    let spec = f.spectrum();
    let n = f.n() as usize;
    let mut q = vec![0i64; n + 1];
    for (s, &a) in spec.coeffs().iter().enumerate() {
        q[s.count_ones() as usize] += a as i64;
    }
    q[1] -= f.size() as i64;
    q
}

/// Sign of `Σ_d q_d (j/2^m)^d` for dyadic `j/2^m` with `|j| ≤ 2^m`,
/// evaluated exactly (i128 fast path, BigInt beyond).
fn poly_sign_dyadic(q: &[i64], j: i64, m: u32) -> i8 {
    // value · 2^{m·deg} = Σ q_d j^d 2^{m(deg-d)}: each term needs at most
    // bits(q_d) + deg·m bits, plus a few for the sum
    let deg = q.len() - 1;
    let bits_q = q.iter().map(|c| 64 - c.unsigned_abs().leading_zeros()).max().unwrap_or(0);
    // |j| may exceed 2^m by one bit during bisection midpoints
    if bits_q + deg as u32 * (m + 2) + 8 < 127 {
        let mut acc: i128 = 0;
        let mut pow: i128 = 1;
        for (d, &c) in q.iter().enumerate() {
            acc += ((c as i128) * pow) << (m * (deg - d) as u32);
            if d < deg {
                pow *= j as i128;
            }
        }
        acc.signum() as i8
    } else {
        let jj = BigInt::from(j);
        let mut acc = BigInt::zero();
        let mut pow = BigInt::one();
        for (d, &c) in q.iter().enumerate() {
            acc += (BigInt::from(c) * &pow) << (m * (deg - d) as u32);
            if d < deg {
                pow *= &jj;
            }
        }
        if acc.is_zero() {
            0
        } else if acc.is_positive() {
            1
        } else {
            -1
        }
    }
}

/// Locates the real roots of `E_g(ρ) = ρ` in (-1, 1) by exact sign-change
/// bisection on a dyadic grid, tagging each root with attractiveness.
pub fn bias_fixed_points(f: &BooleanFunction) -> Result<BiasFixedPoints> {
    if f.n() > 16 {
        return Err(Error::VarCountOutOfRange(f.n(), 16));
    }
    let q = fixed_point_poly(f);
    if q.iter().all(|&c| c == 0) {
        return Ok(BiasFixedPoints { identity: true, points: vec![] });
    }
    const GRID_M: u32 = 12;
    let lim = 1i64 << GRID_M;
    let mut roots: Vec<f64> = Vec::new();
    let mut prev: Option<(i64, i8)> = None;
    for j in (-lim + 1)..lim {
        let s = poly_sign_dyadic(&q, j, GRID_M);
        if s == 0 {
            roots.push(j as f64 / lim as f64);
            prev = None;
            continue;
        }
        if let Some((pj, ps)) = prev {
            if s != ps {
                // bisect (pj, j) at growing resolution; slo tracks sign at lo
                let (mut lo, mut hi, mut m, slo) = (pj, j, GRID_M, ps);
                while m < 52 {
                    let mid = lo + hi; // numerator over 2^{m+1}
                    m += 1;
                    lo *= 2;
                    hi *= 2;
                    let sm = poly_sign_dyadic(&q, mid, m);
                    if sm == 0 {
                        lo = mid;
                        hi = mid;
                        break;
                    } else if sm == slo {
                        lo = mid;
                    } else {
                        hi = mid;
                    }
                }
                roots.push((lo + hi) as f64 / 2.0 / (1u64 << m) as f64);
            }
        }
        prev = Some((j, s));
    }
    // dedup within 1e-9
    roots.sort_by(|a, b| a.partial_cmp(b).unwrap());
    roots.dedup_by(|a, b| (*a - *b).abs() < 1e-9);
    // derivative of E_g: Σ d c_d ρ^{d-1}, c_d = (q_d + [d=1]·N)/N
    let nn = f.size() as f64;
    let points = roots
        .into_iter()
        .map(|rho| {
            let mut deriv = 0.0;
            for (d, &c) in q.iter().enumerate().skip(1) {
                let cd = if d == 1 { (c + f.size() as i64) as f64 } else { c as f64 } / nn;
                deriv += (d as f64) * cd * rho.powi(d as i32 - 1);
            }
            BiasFixedPoint { rho, derivative: deriv, attractive: deriv.abs() < 1.0 }
        })
        .collect();
    Ok(BiasFixedPoints { identity: false, points })
}
