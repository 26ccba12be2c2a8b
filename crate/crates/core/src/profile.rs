//! The `(p, I, H)` composition calculus.
//!
//! Disjoint conjunction and disjunction of Boolean functions close over the
//! triple (probability of true, total influence, spectral entropy), which is
//! what makes limit constructions computable without ever materializing a
//! truth table. Probabilities and influences stay exact rationals whenever
//! the operands carry exact values; entropy is always a float.

use crate::error::{Error, Result};
use crate::numeric;
use crate::{rat, rat_to_f64, Rat};
use num::{One, Zero};

pub use crate::numeric::{h, h_tilde, psi};

/// Profile of a Boolean function: probability of true, total influence and
/// spectral entropy, with exact rational channels when available.
#[derive(Clone, Debug)]
pub struct FunctionProfile {
    p: f64,
    i: f64,
    h: f64,
    p_exact: Option<Rat>,
    i_exact: Option<Rat>,
}

impl FunctionProfile {
    pub fn exact(p: Rat, i: Rat, h: f64) -> Self {
        FunctionProfile {
            p: rat_to_f64(&p),
            i: rat_to_f64(&i),
            h,
            p_exact: Some(p),
            i_exact: Some(i),
        }
    }

    pub fn approx(p: f64, i: f64, h: f64) -> Self {
        FunctionProfile { p, i, h, p_exact: None, i_exact: None }
    }

    /// Exact probability channel with floating influence and entropy.
    pub fn with_exact_p(p: Rat, i: f64, h: f64) -> Self {
        FunctionProfile { p: rat_to_f64(&p), i, h, p_exact: Some(p), i_exact: None }
    }

    /// The one-variable identity function `ι = ℓ⟨1/2⟩`.
    pub fn iota() -> Self {
        Self::exact(rat(1, 2), rat(1, 1), 0.0)
    }

    /// Constant function profile (`p` must be 0 or 1).
    pub fn constant(value: bool) -> Self {
        Self::exact(if value { Rat::one() } else { Rat::zero() }, Rat::zero(), 0.0)
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    pub fn i(&self) -> f64 {
        self.i
    }

    pub fn h(&self) -> f64 {
        self.h
    }

    pub fn p_exact(&self) -> Option<&Rat> {
        self.p_exact.as_ref()
    }

    pub fn i_exact(&self) -> Option<&Rat> {
        self.i_exact.as_ref()
    }

    /// `E[f] = 1 - 2p`.
    pub fn expectation(&self) -> f64 {
        1.0 - 2.0 * self.p
    }

    /// `V[f] = Pr[S != ∅] = 4p(1-p)`.
    pub fn variance(&self) -> f64 {
        4.0 * self.p * (1.0 - self.p)
    }

    /// `I⁺ = I / V`; undefined for constant functions.
    pub fn i_plus(&self) -> Result<f64> {
        let v = self.variance();
        if v == 0.0 {
            return Err(Error::DegenerateProfile("I+ undefined when V = 0"));
        }
        Ok(self.i / v)
    }

    /// `H⁺ = (H - h~(p)) / V`; undefined for constant functions.
    pub fn h_plus(&self) -> Result<f64> {
        let v = self.variance();
        if v == 0.0 {
            return Err(Error::DegenerateProfile("H+ undefined when V = 0"));
        }
        Ok((self.h - numeric::h_tilde(self.p)) / v)
    }

    /// Profile of the dual function: `p ↦ 1-p`, influence and entropy kept.
    pub fn dual(&self) -> Self {
        FunctionProfile {
            p: 1.0 - self.p,
            i: self.i,
            h: self.h,
            p_exact: self.p_exact.as_ref().map(|p| Rat::one() - p),
            i_exact: self.i_exact.clone(),
        }
    }

    /// Disjoint conjunction `f1 ⊓ f2`.
    pub fn meet(&self, other: &Self) -> Self {
        let (p1, p2) = (self.p, other.p);
        let i = p2 * self.i + p1 * other.i;
        let h = p2 * (self.h - numeric::h_tilde(p1))
            + p1 * (other.h - numeric::h_tilde(p2))
            + numeric::psi(p1, p2);
        let p_exact = match (&self.p_exact, &other.p_exact) {
            (Some(a), Some(b)) => Some(a * b),
            _ => None,
        };
        let i_exact = match (&self.p_exact, &other.p_exact, &self.i_exact, &other.i_exact) {
            (Some(pa), Some(pb), Some(ia), Some(ib)) => Some(pb * ia + pa * ib),
            _ => None,
        };
        FunctionProfile { p: p1 * p2, i, h, p_exact, i_exact }
    }

    /// Disjoint disjunction `f1 ⊔ f2 = (f1† ⊓ f2†)†`.
    pub fn join(&self, other: &Self) -> Self {
        self.dual().meet(&other.dual()).dual()
    }

    /// Composition with the single-variable identity, `f ⊓ ι` or `f ⊔ ι`.
    /// Delegates to the general operation so the results agree bit-for-bit.
    pub fn with_iota(&self, kind: IotaOp) -> Self {
        match kind {
            IotaOp::Meet => self.meet(&Self::iota()),
            IotaOp::Join => self.join(&Self::iota()),
        }
    }

    /// Fixed point of `κ = (λ ⊓ κ)†` for `λ = self`:
    /// `q = 1/(1+p)`, `I⁺[κ] = I⁺[λ]/q`, `H⁺[κ] = (H⁺[λ] + h(p)/(1-p))/q`.
    pub fn solve_kappa(&self) -> Result<Self> {
        let p = self.p;
        if !(0.0 < p && p < 1.0) {
            return Err(Error::DegenerateProfile(
                "solve_kappa needs V(lambda) > 0 and p(lambda) < 1",
            ));
        }
        let q = 1.0 / (1.0 + p);
        let vq = 4.0 * q * (1.0 - q);
        let i_plus = self.i_plus()? / q;
        let h_plus = (self.h_plus()? + numeric::h(p) / (1.0 - p)) / q;
        let (p_exact, i_exact) = match (&self.p_exact, &self.i_exact) {
            (Some(pe), Some(ie)) => {
                let qe = Rat::one() / (Rat::one() + pe);
                // I[κ] = I⁺[κ]·V[κ] = (1-q)·I[λ]/(p(1-p)) = q·I[λ]/(1-p)
                let ik = qe.clone() * ie / (Rat::one() - pe);
                (Some(qe), Some(ik))
            }
            _ => (None, None),
        };
        Ok(FunctionProfile {
            p: q,
            i: i_plus * vq,
            h: h_plus * vq + numeric::h_tilde(q),
            p_exact,
            i_exact,
        })
    }
}

/// Which `ι` composition [`FunctionProfile::with_iota`] performs.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IotaOp {
    Meet,
    Join,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bf::BooleanFunction;

    fn lex_two_thirds() -> FunctionProfile {
        FunctionProfile::exact(rat(2, 3), rat(4, 3), 2.0 * 3f64.log2())
    }

    fn or2() -> FunctionProfile {
        FunctionProfile::exact(rat(3, 4), rat(1, 1), 2.0)
    }

    /// Disjoint conjunction/disjunction at the truth-table level; f2's
    /// variables become the trailing (least significant) index bits.
    pub(crate) fn table_meet(
        f1: &BooleanFunction,
        f2: &BooleanFunction,
        or: bool,
    ) -> BooleanFunction {
        let n = f1.n() + f2.n();
        let shift = f2.n();
        let mask = f2.size() - 1;
        BooleanFunction::from_fn(n, |i| {
            let (a, b) = (f1.get(i >> shift), f2.get(i & mask));
            if or {
                a || b
            } else {
                a && b
            }
        })
        .unwrap()
    }

    #[test]
    fn meet_or2_with_lex_two_thirds_gives_thm8_profile() {
        let g = or2().meet(&lex_two_thirds());
        assert_eq!(g.p_exact().unwrap(), &rat(1, 2));
        assert_eq!(g.i_exact().unwrap(), &rat(5, 3));
        let expected = 8.0 / 3.0 + 3f64.log2();
        assert!((g.h() - expected).abs() < 1e-12, "H = {}", g.h());
    }

    #[test]
    fn meet_identity_is_constant_true() {
        let a = or2();
        let m = a.meet(&FunctionProfile::constant(true));
        assert_eq!(m.p_exact(), a.p_exact());
        assert_eq!(m.i_exact(), a.i_exact());
        assert!((m.h() - a.h()).abs() < 1e-12);
    }

    #[test]
    fn join_identity_is_constant_false() {
        let a = lex_two_thirds();
        let j = a.join(&FunctionProfile::constant(false));
        assert_eq!(j.p_exact(), a.p_exact());
        assert!((j.h() - a.h()).abs() < 1e-12);
    }

    #[test]
    fn join_iota_iota_is_or2() {
        let j = FunctionProfile::iota().join(&FunctionProfile::iota());
        assert_eq!(j.p_exact().unwrap(), &rat(3, 4));
        assert_eq!(j.i_exact().unwrap(), &rat(1, 1));
        assert!((j.h() - 2.0).abs() < 1e-12);
    }

    #[test]
    fn with_iota_matches_general_ops_bitwise() {
        let a = lex_two_thirds();
        let m = a.with_iota(IotaOp::Meet);
        let g = a.meet(&FunctionProfile::iota());
        assert_eq!(m.p(), g.p());
        assert_eq!(m.i(), g.i());
        assert_eq!(m.h(), g.h());
        let j = a.with_iota(IotaOp::Join);
        let gj = a.join(&FunctionProfile::iota());
        assert_eq!((j.p(), j.i(), j.h()), (gj.p(), gj.i(), gj.h()));
    }

    #[test]
    fn iota_meet_iota_is_and2() {
        let m = FunctionProfile::iota().with_iota(IotaOp::Meet);
        assert_eq!(m.p_exact().unwrap(), &rat(1, 4));
        assert_eq!(m.i_exact().unwrap(), &rat(1, 1));
        assert!((m.h() - 2.0).abs() < 1e-12);
    }

    #[test]
    fn cor7_closed_forms() {
        let a = lex_two_thirds();
        let m = a.with_iota(IotaOp::Meet);
        let j = a.with_iota(IotaOp::Join);
        let p = 2.0 / 3.0;
        assert!((m.i() - (a.i() / 2.0 + p)).abs() < 1e-12);
        assert!((j.i() - (a.i() / 2.0 + 1.0 - p)).abs() < 1e-12);
        let hh = a.h() / 2.0 - h_tilde(p) / 2.0 + 2.0 * h(p);
        assert!((m.h() - hh).abs() < 1e-12);
        assert!((j.h() - hh).abs() < 1e-12);
    }

    #[test]
    fn meet_join_match_truth_table_oracle() {
        let f1 = BooleanFunction::from_fn(4, |i| (i * 2654435761) % 5 < 2).unwrap();
        let f2 = BooleanFunction::from_fn(5, |i| (i * 40503) % 7 < 3).unwrap();
        let (p1, p2) = (f1.profile(), f2.profile());
        for or in [false, true] {
            let composed = if or { p1.join(&p2) } else { p1.meet(&p2) };
            let table = table_meet(&f1, &f2, or).profile();
            assert_eq!(composed.p_exact(), table.p_exact());
            assert_eq!(composed.i_exact(), table.i_exact());
            assert!(
                (composed.h() - table.h()).abs() < 1e-9,
                "or={or}: {} vs {}",
                composed.h(),
                table.h()
            );
        }
    }

    #[test]
    fn de_morgan() {
        let a = or2();
        let b = lex_two_thirds();
        let j = a.join(&b);
        let m = a.dual().meet(&b.dual()).dual();
        assert_eq!(j.p(), m.p());
        assert_eq!(j.i(), m.i());
        assert_eq!(j.h(), m.h());
    }

    #[test]
    fn bit_steps_rebuild_lex_profile() {
        // 11/16 = 0.1011: fold from the constant-false tail
        let mut p = FunctionProfile::constant(false);
        for bit in [true, true, false, true] {
            p = p.with_iota(if bit { IotaOp::Join } else { IotaOp::Meet });
        }
        let expected = crate::lex::lex_profile_exact(&rat(11, 16)).unwrap();
        assert_eq!(p.p_exact().unwrap(), &rat(11, 16));
        assert_eq!(p.i_exact().unwrap(), expected.i_exact.as_ref().unwrap());
        assert!((p.h() - expected.h).abs() < 1e-12);
    }

    #[test]
    fn join_with_iota_climbs_the_lex_chain() {
        // iota  ⊔ l<2/3> = l<5/6>
        let g = crate::lex::lex_profile_exact(&rat(2, 3)).unwrap().to_function_profile();
        let lifted = g.with_iota(IotaOp::Join);
        let expected = crate::lex::lex_profile_exact(&rat(5, 6)).unwrap();
        assert_eq!(lifted.p_exact().unwrap(), &rat(5, 6));
        assert_eq!(lifted.i_exact().unwrap(), expected.i_exact.as_ref().unwrap());
        assert!((lifted.h() - expected.h).abs() < 1e-12);
    }

    #[test]
    fn solve_kappa_from_iota_is_lex_two_thirds() {
        let k = FunctionProfile::iota().solve_kappa().unwrap();
        assert_eq!(k.p_exact().unwrap(), &rat(2, 3));
        assert_eq!(k.i_exact().unwrap(), &rat(4, 3));
        assert!((k.h() - 2.0 * 3f64.log2()).abs() < 1e-12);
    }

    #[test]
    fn solve_kappa_rejects_constants() {
        assert!(FunctionProfile::constant(false).solve_kappa().is_err());
        assert!(FunctionProfile::constant(true).solve_kappa().is_err());
    }

    #[test]
    fn solve_kappa_chain_probability() {
        let k2 = lex_two_thirds().solve_kappa().unwrap();
        assert_eq!(k2.p_exact().unwrap(), &rat(3, 5));
    }

    #[test]
    fn solve_kappa_is_fixed_point_of_forward_map() {
        let lambda = or2();
        let kappa = lambda.solve_kappa().unwrap();
        let forward = lambda.meet(&kappa).dual();
        assert_eq!(forward.p_exact(), kappa.p_exact());
        assert_eq!(forward.i_exact(), kappa.i_exact());
        assert!((forward.h() - kappa.h()).abs() < 1e-12);
    }

    #[test]
    fn commutativity_associativity() {
        let a = or2();
        let b = lex_two_thirds();
        let c = FunctionProfile::exact(rat(1, 4), rat(1, 1), 2.0);
        let ab = a.meet(&b);
        let ba = b.meet(&a);
        assert_eq!(ab.p_exact(), ba.p_exact());
        assert_eq!(ab.i_exact(), ba.i_exact());
        assert!((ab.h() - ba.h()).abs() < 1e-12);
        let l = a.meet(&b).meet(&c);
        let r = a.meet(&b.meet(&c));
        assert_eq!(l.p_exact(), r.p_exact());
        assert_eq!(l.i_exact(), r.i_exact());
        assert!((l.h() - r.h()).abs() < 1e-12);
    }
}
