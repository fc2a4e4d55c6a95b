//! GDOA definitions: deformation function G, structure function F, and
//! the Casimir eigenvalue relations.
//!
//! An algebra is fixed by the quommutator parameter `q` and the
//! deformation function `G(N)`. The structure function `F` solves
//! `F(x+1) - q F(x) = G(x)` with `F(0) = 0`; the three built-in
//! families carry closed forms:
//!
//! - Arik-Coon: `G ≡ 1`, `F(x) = [x]_q = (q^x - 1)/(q - 1)`
//! - Chaturvedi-Srinivasan: quommutator `q = 1`, `G(x) = g^x`,
//!   `F(x) = [x]_g`
//! - Tamm-Dancoff: `G(x) = q^x`, `F(x) = q^{x-1} x`

use alloc::format;
use alloc::string::{String, ToString};
use alloc::sync::Arc;

use num_traits::{Float, One};

use crate::error::Error;
use crate::rational::{rat_int, rat_pow_i, Rat};

/// Overflow threshold for recurrence evaluation of F.
pub const DIVERGENCE_LIMIT: f64 = 1e300;

/// Probe lattice half-width for validating user-supplied closed forms
/// against the structure equation at construction.
const PROBE_HALF_WIDTH: i64 = 6;

pub type RealFn = Arc<dyn Fn(f64) -> Result<f64, Error> + Send + Sync>;

/// The three families shipped with the crate, plus user plug-ins.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BuiltinFamily {
    ArikCoon,
    ChaturvediSrinivasan,
    TammDancoff,
}

impl BuiltinFamily {
    pub fn label(&self) -> &'static str {
        match self {
            BuiltinFamily::ArikCoon => "arik-coon",
            BuiltinFamily::ChaturvediSrinivasan => "chaturvedi-srinivasan",
            BuiltinFamily::TammDancoff => "tamm-dancoff",
        }
    }
}

/// Deformation function G(N).
#[derive(Clone)]
pub enum Deformation {
    /// `G ≡ 1` (Arik-Coon).
    ConstantOne,
    /// `G(x) = base^x`. For `base < 0` evaluation is restricted to the
    /// integer lattice; `base^x` is complex elsewhere.
    Geometric { base: f64, base_rat: Option<Rat> },
    /// User plug-in `G`, with an optional closed-form `F`.
    UserDefined { g: RealFn, f_closed: Option<RealFn> },
}

impl core::fmt::Debug for Deformation {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            Deformation::ConstantOne => write!(f, "ConstantOne"),
            Deformation::Geometric { base, .. } => write!(f, "Geometric {{ base: {base} }}"),
            Deformation::UserDefined { f_closed, .. } => {
                write!(f, "UserDefined {{ closed_form: {} }}", f_closed.is_some())
            }
        }
    }
}

/// How F is evaluated.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StructureStrategy {
    /// Analytic expression usable at any real argument (lattice-restricted
    /// only where a negative base forbids non-integer exponents).
    ClosedForm,
    /// Values defined on the integer lattice anchored at `F(0) = 0`.
    LatticeRecurrence,
}

/// A validated GDOA.
#[derive(Debug, Clone)]
pub struct AlgebraSpec {
    name: String,
    q: f64,
    q_rat: Option<Rat>,
    deformation: Deformation,
    family: Option<BuiltinFamily>,
}

impl AlgebraSpec {
    /// Arik-Coon algebra: `G ≡ 1`, `F(x) = [x]_q`.
    pub fn arik_coon(q: f64) -> Result<Self, Error> {
        Self::arik_coon_inner(q, Rat::from_float(q))
    }

    /// Arik-Coon with an exact rational `q`, enabling the exact mode.
    pub fn arik_coon_rat(q: Rat) -> Result<Self, Error> {
        let qf = crate::rational::rat_to_f64(&q);
        Self::arik_coon_inner(qf, Some(q))
    }

    fn arik_coon_inner(q: f64, q_rat: Option<Rat>) -> Result<Self, Error> {
        check_q(q)?;
        Ok(AlgebraSpec {
            name: format!("Arik-Coon (q = {q})"),
            q,
            q_rat,
            deformation: Deformation::ConstantOne,
            family: Some(BuiltinFamily::ArikCoon),
        })
    }

    /// Chaturvedi-Srinivasan algebra: quommutator `q = 1`, `G(x) = g^x`,
    /// `F(x) = [x]_g`. Negative bases are accepted but restrict all
    /// structure-function arguments to the integer lattice.
    pub fn chaturvedi_srinivasan(g: f64) -> Result<Self, Error> {
        Self::chaturvedi_srinivasan_inner(g, Rat::from_float(g))
    }

    pub fn chaturvedi_srinivasan_rat(g: Rat) -> Result<Self, Error> {
        let gf = crate::rational::rat_to_f64(&g);
        Self::chaturvedi_srinivasan_inner(gf, Some(g))
    }

    fn chaturvedi_srinivasan_inner(g: f64, g_rat: Option<Rat>) -> Result<Self, Error> {
        check_base(g)?;
        Ok(AlgebraSpec {
            name: format!("Chaturvedi-Srinivasan (g = {g})"),
            q: 1.0,
            q_rat: Some(rat_int(1)),
            deformation: Deformation::Geometric { base: g, base_rat: g_rat },
            family: Some(BuiltinFamily::ChaturvediSrinivasan),
        })
    }

    /// Tamm-Dancoff algebra: `G(x) = q^x`, `F(x) = q^{x-1} x`.
    pub fn tamm_dancoff(q: f64) -> Result<Self, Error> {
        Self::tamm_dancoff_inner(q, Rat::from_float(q))
    }

    pub fn tamm_dancoff_rat(q: Rat) -> Result<Self, Error> {
        let qf = crate::rational::rat_to_f64(&q);
        Self::tamm_dancoff_inner(qf, Some(q))
    }

    fn tamm_dancoff_inner(q: f64, q_rat: Option<Rat>) -> Result<Self, Error> {
        check_q(q)?;
        Ok(AlgebraSpec {
            name: format!("Tamm-Dancoff (q = {q})"),
            q,
            q_rat: q_rat.clone(),
            deformation: Deformation::Geometric { base: q, base_rat: q_rat },
            family: Some(BuiltinFamily::TammDancoff),
        })
    }

    /// User-defined deformation. Without a closed-form `F`, the structure
    /// function is available only on the integer lattice. A supplied
    /// closed form is checked against `F(0) = 0` and the structure
    /// equation on a probe lattice.
    pub fn user_defined(
        name: &str,
        q: f64,
        g: RealFn,
        f_closed: Option<RealFn>,
    ) -> Result<Self, Error> {
        check_q(q)?;
        let spec = AlgebraSpec {
            name: name.to_string(),
            q,
            q_rat: Rat::from_float(q),
            deformation: Deformation::UserDefined { g, f_closed },
            family: None,
        };
        spec.validate_closed_form()?;
        Ok(spec)
    }

    fn validate_closed_form(&self) -> Result<(), Error> {
        if self.structure_strategy() != StructureStrategy::ClosedForm {
            return Ok(());
        }
        let f0 = self.eval_f(0.0)?;
        if f0.abs() > 1e-9 {
            return Err(Error::InvalidParameter(format!(
                "closed-form F violates F(0) = 0: F(0) = {f0}"
            )));
        }
        for n in -PROBE_HALF_WIDTH..PROBE_HALF_WIDTH {
            let x = n as f64;
            let lhs = self.eval_f(x + 1.0)? - self.q * self.eval_f(x)?;
            let rhs = self.eval_g(x)?;
            let scale = 1.0 + lhs.abs() + rhs.abs();
            if (lhs - rhs).abs() > 1e-9 * scale {
                return Err(Error::InvalidParameter(format!(
                    "closed-form F violates F(x+1) - q F(x) = G(x) at x = {n}"
                )));
            }
        }
        Ok(())
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn q(&self) -> f64 {
        self.q
    }

    /// Exact rational `q`, when the algebra was built from one.
    pub fn q_rat(&self) -> Option<&Rat> {
        self.q_rat.as_ref()
    }

    pub fn deformation(&self) -> &Deformation {
        &self.deformation
    }

    pub fn family(&self) -> Option<BuiltinFamily> {
        self.family
    }

    /// The geometric base `g` where applicable (CS base, TD `q`).
    pub fn geometric_base(&self) -> Option<f64> {
        match &self.deformation {
            Deformation::Geometric { base, .. } => Some(*base),
            _ => None,
        }
    }

    fn geometric_base_rat(&self) -> Option<&Rat> {
        match &self.deformation {
            Deformation::Geometric { base_rat, .. } => base_rat.as_ref(),
            _ => None,
        }
    }

    /// True when some parameter forces arguments onto the integer lattice
    /// (negative quommutator `q` or negative geometric base).
    pub fn requires_integer_lattice(&self) -> bool {
        self.q < 0.0 || matches!(self.deformation, Deformation::Geometric { base, .. } if base < 0.0)
    }

    pub fn structure_strategy(&self) -> StructureStrategy {
        match &self.deformation {
            Deformation::ConstantOne | Deformation::Geometric { .. } => StructureStrategy::ClosedForm,
            Deformation::UserDefined { f_closed, .. } => {
                if f_closed.is_some() {
                    StructureStrategy::ClosedForm
                } else {
                    StructureStrategy::LatticeRecurrence
                }
            }
        }
    }

    /// Deformation function G at a real argument.
    pub fn eval_g(&self, x: f64) -> Result<f64, Error> {
        match &self.deformation {
            Deformation::ConstantOne => Ok(1.0),
            Deformation::Geometric { base, .. } => real_pow(*base, x),
            Deformation::UserDefined { g, .. } => g(x),
        }
    }

    /// Structure function F. Closed forms evaluate analytically; the
    /// lattice recurrence iterates from `F(0) = 0` in either direction.
    pub fn eval_f(&self, x: f64) -> Result<f64, Error> {
        match self.structure_strategy() {
            StructureStrategy::ClosedForm => self.eval_f_closed(x),
            StructureStrategy::LatticeRecurrence => {
                let n = lattice_point(x).ok_or(Error::NonLatticeArgument { x })?;
                self.eval_f_recurrence(n)
            }
        }
    }

    fn eval_f_closed(&self, x: f64) -> Result<f64, Error> {
        match &self.deformation {
            Deformation::ConstantOne => q_bracket(self.q, x),
            Deformation::Geometric { base, .. } => {
                if let Some(BuiltinFamily::TammDancoff) = self.family {
                    Ok(real_pow(*base, x - 1.0)? * x)
                } else {
                    // CS solves F(x+1) - F(x) = g^x, so F = [x]_g.
                    q_bracket(*base, x)
                }
            }
            Deformation::UserDefined { f_closed, .. } => match f_closed {
                Some(f) => f(x),
                None => unreachable!("closed-form strategy without closed form"),
            },
        }
    }

    /// Recurrence evaluation of F on the lattice: `F(n+1) = q F(n) + G(n)`
    /// upward from `F(0) = 0`, or `F(n) = (F(n+1) - G(n))/q` downward.
    pub fn eval_f_recurrence(&self, n: i64) -> Result<f64, Error> {
        let mut f = 0.0f64;
        if n >= 0 {
            for k in 0..n {
                f = self.q * f + self.eval_g(k as f64)?;
                if f.abs() > DIVERGENCE_LIMIT {
                    return Err(Error::DivergenceGuard { magnitude: f.abs() });
                }
            }
        } else {
            for k in (n..0).rev() {
                f = (f - self.eval_g(k as f64)?) / self.q;
                if f.abs() > DIVERGENCE_LIMIT {
                    return Err(Error::DivergenceGuard { magnitude: f.abs() });
                }
            }
        }
        Ok(f)
    }

    /// Casimir eigenvalue from lowest-weight data:
    /// `c = q^{-ν₀} (F(ν₀) - λ₀)`.
    pub fn casimir_value(&self, nu0: f64, lambda0: f64) -> Result<f64, Error> {
        let f = self.eval_f(nu0)?;
        let qp = real_pow(self.q, -nu0)?;
        Ok(qp * (f - lambda0))
    }

    // --- exact rational mode -------------------------------------------

    /// Exact rational `G(n)` on the lattice (built-in families only).
    pub fn eval_g_exact(&self, n: i64) -> Result<Rat, Error> {
        match &self.deformation {
            Deformation::ConstantOne => Ok(rat_int(1)),
            Deformation::Geometric { .. } => {
                let base = self.geometric_base_rat().ok_or_else(|| {
                    Error::NonRationalStep("geometric base is not rational".to_string())
                })?;
                rat_pow_i(base, n)
            }
            Deformation::UserDefined { .. } => Err(Error::NonRationalStep(
                "user-defined G has no exact evaluation".to_string(),
            )),
        }
    }

    /// Exact rational closed-form `F(n)` on the lattice.
    pub fn eval_f_exact(&self, n: i64) -> Result<Rat, Error> {
        let q = self.exact_q()?;
        match self.family {
            Some(BuiltinFamily::ArikCoon) => q_bracket_exact(&q, n),
            Some(BuiltinFamily::ChaturvediSrinivasan) => {
                let g = self.geometric_base_rat().ok_or_else(|| {
                    Error::NonRationalStep("CS base is not rational".to_string())
                })?;
                q_bracket_exact(g, n)
            }
            Some(BuiltinFamily::TammDancoff) => {
                Ok(rat_pow_i(&q, n - 1)? * rat_int(n))
            }
            None => Err(Error::NonRationalStep(
                "exact closed form available only for built-in families".to_string(),
            )),
        }
    }

    /// Exact rational `q`, or NonRationalStep.
    pub fn exact_q(&self) -> Result<Rat, Error> {
        self.q_rat
            .clone()
            .ok_or_else(|| Error::NonRationalStep("q is not rational".to_string()))
    }
}

fn check_q(q: f64) -> Result<(), Error> {
    if q == 0.0 || !q.is_finite() {
        Err(Error::InvalidParameter("q must be finite and nonzero".to_string()))
    } else {
        Ok(())
    }
}

fn check_base(g: f64) -> Result<(), Error> {
    if g == 0.0 || !g.is_finite() {
        Err(Error::InvalidParameter("geometric base must be finite and nonzero".to_string()))
    } else {
        Ok(())
    }
}

/// `x` snapped to the integer lattice, if within 1e-9 of it.
pub fn lattice_point(x: f64) -> Option<i64> {
    let r = Float::round(x);
    if (x - r).abs() <= 1e-9 && r.abs() < 9.0e15 {
        Some(r as i64)
    } else {
        None
    }
}

/// `base^x` over the reals. Negative bases are admitted only at integer
/// exponents; otherwise the result is complex and rejected.
pub fn real_pow(base: f64, x: f64) -> Result<f64, Error> {
    if let Some(n) = lattice_point(x) {
        if base == 0.0 && n < 0 {
            return Err(Error::InvalidParameter("0 raised to a negative power".to_string()));
        }
        return Ok(int_pow(base, n));
    }
    if base > 0.0 {
        Ok(Float::powf(base, x))
    } else {
        Err(Error::ComplexResult { base, exponent: x })
    }
}

fn int_pow(base: f64, n: i64) -> f64 {
    if n.unsigned_abs() <= i32::MAX as u64 {
        Float::powi(base, n as i32)
    } else {
        Float::powf(base.abs(), n as f64) * if base < 0.0 && n % 2 != 0 { -1.0 } else { 1.0 }
    }
}

/// q-bracket `[x]_q = (q^x - 1)/(q - 1)`, with the exact boson limit
/// `[x]_1 = x`. The `q = 1` branch is taken on the literal value, not an
/// epsilon neighborhood.
pub fn q_bracket(q: f64, x: f64) -> Result<f64, Error> {
    if q == 1.0 {
        Ok(x)
    } else {
        Ok((real_pow(q, x)? - 1.0) / (q - 1.0))
    }
}

/// Exact q-bracket on the integer lattice.
pub fn q_bracket_exact(q: &Rat, n: i64) -> Result<Rat, Error> {
    if q.is_one() {
        Ok(rat_int(n))
    } else {
        let num = rat_pow_i(q, n)? - rat_int(1);
        Ok(num / (q - rat_int(1)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn close(a: f64, b: f64) -> bool {
        (a - b).abs() <= 1e-12 * (1.0 + a.abs().max(b.abs()))
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(AlgebraSpec::arik_coon(0.0).is_err());
        assert!(AlgebraSpec::chaturvedi_srinivasan(0.0).is_err());
        assert!(AlgebraSpec::tamm_dancoff(f64::NAN).is_err());
    }

    #[test]
    fn constant_one_g() {
        let a = AlgebraSpec::arik_coon(2.0).unwrap();
        assert_eq!(a.eval_g(5.7).unwrap(), 1.0);
        assert_eq!(a.eval_g(-3.2).unwrap(), 1.0);
    }

    #[test]
    fn geometric_g_values() {
        let td = AlgebraSpec::tamm_dancoff(0.5).unwrap();
        assert_eq!(td.eval_g(0.0).unwrap(), 1.0);
        let cs = AlgebraSpec::chaturvedi_srinivasan(3.0).unwrap();
        assert_eq!(cs.eval_g(2.0).unwrap(), 9.0);
        assert_eq!(cs.q(), 1.0);
    }

    #[test]
    fn arik_coon_f_matches_recurrence() {
        // F(1)=1, F(2)=3, F(3)=7 from F(n+1) = 2 F(n) + 1.
        let a = AlgebraSpec::arik_coon(2.0).unwrap();
        assert!(close(a.eval_f(3.0).unwrap(), 7.0));
        assert!(close(a.eval_f_recurrence(3).unwrap(), 7.0));
        assert_eq!(a.eval_f(0.0).unwrap(), 0.0);
    }

    #[test]
    fn tamm_dancoff_closed_form() {
        let a = AlgebraSpec::tamm_dancoff(0.5).unwrap();
        assert!(close(a.eval_f(4.0).unwrap(), 0.5));
        assert!(close(a.eval_f_recurrence(4).unwrap(), 0.5));
    }

    #[test]
    fn q_bracket_values() {
        assert!(close(q_bracket(2.0, 3.0).unwrap(), 7.0));
        assert_eq!(q_bracket(1.0, 5.5).unwrap(), 5.5);
        assert!(close(q_bracket(-1.0, 4.0).unwrap(), 0.0));
        assert!(matches!(
            q_bracket(-1.0, 0.5),
            Err(Error::ComplexResult { .. })
        ));
    }

    #[test]
    fn q_bracket_continuous_at_one() {
        // [x]_q = x + x(x-1)/2 (q-1) + O((q-1)^2), so the gap from x is
        // bounded by ~ x^2 |q-1| here.
        for x in [-20.0f64, -7.5, 0.0, 3.25, 20.0] {
            for q in [1.0 - 1e-8, 1.0 + 1e-8] {
                let bound = 1e-8 * x * x + 1e-9;
                assert!((q_bracket(q, x).unwrap() - x).abs() <= bound);
            }
        }
    }

    #[test]
    fn casimir_values() {
        let ac = AlgebraSpec::arik_coon(2.0).unwrap();
        assert_eq!(ac.casimir_value(0.0, 0.0).unwrap(), 0.0);
        assert!(close(ac.casimir_value(1.0, 0.0).unwrap(), 0.5));
        let td = AlgebraSpec::tamm_dancoff(0.5).unwrap();
        assert!(close(td.casimir_value(2.0, 0.0).unwrap(), 4.0));
    }

    #[test]
    fn casimir_roundtrip() {
        let a = AlgebraSpec::arik_coon(0.75).unwrap();
        let (nu0, lambda0) = (1.5, 2.25);
        let c = a.casimir_value(nu0, lambda0).unwrap();
        let back = a.eval_f(nu0).unwrap() - real_pow(a.q(), nu0).unwrap() * c;
        assert!((back - lambda0).abs() <= 1e-12 * lambda0.abs());
    }

    #[test]
    fn recurrence_downward_inverts() {
        let a = AlgebraSpec::arik_coon(0.5).unwrap();
        for n in -10..=10 {
            let rec = a.eval_f_recurrence(n).unwrap();
            let closed = a.eval_f(n as f64).unwrap();
            assert!(close(rec, closed), "n = {n}: {rec} vs {closed}");
        }
    }

    #[test]
    fn divergence_guard_trips() {
        let a = AlgebraSpec::arik_coon(10.0).unwrap();
        assert!(matches!(
            a.eval_f_recurrence(400),
            Err(Error::DivergenceGuard { .. })
        ));
    }

    #[test]
    fn user_defined_without_closed_form_is_lattice_only() {
        let g: RealFn = Arc::new(|x: f64| Ok(1.0 + x * x));
        let a = AlgebraSpec::user_defined("poly", 1.0, g, None).unwrap();
        assert!(matches!(
            a.eval_f(0.5),
            Err(Error::NonLatticeArgument { .. })
        ));
        // F(1) = G(0) = 1, F(2) = F(1) + G(1) = 3.
        assert_eq!(a.eval_f(2.0).unwrap(), 3.0);
    }

    #[test]
    fn user_defined_closed_form_is_validated() {
        let g: RealFn = Arc::new(|_| Ok(1.0));
        let bad_f: RealFn = Arc::new(|x: f64| Ok(x * x));
        assert!(AlgebraSpec::user_defined("bad", 1.0, g.clone(), Some(bad_f)).is_err());
        let good_f: RealFn = Arc::new(|x: f64| Ok(x));
        assert!(AlgebraSpec::user_defined("boson", 1.0, g, Some(good_f)).is_ok());
    }

    #[test]
    fn exact_closed_forms() {
        let a = AlgebraSpec::arik_coon_rat(rat(1, 2)).unwrap();
        assert_eq!(a.eval_f_exact(3).unwrap(), rat(7, 4));
        let td = AlgebraSpec::tamm_dancoff_rat(rat(1, 2)).unwrap();
        assert_eq!(td.eval_f_exact(4).unwrap(), rat(1, 2));
        assert_eq!(td.eval_f_exact(-1).unwrap(), rat(-4, 1));
    }

    #[test]
    fn negative_q_off_lattice_is_complex() {
        let a = AlgebraSpec::arik_coon(-1.5).unwrap();
        assert!(matches!(a.eval_f(0.5), Err(Error::ComplexResult { .. })));
        assert!(a.eval_f(3.0).is_ok());
        assert!(a.requires_integer_lattice());
    }
}
