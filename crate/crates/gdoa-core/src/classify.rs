//! Classification of candidate representations into the four unirrep
//! classes.
//!
//! A candidate is fixed by `(ν₀, c)`. The eigenvalues of `a†a` on the
//! ladder are `λₙ = F(ν₀+n) - q^{ν₀+n} c` (and `μₙ = λₙ₊₁` for `aa†`).
//! Unitarity forces every retained `λₙ` to be nonnegative; the first
//! zero reached from `n = 0` in each direction decides the class:
//!
//! - zero below only: bounded from below (BFB)
//! - zero above only: bounded from above (BFA)
//! - zeros on both sides: finite-dimensional (FD), dimension `p + 1`
//! - no zero, all positive: unbounded (UB)
//! - a negative `λ` before any zero: not unitary (witness reported)

use alloc::collections::BTreeMap;
use alloc::string::ToString;
use alloc::vec::Vec;

use num_traits::{Float, Signed, Zero};

use crate::algebra::{lattice_point, real_pow, AlgebraSpec, BuiltinFamily};
use crate::error::Error;
use crate::rational::{rat_int, rat_pow_i, Rat};

/// Default zero-detection tolerance in float mode.
pub const DEFAULT_ZERO_TOL: f64 = 1e-10;
/// Default scan half-width.
pub const DEFAULT_HALF_WIDTH: i64 = 64;

/// Lowest-weight datum: the Casimir eigenvalue `c`, or `λ₀ ≥ 0` directly.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Weight {
    Casimir(f64),
    Lambda0(f64),
}

/// A candidate representation.
#[derive(Debug, Clone, PartialEq)]
pub struct RepParams {
    nu0: f64,
    weight: Weight,
    ub_override: bool,
}

impl RepParams {
    /// Validates the lowest-weight data against the algebra: `λ₀ ≥ 0`
    /// when given directly, and integer `ν₀` whenever a negative `q` or
    /// geometric base restricts powers to the lattice.
    pub fn new(algebra: &AlgebraSpec, nu0: f64, weight: Weight) -> Result<Self, Error> {
        Self::build(algebra, nu0, weight, false)
    }

    /// Same as [`RepParams::new`] but with the documented override for
    /// the ν₀-independent UB families at negative `q`: non-integer `ν₀`
    /// is accepted for the Arik-Coon algebra when `c = (q-1)^{-1}`
    /// makes the `q^{ν₀+n}` coefficient cancel out of `λₙ`.
    pub fn with_ub_override(algebra: &AlgebraSpec, nu0: f64, weight: Weight) -> Result<Self, Error> {
        Self::build(algebra, nu0, weight, true)
    }

    fn build(
        algebra: &AlgebraSpec,
        nu0: f64,
        weight: Weight,
        ub_override: bool,
    ) -> Result<Self, Error> {
        if let Weight::Lambda0(l0) = weight {
            if l0 < 0.0 {
                return Err(Error::InvalidParameter(
                    "lambda0 must be nonnegative".to_string(),
                ));
            }
        }
        if algebra.requires_integer_lattice() && lattice_point(nu0).is_none() {
            let allowed = ub_override && algebra.family() == Some(BuiltinFamily::ArikCoon);
            if !allowed {
                return Err(Error::InvalidParameter(
                    "nu0 is restricted to integers when q (or the geometric base) is negative"
                        .to_string(),
                ));
            }
        }
        Ok(RepParams { nu0, weight, ub_override })
    }

    pub fn nu0(&self) -> f64 {
        self.nu0
    }

    pub fn weight(&self) -> Weight {
        self.weight
    }

    pub fn ub_override(&self) -> bool {
        self.ub_override
    }

    /// The Casimir eigenvalue, converting from `λ₀` when necessary via
    /// `c = q^{-ν₀}(F(ν₀) - λ₀)`.
    pub fn casimir(&self, algebra: &AlgebraSpec) -> Result<f64, Error> {
        match self.weight {
            Weight::Casimir(c) => Ok(c),
            Weight::Lambda0(l0) => algebra.casimir_value(self.nu0, l0),
        }
    }
}

/// The λₙ sequence over an integer window, with zero annotations.
#[derive(Debug, Clone, PartialEq)]
pub struct LambdaWindow {
    pub nu0: f64,
    pub n_min: i64,
    pub n_max: i64,
    pub values: BTreeMap<i64, f64>,
    pub zero_tol: f64,
    pub zeros: Vec<i64>,
}

impl LambdaWindow {
    pub fn value(&self, n: i64) -> Option<f64> {
        self.values.get(&n).copied()
    }

    /// `μₙ = λₙ₊₁` (identity, not stored separately).
    pub fn mu(&self, n: i64) -> Option<f64> {
        self.value(n + 1)
    }
}

/// Classification outcome.
#[derive(Debug, Clone, PartialEq)]
pub enum UnirrepClass<S = f64> {
    /// Lowest weight exists; spectrum of `N` is `ν̃₀ + {0, 1, 2, ...}`.
    Bfb { nu0_shifted: S, c: S },
    /// Highest weight exists; spectrum is `ν̃₀ - {0, 1, 2, ...}`.
    Bfa { nu0_shifted: S, c: S },
    /// Finite-dimensional, dimension `p + 1`.
    Fd { nu0_shifted: S, c: S, p: u32, dim: u32 },
    /// Unbounded; all λₙ positive. `analytic` is set when the family's
    /// closed-form sign analysis certifies positivity beyond the window.
    Ub { nu0_mod1: S, c: S, verified_window: (i64, i64), analytic: bool },
    /// Rejected: a negative λ with no zero between it and `n = 0`.
    NonUnitary { witness_n: i64, lambda_value: S },
}

impl<S> UnirrepClass<S> {
    pub fn tag(&self) -> &'static str {
        match self {
            UnirrepClass::Bfb { .. } => "BFB",
            UnirrepClass::Bfa { .. } => "BFA",
            UnirrepClass::Fd { .. } => "FD",
            UnirrepClass::Ub { .. } => "UB",
            UnirrepClass::NonUnitary { .. } => "NonUnitary",
        }
    }
}

/// λₙ rewritten per family so that the two exponentially large terms of
/// `F(ν₀+n) - q^{ν₀+n} c` never cancel catastrophically:
///
/// - Arik-Coon (`q ≠ 1`): `λ = k q^x - (q-1)^{-1}` with `k = (q-1)^{-1} - c`;
///   when `k = 0` the power drops out entirely and `λ ≡ (1-q)^{-1}`, even
///   where `q^x` itself would be complex (the UB override path).
/// - Boson limit (`q = 1`, and Chaturvedi-Srinivasan at `g = 1`): `λ = x - c`.
/// - Chaturvedi-Srinivasan: `λ = k g^x - m`, `k = (g-1)^{-1}`, `m = c + k`.
/// - Tamm-Dancoff: `λ = q^{x-1} (x - qc)`.
/// - user-defined: the direct form.
///
/// The same factorizations drive the sign analysis in [`classify`]: the
/// zero/ambiguity bands apply to the well-conditioned factor, scaled by
/// its natural magnitude, so a tail that merely decays through the
/// absolute band (e.g. Tamm-Dancoff `λ̃ₙ = q^{n-1} n`) stays decisively
/// positive.
enum StableForm {
    AcConstant { value: f64 },
    AcPow { k: f64, inv: f64, q: f64 },
    Boson { c: f64 },
    Cs { k: f64, m: f64, g: f64 },
    Td { q: f64, qc: f64 },
    Generic { c: f64 },
}

enum SigCheck {
    Decided(Sig),
    Ambiguous(f64),
}

/// Sign of `base^x` for nonzero real base (lattice-restricted when
/// `base < 0`): true means negative.
fn pow_sign_negative(base: f64, x: f64) -> Result<bool, Error> {
    if base > 0.0 {
        Ok(false)
    } else {
        let k = lattice_point(x).ok_or(Error::NonLatticeArgument { x })?;
        Ok(k.rem_euclid(2) == 1)
    }
}

impl StableForm {
    fn new(algebra: &AlgebraSpec, c: f64) -> StableForm {
        match algebra.family() {
            Some(BuiltinFamily::ArikCoon) => {
                let q = algebra.q();
                if q == 1.0 {
                    StableForm::Boson { c }
                } else {
                    let inv = 1.0 / (q - 1.0);
                    let k = inv - c;
                    if k == 0.0 {
                        StableForm::AcConstant { value: -inv }
                    } else {
                        StableForm::AcPow { k, inv, q }
                    }
                }
            }
            Some(BuiltinFamily::ChaturvediSrinivasan) => {
                let g = algebra.geometric_base().unwrap_or(1.0);
                if g == 1.0 {
                    StableForm::Boson { c }
                } else {
                    let k = 1.0 / (g - 1.0);
                    StableForm::Cs { k, m: c + k, g }
                }
            }
            Some(BuiltinFamily::TammDancoff) => {
                let q = algebra.q();
                StableForm::Td { q, qc: q * c }
            }
            None => StableForm::Generic { c },
        }
    }

    fn value(&self, algebra: &AlgebraSpec, x: f64) -> Result<f64, Error> {
        Ok(match self {
            StableForm::AcConstant { value } => *value,
            StableForm::AcPow { k, inv, q } => k * real_pow(*q, x)? - inv,
            StableForm::Boson { c } => x - c,
            StableForm::Cs { k, m, g } => k * real_pow(*g, x)? - m,
            StableForm::Td { q, qc } => real_pow(*q, x - 1.0)? * (x - qc),
            StableForm::Generic { c } => {
                algebra.eval_f(x)? - real_pow(algebra.q(), x)? * c
            }
        })
    }

    fn sig(&self, algebra: &AlgebraSpec, x: f64, zero_tol: f64) -> Result<SigCheck, Error> {
        let banded = |d: f64, scale: f64| {
            let a = d.abs();
            if a <= zero_tol * scale {
                SigCheck::Decided(Sig::Zero)
            } else if a < 10.0 * zero_tol * scale {
                SigCheck::Ambiguous(a)
            } else if d < 0.0 {
                SigCheck::Decided(Sig::Neg)
            } else {
                SigCheck::Decided(Sig::Pos)
            }
        };
        let scale3 = |a: f64, b: f64| Float::max(1.0, Float::max(a, b));
        Ok(match self {
            StableForm::AcConstant { value } => {
                SigCheck::Decided(if *value < 0.0 { Sig::Neg } else { Sig::Pos })
            }
            StableForm::AcPow { k, inv, q } => {
                let t = k * real_pow(*q, x)?;
                banded(t - inv, scale3(t.abs(), inv.abs()))
            }
            StableForm::Boson { c } => banded(x - c, scale3(x.abs(), c.abs())),
            StableForm::Cs { k, m, g } => {
                if *m == 0.0 {
                    // lambda = g^x / (g - 1): nonzero, sign from the factors
                    let neg = (*k < 0.0) != pow_sign_negative(*g, x)?;
                    SigCheck::Decided(if neg { Sig::Neg } else { Sig::Pos })
                } else {
                    let t = k * real_pow(*g, x)?;
                    banded(t - m, scale3(t.abs(), m.abs()))
                }
            }
            StableForm::Td { q, qc } => {
                let flip = pow_sign_negative(*q, x - 1.0)?;
                match banded(x - qc, scale3(x.abs(), qc.abs())) {
                    SigCheck::Decided(Sig::Pos) if flip => SigCheck::Decided(Sig::Neg),
                    SigCheck::Decided(Sig::Neg) if flip => SigCheck::Decided(Sig::Pos),
                    other => other,
                }
            }
            StableForm::Generic { c } => {
                let v = algebra.eval_f(x)? - real_pow(algebra.q(), x)? * c;
                banded(v, 1.0)
            }
        })
    }
}

/// `λₙ = F(ν₀+n) - q^{ν₀+n} c`, evaluated through the family's stable
/// form (see [`StableForm`]).
pub fn lambda_value(algebra: &AlgebraSpec, nu0: f64, c: f64, n: i64) -> Result<f64, Error> {
    StableForm::new(algebra, c).value(algebra, nu0 + n as f64)
}

/// Exact rational λₙ via the closed-form structure function.
pub fn lambda_value_exact(
    algebra: &AlgebraSpec,
    nu0: i64,
    c: &Rat,
    n: i64,
) -> Result<Rat, Error> {
    let x = nu0 + n;
    let f = algebra.eval_f_exact(x)?;
    let qp = rat_pow_i(&algebra.exact_q()?, x)?;
    Ok(f - qp * c)
}

/// λₙ for every `n` in `[n_min, n_max]`, with the zero set computed at
/// `zero_tol`.
pub fn lambda_sequence(
    algebra: &AlgebraSpec,
    params: &RepParams,
    n_min: i64,
    n_max: i64,
    zero_tol: f64,
) -> Result<LambdaWindow, Error> {
    if n_min > n_max {
        return Err(Error::InvalidParameter("empty window".to_string()));
    }
    let c = params.casimir(algebra)?;
    let form = StableForm::new(algebra, c);
    let mut values = BTreeMap::new();
    let mut zeros = Vec::new();
    for n in n_min..=n_max {
        let x = params.nu0 + n as f64;
        let v = form.value(algebra, x)?;
        if matches!(form.sig(algebra, x, zero_tol)?, SigCheck::Decided(Sig::Zero)) {
            zeros.push(n);
        }
        values.insert(n, v);
    }
    Ok(LambdaWindow { nu0: params.nu0, n_min, n_max, values, zero_tol, zeros })
}

/// A negative λ reached before any zero, violating unitarity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Witness {
    pub n: i64,
    pub lambda: f64,
}

/// Both halves of the unitarity test: scanning away from `n = 0` in each
/// direction, a λ below `-zero_tol` occurring before any zero is a
/// witness against unitarity.
pub fn check_positivity(window: &LambdaWindow) -> Option<Witness> {
    let tol = window.zero_tol;
    for n in (window.n_min..=0).rev() {
        let v = window.value(n)?;
        if v.abs() <= tol {
            break;
        }
        if v < -tol {
            return Some(Witness { n, lambda: v });
        }
    }
    for n in 1..=window.n_max {
        let v = window.value(n)?;
        if v.abs() <= tol {
            break;
        }
        if v < -tol {
            return Some(Witness { n, lambda: v });
        }
    }
    None
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Sig {
    Zero,
    Pos,
    Neg,
}

enum Resolution {
    Fd { n1: i64, n2: i64 },
    Bfb { n1: i64 },
    Bfa { top: i64 },
    Ub,
    NonUnitary { witness: i64 },
}

/// Decides the class from the signs over the whole window. The
/// conditions are positionless (a class is anchored at a zero wherever
/// that zero sits relative to the reference), which is what makes the
/// result independent of which lattice point was taken as ν₀:
///
/// - FD: the zero pair enclosing the reference, strictly positive in
///   between;
/// - BFB: a zero with everything above it strictly positive;
/// - BFA: a zero with everything below it strictly positive;
///
/// The one-sided conditions require a nonempty verified tail: a zero
/// sitting exactly on the window edge certifies nothing about the side
/// beyond it (alternating 0, -1, 0, -1 sequences put a zero on the edge
/// and must still come out NonUnitary);
/// - UB: no zero, everything positive;
/// - otherwise NonUnitary, witnessed by the first negative reached from
///   `n = 0` with no zero on the way.
fn resolve(half_width: i64, sigs: &[Sig]) -> Resolution {
    let at = |n: i64| sigs[(n + half_width) as usize];
    let zeros: Vec<i64> = (-half_width..=half_width).filter(|&n| at(n) == Sig::Zero).collect();
    let d = zeros.iter().copied().filter(|&z| z <= 0).max();
    let u = zeros.iter().copied().filter(|&z| z >= 1).min();
    if let (Some(n1), Some(n2)) = (d, u) {
        if (n1 + 1..n2).all(|m| at(m) == Sig::Pos) {
            return Resolution::Fd { n1, n2 };
        }
    }
    let bfb = zeros
        .iter()
        .copied()
        .filter(|&z| z < half_width && (z + 1..=half_width).all(|m| at(m) == Sig::Pos))
        .max();
    if let Some(n1) = bfb {
        return Resolution::Bfb { n1 };
    }
    let bfa = zeros
        .iter()
        .copied()
        .filter(|&z| z > -half_width && (-half_width..z).all(|m| at(m) == Sig::Pos))
        .min();
    if let Some(n2) = bfa {
        return Resolution::Bfa { top: n2 - 1 };
    }
    if (-half_width..=half_width).all(|m| at(m) == Sig::Pos) {
        return Resolution::Ub;
    }
    for dir in [-1i64, 1] {
        let mut n = if dir < 0 { 0 } else { 1 };
        while n.abs() <= half_width {
            match at(n) {
                Sig::Zero => break,
                Sig::Neg => return Resolution::NonUnitary { witness: n },
                Sig::Pos => {}
            }
            n += dir;
        }
    }
    unreachable!("window with no matching condition and no reachable witness")
}

fn collect_sigs<E: FnMut(i64) -> Result<Sig, Error>>(
    half_width: i64,
    mut sig: E,
) -> Result<Vec<Sig>, Error> {
    (-half_width..=half_width).map(|n| sig(n)).collect()
}

/// Float-mode classification.
///
/// Any |λₙ| in the open band `(zero_tol, 10 zero_tol)` encountered during
/// the scans raises [`Error::AmbiguousZero`] rather than guessing.
pub fn classify(
    algebra: &AlgebraSpec,
    params: &RepParams,
    half_width: i64,
    zero_tol: f64,
) -> Result<UnirrepClass<f64>, Error> {
    if half_width < 1 {
        return Err(Error::InvalidParameter("window_half_width must be >= 1".to_string()));
    }
    let c = params.casimir(algebra)?;
    let nu0 = params.nu0;
    let form = StableForm::new(algebra, c);
    let mut sig_at = |n: i64| -> Result<Sig, Error> {
        match form.sig(algebra, nu0 + n as f64, zero_tol)? {
            SigCheck::Decided(s) => Ok(s),
            SigCheck::Ambiguous(v) => Err(Error::AmbiguousZero { n, value: v }),
        }
    };
    let sigs = collect_sigs(half_width, &mut sig_at)?;
    Ok(match resolve(half_width, &sigs) {
        Resolution::Fd { n1, n2 } => {
            let p = (n2 - n1 - 1) as u32;
            UnirrepClass::Fd { nu0_shifted: nu0 + n1 as f64, c, p, dim: p + 1 }
        }
        Resolution::Bfb { n1 } => UnirrepClass::Bfb { nu0_shifted: nu0 + n1 as f64, c },
        Resolution::Bfa { top } => UnirrepClass::Bfa { nu0_shifted: nu0 + top as f64, c },
        Resolution::Ub => UnirrepClass::Ub {
            nu0_mod1: mod1(nu0),
            c,
            verified_window: (-half_width, half_width),
            analytic: ub_certificate(algebra, c),
        },
        Resolution::NonUnitary { witness } => UnirrepClass::NonUnitary {
            witness_n: witness,
            lambda_value: form.value(algebra, nu0 + witness as f64)?,
        },
    })
}

/// Exact-mode classification: rational `q` and `c`, integer `ν₀`, exact
/// zero detection. Built-in families only.
pub fn classify_exact(
    algebra: &AlgebraSpec,
    nu0: i64,
    c: &Rat,
    half_width: i64,
) -> Result<UnirrepClass<Rat>, Error> {
    if half_width < 1 {
        return Err(Error::InvalidParameter("window_half_width must be >= 1".to_string()));
    }
    let mut cache: BTreeMap<i64, Rat> = BTreeMap::new();
    let mut sig_at = |n: i64| -> Result<Sig, Error> {
        let v = match cache.get(&n) {
            Some(v) => v.clone(),
            None => {
                let v = lambda_value_exact(algebra, nu0, c, n)?;
                cache.insert(n, v.clone());
                v
            }
        };
        Ok(if v.is_zero() {
            Sig::Zero
        } else if v.is_negative() {
            Sig::Neg
        } else {
            Sig::Pos
        })
    };
    let sigs = collect_sigs(half_width, &mut sig_at)?;
    Ok(match resolve(half_width, &sigs) {
        Resolution::Fd { n1, n2 } => {
            let p = (n2 - n1 - 1) as u32;
            UnirrepClass::Fd { nu0_shifted: rat_int(nu0 + n1), c: c.clone(), p, dim: p + 1 }
        }
        Resolution::Bfb { n1 } => {
            UnirrepClass::Bfb { nu0_shifted: rat_int(nu0 + n1), c: c.clone() }
        }
        Resolution::Bfa { top } => {
            UnirrepClass::Bfa { nu0_shifted: rat_int(nu0 + top), c: c.clone() }
        }
        Resolution::Ub => UnirrepClass::Ub {
            nu0_mod1: rat_int(0),
            c: c.clone(),
            verified_window: (-half_width, half_width),
            analytic: ub_certificate(algebra, crate::rational::rat_to_f64(c)),
        },
        Resolution::NonUnitary { witness } => UnirrepClass::NonUnitary {
            witness_n: witness,
            lambda_value: lambda_value_exact(algebra, nu0, c, witness)?,
        },
    })
}

fn mod1(x: f64) -> f64 {
    let m = x - Float::floor(x);
    if m >= 1.0 {
        0.0
    } else {
        m
    }
}

/// Closed-form positivity analysis for the shipped families: does the
/// whole λ sequence stay positive for every `n ∈ Z`, not just inside a
/// scan window?
///
/// - Arik-Coon: `λₙ = k q^{ν₀+n} - (q-1)^{-1}` with `k = (q-1)^{-1} - c`;
///   positivity for all n reduces to a sign condition on `k` (`0 < q < 1`),
///   to `-1 < c < 0` at `q = -1`, and to exact cancellation `k = 0`
///   for the remaining negative `q`.
/// - Chaturvedi-Srinivasan: `λₙ = [ν₀+n]_g - c`; positivity reduces to
///   `c ≤ -(g-1)^{-1}` for `g > 1` and to `c < 0` at `g = -1`.
/// - Tamm-Dancoff: `λₙ → -∞` on one side for every `q > 0`; never UB.
pub fn ub_certificate(algebra: &AlgebraSpec, c: f64) -> bool {
    let near = |a: f64, b: f64| (a - b).abs() <= 1e-12 * (1.0 + a.abs() + b.abs());
    match algebra.family() {
        Some(BuiltinFamily::ArikCoon) => {
            let q = algebra.q();
            if q == 1.0 || q > 1.0 {
                false
            } else if q > 0.0 {
                // 0 < q < 1
                let inv = 1.0 / (q - 1.0);
                c <= inv || near(c, inv)
            } else if q == -1.0 {
                -1.0 < c && c < 0.0
            } else {
                near(c, 1.0 / (q - 1.0))
            }
        }
        Some(BuiltinFamily::ChaturvediSrinivasan) => {
            let g = algebra.geometric_base().unwrap_or(1.0);
            if g > 1.0 {
                let inv = -1.0 / (g - 1.0);
                c <= inv || near(c, inv)
            } else if g == -1.0 {
                c < 0.0
            } else {
                false
            }
        }
        Some(BuiltinFamily::TammDancoff) | None => false,
    }
}

/// Re-bases the λ map on the shifted origin: `λ̃ₙ = λₙ₊ₛ` with `s = n₁`
/// (BFB/FD) or `s = n₂ - 1` (BFA).
pub fn shift_origin(
    window: &LambdaWindow,
    class: &UnirrepClass<f64>,
) -> Result<(f64, BTreeMap<i64, f64>), Error> {
    let nu0_shifted = match class {
        UnirrepClass::Bfb { nu0_shifted, .. }
        | UnirrepClass::Bfa { nu0_shifted, .. }
        | UnirrepClass::Fd { nu0_shifted, .. } => *nu0_shifted,
        other => {
            return Err(Error::WrongClass { expected: "BFB, BFA, or FD", got: other.tag() })
        }
    };
    let shift = Float::round(nu0_shifted - window.nu0) as i64;
    let shifted = window
        .values
        .iter()
        .filter_map(|(&n, &v)| {
            let m = n.checked_sub(shift)?;
            Some((m, v))
        })
        .collect();
    Ok((nu0_shifted, shifted))
}

/// The FD existence constraint: both Casimir evaluations
/// `q^{-ν̃₀} F(ν̃₀)` and `q^{-(ν̃₀+p+1)} F(ν̃₀+p+1)` must agree.
pub fn fd_casimir_consistency(
    algebra: &AlgebraSpec,
    nu0_shifted: f64,
    p: u32,
    tol: f64,
) -> Result<(f64, f64), Error> {
    let top = nu0_shifted + (p + 1) as f64;
    let c_low = real_pow(algebra.q(), -nu0_shifted)? * algebra.eval_f(nu0_shifted)?;
    let c_high = real_pow(algebra.q(), -top)? * algebra.eval_f(top)?;
    if (c_low - c_high).abs() > tol * (1.0 + c_low.abs().max(c_high.abs())) {
        return Err(Error::InconsistentCasimir { c_low, c_high });
    }
    Ok((c_low, c_high))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;
    use proptest::prelude::*;

    fn ac(q: f64) -> AlgebraSpec {
        AlgebraSpec::arik_coon(q).unwrap()
    }

    fn params(a: &AlgebraSpec, nu0: f64, c: f64) -> RepParams {
        RepParams::new(a, nu0, Weight::Casimir(c)).unwrap()
    }

    fn close(a: f64, b: f64) -> bool {
        (a - b).abs() <= 1e-12 * (1.0 + a.abs().max(b.abs()))
    }

    #[test]
    fn boson_lambda_sequence() {
        let a = ac(1.0);
        let w = lambda_sequence(&a, &params(&a, 0.0, 0.0), 0, 5, 1e-10).unwrap();
        for n in 0..=5 {
            assert!(close(w.value(n).unwrap(), n as f64));
        }
        assert_eq!(w.zeros, alloc::vec![0]);
    }

    #[test]
    fn fermion_lambda_alternates() {
        let a = ac(-1.0);
        let w = lambda_sequence(&a, &params(&a, 0.0, 0.0), 0, 3, 1e-10).unwrap();
        let got: Vec<f64> = (0..=3).map(|n| w.value(n).unwrap()).collect();
        assert_eq!(got, alloc::vec![0.0, 1.0, 0.0, 1.0]);
    }

    #[test]
    fn tamm_dancoff_lambda_values() {
        let a = AlgebraSpec::tamm_dancoff(0.5).unwrap();
        let w = lambda_sequence(&a, &params(&a, 0.0, 0.0), 0, 3, 1e-10).unwrap();
        let got: Vec<f64> = (0..=3).map(|n| w.value(n).unwrap()).collect();
        assert!(got.iter().zip([0.0, 1.0, 1.0, 0.75]).all(|(a, b)| close(*a, b)));
    }

    #[test]
    fn mu_is_lambda_shifted() {
        let a = ac(0.5);
        let w = lambda_sequence(&a, &params(&a, 0.0, -3.0), -10, 10, 1e-10).unwrap();
        for n in -10..10 {
            assert_eq!(w.mu(n), w.value(n + 1));
        }
    }

    #[test]
    fn positivity_passes_fock_case() {
        let a = ac(1.0);
        let w = lambda_sequence(&a, &params(&a, 0.0, 0.0), -5, 5, 1e-10).unwrap();
        assert!(check_positivity(&w).is_none());
    }

    #[test]
    fn positivity_witness_below() {
        // Direct instantiation: lambda_{-1} < 0 with no zero at 0 or -1.
        let mut values = BTreeMap::new();
        values.insert(-1, -0.5);
        values.insert(0, 0.3);
        values.insert(1, 1.0);
        let w = LambdaWindow {
            nu0: 0.0,
            n_min: -1,
            n_max: 1,
            values,
            zero_tol: 1e-10,
            zeros: Vec::new(),
        };
        let witness = check_positivity(&w).unwrap();
        assert_eq!(witness.n, -1);
    }

    #[test]
    fn positivity_witness_from_divergent_tail() {
        // c > (q-1)^{-1} makes the q^{nu0+n} coefficient negative, so
        // lambda_n -> -infinity as n -> -infinity with no zero on the way.
        let a = ac(0.5);
        let p = params(&a, 0.3, -1.0);
        let w = lambda_sequence(&a, &p, -30, 30, 1e-10).unwrap();
        let witness = check_positivity(&w).expect("expected a negative lambda");
        assert!(witness.lambda < 0.0);
        assert!(witness.n < 0);
    }

    #[test]
    fn classify_fock_bfb() {
        let a = ac(2.0);
        let got = classify(&a, &params(&a, 0.0, 0.0), 64, 1e-10).unwrap();
        match got {
            UnirrepClass::Bfb { nu0_shifted, c } => {
                assert_eq!(nu0_shifted, 0.0);
                assert_eq!(c, 0.0);
            }
            other => panic!("expected BFB, got {other:?}"),
        }
    }

    #[test]
    fn classify_fermion_fd() {
        let a = ac(-1.0);
        let got = classify(&a, &params(&a, 0.0, 0.0), 64, 1e-10).unwrap();
        match got {
            UnirrepClass::Fd { p, dim, .. } => {
                assert_eq!(p, 1);
                assert_eq!(dim, 2);
            }
            other => panic!("expected FD, got {other:?}"),
        }
    }

    #[test]
    fn classify_fermionic_ub() {
        let a = ac(-1.0);
        let got = classify(&a, &params(&a, 0.0, -0.25), 64, 1e-10).unwrap();
        match got {
            UnirrepClass::Ub { analytic, c, .. } => {
                assert!(analytic);
                assert_eq!(c, -0.25);
            }
            other => panic!("expected UB, got {other:?}"),
        }
        // even n -> -c = 0.25, odd n -> c + 1 = 0.75
        let w = lambda_sequence(&a, &params(&a, 0.0, -0.25), 0, 5, 1e-10).unwrap();
        assert!(close(w.value(0).unwrap(), 0.25));
        assert!(close(w.value(1).unwrap(), 0.75));
        assert!(close(w.value(2).unwrap(), 0.25));
    }

    #[test]
    fn classify_bfa() {
        let a = ac(-2.0);
        let got = classify(&a, &params(&a, 0.0, -0.5), 64, 1e-10).unwrap();
        match got {
            UnirrepClass::Bfa { nu0_shifted, .. } => assert_eq!(nu0_shifted, 0.0),
            other => panic!("expected BFA, got {other:?}"),
        }
    }

    #[test]
    fn classify_cs_ub() {
        let a = AlgebraSpec::chaturvedi_srinivasan(2.0).unwrap();
        let got = classify(&a, &params(&a, 0.0, -2.0), 64, 1e-10).unwrap();
        match got {
            UnirrepClass::Ub { analytic, .. } => assert!(analytic),
            other => panic!("expected UB, got {other:?}"),
        }
    }

    #[test]
    fn ambiguous_zero_raises() {
        // lambda_0 = 5e-10 with zero_tol 1e-10 sits in the open band.
        let a = ac(1.0);
        let p = params(&a, 0.0, -5e-10);
        assert!(matches!(
            classify(&a, &p, 8, 1e-10),
            Err(Error::AmbiguousZero { n: 0, .. })
        ));
    }

    #[test]
    fn nonunitary_carries_witness() {
        let a = ac(0.5);
        let p = params(&a, 0.3, -1.0);
        match classify(&a, &p, 64, 1e-10).unwrap() {
            UnirrepClass::NonUnitary { witness_n, lambda_value } => {
                assert!(lambda_value < -1e-10);
                assert!(witness_n < 0);
            }
            other => panic!("expected NonUnitary, got {other:?}"),
        }
    }

    #[test]
    fn shift_origin_relabels() {
        // BFB starting three steps below the reference vector.
        let a = ac(2.0);
        let c = a.casimir_value(-3.0, 0.0).unwrap();
        let p = params(&a, 0.0, c);
        let w = lambda_sequence(&a, &p, -10, 10, 1e-10).unwrap();
        let class = classify(&a, &p, 32, 1e-10).unwrap();
        let (nu0_shifted, shifted) = shift_origin(&w, &class).unwrap();
        assert_eq!(nu0_shifted, -3.0);
        assert!(shifted[&0].abs() <= 1e-10);
        assert!(close(shifted[&1], w.value(-2).unwrap()));
    }

    #[test]
    fn shift_origin_rejects_ub() {
        let a = ac(-1.0);
        let p = params(&a, 0.0, -0.25);
        let w = lambda_sequence(&a, &p, -5, 5, 1e-10).unwrap();
        let class = classify(&a, &p, 16, 1e-10).unwrap();
        assert!(matches!(shift_origin(&w, &class), Err(Error::WrongClass { .. })));
    }

    #[test]
    fn fd_casimir_consistency_examples() {
        let a = ac(-1.0);
        let (lo, hi) = fd_casimir_consistency(&a, 0.0, 1, 1e-10).unwrap();
        assert_eq!((lo, hi), (0.0, 0.0));
        let (lo, hi) = fd_casimir_consistency(&a, 1.0, 1, 1e-10).unwrap();
        assert!(close(lo, -1.0) && close(hi, -1.0));
        let cs = AlgebraSpec::chaturvedi_srinivasan(-1.0).unwrap();
        let (lo, hi) = fd_casimir_consistency(&cs, 0.0, 1, 1e-10).unwrap();
        assert_eq!((lo, hi), (0.0, 0.0));
    }

    #[test]
    fn fd_casimir_inconsistency_detected() {
        let a = ac(2.0);
        assert!(matches!(
            fd_casimir_consistency(&a, 0.0, 1, 1e-10),
            Err(Error::InconsistentCasimir { .. })
        ));
    }

    #[test]
    fn negative_q_requires_integer_nu0() {
        let a = ac(-1.0);
        assert!(RepParams::new(&a, 0.5, Weight::Casimir(-0.5)).is_err());
        // The documented override admits it for the cancelling UB rows.
        let p = RepParams::with_ub_override(&a, 0.5, Weight::Casimir(-0.5)).unwrap();
        let got = classify(&a, &p, 32, 1e-10).unwrap();
        match got {
            UnirrepClass::Ub { .. } => {}
            other => panic!("expected UB, got {other:?}"),
        }
        let w = lambda_sequence(&a, &p, -5, 5, 1e-10).unwrap();
        for n in -5..=5 {
            assert!(close(w.value(n).unwrap(), 0.5));
        }
        // Without the cancellation the override still cannot evaluate.
        let p2 = RepParams::with_ub_override(&a, 0.5, Weight::Casimir(-0.3)).unwrap();
        assert!(matches!(
            classify(&a, &p2, 32, 1e-10),
            Err(Error::ComplexResult { .. })
        ));
    }

    #[test]
    fn lambda0_must_be_nonnegative() {
        let a = ac(2.0);
        assert!(RepParams::new(&a, 0.0, Weight::Lambda0(-0.1)).is_err());
    }

    #[test]
    fn lambda0_parametrization_converts() {
        let a = ac(2.0);
        let p = RepParams::new(&a, 1.0, Weight::Lambda0(0.0)).unwrap();
        assert!(close(p.casimir(&a).unwrap(), 0.5));
    }

    #[test]
    fn classify_exact_matches_float() {
        let a = AlgebraSpec::arik_coon_rat(rat(-1, 1)).unwrap();
        let got = classify_exact(&a, 0, &rat(0, 1), 32).unwrap();
        assert_eq!(got.tag(), "FD");
        let got = classify_exact(&a, 0, &rat(-1, 4), 32).unwrap();
        assert_eq!(got.tag(), "UB");
        let a2 = AlgebraSpec::arik_coon_rat(rat(-2, 1)).unwrap();
        let got = classify_exact(&a2, 0, &rat(-1, 2), 32).unwrap();
        assert_eq!(got.tag(), "BFA");
    }

    proptest! {
        // Shift equivalence: classify(nu0 + k, c) matches classify(nu0, c)
        // up to the origin shift.
        #[test]
        fn shift_equivalence(qn in -12i64..=12, k in -3i64..=3, nu0 in -3i64..=3, cn in -12i64..=12) {
            prop_assume!(qn != 0);
            let q = qn as f64 / 4.0;
            let c = cn as f64 / 4.0;
            let a = ac(q);
            let p1 = params(&a, nu0 as f64, c);
            let p2 = params(&a, (nu0 + k) as f64, c);
            let r1 = classify(&a, &p1, 32, 1e-10);
            let r2 = classify(&a, &p2, 32, 1e-10);
            if let (Ok(c1), Ok(c2)) = (r1, r2) {
                prop_assert_eq!(c1.tag(), c2.tag());
                match (&c1, &c2) {
                    (UnirrepClass::Bfb { nu0_shifted: a1, .. }, UnirrepClass::Bfb { nu0_shifted: a2, .. })
                    | (UnirrepClass::Bfa { nu0_shifted: a1, .. }, UnirrepClass::Bfa { nu0_shifted: a2, .. }) => {
                        prop_assert!((a1 - a2).abs() < 1e-9);
                    }
                    (
                        UnirrepClass::Fd { nu0_shifted: a1, p: p1, .. },
                        UnirrepClass::Fd { nu0_shifted: a2, p: p2, .. },
                    ) => {
                        // at q = -1 the FD blocks tile the lattice with
                        // period p + 1, so origins from different
                        // references agree only up to that period
                        prop_assert_eq!(p1, p2);
                        let per = (*p1 + 1) as f64;
                        let steps = (a1 - a2) / per;
                        prop_assert!((steps - Float::round(steps)).abs() < 1e-9);
                    }
                    (UnirrepClass::Ub { nu0_mod1: m1, .. }, UnirrepClass::Ub { nu0_mod1: m2, .. }) => {
                        prop_assert!((m1 - m2).abs() < 1e-9);
                    }
                    _ => {}
                }
            }
        }
    }
}
