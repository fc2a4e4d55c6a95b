//! Independent exact-arithmetic cross-checks.
//!
//! Everything here is deliberately naive: the structure function is
//! produced by iterating the defining recurrence (never the closed
//! forms), and [`brute_force_class`] re-derives the class by listing
//! exact zeros and testing the four class conditions literally. These
//! routes back every closed form and the scanning classifier in tests.

use alloc::string::ToString;
use alloc::vec::Vec;

use num_traits::{Signed, Zero};

use crate::algebra::AlgebraSpec;
use crate::classify::UnirrepClass;
use crate::error::Error;
use crate::rational::{rat_diverged, rat_int, rat_pow_i, Rat};

/// Reduced arbitrary-precision rational (numerator/denominator pair).
pub type RationalScalar = Rat;

/// Exact `F(n)` by iterating `F(n+1) = q F(n) + G(n)` upward from
/// `F(0) = 0`, or the inverted recurrence `F(n) = (F(n+1) - G(n))/q`
/// downward. Requires rational `q` and rational `G` on the lattice.
pub fn f_by_recurrence_exact(algebra: &AlgebraSpec, n: i64) -> Result<Rat, Error> {
    let q = algebra.exact_q()?;
    if q.is_zero() {
        return Err(Error::NonRationalStep("q must be nonzero".to_string()));
    }
    let mut f = Rat::zero();
    if n >= 0 {
        for k in 0..n {
            f = &q * f + algebra.eval_g_exact(k)?;
            if rat_diverged(&f) {
                return Err(Error::DivergenceGuard { magnitude: f64::INFINITY });
            }
        }
    } else {
        for k in (n..0).rev() {
            f = (f - algebra.eval_g_exact(k)?) / &q;
            if rat_diverged(&f) {
                return Err(Error::DivergenceGuard { magnitude: f64::INFINITY });
            }
        }
    }
    Ok(f)
}

/// Exact `λₙ = F(ν₀+n) - q^{ν₀+n} c` with `F` from the recurrence.
pub fn lambda_exact(algebra: &AlgebraSpec, nu0: i64, c: &Rat, n: i64) -> Result<Rat, Error> {
    let x = nu0 + n;
    let f = f_by_recurrence_exact(algebra, x)?;
    let qp = rat_pow_i(&algebra.exact_q()?, x)?;
    Ok(f - qp * c)
}

/// Naive exact classification over `|n| <= bound`: compute every λₙ,
/// list the exact zeros, and test the four class conditions literally.
/// Used in tests to cross-validate the scanning classifier.
pub fn brute_force_class(
    algebra: &AlgebraSpec,
    nu0: i64,
    c: &Rat,
    bound: i64,
) -> Result<UnirrepClass<Rat>, Error> {
    let lam: Vec<Rat> = (-bound..=bound)
        .map(|n| lambda_exact(algebra, nu0, c, n))
        .collect::<Result<_, _>>()?;
    let at = |n: i64| -> &Rat { &lam[(n + bound) as usize] };

    let zeros: Vec<i64> = (-bound..=bound).filter(|&n| at(n).is_zero()).collect();

    // Finite-dimensional condition: the block of zeros enclosing the
    // reference (nearest zero at or below 0, nearest at or above 1) with
    // strict positivity in between.
    let d = zeros.iter().copied().filter(|&z| z <= 0).max();
    let u = zeros.iter().copied().filter(|&z| z >= 1).min();
    if let (Some(n1), Some(n2)) = (d, u) {
        if (n1 + 1..n2).all(|m| at(m).is_positive()) {
            let p = (n2 - n1 - 1) as u32;
            return Ok(UnirrepClass::Fd {
                nu0_shifted: rat_int(nu0 + n1),
                c: c.clone(),
                p,
                dim: p + 1,
            });
        }
    }
    // One-sided classes anchored at a zero with strict positivity on the
    // retained side, wherever the zero sits relative to the reference.
    let bfb_n1 = zeros
        .iter()
        .copied()
        .filter(|&z| z < bound && (z + 1..=bound).all(|m| at(m).is_positive()))
        .max();
    if let Some(n1) = bfb_n1 {
        return Ok(UnirrepClass::Bfb { nu0_shifted: rat_int(nu0 + n1), c: c.clone() });
    }
    let bfa_n2 = zeros
        .iter()
        .copied()
        .filter(|&z| z > -bound && (-bound..z).all(|m| at(m).is_positive()))
        .min();
    if let Some(n2) = bfa_n2 {
        return Ok(UnirrepClass::Bfa { nu0_shifted: rat_int(nu0 + n2 - 1), c: c.clone() });
    }
    if (-bound..=bound).all(|m| at(m).is_positive()) {
        return Ok(UnirrepClass::Ub {
            nu0_mod1: rat_int(0),
            c: c.clone(),
            verified_window: (-bound, bound),
            analytic: false,
        });
    }
    // None of the four conditions holds: find the negative lambda that is
    // reached from n = 0 before any zero.
    for dir in [-1i64, 1] {
        let mut n = if dir < 0 { 0 } else { 1 };
        while n.abs() <= bound {
            let v = at(n);
            if v.is_zero() {
                break;
            }
            if v.is_negative() {
                return Ok(UnirrepClass::NonUnitary { witness_n: n, lambda_value: v.clone() });
            }
            n += dir;
        }
    }
    unreachable!("some condition must hold on a finite window")
}

/// Exact FD existence constraint:
/// `c = q^{-ν̃₀} F(ν̃₀) = q^{-(ν̃₀+p+1)} F(ν̃₀+p+1)`, with `F` from the
/// recurrence.
pub fn fd_casimir_consistency_exact(
    algebra: &AlgebraSpec,
    nu0_shifted: i64,
    p: u32,
) -> Result<(Rat, Rat), Error> {
    let q = algebra.exact_q()?;
    let top = nu0_shifted + p as i64 + 1;
    let c_low = rat_pow_i(&q, -nu0_shifted)? * f_by_recurrence_exact(algebra, nu0_shifted)?;
    let c_high = rat_pow_i(&q, -top)? * f_by_recurrence_exact(algebra, top)?;
    Ok((c_low, c_high))
}

/// Exact diagonals of `a†a` and `aa†` for an FD rep with the given
/// `λ̃₁..λ̃ₚ` subdiagonal squares. The ladder matrices are bidiagonal,
/// so every product term pairs an entry with itself and the squared
/// entries `λ` enter the Gram diagonals directly:
/// `(a†a)_{jj} = λ̃ⱼ` (with `λ̃₀ = 0`) and `(aa†)_{jj} = λ̃ⱼ₊₁`
/// (with `λ̃ₚ₊₁ = 0`).
pub fn fd_gram_diagonals_exact(subdiag_sq: &[Rat]) -> (Vec<Rat>, Vec<Rat>) {
    let dim = subdiag_sq.len() + 1;
    let mut adag_a = Vec::with_capacity(dim);
    let mut a_adag = Vec::with_capacity(dim);
    for j in 0..dim {
        adag_a.push(if j == 0 { Rat::zero() } else { subdiag_sq[j - 1].clone() });
        a_adag.push(if j == dim - 1 { Rat::zero() } else { subdiag_sq[j].clone() });
    }
    (adag_a, a_adag)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    #[test]
    fn recurrence_examples() {
        let a = AlgebraSpec::arik_coon_rat(rat(1, 2)).unwrap();
        assert_eq!(f_by_recurrence_exact(&a, 3).unwrap(), rat(7, 4));
        assert_eq!(f_by_recurrence_exact(&a, 0).unwrap(), rat_int(0));
        let f = AlgebraSpec::arik_coon_rat(rat(-1, 1)).unwrap();
        assert_eq!(f_by_recurrence_exact(&f, 4).unwrap(), rat_int(0));
    }

    #[test]
    fn lambda_exact_examples() {
        let f = AlgebraSpec::arik_coon_rat(rat(-1, 1)).unwrap();
        assert_eq!(lambda_exact(&f, 0, &rat_int(0), 2).unwrap(), rat_int(0));
        let a = AlgebraSpec::arik_coon_rat(rat(2, 1)).unwrap();
        assert_eq!(lambda_exact(&a, 0, &rat_int(0), 5).unwrap(), rat_int(31));
        assert_eq!(lambda_exact(&f, 0, &rat(-1, 4), 2).unwrap(), rat(1, 4));
    }

    #[test]
    fn brute_force_table_anchors() {
        let bfb = AlgebraSpec::arik_coon_rat(rat_int(2)).unwrap();
        assert_eq!(brute_force_class(&bfb, 0, &rat_int(0), 50).unwrap().tag(), "BFB");
        let bfa = AlgebraSpec::arik_coon_rat(rat_int(-2)).unwrap();
        assert_eq!(brute_force_class(&bfa, 0, &rat(-1, 2), 50).unwrap().tag(), "BFA");
        let fd = AlgebraSpec::arik_coon_rat(rat_int(-1)).unwrap();
        match brute_force_class(&fd, 0, &rat_int(0), 50).unwrap() {
            UnirrepClass::Fd { p, .. } => assert_eq!(p, 1),
            other => panic!("expected FD, got {other:?}"),
        }
        assert_eq!(brute_force_class(&fd, 0, &rat(-1, 4), 50).unwrap().tag(), "UB");
    }

    #[test]
    fn fd_gram_diagonals() {
        // Fermion: lambda tilde = (0, 1, 0), subdiagonal square (1).
        let (adag_a, a_adag) = fd_gram_diagonals_exact(&[rat_int(1)]);
        assert_eq!(adag_a, alloc::vec![rat_int(0), rat_int(1)]);
        assert_eq!(a_adag, alloc::vec![rat_int(1), rat_int(0)]);
    }

    #[test]
    fn fd_casimir_exact_pairs() {
        let a = AlgebraSpec::arik_coon_rat(rat_int(-1)).unwrap();
        assert_eq!(
            fd_casimir_consistency_exact(&a, 0, 1).unwrap(),
            (rat_int(0), rat_int(0))
        );
        assert_eq!(
            fd_casimir_consistency_exact(&a, 1, 1).unwrap(),
            (rat_int(-1), rat_int(-1))
        );
    }
}
