//! The resolvent quintic and an independent root finder for it.

use rug::Float;

use crate::error::{Error, Result};
use crate::param::check_admissible;
use crate::scalar::{BigComplex, FieldScalar, Scalar};

/// `R_Z(v) = Σ b_j v^j = v⁵ − 40Zv² − 5Zv − Z`.
#[derive(Clone, Debug)]
pub struct ResolventQuintic {
    pub z: BigComplex,
    /// `b₀ … b₅`, ascending.
    pub coeffs: [BigComplex; 6],
}

/// Builds `R_Z`, rejecting `Z` within `guard` of `0` or `1/1728`.
pub fn resolvent(z: &BigComplex, guard: f64) -> Result<ResolventQuintic> {
    check_admissible(z, guard)?;
    let prec = z.prec();
    let zero = BigComplex::zero(prec);
    Ok(ResolventQuintic {
        z: z.clone(),
        coeffs: [
            z.neg_ref(),
            z.mul_i64(-5),
            z.mul_i64(-40),
            zero.clone(),
            zero,
            BigComplex::one(prec),
        ],
    })
}

impl ResolventQuintic {
    pub fn eval(&self, v: &BigComplex) -> BigComplex {
        self.coeffs
            .iter()
            .rev()
            .fold(BigComplex::zero(v.prec()), |acc, c| acc.mul_ref(v).add_ref(c))
    }

    /// `|R_Z(v)|`.
    pub fn residual(&self, v: &BigComplex) -> f64 {
        self.eval(v).abs_f64()
    }
}

const MAX_SWEEPS: usize = 1000;

/// The five roots of `R_Z` by Weierstrass (Durand–Kerner) simultaneous
/// iteration.
pub fn direct_roots(r: &ResolventQuintic) -> Result<Vec<BigComplex>> {
    let prec = r.z.prec();
    // all roots lie within the Cauchy bound 1 + max|b_j|
    let bound = 1.0 + r.coeffs[..5].iter().map(BigComplex::abs_f64).fold(0.0, f64::max);
    let seed = BigComplex::polar(
        &Float::with_val(prec, 0.5 * bound.powf(0.2) + 0.3),
        &Float::with_val(prec, 0.4),
    );
    let mut xs: Vec<BigComplex> = (0..5u32).map(|k| seed.pow_u32(k + 1)).collect();
    let stop = Float::with_val(prec, 1u32) >> (prec - 8);
    let stop = stop.to_f64();
    for sweep in 0..MAX_SWEEPS {
        let mut largest = 0.0f64;
        for i in 0..5 {
            let mut denom = BigComplex::one(prec);
            for (j, xj) in xs.iter().enumerate() {
                if j != i {
                    denom = denom.mul_ref(&xs[i].sub_ref(xj));
                }
            }
            if denom.is_exact_zero() {
                return Err(Error::Degenerate("coincident Weierstrass iterates".into()));
            }
            let step = r.eval(&xs[i]).div_ref(&denom);
            largest = largest.max(step.abs_f64() / xs[i].abs_f64().max(1.0));
            xs[i] = xs[i].sub_ref(&step);
        }
        if largest <= stop && sweep > 2 {
            return Ok(xs);
        }
    }
    let residual = xs.iter().map(|x| r.residual(x)).fold(0.0, f64::max);
    Err(Error::RootsNotConverged {
        iterations: MAX_SWEEPS,
        residual,
        best: Vec::new(),
    })
}

/// Hausdorff distance between two finite sets of complex numbers.
pub fn hausdorff(a: &[BigComplex], b: &[BigComplex]) -> f64 {
    let one_way = |p: &[BigComplex], q: &[BigComplex]| {
        p.iter()
            .map(|x| q.iter().map(|y| x.dist_f64(y)).fold(f64::INFINITY, f64::min))
            .fold(0.0, f64::max)
    };
    one_way(a, b).max(one_way(b, a))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::param::DEFAULT_GUARD;
    use crate::scalar::PrecisionContext;

    fn prec() -> u32 {
        PrecisionContext::default().bits()
    }

    fn c(re: f64, im: f64) -> BigComplex {
        BigComplex::from_f64(re, im, prec())
    }

    #[test]
    fn coefficients_at_one() {
        let r = resolvent(&c(1.0, 0.0), DEFAULT_GUARD).unwrap();
        let want = [-1, -5, -40, 0, 0, 1];
        for (got, w) in r.coeffs.iter().zip(want) {
            assert!(got.dist_f64(&BigComplex::from_i64(w, prec())) == 0.0);
        }
    }

    #[test]
    fn guarded_parameters_are_rejected() {
        assert!(matches!(
            resolvent(&c(0.0, 0.0), DEFAULT_GUARD),
            Err(Error::DegenerateParameter { .. })
        ));
        assert!(resolvent(&c(1.0 / 1728.0, 1e-9), DEFAULT_GUARD).is_err());
    }

    #[test]
    fn direct_roots_at_one_have_tiny_residual_and_zero_sum() {
        let r = resolvent(&c(1.0, 0.0), DEFAULT_GUARD).unwrap();
        let roots = direct_roots(&r).unwrap();
        assert_eq!(roots.len(), 5);
        let mut sum = BigComplex::zero(prec());
        for v in &roots {
            assert!(r.residual(v) < 1e-40);
            sum = sum.add_ref(v);
        }
        assert!(sum.abs_f64() < 1e-40);
    }

    #[test]
    fn conjugate_parameter_gives_conjugate_roots() {
        let z = c(0.3, -1.7);
        let a = direct_roots(&resolvent(&z, DEFAULT_GUARD).unwrap()).unwrap();
        let b = direct_roots(&resolvent(&z.conj(), DEFAULT_GUARD).unwrap()).unwrap();
        let conj: Vec<BigComplex> = a.iter().map(BigComplex::conj).collect();
        assert!(hausdorff(&conj, &b) < 1e-40);
    }

    #[test]
    fn agrees_with_the_aberth_solver() {
        for (re, im) in [(0.01, 0.0), (-3.0, 4.0), (90.0, -20.0)] {
            let r = resolvent(&c(re, im), DEFAULT_GUARD).unwrap();
            let dk = direct_roots(&r).unwrap();
            let desc: Vec<BigComplex> = r.coeffs.iter().rev().cloned().collect();
            let ab = crate::binform::polynomial_roots(&desc, prec()).unwrap();
            assert!(hausdorff(&dk, &ab) < 1e-40);
        }
    }
}
