//! The published expansion of `F_Z`, transcribed term by term as nested
//! polynomials in `Z`.

use rug::{Integer, Rational};

use super::ParamForm;

/// A polynomial in `Z` with integer coefficients, lowest degree first.
#[derive(Clone, Debug)]
struct ZPoly(Vec<Integer>);

impl ZPoly {
    /// `a·Z + b`.
    fn lin(a: i64, b: i64) -> Self {
        ZPoly(vec![Integer::from(b), Integer::from(a)])
    }

    /// Multiplies by `k·Z`.
    fn times_z(mut self, k: i64) -> Self {
        for c in self.0.iter_mut() {
            *c *= k;
        }
        self.0.insert(0, Integer::new());
        self
    }

    fn plus(mut self, n: i64) -> Self {
        self.0[0] += n;
        self
    }

    fn scale(mut self, k: i64) -> Self {
        for c in self.0.iter_mut() {
            *c *= k;
        }
        self
    }

    /// Multiplies by `Z^e`.
    fn shift(mut self, e: usize) -> Self {
        self.0.splice(0..0, std::iter::repeat_n(Integer::new(), e));
        self
    }
}

/// `F_Z` as printed: `Z⁻⁶ Σ_k p_k(Z) w₁^{12−k} w₂^k`.
pub fn printed_f_z() -> ParamForm<Rational> {
    let p = [
        ZPoly::lin(432, -95)
            .times_z(432)
            .plus(-437)
            .times_z(16)
            .plus(57)
            .shift(3)
            .scale(4096000000000000),
        ZPoly::lin(216, 5)
            .times_z(864)
            .plus(-47)
            .times_z(132)
            .plus(-1)
            .shift(2)
            .scale(-204800000000000),
        ZPoly::lin(4104, 245)
            .times_z(864)
            .plus(-3443)
            .times_z(8)
            .plus(-11)
            .shift(2)
            .scale(-112640000000000),
        ZPoly::lin(3456, 833)
            .times_z(216)
            .plus(-4961)
            .times_z(32)
            .plus(-121)
            .shift(2)
            .scale(-28160000000000),
        ZPoly::lin(20952, -1147)
            .times_z(864)
            .plus(-1331)
            .shift(2)
            .scale(-4224000000000),
        ZPoly::lin(131328, -18053)
            .times_z(432)
            .plus(-18287)
            .shift(2)
            .scale(-337920000000),
        ZPoly::lin(138240, -76183)
            .times_z(432)
            .plus(-140479)
            .times_z(48)
            .plus(1)
            .shift(1)
            .scale(-704000000),
        ZPoly::lin(3314304, 28501)
            .times_z(432)
            .plus(-11)
            .shift(1)
            .scale(211200000),
        ZPoly::lin(4202496, 89177)
            .times_z(432)
            .plus(-121)
            .shift(1)
            .scale(26400000),
        ZPoly::lin(138240, 11477)
            .times_z(13824)
            .plus(-1331)
            .shift(1)
            .scale(1760000),
        ZPoly::lin(6027264, -113).shift(1).scale(8553600),
        ZPoly::lin(84049920, -3077).times_z(69120).plus(-20),
        ZPoly::lin(172800, -11).times_z(1769472).plus(-11),
    ];
    let len = p.iter().map(|z| z.0.len()).max().unwrap_or(1);
    let coeffs = p
        .into_iter()
        .map(|z| {
            let mut c: Vec<Rational> = z.0.into_iter().map(Rational::from).collect();
            c.resize(len, Rational::new());
            c
        })
        .collect();
    ParamForm::new("F_Z", 6, coeffs)
        .expect("13 coefficient polynomials")
        .trimmed()
}

/// Indices `k` where the Laurent expansions of two forms differ.
pub fn mismatched_coefficients(a: &ParamForm<Rational>, b: &ParamForm<Rational>) -> Vec<usize> {
    if a.wdegree != b.wdegree {
        return (0..=a.wdegree.max(b.wdegree)).collect();
    }
    (0..=a.wdegree).filter(|&k| a.laurent(k) != b.laurent(k)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn transcription_keeps_the_constant_polynomial_shape() {
        let f = printed_f_z();
        assert_eq!(f.wdegree, 12);
        assert_eq!(f.laurent(12)[0], (-6, Rational::from(-11)));
    }
}
