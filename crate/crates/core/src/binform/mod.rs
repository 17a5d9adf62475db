//! Homogeneous binary forms and the projective-line objects built on them.
//!
//! A [`BinaryForm`] of degree `d` stores `c_0 … c_d` for
//! `Σ c_k x^{d-k} y^k`. The algebra (products, linear substitution, partial
//! derivatives, the cross operator, Jacobians) is generic over
//! [`Scalar`]; the numerical side (evaluation at a [`ProjPoint`], root finding,
//! applying a [`PlaneMap`]) works on [`BigComplex`] coefficients.

mod roots;

use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use rug::Float;

pub use roots::{newton_polish, polynomial_roots, roots};

use crate::error::{Error, Result};
use crate::scalar::{BigComplex, FieldScalar, Scalar, ToBig};

#[derive(Clone, Debug, PartialEq)]
pub struct BinaryForm<S> {
    coeffs: Vec<S>,
}

impl<S: Scalar> BinaryForm<S> {
    /// Builds a form from `c_0 … c_d`. Panics on an empty vector.
    pub fn new(coeffs: Vec<S>) -> Self {
        assert!(!coeffs.is_empty(), "a binary form needs at least one coefficient");
        BinaryForm { coeffs }
    }

    pub fn constant(c: S) -> Self {
        BinaryForm { coeffs: vec![c] }
    }

    /// The zero form of degree `degree`, with scalars "like" `like`.
    pub fn zero(degree: usize, like: &S) -> Self {
        BinaryForm {
            coeffs: vec![like.zero_like(); degree + 1],
        }
    }

    /// The linear form `a·x + b·y`.
    pub fn linear(a: S, b: S) -> Self {
        BinaryForm { coeffs: vec![a, b] }
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[S] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<S> {
        self.coeffs
    }

    /// Coefficient of `x^{d-k} y^k`.
    pub fn coeff(&self, k: usize) -> &S {
        &self.coeffs[k]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Scalar::is_exact_zero)
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> BinaryForm<T> {
        BinaryForm {
            coeffs: self.coeffs.iter().map(f).collect(),
        }
    }

    /// Product by coefficient convolution; degrees add.
    pub fn multiply(&self, other: &Self) -> Self {
        let zero = self.coeffs[0].zero_like();
        let mut out = vec![zero; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_exact_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if b.is_exact_zero() {
                    continue;
                }
                out[i + j] = out[i + j].add_ref(&a.mul_ref(b));
            }
        }
        BinaryForm { coeffs: out }
    }

    pub fn scale(&self, s: &S) -> Self {
        self.map(|c| c.mul_ref(s))
    }

    pub fn scale_i64(&self, k: i64) -> Self {
        self.map(|c| c.mul_i64(k))
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut result = BinaryForm::constant(self.coeffs[0].one_like());
        for _ in 0..n {
            result = result.multiply(self);
        }
        result
    }

    fn zip_with(&self, other: &Self, f: impl Fn(&S, &S) -> S) -> Self {
        assert_eq!(
            self.degree(),
            other.degree(),
            "forms of different degree cannot be added"
        );
        BinaryForm {
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| f(a, b)).collect(),
        }
    }

    /// Partial derivative in the first variable.
    pub fn d_x(&self) -> Self {
        let d = self.degree();
        if d == 0 {
            return BinaryForm::constant(self.coeffs[0].zero_like());
        }
        BinaryForm {
            coeffs: (0..d).map(|k| self.coeffs[k].mul_i64((d - k) as i64)).collect(),
        }
    }

    /// Partial derivative in the second variable.
    pub fn d_y(&self) -> Self {
        let d = self.degree();
        if d == 0 {
            return BinaryForm::constant(self.coeffs[0].zero_like());
        }
        BinaryForm {
            coeffs: (1..=d).map(|k| self.coeffs[k].mul_i64(k as i64)).collect(),
        }
    }

    /// The equivariant `(−∂_y f, ∂_x f)`.
    pub fn cross(&self) -> Result<PlaneMap<S>> {
        if self.degree() == 0 {
            return Err(Error::Degenerate(
                "the cross operator needs a form of degree at least 1".into(),
            ));
        }
        PlaneMap::new(-self.d_y(), self.d_x())
    }

    /// Homogeneous Horner evaluation; exact for exact scalars.
    pub fn eval(&self, x: &S, y: &S) -> S {
        let mut acc = self.coeffs[0].clone();
        let mut ypow = y.one_like();
        for c in &self.coeffs[1..] {
            ypow = ypow.mul_ref(y);
            acc = acc.mul_ref(x).add_ref(&c.mul_ref(&ypow));
        }
        acc
    }

    /// The form `f(M·w)` for the substitution `x = a w₁ + b w₂, y = c w₁ + d w₂`.
    pub fn compose_linear(&self, m: &LinearAction<S>) -> Self {
        let l1 = BinaryForm::linear(m.a.clone(), m.b.clone());
        let l2 = BinaryForm::linear(m.c.clone(), m.d.clone());
        let d = self.degree();
        // Horner in the first variable: ((c0 L1 + c1 L2) L1 + c2 L2²) L1 + …
        let mut acc = BinaryForm::constant(self.coeffs[0].clone());
        let mut l2_pow = BinaryForm::constant(self.coeffs[0].one_like());
        for k in 1..=d {
            l2_pow = l2_pow.multiply(&l2);
            acc = acc.multiply(&l1) + l2_pow.scale(&self.coeffs[k]);
        }
        acc
    }
}

impl<S: ToBig> BinaryForm<S> {
    pub fn to_big(&self, prec: u32) -> BinaryForm<BigComplex> {
        BinaryForm {
            coeffs: self.coeffs.iter().map(|c| c.to_big(prec)).collect(),
        }
    }
}

impl<S: Scalar> Add for BinaryForm<S> {
    type Output = BinaryForm<S>;
    fn add(self, rhs: Self) -> Self {
        self.zip_with(&rhs, S::add_ref)
    }
}

impl<S: Scalar> Add for &BinaryForm<S> {
    type Output = BinaryForm<S>;
    fn add(self, rhs: Self) -> BinaryForm<S> {
        self.zip_with(rhs, S::add_ref)
    }
}

impl<S: Scalar> Sub for BinaryForm<S> {
    type Output = BinaryForm<S>;
    fn sub(self, rhs: Self) -> Self {
        self.zip_with(&rhs, S::sub_ref)
    }
}

impl<S: Scalar> Sub for &BinaryForm<S> {
    type Output = BinaryForm<S>;
    fn sub(self, rhs: Self) -> BinaryForm<S> {
        self.zip_with(rhs, S::sub_ref)
    }
}

impl<S: Scalar> Mul for &BinaryForm<S> {
    type Output = BinaryForm<S>;
    fn mul(self, rhs: Self) -> BinaryForm<S> {
        self.multiply(rhs)
    }
}

impl<S: Scalar> Mul for BinaryForm<S> {
    type Output = BinaryForm<S>;
    fn mul(self, rhs: Self) -> BinaryForm<S> {
        self.multiply(&rhs)
    }
}

impl<S: Scalar> Neg for BinaryForm<S> {
    type Output = BinaryForm<S>;
    fn neg(self) -> Self {
        self.map(S::neg_ref)
    }
}

impl BinaryForm<BigComplex> {
    pub fn prec(&self) -> u32 {
        self.coeffs.iter().map(BigComplex::prec).max().unwrap_or(64)
    }

    /// Evaluates at `p`, dehomogenising in the coordinate of larger modulus.
    pub fn eval_at(&self, p: &ProjPoint) -> BigComplex {
        let d = self.degree() as u32;
        if p.w1_dominant() {
            // x^d · Σ c_k (y/x)^k, with x = w1
            let t = p.w2.div_ref(&p.w1);
            let mut acc = self.coeffs[d as usize].clone();
            for c in self.coeffs[..d as usize].iter().rev() {
                acc = acc.mul_ref(&t).add_ref(c);
            }
            acc.mul_ref(&p.w1.pow_u32(d))
        } else {
            let t = p.w1.div_ref(&p.w2);
            let mut acc = self.coeffs[0].clone();
            for c in &self.coeffs[1..] {
                acc = acc.mul_ref(&t).add_ref(c);
            }
            acc.mul_ref(&p.w2.pow_u32(d))
        }
    }

    /// Largest coefficient modulus.
    pub fn norm(&self) -> Float {
        let prec = self.prec();
        self.coeffs
            .iter()
            .map(BigComplex::abs)
            .fold(Float::new(prec), |m, a| if a > m { a } else { m })
    }

    pub fn norm_f64(&self) -> f64 {
        self.norm().to_f64()
    }

    /// Largest coefficient difference, relative to the larger of the two norms.
    pub fn relative_distance(&self, other: &Self) -> f64 {
        let diff = (self - other).norm_f64();
        let scale = self.norm_f64().max(other.norm_f64());
        if scale == 0.0 {
            diff
        } else {
            diff / scale
        }
    }

    pub fn with_prec(&self, prec: u32) -> Self {
        self.map(|c| c.with_prec(prec))
    }

    /// Divides every coefficient by the largest-modulus one.
    pub fn normalized(&self) -> Self {
        let pivot = self
            .coeffs
            .iter()
            .max_by(|a, b| a.abs().partial_cmp(&b.abs()).unwrap())
            .cloned()
            .unwrap();
        if pivot.is_exact_zero() {
            return self.clone();
        }
        self.map(|c| c.div_ref(&pivot))
    }

    /// Monic-free reconstruction `lead · Π (w2_r·x − w1_r·y)` from projective roots.
    pub fn from_roots(roots: &[ProjPoint], lead: &BigComplex) -> Self {
        let mut acc = BinaryForm::constant(lead.clone());
        for r in roots {
            acc = acc.multiply(&BinaryForm::linear(r.w2.clone(), r.w1.neg_ref()));
        }
        acc
    }

    pub fn to_c64(&self) -> BinaryForm<Complex64> {
        self.map(BigComplex::to_c64)
    }
}

impl BinaryForm<Complex64> {
    pub fn eval_c64(&self, x: Complex64, y: Complex64) -> Complex64 {
        let d = self.degree() as i32;
        if x.norm_sqr() >= y.norm_sqr() {
            let t = y / x;
            let mut acc = self.coeffs[d as usize];
            for c in self.coeffs[..d as usize].iter().rev() {
                acc = acc * t + c;
            }
            acc * x.powi(d)
        } else {
            let t = x / y;
            let mut acc = self.coeffs[0];
            for c in &self.coeffs[1..] {
                acc = acc * t + c;
            }
            acc * y.powi(d)
        }
    }
}

/// A 2×2 matrix acting by `x = a w₁ + b w₂`, `y = c w₁ + d w₂`.
#[derive(Clone, Debug, PartialEq)]
pub struct LinearAction<S> {
    pub a: S,
    pub b: S,
    pub c: S,
    pub d: S,
}

impl<S: Scalar> LinearAction<S> {
    pub fn new(a: S, b: S, c: S, d: S) -> Self {
        LinearAction { a, b, c, d }
    }

    pub fn identity(like: &S) -> Self {
        LinearAction::new(like.one_like(), like.zero_like(), like.zero_like(), like.one_like())
    }

    pub fn det(&self) -> S {
        self.a.mul_ref(&self.d).sub_ref(&self.b.mul_ref(&self.c))
    }

    /// Matrix product `self · rhs` (apply `rhs` first).
    pub fn compose(&self, rhs: &Self) -> Self {
        LinearAction::new(
            self.a.mul_ref(&rhs.a).add_ref(&self.b.mul_ref(&rhs.c)),
            self.a.mul_ref(&rhs.b).add_ref(&self.b.mul_ref(&rhs.d)),
            self.c.mul_ref(&rhs.a).add_ref(&self.d.mul_ref(&rhs.c)),
            self.c.mul_ref(&rhs.b).add_ref(&self.d.mul_ref(&rhs.d)),
        )
    }

    pub fn transpose(&self) -> Self {
        LinearAction::new(self.a.clone(), self.c.clone(), self.b.clone(), self.d.clone())
    }

    /// Adjugate, `det · M⁻¹`.
    pub fn adjugate(&self) -> Self {
        LinearAction::new(self.d.clone(), self.b.neg_ref(), self.c.neg_ref(), self.a.clone())
    }

    pub fn scale(&self, s: &S) -> Self {
        LinearAction::new(
            self.a.mul_ref(s),
            self.b.mul_ref(s),
            self.c.mul_ref(s),
            self.d.mul_ref(s),
        )
    }

    /// Applies the matrix to a column vector.
    pub fn apply_vec(&self, w1: &S, w2: &S) -> (S, S) {
        (
            self.a.mul_ref(w1).add_ref(&self.b.mul_ref(w2)),
            self.c.mul_ref(w1).add_ref(&self.d.mul_ref(w2)),
        )
    }

    /// Applies the matrix to each column of a plane map: `M · (f, g)`.
    pub fn apply_map(&self, m: &PlaneMap<S>) -> PlaneMap<S> {
        PlaneMap {
            first: &m.first.scale(&self.a) + &m.second.scale(&self.b),
            second: &m.first.scale(&self.c) + &m.second.scale(&self.d),
        }
    }

    /// The same action viewed as the degree-1 map `w ↦ M·w`.
    pub fn as_plane_map(&self) -> PlaneMap<S> {
        PlaneMap {
            first: BinaryForm::linear(self.a.clone(), self.b.clone()),
            second: BinaryForm::linear(self.c.clone(), self.d.clone()),
        }
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> LinearAction<T> {
        LinearAction::new(f(&self.a), f(&self.b), f(&self.c), f(&self.d))
    }
}

impl<S: FieldScalar> LinearAction<S> {
    pub fn inverse(&self) -> Result<Self> {
        let det = self.det();
        if det.is_exact_zero() {
            return Err(Error::Degenerate("singular linear action".into()));
        }
        let adj = self.adjugate();
        Ok(adj.map(|e| e.div_ref(&det)))
    }
}

impl LinearAction<BigComplex> {
    pub fn apply(&self, p: &ProjPoint) -> Result<ProjPoint> {
        let (u, v) = self.apply_vec(&p.w1, &p.w2);
        ProjPoint::new(u, v)
    }

    /// Distance between projective classes: both matrices are scaled to
    /// determinant one and compared up to sign.
    pub fn projective_distance(&self, other: &Self) -> f64 {
        let (m, n) = (self.unimodular(), other.unimodular());
        let entries = |x: &Self| [x.a.clone(), x.b.clone(), x.c.clone(), x.d.clone()];
        let (e, f) = (entries(&m), entries(&n));
        let plus = e.iter().zip(&f).map(|(x, y)| x.dist_f64(y)).fold(0.0, f64::max);
        let minus = e
            .iter()
            .zip(&f)
            .map(|(x, y)| x.add_ref(y).abs_f64())
            .fold(0.0, f64::max);
        plus.min(minus)
    }

    /// Scales the matrix to determinant one.
    pub fn unimodular(&self) -> Self {
        let s = self.det().sqrt().inv();
        self.scale(&s)
    }
}

/// A pair of equal-degree forms, read as a self-map of the projective line.
#[derive(Clone, Debug, PartialEq)]
pub struct PlaneMap<S> {
    pub first: BinaryForm<S>,
    pub second: BinaryForm<S>,
}

impl<S: Scalar> PlaneMap<S> {
    pub fn new(first: BinaryForm<S>, second: BinaryForm<S>) -> Result<Self> {
        if first.degree() != second.degree() {
            return Err(Error::InvalidArgument(format!(
                "plane map components have degrees {} and {}",
                first.degree(),
                second.degree()
            )));
        }
        Ok(PlaneMap { first, second })
    }

    pub fn degree(&self) -> usize {
        self.first.degree()
    }

    /// `det [[∂ₓf, ∂ᵧf], [∂ₓg, ∂ᵧg]]`, a form of degree `2d − 2`.
    pub fn jacobian_form(&self) -> BinaryForm<S> {
        let (f, g) = (&self.first, &self.second);
        &f.d_x() * &g.d_y() - &f.d_y() * &g.d_x()
    }

    /// Multiplies both components by the form `h`.
    pub fn times_form(&self, h: &BinaryForm<S>) -> Self {
        PlaneMap {
            first: self.first.multiply(h),
            second: self.second.multiply(h),
        }
    }

    pub fn scale(&self, s: &S) -> Self {
        PlaneMap {
            first: self.first.scale(s),
            second: self.second.scale(s),
        }
    }

    pub fn compose_linear(&self, m: &LinearAction<S>) -> Self {
        PlaneMap {
            first: self.first.compose_linear(m),
            second: self.second.compose_linear(m),
        }
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T + Copy) -> PlaneMap<T> {
        PlaneMap {
            first: self.first.map(f),
            second: self.second.map(f),
        }
    }
}

impl<S: Scalar> Add for &PlaneMap<S> {
    type Output = PlaneMap<S>;
    fn add(self, rhs: Self) -> PlaneMap<S> {
        PlaneMap {
            first: &self.first + &rhs.first,
            second: &self.second + &rhs.second,
        }
    }
}

impl<S: ToBig + Scalar> PlaneMap<S> {
    pub fn to_big(&self, prec: u32) -> PlaneMap<BigComplex> {
        PlaneMap {
            first: self.first.to_big(prec),
            second: self.second.to_big(prec),
        }
    }
}

impl PlaneMap<BigComplex> {
    /// Image of `p`; fails when both components vanish there.
    pub fn apply(&self, p: &ProjPoint) -> Result<ProjPoint> {
        let u = self.first.eval_at(p);
        let v = self.second.eval_at(p);
        let scale = self.first.norm_f64().max(self.second.norm_f64());
        let tiny = scale * 2f64.powi(-(p.prec() as i32) + 8);
        if u.abs_f64() <= tiny && v.abs_f64() <= tiny {
            return Err(Error::Degenerate(
                "both map components vanish: point is a common root".into(),
            ));
        }
        ProjPoint::new(u, v)
    }

    /// Applies the map `n` times.
    pub fn iterate(&self, p: &ProjPoint, n: usize) -> Result<ProjPoint> {
        let mut q = p.clone();
        for _ in 0..n {
            q = self.apply(&q)?;
        }
        Ok(q)
    }

    /// Resultant of the two components, scaled by `‖f‖^d ‖g‖^d`.
    ///
    /// Small values mean the components nearly share a root.
    pub fn scaled_resultant(&self) -> f64 {
        let f = self.first.normalized();
        let g = self.second.normalized();
        let d = self.degree();
        let n = 2 * d;
        if d == 0 {
            return 1.0;
        }
        let like = f.coeffs()[0].clone();
        let mut rows: Vec<Vec<BigComplex>> = Vec::with_capacity(n);
        for (form, count) in [(&f, d), (&g, d)] {
            for shift in 0..count {
                let mut row = vec![like.zero_like(); n];
                for (k, c) in form.coeffs().iter().enumerate() {
                    row[shift + k] = c.clone();
                }
                rows.push(row);
            }
        }
        let det = determinant(rows);
        det.abs_f64()
    }

    pub fn to_c64(&self) -> PlaneMap<Complex64> {
        PlaneMap {
            first: self.first.to_c64(),
            second: self.second.to_c64(),
        }
    }

    pub fn with_prec(&self, prec: u32) -> Self {
        PlaneMap {
            first: self.first.with_prec(prec),
            second: self.second.with_prec(prec),
        }
    }
}

impl PlaneMap<Complex64> {
    /// Image of a point in `f64`, normalised so the larger coordinate is 1.
    pub fn apply_c64(&self, p: (Complex64, Complex64)) -> (Complex64, Complex64) {
        let u = self.first.eval_c64(p.0, p.1);
        let v = self.second.eval_c64(p.0, p.1);
        if u.norm_sqr() >= v.norm_sqr() {
            (Complex64::new(1.0, 0.0), v / u)
        } else {
            (u / v, Complex64::new(1.0, 0.0))
        }
    }
}

/// Determinant by Gaussian elimination with partial pivoting.
pub(crate) fn determinant(mut rows: Vec<Vec<BigComplex>>) -> BigComplex {
    let n = rows.len();
    let mut det = rows[0][0].one_like();
    for col in 0..n {
        let pivot = (col..n)
            .max_by(|&i, &j| rows[i][col].abs().partial_cmp(&rows[j][col].abs()).unwrap())
            .unwrap();
        if rows[pivot][col].is_exact_zero() {
            return det.zero_like();
        }
        if pivot != col {
            rows.swap(pivot, col);
            det = det.neg_ref();
        }
        let p = rows[col][col].clone();
        det = det.mul_ref(&p);
        for r in col + 1..n {
            let factor = rows[r][col].div_ref(&p);
            if factor.is_exact_zero() {
                continue;
            }
            for k in col..n {
                let v = rows[col][k].mul_ref(&factor);
                rows[r][k] = rows[r][k].sub_ref(&v);
            }
        }
    }
    det
}

/// A point of the projective line, stored in the chart where its larger
/// coordinate is exactly one.
#[derive(Clone, Debug, PartialEq)]
pub struct ProjPoint {
    w1: BigComplex,
    w2: BigComplex,
}

impl ProjPoint {
    pub fn new(w1: BigComplex, w2: BigComplex) -> Result<Self> {
        if w1.is_exact_zero() && w2.is_exact_zero() {
            return Err(Error::Degenerate("(0, 0) is not a projective point".into()));
        }
        if !w1.is_finite() || !w2.is_finite() {
            return Err(Error::Degenerate("non-finite projective coordinates".into()));
        }
        if w1.abs() >= w2.abs() {
            let t = w2.div_ref(&w1);
            Ok(ProjPoint {
                w1: w1.one_like(),
                w2: t,
            })
        } else {
            let t = w1.div_ref(&w2);
            Ok(ProjPoint {
                w1: t,
                w2: w2.one_like(),
            })
        }
    }

    /// The point `(t, 1)`.
    pub fn from_affine(t: BigComplex) -> Self {
        let one = t.one_like();
        ProjPoint::new(t, one).expect("(t, 1) is never (0, 0)")
    }

    /// The point `(1, 0)`.
    pub fn infinity(prec: u32) -> Self {
        ProjPoint {
            w1: BigComplex::one(prec),
            w2: BigComplex::zero(prec),
        }
    }

    pub fn from_c64(w1: Complex64, w2: Complex64, prec: u32) -> Result<Self> {
        ProjPoint::new(BigComplex::from_c64(w1, prec), BigComplex::from_c64(w2, prec))
    }

    pub fn w1(&self) -> &BigComplex {
        &self.w1
    }

    pub fn w2(&self) -> &BigComplex {
        &self.w2
    }

    pub fn prec(&self) -> u32 {
        self.w1.prec().max(self.w2.prec())
    }

    pub fn with_prec(&self, prec: u32) -> Self {
        ProjPoint {
            w1: self.w1.with_prec(prec),
            w2: self.w2.with_prec(prec),
        }
    }

    pub(crate) fn w1_dominant(&self) -> bool {
        self.w1.abs() >= self.w2.abs()
    }

    /// `w1/w2`, or `None` at infinity.
    pub fn affine(&self) -> Option<BigComplex> {
        if self.w2.is_exact_zero() {
            None
        } else {
            Some(self.w1.div_ref(&self.w2))
        }
    }

    /// `|p₁q₂ − p₂q₁| / (‖p‖‖q‖)`.
    pub fn chordal_distance(&self, other: &ProjPoint) -> f64 {
        let cross = self.w1.mul_ref(&other.w2).sub_ref(&self.w2.mul_ref(&other.w1));
        let np = self.w1.norm_sqr() + self.w2.norm_sqr();
        let nq = other.w1.norm_sqr() + other.w2.norm_sqr();
        let denom = Float::with_val(self.prec(), np * nq).sqrt();
        Float::with_val(self.prec(), cross.abs() / denom).to_f64()
    }

    pub fn to_c64(&self) -> (Complex64, Complex64) {
        (self.w1.to_c64(), self.w2.to_c64())
    }

    /// Index and distance of the nearest point in `set`.
    pub fn nearest(&self, set: &[ProjPoint]) -> Option<(usize, f64)> {
        set.iter()
            .enumerate()
            .map(|(i, q)| (i, self.chordal_distance(q)))
            .min_by(|a, b| a.1.partial_cmp(&b.1).unwrap())
    }
}

/// Chordal distance between two `f64` projective points.
pub fn chordal_distance_c64(p: (Complex64, Complex64), q: (Complex64, Complex64)) -> f64 {
    let cross = (p.0 * q.1 - p.1 * q.0).norm();
    let np = (p.0.norm_sqr() + p.1.norm_sqr()).sqrt();
    let nq = (q.0.norm_sqr() + q.1.norm_sqr()).sqrt();
    cross / (np * nq)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::GaussRational;
    use proptest::prelude::*;
    use rug::Integer;

    const PREC: u32 = 232;

    fn int_form(c: &[i64]) -> BinaryForm<Integer> {
        BinaryForm::new(c.iter().map(|&v| Integer::from(v)).collect())
    }

    fn big(re: f64, im: f64) -> BigComplex {
        BigComplex::from_f64(re, im, PREC)
    }

    fn f_form() -> BinaryForm<Integer> {
        int_form(&[0, 1, 0, 0, 0, 0, -11, 0, 0, 0, 0, -1, 0])
    }

    #[test]
    fn eval_matches_known_values() {
        let f = f_form().to_big(PREC);
        assert!(f.eval_at(&ProjPoint::infinity(PREC)).abs_f64() == 0.0);
        let mut h = vec![0i64; 21];
        h[0] = 1;
        h[5] = 228;
        h[10] = 494;
        h[15] = -228;
        h[20] = 1;
        let h = int_form(&h).to_big(PREC);
        assert!(h.eval_at(&ProjPoint::infinity(PREC)).dist_f64(&big(1.0, 0.0)) < 1e-60);
    }

    #[test]
    fn multiply_by_constant_one_is_identity() {
        let f = f_form();
        let one = BinaryForm::constant(Integer::from(1));
        assert_eq!(f.multiply(&one), f);
    }

    #[test]
    fn cross_of_xy_is_minus_x_and_y() {
        let xy = int_form(&[0, 1, 0]);
        let m = xy.cross().unwrap();
        assert_eq!(m.first, int_form(&[-1, 0]));
        assert_eq!(m.second, int_form(&[0, 1]));
    }

    #[test]
    fn cross_of_constant_is_an_error() {
        assert!(int_form(&[5]).cross().is_err());
    }

    #[test]
    fn jacobian_of_linear_action_is_its_determinant() {
        let m = LinearAction::new(Integer::from(2), Integer::from(3), Integer::from(-1), Integer::from(4));
        let j = m.as_plane_map().jacobian_form();
        assert_eq!(j, BinaryForm::constant(Integer::from(11)));
        assert_eq!(m.det(), Integer::from(11));
    }

    #[test]
    fn compose_with_identity_is_identity() {
        let f = f_form();
        let id = LinearAction::identity(&Integer::from(0));
        assert_eq!(f.compose_linear(&id), f);
    }

    #[test]
    fn compose_linear_agrees_with_pointwise_substitution() {
        let f = int_form(&[3, -1, 4, 1, -5]);
        let m = LinearAction::new(Integer::from(2), Integer::from(-7), Integer::from(1), Integer::from(3));
        let g = f.compose_linear(&m);
        for (w1, w2) in [(1i64, 2i64), (-3, 5), (4, -1)] {
            let (x, y) = m.apply_vec(&Integer::from(w1), &Integer::from(w2));
            assert_eq!(g.eval(&Integer::from(w1), &Integer::from(w2)), f.eval(&x, &y));
        }
    }

    #[test]
    fn plane_map_rejects_mismatched_degrees() {
        assert!(PlaneMap::new(int_form(&[1, 0]), int_form(&[1, 0, 0])).is_err());
    }

    #[test]
    fn chordal_distance_basics() {
        let p = ProjPoint::new(big(0.3, -0.2), big(1.0, 0.5)).unwrap();
        assert_eq!(p.chordal_distance(&p), 0.0);
        let inf = ProjPoint::infinity(PREC);
        let zero = ProjPoint::from_affine(BigComplex::zero(PREC));
        assert!((inf.chordal_distance(&zero) - 1.0).abs() < 1e-15);
        let lam = big(-2.5, 7.0);
        let q = ProjPoint::new(p.w1().mul_ref(&lam), p.w2().mul_ref(&lam)).unwrap();
        assert!(p.chordal_distance(&q) < 1e-60);
    }

    #[test]
    fn zero_vector_is_not_a_point() {
        assert!(ProjPoint::new(BigComplex::zero(PREC), BigComplex::zero(PREC)).is_err());
    }

    #[test]
    fn identity_map_fixes_points() {
        let id = LinearAction::identity(&BigComplex::zero(PREC)).as_plane_map();
        let p = ProjPoint::new(big(0.7, 0.1), big(-0.2, 0.4)).unwrap();
        assert!(id.apply(&p).unwrap().chordal_distance(&p) < 1e-60);
    }

    #[test]
    fn common_root_is_reported_as_degenerate() {
        // x·(x + y) and x·(x − y) share the root (0, 1).
        let f = int_form(&[1, 1, 0]).to_big(PREC);
        let g = int_form(&[1, -1, 0]).to_big(PREC);
        let m = PlaneMap::new(f, g).unwrap();
        let p = ProjPoint::from_affine(BigComplex::zero(PREC));
        assert!(matches!(m.apply(&p), Err(Error::Degenerate(_))));
        assert!(m.scaled_resultant() < 1e-50);
    }

    #[test]
    fn inverse_round_trips_exactly() {
        let m = LinearAction::new(
            GaussRational::new(2, 1),
            GaussRational::new(0, -3),
            GaussRational::real(5),
            GaussRational::new(1, 1),
        );
        let inv = m.inverse().unwrap();
        assert_eq!(m.compose(&inv), LinearAction::identity(&GaussRational::default()));
    }

    fn arb_complex() -> impl Strategy<Value = (f64, f64)> {
        (-2.0f64..2.0, -2.0f64..2.0)
    }

    fn arb_form(max_deg: usize) -> impl Strategy<Value = Vec<(f64, f64)>> {
        prop::collection::vec(arb_complex(), 2..=max_deg + 1)
    }

    fn to_form(c: &[(f64, f64)]) -> BinaryForm<BigComplex> {
        BinaryForm::new(c.iter().map(|&(re, im)| big(re, im)).collect())
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn eval_is_homogeneous(c in arb_form(9), p in arb_complex(), lam in arb_complex()) {
            prop_assume!(lam.0.abs() + lam.1.abs() > 0.1);
            let f = to_form(&c);
            let x = big(p.0, p.1);
            let y = big(0.7, -0.3);
            let l = big(lam.0, lam.1);
            let lhs = f.eval(&x.mul_ref(&l), &y.mul_ref(&l));
            let rhs = f.eval(&x, &y).mul_ref(&l.pow_u32(f.degree() as u32));
            let scale = 1.0 + rhs.abs_f64();
            prop_assert!(lhs.dist_f64(&rhs) / scale < 1e-55);
        }

        #[test]
        fn exact_multiply_commutes_and_associates(
            a in prop::collection::vec(-50i64..50, 1..6),
            b in prop::collection::vec(-50i64..50, 1..6),
            c in prop::collection::vec(-50i64..50, 1..6),
        ) {
            let (a, b, c) = (int_form(&a), int_form(&b), int_form(&c));
            prop_assert_eq!(a.multiply(&b), b.multiply(&a));
            prop_assert_eq!(a.multiply(&b).multiply(&c), a.multiply(&b.multiply(&c)));
        }

        // ×ₓP(x) = det(A)⁻¹ · A · (×_w P(Aw))
        #[test]
        fn cross_operator_transforms_under_linear_change(
            c in arb_form(7),
            m in prop::collection::vec(arb_complex(), 4),
            w in arb_complex(),
        ) {
            let p = to_form(&c);
            let a = LinearAction::new(big(m[0].0, m[0].1), big(m[1].0, m[1].1), big(m[2].0, m[2].1), big(m[3].0, m[3].1));
            prop_assume!(a.det().abs_f64() > 0.05);
            let lhs_map = p.cross().unwrap();
            let rhs_map = p.compose_linear(&a).cross().unwrap();
            let w1 = big(w.0, w.1);
            let w2 = big(1.0, 0.25);
            let (x1, x2) = a.apply_vec(&w1, &w2);
            let lhs = (lhs_map.first.eval(&x1, &x2), lhs_map.second.eval(&x1, &x2));
            let inner = (rhs_map.first.eval(&w1, &w2), rhs_map.second.eval(&w1, &w2));
            let (r1, r2) = a.apply_vec(&inner.0, &inner.1);
            let delta = a.det().inv();
            let rhs = (r1.mul_ref(&delta), r2.mul_ref(&delta));
            let scale = 1.0 + lhs.0.abs_f64() + lhs.1.abs_f64();
            prop_assert!(lhs.0.dist_f64(&rhs.0) / scale < 1e-50);
            prop_assert!(lhs.1.dist_f64(&rhs.1) / scale < 1e-50);
        }

        #[test]
        fn apply_is_projectively_well_defined(
            c1 in arb_form(5), lam in arb_complex(), p in arb_complex(),
        ) {
            prop_assume!(lam.0.abs() + lam.1.abs() > 0.1);
            let deg = c1.len() - 1;
            let f = to_form(&c1);
            let g = BinaryForm::new((0..=deg).map(|k| big(k as f64 - 1.5, 0.5)).collect());
            let m = PlaneMap::new(f, g).unwrap();
            let pt = ProjPoint::new(big(p.0, p.1), big(1.0, -0.4)).unwrap();
            let l = big(lam.0, lam.1);
            let scaled = ProjPoint::new(pt.w1().mul_ref(&l), pt.w2().mul_ref(&l)).unwrap();
            if let (Ok(a), Ok(b)) = (m.apply(&pt), m.apply(&scaled)) {
                prop_assert!(a.chordal_distance(&b) < 1e-50);
            }
        }
    }
}
