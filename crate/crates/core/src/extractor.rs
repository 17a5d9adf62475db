//! Root selection on the critical set and the root-extractor `Γ_Z`.
//!
//! Each tetrahedral class `𝒞_k` of critical points is cut out by a tuned
//! degree-12 invariant `h_k = γ·t_k² + θ·m_k`. The product `h̃_k` of the other
//! four, divided by `F⁴`, is a degree-0 function `B_k` equal to `1` on `𝒞_k`
//! and `0` on the rest of the critical set. Summing `B_k` against
//! `ρ_k = F·u_k/H` after the coordinate change `S_y` gives `Γ_Z = L_Z/F_Z⁴`,
//! which sends every critical point of `g_Z` to a root of the resolvent.

use rug::Float;

use crate::binform::{BinaryForm, LinearAction, ProjPoint};
use crate::error::{Error, Result};
use crate::icosa::IcosahedralData;
use crate::map31::{label_candidates, CriticalSet, Labeling};
use crate::param::{fit_on_circles, preimage, s_matrix, LaurentWindow, ParamForm};
use crate::scalar::{BigComplex, FieldScalar, Scalar};

/// `Z`-window of `L_Z`: the numerator of `Λ/(F¹²³H)` is a sum of `F^a H^b`
/// with `12a + 20b = 1496`.
pub const L_WINDOW: LaurentWindow = LaurentWindow { lo: -24, hi: 0 };

/// `h_k = γ·t_k² + θ·m_k`, vanishing on the class `𝒞_k`.
#[derive(Clone, Debug)]
pub struct TunedInvariant {
    pub k: usize,
    pub gamma: BigComplex,
    pub theta: BigComplex,
    pub form: BinaryForm<BigComplex>,
}

/// Tunes `h_k` to vanish at `witness`, hence on its `𝒯_k`-orbit.
pub fn tune_h(data: &IcosahedralData, k: usize, witness: &ProjPoint) -> Result<TunedInvariant> {
    let sys = data.tetra_system(k)?;
    let t2 = sys.t.multiply(&sys.t);
    let tw = t2.eval_at(witness);
    let mw = sys.m.eval_at(witness);
    let size = tw.abs_f64().max(mw.abs_f64());
    if size <= data.ctx.tol(4) * t2.norm_f64().max(sys.m.norm_f64()) {
        return Err(Error::Degenerate(format!(
            "t_{k}² and m_{k} both vanish at the witness"
        )));
    }
    let scale = Float::with_val(data.prec(), size);
    let gamma = mw.div_real(&scale);
    let theta = tw.div_real(&scale).neg_ref();
    let form = &t2.scale(&gamma) + &sys.m.scale(&theta);
    Ok(TunedInvariant { k, gamma, theta, form })
}

/// The selector `B_k = normalization·h̃_k/F⁴`.
#[derive(Clone, Debug)]
pub struct RootSelector {
    pub k: usize,
    pub htilde: BinaryForm<BigComplex>,
    pub normalization: BigComplex,
}

impl RootSelector {
    /// `B_k(x)`, independent of the representative of `x`.
    pub fn value(&self, f: &BinaryForm<BigComplex>, x: &ProjPoint) -> BigComplex {
        self.htilde
            .eval_at(x)
            .mul_ref(&self.normalization)
            .div_ref(&f.eval_at(x).pow_u32(4))
    }
}

/// Builds `B_k` from the other four tuned invariants, normalised on the first
/// point of class `k` and checked on the whole critical set.
pub fn build_selector(
    data: &IcosahedralData,
    k: usize,
    tuned: &[TunedInvariant],
    cs: &CriticalSet,
) -> Result<RootSelector> {
    let mut others = tuned.iter().filter(|h| h.k != k);
    let first = others
        .next()
        .ok_or_else(|| Error::InvalidArgument("need five tuned invariants".into()))?;
    let htilde = others.fold(first.form.clone(), |acc, h| acc.multiply(&h.form));
    if htilde.degree() != 48 {
        return Err(Error::InvalidArgument(format!(
            "h̃_{k} has degree {}, expected 48",
            htilde.degree()
        )));
    }
    let class = cs.class(k);
    let witness = class
        .first()
        .ok_or_else(|| Error::Labeling(format!("class {k} is empty")))?;
    let x = &cs.points[*witness];
    let normalization = data.f_big.eval_at(x).pow_u32(4).div_ref(&htilde.eval_at(x));
    let sel = RootSelector {
        k,
        htilde,
        normalization,
    };
    let tol = data.ctx.tol(15);
    for (i, p) in cs.points.iter().enumerate() {
        let expect = if cs.labels[i] == k { 1 } else { 0 };
        let err = sel
            .value(&data.f_big, p)
            .dist_f64(&BigComplex::from_i64(expect, data.prec()));
        if err > tol {
            return Err(Error::Labeling(format!(
                "B_{k} is off by {err:e} at critical point {i} (label {})",
                cs.labels[i]
            )));
        }
    }
    Ok(sel)
}

/// Tuned invariants, selectors and the `u_k` for one labeling.
#[derive(Clone, Debug)]
pub struct SelectorSet {
    pub tuned: Vec<TunedInvariant>,
    pub selectors: Vec<RootSelector>,
    pub u: Vec<BinaryForm<BigComplex>>,
}

impl SelectorSet {
    /// Tunes `h_k` at the first point of each class and builds all five selectors.
    pub fn build(data: &IcosahedralData, cs: &CriticalSet) -> Result<Self> {
        let mut tuned = Vec::with_capacity(5);
        for k in 1..=5 {
            let witness = cs
                .class(k)
                .first()
                .copied()
                .ok_or_else(|| Error::Labeling(format!("class {k} is empty")))?;
            tuned.push(tune_h(data, k, &cs.points[witness])?);
        }
        let selectors = (1..=5)
            .map(|k| build_selector(data, k, &tuned, cs))
            .collect::<Result<Vec<_>>>()?;
        let u = data.tetra_systems()?.into_iter().map(|s| s.u).collect();
        Ok(SelectorSet { tuned, selectors, u })
    }

    /// Normalisations `N_k`, in label order.
    pub fn normalizations(&self) -> Vec<BigComplex> {
        self.selectors.iter().map(|s| s.normalization.clone()).collect()
    }

    /// The degree-48 form `Σ_k N_k·u_k(y)·h̃_k` in `x`.
    fn weighted_sum(&self, uy: &[BigComplex]) -> BinaryForm<BigComplex> {
        let mut it = self.selectors.iter().zip(uy);
        let (s0, u0) = it.next().unwrap();
        let first = s0.htilde.scale(&s0.normalization.mul_ref(u0));
        it.fold(first, |acc, (s, u)| &acc + &s.htilde.scale(&s.normalization.mul_ref(u)))
    }

    /// `Λ(y, w)/(F(y)¹²³·H(y))` as a form in `w`; at `Z = Z(y)` this is `L_Z`.
    pub fn l_at(&self, data: &IcosahedralData, y: &ProjPoint) -> Result<BinaryForm<BigComplex>> {
        let s = s_matrix(data, y)?;
        let uy: Vec<BigComplex> = self.u.iter().map(|u| u.eval_at(y)).collect();
        let denom = data.f_big.eval_at(y).pow_u32(123).mul_ref(&data.h_big.eval_at(y));
        let inv = denom.inv();
        Ok(self.weighted_sum(&uy).compose_linear(&s).scale(&inv))
    }

    /// `Γ_y(w) = L(w)/F_Z(w)⁴` computed from `y` directly, without a fit.
    pub fn gamma_y(&self, data: &IcosahedralData, y: &ProjPoint, w: &ProjPoint) -> Result<BigComplex> {
        let s = s_matrix(data, y)?;
        let x = s.apply_vec(w.w1(), w.w2());
        self.gamma_raw(data, y, &x)
    }

    /// `Γ` at the vector `x = S_y w`, given as a raw pair so that numerator and
    /// denominator share a representative.
    fn gamma_raw(&self, data: &IcosahedralData, y: &ProjPoint, x: &(BigComplex, BigComplex)) -> Result<BigComplex> {
        let fx = data.f_big.eval(&x.0, &x.1);
        if fx.abs_f64() == 0.0 {
            return Err(Error::Extraction("F vanishes at the extraction point".into()));
        }
        let uy: Vec<BigComplex> = self.u.iter().map(|u| u.eval_at(y)).collect();
        let num = self.weighted_sum_at(&uy, x);
        let fy = data.f_big.eval_at(y);
        let hy = data.h_big.eval_at(y);
        // Γ = Σ N_k h̃_k(x) u_k(y) · F(y) / (H(y) F(x)⁴)
        Ok(num.mul_ref(&fy).div_ref(&hy.mul_ref(&fx.pow_u32(4))))
    }

    fn weighted_sum_at(&self, uy: &[BigComplex], x: &(BigComplex, BigComplex)) -> BigComplex {
        self.selectors
            .iter()
            .zip(uy)
            .fold(BigComplex::zero(x.0.prec()), |acc, (s, u)| {
                acc.add_ref(&s.htilde.eval(&x.0, &x.1).mul_ref(&s.normalization).mul_ref(u))
            })
    }

    /// `Γ` at the critical point `p` seen from `y`, averaged over the 60
    /// preimages `A·y` of `Z(y)`. The average is what a fitted `L_Z` returns;
    /// it agrees with each summand only when the labeling is consistent.
    pub fn gamma_averaged(&self, data: &IcosahedralData, y: &ProjPoint, p: &ProjPoint) -> Result<BigComplex> {
        let prec = data.prec();
        let x = (p.w1().clone(), p.w2().clone());
        let mut acc = BigComplex::zero(prec);
        for a in &data.group {
            let ay = a.apply(y)?;
            let ax = a.apply_vec(&x.0, &x.1);
            acc = acc.add_ref(&self.gamma_raw(data, &ay, &ax)?);
        }
        Ok(acc.div_real(&Float::with_val(prec, data.group.len())))
    }
}

/// `ρ_k(y) = F(y)·u_k(y)/H(y)` for `k = 1..=5`.
pub fn rho_values(data: &IcosahedralData, u: &[BinaryForm<BigComplex>], y: &ProjPoint) -> Vec<BigComplex> {
    let fy = data.f_big.eval_at(y);
    let hy = data.h_big.eval_at(y);
    u.iter().map(|uk| fy.mul_ref(&uk.eval_at(y)).div_ref(&hy)).collect()
}

/// `R_Z(v) = v⁵ − 40Zv² − 5Zv − Z`.
pub fn resolvent_value(z: &BigComplex, v: &BigComplex) -> BigComplex {
    let v2 = v.mul_ref(v);
    let v5 = v2.mul_ref(&v2).mul_ref(v);
    let inner = v2
        .mul_i64(40)
        .add_ref(&v.mul_i64(5))
        .add_ref(&BigComplex::one(v.prec()));
    v5.sub_ref(&z.mul_ref(&inner))
}

/// Outcome of the end-to-end test for one labeling.
#[derive(Clone, Debug)]
pub struct LabelTrial {
    pub labeling: Labeling,
    /// Largest `|R_Z(Γ)|` over the test parameters and critical points, or
    /// `None` when the selectors could not be built.
    pub residual: Option<f64>,
}

impl LabelTrial {
    pub fn passed(&self, threshold: f64) -> bool {
        self.residual.is_some_and(|r| r < threshold)
    }
}

/// Parameters at which labelings are tested.
pub fn test_parameters(prec: u32) -> Vec<BigComplex> {
    [(0.7, 0.4), (-2.3, 1.1), (0.05, -0.6)]
        .iter()
        .map(|&(re, im)| BigComplex::from_f64(re, im, prec))
        .collect()
}

/// Largest resolvent residual of the group-averaged `Γ` over all critical
/// points and the test parameters.
pub fn labeling_residual(data: &IcosahedralData, cs: &CriticalSet) -> Result<f64> {
    let set = SelectorSet::build(data, cs)?;
    let mut worst = 0.0f64;
    for z in test_parameters(data.prec()) {
        let y = preimage(data, &z)?;
        for p in &cs.points {
            let v = set.gamma_averaged(data, &y, p)?;
            worst = worst.max(resolvent_value(&z, &v).abs_f64());
        }
    }
    Ok(worst)
}

/// Threshold on `|R_Z(Γ)|` for accepting a labeling.
pub const LABELING_THRESHOLD: f64 = 1e-20;

/// Tries every candidate labeling end to end and keeps the first that passes.
pub fn resolve_labeling(data: &IcosahedralData, cs: &CriticalSet) -> Result<(CriticalSet, Vec<LabelTrial>)> {
    let trials: Vec<LabelTrial> = label_candidates(data, cs)?
        .into_iter()
        .map(|labeling| {
            let residual = labeling_residual(data, &cs.with_labels(labeling.labels.clone())).ok();
            LabelTrial { labeling, residual }
        })
        .collect();
    let chosen = trials
        .iter()
        .find(|t| t.passed(LABELING_THRESHOLD))
        .ok_or_else(|| Error::Labeling("no candidate labeling extracts resolvent roots".into()))?;
    Ok((cs.with_labels(chosen.labeling.labels.clone()), trials))
}

/// How `L_Z` is fitted on circles in the `Z`-plane.
///
/// The coefficients of `L_Z` span some seventy orders of magnitude across the
/// window, so no single radius resolves all of them.
#[derive(Clone, Debug)]
pub struct CircleFit {
    pub nodes: usize,
    pub radii: Vec<f64>,
}

impl Default for CircleFit {
    fn default() -> Self {
        CircleFit {
            nodes: 32,
            radii: vec![0.001, 0.03, 1.0, 30.0],
        }
    }
}

/// Fits `L_Z` on [`L_WINDOW`] from `Λ` at preimages of circle nodes.
///
/// Returns the form and the alias level of the fit.
pub fn derive_l(data: &IcosahedralData, set: &SelectorSet, fit: &CircleFit) -> Result<(ParamForm<BigComplex>, f64)> {
    let prec = data.prec();
    let radii: Vec<Float> = fit.radii.iter().map(|&r| Float::with_val(prec, r)).collect();
    let (coeffs, alias) = fit_on_circles(L_WINDOW, fit.nodes, &radii, prec, |z| {
        let y = preimage(data, z)?;
        Ok(set.l_at(data, &y)?.into_coeffs())
    })?;
    let alias_tol = data.ctx.tol(20);
    if alias > alias_tol {
        return Err(Error::FitFailed {
            name: "L".into(),
            index: 0,
            residual: alias,
        });
    }
    let form = ParamForm::new("L", -L_WINDOW.lo, coeffs)?;
    for (i, z) in holdout_parameters(prec).iter().enumerate() {
        let direct = set.l_at(data, &preimage(data, z)?)?;
        let err = form.instantiate(z).relative_distance(&direct);
        if err > data.ctx.tol(15) {
            return Err(Error::FitFailed {
                name: "L".into(),
                index: i,
                residual: err,
            });
        }
    }
    Ok((form, alias))
}

/// Parameters at both ends of the working range, off the fitting circle.
fn holdout_parameters(prec: u32) -> Vec<BigComplex> {
    [(0.006, 0.008), (-60.0, 80.0), (0.9, -0.2)]
        .iter()
        .map(|&(re, im)| BigComplex::from_f64(re, im, prec))
        .collect()
}

/// `L_Z` together with the `F_Z` it is divided by.
#[derive(Clone, Debug)]
pub struct ExtractorData {
    pub l_z: ParamForm<BigComplex>,
    pub f_z: ParamForm<BigComplex>,
}

/// `L_Z` and `F_Z` instantiated at one parameter.
#[derive(Clone, Debug)]
pub struct Extractor {
    pub l: BinaryForm<BigComplex>,
    pub f: BinaryForm<BigComplex>,
}

impl ExtractorData {
    pub fn at(&self, z: &BigComplex) -> Extractor {
        Extractor {
            l: self.l_z.instantiate(z),
            f: self.f_z.instantiate(z),
        }
    }
}

impl Extractor {
    /// `Γ_Z(w) = L_Z(w)/F_Z(w)⁴`.
    pub fn extract(&self, w: &ProjPoint) -> Result<BigComplex> {
        let fw = self.f.eval_at(w);
        let floor = (-(w.prec() as f64) / 2.0).exp2();
        if fw.abs_f64() <= floor * self.f.norm_f64() {
            return Err(Error::Extraction("F_Z vanishes at the extraction point".into()));
        }
        Ok(self.l.eval_at(w).div_ref(&fw.pow_u32(4)))
    }
}

/// `Γ_{Z₀}(w)`.
pub fn extract_root(ex: &ExtractorData, z: &BigComplex, w: &ProjPoint) -> Result<BigComplex> {
    ex.at(z).extract(w)
}

/// `S_y⁻¹` as an action, for moving critical points of `g` into `w`-space.
pub fn s_inverse(data: &IcosahedralData, y: &ProjPoint) -> Result<LinearAction<BigComplex>> {
    Ok(s_matrix(data, y)?.adjugate())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::icosa::canonical_data;
    use crate::map31::{reference_map, ReferenceMap};
    use crate::scalar::PrecisionContext;
    use std::sync::OnceLock;

    struct Setup {
        data: IcosahedralData,
        reference: ReferenceMap,
        set: SelectorSet,
    }

    fn setup() -> &'static Setup {
        static S: OnceLock<Setup> = OnceLock::new();
        S.get_or_init(|| {
            let data = canonical_data(&PrecisionContext::default()).unwrap();
            let reference = reference_map(&data).unwrap();
            let set = SelectorSet::build(&data, &reference.critical).unwrap();
            Setup { data, reference, set }
        })
    }

    fn fitted() -> &'static ExtractorData {
        static L: OnceLock<ExtractorData> = OnceLock::new();
        L.get_or_init(|| {
            let s = setup();
            let forms = crate::param::ParamForms::derive(&s.data, &Default::default()).unwrap();
            let (l_z, _) = derive_l(&s.data, &s.set, &CircleFit::default()).unwrap();
            ExtractorData {
                l_z,
                f_z: forms.f_z.to_big(s.data.prec()),
            }
        })
    }

    fn y_sample() -> ProjPoint {
        let d = &setup().data;
        preimage(d, &BigComplex::from_f64(0.3, 0.2, d.prec())).unwrap()
    }

    #[test]
    fn tuned_invariants_cut_out_their_class() {
        let s = setup();
        let cs = &s.reference.critical;
        for h in &s.set.tuned {
            let norm = h.form.norm_f64();
            for (i, p) in cs.points.iter().enumerate() {
                let v = h.form.eval_at(p).abs_f64() / norm;
                if cs.labels[i] == h.k {
                    assert!(v < 1e-50, "h_{} = {v:e} on its class", h.k);
                } else {
                    assert!(v > 1e-6, "h_{} = {v:e} off its class", h.k);
                }
            }
        }
    }

    #[test]
    fn tuned_invariants_are_tetrahedral_invariants() {
        let s = setup();
        let d = &s.data;
        for h in &s.set.tuned {
            let sub = d.tetra_subgroup(h.k).unwrap();
            for &a in &sub {
                let moved = h.form.compose_linear(&d.group[a]);
                assert!(moved.relative_distance(&h.form) < 1e-50);
            }
        }
    }

    #[test]
    fn htilde_is_tetrahedrally_invariant() {
        let s = setup();
        let d = &s.data;
        for sel in &s.set.selectors {
            for &a in &d.tetra_subgroup(sel.k).unwrap() {
                let moved = sel.htilde.compose_linear(&d.group[a]);
                assert!(moved.relative_distance(&sel.htilde) < 1e-45);
            }
        }
    }

    #[test]
    fn selectors_are_class_indicators() {
        let s = setup();
        let d = &s.data;
        let cs = &s.reference.critical;
        let one = BigComplex::one(d.prec());
        for (i, p) in cs.points.iter().enumerate() {
            let mut total = BigComplex::zero(d.prec());
            for sel in &s.set.selectors {
                let b = sel.value(&d.f_big, p);
                let expect = if cs.labels[i] == sel.k {
                    one.clone()
                } else {
                    BigComplex::zero(d.prec())
                };
                assert!(b.dist_f64(&expect) < 1e-40);
                total = total.add_ref(&b);
            }
            assert!(total.dist_f64(&one) < 1e-40);
        }
    }

    #[test]
    fn rho_values_are_resolvent_roots() {
        let s = setup();
        let d = &s.data;
        let y = y_sample();
        let z = crate::param::z_of(d, &y).unwrap();
        let rho = rho_values(d, &s.set.u, &y);
        for r in &rho {
            assert!(resolvent_value(&z, r).abs_f64() < 1e-50);
        }
        for (i, a) in rho.iter().enumerate() {
            for b in &rho[i + 1..] {
                assert!(a.dist_f64(b) > 1e-6);
            }
        }
    }

    #[test]
    fn gamma_reads_rho_of_the_label_at_every_critical_point() {
        let s = setup();
        let d = &s.data;
        let cs = &s.reference.critical;
        let y = y_sample();
        let rho = rho_values(d, &s.set.u, &y);
        let sinv = s_inverse(d, &y).unwrap();
        let mut hits = [0usize; 5];
        for (i, p) in cs.points.iter().enumerate() {
            let w = sinv.apply(p).unwrap();
            let v = s.set.gamma_y(d, &y, &w).unwrap();
            let (j, _) = rho
                .iter()
                .enumerate()
                .map(|(j, r)| (j, r.dist_f64(&v)))
                .min_by(|a, b| a.1.total_cmp(&b.1))
                .unwrap();
            assert_eq!(j + 1, cs.labels[i]);
            assert!(rho[j].dist_f64(&v) < 1e-45);
            hits[j] += 1;
        }
        assert_eq!(hits, [12; 5]);
    }

    #[test]
    fn lambda_is_invariant_in_y() {
        let s = setup();
        let d = &s.data;
        let y = y_sample();
        let base = s.set.l_at(d, &y).unwrap();
        for a in d.group.iter().step_by(7) {
            let moved = s.set.l_at(d, &a.apply(&y).unwrap()).unwrap();
            assert!(moved.relative_distance(&base) < 1e-45);
        }
    }

    #[test]
    fn fitted_l_matches_lambda_at_fresh_points() {
        let s = setup();
        let d = &s.data;
        let l = &fitted().l_z;
        assert_eq!(l.wdegree, 48);
        for (re, im) in [(0.02, 0.03), (5.0, -7.0), (-0.4, 0.1)] {
            let y = preimage(d, &BigComplex::from_f64(re, im, d.prec())).unwrap();
            let z = crate::param::z_of(d, &y).unwrap();
            let direct = s.set.l_at(d, &y).unwrap();
            assert!(l.instantiate(&z).relative_distance(&direct) < 1e-45);
        }
    }

    #[test]
    fn extraction_at_critical_points_of_g_z_gives_resolvent_roots() {
        let s = setup();
        let d = &s.data;
        let ex = fitted();
        let y = y_sample();
        let z = crate::param::z_of(d, &y).unwrap();
        let inst = ex.at(&z);
        let sinv = s_inverse(d, &y).unwrap();
        let rho = rho_values(d, &s.set.u, &y);
        for cyc in &s.reference.critical.cycles {
            let vals: Vec<BigComplex> = cyc
                .iter()
                .map(|&i| {
                    inst.extract(&sinv.apply(&s.reference.critical.points[i]).unwrap())
                        .unwrap()
                })
                .collect();
            for v in &vals {
                assert!(resolvent_value(&z, v).abs_f64() < 1e-20);
                assert!(rho.iter().any(|r| r.dist_f64(v) < 1e-40));
            }
            for (i, a) in vals.iter().enumerate() {
                for b in &vals[i + 1..] {
                    assert!(a.dist_f64(b) > 1e-6);
                }
            }
        }
    }

    #[test]
    fn extraction_is_degree_zero() {
        let s = setup();
        let d = &s.data;
        let z = BigComplex::from_f64(0.3, 0.8, d.prec());
        let w = ProjPoint::from_affine(BigComplex::from_f64(0.2, -0.5, d.prec()));
        let lam = BigComplex::from_f64(3.5, -1.25, d.prec());
        let scaled = ProjPoint::new(w.w1().mul_ref(&lam), w.w2().mul_ref(&lam)).unwrap();
        let a = extract_root(fitted(), &z, &w).unwrap();
        let b = extract_root(fitted(), &z, &scaled).unwrap();
        assert!(a.dist_f64(&b) <= 1e-50 * a.abs_f64().max(1.0));
    }

    #[test]
    fn extraction_rejects_zeros_of_f_z() {
        let s = setup();
        let d = &s.data;
        let z = BigComplex::from_f64(0.3, 0.8, d.prec());
        let f = fitted().f_z.instantiate(&z);
        let zero = crate::binform::roots(&f).unwrap().remove(0);
        assert!(matches!(extract_root(fitted(), &z, &zero), Err(Error::Extraction(_))));
    }

    #[test]
    fn every_candidate_labeling_passes_and_a_transposition_fails() {
        let s = setup();
        let d = &s.data;
        let cs = &s.reference.critical;
        let (resolved, trials) = resolve_labeling(d, cs).unwrap();
        assert!(!trials.is_empty());
        for t in &trials {
            assert!(t.passed(LABELING_THRESHOLD), "{:?}", t.residual);
        }
        assert_eq!(resolved.labels, trials[0].labeling.labels);
        let swapped: Vec<usize> = resolved
            .labels
            .iter()
            .map(|&k| match k {
                1 => 2,
                2 => 1,
                k => k,
            })
            .collect();
        let bad = labeling_residual(d, &cs.with_labels(swapped));
        assert!(bad.map_or(true, |r| r > LABELING_THRESHOLD));
    }
}
