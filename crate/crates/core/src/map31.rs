//! The degree-31 equivariant map `g = α·H·φ + β·F·η`, its calibration to an
//! internally period-5 critical set, and the structure of that set.

use rug::Float;

use crate::binform::{newton_polish, roots, BinaryForm, PlaneMap, ProjPoint};
use crate::error::{Error, Result};
use crate::icosa::{IcosahedralData, GROUP_ORDER};
use crate::scalar::{BigComplex, FieldScalar, Scalar};

/// Decimal digits carried beyond the working precision while calibrating.
const CALIBRATION_GUARD_DIGITS: u32 = 20;
const MAX_SECANT_STEPS: usize = 60;

/// The pair `(α, β)` multiplying `H·φ` and `F·η`.
#[derive(Clone, Debug, PartialEq)]
pub struct MapParameters {
    pub alpha: BigComplex,
    pub beta: BigComplex,
}

impl MapParameters {
    pub fn new(alpha: BigComplex, beta: BigComplex) -> Self {
        MapParameters { alpha, beta }
    }

    /// The ten-digit starting value `(19, −10.825358425 − 1.091443283i)`.
    pub fn reference(prec: u32) -> Self {
        let beta = BigComplex::new(
            Float::with_val(prec, Float::parse("-10.825358425").unwrap()),
            Float::with_val(prec, Float::parse("-1.091443283").unwrap()),
        );
        MapParameters::new(BigComplex::from_i64(19, prec), beta)
    }

    pub fn ratio(&self) -> BigComplex {
        self.beta.div_ref(&self.alpha)
    }

    /// Relative distance between the ratios `β/α`.
    pub fn projective_distance(&self, other: &MapParameters) -> f64 {
        let (r, s) = (self.ratio(), other.ratio());
        r.dist_f64(&s) / s.abs_f64()
    }

    /// Rescales to `α = 19`.
    pub fn normalized(&self) -> Self {
        let prec = self.alpha.prec();
        let alpha = BigComplex::from_i64(19, prec);
        let beta = self.ratio().mul_ref(&alpha);
        MapParameters::new(alpha, beta)
    }

    pub fn with_prec(&self, prec: u32) -> Self {
        MapParameters::new(self.alpha.with_prec(prec), self.beta.with_prec(prec))
    }
}

/// `α·H·φ + β·F·η`.
pub fn build_g(data: &IcosahedralData, params: &MapParameters) -> PlaneMap<BigComplex> {
    let prec = params.alpha.prec().max(params.beta.prec());
    let hphi = data.phi.times_form(&data.h).to_big(prec);
    let feta = data.eta.times_form(&data.f).to_big(prec);
    &hphi.scale(&params.alpha) + &feta.scale(&params.beta)
}

/// Every degree-60 invariant is `a·F⁵ + b·H³`; returns `(a, b)`.
///
/// `b` is read off `x⁶⁰` and `a` off `x⁵⁵y⁵`, where `H³` contributes `684`.
pub fn invariant_split(j: &BinaryForm<BigComplex>) -> (BigComplex, BigComplex) {
    let b = j.coeffs()[0].clone();
    let a = j.coeffs()[5].sub_ref(&b.mul_i64(684));
    (a, b)
}

/// The value of `Z = F⁵/H³` on the critical set of `g`.
pub fn critical_parameter(g: &PlaneMap<BigComplex>) -> Result<BigComplex> {
    let (a, b) = invariant_split(&g.jacobian_form());
    if a.is_exact_zero() {
        return Err(Error::Degenerate("Jacobian is a multiple of H³".into()));
    }
    Ok(b.div_ref(&a).neg_ref())
}

fn z_value(data_f: &BinaryForm<BigComplex>, data_h: &BinaryForm<BigComplex>, p: &ProjPoint) -> BigComplex {
    data_f.eval_at(p).pow_u32(5).div_ref(&data_h.eval_at(p).pow_u32(3))
}

/// Outcome of [`calibrate`].
#[derive(Clone, Debug)]
pub struct Calibration {
    pub params: MapParameters,
    pub iterations: usize,
    /// `max_c |J_g(g(c))| / ‖J_g‖` over the 60 critical points.
    pub residual: f64,
}

struct Calibrator {
    f: BinaryForm<BigComplex>,
    h: BinaryForm<BigComplex>,
    f5: BinaryForm<BigComplex>,
    h3: BinaryForm<BigComplex>,
    hphi: PlaneMap<BigComplex>,
    feta: PlaneMap<BigComplex>,
    alpha: BigComplex,
}

impl Calibrator {
    fn new(data: &IcosahedralData, prec: u32) -> Self {
        Calibrator {
            f: data.f.to_big(prec),
            h: data.h.to_big(prec),
            f5: data.f.pow(5).to_big(prec),
            h3: data.h.pow(3).to_big(prec),
            hphi: data.phi.times_form(&data.h).to_big(prec),
            feta: data.eta.times_form(&data.f).to_big(prec),
            alpha: BigComplex::from_i64(19, prec),
        }
    }

    fn map(&self, beta: &BigComplex) -> PlaneMap<BigComplex> {
        &self.hphi.scale(&self.alpha) + &self.feta.scale(beta)
    }

    /// Moves `c` onto the critical orbit of the map with this `β`, and
    /// returns `Z(g(c)) − Z_c`.
    fn defect(&self, beta: &BigComplex, c: &mut ProjPoint) -> Result<BigComplex> {
        let g = self.map(beta);
        let zc = critical_parameter(&g)?;
        let orbit_form = &self.f5 - &self.h3.scale(&zc);
        *c = newton_polish(&orbit_form, c, 8);
        let image = g.apply(c)?;
        Ok(z_value(&self.f, &self.h, &image).sub_ref(&zc))
    }
}

/// Refines `β/α` until the critical points of `g` are mapped into the
/// critical set, so that `g` permutes them.
///
/// One critical point is tracked by Newton's method on `F⁵ − Z_c·H³` while a
/// secant iteration drives `Z(g(c)) − Z_c` to zero.
pub fn calibrate(data: &IcosahedralData, seed: &MapParameters) -> Result<Calibration> {
    let ctx = data.ctx;
    let work = ctx.with_extra_digits(CALIBRATION_GUARD_DIGITS);
    let prec = work.bits();
    let cal = Calibrator::new(data, prec);
    let seed = seed.normalized().with_prec(prec);

    let g0 = cal.map(&seed.beta);
    let zc = critical_parameter(&g0)?;
    let start = roots(&(&cal.f5 - &cal.h3.scale(&zc)))?;
    let mut c = start[0].clone();

    let mut b0 = seed.beta.clone();
    let mut b1 = seed.beta.mul_ref(&BigComplex::from_f64(1.0 + 1e-7, 1e-7, prec));
    let mut e0 = cal.defect(&b0, &mut c)?;
    let mut e1 = cal.defect(&b1, &mut c)?;
    let stop = Float::with_val(prec, Float::i_exp(1, -(work.bits() as i32) + 16));
    let mut iterations = 0;
    loop {
        iterations += 1;
        if iterations > MAX_SECANT_STEPS {
            return Err(Error::Calibration {
                iterations,
                residual: e1.abs_f64(),
            });
        }
        let denom = e1.sub_ref(&e0);
        if denom.is_exact_zero() {
            break;
        }
        let step = e1.mul_ref(&b1.sub_ref(&b0)).div_ref(&denom);
        let next = b1.sub_ref(&step);
        b0 = std::mem::replace(&mut b1, next);
        e0 = e1;
        e1 = cal.defect(&b1, &mut c)?;
        if !b1.is_finite() {
            return Err(Error::Calibration {
                iterations,
                residual: f64::INFINITY,
            });
        }
        let rel = Float::with_val(prec, step.abs() / b1.abs());
        if rel < stop || e1.is_exact_zero() {
            break;
        }
    }

    let params = MapParameters::new(BigComplex::from_i64(19, ctx.bits()), b1.with_prec(ctx.bits()));
    let g = build_g(data, &params);
    let residual = internal_periodicity_residual(data, &g)?;
    if residual > ctx.tol(8) {
        return Err(Error::Calibration { iterations, residual });
    }
    Ok(Calibration {
        params,
        iterations,
        residual,
    })
}

/// `max_c |J_g(g(c))| / ‖J_g‖` over the roots `c` of `J_g`, found as the
/// group orbit of one Newton-refined root.
pub fn internal_periodicity_residual(data: &IcosahedralData, g: &PlaneMap<BigComplex>) -> Result<f64> {
    let j = g.jacobian_form();
    let norm = j.norm_f64();
    let c = critical_orbit(data, g)?;
    let mut worst = 0.0f64;
    for p in &c {
        let v = j.eval_at(&g.apply(p)?).abs_f64();
        worst = worst.max(v / norm);
    }
    Ok(worst)
}

/// The 60 critical points as the group orbit of a single refined root.
fn critical_orbit(data: &IcosahedralData, g: &PlaneMap<BigComplex>) -> Result<Vec<ProjPoint>> {
    let prec = data.prec();
    let zc = critical_parameter(g)?;
    let orbit_form = &data.f.pow(5).to_big(prec) - &data.h.pow(3).to_big(prec).scale(&zc);
    let seed = ProjPoint::from_affine(BigComplex::from_f64(0.3, 0.1, prec));
    let c = newton_polish(&orbit_form, &seed, 200);
    data.group.iter().map(|a| a.apply(&c)).collect()
}

/// The 60 critical points, their five-cycles under `g`, and the tetrahedral
/// labels `1..=5`.
#[derive(Clone, Debug)]
pub struct CriticalSet {
    pub points: Vec<ProjPoint>,
    /// `image[i]` is the index of `g(points[i])`.
    pub image: Vec<usize>,
    /// Each cycle lists `c, g(c), …, g⁴(c)` by index.
    pub cycles: Vec<[usize; 5]>,
    /// `labels[i] ∈ 1..=5`.
    pub labels: Vec<usize>,
}

impl CriticalSet {
    pub fn class(&self, k: usize) -> Vec<usize> {
        (0..self.points.len()).filter(|&i| self.labels[i] == k).collect()
    }

    /// Index of the cycle containing point `i`.
    pub fn cycle_of(&self, i: usize) -> usize {
        self.cycles
            .iter()
            .position(|c| c.contains(&i))
            .expect("every point lies on a cycle")
    }

    pub fn with_labels(&self, labels: Vec<usize>) -> Self {
        CriticalSet { labels, ..self.clone() }
    }
}

/// Finds the critical points of a calibrated `g` as roots of its Jacobian,
/// splits them into five-cycles and assigns tetrahedral labels.
pub fn critical_set(data: &IcosahedralData, g: &PlaneMap<BigComplex>) -> Result<CriticalSet> {
    let ctx = data.ctx;
    let j = g.jacobian_form();
    let mut points = roots(&j)?;
    for p in points.iter_mut() {
        *p = newton_polish(&j, p, 2);
    }
    if points.len() != GROUP_ORDER {
        return Err(Error::CriticalSet(format!(
            "expected 60 critical points, found {}",
            points.len()
        )));
    }
    let sep = min_separation(&points);
    if sep < 1e-10 {
        return Err(Error::CriticalSet(format!(
            "critical points cluster (minimum separation {sep:e})"
        )));
    }
    let match_tol = ctx.tol(12).max(1e-30);
    let mut image = Vec::with_capacity(points.len());
    for p in &points {
        let q = g.apply(p)?;
        let (i, d) = q.nearest(&points).unwrap();
        if d > match_tol {
            return Err(Error::CriticalSet(format!(
                "image of a critical point is {d:e} from the critical set"
            )));
        }
        image.push(i);
    }
    let mut hit = vec![false; points.len()];
    for &i in &image {
        if std::mem::replace(&mut hit[i], true) {
            return Err(Error::CriticalSet("g does not permute the critical set".into()));
        }
    }
    let mut cycles = Vec::new();
    let mut seen = vec![false; points.len()];
    for start in 0..points.len() {
        if seen[start] {
            continue;
        }
        let mut cyc = vec![start];
        seen[start] = true;
        let mut i = image[start];
        while i != start {
            if cyc.len() >= 5 {
                return Err(Error::CriticalSet("critical cycle longer than five".into()));
            }
            seen[i] = true;
            cyc.push(i);
            i = image[i];
        }
        let cyc: [usize; 5] = cyc
            .try_into()
            .map_err(|c: Vec<usize>| Error::CriticalSet(format!("critical cycle of length {}", c.len())))?;
        cycles.push(cyc);
    }
    let unlabeled = CriticalSet {
        labels: vec![0; points.len()],
        points,
        image,
        cycles,
    };
    tetra_label(data, &unlabeled)
}

/// Smallest pairwise chordal distance.
pub fn min_separation(points: &[ProjPoint]) -> f64 {
    let mut best = f64::INFINITY;
    for (i, p) in points.iter().enumerate() {
        for q in &points[i + 1..] {
            best = best.min(p.chordal_distance(q));
        }
    }
    best
}

/// One admissible assignment of tetrahedral labels.
#[derive(Clone, Debug, PartialEq)]
pub struct Labeling {
    /// The `𝒯₅`-orbit taken as class 5; class `k` is its image under `P⁻ᵏ`.
    pub orbit: Vec<usize>,
    pub labels: Vec<usize>,
    /// Chordal distance from the orbit to the nearest root of `q₅`.
    pub q_distance: f64,
}

/// Orbits of the point set under the group elements with indices `sub`.
fn suborbits(data: &IcosahedralData, points: &[ProjPoint], sub: &[usize], tol: f64) -> Result<Vec<Vec<usize>>> {
    let mut orbits = Vec::new();
    let mut seen = vec![false; points.len()];
    for i in 0..points.len() {
        if seen[i] {
            continue;
        }
        let mut orbit = Vec::new();
        for &a in sub {
            let (j, d) = data.group[a].apply(&points[i])?.nearest(points).unwrap();
            if d > tol {
                return Err(Error::Labeling("subgroup does not preserve the critical set".into()));
            }
            if !orbit.contains(&j) {
                orbit.push(j);
            }
        }
        orbit.sort_unstable();
        for &j in &orbit {
            seen[j] = true;
        }
        orbits.push(orbit);
    }
    Ok(orbits)
}

/// Every labeling obtained by choosing a `𝒯₅`-orbit as class 5 and moving it
/// by powers of `P`, kept when the classes partition the set and each cycle
/// meets every class once.
pub fn label_candidates(data: &IcosahedralData, cs: &CriticalSet) -> Result<Vec<Labeling>> {
    let tol = data.ctx.tol(12).max(1e-30);
    let t5 = data.tetra_subgroup(5)?;
    let orbits = suborbits(data, &cs.points, &t5, tol)?;
    let q_roots = roots(&data.tetra_system(5)?.q)?;
    let mut out = Vec::new();
    'orbit: for orbit in orbits {
        if orbit.len() != 12 {
            continue;
        }
        let mut labels = vec![0usize; cs.points.len()];
        for k in 1..=5 {
            let pk = data.p_pow(-(k as i64));
            for &i in &orbit {
                let (j, d) = pk.apply(&cs.points[i])?.nearest(&cs.points).unwrap();
                if d > tol || labels[j] != 0 {
                    continue 'orbit;
                }
                labels[j] = k;
            }
        }
        for cyc in &cs.cycles {
            let mut ks: Vec<usize> = cyc.iter().map(|&i| labels[i]).collect();
            ks.sort_unstable();
            if ks != [1, 2, 3, 4, 5] {
                continue 'orbit;
            }
        }
        let q_distance = orbit
            .iter()
            .flat_map(|&i| q_roots.iter().map(move |r| (i, r)))
            .map(|(i, r)| cs.points[i].chordal_distance(r))
            .fold(f64::INFINITY, f64::min);
        out.push(Labeling {
            orbit,
            labels,
            q_distance,
        });
    }
    out.sort_by(|a, b| a.q_distance.partial_cmp(&b.q_distance).unwrap());
    Ok(out)
}

/// Labels the critical set with the candidate whose class 5 lies nearest the
/// tetrahedron cut out by `q₅`.
pub fn tetra_label(data: &IcosahedralData, cs: &CriticalSet) -> Result<CriticalSet> {
    let cands = label_candidates(data, cs)?;
    let best = cands
        .into_iter()
        .next()
        .ok_or_else(|| Error::Labeling("no consistent tetrahedral labeling".into()))?;
    Ok(cs.with_labels(best.labels))
}

/// The calibrated reference map with its critical set.
#[derive(Clone, Debug)]
pub struct ReferenceMap {
    pub params: MapParameters,
    pub g: PlaneMap<BigComplex>,
    pub critical: CriticalSet,
    pub calibration_residual: f64,
}

/// Calibrates from the reference seed and computes the critical set.
pub fn reference_map(data: &IcosahedralData) -> Result<ReferenceMap> {
    let cal = calibrate(data, &MapParameters::reference(data.prec()))?;
    let g = build_g(data, &cal.params);
    let critical = critical_set(data, &g)?;
    Ok(ReferenceMap {
        params: cal.params,
        g,
        critical,
        calibration_residual: cal.residual,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::icosa::canonical_data;
    use crate::scalar::PrecisionContext;
    use std::sync::OnceLock;

    fn setup() -> &'static (IcosahedralData, ReferenceMap) {
        static DATA: OnceLock<(IcosahedralData, ReferenceMap)> = OnceLock::new();
        DATA.get_or_init(|| {
            let data = canonical_data(&PrecisionContext::default()).unwrap();
            let reference = reference_map(&data).unwrap();
            (data, reference)
        })
    }

    #[test]
    fn leading_coefficient_is_minus_alpha() {
        let (data, _) = setup();
        let g = build_g(data, &MapParameters::reference(data.prec()));
        assert_eq!(g.degree(), 31);
        assert!(g.first.coeffs()[0].dist_f64(&BigComplex::from_i64(-19, data.prec())) < 1e-60);
    }

    #[test]
    fn first_component_matches_the_printed_expansion() {
        let (_, r) = setup();
        // −19x(x³⁰ − (487.5215055 + 65.4865970i)x²⁵y⁵ − (10234.856630 − 436.577313i)x²⁰y¹⁰ …)
        let c = r.g.first.coeffs();
        let cases = [
            (5, num_complex::Complex64::new(487.5215055, 65.4865970)),
            (10, num_complex::Complex64::new(10234.856630, -436.577313)),
        ];
        for (k, printed) in cases {
            let want = printed * 19.0;
            let got = c[k].to_c64();
            assert!((got - want).norm() / want.norm() < 1e-9, "x^{}y^{k}: {got}", 31 - k);
        }
    }

    #[test]
    fn calibration_matches_the_reference_values() {
        let (data, r) = setup();
        let seed = MapParameters::reference(data.prec());
        assert!(r.params.projective_distance(&seed) < 1e-8);
        assert!(r.calibration_residual < data.ctx.tol(8));
    }

    #[test]
    fn calibration_is_stable_under_seed_perturbation() {
        let (data, r) = setup();
        let mut seed = MapParameters::reference(data.prec());
        seed.beta = seed.beta.mul_ref(&BigComplex::from_f64(1.0007, -0.0007, data.prec()));
        let cal = calibrate(data, &seed).unwrap();
        assert!(cal.params.projective_distance(&r.params) < 1e-8);
    }

    #[test]
    fn beta_zero_map_is_critical_at_the_face_centres() {
        let (data, _) = setup();
        let prec = data.prec();
        let g = build_g(
            data,
            &MapParameters::new(BigComplex::from_i64(19, prec), BigComplex::zero(prec)),
        );
        let j = g.jacobian_form().normalized();
        for p in roots(&data.h_big).unwrap() {
            assert!(j.eval_at(&p).abs_f64() < 1e-45);
        }
    }

    #[test]
    fn sixty_separated_points_in_twelve_five_cycles() {
        let (data, r) = setup();
        let cs = &r.critical;
        assert_eq!(cs.points.len(), 60);
        assert_eq!(cs.cycles.len(), 12);
        assert!(min_separation(&cs.points) > 1e-3);
        for p in &cs.points {
            let back = r.g.iterate(p, 5).unwrap();
            assert!(back.chordal_distance(p) < data.ctx.tol(10));
        }
    }

    #[test]
    fn critical_set_is_one_group_orbit() {
        let (data, r) = setup();
        for a in &data.group {
            for p in &r.critical.points {
                let (_, d) = a.apply(p).unwrap().nearest(&r.critical.points).unwrap();
                assert!(d < 1e-40);
            }
        }
    }

    #[test]
    fn g_commutes_with_the_group() {
        let (data, r) = setup();
        let p = ProjPoint::from_affine(BigComplex::from_f64(0.41, -0.17, data.prec()));
        for a in &data.group {
            let lhs = r.g.apply(&a.apply(&p).unwrap()).unwrap();
            let rhs = a.apply(&r.g.apply(&p).unwrap()).unwrap();
            assert!(lhs.chordal_distance(&rhs) < 1e-45);
        }
    }

    #[test]
    fn labels_form_twelve_point_classes_closed_under_their_subgroups() {
        let (data, r) = setup();
        let cs = &r.critical;
        for k in 1..=5 {
            let class = cs.class(k);
            assert_eq!(class.len(), 12);
            let pts: Vec<ProjPoint> = class.iter().map(|&i| cs.points[i].clone()).collect();
            for a in data.tetra_subgroup(k).unwrap() {
                for p in &pts {
                    let (_, d) = data.group[a].apply(p).unwrap().nearest(&pts).unwrap();
                    assert!(d < 1e-40);
                }
            }
        }
        for cyc in &cs.cycles {
            let mut ks: Vec<usize> = cyc.iter().map(|&i| cs.labels[i]).collect();
            ks.sort_unstable();
            assert_eq!(ks, vec![1, 2, 3, 4, 5]);
        }
    }

    #[test]
    fn every_tetrahedral_orbit_gives_a_candidate() {
        let (data, r) = setup();
        let cands = label_candidates(data, &r.critical).unwrap();
        assert_eq!(cands.len(), 5);
        assert!(cands[0].q_distance < cands[1].q_distance);
    }
}
