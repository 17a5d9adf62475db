//! Derivation into a cache document, and the solver built from one.

use std::path::Path;
use std::time::{Duration, Instant};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use super::cycle::{iterate_to_cycle, random_seed_point};
use super::resolvent::{direct_roots, hausdorff, resolvent};
use super::RunConfig;
use crate::binform::{PlaneMap, ProjPoint};
use crate::error::{CacheError, Error, Result};
use crate::extractor::{derive_l, resolve_labeling, CircleFit, ExtractorData, LabelTrial, SelectorSet};
use crate::icosa::{canonical_data, IcosahedralData};
use crate::map31::{build_g, reference_map, CriticalSet, MapParameters};
use crate::param::cache::{
    decode_complex, decode_point, encode_complex, encode_point, CacheDocument, CriticalRecord, ExtractorRecord,
    FormRecord, MapRecord, FORMAT_VERSION,
};
use crate::param::{
    mismatched_coefficients, preimage, printed_f_z, s_matrix, ParamForms, ParamMap, ParamSystem, SampleConfig,
};
use crate::scalar::{BigComplex, PrecisionContext};

/// Settings for [`derive`].
#[derive(Clone, Debug, Default)]
pub struct DeriveConfig {
    pub samples: SampleConfig,
    pub fit: CircleFit,
}

/// A finished derivation with the diagnostics gathered on the way.
#[derive(Clone, Debug)]
pub struct DeriveReport {
    pub document: CacheDocument,
    pub params: MapParameters,
    pub calibration_residual: f64,
    pub labeling_trials: Vec<LabelTrial>,
    /// `w`-indices where `F_Z` differs from the published expansion.
    pub f_z_mismatches: Vec<usize>,
    pub cross_consistent: bool,
    pub l_alias: f64,
    pub elapsed: Duration,
}

/// Calibrates `g`, labels its critical set, fits the `Z`-forms and `L_Z`, and
/// packs everything into a cache document.
pub fn derive(ctx: &PrecisionContext, cfg: &DeriveConfig) -> Result<DeriveReport> {
    let start = Instant::now();
    let data = canonical_data(ctx)?;
    let reference = reference_map(&data)?;
    let (critical, labeling_trials) = resolve_labeling(&data, &reference.critical)?;
    let set = SelectorSet::build(&data, &critical)?;
    let forms = ParamForms::derive(&data, &cfg.samples)?;
    let cross_consistent = forms.cross_consistent()?;
    let f_z_mismatches = mismatched_coefficients(&forms.f_z, &printed_f_z());
    let (l_z, l_alias) = derive_l(&data, &set, &cfg.fit)?;
    let chosen = labeling_trials
        .iter()
        .find(|t| t.labeling.labels == critical.labels)
        .map(|t| t.labeling.orbit.clone())
        .unwrap_or_default();
    let document = CacheDocument {
        format_version: FORMAT_VERSION,
        precision_digits: ctx.digits(),
        scalar_kind: "mixed".into(),
        map: MapRecord {
            alpha: encode_complex(&reference.params.alpha),
            beta: encode_complex(&reference.params.beta),
        },
        forms: vec![
            FormRecord::from_exact(&forms.f_z),
            FormRecord::from_exact(&forms.h_z),
            FormRecord::from_exact(&forms.phi_z.first),
            FormRecord::from_exact(&forms.phi_z.second),
            FormRecord::from_exact(&forms.eta_z.first),
            FormRecord::from_exact(&forms.eta_z.second),
            FormRecord::from_floating(&l_z),
        ],
        extractor: ExtractorRecord {
            gamma: set.tuned.iter().map(|h| encode_complex(&h.gamma)).collect(),
            theta: set.tuned.iter().map(|h| encode_complex(&h.theta)).collect(),
            normalization: set.normalizations().iter().map(encode_complex).collect(),
            labeling: chosen,
        },
        critical: CriticalRecord {
            points: critical.points.iter().map(encode_point).collect(),
            cycles: critical.cycles.clone(),
            labels: critical.labels.clone(),
        },
        checksum: String::new(),
    }
    .sealed();
    Ok(DeriveReport {
        document,
        params: reference.params,
        calibration_residual: reference.calibration_residual,
        labeling_trials,
        f_z_mismatches,
        cross_consistent,
        l_alias,
        elapsed: start.elapsed(),
    })
}

/// Everything needed to solve at one precision.
#[derive(Clone, Debug)]
pub struct Solver {
    pub data: IcosahedralData,
    pub params: MapParameters,
    pub system: ParamSystem,
    pub extractor: ExtractorData,
    pub critical: CriticalSet,
}

fn malformed(msg: impl Into<String>) -> Error {
    CacheError::Malformed(msg.into()).into()
}

fn critical_from_record(rec: &CriticalRecord, prec: u32) -> Result<CriticalSet> {
    let n = rec.points.len();
    if n != 60 || rec.labels.len() != n || rec.cycles.len() != 12 {
        return Err(malformed("critical set must have 60 points in 12 cycles"));
    }
    let points = rec
        .points
        .iter()
        .map(|p| decode_point(p, prec))
        .collect::<Result<Vec<_>>>()?;
    let mut image = vec![usize::MAX; n];
    for cyc in &rec.cycles {
        for i in 0..5 {
            let (a, b) = (cyc[i], cyc[(i + 1) % 5]);
            if a >= n || b >= n || image[a] != usize::MAX {
                return Err(malformed("critical cycles do not partition the points"));
            }
            image[a] = b;
        }
    }
    if rec.labels.iter().any(|&k| !(1..=5).contains(&k)) {
        return Err(malformed("critical labels must lie in 1..=5"));
    }
    Ok(CriticalSet {
        points,
        image,
        cycles: rec.cycles.clone(),
        labels: rec.labels.clone(),
    })
}

impl Solver {
    /// Rebuilds the solver from a validated cache document at `ctx`.
    pub fn from_document(doc: &CacheDocument, ctx: &PrecisionContext) -> Result<Self> {
        if doc.precision_digits < ctx.digits() {
            return Err(CacheError::Precision {
                stored: doc.precision_digits,
                requested: ctx.digits(),
            }
            .into());
        }
        let data = canonical_data(ctx)?;
        let prec = data.prec();
        let params = MapParameters::new(
            decode_complex(&doc.map.alpha, prec)?,
            decode_complex(&doc.map.beta, prec)?,
        );
        let exact = |name: &str| doc.form(name)?.to_exact();
        let f_z = exact("F_Z")?;
        let forms = ParamForms {
            h_z: exact("H_Z")?,
            phi_z: ParamMap {
                first: exact("phi_Z.0")?,
                second: exact("phi_Z.1")?,
            },
            eta_z: ParamMap {
                first: exact("eta_Z.0")?,
                second: exact("eta_Z.1")?,
            },
            f_z,
        };
        let check = |name: &str, got: usize, want: usize| {
            if got == want {
                Ok(())
            } else {
                Err(malformed(format!("{name} has w-degree {got}, expected {want}")))
            }
        };
        check("F_Z", forms.f_z.wdegree, 12)?;
        check("H_Z", forms.h_z.wdegree, 20)?;
        check("phi_Z", forms.phi_z.first.wdegree.min(forms.phi_z.second.wdegree), 11)?;
        check("eta_Z", forms.eta_z.first.wdegree.min(forms.eta_z.second.wdegree), 19)?;
        let l_z = doc.form("L")?.to_floating(prec)?;
        check("L", l_z.wdegree, 48)?;
        let system = forms.to_big(prec);
        let extractor = ExtractorData {
            l_z,
            f_z: system.f_z.clone(),
        };
        let critical = critical_from_record(&doc.critical, prec)?;
        Ok(Solver {
            data,
            params,
            system,
            extractor,
            critical,
        })
    }

    pub fn load(path: &Path, ctx: &PrecisionContext) -> Result<Self> {
        Solver::from_document(&CacheDocument::load(path, ctx)?, ctx)
    }

    /// Derives at `ctx` and builds the solver from the resulting document.
    pub fn derive(ctx: &PrecisionContext, cfg: &DeriveConfig) -> Result<(Self, DeriveReport)> {
        let report = derive(ctx, cfg)?;
        Ok((Solver::from_document(&report.document, ctx)?, report))
    }

    pub fn ctx(&self) -> &PrecisionContext {
        &self.data.ctx
    }

    /// The reference map `g` on the `x`-sphere.
    pub fn reference_g(&self) -> PlaneMap<BigComplex> {
        build_g(&self.data, &self.params)
    }

    pub fn g_z(&self, z: &BigComplex, guard: f64) -> Result<PlaneMap<BigComplex>> {
        self.system.g_z(&self.params, z, guard)
    }

    /// The twelve critical five-cycles: of `g` when `z` is `None`, otherwise
    /// of `g_Z` (moved to `w` by `S_y⁻¹` for some `y` over `z`).
    pub fn attractors(&self, z: Option<&BigComplex>) -> Result<Vec<Vec<ProjPoint>>> {
        let moved: Vec<ProjPoint> = match z {
            None => self.critical.points.clone(),
            Some(z) => {
                let y = preimage(&self.data, z)?;
                let sinv = s_matrix(&self.data, &y)?.adjugate();
                self.critical
                    .points
                    .iter()
                    .map(|p| sinv.apply(p))
                    .collect::<Result<_>>()?
            }
        };
        Ok(self
            .critical
            .cycles
            .iter()
            .map(|c| c.iter().map(|&i| moved[i].clone()).collect())
            .collect())
    }

    /// Solves `R_Z` by iteration and extraction, retrying from fresh random
    /// seeds on failure, and compares with the direct roots.
    pub fn solve(&self, z: &BigComplex, cfg: &RunConfig) -> Result<SolveReport> {
        cfg.validate()?;
        let prec = self.data.prec();
        let z = z.with_prec(prec);
        let r = resolvent(&z, cfg.guard)?;
        let g = self.g_z(&z, cfg.guard)?;
        let ex = self.extractor.at(&z);
        let oracle_roots = direct_roots(&r)?;
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
        let threshold = cfg.residual_threshold();
        let mut total = 0usize;
        let mut last_err = None;
        for retries in 0..=cfg.max_retries {
            let seed_point = random_seed_point(&mut rng, prec);
            let orbit = match iterate_to_cycle(&g, &seed_point, cfg) {
                Ok(o) => o,
                Err(e @ (Error::NonConvergence { .. } | Error::Degenerate(_))) => {
                    total += cfg.max_iter;
                    last_err = Some(e);
                    continue;
                }
                Err(e) => return Err(e),
            };
            total += orbit.iterations;
            let roots = match orbit.points.iter().map(|w| ex.extract(w)).collect::<Result<Vec<_>>>() {
                Ok(v) => v,
                Err(e @ Error::Extraction(_)) => {
                    last_err = Some(e);
                    continue;
                }
                Err(e) => return Err(e),
            };
            let residuals: Vec<f64> = roots.iter().map(|v| r.residual(v)).collect();
            if residuals.iter().any(|&x| !(x < threshold)) {
                last_err = Some(Error::Extraction(format!(
                    "extracted values miss the resolvent (residual {:e})",
                    residuals.iter().cloned().fold(0.0, f64::max)
                )));
                continue;
            }
            let match_distance = hausdorff(&roots, &oracle_roots);
            return Ok(SolveReport {
                z,
                seed_point,
                iterations: orbit.iterations,
                cycle: orbit.points,
                closure: orbit.closure,
                roots,
                residuals,
                retries,
                oracle_roots,
                match_distance,
            });
        }
        match last_err {
            Some(Error::Extraction(msg)) => Err(Error::Extraction(msg)),
            _ => Err(Error::NonConvergence { iterations: total }),
        }
    }
}

/// The outcome of one [`Solver::solve`].
#[derive(Clone, Debug)]
pub struct SolveReport {
    pub z: BigComplex,
    pub seed_point: ProjPoint,
    pub iterations: usize,
    /// `ω̃₁ … ω̃₅`.
    pub cycle: Vec<ProjPoint>,
    pub closure: f64,
    /// `r_k = Γ_Z(ω̃_k)`.
    pub roots: Vec<BigComplex>,
    pub residuals: Vec<f64>,
    pub retries: usize,
    pub oracle_roots: Vec<BigComplex>,
    /// Hausdorff distance between `roots` and `oracle_roots`.
    pub match_distance: f64,
}

impl SolveReport {
    pub fn max_residual(&self) -> f64 {
        self.residuals.iter().cloned().fold(0.0, f64::max)
    }

    pub fn to_json(&self) -> Value {
        let c = |z: &BigComplex| json!(encode_complex(z));
        json!({
            "z": c(&self.z),
            "roots": self.roots.iter().map(c).collect::<Vec<_>>(),
            "residuals": self.residuals,
            "iterations": self.iterations,
            "retries": self.retries,
            "oracle_match": self.match_distance,
            "oracle_roots": self.oracle_roots.iter().map(c).collect::<Vec<_>>(),
            "cycle": self.cycle.iter().map(|p| json!(encode_point(p))).collect::<Vec<_>>(),
            "cycle_closure": self.closure,
        })
    }
}
