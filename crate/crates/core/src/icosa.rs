//! Icosahedral invariants, the rotation group, and the five tetrahedral
//! invariant systems.

use rug::{Float, Integer};

use crate::binform::{roots, BinaryForm, LinearAction, PlaneMap, ProjPoint};
use crate::error::{Error, Result};
use crate::scalar::{sqrt_u32, BigComplex, PrecisionContext, Scalar};

/// Order of the icosahedral rotation group.
pub const GROUP_ORDER: usize = 60;

fn sparse_form(degree: usize, terms: &[(usize, i64)]) -> BinaryForm<Integer> {
    let mut c = vec![Integer::new(); degree + 1];
    for &(k, v) in terms {
        c[k] = Integer::from(v);
    }
    BinaryForm::new(c)
}

/// `F = xy(x¹⁰ − 11x⁵y⁵ − y¹⁰)`, vanishing at the 12 vertices.
pub fn f_form() -> BinaryForm<Integer> {
    sparse_form(12, &[(1, 1), (6, -11), (11, -1)])
}

/// The degree-20 invariant vanishing at the 20 face centres.
pub fn h_form() -> BinaryForm<Integer> {
    sparse_form(20, &[(0, 1), (5, 228), (10, 494), (15, -228), (20, 1)])
}

/// The degree-30 invariant vanishing at the 30 edge midpoints.
pub fn t_form() -> BinaryForm<Integer> {
    sparse_form(30, &[(0, 1), (5, -522), (10, -10005), (20, -10005), (25, 522), (30, 1)])
}

pub fn t5_form() -> BinaryForm<Integer> {
    sparse_form(6, &[(0, 1), (1, -2), (2, -5), (4, -5), (5, 2), (6, 1)])
}

pub fn u5_form() -> BinaryForm<Integer> {
    sparse_form(8, &[(0, 1), (1, 1), (2, 7), (3, -7), (5, 7), (6, 7), (7, -1), (8, 1)])
}

pub fn m5_form() -> BinaryForm<Integer> {
    let c = [1, -1, -6, 20, 15, 24, 11, -24, 15, -20, -6, 1, 1];
    BinaryForm::new(c.iter().map(|&v| Integer::from(v)).collect())
}

/// The quartic factors `q₅` and `q̂₅` of `u₅`; their coefficients involve `i√15`.
pub fn q5_pair(prec: u32) -> (BinaryForm<BigComplex>, BinaryForm<BigComplex>) {
    let r = sqrt_u32(15, prec);
    let z = || Float::new(prec);
    let c = |re: i64, im: Float| BigComplex::new(Float::with_val(prec, re), im);
    let half = |x: &Float| Float::with_val(prec, x / 2u32);
    // q₅ = x⁴ + ½(1 + i√15)x³y + ½(3 − i√15)x²y² − ½(1 + i√15)xy³ + y⁴
    let q = BinaryForm::new(vec![
        c(1, z()),
        BigComplex::new(Float::with_val(prec, 0.5), half(&r)),
        BigComplex::new(Float::with_val(prec, 1.5), -half(&r)),
        BigComplex::new(Float::with_val(prec, -0.5), -half(&r)),
        c(1, z()),
    ]);
    // q̂₅ = x⁴ + ½(1 − i√15)x³y + ½(3 + i√15)x²y² − ½(1 − i√15)xy³ + y⁴
    let qhat = BinaryForm::new(vec![
        c(1, z()),
        BigComplex::new(Float::with_val(prec, 0.5), -half(&r)),
        BigComplex::new(Float::with_val(prec, 1.5), half(&r)),
        BigComplex::new(Float::with_val(prec, -0.5), half(&r)),
        c(1, z()),
    ]);
    (q, qhat)
}

/// `P = diag(ε³, ε²)`, `ε = e^{2πi/5}`: the order-5 rotation about the poles.
pub fn p_action(prec: u32) -> LinearAction<BigComplex> {
    LinearAction::new(
        BigComplex::root_of_unity(5, 3, prec),
        BigComplex::zero(prec),
        BigComplex::zero(prec),
        BigComplex::root_of_unity(5, 2, prec),
    )
}

/// `W: (x, y) ↦ (−y, x)`, the half-turn swapping the poles.
pub fn w_action(prec: u32) -> LinearAction<BigComplex> {
    LinearAction::new(
        BigComplex::zero(prec),
        BigComplex::from_i64(-1, prec),
        BigComplex::one(prec),
        BigComplex::zero(prec),
    )
}

/// A half-turn moving the pole `(1, 0)` to a neighbouring vertex;
/// `{P, U}` generates the whole group.
pub fn u_action(prec: u32) -> LinearAction<BigComplex> {
    let s1 = BigComplex::root_of_unity(5, 1, prec).sub_ref(&BigComplex::root_of_unity(5, 4, prec));
    let s2 = BigComplex::root_of_unity(5, 2, prec).sub_ref(&BigComplex::root_of_unity(5, 3, prec));
    let r5 = sqrt_u32(5, prec);
    let (s1, s2) = (s1.div_real(&r5), s2.div_real(&r5));
    LinearAction::new(s1.neg_ref(), s2.neg_ref(), s2.neg_ref(), s1)
}

/// `A^k` for `k ≥ 0`; negative `k` uses the inverse.
pub fn action_pow(a: &LinearAction<BigComplex>, k: i64) -> LinearAction<BigComplex> {
    use crate::scalar::FieldScalar;
    let base = if k < 0 {
        let det = a.det();
        a.adjugate().map(|e| e.div_ref(&det))
    } else {
        a.clone()
    };
    let mut out = LinearAction::identity(&a.a);
    for _ in 0..k.unsigned_abs() {
        out = base.compose(&out);
    }
    out
}

/// Closes `generators` under composition, identifying matrices that agree
/// up to a scalar. Fails unless exactly `expected` classes result.
///
/// Two products count as the same class when their determinant-one
/// normalisations agree up to sign within `10⁻⁶`; such coincidences must
/// then also hold to `tol`.
pub fn generate_group(
    generators: &[LinearAction<BigComplex>],
    expected: usize,
    tol: f64,
) -> Result<Vec<LinearAction<BigComplex>>> {
    if generators.is_empty() {
        return Err(Error::InvalidArgument("no generators".into()));
    }
    let gens: Vec<_> = generators.iter().map(LinearAction::unimodular).collect();
    let mut elements = vec![LinearAction::identity(&gens[0].a)];
    let mut frontier = elements.clone();
    let cap = expected.max(1) * 4;
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for a in &frontier {
            for g in &gens {
                let c = g.compose(a);
                let mut seen = false;
                for e in &elements {
                    let d = c.projective_distance(e);
                    if d < 1e-6 {
                        if d > tol {
                            return Err(Error::Degenerate(format!(
                                "group products agree only to {d:e}, above tolerance {tol:e}"
                            )));
                        }
                        seen = true;
                        break;
                    }
                }
                if !seen {
                    elements.push(c.clone());
                    next.push(c);
                    if elements.len() > cap {
                        return Err(Error::GroupClosure {
                            size: elements.len(),
                            expected,
                        });
                    }
                }
            }
        }
        frontier = next;
    }
    if elements.len() != expected {
        return Err(Error::GroupClosure {
            size: elements.len(),
            expected,
        });
    }
    Ok(elements)
}

/// The fixed icosahedral data at one working precision.
#[derive(Clone, Debug)]
pub struct IcosahedralData {
    pub ctx: PrecisionContext,
    pub f: BinaryForm<Integer>,
    pub h: BinaryForm<Integer>,
    pub t: BinaryForm<Integer>,
    /// `×F`, degree 11.
    pub phi: PlaneMap<Integer>,
    /// `×H`, degree 19.
    pub eta: PlaneMap<Integer>,
    pub p: LinearAction<BigComplex>,
    pub w: LinearAction<BigComplex>,
    pub u: LinearAction<BigComplex>,
    /// Determinant-one representatives of the 60 rotations.
    pub group: Vec<LinearAction<BigComplex>>,
    pub f_big: BinaryForm<BigComplex>,
    pub h_big: BinaryForm<BigComplex>,
    pub t_big: BinaryForm<BigComplex>,
    pub phi_big: PlaneMap<BigComplex>,
    pub eta_big: PlaneMap<BigComplex>,
}

/// Builds the invariants, equivariants and the group at precision `ctx`.
pub fn canonical_data(ctx: &PrecisionContext) -> Result<IcosahedralData> {
    let prec = ctx.bits();
    let f = f_form();
    let h = h_form();
    let t = t_form();
    let phi = f.cross()?;
    let eta = h.cross()?;
    let p = p_action(prec);
    let w = w_action(prec);
    let u = u_action(prec);
    let tol = 1e3 * ctx.eps();
    for (name, a) in [("P", &p), ("W", &w), ("U", &u)] {
        for (fname, form) in [("F", &f), ("H", &h)] {
            let big = form.to_big(prec);
            let moved = big.compose_linear(a);
            let err = moved.relative_distance(&big);
            if err > tol {
                return Err(Error::Degenerate(format!("generator {name} moves {fname} by {err:e}")));
            }
        }
    }
    let group = generate_group(&[p.clone(), w.clone(), u.clone()], GROUP_ORDER, tol)?;
    Ok(IcosahedralData {
        ctx: *ctx,
        f_big: f.to_big(prec),
        h_big: h.to_big(prec),
        t_big: t.to_big(prec),
        phi_big: phi.to_big(prec),
        eta_big: eta.to_big(prec),
        f,
        h,
        t,
        phi,
        eta,
        p,
        w,
        u,
        group,
    })
}

impl IcosahedralData {
    pub fn prec(&self) -> u32 {
        self.ctx.bits()
    }

    /// `P^k` as a linear action.
    pub fn p_pow(&self, k: i64) -> LinearAction<BigComplex> {
        // P⁵ = I exactly in exact arithmetic; reduce to keep rounding small
        action_pow(&self.p, k.rem_euclid(5))
    }

    /// The tetrahedral system with index `k ∈ 1..=5`, each form composed with `P^k`.
    pub fn tetra_system(&self, k: usize) -> Result<TetrahedralSystem> {
        if !(1..=5).contains(&k) {
            return Err(Error::InvalidArgument(format!(
                "tetrahedral index must be in 1..=5, got {k}"
            )));
        }
        let prec = self.prec();
        let (q5, qhat5) = q5_pair(prec);
        let base = [
            q5,
            qhat5,
            t5_form().to_big(prec),
            u5_form().to_big(prec),
            m5_form().to_big(prec),
        ];
        let [q, qhat, t, u, m] = if k == 5 {
            base
        } else {
            let pk = self.p_pow(k as i64);
            base.map(|f| f.compose_linear(&pk))
        };
        Ok(TetrahedralSystem { k, q, qhat, t, u, m })
    }

    pub fn tetra_systems(&self) -> Result<Vec<TetrahedralSystem>> {
        (1..=5).map(|k| self.tetra_system(k)).collect()
    }

    /// Vertices, face centres and edge midpoints as roots of `F`, `H`, `T`.
    pub fn special_orbits(&self) -> Result<SpecialOrbits> {
        Ok(SpecialOrbits {
            vertices12: roots(&self.f_big)?,
            faces20: roots(&self.h_big)?,
            edges30: roots(&self.t_big)?,
        })
    }

    /// Indices of the group elements that map the point set `set` into itself.
    pub fn set_stabilizer(&self, set: &[ProjPoint], tol: f64) -> Result<Vec<usize>> {
        let mut out = Vec::new();
        for (i, a) in self.group.iter().enumerate() {
            let mut ok = true;
            for p in set {
                let q = a.apply(p)?;
                match q.nearest(set) {
                    Some((_, d)) if d < tol => {}
                    _ => {
                        ok = false;
                        break;
                    }
                }
            }
            if ok {
                out.push(i);
            }
        }
        Ok(out)
    }

    /// The subgroup `𝒯_k`, found as the set stabiliser of the roots of `q_k`.
    pub fn tetra_subgroup(&self, k: usize) -> Result<Vec<usize>> {
        let sys = self.tetra_system(k)?;
        let r = roots(&sys.q)?;
        let sub = self.set_stabilizer(&r, 1e-20)?;
        if sub.len() != 12 {
            return Err(Error::Degenerate(format!(
                "tetrahedral subgroup {k} has {} elements",
                sub.len()
            )));
        }
        Ok(sub)
    }

    /// Index of the group element nearest to `a` projectively.
    pub fn group_index(&self, a: &LinearAction<BigComplex>) -> Option<(usize, f64)> {
        self.group
            .iter()
            .enumerate()
            .map(|(i, g)| (i, g.projective_distance(a)))
            .min_by(|x, y| x.1.partial_cmp(&y.1).unwrap())
    }

    /// Checks the classical relations among the invariants.
    pub fn verify_relations(&self) -> Result<RelationReport> {
        let mut report = RelationReport::default();
        let (f, h, t) = (&self.f, &self.h, &self.t);

        let syz = &(&t.pow(2) - &h.pow(3)) + &f.pow(5).scale_i64(1728);
        report.record_exact("T² − H³ + 1728F⁵", &syz);

        let (t5, u5, m5) = (t5_form(), u5_form(), m5_form());
        let deg24 = &(&m5.pow(2).scale_i64(64) - &(&t5.pow(2) * &m5).scale_i64(95))
            + &(&t5.pow(4).scale_i64(40) - &u5.pow(3).scale_i64(9));
        report.record_exact("64m₅² − 95t₅²m₅ + 40t₅⁴ − 9u₅³", &deg24);
        report.record_exact("u₅m₅ − H", &(&(&u5 * &m5) - h));

        let prec = self.prec();
        let (q, qhat) = q5_pair(prec);
        let err = q.multiply(&qhat).relative_distance(&u5.to_big(prec));
        report.record_float("q₅q̂₅ − u₅", err, 10.0 * self.ctx.eps());

        let faces = roots(&self.h_big)?;
        let mut worst = 0.0f64;
        for c in &faces {
            let back = self.phi_big.iterate(c, 2)?;
            worst = worst.max(back.chordal_distance(c));
        }
        report.record_float("φ² on face centres", worst, self.ctx.tol(20));
        Ok(report)
    }
}

/// The five quartic, sextic, octic and duodecic tetrahedral forms for one `k`.
#[derive(Clone, Debug)]
pub struct TetrahedralSystem {
    pub k: usize,
    pub q: BinaryForm<BigComplex>,
    pub qhat: BinaryForm<BigComplex>,
    pub t: BinaryForm<BigComplex>,
    pub u: BinaryForm<BigComplex>,
    pub m: BinaryForm<BigComplex>,
}

#[derive(Clone, Debug)]
pub struct SpecialOrbits {
    pub vertices12: Vec<ProjPoint>,
    pub faces20: Vec<ProjPoint>,
    pub edges30: Vec<ProjPoint>,
}

impl SpecialOrbits {
    pub fn all(&self) -> impl Iterator<Item = &ProjPoint> {
        self.vertices12.iter().chain(&self.faces20).chain(&self.edges30)
    }
}

/// One failed relation: the first offending coefficient and its size.
#[derive(Clone, Debug, PartialEq)]
pub struct Mismatch {
    pub relation: String,
    pub index: usize,
    pub delta: String,
}

#[derive(Clone, Debug, Default)]
pub struct RelationReport {
    pub checked: Vec<(String, bool)>,
    pub mismatches: Vec<Mismatch>,
}

impl RelationReport {
    fn record_exact(&mut self, name: &str, form: &BinaryForm<Integer>) {
        let bad = form.coeffs().iter().position(|c| *c != 0);
        if let Some(index) = bad {
            self.mismatches.push(Mismatch {
                relation: name.into(),
                index,
                delta: form.coeffs()[index].to_string(),
            });
        }
        self.checked.push((name.into(), bad.is_none()));
    }

    fn record_float(&mut self, name: &str, err: f64, tol: f64) {
        let ok = err <= tol;
        if !ok {
            self.mismatches.push(Mismatch {
                relation: name.into(),
                index: 0,
                delta: format!("{err:e}"),
            });
        }
        self.checked.push((name.into(), ok));
    }

    pub fn is_ok(&self) -> bool {
        self.mismatches.is_empty()
    }
}
