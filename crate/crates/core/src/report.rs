//! Batch verification runs with JSON and text reports.

use std::fmt::Write as _;
use std::time::Instant;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};
use thiserror::Error;

use crate::arith::{self, rat, RatMatrix};
use crate::char2::field::{BinaryField, FieldError, Gf};
use crate::char2::plane::singularity_report;
use crate::char2::poly::HomPoly;
use crate::char2::schroeer::{
    dichotomy_scan, normal_form, recognize, recognize_normal_form, schroeer_g, verify_configuration, Configuration,
};
use crate::char2::separable::SeparableCover;
use crate::glue::{
    all_halfline_classes, build_lambda, build_overlattice, extra_glue_class, h_perp, independence_check, summarize,
    unique_halfline_search, CubeRoot, GlueVector, LabeledSum, LineLabel, Overlattice, OverlatticeSpec,
};
use crate::lattice::{DualVector, Lattice};
use crate::roots::{ade_type, check_a1_lemma, check_d4_lemma, enumerate_roots, AdeType};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ConfigError {
    #[error("r and s must be nonzero (pass --allow-degenerate to run anyway)")]
    Degenerate,
    #[error("--samples must be positive")]
    NoSamples,
    #[error("field needs even degree for the cube roots of unity, got k = {0}")]
    OddDegree(u32),
    #[error("no usable (r, s) with r³ ≠ s³ in GF(2^{0})")]
    NoSamplePairs(u32),
    #[error("polynomial to recognize must be a sextic over GF(2^{k}), got degree {degree} over GF(2^{got})")]
    RecognizeInput { k: u32, got: u32, degree: u32 },
    #[error(transparent)]
    Field(#[from] FieldError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Command {
    Lattice,
    Surface,
    All,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Text,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase", tag = "mode")]
pub enum Params {
    Fixed { r: String, s: String },
    Sampled { samples: usize, seed: u64 },
}

#[derive(Clone, Debug, Serialize)]
pub struct RunConfig {
    pub command: Command,
    pub k: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub modulus: Option<u32>,
    pub params: Params,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub extra_glue: Option<CubeRoot>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub recognize: Option<HomPoly>,
    pub format: Format,
    pub lemma_box: u32,
    pub allow_degenerate: bool,
    #[serde(skip_serializing_if = "std::ops::Not::not")]
    pub inject_corrupt_glue: bool,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            command: Command::All,
            k: 8,
            modulus: None,
            params: Params::Sampled { samples: 20, seed: 1 },
            extra_glue: None,
            recognize: None,
            format: Format::Json,
            lemma_box: 3,
            allow_degenerate: false,
            inject_corrupt_glue: false,
        }
    }
}

impl RunConfig {
    pub fn field(&self) -> Result<BinaryField, ConfigError> {
        let f = match self.modulus {
            Some(m) => BinaryField::new(self.k, m)?,
            None => BinaryField::standard(self.k)?,
        };
        if self.k % 2 == 1 {
            return Err(ConfigError::OddDegree(self.k));
        }
        Ok(f)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    pub summary: String,
    pub witness: Value,
}

fn check(name: impl Into<String>, passed: bool, summary: impl Into<String>, witness: impl Serialize) -> CheckResult {
    let witness = serde_json::to_value(witness).unwrap_or_else(|e| json!({ "serialization_error": e.to_string() }));
    CheckResult { name: name.into(), passed, summary: summary.into(), witness }
}

fn failed(name: impl Into<String>, error: impl std::fmt::Display) -> CheckResult {
    let msg = error.to_string();
    CheckResult { name: name.into(), passed: false, summary: format!("error: {msg}"), witness: json!({ "error": msg }) }
}

#[derive(Clone, Debug, Serialize)]
pub struct Timing {
    pub elapsed_ms: u128,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub tool: &'static str,
    pub version: &'static str,
    pub config: RunConfig,
    pub passed: bool,
    pub checks: Vec<CheckResult>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing: Option<Timing>,
}

impl Report {
    fn new(config: &RunConfig, checks: Vec<CheckResult>, start: Instant) -> Self {
        Self {
            tool: "k3lat",
            version: env!("CARGO_PKG_VERSION"),
            config: config.clone(),
            passed: checks.iter().all(|c| c.passed),
            checks,
            timing: Some(Timing { elapsed_ms: start.elapsed().as_millis() }),
        }
    }

    pub fn check(&self, name: &str) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn without_timing(&self) -> Report {
        Report { timing: None, ..self.clone() }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "k3lat {} ({:?})", self.version, self.config.command);
        for c in &self.checks {
            let _ = writeln!(out, "{} {}: {}", if c.passed { "PASS" } else { "FAIL" }, c.name, c.summary);
        }
        let failed = self.checks.iter().filter(|c| !c.passed).count();
        let _ = writeln!(out, "{} checks, {} failed: {}", self.checks.len(), failed, if self.passed { "PASS" } else { "FAIL" });
        if let Some(t) = &self.timing {
            let _ = writeln!(out, "elapsed: {} ms", t.elapsed_ms);
        }
        out
    }

    pub fn render(&self) -> String {
        match self.config.format {
            Format::Json => self.to_json(),
            Format::Text => self.to_text(),
        }
    }
}

/// The dual Gram matrix of `D₄` with `d₃` at the branch node.
pub fn expected_dual_d4() -> RatMatrix {
    let e = [[-2, -1, -2, -1], [-1, -2, -2, -1], [-2, -2, -4, -2], [-1, -1, -2, -2]];
    RatMatrix::from_fn(4, 4, |i, j| rat(e[i][j], 2))
}

fn dual_basis_check() -> CheckResult {
    let l = Lattice::d4();
    match arith::invert(l.gram()) {
        Ok(inv) => {
            let expected = expected_dual_d4();
            let ok = inv == expected;
            check("d4_dual_basis", ok, if ok { "inverse of -Cartan(D4) matches" } else { "inverse differs" }, json!({ "computed": inv, "expected": expected }))
        }
        Err(e) => failed("d4_dual_basis", e),
    }
}

fn lemma_checks(radius: u32) -> Vec<CheckResult> {
    let mut out = Vec::new();
    for (name, res) in [("lemma_a1", check_a1_lemma(radius)), ("lemma_d4", check_d4_lemma(radius))] {
        out.push(match res {
            Ok(l) => check(name, l.passed, l.detail.clone(), &l),
            Err(e) => failed(name, e),
        });
    }
    out
}

/// Norm −2 vectors with coordinates in `[-b, b]`.
pub fn box_root_count(l: &Lattice, b: i64) -> usize {
    let n = l.rank();
    let mut x = vec![-b; n];
    let mut count = 0;
    loop {
        let v: Vec<BigInt> = x.iter().map(|&c| BigInt::from(c)).collect();
        if l.gram().bilinear_int(&v, &v) == BigInt::from(-2) {
            count += 1;
        }
        let Some(i) = (0..n).find(|&i| x[i] < b) else { break };
        x[i] += 1;
        for xj in x.iter_mut().take(i) {
            *xj = -b;
        }
    }
    count
}

fn root_count_check() -> CheckResult {
    let a1 = Lattice::a1();
    let d4 = Lattice::d4();
    let run = || -> Result<(usize, usize, usize, usize, AdeType), crate::roots::RootError> {
        let ra = enumerate_roots(&a1)?.len();
        let rd = enumerate_roots(&d4)?.len();
        let simple: Vec<Vec<BigInt>> =
            (0..4).map(|i| (0..4).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect()).collect();
        let (t, _) = ade_type(&d4, &simple)?;
        Ok((ra, rd, box_root_count(&a1, 5), box_root_count(&d4, 5), t))
    };
    match run() {
        Ok((ra, rd, ba, bd, t)) => {
            let ok = ra == 2 && rd == 24 && ba == ra && bd == rd && t == AdeType::D(4);
            check(
                "root_counts",
                ok,
                format!("|Roots(A1)| = {ra}, |Roots(D4)| = {rd}, box oracle {ba}/{bd}, diagram type {t}"),
                json!({ "a1": ra, "d4": rd, "a1_box": ba, "d4_box": bd, "diagram_type": t.to_string() }),
            )
        }
        Err(e) => failed("root_counts", e),
    }
}

fn base_check(sum: &LabeledSum) -> CheckResult {
    let l = &sum.lattice;
    let det = l.det();
    let inertia = l.inertia();
    let group = l.discriminant_group();
    let two = BigInt::from(2);
    let ok = det == -BigInt::from(1u64 << 14)
        && (inertia.positive, inertia.negative, inertia.zero) == (1, 21, 0)
        && group.invariant_factors.len() == 14
        && group.invariant_factors.iter().all(|d| *d == two);
    check(
        "lambda_base",
        ok,
        format!("det {det}, inertia ({}, {}, {}), discriminant (Z/2)^{}", inertia.positive, inertia.negative, inertia.zero, group.invariant_factors.len()),
        json!({
            "labels": l.labels(),
            "det": det.to_string(),
            "inertia": inertia,
            "invariant_factors": group.invariant_factors.iter().map(|d| d.to_string()).collect::<Vec<_>>(),
        }),
    )
}

/// `F(∞)` with the `a(0)∨` term dropped.
pub fn corrupt_glue(sum: &LabeledSum) -> GlueVector {
    let mut glue = all_halfline_classes(sum).remove(0);
    let a0 = sum.dual("a(0)").expect("a(0) label");
    glue.vector = &glue.vector - &a0;
    glue.name = "F(∞) without a(0)".into();
    glue
}

fn overlattice_check(name: &str, sum: &LabeledSum, glue: Vec<GlueVector>, det: i64, index: i64, sigma: u32) -> (CheckResult, Option<Overlattice>) {
    let names: Vec<String> = glue.iter().map(|g| g.name.clone()).collect();
    let vectors: Vec<&DualVector> = glue.iter().map(|g| &g.vector).collect();
    let built = build_overlattice(&OverlatticeSpec { base: sum, glue: glue.clone() }).and_then(|ov| Ok((summarize(&ov)?, ov)));
    match built {
        Ok((s, ov)) => {
            let ok = s.det == det.to_string() && s.index == index.to_string() && s.even && s.elementary && s.sigma == sigma;
            let c = check(
                name,
                ok,
                format!("index {}, det {}, even {}, 2-elementary {}, sigma {}", s.index, s.det, s.even, s.elementary, s.sigma),
                json!({ "glue": names, "glue_vectors": vectors, "summary": s, "gram": ov.lattice.gram() }),
            );
            (c, Some(ov))
        }
        Err(e) => {
            let c = CheckResult {
                name: name.into(),
                passed: false,
                summary: format!("error: {e}"),
                witness: json!({ "glue": names, "glue_vectors": vectors, "error": e.to_string() }),
            };
            (c, None)
        }
    }
}

fn lattice_checks(config: &RunConfig, extra: Option<CubeRoot>) -> Vec<CheckResult> {
    let mut checks = vec![dual_basis_check()];
    checks.extend(lemma_checks(config.lemma_box));
    checks.push(root_count_check());

    let sum = build_lambda();
    checks.push(base_check(&sum));

    let mut glue = all_halfline_classes(&sum);
    match independence_check(&sum, &glue, 2) {
        Ok(ind) => checks.push(check(
            "halfline_independence",
            ind.independent && ind.rank == 5,
            format!("five half-line classes span a subspace of dimension {}", ind.rank),
            &ind,
        )),
        Err(e) => checks.push(failed("halfline_independence", e)),
    }
    if config.inject_corrupt_glue {
        glue[0] = corrupt_glue(&sum);
    }
    let (c, ov) = overlattice_check("overlattice_sigma2", &sum, glue.clone(), -16, 32, 2);
    checks.push(c);

    match &ov {
        Some(ov) => {
            match h_perp(&sum, ov) {
                Ok((_, rep)) => {
                    let s = &rep.structure;
                    let ok = s.root_type == "4D4+5A1" && s.components.len() == 9 && s.total_rank == 21 && rep.rank == 21 && rep.simple_roots_are_exceptional;
                    checks.push(check(
                        "h_perp_root_type",
                        ok,
                        format!("{} roots, type {}, {} components, total rank {}", s.root_count, s.root_type, s.components.len(), s.total_rank),
                        &rep,
                    ));
                }
                Err(e) => checks.push(failed("h_perp_root_type", e)),
            }
            for lambda in LineLabel::ALL {
                let name = format!("halfline_search_{lambda}");
                checks.push(match unique_halfline_search(&sum, ov, lambda) {
                    Ok(rep) => {
                        let ok = rep.unique && rep.matches_halfline_class && rep.budget_identity && rep.dichotomies_hold;
                        check(&name, ok, format!("{} hit(s) among {} candidates, matches F({lambda}): {}", rep.hits.len(), rep.examined, rep.matches_halfline_class), &rep)
                    }
                    Err(e) => failed(&name, e),
                });
            }
        }
        None => {
            checks.push(failed("h_perp_root_type", "overlattice unavailable"));
            for lambda in LineLabel::ALL {
                checks.push(failed(format!("halfline_search_{lambda}"), "overlattice unavailable"));
            }
        }
    }

    if let Some(c) = extra {
        let g = extra_glue_class(&sum, c).expect("built-in labels");
        let mut with_g = glue;
        with_g.push(g);
        let (chk, _) = overlattice_check("overlattice_extra_glue", &sum, with_g, -4, 64, 1);
        checks.push(chk);
    }
    checks
}

pub fn cmd_lattice(config: &RunConfig) -> Result<Report, ConfigError> {
    let start = Instant::now();
    let checks = lattice_checks(config, config.extra_glue);
    Ok(Report::new(config, checks, start))
}

fn parse_hex(field: BinaryField, s: &str) -> Result<Gf, ConfigError> {
    let t = s.trim();
    let t = if t.starts_with("0x") || t.starts_with("0b") { t.to_string() } else { format!("0x{t}") };
    Ok(field.parse(&t)?)
}

/// Seeded pairs of nonzero elements with `r³ ≠ s³`.
pub fn sample_pairs(field: BinaryField, count: usize, seed: u64) -> Result<Vec<(Gf, Gf)>, ConfigError> {
    if field.order() <= 4 {
        return Err(ConfigError::NoSamplePairs(field.k()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let r = field.elem(rng.gen_range(1..field.order()))?;
        let s = field.elem(rng.gen_range(1..field.order()))?;
        if r.pow(3) != s.pow(3) {
            out.push((r, s));
        }
    }
    Ok(out)
}

fn surface_pairs(config: &RunConfig, field: BinaryField) -> Result<Vec<(Gf, Gf)>, ConfigError> {
    match &config.params {
        Params::Fixed { r, s } => {
            let (r, s) = (parse_hex(field, r)?, parse_hex(field, s)?);
            if (r.is_zero() || s.is_zero()) && !config.allow_degenerate {
                return Err(ConfigError::Degenerate);
            }
            Ok(vec![(r, s)])
        }
        Params::Sampled { samples, seed } => {
            if *samples == 0 {
                return Err(ConfigError::NoSamples);
            }
            sample_pairs(field, *samples, *seed)
        }
    }
}

fn surface_check(name: &str, r: Gf, s: Gf) -> CheckResult {
    if r.is_zero() || s.is_zero() {
        let g = schroeer_g(r, s);
        let witness = match singularity_report(&g) {
            Ok(rep) => json!({ "degenerate": true, "polynomial": g, "singularities": rep }),
            Err(e) => json!({ "degenerate": true, "polynomial": g, "singular_locus": e.to_string() }),
        };
        return check(name, true, format!("r = {r}, s = {s}: excluded parameters, reported only"), witness);
    }
    match verify_configuration(r, s) {
        Ok(rep) => {
            let sing = &rep.singularities;
            let summary = format!(
                "r = {r}, s = {s}: {} points ({} D4 + {} A1), Milnor {}, {} splitting lines, M splits: {}",
                sing.points.len(),
                sing.d4,
                sing.a1,
                rep.total_milnor.map_or("undefined".to_string(), |m| m.to_string()),
                rep.splitting_lines.len(),
                rep.extra_line_splits
            );
            check(name, rep.passed, summary, json!({ "polynomial": schroeer_g(r, s), "configuration": rep }))
        }
        Err(e) => failed(name, e),
    }
}

fn dichotomy_check() -> CheckResult {
    let f = BinaryField::standard(4).expect("GF(16)");
    match dichotomy_scan(f) {
        Ok(rep) => check(
            "dichotomy_gf16",
            rep.holds,
            format!(
                "{} pairs: extra line in {} cases, r³ = s³ in {} cases, mismatches {}",
                rep.pairs,
                rep.with_extra_line,
                rep.with_r3_equals_s3,
                rep.mismatches.len()
            ),
            &rep,
        ),
        Err(e) => failed("dichotomy_gf16", e),
    }
}

fn random_cubic(field: BinaryField, rng: &mut ChaCha8Rng) -> HomPoly {
    let mut terms = Vec::new();
    for a in 0..=3u32 {
        for b in 0..=3 - a {
            terms.push(([a, b, 3 - a - b], field.elem(rng.gen_range(0..field.order())).expect("in range")));
        }
    }
    HomPoly::from_terms(field, 3, terms).expect("cubic exponents")
}

fn recognition_checks(config: &RunConfig, field: BinaryField) -> Vec<CheckResult> {
    let mut out = Vec::new();
    if let Some(g) = &config.recognize {
        out.push(match recognize(g) {
            Ok(rec) => check(
                "recognize_input",
                true,
                format!("t = {} (identity frame: {}, orbit size {})", rec.t, rec.identity_frame, rec.orbit.len()),
                json!({ "input": g, "recognition": rec }),
            ),
            Err(e) => failed("recognize_input", e),
        });
        return out;
    }
    let (count, seed) = match &config.params {
        Params::Sampled { samples, seed } => (*samples, *seed),
        Params::Fixed { .. } => (20, 1),
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x7265636f);
    let mut rows = Vec::new();
    let mut ok = true;
    for _ in 0..count {
        let t = field.elem(rng.gen_range(1..field.order())).expect("in range");
        let g = normal_form(t);
        let gamma = random_cubic(field, &mut rng);
        let shifted = g.try_add(&gamma.square()).expect("same degree");
        let plain = recognize_normal_form(&g, None).ok();
        let with_square = recognize_normal_form(&shifted, None).ok();
        ok &= plain == Some(t) && with_square == Some(t);
        rows.push(json!({ "t": t, "gamma": gamma, "recognized": plain, "recognized_with_square": with_square }));
    }
    out.push(check("recognition_round_trip", ok, format!("{count} values of t recovered from the normal form with and without a square added"), rows));

    let pairs = match &config.params {
        Params::Fixed { r, s } => match (parse_hex(field, r), parse_hex(field, s)) {
            (Ok(r), Ok(s)) if !r.is_zero() && !s.is_zero() => vec![(r, s)],
            _ => Vec::new(),
        },
        Params::Sampled { .. } => {
            let mut v = Vec::new();
            while v.len() < 3 {
                let s = field.elem(rng.gen_range(2..field.order())).expect("in range");
                if s.pow(3) != field.one() {
                    v.push((field.one(), s));
                }
            }
            v
        }
    };
    for (i, (r, s)) in pairs.into_iter().enumerate() {
        out.push(recognition_pipeline_check(&format!("recognition_pipeline_{i}"), r, s));
    }
    out
}

/// Recognizes `G_{r,s}`, then checks `Y_{t,1}` and compares configurations.
pub fn recognition_pipeline_check(name: &str, r: Gf, s: Gf) -> CheckResult {
    let g = schroeer_g(r, s);
    let run = || -> Result<(Value, bool, String), crate::char2::schroeer::SurfaceError> {
        let rec = recognize(&g)?;
        let t = rec.t;
        let y = schroeer_g(t, t.field().one());
        let degenerate_t = t.pow(3) == t.field().one();
        let config_y = verify_configuration(t, t.field().one())?;
        let iso = Configuration::of(&g)?.isomorphic(&Configuration::of(&y)?);
        let ok = iso && (config_y.passed || degenerate_t);
        let summary = format!("G_{{{r},{s}}} gives t = {t}; Y_{{t,1}} configuration check {}, isomorphic {}", config_y.passed, iso);
        Ok((json!({ "r": r, "s": s, "recognition": rec, "y_t1": y, "y_t1_passed": config_y.passed, "isomorphic": iso }), ok, summary))
    };
    match run() {
        Ok((w, ok, summary)) => check(name, ok, summary, w),
        Err(e) => failed(name, e),
    }
}

fn line_form(field: BinaryField, c: [u32; 3]) -> HomPoly {
    HomPoly::linear(c.map(|x| field.elem(x % field.order()).expect("reduced")))
}

/// Covers `w² + Cw + G` with `G = Γ² + C·K`, for several shapes of `C`.
pub fn separable_examples(seed: u64) -> Vec<(String, SeparableCover)> {
    let f = BinaryField::standard(4).expect("GF(16)");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let l1 = line_form(f, [1, 0, 0]);
    let l2 = line_form(f, [0, 1, 3]);
    let l3 = line_form(f, [5, 7, 1]);
    let x = HomPoly::variable(f, 0);
    let y = HomPoly::variable(f, 1);
    let z = HomPoly::variable(f, 2);
    let conic = x.mul(&z).try_add(&y.square()).expect("quadrics");
    let nodal = y.square().mul(&z).try_add(&x.pow(3)).and_then(|c| c.try_add(&x.square().mul(&z))).expect("cubics");
    let shapes = vec![
        ("three lines", l1.mul(&l2).mul(&l3)),
        ("double line", l1.square().mul(&l2)),
        ("line and conic", l3.mul(&conic)),
        ("triple line", l2.pow(3)),
        ("nodal cubic", nodal),
    ];
    shapes
        .into_iter()
        .map(|(name, c)| {
            let gamma = random_cubic(f, &mut rng);
            let k = random_cubic(f, &mut rng);
            let g = gamma.square().try_add(&c.mul(&k)).expect("sextic");
            (name.to_string(), SeparableCover::new(c, g).expect("degrees"))
        })
        .collect()
}

fn separable_check(seed: u64) -> CheckResult {
    let mut rows = Vec::new();
    let mut ok = true;
    for (name, cover) in separable_examples(seed) {
        match cover.non_reduced_lines() {
            Ok(rep) => {
                ok &= rep.passed;
                rows.push(json!({ "shape": name, "c": cover.c, "g": cover.g, "lines": rep.lines, "count": rep.count, "passed": rep.passed }));
            }
            Err(e) => return failed("separable_non_reduced_lines", e),
        }
    }
    let counts: Vec<String> = rows.iter().map(|r| r["count"].to_string()).collect();
    check("separable_non_reduced_lines", ok, format!("non-reduced splitting line counts {} (each divides C)", counts.join(", ")), rows)
}

fn surface_checks(config: &RunConfig) -> Result<Vec<CheckResult>, ConfigError> {
    let field = config.field()?;
    if let Some(g) = &config.recognize {
        if g.field() != field || g.degree() != 6 {
            return Err(ConfigError::RecognizeInput { k: field.k(), got: g.field().k(), degree: g.degree() });
        }
    }
    let pairs = surface_pairs(config, field)?;
    let mut checks = Vec::new();
    for (i, (r, s)) in pairs.iter().enumerate() {
        let name = if pairs.len() == 1 { "surface".to_string() } else { format!("surface_sample_{i:02}") };
        checks.push(surface_check(&name, *r, *s));
    }
    checks.push(dichotomy_check());
    checks.extend(recognition_checks(config, field));
    let seed = match config.params {
        Params::Sampled { seed, .. } => seed,
        Params::Fixed { .. } => 1,
    };
    checks.push(separable_check(seed));
    Ok(checks)
}

pub fn cmd_surface(config: &RunConfig) -> Result<Report, ConfigError> {
    let start = Instant::now();
    let checks = surface_checks(config)?;
    Ok(Report::new(config, checks, start))
}

pub fn cmd_all(config: &RunConfig) -> Result<Report, ConfigError> {
    let start = Instant::now();
    let surface = surface_checks(config)?;
    let mut checks = lattice_checks(config, Some(config.extra_glue.unwrap_or(CubeRoot::One)));
    checks.extend(surface);
    Ok(Report::new(config, checks, start))
}

pub fn run(config: &RunConfig) -> Result<Report, ConfigError> {
    match config.command {
        Command::Lattice => cmd_lattice(config),
        Command::Surface => cmd_surface(config),
        Command::All => cmd_all(config),
    }
}

/// Exit status for a finished run: 0 if every check passed, 1 otherwise.
pub fn exit_code(report: &Report) -> i32 {
    if report.passed {
        0
    } else {
        1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lattice_config() -> RunConfig {
        RunConfig { command: Command::Lattice, ..RunConfig::default() }
    }

    #[test]
    fn dual_basis_matches() {
        assert!(dual_basis_check().passed);
    }

    #[test]
    fn lattice_report_passes() {
        let rep = cmd_lattice(&lattice_config()).unwrap();
        assert!(rep.passed, "{}", rep.to_text());
        assert!(rep.check("overlattice_extra_glue").is_none());
        let w = &rep.check("h_perp_root_type").unwrap().witness;
        assert_eq!(w["root_type"], "4D4+5A1");
    }

    #[test]
    fn extra_glue_gives_sigma_one() {
        let cfg = RunConfig { extra_glue: Some(CubeRoot::Omega), ..lattice_config() };
        let rep = cmd_lattice(&cfg).unwrap();
        let c = rep.check("overlattice_extra_glue").unwrap();
        assert!(c.passed, "{}", c.summary);
        assert_eq!(c.witness["summary"]["sigma"], 1);
    }

    #[test]
    fn corrupt_glue_fails_with_witness() {
        let cfg = RunConfig { inject_corrupt_glue: true, ..lattice_config() };
        let rep = cmd_lattice(&cfg).unwrap();
        assert!(!rep.passed);
        let c = rep.check("overlattice_sigma2").unwrap();
        assert!(!c.passed);
        assert!(c.witness["glue_vectors"].is_array());
        assert!(c.witness["error"].is_string());
        assert_eq!(exit_code(&rep), 1);
    }

    #[test]
    fn surface_fixed_parameters() {
        let cfg = RunConfig {
            command: Command::Surface,
            k: 4,
            params: Params::Fixed { r: "1".into(), s: "1".into() },
            ..RunConfig::default()
        };
        let rep = cmd_surface(&cfg).unwrap();
        assert!(rep.passed, "{}", rep.to_text());
        assert_eq!(rep.check("surface").unwrap().witness["configuration"]["extra_line_splits"], true);
    }

    #[test]
    fn config_errors() {
        let cfg = RunConfig { command: Command::Surface, params: Params::Fixed { r: "0".into(), s: "1".into() }, ..RunConfig::default() };
        assert_eq!(cmd_surface(&cfg).unwrap_err(), ConfigError::Degenerate);
        let cfg = RunConfig { allow_degenerate: true, k: 4, ..cfg };
        let rep = cmd_surface(&cfg).unwrap();
        assert_eq!(rep.check("surface").unwrap().witness["degenerate"], true);
        let cfg = RunConfig { command: Command::Surface, k: 3, ..RunConfig::default() };
        assert!(cmd_surface(&cfg).is_err());
        let cfg = RunConfig { command: Command::Surface, params: Params::Sampled { samples: 0, seed: 1 }, ..RunConfig::default() };
        assert_eq!(cmd_surface(&cfg).unwrap_err(), ConfigError::NoSamples);
    }

    #[test]
    fn separable_examples_pass() {
        let c = separable_check(5);
        assert!(c.passed, "{}", c.summary);
        let counts: Vec<u64> = c.witness.as_array().unwrap().iter().map(|r| r["count"].as_u64().unwrap()).collect();
        assert_eq!(counts, vec![3, 2, 1, 1, 0]);
    }

    #[test]
    fn sampling_is_seeded() {
        let f = BinaryField::standard(8).unwrap();
        assert_eq!(sample_pairs(f, 5, 9).unwrap(), sample_pairs(f, 5, 9).unwrap());
        assert!(sample_pairs(f, 20, 1).unwrap().iter().all(|(r, s)| !r.is_zero() && r.pow(3) != s.pow(3)));
    }
}
