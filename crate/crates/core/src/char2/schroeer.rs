//! The surfaces `Y_{r,s}: w² = x₂[x₀(x₁⁴ + s²x₁²x₂²) + x₁(x₀⁴ + r²x₀²x₂²)]`,
//! their configuration of singular points and splitting lines, and
//! recognition of the normal form `xyz(t²yz² + xz² + y³ + x³)`.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;
use thiserror::Error;

use super::field::{BinaryField, FieldError, Gf};
use super::plane::{
    is_splitting, singularity_report, splitting_lines, transversality_check, Line, PlaneError, ProjPoint,
    SingularityReport, SingularityType, SplittingCertificate, TransversalityRow,
};
use super::poly::{HomPoly, PolyError};
use crate::glue::{CubeRoot, LineLabel, P_LABELS, Q_LABELS};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SurfaceError {
    #[error("GF(2^{0}) has no primitive cube root of unity")]
    NoCubeRoots(u32),
    #[error("r and s must be nonzero")]
    Degenerate,
    #[error("degenerate frame: {0}")]
    DegenerateFrame(&'static str),
    #[error("configuration does not have the expected shape: {0}")]
    Shape(String),
    #[error("normal form pattern violated: {0}")]
    Pattern(String),
    #[error(transparent)]
    Plane(#[from] PlaneError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Field(#[from] FieldError),
}

pub type Mat3 = [[Gf; 3]; 3];

pub fn schroeer_g(r: Gf, s: Gf) -> HomPoly {
    let one = r.field().one();
    HomPoly::from_terms(r.field(), 6, [([1, 4, 1], one), ([1, 2, 3], s.square()), ([4, 1, 1], one), ([2, 1, 3], r.square())])
        .expect("sextic exponents")
}

/// `xyz(t²yz² + xz² + y³ + x³)`, which is `G_{1,t}`.
pub fn normal_form(t: Gf) -> HomPoly {
    schroeer_g(t.field().one(), t)
}

#[derive(Clone, Debug, Serialize)]
pub struct TablePoint {
    pub label: String,
    pub point: ProjPoint,
    pub expected: SingularityType,
}

fn omega(field: BinaryField) -> Result<Gf, SurfaceError> {
    field.omega().ok_or(SurfaceError::NoCubeRoots(field.k()))
}

pub fn cube_root(field: BinaryField, c: CubeRoot) -> Result<Gf, SurfaceError> {
    let w = omega(field)?;
    Ok(match c {
        CubeRoot::One => field.one(),
        CubeRoot::Omega => w,
        CubeRoot::OmegaBar => w.square(),
    })
}

/// The nine points: `p(αβ) = [αr : βs : 1]` and `q(c) = [1 : c : 0]`, `q(∞) = [0:1:0]`.
pub fn table_points(r: Gf, s: Gf) -> Result<Vec<TablePoint>, SurfaceError> {
    let f = r.field();
    let (z, one) = (f.zero(), f.one());
    let w = omega(f)?;
    let bit = |b: char, x: Gf| if b == '1' { x } else { z };
    let mut out = Vec::with_capacity(9);
    for p in P_LABELS {
        let mut ch = p.chars();
        let (a, b) = (ch.next().unwrap_or('0'), ch.next().unwrap_or('0'));
        out.push(TablePoint {
            label: format!("p({p})"),
            point: ProjPoint::new([bit(a, r), bit(b, s), one])?,
            expected: SingularityType::D4,
        });
    }
    let q_coords = [[one, z, z], [one, one, z], [one, w, z], [one, w.square(), z], [z, one, z]];
    for (q, c) in Q_LABELS.iter().zip(q_coords) {
        out.push(TablePoint { label: format!("q({q})"), point: ProjPoint::new(c)?, expected: SingularityType::A1 });
    }
    Ok(out)
}

pub fn table_lines(r: Gf, s: Gf) -> Result<Vec<(LineLabel, Line)>, SurfaceError> {
    let f = r.field();
    let (z, one) = (f.zero(), f.one());
    Ok(vec![
        (LineLabel::Infinity, Line::new([z, z, one])?),
        (LineLabel::ZeroStar, Line::new([one, z, z])?),
        (LineLabel::OneStar, Line::new([one, z, r])?),
        (LineLabel::StarZero, Line::new([z, one, z])?),
        (LineLabel::StarOne, Line::new([z, one, s])?),
    ])
}

/// The points drawn on each line of the configuration.
pub fn drawn_points(label: LineLabel) -> Vec<&'static str> {
    match label {
        LineLabel::Infinity => vec!["q(0)", "q(1)", "q(ω)", "q(ω̄)", "q(∞)"],
        LineLabel::ZeroStar => vec!["p(00)", "p(01)", "q(∞)"],
        LineLabel::OneStar => vec!["p(10)", "p(11)", "q(∞)"],
        LineLabel::StarZero => vec!["p(00)", "p(10)", "q(0)"],
        LineLabel::StarOne => vec!["p(01)", "p(11)", "q(0)"],
    }
}

/// `M = {s·x₀ + r·x₁ = 0}`, the line through `p(00)` and `p(11)`.
pub fn extra_line(r: Gf, s: Gf) -> Result<Line, SurfaceError> {
    Ok(Line::new([s, r, r.field().zero()])?)
}

#[derive(Clone, Debug, Serialize)]
pub struct LabeledPoint {
    pub label: String,
    pub point: ProjPoint,
    pub expected: SingularityType,
    pub found: Option<SingularityType>,
}

#[derive(Clone, Debug, Serialize)]
pub struct IncidenceRow {
    pub label: LineLabel,
    pub line: Line,
    pub expected: Vec<String>,
    pub found: Vec<String>,
    pub certificate: Option<SplittingCertificate>,
    pub certificate_verified: bool,
    pub ok: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct FoundLine {
    pub line: Line,
    pub label: Option<String>,
    pub singular_points: Vec<String>,
    pub certificate_verified: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct ConfigurationReport {
    pub r: Gf,
    pub s: Gf,
    pub singularities: SingularityReport,
    pub points: Vec<LabeledPoint>,
    pub points_match_table: bool,
    pub types_ok: bool,
    pub total_milnor: Option<u32>,
    /// A splitting line through all five A1 points.
    pub a1_line: Option<Line>,
    pub incidences: Vec<IncidenceRow>,
    pub incidences_ok: bool,
    pub splitting_lines: Vec<FoundLine>,
    pub all_certificates_verified: bool,
    pub extra_line: Line,
    pub extra_line_splits: bool,
    pub r3_equals_s3: bool,
    pub transversality: Vec<TransversalityRow>,
    pub transversality_ok: bool,
    pub passed: bool,
}

fn label_of(points: &[TablePoint], p: &ProjPoint) -> Option<String> {
    points.iter().find(|t| t.point == *p).map(|t| t.label.clone())
}

/// Checks the singular points, their types and the incidences of the five
/// labeled splitting lines, and records every rational splitting line.
pub fn verify_configuration(r: Gf, s: Gf) -> Result<ConfigurationReport, SurfaceError> {
    if r.is_zero() || s.is_zero() {
        return Err(SurfaceError::Degenerate);
    }
    let g = schroeer_g(r, s);
    let table = table_points(r, s)?;
    let sing = singularity_report(&g)?;

    let points: Vec<LabeledPoint> = table
        .iter()
        .map(|t| LabeledPoint { label: t.label.clone(), point: t.point, expected: t.expected, found: sing.kind_of(&t.point) })
        .collect();
    let found_set: BTreeSet<ProjPoint> = sing.points.iter().map(|p| p.point).collect();
    let table_set: BTreeSet<ProjPoint> = table.iter().map(|t| t.point).collect();
    let points_match_table = found_set == table_set && sing.points.len() == 9;
    let types_ok = points.iter().all(|p| p.found == Some(p.expected)) && sing.d4 == 4 && sing.a1 == 5 && sing.other == 0;

    let lines = splitting_lines(&g)?;
    let mut certs = Vec::with_capacity(lines.len());
    let mut splitting = Vec::with_capacity(lines.len());
    let labeled = table_lines(r, s)?;
    for l in &lines {
        let cert = is_splitting(&g, l)?;
        let verified = cert.as_ref().is_some_and(|c| c.verify(&g));
        let label = labeled.iter().find(|(_, m)| m == l).map(|(lab, _)| format!("L({lab})"));
        let on: Vec<String> = sing.points.iter().filter(|p| l.contains(&p.point)).filter_map(|p| label_of(&table, &p.point)).collect();
        splitting.push(FoundLine { line: *l, label, singular_points: on, certificate_verified: verified });
        certs.extend(cert);
    }
    let all_certificates_verified = splitting.iter().all(|l| l.certificate_verified) && certs.len() == lines.len();

    let a1_points = sing.points_of(SingularityType::A1);
    let a1_line = lines.iter().copied().find(|l| a1_points.len() == 5 && a1_points.iter().all(|p| l.contains(p)));

    let mut incidences = Vec::with_capacity(5);
    for (label, line) in &labeled {
        let certificate = is_splitting(&g, line)?;
        let certificate_verified = certificate.as_ref().is_some_and(|c| c.verify(&g));
        let mut expected: Vec<String> = drawn_points(*label).into_iter().map(String::from).collect();
        expected.sort();
        let mut found: Vec<String> =
            sing.points.iter().filter(|p| line.contains(&p.point)).map(|p| label_of(&table, &p.point).unwrap_or_else(|| p.point.to_string())).collect();
        found.sort();
        let ok = certificate_verified && expected == found && lines.contains(line);
        incidences.push(IncidenceRow { label: *label, line: *line, expected, found, certificate, certificate_verified, ok });
    }
    let incidences_ok = incidences.iter().all(|i| i.ok);

    let extra = extra_line(r, s)?;
    let extra_line_splits = lines.contains(&extra);
    let r3_equals_s3 = r.pow(3) == s.pow(3);

    let transversality = transversality_check(&certs, &sing)?;
    let transversality_ok = transversality.iter().all(|t| t.consistent);

    let passed = points_match_table
        && types_ok
        && sing.total_milnor == Some(21)
        && a1_line == Some(labeled[0].1)
        && incidences_ok
        && all_certificates_verified
        && transversality_ok
        && extra_line_splits == r3_equals_s3;
    Ok(ConfigurationReport {
        r,
        s,
        total_milnor: sing.total_milnor,
        singularities: sing,
        points,
        points_match_table,
        types_ok,
        a1_line,
        incidences,
        incidences_ok,
        splitting_lines: splitting,
        all_certificates_verified,
        extra_line: extra,
        extra_line_splits,
        r3_equals_s3,
        transversality,
        transversality_ok,
        passed,
    })
}

/// Singular points with types and the splitting lines through them.
#[derive(Clone, Debug, Serialize)]
pub struct Configuration {
    pub points: Vec<(ProjPoint, SingularityType)>,
    pub lines: Vec<Line>,
}

impl Configuration {
    pub fn of(g: &HomPoly) -> Result<Self, SurfaceError> {
        let sing = singularity_report(g)?;
        let lines = splitting_lines(g)?;
        Ok(Self { points: sing.points.iter().map(|p| (p.point, p.kind)).collect(), lines })
    }

    fn signature(&self, perm: &[usize]) -> Vec<(SingularityType, Vec<usize>)> {
        let mut sig: Vec<(SingularityType, Vec<usize>)> = self
            .points
            .iter()
            .map(|(p, k)| {
                let mut on: Vec<usize> = (0..self.lines.len()).filter(|&i| self.lines[i].contains(p)).map(|i| perm[i]).collect();
                on.sort_unstable();
                (*k, on)
            })
            .collect();
        sig.sort();
        sig
    }

    /// Some relabeling of lines matches points and incidences.
    pub fn isomorphic(&self, other: &Configuration) -> bool {
        let n = self.lines.len();
        if n != other.lines.len() || self.points.len() != other.points.len() || n > 8 {
            return false;
        }
        let identity: Vec<usize> = (0..n).collect();
        let target = other.signature(&identity);
        let mut perm = identity;
        loop {
            if self.signature(&perm) == target {
                return true;
            }
            if !next_permutation(&mut perm) {
                return false;
            }
        }
    }
}

fn next_permutation(p: &mut [usize]) -> bool {
    let Some(i) = (1..p.len()).rev().find(|&i| p[i - 1] < p[i]) else { return false };
    let j = (i..p.len()).rev().find(|&j| p[j] > p[i - 1]).expect("pivot");
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

fn det3(m: &Mat3) -> Gf {
    m[0][0] * (m[1][1] * m[2][2] + m[1][2] * m[2][1]) + m[0][1] * (m[1][0] * m[2][2] + m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] + m[1][1] * m[2][0])
}

pub fn invert3(m: &Mat3) -> Option<Mat3> {
    let d = det3(m);
    let inv = d.inv().ok()?;
    let mut out = [[d.field().zero(); 3]; 3];
    for (i, row) in out.iter_mut().enumerate() {
        for (j, x) in row.iter_mut().enumerate() {
            let rows: Vec<usize> = (0..3).filter(|&a| a != j).collect();
            let cols: Vec<usize> = (0..3).filter(|&b| b != i).collect();
            let minor = m[rows[0]][cols[0]] * m[rows[1]][cols[1]] + m[rows[0]][cols[1]] * m[rows[1]][cols[0]];
            *x = minor * inv;
        }
    }
    Some(out)
}

fn apply(m: &Mat3, v: &[Gf; 3]) -> [Gf; 3] {
    std::array::from_fn(|i| (0..3).map(|j| m[i][j] * v[j]).sum())
}

/// Names the nine points of an abstract configuration.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Labeling {
    pub q_inf: ProjPoint,
    pub q0: ProjPoint,
    pub q1: ProjPoint,
    pub p00: ProjPoint,
    pub p01: ProjPoint,
    pub p10: ProjPoint,
    pub p11: ProjPoint,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Frame {
    /// Columns send the coordinate points to `q(0)`, `q(∞)`, `p(00)`.
    pub matrix: Mat3,
    pub t: Gf,
}

impl Frame {
    pub fn is_identity(&self) -> bool {
        let m = &self.matrix;
        let d = m[0][0];
        !d.is_zero() && (0..3).all(|i| (0..3).all(|j| m[i][j] == if i == j { d } else { d.field().zero() }))
    }

    pub fn transform(&self, g: &HomPoly) -> HomPoly {
        g.substitute(&self.matrix)
    }
}

/// The transformation taking `q(0), q(∞), p(00), q(1), p(10)` to
/// `[1:0:0], [0:1:0], [0:0:1], [1:1:0], [1:0:1]`; `p(01)` then lands on `[0:t:1]`.
pub fn normalize_frame(l: &Labeling) -> Result<Frame, SurfaceError> {
    let (q0, qi, p00) = (l.q0.coords(), l.q_inf.coords(), l.p00.coords());
    let t_mat: Mat3 = std::array::from_fn(|i| [q0[i], qi[i], p00[i]]);
    let t_inv = invert3(&t_mat).ok_or(SurfaceError::DegenerateFrame("q(0), q(∞), p(00) are collinear"))?;
    let [a, b, c3] = apply(&t_inv, l.q1.coords());
    if !c3.is_zero() || a.is_zero() || b.is_zero() {
        return Err(SurfaceError::DegenerateFrame("q(1) is not on the line q(0)q(∞)"));
    }
    let [c, b2, d] = apply(&t_inv, l.p10.coords());
    if !b2.is_zero() || c.is_zero() || d.is_zero() {
        return Err(SurfaceError::DegenerateFrame("p(10) is not on the line q(0)p(00)"));
    }
    let e = a * d / c;
    let matrix: Mat3 = std::array::from_fn(|i| [t_mat[i][0] * a, t_mat[i][1] * b, t_mat[i][2] * e]);
    let m_inv = invert3(&matrix).ok_or(SurfaceError::DegenerateFrame("singular frame"))?;
    let y = apply(&m_inv, l.p01.coords());
    if !y[0].is_zero() || y[1].is_zero() || y[2].is_zero() {
        return Err(SurfaceError::DegenerateFrame("p(01) does not map to [0:t:1]"));
    }
    Ok(Frame { matrix, t: y[1] / y[2] })
}

/// Monomials that vanish in the normal form after dropping squares.
pub const NORMAL_FORM_ZEROS: [[u32; 3]; 14] = [
    [0, 1, 5],
    [0, 3, 3],
    [0, 5, 1],
    [1, 0, 5],
    [3, 0, 3],
    [5, 0, 1],
    [1, 5, 0],
    [3, 3, 0],
    [5, 1, 0],
    [1, 3, 2],
    [1, 1, 4],
    [3, 1, 2],
    [2, 3, 1],
    [3, 2, 1],
];

/// Extracts `t` from a frame-normalized sextic.
pub fn recognize_normal_form(g: &HomPoly, frame_t: Option<Gf>) -> Result<Gf, SurfaceError> {
    if g.degree() != 6 {
        return Err(SurfaceError::Pattern(format!("degree {}", g.degree())));
    }
    let reduced = g.delete_even();
    let c411 = reduced.coeff([4, 1, 1]);
    if c411.is_zero() {
        return Err(SurfaceError::Pattern("G411 = 0".into()));
    }
    let h = reduced.scale(c411.inv()?);
    for e in NORMAL_FORM_ZEROS {
        if !h.coeff(e).is_zero() {
            return Err(SurfaceError::Pattern(format!("G{}{}{} ≠ 0", e[0], e[1], e[2])));
        }
    }
    let (g123, g141, g213, g411) = (h.coeff([1, 2, 3]), h.coeff([1, 4, 1]), h.coeff([2, 1, 3]), h.coeff([4, 1, 1]));
    if g141 != g411 {
        return Err(SurfaceError::Pattern("G141 ≠ G411".into()));
    }
    if g213 != g411 {
        return Err(SurfaceError::Pattern("G213 ≠ G411".into()));
    }
    let t = (g123 / g141).sqrt();
    if t.is_zero() {
        return Err(SurfaceError::Pattern("t = 0".into()));
    }
    if g123 != t.square() * g141 {
        return Err(SurfaceError::Pattern("G123 ≠ t²·G141".into()));
    }
    if h != normal_form(t) {
        return Err(SurfaceError::Pattern("reduced G differs from the normal form".into()));
    }
    if let Some(ft) = frame_t {
        if ft != t {
            return Err(SurfaceError::Pattern(format!("frame gives t = {ft}, coefficients give {t}")));
        }
    }
    Ok(t)
}

/// All labelings compatible with the incidences of the configuration.
pub fn labelings(config: &Configuration) -> Result<Vec<Labeling>, SurfaceError> {
    let of = |k| config.points.iter().filter(|(_, t)| *t == k).map(|(p, _)| *p).collect::<Vec<_>>();
    let (a1, d4) = (of(SingularityType::A1), of(SingularityType::D4));
    if a1.len() != 5 || d4.len() != 4 {
        return Err(SurfaceError::Shape(format!("{} A1 and {} D4 points", a1.len(), d4.len())));
    }
    let l_inf = config
        .lines
        .iter()
        .find(|l| a1.iter().all(|p| l.contains(p)))
        .ok_or_else(|| SurfaceError::Shape("no splitting line through the five A1 points".into()))?;
    // For each A1 point, the pairs of D4 points cut out by other splitting lines.
    let pairs_through = |q: &ProjPoint| -> Vec<[ProjPoint; 2]> {
        config
            .lines
            .iter()
            .filter(|l| *l != l_inf && l.contains(q))
            .filter_map(|l| {
                let on: Vec<ProjPoint> = d4.iter().copied().filter(|p| l.contains(p)).collect();
                (on.len() == 2).then(|| [on[0], on[1]])
            })
            .collect()
    };
    let partner = |pairs: &[[ProjPoint; 2]], p: &ProjPoint| pairs.iter().find(|pr| pr.contains(p)).map(|pr| if pr[0] == *p { pr[1] } else { pr[0] });
    let mut out = Vec::new();
    for qi in &a1 {
        let pi = pairs_through(qi);
        if pi.len() != 2 {
            continue;
        }
        for q0 in &a1 {
            if q0 == qi {
                continue;
            }
            let p0 = pairs_through(q0);
            if p0.len() != 2 {
                continue;
            }
            for p00 in &d4 {
                let (Some(p01), Some(p10)) = (partner(&pi, p00), partner(&p0, p00)) else { continue };
                if p01 == p10 {
                    continue;
                }
                let Some(p11) = d4.iter().copied().find(|p| ![*p00, p01, p10].contains(p)) else { continue };
                if partner(&pi, &p10) != Some(p11) || partner(&p0, &p01) != Some(p11) {
                    continue;
                }
                for q1 in &a1 {
                    if q1 == qi || q1 == q0 {
                        continue;
                    }
                    out.push(Labeling { q_inf: *qi, q0: *q0, q1: *q1, p00: *p00, p01, p10, p11 });
                }
            }
        }
    }
    if out.is_empty() {
        return Err(SurfaceError::Shape("no labeling matches the incidences".into()));
    }
    Ok(out)
}

#[derive(Clone, Debug, Serialize)]
pub struct Recognition {
    pub t: Gf,
    pub labeling: Labeling,
    pub frame: Frame,
    pub identity_frame: bool,
    pub labelings_tried: usize,
    /// `t` over every compatible labeling.
    pub orbit: BTreeSet<Gf>,
}

/// Labels the configuration of `G`, normalizes the frame and reads off `t`.
/// The identity frame is preferred when available.
pub fn recognize(g: &HomPoly) -> Result<Recognition, SurfaceError> {
    let config = Configuration::of(g)?;
    let all = labelings(&config)?;
    let mut best: Option<(Labeling, Frame, Gf)> = None;
    let mut orbit = BTreeSet::new();
    let mut first_err = None;
    for l in &all {
        let attempt = normalize_frame(l).and_then(|fr| {
            let t = recognize_normal_form(&fr.transform(g), Some(fr.t))?;
            Ok((fr, t))
        });
        match attempt {
            Ok((fr, t)) => {
                orbit.insert(t);
                let better = best.as_ref().is_none_or(|(_, b, _)| fr.is_identity() && !b.is_identity());
                if better {
                    best = Some((l.clone(), fr, t));
                }
            }
            Err(e) => {
                first_err.get_or_insert(e);
            }
        }
    }
    let (labeling, frame, t) = best.ok_or_else(|| first_err.unwrap_or(SurfaceError::Shape("no labeling".into())))?;
    Ok(Recognition { t, identity_frame: frame.is_identity(), labeling, frame, labelings_tried: all.len(), orbit })
}

#[derive(Clone, Debug, Serialize)]
pub struct DichotomyRow {
    pub r: Gf,
    pub s: Gf,
    pub r3_equals_s3: bool,
    pub extra_line: Option<Line>,
    pub through_q: Option<CubeRoot>,
    pub splitting_line_count: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct DichotomyReport {
    pub k: u32,
    pub pairs: usize,
    pub with_extra_line: usize,
    pub with_r3_equals_s3: usize,
    pub line_counts: BTreeMap<usize, usize>,
    pub mismatches: Vec<DichotomyRow>,
    pub holds: bool,
}

/// For one pair: a splitting line outside the five labeled ones through
/// `p(00)`, `p(11)` and some `q(c)`, `c³ = 1`.
pub fn dichotomy_row(r: Gf, s: Gf) -> Result<DichotomyRow, SurfaceError> {
    let f = r.field();
    let g = schroeer_g(r, s);
    let lines = splitting_lines(&g)?;
    let labeled: Vec<Line> = table_lines(r, s)?.into_iter().map(|(_, l)| l).collect();
    let p00 = ProjPoint::new([f.zero(), f.zero(), f.one()])?;
    let p11 = ProjPoint::new([r, s, f.one()])?;
    let mut found = (None, None);
    for l in lines.iter().filter(|l| !labeled.contains(l)) {
        if !(l.contains(&p00) && l.contains(&p11)) {
            continue;
        }
        for c in CubeRoot::ALL {
            let q = ProjPoint::new([f.one(), cube_root(f, c)?, f.zero()])?;
            if l.contains(&q) && is_splitting(&g, l)?.is_some_and(|cert| cert.verify(&g)) {
                found = (Some(*l), Some(c));
            }
        }
    }
    Ok(DichotomyRow {
        r,
        s,
        r3_equals_s3: r.pow(3) == s.pow(3),
        extra_line: found.0,
        through_q: found.1,
        splitting_line_count: lines.len(),
    })
}

/// Runs [`dichotomy_row`] over all pairs of nonzero field elements.
pub fn dichotomy_scan(field: BinaryField) -> Result<DichotomyReport, SurfaceError> {
    omega(field)?;
    let mut rows = Vec::new();
    for r in field.nonzero() {
        for s in field.nonzero() {
            rows.push(dichotomy_row(r, s)?);
        }
    }
    let mut line_counts = BTreeMap::new();
    for row in &rows {
        *line_counts.entry(row.splitting_line_count).or_insert(0) += 1;
    }
    let mismatches: Vec<DichotomyRow> = rows.iter().filter(|r| r.extra_line.is_some() != r.r3_equals_s3).cloned().collect();
    Ok(DichotomyReport {
        k: field.k(),
        pairs: rows.len(),
        with_extra_line: rows.iter().filter(|r| r.extra_line.is_some()).count(),
        with_r3_equals_s3: rows.iter().filter(|r| r.r3_equals_s3).count(),
        line_counts,
        holds: mismatches.is_empty(),
        mismatches,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn f8() -> BinaryField {
        BinaryField::standard(8).unwrap()
    }

    #[test]
    fn defining_equation() {
        let f = f8();
        let r = f.elem(0x35).unwrap();
        let s = f.elem(0x9c).unwrap();
        let g = schroeer_g(r, s);
        assert!(g.coeff([1, 4, 1]).is_one());
        assert_eq!(g.coeff([1, 2, 3]), s.square());
        assert_eq!(g.coeff([2, 1, 3]), r.square());
        let g0 = schroeer_g(f.zero(), f.zero());
        assert_eq!(g0.len(), 2);
        let t = f.elem(0x17).unwrap();
        let x = HomPoly::variable(f, 0);
        let y = HomPoly::variable(f, 1);
        let z = HomPoly::variable(f, 2);
        let inner = y.mul(&z.square()).scale(t.square()).try_add(&x.mul(&z.square())).unwrap().try_add(&y.pow(3)).unwrap().try_add(&x.pow(3)).unwrap();
        assert_eq!(x.mul(&y).mul(&z).mul(&inner), normal_form(t));
    }

    #[test]
    fn swap_symmetry() {
        let f = f8();
        let r = f.elem(0x35).unwrap();
        let s = f.elem(0x9c).unwrap();
        let z = f.zero();
        let one = f.one();
        let swap = [[z, one, z], [one, z, z], [z, z, one]];
        assert_eq!(schroeer_g(r, s).substitute(&swap), schroeer_g(s, r));
    }

    #[test]
    fn configuration_over_gf256() {
        let f = f8();
        let r = f.elem(0x35).unwrap();
        let s = f.elem(0x9c).unwrap();
        assert_ne!(r.pow(3), s.pow(3));
        let rep = verify_configuration(r, s).unwrap();
        assert!(rep.passed, "{rep:#?}");
        assert_eq!(rep.splitting_lines.len(), 5);
        assert!(!rep.extra_line_splits);
    }

    #[test]
    fn extra_line_when_s_is_omega_r() {
        let f = BinaryField::standard(4).unwrap();
        let r = f.elem(0x6).unwrap();
        let s = r * f.omega().unwrap();
        let rep = verify_configuration(r, s).unwrap();
        assert!(rep.passed);
        assert!(rep.extra_line_splits);
        let m = rep.splitting_lines.iter().find(|l| l.line == rep.extra_line).unwrap();
        assert_eq!(m.singular_points, vec!["p(00)".to_string(), "p(11)".into(), "q(ω)".into()]);
    }

    #[test]
    fn degenerate_parameters() {
        let f = f8();
        assert_eq!(verify_configuration(f.zero(), f.one()).unwrap_err(), SurfaceError::Degenerate);
        let f3 = BinaryField::new(3, 0b1011).unwrap();
        assert!(matches!(table_points(f3.one(), f3.one()), Err(SurfaceError::NoCubeRoots(3))));
    }

    #[test]
    fn frame_of_table_labeling() {
        let f = f8();
        let r = f.elem(0x35).unwrap();
        let s = f.elem(0x9c).unwrap();
        let pts = table_points(r, s).unwrap();
        let get = |n: &str| pts.iter().find(|p| p.label == n).unwrap().point;
        let lab = Labeling { q_inf: get("q(∞)"), q0: get("q(0)"), q1: get("q(1)"), p00: get("p(00)"), p01: get("p(01)"), p10: get("p(10)"), p11: get("p(11)") };
        let fr = normalize_frame(&lab).unwrap();
        assert_eq!(fr.t, s / r);
        let t = recognize_normal_form(&fr.transform(&schroeer_g(r, s)), Some(fr.t)).unwrap();
        assert_eq!(t, s / r);

        let id = normalize_frame(&Labeling {
            p10: ProjPoint::new([f.one(), f.zero(), f.one()]).unwrap(),
            ..lab.clone()
        })
        .unwrap();
        assert!(id.is_identity());
        assert_eq!(id.t, s);

        let collinear = Labeling { p00: get("q(1)"), ..lab };
        assert!(matches!(normalize_frame(&collinear), Err(SurfaceError::DegenerateFrame(_))));
    }

    #[test]
    fn recognition_of_normal_form_and_square_shift() {
        let f = f8();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..5 {
            let t = f.elem(rng.gen_range(2..256)).unwrap();
            let g = normal_form(t);
            assert_eq!(recognize_normal_form(&g, None).unwrap(), t);
            let gamma = HomPoly::from_terms(
                f,
                3,
                (0..=3u32).flat_map(|a| (0..=3 - a).map(move |b| [a, b, 3 - a - b])).map(|e| (e, f.elem(rng.gen_range(0..256)).unwrap())).collect::<Vec<_>>(),
            )
            .unwrap();
            let shifted = g.try_add(&gamma.square()).unwrap();
            assert_eq!(recognize_normal_form(&shifted, None).unwrap(), t);
            let c = f.elem(rng.gen_range(1..256)).unwrap();
            assert_eq!(recognize_normal_form(&shifted.scale(c), None).unwrap(), t);
        }
        let bad = normal_form(f.elem(5).unwrap()).try_add(&HomPoly::monomial([3, 3, 0], f.one())).unwrap();
        assert!(matches!(recognize_normal_form(&bad, None), Err(SurfaceError::Pattern(_))));
    }

    #[test]
    fn recognize_prefers_identity_frame() {
        let f = BinaryField::standard(4).unwrap();
        let t = f.elem(0x2).unwrap();
        let rec = recognize(&normal_form(t)).unwrap();
        assert_eq!(rec.t, t);
        assert!(rec.identity_frame);
        assert_eq!(rec.labelings_tried, 24);
        assert!(rec.orbit.contains(&t) && rec.orbit.contains(&t.inv().unwrap()));
    }

    #[test]
    fn configurations_are_compared_up_to_relabeling() {
        let f = BinaryField::standard(4).unwrap();
        let a = Configuration::of(&schroeer_g(f.elem(3).unwrap(), f.elem(7).unwrap())).unwrap();
        let b = Configuration::of(&normal_form(f.elem(2).unwrap())).unwrap();
        assert!(a.isomorphic(&b));
        let w = f.omega().unwrap();
        let c = Configuration::of(&schroeer_g(f.one(), w)).unwrap();
        assert!(!a.isomorphic(&c));
    }

    #[test]
    fn dichotomy_over_gf16() {
        let rep = dichotomy_scan(BinaryField::standard(4).unwrap()).unwrap();
        assert_eq!(rep.pairs, 225);
        assert!(rep.holds, "{:?}", rep.mismatches);
        assert_eq!(rep.with_r3_equals_s3, 45);
    }
}
