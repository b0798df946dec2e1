//! Points, lines, singular points and splitting lines of `w² = G` in `P²`.

use std::fmt;

use rayon::prelude::*;
use serde::{Serialize, Serializer};
use thiserror::Error;

use super::field::{BinaryField, FieldError, Gf};
use super::poly::{restrict_dense, Exp, HomPoly, PolyError};

/// A degree-6 `G` has at most 25 isolated singular points.
pub const MAX_ISOLATED_SINGULARITIES: usize = 25;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PlaneError {
    #[error("all coordinates are zero")]
    ZeroPoint,
    #[error("points coincide")]
    SamePoint,
    #[error("{0} singular points found; singular locus is probably not isolated")]
    NonIsolated(usize),
    #[error("field of order {0} is too large for brute-force scans")]
    FieldTooLarge(u32),
    #[error("point {0} is not singular")]
    NotSingular(ProjPoint),
    #[error("expected a sextic, got degree {0}")]
    NotSextic(u32),
    #[error("point {0} is not on the line")]
    NotOnLine(ProjPoint),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Field(#[from] FieldError),
}

fn normalize(mut c: [Gf; 3]) -> Result<[Gf; 3], PlaneError> {
    let j = (0..3).rev().find(|&i| !c[i].is_zero()).ok_or(PlaneError::ZeroPoint)?;
    let inv = c[j].inv()?;
    for x in c.iter_mut() {
        *x *= inv;
    }
    Ok(c)
}

fn cross(a: &[Gf; 3], b: &[Gf; 3]) -> [Gf; 3] {
    [a[1] * b[2] + a[2] * b[1], a[2] * b[0] + a[0] * b[2], a[0] * b[1] + a[1] * b[0]]
}

/// A point of `P²`, scaled so its last nonzero coordinate is 1.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ProjPoint([Gf; 3]);

impl ProjPoint {
    pub fn new(c: [Gf; 3]) -> Result<Self, PlaneError> {
        Ok(Self(normalize(c)?))
    }

    pub fn coords(&self) -> &[Gf; 3] {
        &self.0
    }

    pub fn field(&self) -> BinaryField {
        self.0[0].field()
    }

    /// Index of the coordinate equal to 1.
    pub fn chart(&self) -> usize {
        (0..3).rev().find(|&i| !self.0[i].is_zero()).unwrap_or(2)
    }
}

impl fmt::Display for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}:{}:{}]", self.0[0], self.0[1], self.0[2])
    }
}

impl fmt::Debug for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Serialize for ProjPoint {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.0.serialize(s)
    }
}

/// The line `a₀x₀ + a₁x₁ + a₂x₂ = 0`, scaled like a [`ProjPoint`].
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Line([Gf; 3]);

impl Line {
    pub fn new(c: [Gf; 3]) -> Result<Self, PlaneError> {
        Ok(Self(normalize(c)?))
    }

    pub fn through(p: &ProjPoint, q: &ProjPoint) -> Result<Self, PlaneError> {
        if p == q {
            return Err(PlaneError::SamePoint);
        }
        Self::new(cross(&p.0, &q.0))
    }

    pub fn coeffs(&self) -> &[Gf; 3] {
        &self.0
    }

    pub fn contains(&self, p: &ProjPoint) -> bool {
        (0..3).map(|i| self.0[i] * p.0[i]).sum::<Gf>().is_zero()
    }

    pub fn meet(&self, other: &Line) -> Result<ProjPoint, PlaneError> {
        if self == other {
            return Err(PlaneError::SamePoint);
        }
        ProjPoint::new(cross(&self.0, &other.0))
    }

    pub fn form(&self) -> HomPoly {
        HomPoly::linear(self.0)
    }
}

impl fmt::Display for Line {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = (0..3)
            .filter(|&i| !self.0[i].is_zero())
            .map(|i| if self.0[i].is_one() { format!("x{i}") } else { format!("{}*x{i}", self.0[i]) })
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

impl fmt::Debug for Line {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{self}}}")
    }
}

impl Serialize for Line {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.0.serialize(s)
    }
}

fn check_scan_size(field: BinaryField) -> Result<(), PlaneError> {
    if field.k() > 16 {
        return Err(PlaneError::FieldTooLarge(field.order()));
    }
    Ok(())
}

/// All points of `P²(F)`: `[x:y:1]`, then `[x:1:0]`, then `[1:0:0]`.
pub fn all_points(field: BinaryField) -> Vec<ProjPoint> {
    let mut out = Vec::with_capacity((field.order() as usize).pow(2) + field.order() as usize + 1);
    for y in field.elements() {
        for x in field.elements() {
            out.push(ProjPoint([x, y, field.one()]));
        }
    }
    for x in field.elements() {
        out.push(ProjPoint([x, field.one(), field.zero()]));
    }
    out.push(ProjPoint([field.one(), field.zero(), field.zero()]));
    out
}

/// All lines of `P²(F)`, enumerated like [`all_points`].
pub fn all_lines(field: BinaryField) -> Vec<Line> {
    all_points(field).into_iter().map(|p| Line(p.0)).collect()
}

fn eval_terms(terms: &[(Exp, Gf)], x: &[Gf; 3]) -> Gf {
    let mut acc = x[0].field().zero();
    for (e, c) in terms {
        acc += *c * x[0].pow(u64::from(e[0])) * x[1].pow(u64::from(e[1])) * x[2].pow(u64::from(e[2]));
    }
    acc
}

fn term_list(p: &HomPoly) -> Vec<(Exp, Gf)> {
    p.terms().map(|(e, c)| (*e, *c)).collect()
}

pub fn is_singular(g: &HomPoly, p: &ProjPoint) -> bool {
    (0..3).all(|i| g.partial(i).eval(&p.0).is_zero())
}

/// Rational points where all three formal partials of `G` vanish.
pub fn singular_points(g: &HomPoly) -> Result<Vec<ProjPoint>, PlaneError> {
    check_scan_size(g.field())?;
    let partials: Vec<Vec<(Exp, Gf)>> = (0..3).map(|i| term_list(&g.partial(i))).collect();
    let pts: Vec<ProjPoint> = all_points(g.field())
        .into_par_iter()
        .filter(|p| partials.iter().all(|d| eval_terms(d, &p.0).is_zero()))
        .collect();
    if pts.len() > MAX_ISOLATED_SINGULARITIES {
        return Err(PlaneError::NonIsolated(pts.len()));
    }
    Ok(pts)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum SingularityType {
    A1,
    D4,
    Other,
}

impl SingularityType {
    pub fn milnor(self) -> Option<u32> {
        match self {
            SingularityType::A1 => Some(1),
            SingularityType::D4 => Some(4),
            SingularityType::Other => None,
        }
    }
}

impl fmt::Display for SingularityType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SingularityType::A1 => "A1",
            SingularityType::D4 => "D4",
            SingularityType::Other => "Other",
        })
    }
}

/// Affine local equation `Σ c_{ij} u^i v^j` near a point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalEquation {
    pub terms: Vec<([u32; 2], Gf)>,
}

impl LocalEquation {
    pub fn coeff(&self, e: [u32; 2]) -> Option<Gf> {
        self.terms.iter().find(|(f, _)| *f == e).map(|(_, c)| *c)
    }
}

/// Dehomogenizes at the chart of `p`, moves `p` to the origin and drops
/// every monomial whose exponents are both even.
pub fn local_equation(g: &HomPoly, p: &ProjPoint) -> LocalEquation {
    let f = g.field();
    let j = p.chart();
    let others: Vec<usize> = (0..3).filter(|&i| i != j).collect();
    let mut m = [[f.zero(); 3]; 3];
    m[others[0]][0] = f.one();
    m[others[0]][2] = p.0[others[0]];
    m[others[1]][1] = f.one();
    m[others[1]][2] = p.0[others[1]];
    m[j][2] = f.one();
    let mut terms: Vec<([u32; 2], Gf)> = g
        .substitute(&m)
        .terms()
        .map(|(e, c)| ([e[0], e[1]], *c))
        .filter(|(e, _)| e[0] % 2 == 1 || e[1] % 2 == 1)
        .collect();
    terms.sort_by_key(|(e, _)| (e[0] + e[1], *e));
    LocalEquation { terms }
}

/// Classifies a local equation already reduced modulo squares.
pub fn classify_local(local: &LocalEquation) -> Option<SingularityType> {
    let c = |i: u32, j: u32| local.coeff([i, j]);
    if c(1, 0).is_some() || c(0, 1).is_some() {
        return None;
    }
    if c(1, 1).is_some() {
        return Some(SingularityType::A1);
    }
    let field = local.terms.first().map(|(_, c)| c.field());
    let Some(field) = field else { return Some(SingularityType::Other) };
    let z = field.zero();
    let cubic = [c(0, 3).unwrap_or(z), c(1, 2).unwrap_or(z), c(2, 1).unwrap_or(z), c(3, 0).unwrap_or(z)];
    if cubic_has_three_roots(&cubic) {
        Some(SingularityType::D4)
    } else {
        Some(SingularityType::Other)
    }
}

/// `f = Σ f[i] u^i` (with `v = 1`) has three distinct projective roots.
fn cubic_has_three_roots(f: &[Gf; 4]) -> bool {
    let deg = (0..4).rev().find(|&i| !f[i].is_zero());
    match deg {
        Some(3) => {
            let df = [f[1], f[2] + f[2], f[3] + f[3] + f[3]];
            poly_gcd(f.to_vec(), df.to_vec()).len() == 1
        }
        Some(2) => !f[1].is_zero(),
        _ => false,
    }
}

fn trim(mut a: Vec<Gf>) -> Vec<Gf> {
    while a.last().is_some_and(|c| c.is_zero()) {
        a.pop();
    }
    a
}

fn poly_rem(a: Vec<Gf>, b: &[Gf]) -> Vec<Gf> {
    let mut a = trim(a);
    let lead_inv = b[b.len() - 1].inv().expect("trimmed divisor");
    while a.len() >= b.len() {
        let shift = a.len() - b.len();
        let q = a[a.len() - 1] * lead_inv;
        for (i, bi) in b.iter().enumerate() {
            a[shift + i] += q * *bi;
        }
        a = trim(a);
    }
    a
}

fn poly_gcd(a: Vec<Gf>, b: Vec<Gf>) -> Vec<Gf> {
    let (mut a, mut b) = (trim(a), trim(b));
    while !b.is_empty() {
        let r = poly_rem(a, &b);
        a = b;
        b = r;
    }
    a
}

pub fn classify_singularity(g: &HomPoly, p: &ProjPoint) -> Result<SingularityType, PlaneError> {
    if !is_singular(g, p) {
        return Err(PlaneError::NotSingular(*p));
    }
    classify_local(&local_equation(g, p)).ok_or(PlaneError::NotSingular(*p))
}

#[derive(Clone, Debug, Serialize)]
pub struct SingularPoint {
    pub point: ProjPoint,
    #[serde(rename = "type")]
    pub kind: SingularityType,
}

#[derive(Clone, Debug, Serialize)]
pub struct SingularityReport {
    pub points: Vec<SingularPoint>,
    pub a1: usize,
    pub d4: usize,
    pub other: usize,
    /// `None` when some point is of type `Other`.
    pub total_milnor: Option<u32>,
}

impl SingularityReport {
    pub fn points_of(&self, kind: SingularityType) -> Vec<ProjPoint> {
        self.points.iter().filter(|s| s.kind == kind).map(|s| s.point).collect()
    }

    pub fn kind_of(&self, p: &ProjPoint) -> Option<SingularityType> {
        self.points.iter().find(|s| s.point == *p).map(|s| s.kind)
    }
}

pub fn singularity_report(g: &HomPoly) -> Result<SingularityReport, PlaneError> {
    let mut points = Vec::new();
    for p in singular_points(g)? {
        points.push(SingularPoint { point: p, kind: classify_singularity(g, &p)? });
    }
    let count = |k| points.iter().filter(|s: &&SingularPoint| s.kind == k).count();
    let (a1, d4, other) = (count(SingularityType::A1), count(SingularityType::D4), count(SingularityType::Other));
    let total_milnor = points.iter().map(|s| s.kind.milnor()).sum();
    Ok(SingularityReport { points, a1, d4, other, total_milnor })
}

/// `G = ℓ·Q + Γ²`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SplittingCertificate {
    pub line: Line,
    pub q: HomPoly,
    pub gamma: HomPoly,
}

impl SplittingCertificate {
    pub fn verify(&self, g: &HomPoly) -> bool {
        self.line.form().mul(&self.q).try_add(&self.gamma.square()).is_ok_and(|s| s == *g)
    }
}

pub fn is_square(f: &HomPoly) -> Option<HomPoly> {
    f.sqrt()
}

pub fn is_splitting(g: &HomPoly, line: &Line) -> Result<Option<SplittingCertificate>, PlaneError> {
    let restricted = g.restrict_to_line(&line.form())?;
    let Some(gamma) = is_square(&restricted.form) else { return Ok(None) };
    let q = g.try_add(&gamma.square())?.div_linear(&line.form())?;
    Ok(Some(SplittingCertificate { line: *line, q, gamma }))
}

/// Splitting test through the dense binary restriction: a binary form of
/// even degree is a square iff its odd-index coefficients vanish.
pub fn splits_fast(terms: &[(Exp, Gf)], degree: u32, line: &Line) -> bool {
    match restrict_dense(terms, degree, &line.0) {
        Some(c) => c.iter().skip(1).step_by(2).all(|x| x.is_zero()),
        None => false,
    }
}

/// Every rational splitting line of a sextic, in [`all_lines`] order.
pub fn splitting_lines(g: &HomPoly) -> Result<Vec<Line>, PlaneError> {
    if g.degree() != 6 {
        return Err(PlaneError::NotSextic(g.degree()));
    }
    check_scan_size(g.field())?;
    let terms = term_list(g);
    Ok(all_lines(g.field()).into_par_iter().filter(|l| splits_fast(&terms, 6, l)).collect())
}

/// Same as [`splitting_lines`] but through `restrict_to_line` and `is_square`.
pub fn splitting_lines_slow(g: &HomPoly) -> Result<Vec<Line>, PlaneError> {
    check_scan_size(g.field())?;
    let found: Result<Vec<Option<Line>>, PlaneError> = all_lines(g.field())
        .into_par_iter()
        .map(|l| Ok(is_splitting(g, &l)?.map(|_| l)))
        .collect();
    Ok(found?.into_iter().flatten().collect())
}

/// Multiplicity of `p` as a zero of `f` restricted to `line`; `None` if `f`
/// vanishes on the whole line.
pub fn multiplicity_on_line(f: &HomPoly, line: &Line, p: &ProjPoint) -> Result<Option<u32>, PlaneError> {
    if !line.contains(p) {
        return Err(PlaneError::NotOnLine(*p));
    }
    let restricted = f.restrict_to_line(&line.form())?;
    let j = restricted.eliminated;
    let (a, b) = match j {
        0 => (1, 2),
        1 => (0, 2),
        _ => (0, 1),
    };
    let field = f.field();
    let mut lin = [field.zero(); 3];
    lin[a] = p.0[b];
    lin[b] = p.0[a];
    let lin = HomPoly::linear(lin);
    let mut cur = restricted.form;
    if cur.is_zero() {
        return Ok(None);
    }
    let mut m = 0;
    while let Ok(q) = cur.div_linear(&lin) {
        cur = q;
        m += 1;
    }
    Ok(Some(m))
}

/// One point of the transversality cross-check on a splitting line.
#[derive(Clone, Debug, Serialize)]
pub struct TransversalityRow {
    pub line: Line,
    pub point: ProjPoint,
    pub multiplicity: Option<u32>,
    pub classified: SingularityType,
    pub consistent: bool,
}

/// For each certificate and each singular point on its line: the point is A1
/// iff it is a simple zero of `Q` on the line.
pub fn transversality_check(certs: &[SplittingCertificate], sing: &SingularityReport) -> Result<Vec<TransversalityRow>, PlaneError> {
    let mut rows = Vec::new();
    for c in certs {
        for s in &sing.points {
            if !c.line.contains(&s.point) {
                continue;
            }
            let multiplicity = multiplicity_on_line(&c.q, &c.line, &s.point)?;
            let simple = multiplicity == Some(1);
            rows.push(TransversalityRow {
                line: c.line,
                point: s.point,
                multiplicity,
                classified: s.kind,
                consistent: simple == (s.kind == SingularityType::A1),
            });
        }
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn g_rs(r: Gf, s: Gf) -> HomPoly {
        let one = r.field().one();
        HomPoly::from_terms(r.field(), 6, [([1, 4, 1], one), ([1, 2, 3], s.square()), ([4, 1, 1], one), ([2, 1, 3], r.square())])
            .unwrap()
    }

    fn pt(f: BinaryField, c: [u32; 3]) -> ProjPoint {
        ProjPoint::new(c.map(|x| f.elem(x).unwrap())).unwrap()
    }

    fn local(f: BinaryField, terms: &[([u32; 2], u32)]) -> LocalEquation {
        LocalEquation { terms: terms.iter().map(|(e, c)| (*e, f.elem(*c).unwrap())).collect() }
    }

    #[test]
    fn points_and_lines() {
        let f = BinaryField::standard(4).unwrap();
        assert_eq!(all_points(f).len(), 273);
        let p = pt(f, [3, 5, 7]);
        assert!(p.coords()[2].is_one());
        let q = pt(f, [1, 0, 0]);
        let l = Line::through(&p, &q).unwrap();
        assert!(l.contains(&p) && l.contains(&q));
        assert_eq!(all_points(f).iter().filter(|x| l.contains(x)).count(), 17);
        assert_eq!(Line::through(&p, &p), Err(PlaneError::SamePoint));
        let m = Line::new([f.one(), f.zero(), f.zero()]).unwrap();
        assert!(m.contains(&l.meet(&m).unwrap()));
        assert!(ProjPoint::new([f.zero(); 3]).is_err());
    }

    #[test]
    fn local_classification() {
        let f = BinaryField::standard(4).unwrap();
        assert_eq!(classify_local(&local(f, &[([1, 1], 1), ([3, 3], 1)])), Some(SingularityType::A1));
        assert_eq!(classify_local(&local(f, &[([2, 1], 1), ([1, 2], 1)])), Some(SingularityType::D4));
        assert_eq!(classify_local(&local(f, &[([1, 0], 1)])), None);
        // u³ has a triple root.
        assert_eq!(classify_local(&local(f, &[([3, 0], 1), ([5, 0], 1)])), Some(SingularityType::Other));
        // u²v + v³ = v(u+v)² over the closure.
        assert_eq!(classify_local(&local(f, &[([2, 1], 1), ([0, 3], 1)])), Some(SingularityType::Other));
        // u³ + v³ has three distinct roots.
        assert_eq!(classify_local(&local(f, &[([3, 0], 1), ([0, 3], 1)])), Some(SingularityType::D4));
    }

    #[test]
    fn partial_kills_even_exponent() {
        let f = BinaryField::standard(4).unwrap();
        let g = HomPoly::from_terms(f, 6, [([6, 0, 0], f.one()), ([1, 5, 0], f.one())]).unwrap();
        assert_eq!(g.partial(0), HomPoly::monomial([0, 5, 0], f.one()));
    }

    #[test]
    fn table_points_of_g_1s() {
        let f = BinaryField::standard(4).unwrap();
        let s = f.elem(2).unwrap();
        let one = f.one();
        let w = f.omega().unwrap();
        let g = g_rs(one, s);
        let mut pts = singular_points(&g).unwrap();
        pts.sort();
        let z = f.zero();
        let mut expected: Vec<ProjPoint> = [
            [z, z, one],
            [z, s, one],
            [one, z, one],
            [one, s, one],
            [one, z, z],
            [one, one, z],
            [one, w, z],
            [one, w.square(), z],
            [z, one, z],
        ]
        .into_iter()
        .map(|c| ProjPoint::new(c).unwrap())
        .collect();
        expected.sort();
        assert_eq!(pts, expected);
        let rep = singularity_report(&g).unwrap();
        assert_eq!((rep.d4, rep.a1, rep.other, rep.total_milnor), (4, 5, 0, Some(21)));
    }

    #[test]
    fn singular_points_match_naive_oracle() {
        let f = BinaryField::standard(4).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..5 {
            let mut terms = Vec::new();
            for a in 0..=6u32 {
                for b in 0..=6 - a {
                    if rng.gen_bool(0.3) {
                        terms.push(([a, b, 6 - a - b], f.elem(rng.gen_range(1..16)).unwrap()));
                    }
                }
            }
            let g = HomPoly::from_terms(f, 6, terms).unwrap();
            let naive: Vec<ProjPoint> = all_points(f)
                .into_iter()
                .filter(|p| (0..3).all(|i| g.partial(i).eval(p.coords()).is_zero()))
                .collect();
            match singular_points(&g) {
                Ok(pts) => assert_eq!(pts, naive),
                Err(PlaneError::NonIsolated(n)) => assert_eq!(n, naive.len()),
                Err(e) => panic!("{e}"),
            }
        }
    }

    #[test]
    fn non_isolated_is_reported() {
        let f = BinaryField::standard(4).unwrap();
        let g = HomPoly::monomial([2, 2, 2], f.one());
        assert!(matches!(singular_points(&g), Err(PlaneError::NonIsolated(273))));
    }

    #[test]
    fn certificates() {
        let f = BinaryField::standard(8).unwrap();
        let r = f.elem(0x53).unwrap();
        let s = f.elem(0xca).unwrap();
        let g = g_rs(r, s);
        let z = f.zero();
        let one = f.one();
        let c = is_splitting(&g, &Line::new([z, z, one]).unwrap()).unwrap().unwrap();
        assert!(c.gamma.is_zero());
        assert!(c.verify(&g));

        let l = Line::new([one, z, r]).unwrap();
        let c = is_splitting(&g, &l).unwrap().unwrap();
        assert!(c.verify(&g));
        let x1 = HomPoly::variable(f, 1);
        let x2 = HomPoly::variable(f, 2);
        let on_line = x1.mul(&x2).mul(&x1.try_add(&x2.scale(s)).unwrap()).scale(r.sqrt());
        // Any two lifts differ by a multiple of ℓ.
        assert!(c.gamma.try_add(&on_line).unwrap().div_linear(&l.form()).is_ok());
        let q2 = g.try_add(&on_line.square()).unwrap().div_linear(&l.form()).unwrap();
        assert!(SplittingCertificate { line: l, q: q2, gamma: on_line }.verify(&g));

        let s1 = f.elem(0x1d).unwrap();
        let g1 = g_rs(one, s1);
        assert!(is_splitting(&g1, &Line::new([one, one, z]).unwrap()).unwrap().is_none());
        let bad = SplittingCertificate { line: l, q: c.q.clone(), gamma: c.gamma.scale(s) };
        assert!(!bad.verify(&g));
    }

    #[test]
    fn fast_and_slow_scans_agree_on_random_pairs() {
        let f = BinaryField::standard(4).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let lines = all_lines(f);
        let rand_poly = |rng: &mut ChaCha8Rng, d: u32| {
            let mut terms = Vec::new();
            for a in 0..=d {
                for b in 0..=d - a {
                    terms.push(([a, b, d - a - b], f.elem(rng.gen_range(0..16)).unwrap()));
                }
            }
            HomPoly::from_terms(f, d, terms).unwrap()
        };
        let mut splitting = 0;
        for i in 0..100 {
            let l = lines[rng.gen_range(0..lines.len())];
            let g = if i % 2 == 0 {
                l.form().mul(&rand_poly(&mut rng, 5)).try_add(&rand_poly(&mut rng, 3).square()).unwrap()
            } else {
                rand_poly(&mut rng, 6)
            };
            let slow = is_splitting(&g, &l).unwrap();
            let fast = splits_fast(&term_list(&g), 6, &l);
            assert_eq!(slow.is_some(), fast);
            if let Some(c) = slow {
                assert!(c.verify(&g));
                splitting += 1;
            }
        }
        assert!(splitting >= 50);
        let g = g_rs(f.elem(3).unwrap(), f.elem(6).unwrap());
        assert_eq!(splitting_lines(&g).unwrap(), splitting_lines_slow(&g).unwrap());
    }

    #[test]
    fn quintic_transversality() {
        let f = BinaryField::standard(4).unwrap();
        let g = g_rs(f.elem(3).unwrap(), f.elem(7).unwrap());
        let sing = singularity_report(&g).unwrap();
        let certs: Vec<SplittingCertificate> =
            splitting_lines(&g).unwrap().iter().map(|l| is_splitting(&g, l).unwrap().unwrap()).collect();
        let rows = transversality_check(&certs, &sing).unwrap();
        assert!(rows.iter().all(|r| r.consistent));
        assert_eq!(rows.len(), 5 + 4 * 3);
    }
}
