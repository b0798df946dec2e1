//! Sparse homogeneous polynomials in `x₀, x₁, x₂` over a binary field.

use std::collections::BTreeMap;
use std::fmt;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use super::field::{binomial_odd, BinaryField, FieldError, Gf};

pub type Exp = [u32; 3];

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("exponent {exp:?} does not have total degree {degree}")]
    Degree { exp: Exp, degree: u32 },
    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(u32, u32),
    #[error("polynomial is not divisible by the linear form")]
    NotDivisible,
    #[error("expected a nonzero linear form")]
    BadLinearForm,
    #[error(transparent)]
    Field(#[from] FieldError),
}

#[derive(Clone, PartialEq, Eq)]
pub struct HomPoly {
    field: BinaryField,
    degree: u32,
    terms: BTreeMap<Exp, Gf>,
}

fn check_exp(exp: Exp, degree: u32) -> Result<(), PolyError> {
    if exp.iter().sum::<u32>() != degree {
        return Err(PolyError::Degree { exp, degree });
    }
    Ok(())
}

impl HomPoly {
    pub fn zero(field: BinaryField, degree: u32) -> Self {
        Self { field, degree, terms: BTreeMap::new() }
    }

    pub fn from_terms(field: BinaryField, degree: u32, terms: impl IntoIterator<Item = (Exp, Gf)>) -> Result<Self, PolyError> {
        let mut p = Self::zero(field, degree);
        for (e, c) in terms {
            check_exp(e, degree)?;
            p.add_term(e, c);
        }
        Ok(p)
    }

    pub fn monomial(exp: Exp, c: Gf) -> Self {
        let mut p = Self::zero(c.field(), exp.iter().sum());
        p.add_term(exp, c);
        p
    }

    pub fn constant(c: Gf) -> Self {
        Self::monomial([0, 0, 0], c)
    }

    pub fn variable(field: BinaryField, i: usize) -> Self {
        let mut e = [0; 3];
        e[i] = 1;
        Self::monomial(e, field.one())
    }

    pub fn linear(coeffs: [Gf; 3]) -> Self {
        let field = coeffs[0].field();
        let mut p = Self::zero(field, 1);
        for (i, c) in coeffs.into_iter().enumerate() {
            let mut e = [0; 3];
            e[i] = 1;
            p.add_term(e, c);
        }
        p
    }

    fn add_term(&mut self, exp: Exp, c: Gf) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(exp).or_insert_with(|| self.field.zero());
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&exp);
        }
    }

    pub fn field(&self) -> BinaryField {
        self.field
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exp, &Gf)> {
        self.terms.iter()
    }

    pub fn coeff(&self, exp: Exp) -> Gf {
        self.terms.get(&exp).copied().unwrap_or_else(|| self.field.zero())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn try_add(&self, other: &HomPoly) -> Result<HomPoly, PolyError> {
        if self.is_zero() {
            return Ok(other.clone());
        }
        if other.is_zero() {
            return Ok(self.clone());
        }
        if self.degree != other.degree {
            return Err(PolyError::DegreeMismatch(self.degree, other.degree));
        }
        let mut out = self.clone();
        for (&e, &c) in &other.terms {
            out.add_term(e, c);
        }
        Ok(out)
    }

    pub fn mul(&self, other: &HomPoly) -> HomPoly {
        let mut out = Self::zero(self.field, self.degree + other.degree);
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                out.add_term([a[0] + b[0], a[1] + b[1], a[2] + b[2]], *ca * *cb);
            }
        }
        out
    }

    pub fn scale(&self, c: Gf) -> HomPoly {
        let mut out = Self::zero(self.field, self.degree);
        for (&e, &x) in &self.terms {
            out.add_term(e, x * c);
        }
        out
    }

    /// Squaring is additive in characteristic 2, so it acts termwise.
    pub fn square(&self) -> HomPoly {
        let mut out = Self::zero(self.field, 2 * self.degree);
        for (e, c) in &self.terms {
            out.add_term([2 * e[0], 2 * e[1], 2 * e[2]], c.square());
        }
        out
    }

    pub fn pow(&self, n: u32) -> HomPoly {
        let mut out = HomPoly::constant(self.field.one());
        for _ in 0..n {
            out = out.mul(self);
        }
        out
    }

    pub fn eval(&self, x: &[Gf; 3]) -> Gf {
        let mut acc = self.field.zero();
        for (e, c) in &self.terms {
            acc += *c * x[0].pow(u64::from(e[0])) * x[1].pow(u64::from(e[1])) * x[2].pow(u64::from(e[2]));
        }
        acc
    }

    /// Formal partial derivative; even exponents vanish.
    pub fn partial(&self, i: usize) -> HomPoly {
        let mut out = Self::zero(self.field, self.degree.saturating_sub(1));
        for (e, c) in &self.terms {
            if e[i] % 2 == 1 {
                let mut f = *e;
                f[i] -= 1;
                out.add_term(f, *c);
            }
        }
        out
    }

    /// `G(M·y)`: each `x_i` becomes `Σ_j m[i][j] y_j`.
    pub fn substitute(&self, m: &[[Gf; 3]; 3]) -> HomPoly {
        let forms: Vec<HomPoly> = (0..3).map(|i| HomPoly::linear(m[i])).collect();
        let mut powers: Vec<Vec<HomPoly>> = Vec::with_capacity(3);
        for f in &forms {
            let mut p = vec![HomPoly::constant(self.field.one())];
            for k in 1..=self.degree as usize {
                p.push(p[k - 1].mul(f));
            }
            powers.push(p);
        }
        let mut out = Self::zero(self.field, self.degree);
        for (e, c) in &self.terms {
            let t = powers[0][e[0] as usize].mul(&powers[1][e[1] as usize]).mul(&powers[2][e[2] as usize]).scale(*c);
            for (&f, &d) in &t.terms {
                out.add_term(f, d);
            }
        }
        out
    }

    /// The square root when every monomial has only even exponents.
    pub fn sqrt(&self) -> Option<HomPoly> {
        if self.degree % 2 == 1 && !self.is_zero() {
            return None;
        }
        let mut out = Self::zero(self.field, self.degree / 2);
        for (e, c) in &self.terms {
            if e.iter().any(|x| x % 2 == 1) {
                return None;
            }
            out.add_term([e[0] / 2, e[1] / 2, e[2] / 2], c.sqrt());
        }
        Some(out)
    }

    /// Drops every monomial whose exponents are all even.
    pub fn delete_even(&self) -> HomPoly {
        let mut out = self.clone();
        out.terms.retain(|e, _| e.iter().any(|x| x % 2 == 1));
        out
    }

    /// Exact division by a linear form, eliminating its highest-index variable.
    pub fn div_linear(&self, l: &HomPoly) -> Result<HomPoly, PolyError> {
        let j = eliminated_variable(l)?;
        let aj = l.coeff(unit(j));
        let aj_inv = aj.inv()?;
        let mut rem = self.clone();
        let mut quot = Self::zero(self.field, self.degree.saturating_sub(1));
        loop {
            let lead = rem.terms.iter().filter(|(e, _)| e[j] > 0).max_by_key(|(e, _)| (e[j], **e)).map(|(e, c)| (*e, *c));
            let Some((e, c)) = lead else { break };
            let mut qe = e;
            qe[j] -= 1;
            let qc = c * aj_inv;
            quot.add_term(qe, qc);
            for (le, lc) in &l.terms {
                rem.add_term([qe[0] + le[0], qe[1] + le[1], qe[2] + le[2]], qc * *lc);
            }
        }
        if !rem.is_zero() {
            return Err(PolyError::NotDivisible);
        }
        Ok(quot)
    }

    /// Restriction to the line `ℓ = 0`, solving for the highest-index variable
    /// with a nonzero coefficient. The result is a form in the other two variables.
    pub fn restrict_to_line(&self, l: &HomPoly) -> Result<LineRestriction, PolyError> {
        let j = eliminated_variable(l)?;
        let aj_inv = l.coeff(unit(j)).inv()?;
        let mut row = [self.field.zero(); 3];
        for i in 0..3 {
            if i != j {
                row[i] = l.coeff(unit(i)) * aj_inv;
            }
        }
        let mut m = [[self.field.zero(); 3]; 3];
        for (i, mi) in m.iter_mut().enumerate() {
            if i == j {
                *mi = row;
            } else {
                mi[i] = self.field.one();
            }
        }
        Ok(LineRestriction { eliminated: j, form: self.substitute(&m) })
    }
}

fn unit(i: usize) -> Exp {
    let mut e = [0; 3];
    e[i] = 1;
    e
}

/// Index of the variable eliminated when parametrizing `ℓ = 0`.
pub fn eliminated_variable(l: &HomPoly) -> Result<usize, PolyError> {
    if l.degree != 1 {
        return Err(PolyError::BadLinearForm);
    }
    (0..3).rev().find(|&i| !l.coeff(unit(i)).is_zero()).ok_or(PolyError::BadLinearForm)
}

/// `G` restricted to a line: a form in the two variables other than `eliminated`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LineRestriction {
    pub eliminated: usize,
    pub form: HomPoly,
}

/// Dense binary form `Σ c_i u^i v^(d-i)` of `G` on a line, where `(u, v)` are
/// the two remaining variables in index order. Cheap enough for full line scans.
pub fn restrict_dense(terms: &[(Exp, Gf)], degree: u32, l: &[Gf; 3]) -> Option<Vec<Gf>> {
    let field = l[0].field();
    let j = (0..3).rev().find(|&i| !l[i].is_zero())?;
    let inv = l[j].inv().ok()?;
    let others: Vec<usize> = (0..3).filter(|&i| i != j).collect();
    let (a, b) = (others[0], others[1]);
    let alpha = l[a] * inv;
    let beta = l[b] * inv;
    let d = degree as usize;
    let mut ap = vec![field.one(); d + 1];
    let mut bp = vec![field.one(); d + 1];
    for i in 1..=d {
        ap[i] = ap[i - 1] * alpha;
        bp[i] = bp[i - 1] * beta;
    }
    let mut out = vec![field.zero(); d + 1];
    for (e, c) in terms {
        let n = e[j];
        for i in 0..=n {
            if binomial_odd(n, i) {
                // (αu + βv)^n contributes α^i β^(n-i) u^i v^(n-i).
                out[(e[a] + i) as usize] += *c * ap[i as usize] * bp[(n - i) as usize];
            }
        }
    }
    Some(out)
}

impl fmt::Debug for HomPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for HomPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (e, c) in self.terms.iter().rev() {
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            let mono: Vec<String> = (0..3)
                .filter(|&i| e[i] > 0)
                .map(|i| if e[i] == 1 { format!("x{i}") } else { format!("x{i}^{}", e[i]) })
                .collect();
            match (c.is_one(), mono.is_empty()) {
                (true, true) => f.write_str("1")?,
                (true, false) => f.write_str(&mono.join("*"))?,
                (false, true) => write!(f, "{c}")?,
                (false, false) => write!(f, "{c}*{}", mono.join("*"))?,
            }
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct FieldJson {
    k: u32,
    modulus_bits: String,
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    exp: Exp,
    coeff: String,
}

#[derive(Serialize, Deserialize)]
struct PolyJson {
    field: FieldJson,
    degree: u32,
    terms: Vec<TermJson>,
}

impl Serialize for HomPoly {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        PolyJson {
            field: FieldJson { k: self.field.k(), modulus_bits: format!("{:b}", self.field.modulus()) },
            degree: self.degree,
            terms: self.terms.iter().map(|(e, c)| TermJson { exp: *e, coeff: c.to_bitstring() }).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for HomPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = PolyJson::deserialize(d)?;
        let modulus = u32::from_str_radix(&raw.field.modulus_bits, 2).map_err(D::Error::custom)?;
        let field = BinaryField::new(raw.field.k, modulus).map_err(D::Error::custom)?;
        let mut terms = Vec::with_capacity(raw.terms.len());
        for t in raw.terms {
            let c = field.parse(&format!("0b{}", t.coeff)).map_err(D::Error::custom)?;
            terms.push((t.exp, c));
        }
        HomPoly::from_terms(field, raw.degree, terms).map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f8() -> BinaryField {
        BinaryField::standard(8).unwrap()
    }

    fn schroeer(r: Gf, s: Gf) -> HomPoly {
        let one = r.field().one();
        HomPoly::from_terms(r.field(), 6, [([1, 4, 1], one), ([1, 2, 3], s.square()), ([4, 1, 1], one), ([2, 1, 3], r.square())])
            .unwrap()
    }

    #[test]
    fn construction_and_errors() {
        let f = f8();
        assert!(HomPoly::from_terms(f, 6, [([1, 1, 1], f.one())]).is_err());
        let p = HomPoly::from_terms(f, 2, [([2, 0, 0], f.one()), ([2, 0, 0], f.one())]).unwrap();
        assert!(p.is_zero());
        assert!(HomPoly::zero(f, 2).try_add(&HomPoly::variable(f, 0)).is_ok());
        assert!(HomPoly::variable(f, 0).square().try_add(&HomPoly::variable(f, 0)).is_err());
        assert_eq!(eliminated_variable(&HomPoly::zero(f, 1)), Err(PolyError::BadLinearForm));
    }

    #[test]
    fn squares() {
        let f = f8();
        let x0 = HomPoly::variable(f, 0);
        let x1 = HomPoly::variable(f, 1);
        let x2 = HomPoly::variable(f, 2);
        let p = x0.pow(6).try_add(&x1.square().mul(&x2.pow(4))).unwrap();
        let root = x0.pow(3).try_add(&x1.mul(&x2.square())).unwrap();
        assert_eq!(p.sqrt().unwrap(), root);
        let r = f.elem(3).unwrap();
        let s = f.elem(5).unwrap();
        let odd = x0.pow(3).mul(&x2.pow(3)).scale(r.square() + s.square());
        assert!(odd.sqrt().is_none());
        assert_eq!(HomPoly::zero(f, 6).sqrt().unwrap(), HomPoly::zero(f, 3));
    }

    #[test]
    fn partials_in_char_two() {
        let f = f8();
        let p = HomPoly::from_terms(f, 6, [([6, 0, 0], f.one()), ([1, 5, 0], f.one())]).unwrap();
        assert_eq!(p.partial(0), HomPoly::monomial([0, 5, 0], f.one()));
        assert_eq!(p.partial(1), HomPoly::monomial([1, 4, 0], f.one()));
        assert!(p.partial(2).is_zero());
    }

    #[test]
    fn restrictions() {
        let f = f8();
        let r = f.elem(0x53).unwrap();
        let s = f.elem(0xca).unwrap();
        let g = schroeer(r, s);
        let zero = f.zero();
        let one = f.one();
        assert!(g.restrict_to_line(&HomPoly::linear([zero, zero, one])).unwrap().form.is_zero());

        // x0 + r·x2 = 0: solving for x2 (the highest index) gives x2 = x0/r.
        let l = HomPoly::linear([one, zero, r]);
        let res = g.restrict_to_line(&l).unwrap();
        assert_eq!(res.eliminated, 2);
        assert_eq!(res.form.degree(), 6);
        let x0 = HomPoly::variable(f, 0);
        let x1 = HomPoly::variable(f, 1);
        let x2_sub = x0.scale(r.inv().unwrap());
        let expected = x1.square().mul(&x2_sub.square()).mul(&x1.try_add(&x2_sub.scale(s)).unwrap().square()).scale(r);
        assert_eq!(res.form, expected);
        // Eliminating x0 instead gives r·x1²x2²(x1 + s·x2)².
        let m = [[zero, zero, r], [zero, one, zero], [zero, zero, one]];
        let x2 = HomPoly::variable(f, 2);
        let other = x1.square().mul(&x2.square()).mul(&x1.try_add(&x2.scale(s)).unwrap().square()).scale(r);
        assert_eq!(g.substitute(&m), other);

        // G_{1,s} on x0 + x1 = 0 is (1+s²)x0³x2³.
        let g1 = schroeer(one, s);
        let res = g1.restrict_to_line(&HomPoly::linear([one, one, zero])).unwrap();
        assert_eq!(res.eliminated, 1);
        assert_eq!(res.form, HomPoly::monomial([3, 0, 3], one + s.square()));
    }

    #[test]
    fn dense_restriction_agrees() {
        let f = BinaryField::standard(4).unwrap();
        let g = schroeer(f.elem(3).unwrap(), f.elem(7).unwrap());
        let terms: Vec<(Exp, Gf)> = g.terms().map(|(e, c)| (*e, *c)).collect();
        for a in f.elements() {
            for b in f.elements() {
                for c in f.elements() {
                    let l = [a, b, c];
                    let Some(dense) = restrict_dense(&terms, 6, &l) else {
                        assert!(a.is_zero() && b.is_zero() && c.is_zero());
                        continue;
                    };
                    let slow = g.restrict_to_line(&HomPoly::linear(l)).unwrap();
                    let j = slow.eliminated;
                    let others: Vec<usize> = (0..3).filter(|&i| i != j).collect();
                    for (i, d) in dense.iter().enumerate() {
                        let mut e = [0; 3];
                        e[others[0]] = i as u32;
                        e[others[1]] = 6 - i as u32;
                        assert_eq!(slow.form.coeff(e), *d);
                    }
                }
            }
        }
    }

    #[test]
    fn division() {
        let f = f8();
        let l = HomPoly::linear([f.elem(3).unwrap(), f.one(), f.elem(9).unwrap()]);
        let q = HomPoly::from_terms(f, 2, [([2, 0, 0], f.one()), ([0, 1, 1], f.elem(7).unwrap())]).unwrap();
        assert_eq!(l.mul(&q).div_linear(&l).unwrap(), q);
        let not = l.mul(&q).try_add(&HomPoly::monomial([3, 0, 0], f.one())).unwrap();
        assert_eq!(not.div_linear(&l), Err(PolyError::NotDivisible));
    }

    #[test]
    fn json_round_trip() {
        let f = f8();
        let g = schroeer(f.elem(2).unwrap(), f.elem(0x1d).unwrap());
        let js = serde_json::to_value(&g).unwrap();
        assert_eq!(js["field"]["k"], 8);
        assert_eq!(js["field"]["modulus_bits"], "100011101");
        assert_eq!(js["degree"], 6);
        let back: HomPoly = serde_json::from_value(js).unwrap();
        assert_eq!(back, g);
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn poly(field: BinaryField, degree: u32, coeffs: &[u32]) -> HomPoly {
            let mut terms = Vec::new();
            let mut idx = 0;
            for a in 0..=degree {
                for b in 0..=degree - a {
                    terms.push(([a, b, degree - a - b], field.elem(coeffs[idx % coeffs.len()] % field.order()).unwrap()));
                    idx += 1;
                }
            }
            HomPoly::from_terms(field, degree, terms).unwrap()
        }

        proptest! {
            #[test]
            fn substitution_is_a_homomorphism(ca in proptest::collection::vec(0u32..16, 10), cb in proptest::collection::vec(0u32..16, 6), m in proptest::collection::vec(0u32..16, 9), pt in proptest::collection::vec(0u32..16, 3)) {
                let f = BinaryField::standard(4).unwrap();
                let a = poly(f, 3, &ca);
                let b = poly(f, 2, &cb);
                let mat = [
                    [f.elem(m[0]).unwrap(), f.elem(m[1]).unwrap(), f.elem(m[2]).unwrap()],
                    [f.elem(m[3]).unwrap(), f.elem(m[4]).unwrap(), f.elem(m[5]).unwrap()],
                    [f.elem(m[6]).unwrap(), f.elem(m[7]).unwrap(), f.elem(m[8]).unwrap()],
                ];
                prop_assert_eq!(a.mul(&b).substitute(&mat), a.substitute(&mat).mul(&b.substitute(&mat)));
                let y = [f.elem(pt[0]).unwrap(), f.elem(pt[1]).unwrap(), f.elem(pt[2]).unwrap()];
                let x: [Gf; 3] = std::array::from_fn(|i| (0..3).map(|j| mat[i][j] * y[j]).sum());
                prop_assert_eq!(a.substitute(&mat).eval(&y), a.eval(&x));
                prop_assert_eq!(a.square().sqrt().unwrap(), a.clone());
            }
        }
    }
}
