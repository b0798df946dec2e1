//! Separable double covers `w² + C·w + G = 0` with `C` a cubic and their
//! non-reduced splitting lines.

use serde::Serialize;

use super::field::Gf;
use super::plane::{all_lines, splits_fast, Line, PlaneError};
use super::poly::{restrict_dense, Exp, HomPoly, PolyError};

#[derive(Clone, Debug, Serialize)]
pub struct SeparableCover {
    pub c: HomPoly,
    pub g: HomPoly,
}

#[derive(Clone, Debug, Serialize)]
pub struct NonReducedLine {
    pub line: Line,
    pub divides_c: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct NonReducedReport {
    pub lines: Vec<NonReducedLine>,
    pub count: usize,
    pub bound: u32,
    pub passed: bool,
}

impl SeparableCover {
    pub fn new(c: HomPoly, g: HomPoly) -> Result<Self, PolyError> {
        if c.degree() != 3 || c.is_zero() {
            return Err(PolyError::DegreeMismatch(c.degree(), 3));
        }
        if g.degree() != 6 {
            return Err(PolyError::DegreeMismatch(g.degree(), 6));
        }
        Ok(Self { c, g })
    }

    /// `C|ℓ = 0` and `G|ℓ` is a square.
    pub fn is_non_reduced_splitting(&self, line: &Line) -> Result<bool, PolyError> {
        let l = line.form();
        if !self.c.restrict_to_line(&l)?.form.is_zero() {
            return Ok(false);
        }
        Ok(self.g.restrict_to_line(&l)?.form.sqrt().is_some())
    }

    /// Scans every rational line; each hit must divide `C`, and there are at most `deg C`.
    pub fn non_reduced_lines(&self) -> Result<NonReducedReport, PlaneError> {
        let field = self.c.field();
        if field.k() > 16 {
            return Err(PlaneError::FieldTooLarge(field.order()));
        }
        let c_terms: Vec<(Exp, Gf)> = self.c.terms().map(|(e, x)| (*e, *x)).collect();
        let g_terms: Vec<(Exp, Gf)> = self.g.terms().map(|(e, x)| (*e, *x)).collect();
        let mut lines = Vec::new();
        for line in all_lines(field) {
            let c_vanishes = restrict_dense(&c_terms, 3, line.coeffs()).is_some_and(|v| v.iter().all(|x| x.is_zero()));
            if c_vanishes && splits_fast(&g_terms, 6, &line) {
                debug_assert!(self.is_non_reduced_splitting(&line).unwrap_or(false));
                let divides_c = self.c.div_linear(&line.form()).is_ok();
                lines.push(NonReducedLine { line, divides_c });
            }
        }
        let count = lines.len();
        let bound = self.c.degree();
        let passed = lines.iter().all(|l| l.divides_c) && count as u32 <= bound;
        Ok(NonReducedReport { lines, count, bound, passed })
    }
}
